import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  ERROR_CLASSES,
  ServiceError,
  serviceError,
  UnknownCodeError,
} from "../src/errors.js";

const here = dirname(fileURLToPath(import.meta.url));
const registry = JSON.parse(
  readFileSync(join(here, "..", "..", "schemas", "v1", "error_codes.json"), "utf-8"),
) as { codes: { code: string; status: number; category: string }[] };

describe("error registry mapping", () => {
  it("covers every published code with exactly one class", () => {
    const codes = registry.codes.map((entry) => entry.code);
    expect(codes.length).toBeGreaterThan(0);
    for (const code of codes) {
      expect(ERROR_CLASSES[code], `missing class for ${code}`).toBeDefined();
    }
    // One class per code, never shared.
    const classes = new Set(Object.values(ERROR_CLASSES));
    expect(classes.size).toBe(codes.length);
    // And no classes for codes outside the registry.
    expect(Object.keys(ERROR_CLASSES).sort()).toEqual([...codes].sort());
  });

  it.each(registry.codes.map((entry) => [entry.code, entry.status]))(
    "builds the typed exception for %s",
    (code, status) => {
      const err = serviceError(code as string, "the server message", status as number);
      expect(err).toBeInstanceOf(ServiceError);
      expect(err).toBeInstanceOf(ERROR_CLASSES[code as string]);
      expect(err).not.toBeInstanceOf(UnknownCodeError);
      expect(err.code).toBe(code);
      expect(err.message).toBe("the server message");
      expect(err.status).toBe(status);
    },
  );

  it("keeps classes disjoint: an instance matches only its own code", () => {
    const err = serviceError("auth.invalid", "nope", 401);
    for (const [code, cls] of Object.entries(ERROR_CLASSES)) {
      if (code === "auth.invalid") continue;
      expect(err).not.toBeInstanceOf(cls);
    }
  });

  it("maps unregistered codes to UnknownCodeError", () => {
    const err = serviceError("future.surprise", "new thing", 418);
    expect(err).toBeInstanceOf(UnknownCodeError);
    expect(err.code).toBe("future.surprise");
  });
});
