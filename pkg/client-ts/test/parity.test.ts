import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { AuthInvalidError, StanceAbstainError } from "../src/errors.js";
import { ArgmineClient } from "../src/client.js";

import { TEST_API_KEY, TEST_BASE_URL } from "./setup/constants.js";

const HERE = dirname(fileURLToPath(import.meta.url));

interface ParityCase {
  name: string;
  path: string;
  body: Record<string, unknown>;
  job: boolean;
}

const CASES: ParityCase[] = JSON.parse(
  readFileSync(join(HERE, "fixtures", "parity_cases.json"), "utf8"),
);

function golden(name: string): unknown {
  return JSON.parse(
    readFileSync(join(HERE, "..", "..", "tests", "goldens", `${name}.json`), "utf8"),
  );
}

const client = new ArgmineClient({ baseUrl: TEST_BASE_URL, apiKey: TEST_API_KEY });

// One wrapper per route; parity cases are dispatched through these so the
// goldens exercise the typed methods rather than raw HTTP.
const DISPATCH: Record<string, (body: never) => Promise<unknown>> = {
  "/v1/wikify": (body) => client.wikify(body),
  "/v1/relatedness": (body) => client.relatedness(body),
  "/v1/cluster": (body) => client.cluster(body),
  "/v1/themes": (body) => client.themes(body),
  "/v1/claim/score": (body) => client.claimScore(body),
  "/v1/claim/boundaries": (body) => client.claimBoundaries(body),
  "/v1/evidence/score": (body) => client.evidenceScore(body),
  "/v1/quality": (body) => client.quality(body),
  "/v1/stance": (body) => client.stance(body),
  "/v1/narrative": (body) => client.narrative(body),
  "/v1/index/query": (body) => client.indexQuery(body),
};

const directCases = CASES.filter((c) => !c.job);
const jobCases = CASES.filter((c) => c.job);

describe("golden parity against the live service", () => {
  it("covers every route the client exposes", () => {
    const fixturePaths = new Set(directCases.map((c) => c.path));
    expect([...fixturePaths].sort()).toEqual(Object.keys(DISPATCH).sort());
    expect(jobCases.map((c) => c.path)).toEqual(["/v1/kpa"]);
  });

  it.each(directCases.map((c) => [c.name, c] as const))(
    "%s round-trips to its golden",
    async (_name, parityCase) => {
      const call = DISPATCH[parityCase.path];
      expect(call).toBeDefined();
      const response = await call(parityCase.body as never);
      expect(response).toEqual(golden(parityCase.name));
    },
  );

  it.each(jobCases.map((c) => [c.name, c] as const))(
    "%s job result matches the CLI golden",
    async (_name, parityCase) => {
      const result = await client.runKpaAndWait(parityCase.body as never);
      expect(result).toEqual(golden(parityCase.name));
    },
  );

  it("handles concurrent mixed calls without cross-talk", async () => {
    const rounds = [...directCases, ...directCases];
    const responses = await Promise.all(
      rounds.map((c) => DISPATCH[c.path](c.body as never)),
    );
    responses.forEach((response, i) => {
      expect(response).toEqual(golden(rounds[i].name));
    });
  });
});

describe("live service errors", () => {
  it("rejects a wrong API key with the typed auth error", async () => {
    const bad = new ArgmineClient({ baseUrl: TEST_BASE_URL, apiKey: "wrong-key" });
    const err = await bad.quality({ sentence: "any sentence" }).catch((e) => e);
    expect(err).toBeInstanceOf(AuthInvalidError);
    expect(err.status).toBe(401);
  });

  it("surfaces semantic rejections as their typed error", async () => {
    const err = await client
      .stance({
        sentence: "The weather was mild yesterday.",
        topic: {
          text: "We should expand the tram network",
          target: "tram network",
          action_polarity: "promoting",
        },
      })
      .catch((e) => e);
    expect(err).toBeInstanceOf(StanceAbstainError);
    expect(err.status).toBe(422);
  });

  it("echoes the idempotency key and dedupes resubmits", async () => {
    const body = jobCases[0].body as never;
    const first = await client.submitKpa(body);
    expect(first.idempotency_key).toBeTruthy();
    const again = await client.submitKpa(body, first.idempotency_key as string);
    expect(again.job_id).toBe(first.job_id);
  });
});
