// Launches the Python service once for the whole vitest run.
import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { TEST_BASE_URL, TEST_PORT, TEST_API_KEY } from "./constants.js";

async function waitUntilUp(child: ChildProcess, logs: string[]): Promise<void> {
  const deadline = Date.now() + 45_000;
  while (Date.now() < deadline) {
    if (child.exitCode !== null) {
      throw new Error(`service exited with code ${child.exitCode}:\n${logs.join("")}`);
    }
    try {
      // Any HTTP answer means the socket is live; 401/404 are fine here.
      await fetch(`${TEST_BASE_URL}/v1/kpa/jobs/none`);
      return;
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 200));
    }
  }
  throw new Error(`service did not come up on port ${TEST_PORT}:\n${logs.join("")}`);
}

export default async function setup(): Promise<() => Promise<void>> {
  const dir = mkdtempSync(join(tmpdir(), "argmine-ts-"));
  const keysFile = join(dir, "keys.txt");
  writeFileSync(keysFile, `${TEST_API_KEY}\n`);

  const child = spawn(
    "python3",
    [
      "-m",
      "uvicorn",
      "--factory",
      "argmine.service.app:create_app",
      "--port",
      String(TEST_PORT),
      "--log-level",
      "warning",
    ],
    {
      env: { ...process.env, DEBATER_KEYS_FILE: keysFile },
      stdio: ["ignore", "pipe", "pipe"],
    },
  );
  const logs: string[] = [];
  child.stdout?.on("data", (chunk) => logs.push(String(chunk)));
  child.stderr?.on("data", (chunk) => logs.push(String(chunk)));

  await waitUntilUp(child, logs);

  return async () => {
    child.kill("SIGTERM");
    await new Promise<void>((resolve) => {
      const timer = setTimeout(() => {
        child.kill("SIGKILL");
        resolve();
      }, 5_000);
      child.once("exit", () => {
        clearTimeout(timer);
        resolve();
      });
    });
    rmSync(dir, { recursive: true, force: true });
  };
}
