import type { ResolvedConfig } from "./config.js";
import { serviceError, TransportError } from "./errors.js";

const RETRY_STATUS = 503;

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

async function errorFromResponse(response: Response): Promise<Error> {
  let code = "http.error";
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { code?: unknown; message?: unknown };
    if (typeof body.code === "string") code = body.code;
    if (typeof body.message === "string") message = body.message;
  } catch {
    // Non-JSON error body; keep the status-line message.
  }
  return serviceError(code, message, response.status);
}

export interface PostResult {
  payload: unknown;
  headers: Headers;
}

/**
 * POST a JSON body and return the parsed JSON payload.
 *
 * A 503 response is retried with exponential backoff (backoffBaseMs,
 * doubling) until maxAttempts tries are spent; every other error status
 * maps straight to its typed exception. All state is local to the call,
 * so one client instance can serve concurrent requests.
 */
export async function postJson(
  config: ResolvedConfig,
  path: string,
  body: unknown,
  extraHeaders: Record<string, string> = {},
): Promise<PostResult> {
  return requestJson(config, "POST", path, JSON.stringify(body), extraHeaders);
}

/** GET a JSON payload; same retry and error mapping as postJson. */
export async function getJson(config: ResolvedConfig, path: string): Promise<PostResult> {
  return requestJson(config, "GET", path, null, {});
}

async function requestJson(
  config: ResolvedConfig,
  method: "GET" | "POST",
  path: string,
  body: string | null,
  extraHeaders: Record<string, string>,
): Promise<PostResult> {
  const url = config.baseUrl + path;
  const headers: Record<string, string> = {
    "x-api-key": config.apiKey,
    accept: "application/json",
    ...extraHeaders,
  };
  if (body !== null) headers["content-type"] = "application/json";

  for (let attempt = 1; ; attempt++) {
    let response: Response;
    try {
      response = await fetch(url, {
        method,
        headers,
        body,
        signal: AbortSignal.timeout(config.timeoutMs),
      });
    } catch (cause) {
      const reason = cause instanceof Error ? cause.message : String(cause);
      throw new TransportError(`${method} ${url} failed: ${reason}`);
    }
    if (response.ok) {
      try {
        return { payload: await response.json(), headers: response.headers };
      } catch {
        throw new TransportError(`${method} ${url} returned a non-JSON body`);
      }
    }
    if (response.status === RETRY_STATUS && attempt < config.maxAttempts) {
      await response.body?.cancel();
      await sleep(config.backoffBaseMs * 2 ** (attempt - 1));
      continue;
    }
    throw await errorFromResponse(response);
  }
}
