import { ConfigError } from "./errors.js";

export const API_KEY_ENV = "DEBATER_API_KEY";
export const BASE_URL_ENV = "DEBATER_BASE_URL";
export const DEFAULT_BASE_URL = "http://127.0.0.1:8800";

export interface ClientOptions {
  /** Service root; default: $DEBATER_BASE_URL, then http://127.0.0.1:8800. */
  baseUrl?: string;
  /** Sent as x-api-key on every request; default: $DEBATER_API_KEY. */
  apiKey?: string;
  /** Per-request timeout in milliseconds. */
  timeoutMs?: number;
  /** Total tries per request including the first (503 responses retry). */
  maxAttempts?: number;
  /** First retry delay in milliseconds; doubles per further retry. */
  backoffBaseMs?: number;
}

export interface ResolvedConfig {
  baseUrl: string;
  apiKey: string;
  timeoutMs: number;
  maxAttempts: number;
  backoffBaseMs: number;
}

/**
 * Fill in environment fallbacks and validate.
 *
 * A missing API key is a configuration error thrown here, before any
 * request is made.
 */
export function resolveConfig(options: ClientOptions = {}): ResolvedConfig {
  const env = typeof process !== "undefined" ? process.env : {};
  const apiKey = options.apiKey ?? env[API_KEY_ENV];
  if (!apiKey) {
    throw new ConfigError(
      `no API key: pass apiKey or set ${API_KEY_ENV}`,
    );
  }
  const baseUrl = (options.baseUrl ?? env[BASE_URL_ENV] ?? DEFAULT_BASE_URL).replace(/\/+$/, "");
  let parsed: URL;
  try {
    parsed = new URL(baseUrl);
  } catch {
    throw new ConfigError(`baseUrl is not a valid URL: ${baseUrl}`);
  }
  if (parsed.protocol !== "http:" && parsed.protocol !== "https:") {
    throw new ConfigError(`baseUrl must be http or https, got ${parsed.protocol}`);
  }
  const timeoutMs = options.timeoutMs ?? 30_000;
  if (!(timeoutMs > 0)) {
    throw new ConfigError(`timeoutMs must be > 0, got ${timeoutMs}`);
  }
  const maxAttempts = options.maxAttempts ?? 3;
  if (!Number.isInteger(maxAttempts) || maxAttempts < 1) {
    throw new ConfigError(`maxAttempts must be an integer >= 1, got ${maxAttempts}`);
  }
  const backoffBaseMs = options.backoffBaseMs ?? 500;
  if (!(backoffBaseMs > 0)) {
    throw new ConfigError(`backoffBaseMs must be > 0, got ${backoffBaseMs}`);
  }
  return { baseUrl, apiKey, timeoutMs, maxAttempts, backoffBaseMs };
}

/** Retry delays implied by a config: backoffBaseMs, then doubling. */
export function backoffDelaysMs(config: ResolvedConfig): number[] {
  const delays: number[] = [];
  for (let retry = 0; retry < config.maxAttempts - 1; retry++) {
    delays.push(config.backoffBaseMs * 2 ** retry);
  }
  return delays;
}
