export { ArgmineClient, type WaitOptions } from "./client.js";
export {
  API_KEY_ENV,
  BASE_URL_ENV,
  DEFAULT_BASE_URL,
  backoffDelaysMs,
  resolveConfig,
  type ClientOptions,
  type ResolvedConfig,
} from "./config.js";
export * from "./errors.js";
export * from "./types.js";
