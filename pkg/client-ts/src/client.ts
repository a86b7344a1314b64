import { randomUUID } from "node:crypto";

import { resolveConfig, type ClientOptions, type ResolvedConfig } from "./config.js";
import { JobTimeoutError, serviceError } from "./errors.js";
import { getJson, postJson } from "./http.js";
import type {
  ClaimBoundariesResponse,
  ClusterRequest,
  ClusterResponse,
  IndexQueryRequest,
  IndexQueryResponse,
  KpaJob,
  KpaResult,
  KpaSubmitReceipt,
  KpaSubmitRequest,
  NarrativeRequest,
  NarrativeResponse,
  RelatednessRequest,
  ScoreResponse,
  SentenceRequest,
  StanceResponse,
  ThemesRequest,
  ThemesResponse,
  TopicSentenceRequest,
  WikifyRequest,
  WikifyResponse,
} from "./types.js";

export interface WaitOptions {
  /** Delay between polls in milliseconds. */
  pollIntervalMs?: number;
  /** Total budget from submit to completion; 0 times out immediately. */
  deadlineMs?: number;
}

/**
 * Typed client for the argmine HTTP service.
 *
 * Pure transport: requests go out as-is and responses come back as-is,
 * with service errors raised as one exception class per published error
 * code. No analysis happens client-side. Instances hold only immutable
 * configuration and are safe to share across concurrent calls.
 */
export class ArgmineClient {
  private readonly config: ResolvedConfig;

  constructor(options: ClientOptions = {}) {
    this.config = resolveConfig(options);
  }

  wikify(request: WikifyRequest): Promise<WikifyResponse> {
    return this.post("/v1/wikify", request);
  }

  relatedness(request: RelatednessRequest): Promise<ScoreResponse> {
    return this.post("/v1/relatedness", request);
  }

  cluster(request: ClusterRequest): Promise<ClusterResponse> {
    return this.post("/v1/cluster", request);
  }

  themes(request: ThemesRequest): Promise<ThemesResponse> {
    return this.post("/v1/themes", request);
  }

  claimScore(request: TopicSentenceRequest): Promise<ScoreResponse> {
    return this.post("/v1/claim/score", request);
  }

  claimBoundaries(request: SentenceRequest): Promise<ClaimBoundariesResponse> {
    return this.post("/v1/claim/boundaries", request);
  }

  evidenceScore(request: TopicSentenceRequest): Promise<ScoreResponse> {
    return this.post("/v1/evidence/score", request);
  }

  quality(request: SentenceRequest): Promise<ScoreResponse> {
    return this.post("/v1/quality", request);
  }

  stance(request: TopicSentenceRequest): Promise<StanceResponse> {
    return this.post("/v1/stance", request);
  }

  narrative(request: NarrativeRequest): Promise<NarrativeResponse> {
    return this.post("/v1/narrative", request);
  }

  indexQuery(request: IndexQueryRequest): Promise<IndexQueryResponse> {
    return this.post("/v1/index/query", request);
  }

  /**
   * Submit a key point analysis job.
   *
   * Every submit carries an x-idempotency-key (a fresh UUID unless one is
   * given); resubmitting with the same key returns the original job. The
   * receipt reports the key as echoed by the service.
   */
  async submitKpa(
    request: KpaSubmitRequest,
    idempotencyKey?: string,
  ): Promise<KpaSubmitReceipt> {
    const key = idempotencyKey ?? randomUUID();
    const { payload, headers } = await postJson(this.config, "/v1/kpa", request, {
      "x-idempotency-key": key,
    });
    const job = payload as KpaJob;
    return {
      job_id: job.job_id,
      state: job.state,
      idempotency_key: headers.get("x-idempotency-key"),
    };
  }

  async getKpaJob(jobId: string): Promise<KpaJob> {
    const { payload } = await getJson(this.config, `/v1/kpa/jobs/${jobId}`);
    return payload as KpaJob;
  }

  /**
   * Submit a job and poll it to completion.
   *
   * Throws the typed exception for the job's error code if the job fails,
   * and JobTimeoutError (naming the job id; the job itself keeps running)
   * if the deadline passes first. deadlineMs 0 therefore times out right
   * after the submit.
   */
  async runKpaAndWait(
    request: KpaSubmitRequest,
    options: WaitOptions = {},
  ): Promise<KpaResult> {
    const pollIntervalMs = options.pollIntervalMs ?? 250;
    const deadlineMs = options.deadlineMs ?? 120_000;
    if (!(pollIntervalMs > 0)) {
      throw new RangeError(`pollIntervalMs must be > 0, got ${pollIntervalMs}`);
    }
    if (deadlineMs < 0) {
      throw new RangeError(`deadlineMs must be >= 0, got ${deadlineMs}`);
    }
    const receipt = await this.submitKpa(request);
    const deadline = Date.now() + deadlineMs;
    while (true) {
      if (Date.now() >= deadline) {
        throw new JobTimeoutError(
          `job ${receipt.job_id} did not finish within ${deadlineMs}ms`,
          receipt.job_id,
        );
      }
      const job = await this.getKpaJob(receipt.job_id);
      if (job.state === "done" && job.result) {
        return job.result;
      }
      if (job.state === "failed") {
        const err = job.error ?? { code: "job.internal", message: "job failed" };
        throw serviceError(err.code, err.message, null);
      }
      const remaining = deadline - Date.now();
      if (remaining <= 0) {
        throw new JobTimeoutError(
          `job ${receipt.job_id} did not finish within ${deadlineMs}ms`,
          receipt.job_id,
        );
      }
      await new Promise((resolve) => setTimeout(resolve, Math.min(pollIntervalMs, remaining)));
    }
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const { payload } = await postJson(this.config, path, body);
    return payload as T;
  }
}
