// Generated by scripts/gen-errors.mjs from schemas/v1/error_codes.json.
// Do not edit by hand; rerun `npm run gen` after a registry change.

/** Base class for everything this client throws. */
export class ClientError extends Error {}

/** Bad or missing client configuration; no request was made. */
export class ConfigError extends ClientError {}

/** The request never produced an HTTP response (network failure or timeout). */
export class TransportError extends ClientError {}

/** A job did not finish before the caller's deadline. */
export class JobTimeoutError extends ClientError {
  constructor(message: string, public readonly jobId: string) {
    super(message);
  }
}

/** An error reported by the service, carrying its registry code. */
export class ServiceError extends ClientError {
  constructor(
    message: string,
    public readonly code: string,
    public readonly status: number | null,
  ) {
    super(message);
  }
}

/** A service error whose code is not in the published registry. */
export class UnknownCodeError extends ServiceError {}

export class AuthInvalidError extends ServiceError {}
export class AuthMissingError extends ServiceError {}
export class BodyParseError extends ServiceError {}
export class BodySchemaError extends ServiceError {}
export class BodyTooLargeError extends ServiceError {}
export class BoundariesTooShortError extends ServiceError {}
export class BowBadIndexError extends ServiceError {}
export class BowBadMatrixError extends ServiceError {}
export class BowEmptyCorpusError extends ServiceError {}
export class BowEmptyDocumentError extends ServiceError {}
export class ClusterBadParamsError extends ServiceError {}
export class ClusterBadPartitionError extends ServiceError {}
export class ClusterKTooLargeError extends ServiceError {}
export class ClusterZeroMassError extends ServiceError {}
export class DatasetsUnknownError extends ServiceError {}
export class EngineErrorError extends ServiceError {}
export class HttpErrorError extends ServiceError {}
export class HttpInternalError extends ServiceError {}
export class HttpMethodNotAllowedError extends ServiceError {}
export class HttpNotFoundError extends ServiceError {}
export class IndexBadFileError extends ServiceError {}
export class IndexBadPostingsError extends ServiceError {}
export class IndexDuplicateIdError extends ServiceError {}
export class IndexLayerCollisionError extends ServiceError {}
export class InputInvalidError extends ServiceError {}
export class JobInternalError extends ServiceError {}
export class JobUnknownError extends ServiceError {}
export class KpaEmptyError extends ServiceError {}
export class KpaNoCandidatesError extends ServiceError {}
export class KpaNoSentencesError extends ServiceError {}
export class KpaTooManyCommentsError extends ServiceError {}
export class KpaUnknownMatcherError extends ServiceError {}
export class LexiconUnknownError extends ServiceError {}
export class MetricsBadTableError extends ServiceError {}
export class MetricsConstantInputError extends ServiceError {}
export class MetricsLengthMismatchError extends ServiceError {}
export class MetricsNegativeCountError extends ServiceError {}
export class MetricsTooFewPointsError extends ServiceError {}
export class NarrativeEmptyError extends ServiceError {}
export class NarrativeEmptyAfterCleanupError extends ServiceError {}
export class NarrativeNoStanceMatchError extends ServiceError {}
export class PipelineNoArgumentsError extends ServiceError {}
export class QueryBadPaginationError extends ServiceError {}
export class QueryBadPlanError extends ServiceError {}
export class QueryParseError extends ServiceError {}
export class QueryUnknownLayerError extends ServiceError {}
export class RegistryUnknownImplementationError extends ServiceError {}
export class RegistryUnknownSlotError extends ServiceError {}
export class ScorerBadKindError extends ServiceError {}
export class ScorerBadLabelError extends ServiceError {}
export class ScorerBadScoreError extends ServiceError {}
export class ScorerEmptySentenceError extends ServiceError {}
export class SemanticInvalidError extends ServiceError {}
export class SentenceBadSpanError extends ServiceError {}
export class SentenceBadTokenError extends ServiceError {}
export class StanceAbstainError extends ServiceError {}
export class ThemesBadAssignmentError extends ServiceError {}
export class ThemesBadInputError extends ServiceError {}
export class ThemesBadPvalueError extends ServiceError {}
export class ThemesBadQueryError extends ServiceError {}
export class ThemesMissingLayerError extends ServiceError {}
export class TopicBadPolarityError extends ServiceError {}
export class TopicEmptyError extends ServiceError {}
export class WikifyAmbiguousSurfaceError extends ServiceError {}
export class WikifyBadTitleRecordError extends ServiceError {}
export class WikifyDanglingRedirectError extends ServiceError {}
export class WikifyEmptyTitleError extends ServiceError {}
export class WikifyRedirectCycleError extends ServiceError {}

/** Registry code -> exception class, one class per published code. */
export const ERROR_CLASSES: Record<string, typeof ServiceError> = {
  "auth.invalid": AuthInvalidError,
  "auth.missing": AuthMissingError,
  "body.parse": BodyParseError,
  "body.schema": BodySchemaError,
  "body.too-large": BodyTooLargeError,
  "boundaries.too-short": BoundariesTooShortError,
  "bow.bad-index": BowBadIndexError,
  "bow.bad-matrix": BowBadMatrixError,
  "bow.empty-corpus": BowEmptyCorpusError,
  "bow.empty-document": BowEmptyDocumentError,
  "cluster.bad-params": ClusterBadParamsError,
  "cluster.bad-partition": ClusterBadPartitionError,
  "cluster.k-too-large": ClusterKTooLargeError,
  "cluster.zero-mass": ClusterZeroMassError,
  "datasets.unknown": DatasetsUnknownError,
  "engine.error": EngineErrorError,
  "http.error": HttpErrorError,
  "http.internal": HttpInternalError,
  "http.method-not-allowed": HttpMethodNotAllowedError,
  "http.not-found": HttpNotFoundError,
  "index.bad-file": IndexBadFileError,
  "index.bad-postings": IndexBadPostingsError,
  "index.duplicate-id": IndexDuplicateIdError,
  "index.layer-collision": IndexLayerCollisionError,
  "input.invalid": InputInvalidError,
  "job.internal": JobInternalError,
  "job.unknown": JobUnknownError,
  "kpa.empty": KpaEmptyError,
  "kpa.no-candidates": KpaNoCandidatesError,
  "kpa.no-sentences": KpaNoSentencesError,
  "kpa.too-many-comments": KpaTooManyCommentsError,
  "kpa.unknown-matcher": KpaUnknownMatcherError,
  "lexicon.unknown": LexiconUnknownError,
  "metrics.bad-table": MetricsBadTableError,
  "metrics.constant-input": MetricsConstantInputError,
  "metrics.length-mismatch": MetricsLengthMismatchError,
  "metrics.negative-count": MetricsNegativeCountError,
  "metrics.too-few-points": MetricsTooFewPointsError,
  "narrative.empty": NarrativeEmptyError,
  "narrative.empty-after-cleanup": NarrativeEmptyAfterCleanupError,
  "narrative.no-stance-match": NarrativeNoStanceMatchError,
  "pipeline.no-arguments": PipelineNoArgumentsError,
  "query.bad-pagination": QueryBadPaginationError,
  "query.bad-plan": QueryBadPlanError,
  "query.parse": QueryParseError,
  "query.unknown-layer": QueryUnknownLayerError,
  "registry.unknown-implementation": RegistryUnknownImplementationError,
  "registry.unknown-slot": RegistryUnknownSlotError,
  "scorer.bad-kind": ScorerBadKindError,
  "scorer.bad-label": ScorerBadLabelError,
  "scorer.bad-score": ScorerBadScoreError,
  "scorer.empty-sentence": ScorerEmptySentenceError,
  "semantic.invalid": SemanticInvalidError,
  "sentence.bad-span": SentenceBadSpanError,
  "sentence.bad-token": SentenceBadTokenError,
  "stance.abstain": StanceAbstainError,
  "themes.bad-assignment": ThemesBadAssignmentError,
  "themes.bad-input": ThemesBadInputError,
  "themes.bad-pvalue": ThemesBadPvalueError,
  "themes.bad-query": ThemesBadQueryError,
  "themes.missing-layer": ThemesMissingLayerError,
  "topic.bad-polarity": TopicBadPolarityError,
  "topic.empty": TopicEmptyError,
  "wikify.ambiguous-surface": WikifyAmbiguousSurfaceError,
  "wikify.bad-title-record": WikifyBadTitleRecordError,
  "wikify.dangling-redirect": WikifyDanglingRedirectError,
  "wikify.empty-title": WikifyEmptyTitleError,
  "wikify.redirect-cycle": WikifyRedirectCycleError,
};

/** Build the typed exception for a service-reported error. */
export function serviceError(
  code: string,
  message: string,
  status: number | null,
): ServiceError {
  const cls = ERROR_CLASSES[code] ?? UnknownCodeError;
  return new cls(message, code, status);
}
