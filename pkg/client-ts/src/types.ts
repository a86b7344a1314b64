// Wire shapes of the v1 endpoints. Request bodies mirror the JSON
// Schemas published under schemas/v1/ in the service repository.

export interface Topic {
  text: string;
  target?: string | null;
  action_polarity?: "promoting" | "suppressing" | null;
}

export interface WikifyRequest {
  text: string;
  lexicon?: string;
}

export interface ConceptMention {
  concept: string;
  surface: string;
  first_token: number;
  last_token: number;
  via_redirect: boolean;
}

export interface WikifyResponse {
  mentions: ConceptMention[];
}

export interface RelatednessRequest {
  concept_a: string;
  concept_b: string;
}

export interface ScoreResponse {
  score: number;
}

export interface DocumentRecord {
  id: string;
  text: string;
}

export interface ClusterRequest {
  documents: DocumentRecord[];
  k: number;
  algorithm?: "sib" | "kmeans";
  restarts?: number;
  seed?: number;
  max_sweeps?: number;
  min_df?: number;
  max_df_fraction?: number;
}

export interface ClusterResponse {
  algorithm: string;
  k: number;
  assignment: number[];
  document_ids: string[];
  objective_bits: number;
}

export interface ThemesRequest {
  sentences: DocumentRecord[];
  assignment: number[];
  lexicon?: string;
  alpha?: number;
  theta_dedupe?: number;
}

export interface EnrichedTheme {
  concept: string;
  p: number;
  /** Sentences containing the concept: corpus-wide and inside the cluster. */
  K: number;
  k: number;
}

export interface ClusterThemes {
  cluster: number;
  themes: EnrichedTheme[];
}

export interface ThemesResponse {
  clusters: ClusterThemes[];
}

export interface SentenceRequest {
  sentence: string;
}

export interface TopicSentenceRequest {
  sentence: string;
  topic: Topic;
}

export interface ClaimBoundariesResponse {
  claim: string;
  start: number;
  end: number;
}

export interface StanceResponse {
  label: "pro" | "con";
  confidence: number;
}

export interface NarrativeRequest {
  topic: Topic;
  arguments: string[];
  stance?: "pro" | "con";
  min_stance_confidence?: number;
  top_n_quality?: number;
  paragraphs?: number;
  args_per_paragraph?: number;
  mode?: "kpa" | "clustering";
  lexicon?: string | null;
}

export interface SpeechParagraph {
  header: string;
  arguments: string[];
}

export interface NarrativeResponse {
  opening: string;
  paragraphs: SpeechParagraph[];
  closing: string;
  full_text: string;
}

export interface IndexQueryRequest {
  sentences: DocumentRecord[];
  query: string;
  layers?: Record<string, Record<string, string[]>>;
  limit?: number | null;
  offset?: number;
}

export interface IndexMatch {
  sentence_id: string;
  spans: [number, number][];
}

export interface IndexQueryResponse {
  plan: string;
  matches: IndexMatch[];
}

export interface KpaParams {
  k_max?: number;
  tau?: number;
  tau_dup?: number;
  q_min?: number;
  min_tokens?: number;
  max_tokens?: number;
  delta?: number;
  multi_match?: boolean;
  matcher?: "token_overlap" | "tfidf";
  given_key_points?: string[] | null;
}

export interface KpaSubmitRequest {
  comments: string[];
  params?: KpaParams;
}

export interface KeyPointMatch {
  id: string;
  score: number;
}

export interface KeyPoint {
  text: string;
  salience: number;
  matches: KeyPointMatch[];
}

export interface KpaResult {
  key_points: KeyPoint[];
  coverage: number;
  total_sentences: number;
}

export type JobState = "pending" | "running" | "done" | "failed";

export interface KpaJob {
  job_id: string;
  state: JobState;
  result?: KpaResult;
  error?: { code: string; message: string };
}

export interface KpaSubmitReceipt {
  job_id: string;
  state: JobState;
  /** The x-idempotency-key this client sent, as echoed by the service. */
  idempotency_key: string | null;
}
