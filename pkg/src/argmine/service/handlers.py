"""One handler per endpoint, shared verbatim by the HTTP routes and the
command line so both fronts return byte-identical payloads.

Handlers take a validated request model and return a JSON-ready dict.
Domain errors surface as InputError/SemanticError; the caller maps them to
status codes (HTTP) or exit codes (CLI).
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from ..bow import build_bow
from ..errors import InputError
from ..kmeans import kmeans_cluster
from ..kpa import PairMatcher, TfidfCosineMatcher, TokenOverlapMatcher, run_kpa
from ..narrative import generate_narrative
from ..scorers import ScorerRegistry, default_registry
from ..sentindex import build_index, execute, parse_query, print_query, register_lexicon_layer
from ..sib import sib_cluster
from ..textcore import make_sentence, tokenize
from ..themes import extract_themes
from ..wikify import (
    ConceptLexicon,
    annotate_concepts,
    load_lexicon_files,
    relatedness_baseline,
    wikify,
)
from .models import (
    ClusterRequest,
    IndexQueryRequest,
    KpaSubmitRequest,
    NarrativeRequest,
    RelatednessRequest,
    SentenceScoreRequest,
    ThemesRequest,
    TopicSentenceRequest,
    WikifyRequest,
)


@lru_cache(maxsize=None)
def lexicon_by_name(name: str) -> ConceptLexicon:
    """Bundled concept lexicons; "default" is the only shipped one."""
    if name != "default":
        raise InputError(f"unknown lexicon {name!r}", code="lexicon.unknown")
    root = resources.files("argmine.data").joinpath("gazetteer")
    with resources.as_file(root.joinpath("titles.tsv")) as titles, resources.as_file(
        root.joinpath("redirects.tsv")
    ) as redirects:
        return load_lexicon_files(str(titles), str(redirects))


def matcher_by_id(impl_id: str) -> PairMatcher:
    if impl_id == "token_overlap":
        return TokenOverlapMatcher()
    if impl_id == "tfidf":
        return TfidfCosineMatcher()
    raise InputError(f"unknown matcher {impl_id!r}", code="kpa.unknown-matcher")


@lru_cache(maxsize=1)
def _registry() -> ScorerRegistry:
    return default_registry()


def handle_wikify(req: WikifyRequest) -> dict:
    lexicon = lexicon_by_name(req.lexicon)
    mentions = wikify(make_sentence("s0", req.text), lexicon)
    return {
        "mentions": [
            {
                "concept": m.concept,
                "first_token": m.first_token,
                "last_token": m.last_token,
                "surface": m.surface,
                "via_redirect": m.via_redirect,
            }
            for m in mentions
        ]
    }


def handle_relatedness(req: RelatednessRequest) -> dict:
    return {"score": relatedness_baseline(req.concept_a, req.concept_b)}


def handle_cluster(req: ClusterRequest) -> dict:
    docs = [tokenize(d.text) for d in req.documents]
    matrix = build_bow(
        [[t.surface.lower() for t in doc] for doc in docs],
        min_df=req.min_df,
        max_df_fraction=req.max_df_fraction,
    )
    if req.algorithm == "sib":
        partition = sib_cluster(matrix, req.to_sib_params(req.k))
    else:
        partition = kmeans_cluster(matrix, req.k, restarts=req.restarts, seed=req.seed)
    payload = partition.to_payload()
    payload["algorithm"] = req.algorithm
    payload["document_ids"] = [d.id for d in req.documents]
    return payload


def handle_themes(req: ThemesRequest) -> dict:
    if len(req.assignment) != len(req.sentences):
        raise InputError(
            f"assignment length {len(req.assignment)} does not match "
            f"{len(req.sentences)} sentences",
            code="themes.bad-assignment",
        )
    lexicon = lexicon_by_name(req.lexicon)
    sentences = [annotate_concepts(make_sentence(s.id, s.text), lexicon) for s in req.sentences]
    results = extract_themes(
        req.assignment,
        sentences,
        relatedness_baseline,
        alpha=req.alpha,
        theta_dedupe=req.theta_dedupe,
    )
    return {"clusters": [r.to_payload() for r in results]}


def handle_claim_score(req: TopicSentenceRequest) -> dict:
    sentence = make_sentence("s0", req.sentence)
    return {"score": _registry().claim(sentence, req.topic.to_topic())}


def handle_evidence_score(req: TopicSentenceRequest) -> dict:
    sentence = make_sentence("s0", req.sentence)
    return {"score": _registry().evidence(sentence, req.topic.to_topic())}


def handle_quality(req: SentenceScoreRequest) -> dict:
    return {"score": _registry().quality(make_sentence("s0", req.sentence))}


def handle_stance(req: TopicSentenceRequest) -> dict:
    label = _registry().stance(make_sentence("s0", req.sentence), req.topic.to_topic())
    return {"label": label.label, "confidence": label.confidence}


def handle_claim_boundaries(req: SentenceScoreRequest) -> dict:
    start, end = _registry().boundaries(make_sentence("s0", req.sentence))
    return {"start": start, "end": end, "claim": req.sentence[start:end]}


def handle_kpa(req: KpaSubmitRequest) -> dict:
    params = req.params.to_params()
    matcher = matcher_by_id(req.params.matcher)
    summary = run_kpa(req.comments, params, matcher)
    return summary.to_payload()


def handle_narrative(req: NarrativeRequest) -> dict:
    lexicon = None if req.lexicon is None else lexicon_by_name(req.lexicon)
    speech = generate_narrative(
        req.topic.to_topic(), req.arguments, req.to_params(), lexicon=lexicon
    )
    return speech.to_payload()


def handle_index_query(req: IndexQueryRequest) -> dict:
    index = build_index([make_sentence(s.id, s.text) for s in req.sentences])
    for name, words in sorted(req.layers.items()):
        index = register_lexicon_layer(index, name, words)
    plan = parse_query(req.query)
    matches = execute(plan, index, limit=req.limit, offset=req.offset)
    return {
        "plan": print_query(plan),
        "matches": [
            {"sentence_id": m.sentence_id, "spans": [list(span) for span in m.element_spans]}
            for m in matches
        ],
    }
