"""The published registry of stable error codes.

Every error body the service can emit carries one of these codes. The
table is the contract client SDKs build their typed exceptions from; it is
serialized to schemas/v1/error_codes.json and a test keeps the file, this
table, and the codes actually raised in the source tree in sync.
"""

from __future__ import annotations

AUTH = "auth"
INPUT = "input"
SEMANTIC = "semantic"
NOT_FOUND = "not_found"
TOO_LARGE = "too_large"
INTERNAL = "internal"

# code -> (HTTP status when returned as a response body, category)
ERROR_CODES: dict[str, tuple[int, str]] = {
    "auth.missing": (401, AUTH),
    "auth.invalid": (401, AUTH),
    "body.parse": (400, INPUT),
    "body.schema": (400, INPUT),
    "body.too-large": (413, TOO_LARGE),
    "kpa.too-many-comments": (413, TOO_LARGE),
    "http.not-found": (404, NOT_FOUND),
    "http.method-not-allowed": (405, INPUT),
    "http.error": (500, INTERNAL),
    "http.internal": (500, INTERNAL),
    "job.unknown": (404, NOT_FOUND),
    # job.internal arrives inside a failed job's payload, not as a status.
    "job.internal": (200, INTERNAL),
    "engine.error": (400, INPUT),
    "input.invalid": (400, INPUT),
    "semantic.invalid": (422, SEMANTIC),
    "boundaries.too-short": (422, SEMANTIC),
    "stance.abstain": (422, SEMANTIC),
    "narrative.no-stance-match": (422, SEMANTIC),
    "narrative.empty-after-cleanup": (422, SEMANTIC),
    "narrative.empty": (400, INPUT),
    "bow.bad-index": (400, INPUT),
    "bow.bad-matrix": (400, INPUT),
    "bow.empty-corpus": (400, INPUT),
    "bow.empty-document": (400, INPUT),
    "cluster.bad-params": (400, INPUT),
    "cluster.bad-partition": (400, INPUT),
    "cluster.k-too-large": (400, INPUT),
    "cluster.zero-mass": (400, INPUT),
    "datasets.unknown": (400, INPUT),
    "index.bad-file": (400, INPUT),
    "index.bad-postings": (400, INPUT),
    "index.duplicate-id": (400, INPUT),
    "index.layer-collision": (400, INPUT),
    "kpa.empty": (400, INPUT),
    "kpa.no-candidates": (400, INPUT),
    "kpa.no-sentences": (400, INPUT),
    "kpa.unknown-matcher": (400, INPUT),
    "lexicon.unknown": (400, INPUT),
    "metrics.bad-table": (400, INPUT),
    "metrics.constant-input": (400, INPUT),
    "metrics.length-mismatch": (400, INPUT),
    "metrics.negative-count": (400, INPUT),
    "metrics.too-few-points": (400, INPUT),
    "pipeline.no-arguments": (400, INPUT),
    "query.parse": (400, INPUT),
    "query.bad-pagination": (400, INPUT),
    "query.bad-plan": (400, INPUT),
    "query.unknown-layer": (400, INPUT),
    "registry.unknown-implementation": (400, INPUT),
    "registry.unknown-slot": (400, INPUT),
    "scorer.bad-kind": (400, INPUT),
    "scorer.bad-label": (400, INPUT),
    "scorer.bad-score": (400, INPUT),
    "scorer.empty-sentence": (400, INPUT),
    "sentence.bad-span": (400, INPUT),
    "sentence.bad-token": (400, INPUT),
    "themes.bad-assignment": (400, INPUT),
    "themes.bad-input": (400, INPUT),
    "themes.bad-pvalue": (400, INPUT),
    "themes.bad-query": (400, INPUT),
    "themes.missing-layer": (400, INPUT),
    "topic.bad-polarity": (400, INPUT),
    "topic.empty": (400, INPUT),
    "wikify.ambiguous-surface": (400, INPUT),
    "wikify.bad-title-record": (400, INPUT),
    "wikify.dangling-redirect": (400, INPUT),
    "wikify.empty-title": (400, INPUT),
    "wikify.redirect-cycle": (400, INPUT),
}


def registry_payload() -> dict:
    return {
        "codes": [
            {"code": code, "status": status, "category": category}
            for code, (status, category) in sorted(ERROR_CODES.items())
        ]
    }
