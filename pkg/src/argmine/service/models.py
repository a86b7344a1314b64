"""Request bodies for the HTTP endpoints, one model per route.

These models are the published wire contract: the JSON Schema files under
schemas/v1/ are generated from them, and both the HTTP service and the
command line build the same models before calling the shared handlers.
Unknown fields are rejected so a typo fails loudly instead of being
silently ignored.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..kpa import KpaParams
from ..narrative import NarrativeParams
from ..scorers import Topic
from ..sib import SibParams


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class TopicIn(StrictModel):
    text: str
    target: Optional[str] = None
    action_polarity: Optional[Literal["promoting", "suppressing"]] = None

    def to_topic(self) -> Topic:
        topic = Topic(text=self.text, target=self.target, action_polarity=self.action_polarity)
        topic.validate()
        return topic


class SentenceIn(StrictModel):
    id: str
    text: str


class WikifyRequest(StrictModel):
    text: str
    lexicon: str = "default"


class RelatednessRequest(StrictModel):
    concept_a: str
    concept_b: str


class ClusterRequest(StrictModel):
    documents: list[SentenceIn] = Field(min_length=1)
    k: int = Field(ge=1)
    algorithm: Literal["sib", "kmeans"] = "sib"
    restarts: int = Field(default=10, ge=1)
    seed: int = 0
    max_sweeps: int = Field(default=15, ge=1)
    # Vocabulary window applied before clustering; defaults keep everything.
    min_df: int = Field(default=1, ge=1)
    max_df_fraction: float = Field(default=1.0, gt=0.0, le=1.0)

    def to_sib_params(self, k: int) -> SibParams:
        return SibParams(
            k=k, restarts=self.restarts, max_sweeps=self.max_sweeps, seed=self.seed
        )


class ThemesRequest(StrictModel):
    sentences: list[SentenceIn] = Field(min_length=1)
    assignment: list[int]
    lexicon: str = "default"
    alpha: float = Field(default=0.05, gt=0.0, le=1.0)
    theta_dedupe: float = Field(default=0.8, ge=0.0, le=1.0)


class SentenceScoreRequest(StrictModel):
    sentence: str


class TopicSentenceRequest(StrictModel):
    sentence: str
    topic: TopicIn


class KpaParamsIn(StrictModel):
    k_max: int = 10
    tau: float = 0.55
    tau_dup: float = 0.75
    q_min: float = 0.5
    min_tokens: int = 3
    max_tokens: int = 20
    delta: int = 2
    given_key_points: Optional[list[str]] = None
    multi_match: bool = False
    matcher: Literal["token_overlap", "tfidf"] = "token_overlap"

    def to_params(self) -> KpaParams:
        given = None if self.given_key_points is None else tuple(self.given_key_points)
        params = KpaParams(
            k_max=self.k_max,
            tau=self.tau,
            tau_dup=self.tau_dup,
            q_min=self.q_min,
            min_tokens=self.min_tokens,
            max_tokens=self.max_tokens,
            delta=self.delta,
            given_key_points=given,
            multi_match=self.multi_match,
        )
        params.validate()
        return params


class KpaSubmitRequest(StrictModel):
    comments: list[str] = Field(min_length=1)
    params: KpaParamsIn = Field(default_factory=KpaParamsIn)


class NarrativeRequest(StrictModel):
    topic: TopicIn
    arguments: list[str] = Field(min_length=1)
    stance: Literal["pro", "con"] = "pro"
    min_stance_confidence: float = Field(default=0.0, ge=0.0, le=1.0)
    top_n_quality: int = Field(default=20, ge=1)
    paragraphs: int = Field(default=4, ge=1)
    args_per_paragraph: int = Field(default=3, ge=1)
    mode: Literal["kpa", "clustering"] = "kpa"
    # Narrative in clustering mode groups by concept themes when a lexicon
    # name is given; None keeps the key-point grouping self-contained.
    lexicon: Optional[str] = None

    def to_params(self) -> NarrativeParams:
        params = NarrativeParams(
            stance=self.stance,
            min_stance_confidence=self.min_stance_confidence,
            top_n_quality=self.top_n_quality,
            paragraphs=self.paragraphs,
            args_per_paragraph=self.args_per_paragraph,
            mode=self.mode,
        )
        params.validate()
        return params


class IndexQueryRequest(StrictModel):
    sentences: list[SentenceIn] = Field(min_length=1)
    query: str
    # Extra lexicon layers registered on the transient index, name -> words.
    layers: dict[str, list[str]] = Field(default_factory=dict)
    limit: Optional[int] = Field(default=None, ge=1)
    offset: int = Field(default=0, ge=0)


REQUEST_MODELS: dict[str, type[StrictModel]] = {
    "wikify": WikifyRequest,
    "relatedness": RelatednessRequest,
    "cluster": ClusterRequest,
    "themes": ThemesRequest,
    "claim_score": TopicSentenceRequest,
    "claim_boundaries": SentenceScoreRequest,
    "evidence_score": TopicSentenceRequest,
    "quality": SentenceScoreRequest,
    "stance": TopicSentenceRequest,
    "kpa_submit": KpaSubmitRequest,
    "narrative": NarrativeRequest,
    "index_query": IndexQueryRequest,
}
