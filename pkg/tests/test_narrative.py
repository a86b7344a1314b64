from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from argmine.errors import InputError, SemanticError
from argmine.kpa import TokenOverlapMatcher
from argmine.narrative import (
    NarrativeParams,
    Speech,
    cleanup_rephrase,
    generate_narrative,
    load_discourse_markers,
    load_templates,
)
from argmine.scorers import Topic, stance_baseline
from argmine.textcore import make_sentence
from argmine.wikify import load_lexicon

BAN_SMOKING = Topic(text="Smoking should be banned", target="Smoking", action_polarity="suppressing")
ALLOW_SMOKING = Topic(text="Smoking should be allowed", target="Smoking", action_polarity="promoting")

HEALTH_ARGS = [
    "Smoking causes terrible lung disease in smokers.",
    "Smoking causes terrible lung disease in adults.",
    "Smoking causes terrible lung disease in workers.",
    "Smoking causes terrible lung disease in teens.",
]
COST_ARGS = [
    "Cigarettes impose harmful costs on every city budget.",
    "Cigarettes impose harmful costs on every town budget.",
    "Cigarettes impose harmful costs on every state budget.",
    "Cigarettes impose harmful costs on every school budget.",
]
TOY_ARGS = HEALTH_ARGS + COST_ARGS


class TestCleanupRephrase:
    def test_strips_marker_and_finishes_sentence(self):
        assert cleanup_rephrase("well, I think taxes are bad") == "I think taxes are bad."

    def test_clean_sentence_is_a_fixpoint(self):
        assert cleanup_rephrase("Taxes are bad.") == "Taxes are bad."

    def test_marker_only_input_rejected(self):
        with pytest.raises(SemanticError):
            cleanup_rephrase("so,")

    def test_empty_input_rejected(self):
        with pytest.raises(InputError):
            cleanup_rephrase("")
        with pytest.raises(InputError):
            cleanup_rephrase("   ")

    def test_stacked_markers_all_stripped(self):
        assert cleanup_rephrase("Well,   so, taxes   are bad") == "Taxes are bad."

    def test_multiword_marker(self):
        assert cleanup_rephrase("I mean, you know, parks help") == "Parks help."

    def test_marker_without_comma_is_kept(self):
        assert cleanup_rephrase("well taxes are bad") == "Well taxes are bad."

    def test_capitalizes_and_keeps_existing_punctuation(self):
        assert cleanup_rephrase("taxes are bad!") == "Taxes are bad!"

    @given(st.text(min_size=1, max_size=60))
    @settings(max_examples=300, deadline=None)
    def test_idempotent_on_fuzz_corpus(self, text):
        try:
            once = cleanup_rephrase(text)
        except (InputError, SemanticError):
            return
        assert cleanup_rephrase(once) == once


class TestParams:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"stance": "maybe"},
            {"min_stance_confidence": 1.5},
            {"min_stance_confidence": -0.1},
            {"top_n_quality": 0},
            {"paragraphs": 0},
            {"args_per_paragraph": 0},
            {"mode": "magic"},
        ],
    )
    def test_invalid_params_rejected(self, kwargs):
        with pytest.raises(InputError):
            NarrativeParams(**kwargs).validate()

    def test_defaults_are_valid(self):
        NarrativeParams().validate()


class TestTemplates:
    def test_templates_have_required_parts(self):
        templates = load_templates()
        assert "{topic}" in templates["opening"]
        assert "{topic}" in templates["closing"]
        assert templates["connectives"]

    def test_markers_are_lowercased_and_sorted_longest_first(self):
        markers = load_discourse_markers()
        assert all(m == m.lower() for m in markers)
        lengths = [len(m) for m in markers]
        assert lengths == sorted(lengths, reverse=True)


def kpa_params(**overrides) -> NarrativeParams:
    base = dict(stance="pro", paragraphs=2, args_per_paragraph=2, mode="kpa")
    base.update(overrides)
    return NarrativeParams(**base)


class TestGenerateKpaMode:
    def test_toy_speech_structure(self):
        speech = generate_narrative(BAN_SMOKING, TOY_ARGS, kpa_params(), matcher=TokenOverlapMatcher())
        assert isinstance(speech, Speech)
        assert len(speech.paragraphs) == 2
        for paragraph in speech.paragraphs:
            assert 1 <= len(paragraph.arguments) <= 2
        assert speech.opening in speech.full_text
        assert speech.closing in speech.full_text
        assert "First," in speech.full_text
        assert "Moreover," in speech.full_text
        assert BAN_SMOKING.text in speech.opening

    def test_arguments_appear_exactly_once(self):
        speech = generate_narrative(BAN_SMOKING, TOY_ARGS, kpa_params(), matcher=TokenOverlapMatcher())
        for paragraph in speech.paragraphs:
            for argument in paragraph.arguments:
                assert speech.full_text.count(argument) == 1

    def test_arguments_are_cleanup_fixpoints(self):
        speech = generate_narrative(BAN_SMOKING, TOY_ARGS, kpa_params(), matcher=TokenOverlapMatcher())
        for paragraph in speech.paragraphs:
            for argument in paragraph.arguments:
                assert cleanup_rephrase(argument) == argument

    def test_every_argument_carries_requested_stance(self):
        speech = generate_narrative(BAN_SMOKING, TOY_ARGS, kpa_params(), matcher=TokenOverlapMatcher())
        for paragraph in speech.paragraphs:
            for argument in paragraph.arguments:
                label = stance_baseline(make_sentence("check", argument), BAN_SMOKING)
                assert label.label == "pro"

    def test_byte_identical_reruns(self):
        first = generate_narrative(BAN_SMOKING, TOY_ARGS, kpa_params(), matcher=TokenOverlapMatcher())
        second = generate_narrative(BAN_SMOKING, TOY_ARGS, kpa_params(), matcher=TokenOverlapMatcher())
        assert first == second
        assert first.full_text == second.full_text

    def test_wrong_stance_everywhere_is_an_error(self):
        with pytest.raises(SemanticError, match="no arguments with requested stance"):
            generate_narrative(ALLOW_SMOKING, TOY_ARGS, kpa_params(), matcher=TokenOverlapMatcher())

    def test_empty_arguments_rejected(self):
        with pytest.raises(InputError):
            generate_narrative(BAN_SMOKING, [], kpa_params(), matcher=TokenOverlapMatcher())

    def test_abstaining_arguments_are_dropped(self):
        padded = TOY_ARGS + ["Smoking is a thing people mention."]
        speech = generate_narrative(BAN_SMOKING, padded, kpa_params(), matcher=TokenOverlapMatcher())
        assert "people mention" not in speech.full_text

    def test_confidence_floor_filters_weak_stances(self):
        # cost arguments carry one sentiment word (confidence 1/3) and drop out
        speech = generate_narrative(
            BAN_SMOKING,
            TOY_ARGS,
            kpa_params(min_stance_confidence=0.5),
            matcher=TokenOverlapMatcher(),
        )
        assert "budget" not in speech.full_text
        assert "disease" in speech.full_text

    def test_paragraph_budget_respected(self):
        speech = generate_narrative(
            BAN_SMOKING,
            TOY_ARGS,
            kpa_params(paragraphs=1, args_per_paragraph=1),
            matcher=TokenOverlapMatcher(),
        )
        assert len(speech.paragraphs) == 1
        assert len(speech.paragraphs[0].arguments) == 1

    def test_connectives_cycle_past_template_count(self):
        # 4 single-sentence groups force 4 paragraphs against 3 connectives
        varied = [
            "Smoking causes terrible lung disease quickly.",
            "Cigarettes impose harmful costs on budgets.",
            "Tobacco smoke leaves toxic residue in homes.",
            "Nicotine fosters a dangerous addiction in teenagers.",
        ]
        speech = generate_narrative(
            BAN_SMOKING,
            varied,
            kpa_params(paragraphs=4, args_per_paragraph=2),
            matcher=TokenOverlapMatcher(),
        )
        assert len(speech.paragraphs) == 4
        assert speech.full_text.count("First,") >= 2  # connective list wrapped around


class TestGenerateClusteringMode:
    def params(self) -> NarrativeParams:
        return NarrativeParams(stance="pro", paragraphs=2, args_per_paragraph=2, mode="clustering")

    def test_fallback_headers_without_lexicon(self):
        speech = generate_narrative(BAN_SMOKING, TOY_ARGS, self.params(), matcher=TokenOverlapMatcher())
        assert len(speech.paragraphs) == 2
        for paragraph in speech.paragraphs:
            assert paragraph.header
            assert 1 <= len(paragraph.arguments) <= 2

    def test_theme_headers_with_lexicon(self):
        lexicon = load_lexicon(
            titles=[("Lung_Disease", "Lung_Disease"), ("Budget", "Budget")], redirects=[]
        )
        speech = generate_narrative(
            BAN_SMOKING, TOY_ARGS, self.params(), matcher=TokenOverlapMatcher(), lexicon=lexicon
        )
        assert {p.header for p in speech.paragraphs} == {"Lung Disease.", "Budget."}

    def test_deterministic(self):
        first = generate_narrative(BAN_SMOKING, TOY_ARGS, self.params(), matcher=TokenOverlapMatcher())
        second = generate_narrative(BAN_SMOKING, TOY_ARGS, self.params(), matcher=TokenOverlapMatcher())
        assert first.full_text == second.full_text

    def test_arguments_come_from_distinct_groups(self):
        speech = generate_narrative(BAN_SMOKING, TOY_ARGS, self.params(), matcher=TokenOverlapMatcher())
        blobs = [" ".join(p.arguments) for p in speech.paragraphs]
        health = ["disease" in blob for blob in blobs]
        cost = ["budget" in blob for blob in blobs]
        assert sorted(health) == [False, True]
        assert sorted(cost) == [False, True]


def test_speech_payload_shape():
    speech = generate_narrative(BAN_SMOKING, TOY_ARGS, kpa_params(), matcher=TokenOverlapMatcher())
    payload = speech.to_payload()
    assert set(payload) == {"opening", "paragraphs", "closing", "full_text"}
    assert all(set(p) == {"header", "arguments"} for p in payload["paragraphs"])
