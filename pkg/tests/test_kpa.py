from __future__ import annotations

import json
import math
import random
from importlib import resources

import pytest

from argmine.errors import InputError
from argmine.kpa import (
    KpaParams,
    MatchTable,
    TfidfCosineMatcher,
    TokenOverlapMatcher,
    assign,
    canonical_sentences,
    compare_over_time,
    format_report,
    greedy_select,
    match_matrix,
    run_kpa,
)
from argmine.textcore import make_sentence


def load_toy_comments() -> list[str]:
    data = resources.files("argmine.data").joinpath("examples/toy_comments.jsonl")
    return [json.loads(line)["text"] for line in data.read_text().splitlines() if line.strip()]


PARKING = "parking"
BIKE = "bike"


class TestTokenOverlapMatcher:
    def test_partial_overlap(self):
        matcher = TokenOverlapMatcher()
        score = matcher.match(
            make_sentence("s", "plastic bags ban now"), make_sentence("c", "ban plastic bags")
        )
        assert score == pytest.approx(3 / math.sqrt(12))

    def test_disjoint_tokens(self):
        matcher = TokenOverlapMatcher()
        assert matcher.match(make_sentence("s", "alpha beta"), make_sentence("c", "gamma")) == 0.0

    def test_identity_is_exactly_one(self):
        matcher = TokenOverlapMatcher()
        s = make_sentence("s", "ban plastic bags")
        assert matcher.match(s, make_sentence("c", "ban plastic bags")) == 1.0

    def test_symmetric(self):
        matcher = TokenOverlapMatcher()
        a = make_sentence("a", "the city needs parking")
        b = make_sentence("b", "parking is scarce in the city")
        assert matcher.match(a, b) == matcher.match(b, a)


class TestTfidfCosineMatcher:
    def test_identity_is_exactly_one(self):
        matcher = TfidfCosineMatcher()
        s = make_sentence("s", "ban plastic bags")
        assert matcher.match(s, make_sentence("c", "ban plastic bags")) == 1.0

    def test_prepared_value_matches_hand_computation(self):
        a = make_sentence("a", "a b")
        b = make_sentence("b", "a c")
        matcher = TfidfCosineMatcher()
        matcher.prepare([a, b])
        # shared term "a" has idf 1, the two singletons share idf log(3/2)+1
        rare = math.log(3 / 2) + 1.0
        assert matcher.match(a, b) == pytest.approx(1.0 / (1.0 + rare * rare))

    def test_unprepared_degrades_to_count_cosine(self):
        matcher = TfidfCosineMatcher()
        a = make_sentence("a", "a b")
        b = make_sentence("b", "a c")
        assert matcher.match(a, b) == pytest.approx(0.5)

    def test_symmetric_and_bounded(self):
        matcher = TfidfCosineMatcher()
        sents = [
            make_sentence(f"s{i}", text)
            for i, text in enumerate(["parking downtown is scarce", "bike lanes downtown", "parking fees"])
        ]
        matcher.prepare(sents)
        for x in sents:
            for y in sents:
                assert matcher.match(x, y) == matcher.match(y, x)
                assert 0.0 <= matcher.match(x, y) <= 1.0

    def test_unseen_terms_do_not_crash(self):
        matcher = TfidfCosineMatcher()
        matcher.prepare([make_sentence("a", "a b")])
        out = matcher.match(make_sentence("x", "zz qq"), make_sentence("y", "zz rr"))
        assert 0.0 < out < 1.0


class TestMatchMatrix:
    def test_shape_and_self_match(self):
        sentences = [make_sentence(f"s{i}", t) for i, t in enumerate(["a b c", "d e f", "a b"])]
        candidates = [sentences[0], sentences[2]]
        table = match_matrix(sentences, candidates, TokenOverlapMatcher())
        assert len(table.scores) == 2
        assert all(len(row) == 3 for row in table.scores)
        assert table.scores[0][0] == 1.0
        assert table.scores[1][2] == 1.0

    def test_empty_inputs_rejected(self):
        s = [make_sentence("s", "a b c")]
        with pytest.raises(InputError):
            match_matrix([], s, TokenOverlapMatcher())
        with pytest.raises(InputError):
            match_matrix(s, [], TokenOverlapMatcher())


def table_from_rows(rows, sentence_ids, candidate_ids=None):
    candidate_ids = candidate_ids or tuple(f"c{i + 1}" for i in range(len(rows)))
    return MatchTable(
        candidate_ids=tuple(candidate_ids),
        candidate_texts=tuple(f"text of {cid}" for cid in candidate_ids),
        sentence_ids=tuple(sentence_ids),
        scores=tuple(tuple(float(v) for v in row) for row in rows),
    )


ZEROS3 = ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0), (0.0, 0.0, 0.0))


class TestGreedySelect:
    def test_marginal_gain_walkthrough(self):
        # c1 matches s1..s3, c2 matches s3,s4, c3 matches s1,s2
        table = table_from_rows(
            [(1, 1, 1, 0), (0, 0, 1, 1), (1, 1, 0, 0)], ["s1", "s2", "s3", "s4"]
        )
        params = KpaParams(k_max=3, tau=0.5, tau_dup=0.75, delta=1)
        assert greedy_select(table, params, dup_scores=ZEROS3) == ("c1", "c2")

    def test_k_max_zero_selects_nothing(self):
        table = table_from_rows([(1, 1)], ["s1", "s2"])
        params = KpaParams(k_max=0, tau=0.5, delta=1)
        assert greedy_select(table, params, dup_scores=((0.0,),)) == ()

    def test_duplicate_with_positive_gain_is_skipped(self):
        # c3 would add s4 but is a near-duplicate of c1; c2 wins instead
        table = table_from_rows(
            [(1, 1, 1, 0), (0, 0, 0, 1), (1, 1, 0, 1)], ["s1", "s2", "s3", "s4"]
        )
        dup = ((0.0, 0.0, 0.9), (0.0, 0.0, 0.0), (0.9, 0.0, 0.0))
        params = KpaParams(k_max=3, tau=0.5, tau_dup=0.75, delta=1)
        assert greedy_select(table, params, dup_scores=dup) == ("c1", "c2")
        relaxed = KpaParams(k_max=3, tau=0.5, tau_dup=0.95, delta=1)
        # same table without the redundancy bar: c3 wins the tie on mass
        assert greedy_select(table, relaxed, dup_scores=dup) == ("c1", "c3")

    def test_tie_broken_by_total_mass(self):
        table = table_from_rows([(0.6, 0.6, 0.0), (0.3, 0.6, 0.6)], ["s1", "s2", "s3"])
        params = KpaParams(k_max=2, tau=0.5, delta=1)
        dup = ((0.0, 0.0), (0.0, 0.0))
        assert greedy_select(table, params, dup_scores=dup)[0] == "c2"

    def test_tie_broken_by_lower_index(self):
        table = table_from_rows([(0.6, 0.6, 0.0), (0.0, 0.6, 0.6)], ["s1", "s2", "s3"])
        params = KpaParams(k_max=2, tau=0.5, delta=1)
        dup = ((0.0, 0.0), (0.0, 0.0))
        assert greedy_select(table, params, dup_scores=dup)[0] == "c1"

    def test_delta_cuts_off_small_gains(self):
        table = table_from_rows([(1, 1, 1, 0), (0, 0, 0, 1)], ["s1", "s2", "s3", "s4"])
        params = KpaParams(k_max=5, tau=0.5, delta=2)
        dup = ((0.0, 0.0), (0.0, 0.0))
        assert greedy_select(table, params, dup_scores=dup) == ("c1",)

    def test_bad_dup_shape_rejected(self):
        table = table_from_rows([(1, 1)], ["s1", "s2"])
        with pytest.raises(InputError):
            greedy_select(table, KpaParams(k_max=1, delta=1), dup_scores=((0.0, 0.0),))

    def test_dup_derivation_requires_candidate_columns(self):
        table = table_from_rows([(1, 1)], ["s1", "s2"])
        with pytest.raises(InputError, match="dup_scores"):
            greedy_select(table, KpaParams(k_max=1, delta=1))


class TestAssign:
    def test_zero_tau_assigns_everything(self):
        table = table_from_rows([(0.2, 0.9), (0.3, 0.1)], ["s1", "s2"])
        summary = assign(table, ("c1", "c2"), 0.0)
        assert summary.coverage == 1.0
        assert sum(kp.salience for kp in summary.key_points) == 2

    def test_unsatisfiable_tau_assigns_nothing(self):
        table = table_from_rows([(0.2, 0.9), (0.3, 0.1)], ["s1", "s2"])
        summary = assign(table, ("c1", "c2"), 2.0)
        assert summary.coverage == 0.0
        assert all(kp.salience == 0 for kp in summary.key_points)

    def test_argmax_with_threshold_oracle(self):
        rows = [(0.9, 0.2, 0.6, 0.55, 0.3), (0.1, 0.8, 0.65, 0.55, 0.2)]
        sids = ["s1", "s2", "s3", "s4", "s5"]
        table = table_from_rows(rows, sids)
        tau = 0.55
        summary = assign(table, ("c1", "c2"), tau)

        expected = {"c1": [], "c2": []}
        for j, sid in enumerate(sids):
            scores = [rows[0][j], rows[1][j]]
            best = 0 if scores[0] >= scores[1] else 1
            if scores[best] >= tau:
                expected[("c1", "c2")[best]].append(sid)
        by_text = {kp.text: sorted(sid for sid, _ in kp.matches) for kp in summary.key_points}
        assert by_text["text of c1"] == sorted(expected["c1"])
        assert by_text["text of c2"] == sorted(expected["c2"])
        assert summary.coverage == pytest.approx(4 / 5)

    def test_matches_sorted_by_descending_score(self):
        table = table_from_rows([(0.6, 0.9, 0.7)], ["s1", "s2", "s3"])
        summary = assign(table, ("c1",), 0.5)
        scores = [score for _, score in summary.key_points[0].matches]
        assert scores == sorted(scores, reverse=True)

    def test_salience_accounting(self):
        table = table_from_rows([(0.9, 0.2, 0.6), (0.1, 0.8, 0.65)], ["s1", "s2", "s3"])
        summary = assign(table, ("c1", "c2"), 0.55)
        total = sum(kp.salience for kp in summary.key_points)
        assert total == round(summary.coverage * summary.total_sentences)

    def test_multi_match_counts_memberships(self):
        table = table_from_rows([(0.9, 0.8), (0.7, 0.1)], ["s1", "s2"])
        summary = assign(table, ("c1", "c2"), 0.55, multi_match=True)
        assert sum(kp.salience for kp in summary.key_points) == 3
        assert summary.coverage == 1.0

    def test_unknown_selected_id_rejected(self):
        table = table_from_rows([(0.9,)], ["s1"])
        with pytest.raises(InputError):
            assign(table, ("nope",), 0.5)


class TestParams:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"k_max": -1},
            {"tau": 1.5},
            {"tau": -0.1},
            {"tau": 0.8, "tau_dup": 0.7},
            {"min_tokens": 0},
            {"min_tokens": 5, "max_tokens": 4},
            {"delta": 0},
            {"given_key_points": ()},
            {"given_key_points": ("ok", " ")},
        ],
    )
    def test_invalid_params_rejected(self, kwargs):
        with pytest.raises(InputError):
            KpaParams(**kwargs).validate()

    def test_defaults_are_valid(self):
        KpaParams().validate()


class TestCanonicalSentences:
    def test_order_is_permutation_invariant(self):
        comments = ["Parking is scarce. Fees are high.", "Bike lanes help."]
        a = canonical_sentences(comments)
        b = canonical_sentences(list(reversed(comments)))
        assert a == b

    def test_duplicates_get_distinct_ids(self):
        records = canonical_sentences(["same text here", "same text here"])
        assert len(records) == 2
        assert records[0].text == records[1].text
        assert records[0].id != records[1].id

    def test_multi_sentence_comment_is_split(self):
        records = canonical_sentences(["First point here. Second point there."])
        assert sorted(r.text for r in records) == ["First point here.", "Second point there."]


class TestRunKpa:
    def test_ten_copies_one_key_point(self):
        comments = ["The council should repair the old bridge soon."] * 10
        summary = run_kpa(comments, KpaParams(), TokenOverlapMatcher())
        assert len(summary.key_points) == 1
        assert summary.key_points[0].salience == 10
        assert summary.coverage == 1.0

    def test_toy_corpus_walkthrough(self):
        comments = load_toy_comments()
        params = KpaParams(k_max=2, tau=0.5, tau_dup=0.75, delta=1)
        summary = run_kpa(comments, params, TokenOverlapMatcher())
        assert [kp.salience for kp in summary.key_points] == [3, 2]
        assert summary.coverage == pytest.approx(5 / 6)
        assert PARKING in summary.key_points[0].text
        assert BIKE in summary.key_points[1].text

    def test_empty_comments_rejected(self):
        with pytest.raises(InputError):
            run_kpa([], KpaParams(), TokenOverlapMatcher())

    def test_blank_comments_rejected(self):
        with pytest.raises(InputError, match="no sentences"):
            run_kpa(["   ", "\n"], KpaParams(), TokenOverlapMatcher())

    def test_no_candidates_names_the_knob(self):
        with pytest.raises(InputError, match="q_min"):
            run_kpa(["Yes."], KpaParams(), TokenOverlapMatcher())

    def test_given_key_points_reproduce_prior_run(self):
        comments = load_toy_comments()
        params = KpaParams(k_max=2, tau=0.5, tau_dup=0.75, delta=1)
        base = run_kpa(comments, params, TokenOverlapMatcher())
        replay = run_kpa(
            comments,
            KpaParams(
                k_max=2,
                tau=0.5,
                tau_dup=0.75,
                delta=1,
                given_key_points=tuple(kp.text for kp in base.key_points),
            ),
            TokenOverlapMatcher(),
        )
        assert replay == base

    def test_permutation_invariance(self):
        comments = load_toy_comments()
        params = KpaParams(k_max=2, tau=0.5, tau_dup=0.75, delta=1)
        base = run_kpa(comments, params, TokenOverlapMatcher())
        for seed in range(4):
            shuffled = comments[:]
            random.Random(seed).shuffle(shuffled)
            assert run_kpa(shuffled, params, TokenOverlapMatcher()) == base

    def test_coverage_monotone_in_k_max(self):
        comments = load_toy_comments()
        previous = -1.0
        for k_max in (0, 1, 2, 3, 6):
            params = KpaParams(k_max=k_max, tau=0.5, tau_dup=0.75, delta=1)
            summary = run_kpa(comments, params, TokenOverlapMatcher())
            assert summary.coverage >= previous
            previous = summary.coverage

    def test_coverage_anti_monotone_in_tau(self):
        comments = load_toy_comments()
        previous = 2.0
        for tau in (0.1, 0.3, 0.5, 0.7, 0.95):
            params = KpaParams(k_max=6, tau=tau, tau_dup=1.0, delta=1)
            summary = run_kpa(comments, params, TokenOverlapMatcher())
            assert summary.coverage <= previous
            previous = summary.coverage

    def test_tfidf_matcher_end_to_end(self):
        comments = load_toy_comments()
        params = KpaParams(k_max=2, tau=0.5, tau_dup=0.75, delta=1)
        summary = run_kpa(comments, params, TfidfCosineMatcher())
        assert summary.total_sentences == 6
        assert summary.key_points
        for kp in summary.key_points:
            for _, score in kp.matches:
                assert score >= 0.5


GROUP_WORDS = {
    "park": ["parking", "cars", "garage", "downtown", "spaces", "street", "meters"],
    "bike": ["bike", "lanes", "cycling", "safety", "helmet", "paths", "riders"],
    "lib": ["library", "books", "reading", "hours", "weekend", "children", "study"],
}
FILLER = ["the", "city", "needs", "more", "better", "plan", "soon", "very"]


def random_corpus(rng: random.Random, n_comments: int = 18) -> list[str]:
    comments = []
    for _ in range(n_comments):
        pool = GROUP_WORDS[rng.choice(list(GROUP_WORDS))]
        words = [rng.choice(pool) for _ in range(rng.randint(5, 9))]
        words += [rng.choice(FILLER), rng.choice(FILLER)]
        rng.shuffle(words)
        comments.append(" ".join(words))
    return comments


@pytest.mark.parametrize("seed", range(12))
def test_pipeline_invariants_on_random_corpora(seed):
    rng = random.Random(seed)
    comments = random_corpus(rng)
    params = KpaParams(k_max=18, tau=0.45, tau_dup=1.0, delta=1, q_min=0.0)
    summary = run_kpa(comments, params, TokenOverlapMatcher())

    saliences = [kp.salience for kp in summary.key_points]
    assert saliences == sorted(saliences, reverse=True)
    assert sum(saliences) == round(summary.coverage * summary.total_sentences)
    for kp in summary.key_points:
        for _, score in kp.matches:
            assert params.tau <= score <= 1.0

    shuffled = comments[:]
    rng.shuffle(shuffled)
    assert run_kpa(shuffled, params, TokenOverlapMatcher()) == summary

    previous = 2.0
    for tau in (0.3, 0.45, 0.6, 0.8):
        step = KpaParams(k_max=18, tau=tau, tau_dup=1.0, delta=1, q_min=0.0)
        coverage = run_kpa(comments, step, TokenOverlapMatcher()).coverage
        assert coverage <= previous + 1e-12
        previous = coverage

    previous = -1.0
    for k_max in (1, 2, 4, 18):
        step = KpaParams(k_max=k_max, tau=0.45, tau_dup=1.0, delta=1, q_min=0.0)
        coverage = run_kpa(comments, step, TokenOverlapMatcher()).coverage
        assert coverage >= previous - 1e-12
        previous = coverage


class TestCompareOverTime:
    def base(self):
        comments = load_toy_comments()
        params = KpaParams(k_max=2, tau=0.5, tau_dup=0.75, delta=1)
        return comments, params, run_kpa(comments, params, TokenOverlapMatcher())

    def test_identical_batch_keeps_saliences(self):
        comments, params, base = self.base()
        rows = compare_over_time(base, comments, params, TokenOverlapMatcher())
        for row in rows:
            assert row.salience_new == row.salience_base

    def test_non_matching_batch_zeroes_out(self):
        _, params, base = self.base()
        alien = ["Quantum flux melts beneath amber skies tonight."] * 3
        rows = compare_over_time(base, alien, params, TokenOverlapMatcher())
        assert all(row.salience_new == 0 for row in rows)

    def test_planted_shift_doubles_salience(self):
        comments, params, base = self.base()
        doubled = comments + [c for c in comments if PARKING in c]
        rows = compare_over_time(base, doubled, params, TokenOverlapMatcher())
        by_text = {row.key_point: row for row in rows}
        parking_row = next(row for text, row in by_text.items() if PARKING in text)
        bike_row = next(row for text, row in by_text.items() if BIKE in text)
        assert parking_row.salience_new == 2 * parking_row.salience_base
        assert bike_row.salience_new == bike_row.salience_base

    def test_empty_base_rejected(self):
        _, params, base = self.base()
        from argmine.kpa import KeyPointSummary

        empty = KeyPointSummary(key_points=(), coverage=0.0, total_sentences=0)
        with pytest.raises(InputError):
            compare_over_time(empty, ["anything here"], params, TokenOverlapMatcher())


class TestReport:
    def test_report_shows_coverage_and_texts(self):
        comments = load_toy_comments()
        params = KpaParams(k_max=2, tau=0.5, tau_dup=0.75, delta=1)
        summary = run_kpa(comments, params, TokenOverlapMatcher())
        records = canonical_sentences(comments)
        report = format_report(summary, records)
        assert "coverage 0.833" in report
        assert "(3)" in report and "(2)" in report
        assert PARKING in report

    def test_report_tolerates_missing_texts(self):
        comments = load_toy_comments()
        params = KpaParams(k_max=2, tau=0.5, tau_dup=0.75, delta=1)
        summary = run_kpa(comments, params, TokenOverlapMatcher())
        report = format_report(summary)
        assert "key points" in report


def test_summary_payload_shape():
    comments = load_toy_comments()
    params = KpaParams(k_max=2, tau=0.5, tau_dup=0.75, delta=1)
    payload = run_kpa(comments, params, TokenOverlapMatcher()).to_payload()
    assert set(payload) == {"key_points", "coverage", "total_sentences"}
    assert payload["total_sentences"] == 6
    first = payload["key_points"][0]
    assert set(first) == {"text", "salience", "matches"}
    assert set(first["matches"][0]) == {"id", "score"}
