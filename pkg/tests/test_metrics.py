from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from argmine.errors import InputError
from argmine.metrics import (
    ContingencyTable,
    ami,
    ari,
    pearson,
    precision_recall_f1,
    spearman,
)


def ari_pair_counting(u, v) -> float:
    """Independent ARI oracle: classify every item pair and apply the
    pair-count identity ARI = 2(ad-bc) / ((a+b)(b+d)+(a+c)(c+d))."""
    a = b = c = d = 0
    for i, j in itertools.combinations(range(len(u)), 2):
        same_u = u[i] == u[j]
        same_v = v[i] == v[j]
        if same_u and same_v:
            a += 1
        elif same_u:
            b += 1
        elif same_v:
            c += 1
        else:
            d += 1
    num = 2 * (a * d - b * c)
    den = (a + b) * (b + d) + (a + c) * (c + d)
    if den == 0:
        return 1.0
    return num / den


def expected_mi_fraction(u, v) -> float:
    """Independent exact-E[MI] oracle: hypergeometric cell probabilities as
    exact rationals via math.comb, log terms in floats."""
    table = ContingencyTable.from_labelings(u, v)
    n = table.n
    total = 0.0
    for ai in table.row_marginals:
        for bj in table.col_marginals:
            for nij in range(max(1, ai + bj - n), min(ai, bj) + 1):
                prob = Fraction(math.comb(ai, nij) * math.comb(n - ai, bj - nij), math.comb(n, bj))
                total += (nij / n) * math.log(n * nij / (ai * bj)) * float(prob)
    return total


def ami_oracle(u, v) -> float:
    table = ContingencyTable.from_labelings(u, v)
    n = table.n
    if table.counts.shape[0] == table.counts.shape[1]:
        if all((row > 0).sum() == 1 for row in table.counts) and all(
            (col > 0).sum() == 1 for col in table.counts.T
        ):
            return 1.0
    mi = 0.0
    for i in range(table.counts.shape[0]):
        for j in range(table.counts.shape[1]):
            nij = table.counts[i, j]
            if nij:
                mi += (nij / n) * math.log(n * nij / (table.row_marginals[i] * table.col_marginals[j]))
    hu = -sum((x / n) * math.log(x / n) for x in table.row_marginals if x)
    hv = -sum((x / n) * math.log(x / n) for x in table.col_marginals if x)
    emi = expected_mi_fraction(u, v)
    denom = 0.5 * (hu + hv) - emi
    if denom == 0:
        return 0.0
    return (mi - emi) / denom


labelings = st.integers(min_value=4, max_value=8).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 3), min_size=n, max_size=n),
        st.lists(st.integers(0, 3), min_size=n, max_size=n),
    )
)


class TestAmi:
    def test_identical_is_exactly_one(self):
        assert ami([1, 1, 2, 2, 3], [1, 1, 2, 2, 3]) == 1.0

    def test_identical_up_to_relabeling_is_exactly_one(self):
        assert ami([1, 1, 2, 2], ["b", "b", "a", "a"]) == 1.0

    def test_constant_u_scores_zero(self):
        assert ami([7, 7, 7, 7], [1, 2, 1, 2]) == 0.0

    def test_both_constant_scores_one(self):
        assert ami([0, 0, 0], [5, 5, 5]) == 1.0

    def test_eight_element_table_matches_direct_expected_mi(self):
        u = [0, 0, 0, 1, 1, 1, 2, 2]
        v = [0, 1, 0, 1, 1, 0, 2, 2]
        assert ami(u, v) == pytest.approx(ami_oracle(u, v), abs=1e-12)

    def test_length_mismatch_raises(self):
        with pytest.raises(InputError):
            ami([1, 2], [1, 2, 3])

    @given(labelings)
    @settings(max_examples=60, deadline=None)
    def test_matches_oracle_on_random_labelings(self, uv):
        u, v = uv
        assert ami(u, v) == pytest.approx(ami_oracle(u, v), abs=1e-9)

    @given(labelings)
    @settings(max_examples=40, deadline=None)
    def test_symmetric(self, uv):
        u, v = uv
        assert ami(u, v) == pytest.approx(ami(v, u), abs=1e-12)

    @given(labelings)
    @settings(max_examples=40, deadline=None)
    def test_relabel_invariant(self, uv):
        u, v = uv
        remap = {0: "w", 1: "x", 2: "y", 3: "z"}
        assert ami([remap[x] for x in u], v) == pytest.approx(ami(u, v), abs=1e-12)

    @given(labelings)
    @settings(max_examples=60, deadline=None)
    def test_at_most_one(self, uv):
        u, v = uv
        assert ami(u, v) <= 1.0


class TestAri:
    def test_identical(self):
        assert ari([1, 1, 2], [1, 1, 2]) == 1.0

    def test_hand_case_minus_half(self):
        assert ari([1, 1, 2, 2], [1, 2, 1, 2]) == pytest.approx(-0.5, abs=1e-15)

    def test_length_mismatch_raises(self):
        with pytest.raises(InputError):
            ari([1], [1, 2])

    def test_matches_pair_counting_on_all_six_element_labelings(self):
        rng = random.Random(7)
        for _ in range(300):
            u = [rng.randint(0, 2) for _ in range(6)]
            v = [rng.randint(0, 2) for _ in range(6)]
            assert ari(u, v) == pytest.approx(ari_pair_counting(u, v), abs=1e-12)

    def test_random_partitions_average_near_zero(self):
        rng = random.Random(123)
        total = 0.0
        trials = 10_000
        for _ in range(trials):
            u = [rng.randint(0, 2) for _ in range(12)]
            v = [rng.randint(0, 2) for _ in range(12)]
            total += ari(u, v)
        assert abs(total / trials) < 0.02

    @given(labelings)
    @settings(max_examples=40, deadline=None)
    def test_symmetric(self, uv):
        u, v = uv
        assert ari(u, v) == pytest.approx(ari(v, u), abs=1e-12)

    @given(labelings)
    @settings(max_examples=40, deadline=None)
    def test_relabel_invariant(self, uv):
        u, v = uv
        remap = {0: 10, 1: 11, 2: 12, 3: 13}
        assert ari(u, [remap[x] for x in v]) == pytest.approx(ari(u, v), abs=1e-12)


class TestPrecisionRecallF1:
    def test_hand_case(self):
        p, r, f1 = precision_recall_f1(3, 1, 2)
        assert p == pytest.approx(0.75)
        assert r == pytest.approx(0.6)
        assert f1 == pytest.approx(0.6667, abs=1e-4)

    def test_all_zero(self):
        assert precision_recall_f1(0, 0, 0) == (0.0, 0.0, 0.0)

    def test_perfect(self):
        assert precision_recall_f1(5, 0, 0) == (1.0, 1.0, 1.0)

    def test_negative_raises(self):
        with pytest.raises(InputError):
            precision_recall_f1(1, -1, 0)

    @given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
    def test_within_unit_interval(self, tp, fp, fn):
        p, r, f1 = precision_recall_f1(tp, fp, fn)
        assert 0 <= p <= 1 and 0 <= r <= 1 and 0 <= f1 <= 1


def rank_average(xs) -> list[float]:
    order = sorted(range(len(xs)), key=lambda i: xs[i])
    ranks = [0.0] * len(xs)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and xs[order[j + 1]] == xs[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


class TestCorrelations:
    def test_perfect_linear(self):
        assert pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
        assert spearman([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)

    def test_reversed(self):
        assert pearson([1, 2, 3], [6, 4, 2]) == pytest.approx(-1.0)
        assert spearman([1, 2, 3], [6, 4, 2]) == pytest.approx(-1.0)

    def test_spearman_ties_match_rank_then_pearson(self):
        xs = [1.0, 2.0, 2.0, 3.0, 5.0]
        ys = [2.0, 1.0, 4.0, 4.0, 5.0]
        expected = pearson(rank_average(xs), rank_average(ys))
        assert spearman(xs, ys) == pytest.approx(expected, abs=1e-12)

    def test_constant_input_raises(self):
        with pytest.raises(InputError):
            pearson([1, 1, 1], [1, 2, 3])
        with pytest.raises(InputError):
            spearman([1, 2, 3], [4, 4, 4])

    def test_too_short_raises(self):
        with pytest.raises(InputError):
            pearson([1], [2])

    def test_length_mismatch_raises(self):
        with pytest.raises(InputError):
            spearman([1, 2], [1, 2, 3])

    @given(
        st.lists(st.floats(-100, 100, allow_nan=False), min_size=3, max_size=12),
        st.data(),
    )
    @settings(max_examples=50, deadline=None)
    def test_symmetric(self, xs, data):
        ys = data.draw(st.lists(st.floats(-100, 100), min_size=len(xs), max_size=len(xs)))
        if len(set(xs)) < 2 or len(set(ys)) < 2:
            return
        assert pearson(xs, ys) == pytest.approx(pearson(ys, xs), abs=1e-12)
        assert spearman(xs, ys) == pytest.approx(spearman(ys, xs), abs=1e-12)


class TestContingencyTable:
    def test_validate_accepts_consistent(self):
        t = ContingencyTable.from_labelings([1, 1, 2], [1, 2, 2])
        t.validate()
        assert t.n == 3

    def test_validate_rejects_bad_marginals(self):
        t = ContingencyTable.from_labelings([1, 1, 2], [1, 2, 2])
        bad = ContingencyTable(t.counts, t.row_marginals + 1, t.col_marginals, t.n)
        with pytest.raises(InputError):
            bad.validate()
