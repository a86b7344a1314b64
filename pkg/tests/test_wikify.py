from __future__ import annotations

import random

import pytest

from argmine.errors import InputError
from argmine.textcore import make_sentence, tokenize
from argmine.wikify import (
    annotate_concepts,
    load_lexicon,
    read_tsv_pairs,
    relatedness_baseline,
    wikify,
)


def titles(*names):
    return [(n, n) for n in names]


class TestLoadLexicon:
    def test_transitive_resolution(self):
        lex = load_lexicon(titles("B", "C"), [("A", "B"), ("B", "C")])
        assert lex.entries[("a",)].concept == "C"
        assert lex.entries[("b",)].concept == "C"
        assert lex.entries[("c",)].concept == "C"

    def test_cycle_raises_listing_cycle(self):
        with pytest.raises(InputError, match="redirect cycle: A,B"):
            load_lexicon([], [("A", "B"), ("B", "A")])

    def test_empty_streams(self):
        lex = load_lexicon([], [])
        assert len(lex) == 0
        assert lex.n_titles == 0
        assert lex.n_redirects == 0

    def test_dangling_redirect_raises(self):
        with pytest.raises(InputError, match="not a title"):
            load_lexicon(titles("B"), [("A", "Missing")])

    def test_ambiguous_redirect_raises(self):
        with pytest.raises(InputError, match="redirects to both"):
            load_lexicon(titles("B", "C"), [("A", "B"), ("A", "C")])

    def test_normalized_surface_collision_raises(self):
        with pytest.raises(InputError, match="maps to both"):
            load_lexicon(titles("X", "Y"), [("Big Apple", "X"), ("big_apple", "Y")])

    def test_title_record_must_be_identity(self):
        with pytest.raises(InputError, match="must map to itself"):
            load_lexicon([("A", "B")], [])

    def test_counts(self):
        lex = load_lexicon(titles("B", "C"), [("A", "B")])
        assert lex.n_titles == 2
        assert lex.n_redirects == 1

    def test_underscores_equal_spaces(self):
        lex = load_lexicon(titles("New_York_City"), [("NYC", "New_York_City")])
        assert ("new", "york", "city") in lex.entries

    def test_via_redirect_flag(self):
        lex = load_lexicon(titles("United_States"), [("USA", "United_States")])
        assert lex.entries[("usa",)].via_redirect is True
        assert lex.entries[("united", "states")].via_redirect is False


class TestWikify:
    def test_longest_leftmost_single_mention(self):
        lex = load_lexicon(
            titles("United_States", "United_States_Congress"),
            [
                ("United States", "United_States"),
                ("United States Congress", "United_States_Congress"),
                ("Congress", "United_States_Congress"),
            ],
        )
        rec = make_sentence("s", "The United States Congress voted")
        mentions = wikify(rec, lex)
        assert len(mentions) == 1
        assert mentions[0].concept == "United_States_Congress"
        assert mentions[0].surface == "United States Congress"
        assert (mentions[0].first_token, mentions[0].last_token) == (1, 3)

    def test_empty_text(self):
        lex = load_lexicon(titles("X"), [])
        assert wikify(make_sentence("s", ""), lex) == []

    def test_case_sensitive_single_token_blocks_lowercase(self):
        lex = load_lexicon(titles("Apple_Inc"), [("Apple", "Apple_Inc")])
        assert wikify(make_sentence("s", "an apple fell"), lex) == []
        hits = wikify(make_sentence("s", "an Apple fell"), lex)
        assert [m.concept for m in hits] == ["Apple_Inc"]

    def test_lowercase_stored_form_matches_lowercase_text(self):
        lex = load_lexicon(titles("Apple_Inc"), [("apple", "Apple_Inc")])
        assert [m.concept for m in wikify(make_sentence("s", "an apple fell"), lex)] == ["Apple_Inc"]

    def test_multi_token_case_insensitive(self):
        lex = load_lexicon(titles("New_York_City"), [])
        hits = wikify(make_sentence("s", "i love new york city a lot"), lex)
        assert [m.concept for m in hits] == ["New_York_City"]
        assert hits[0].surface == "new york city"

    def test_blocklist_suppresses(self):
        lex = load_lexicon(titles("Time"), [], blocklist=["Time"])
        assert wikify(make_sentence("s", "Time flies"), lex) == []

    def test_mentions_sorted_and_disjoint(self):
        lex = load_lexicon(titles("Alpha", "Beta"), [])
        rec = make_sentence("s", "Alpha then Beta then Alpha")
        hits = wikify(rec, lex)
        assert [m.concept for m in hits] == ["Alpha", "Beta", "Alpha"]
        for a, b in zip(hits, hits[1:]):
            assert a.last_token < b.first_token

    def test_annotate_concepts_layer(self):
        lex = load_lexicon(titles("Beta"), [])
        rec = annotate_concepts(make_sentence("s", "Beta rules"), lex)
        assert rec.layers["CONCEPT"][0].tag == "Beta"

    def test_unrelated_surface_does_not_change_matches(self):
        base = load_lexicon(titles("Alpha", "Beta"), [])
        extended = load_lexicon(titles("Alpha", "Beta", "Gamma_Ray"), [])
        rec = make_sentence("s", "Alpha then Beta again")
        assert wikify(rec, base) == wikify(rec, extended)


WORDS = ["red", "blue", "river", "apple", "stone", "city", "king", "north", "gate", "talk"]


def random_surface(rng: random.Random) -> str:
    n = rng.randint(1, 4)
    words = [rng.choice(WORDS) for _ in range(n)]
    styled = [w.capitalize() if rng.random() < 0.5 else w for w in words]
    return " ".join(styled)


def naive_wikify(text: str, surface_map: dict[str, tuple[str, str | None]]) -> list[tuple[int, int, str]]:
    """Brute-force longest-leftmost oracle over every candidate span.

    surface_map: lowercased space-joined surface -> (concept, cased form for
    single-token surfaces else None).
    """
    toks = tokenize(text)
    max_len = max((len(k.split(" ")) for k in surface_map), default=0)
    out = []
    i = 0
    while i < len(toks):
        matched = False
        for length in range(min(max_len, len(toks) - i), 0, -1):
            piece = [t.surface for t in toks[i : i + length]]
            key = " ".join(w.lower() for w in piece)
            if key not in surface_map:
                continue
            concept, cased = surface_map[key]
            if cased is not None:
                tok = piece[0]
                if not (tok[:1].isupper() or tok == cased):
                    continue
            out.append((i, i + length - 1, concept))
            i += length
            matched = True
            break
        if not matched:
            i += 1
    return out


def random_lexicon_and_map(rng: random.Random):
    surfaces: dict[str, tuple[str, str | None]] = {}
    records = []
    for c in range(rng.randint(1, 12)):
        concept = f"Concept_{c}"
        surface = random_surface(rng)
        key = " ".join(surface.lower().split())
        if key in surfaces:
            continue
        single = len(surface.split()) == 1
        surfaces[key] = (concept, surface if single else None)
        records.append((surface, concept))
    lex = load_lexicon([(f"Concept_{c}", f"Concept_{c}") for c in range(12)], records)
    return lex, surfaces


class TestWikifyAgainstNaiveOracle:
    def test_thousand_random_pairs(self):
        rng = random.Random(99)
        for _ in range(1000):
            lex, surface_map = random_lexicon_and_map(rng)
            words = [rng.choice(WORDS + ["zzz", "qqq"]) for _ in range(rng.randint(0, 18))]
            text = " ".join(w.capitalize() if rng.random() < 0.4 else w for w in words)
            rec = make_sentence("s", text)
            got = [(m.first_token, m.last_token, m.concept) for m in wikify(rec, lex)]
            want = naive_wikify(text, surface_map)
            assert got == want, (text, sorted(surface_map))


class TestRelatednessBaseline:
    def test_identity(self):
        assert relatedness_baseline("Barack_Obama", "Barack_Obama") == 1.0

    def test_partial_overlap(self):
        assert relatedness_baseline("Barack_Obama", "Michelle_Obama") == pytest.approx(1 / 3)

    def test_disjoint(self):
        assert relatedness_baseline("Traffic", "Cheese") == 0.0

    def test_symmetric(self):
        a, b = "New_York_City", "New_Jersey"
        assert relatedness_baseline(a, b) == relatedness_baseline(b, a)

    def test_empty_raises(self):
        with pytest.raises(InputError):
            relatedness_baseline("", "X")


class TestReadTsvPairs:
    def test_comments_and_blanks_skipped(self):
        pairs = read_tsv_pairs(["# header", "", "A\tB", "Solo", "  # also comment"])
        assert pairs == [("A", "B"), ("Solo", "Solo")]
