"""Bundled demonstration corpora and their deterministic generators.

Two small datasets ship with the package. The synthetic survey corpus mixes
clean paraphrase clusters with low-quality noise (too short, shouting,
punctuation runs, links, first-person openers) and backs the
quality-before-coverage demonstration. The toy debate corpus holds sixty
short arguments with balanced stances plus a few neutral remarks and feeds
the end-to-end speech pipeline.
"""

from __future__ import annotations

import json
import random
from importlib import resources
from itertools import product

from .errors import InputError
from .kpa import KpaParams, TokenOverlapMatcher, run_kpa
from .scorers import default_registry
from .textcore import make_sentence

# Each cluster: a sentence template with two slots and the slot pools.
# Members share all but the slot words, so they match each other well and
# match other clusters poorly.
_SURVEY_CLUSTERS: tuple[tuple[str, tuple[str, ...], tuple[str, ...]], ...] = (
    ("the park needs more {a} along the {b} walking path",
     ("benches", "seats", "tables"), ("main", "north", "river")),
    ("please install brighter {a} near the {b} entrance gate",
     ("lights", "lamps", "lanterns"), ("south", "east", "rear")),
    ("the playground equipment is {a} and must be {b} soon",
     ("rusty", "broken", "worn"), ("replaced", "repaired", "upgraded")),
    ("a {a} dog run belongs by the {b} grove",
     ("fenced", "gated", "shaded"), ("oak", "pine", "maple")),
    ("weekly farmers markets would bring {a} to the {b} plaza",
     ("vendors", "crowds", "business"), ("empty", "unused", "vacant")),
    ("the pond fountain has been {a} since {b} and looks neglected",
     ("silent", "inactive", "dry"), ("january", "february", "march")),
    ("volunteers could plant {a} around the {b} memorial statue",
     ("tulips", "daisies", "roses"), ("old", "stone", "brick")),
    ("recycling bins are {a} from every {b} area here",
     ("missing", "absent", "lacking"), ("picnic", "barbecue", "seating")),
)

# Noise arranged by the quality penalty it triggers.
_SURVEY_NOISE: tuple[str, ...] = (
    # too short for the length ramp
    "No.",
    "Agreed.",
    "Fix it.",
    "Why bother.",
    "Whatever.",
    # shouting
    "The council must listen NOW before the budget vote happens.",
    "Someone should DEMAND answers about the missing maintenance money.",
    "This whole exercise is PURE theater by city hall.",
    "Stop IGNORING the people who actually live around here.",
    "Everything will be decided BEHIND closed doors as usual.",
    # punctuation runs
    "The survey process itself was a complete farce!!!",
    "Nothing ever changes around this neighborhood, does it??",
    "Another round of consultations and still no shovels!!",
    "They promised action years ago and nothing happened!!!",
    "Total waste of everyone's time and postage, honestly!!!",
    # links
    "See the full objection text at www.example.com/parksurvey please everyone.",
    "Sign the counter petition at www.example.org/stopthis before it closes.",
    "Background documents are hosted at www.example.net/parkdocs for anyone curious.",
    "The real numbers were leaked at www.example.com/budgetleak last week.",
    "Read the unedited complaints at www.example.org/longrant if you dare.",
    # first and second person openers
    "I think this entire consultation is a waste of time.",
    "We already answered these exact questions two years ago.",
    "You people never actually read any of these responses.",
    "My neighbors all agree the process is completely broken.",
)


def _sentence(template: str, a: str, b: str) -> str:
    text = template.format(a=a, b=b)
    return text[0].upper() + text[1:] + "."


def synthetic_survey(seed: int = 7) -> list[dict]:
    """48 clean paraphrases in 8 clusters plus 24 noise comments, shuffled.

    Deterministic for a given seed; ids are stable across the shuffle.
    """
    rng = random.Random(seed)
    records = []
    for ci, (template, pool_a, pool_b) in enumerate(_SURVEY_CLUSTERS):
        combos = list(product(pool_a, pool_b))
        rng.shuffle(combos)
        for mi, (a, b) in enumerate(combos[:6]):
            records.append({"id": f"c{ci * 6 + mi:02d}", "text": _sentence(template, a, b)})
    for ni, text in enumerate(_SURVEY_NOISE):
        records.append({"id": f"n{ni:02d}", "text": text})
    rng.shuffle(records)
    return records


# Debate toy corpus. Supporting a suppressing motion means speaking against
# the target, so the pro clusters carry negative sentiment pairs and the
# con clusters positive ones; the stance baseline reads them directly.
_DEBATE_PRO: tuple[tuple[str, tuple[str, ...], tuple[str, ...]], ...] = (
    ("plastic straws choke {a} with toxic waste every {b} year",
     ("rivers", "lakes", "harbors"), ("single", "passing", "new")),
    ("thin wrappers cause lasting harm and danger to {a} near {b}",
     ("seabirds", "turtles", "dolphins"), ("beaches", "reefs", "coasts")),
    ("burning packaging releases dangerous fumes that damage {a} of {b} nearby",
     ("lungs", "hearts", "airways"), ("children", "workers", "neighbors")),
    ("landfill sites overflow with dirty polluted containers that ruin {a} for {b} ahead",
     ("groundwater", "soils", "streams"), ("decades", "centuries", "generations")),
)

_DEBATE_CON: tuple[tuple[str, tuple[str, ...], tuple[str, ...]], ...] = (
    ("plastic packaging keeps {a} fresh safe and affordable for {b} everywhere",
     ("food", "produce", "meals"), ("families", "shoppers", "couriers")),
    ("modern recycling makes plastic an efficient and clean choice for {a} in {b}",
     ("bottles", "cartons", "trays"), ("stores", "markets", "kitchens")),
    ("durable wrapping is cheap useful and easy to {a} for {b} needs",
     ("mold", "shape", "print"), ("shipping", "storage", "transport")),
    ("lightweight containers help hospitals deliver sterile {a} with great {b}",
     ("medicine", "equipment", "supplies"), ("speed", "care", "accuracy")),
)

_DEBATE_ABSTAIN: tuple[str, ...] = (
    "The council debated the packaging question for three long evenings.",
    "Several residents attended the hearing about shopping bags last month.",
    "A report on container rules will appear next quarter.",
    "The committee will publish its packaging findings after the recess.",
)

DEBATE_TOPIC_TEXT = "this house would ban disposable plastic packaging"


def debate_toy() -> list[dict]:
    """60 arguments: 28 pro, 28 con, 4 without any stance signal."""
    records = []
    idx = 0
    for clusters in (_DEBATE_PRO, _DEBATE_CON):
        for template, pool_a, pool_b in clusters:
            for a, b in list(product(pool_a, pool_b))[:7]:
                records.append({"id": f"d{idx:02d}", "text": _sentence(template, a, b)})
                idx += 1
    for text in _DEBATE_ABSTAIN:
        records.append({"id": f"d{idx:02d}", "text": text})
        idx += 1
    return records


def load_bundled(name: str) -> list[dict]:
    """Load a corpus shipped under data/examples as a list of records."""
    path = resources.files("argmine.data") / "examples" / f"{name}.jsonl"
    try:
        raw = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"no bundled dataset named {name!r}", code="datasets.unknown") from None
    return [json.loads(line) for line in raw.splitlines() if line.strip()]


def survey_quality_split(records: list[dict], seed: int) -> tuple[list[str], list[str]]:
    """Top-quality half versus a same-sized random half of the comments."""
    registry = default_registry()
    ranked = sorted(
        records,
        key=lambda r: (-registry.quality(make_sentence(r["id"], r["text"])), r["id"]),
    )
    half = len(records) // 2
    top = [r["text"] for r in ranked[:half]]
    rng = random.Random(seed)
    rand = [r["text"] for r in rng.sample(records, half)]
    return top, rand


def demo_coverage(texts: list[str]) -> float:
    """Coverage of a default key point run, the demo's figure of merit."""
    summary = run_kpa(texts, KpaParams(), TokenOverlapMatcher())
    return summary.coverage
