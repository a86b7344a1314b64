"""Regenerate the bundled demonstration corpora."""

from __future__ import annotations

import json
from pathlib import Path

from argmine.datasets import debate_toy, synthetic_survey

OUT = Path(__file__).resolve().parent.parent / "src" / "argmine" / "data" / "examples"


def write(name: str, records: list[dict]) -> None:
    path = OUT / f"{name}.jsonl"
    path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
    print(f"wrote {len(records)} records to {path}")


if __name__ == "__main__":
    write("survey_comments", synthetic_survey())
    write("debate_arguments", debate_toy())
