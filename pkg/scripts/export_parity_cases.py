"""Dump the parity cases to JSON for the TypeScript client's tests.

Writes client-ts/test/fixtures/parity_cases.json: one record per case
with the HTTP path, the request body, and whether the endpoint is the
asynchronous job flow. The expected payloads stay in tests/goldens/,
which the client tests read directly.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tests"))

from parity_cases import build_cases

def main() -> None:
    out = ROOT / "client-ts" / "test" / "fixtures" / "parity_cases.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    cases = [
        {
            "name": name,
            "path": case["path"],
            "body": case["body"],
            "job": bool(case.get("job", False)),
        }
        for name, case in sorted(build_cases().items())
    ]
    out.write_text(json.dumps(cases, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(cases)} cases to {out}")

if __name__ == "__main__":
    main()
