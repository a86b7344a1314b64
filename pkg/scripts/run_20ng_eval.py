"""Run the full benchmark evaluation and dump the result as JSON."""

from __future__ import annotations

import json
import sys
import time

from argmine.newsgroups import eval_clustering, format_eval, load_dataset


def main() -> None:
    path = sys.argv[1] if len(sys.argv) > 1 else "/root/.cache/argmine/20newsgroups"
    out = sys.argv[2] if len(sys.argv) > 2 else "/tmp/eval_20ng.json"
    texts, labels = load_dataset(path)
    print(f"loaded {len(texts)} docs", flush=True)
    start = time.perf_counter()
    result = eval_clustering(texts, labels, k=20, restarts=10, seed=0)
    result["total_seconds"] = time.perf_counter() - start
    with open(out, "w") as handle:
        json.dump(result, handle, indent=2)
    print(format_eval(result))
    print(f"total={result['total_seconds']:.1f}s")


if __name__ == "__main__":
    main()
