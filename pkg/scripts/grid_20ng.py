"""Sweep vectorization settings on the benchmark corpus (scouting runs)."""

from __future__ import annotations

import json
import sys

from argmine.newsgroups import eval_clustering, load_dataset

CONFIGS = [
    {"max_features": 2000},
    {"max_features": 5000},
    {"max_features": 10000},
    {"max_features": 2000, "max_df_fraction": 0.1},
    {"max_features": 5000, "max_df_fraction": 0.1},
    {"max_df_fraction": 0.1},
]


def main() -> None:
    restarts = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    texts, labels = load_dataset("/root/.cache/argmine/20newsgroups")
    for cfg in CONFIGS:
        result = eval_clustering(texts, labels, k=20, restarts=restarts, seed=0, **cfg)
        row = {
            **cfg,
            "terms": result["n_terms"],
            "sib_ami": round(result["sib"]["ami"], 3),
            "sib_ari": round(result["sib"]["ari"], 3),
            "km_ami": round(result["kmeans"]["ami"], 3),
            "gap": round(result["sib"]["ami"] - result["kmeans"]["ami"], 3),
            "sib_s": round(result["sib"]["seconds"], 1),
            "km_s": round(result["kmeans"]["seconds"], 1),
            "ratio": round(result["sib"]["seconds"] / result["kmeans"]["seconds"], 2),
        }
        print(json.dumps(row), flush=True)


if __name__ == "__main__":
    main()
