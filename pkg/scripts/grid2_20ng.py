"""Second scouting sweep: convergence tightness and df windows."""

from __future__ import annotations

import json
import sys
import time

from argmine.metrics import ami, ari
from argmine.newsgroups import load_dataset, prepare_corpus
from argmine.sib import SibParams, sib_cluster

CONFIGS = [
    {"min_df": 3, "max_df_fraction": 0.5, "max_sweeps": 40, "eps": 0.001},
    {"min_df": 10, "max_df_fraction": 0.5, "max_sweeps": 15, "eps": 0.02},
    {"min_df": 3, "max_df_fraction": 0.15, "max_sweeps": 15, "eps": 0.02},
    {"min_df": 10, "max_df_fraction": 0.5, "max_sweeps": 40, "eps": 0.001},
    {"min_df": 20, "max_df_fraction": 0.3, "max_sweeps": 40, "eps": 0.001},
]


def main() -> None:
    restarts = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    texts, labels = load_dataset("/root/.cache/argmine/20newsgroups")
    for cfg in CONFIGS:
        matrix, kept, _ = prepare_corpus(
            texts, labels, min_df=cfg["min_df"], max_df_fraction=cfg["max_df_fraction"]
        )
        start = time.perf_counter()
        part = sib_cluster(
            matrix,
            SibParams(
                k=20,
                restarts=restarts,
                seed=0,
                max_sweeps=cfg["max_sweeps"],
                convergence_fraction=cfg["eps"],
            ),
        )
        seconds = time.perf_counter() - start
        row = {
            **cfg,
            "terms": matrix.n_terms,
            "sib_ami": round(ami(kept, list(part.assignment)), 3),
            "sib_ari": round(ari(kept, list(part.assignment)), 3),
            "sib_s": round(seconds, 1),
        }
        print(json.dumps(row), flush=True)


if __name__ == "__main__":
    main()
