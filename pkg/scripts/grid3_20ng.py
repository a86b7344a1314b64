"""Third scouting sweep: stopword removal, both algorithms."""

from __future__ import annotations

import json
import sys
import time

from argmine.kmeans import kmeans_cluster
from argmine.metrics import ami, ari
from argmine.newsgroups import load_dataset, load_stopwords, prepare_corpus
from argmine.sib import SibParams, sib_cluster

BOILER = frozenset(
    "writes article posting posts post wrote edu com gov mil org net ca cs ac uk "
    "nntp host organization subject lines reply distribution newsgroups university "
    "apr gmt news email mail fax phone".split()
)

CONFIGS = [
    {"name": "stop", "stop": True, "boiler": False, "sweeps": 15, "eps": 0.02},
    {"name": "stop+boiler", "stop": True, "boiler": True, "sweeps": 15, "eps": 0.02},
    {"name": "stop+tight", "stop": True, "boiler": False, "sweeps": 40, "eps": 0.001},
    {"name": "stop+boiler+tight", "stop": True, "boiler": True, "sweeps": 40, "eps": 0.001},
]


def main() -> None:
    restarts = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    texts, labels = load_dataset("/root/.cache/argmine/20newsgroups")
    for cfg in CONFIGS:
        stop = load_stopwords() if cfg["stop"] else frozenset()
        if cfg["boiler"]:
            stop = frozenset(stop | BOILER)
        matrix, kept, _ = prepare_corpus(texts, labels, stopwords=stop)
        start = time.perf_counter()
        part = sib_cluster(
            matrix,
            SibParams(
                k=20,
                restarts=restarts,
                seed=0,
                max_sweeps=cfg["sweeps"],
                convergence_fraction=cfg["eps"],
            ),
        )
        sib_s = time.perf_counter() - start
        start = time.perf_counter()
        km = kmeans_cluster(matrix, 20, restarts=restarts, seed=0)
        km_s = time.perf_counter() - start
        row = {
            "name": cfg["name"],
            "terms": matrix.n_terms,
            "sib_ami": round(ami(kept, list(part.assignment)), 3),
            "sib_ari": round(ari(kept, list(part.assignment)), 3),
            "km_ami": round(ami(kept, list(km.assignment)), 3),
            "km_ari": round(ari(kept, list(km.assignment)), 3),
            "gap": round(ami(kept, list(part.assignment)) - ami(kept, list(km.assignment)), 3),
            "sib_s": round(sib_s, 1),
            "km_s": round(km_s, 1),
        }
        print(json.dumps(row), flush=True)


if __name__ == "__main__":
    main()
