"""Fourth scouting sweep: token pattern, discourse tier, prior probe."""

from __future__ import annotations

import json
import re
import sys
import time

import numpy as np

import argmine.newsgroups as ng
from argmine.kmeans import kmeans_cluster
from argmine.metrics import ami, ari
from argmine.sib import SibParams, sib_cluster
import argmine.sib as sib_mod

BOILER = frozenset(
    "writes article posting posts post wrote edu com gov mil org net ca cs ac uk "
    "nntp host organization subject lines reply distribution newsgroups university "
    "apr gmt news email mail fax phone".split()
)
DISCOURSE = frozenset(
    "thanks please anyone anybody someone somebody something anything nothing "
    "everything know think way time good right really want need use used using "
    "make makes made say says said see look looking help question problem answer "
    "read find point tell sure lot bit things thing stuff new one two first last "
    "many much still back going years year day days advance".split()
)

LETTERS = re.compile(r"[a-z][a-z]+")

CONFIGS = [
    {"name": "B:stop+boiler+letters", "extra": BOILER, "letters": True, "min_df": 3},
    {"name": "C:B+discourse", "extra": BOILER | DISCOURSE, "letters": True, "min_df": 3},
    {"name": "B+mindf5", "extra": BOILER, "letters": True, "min_df": 5},
    {"name": "C+mindf5", "extra": BOILER | DISCOURSE, "letters": True, "min_df": 5},
    {"name": "B+countprior", "extra": BOILER, "letters": True, "min_df": 3, "countprior": True},
]


def main() -> None:
    restarts = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    texts, labels = ng.load_dataset("/root/.cache/argmine/20newsgroups")
    base_joint_csr = sib_mod._joint_csr
    orig_re = ng._TOKEN_RE
    for cfg in CONFIGS:
        ng._TOKEN_RE = LETTERS if cfg["letters"] else orig_re
        stop = frozenset(ng.load_stopwords() | cfg["extra"])
        matrix, kept, dropped = ng.prepare_corpus(
            texts, labels, min_df=cfg["min_df"], stopwords=stop
        )

        if cfg.get("countprior"):
            def counted(m):
                indptr, indices, data, doc_mass = base_joint_csr(m)
                lengths = np.array(
                    [sum(c for _, c in row) for row in m.rows], dtype=np.float64
                )
                total = lengths.sum()
                pos = 0
                for d, row in enumerate(m.rows):
                    for _, count in row:
                        data[pos] = count / total
                        pos += 1
                return indptr, indices, data, lengths / total

            sib_mod._joint_csr = counted
        else:
            sib_mod._joint_csr = base_joint_csr

        start = time.perf_counter()
        part = sib_cluster(matrix, SibParams(k=20, restarts=restarts, seed=0))
        sib_s = time.perf_counter() - start
        start = time.perf_counter()
        km = kmeans_cluster(matrix, 20, restarts=restarts, seed=0)
        km_s = time.perf_counter() - start
        row = {
            "name": cfg["name"],
            "terms": matrix.n_terms,
            "dropped": dropped,
            "sib_ami": round(ami(kept, list(part.assignment)), 3),
            "sib_ari": round(ari(kept, list(part.assignment)), 3),
            "km_ami": round(ami(kept, list(km.assignment)), 3),
            "gap": round(ami(kept, list(part.assignment)) - ami(kept, list(km.assignment)), 3),
            "sib_s": round(sib_s, 1),
            "km_s": round(km_s, 1),
        }
        print(json.dumps(row), flush=True)
    sib_mod._joint_csr = base_joint_csr
    ng._TOKEN_RE = orig_re


if __name__ == "__main__":
    main()
