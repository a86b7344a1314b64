"""Last 20NG levers: pure-digit token drop and min_df=2, at restarts=2."""
import json
import re
import sys
import time

sys.path.insert(0, "src")
from argmine import newsgroups as ng

BOILER = frozenset(
    "writes article posting posts post wrote edu com gov mil org net ca cs ac uk "
    "nntp host organization subject lines reply distribution newsgroups university "
    "apr gmt news email mail fax phone".split()
)
NO_DIGITS = re.compile(r"(?!\d+$)\w\w+")

texts, labels = ng.load_dataset("/root/.cache/argmine/20newsgroups")
stop = ng.load_stopwords() | BOILER

for name, min_df, digitdrop in [
    ("sb+digitdrop", 3, True),
    ("sb+mindf2", 2, False),
    ("sb+mindf2+digitdrop", 2, True),
]:
    old = ng._TOKEN_RE
    if digitdrop:
        ng._TOKEN_RE = NO_DIGITS
    try:
        t0 = time.time()
        res = ng.eval_clustering(texts, labels, k=20, restarts=2, seed=0, min_df=min_df, stopwords=stop)
    finally:
        ng._TOKEN_RE = old
    row = {
        "name": name,
        "terms": res["n_terms"],
        "sib_ami": round(res["sib"]["ami"], 3),
        "sib_ari": round(res["sib"]["ari"], 3),
        "km_ami": round(res["kmeans"]["ami"], 3),
        "gap": round(res["sib"]["ami"] - res["kmeans"]["ami"], 3),
        "sib_s": round(res["sib"]["seconds"], 1),
        "km_s": round(res["kmeans"]["seconds"], 1),
        "total_s": round(time.time() - t0, 1),
    }
    print(json.dumps(row), flush=True)
