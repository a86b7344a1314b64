"""Final 20NG config candidates at restarts=2 with the transposed kernel."""
import json
import sys
import time

sys.path.insert(0, "src")
from argmine import newsgroups as ng

BOILER = frozenset(
    "writes article posting posts post wrote edu com gov mil org net ca cs ac uk "
    "nntp host organization subject lines reply distribution newsgroups university "
    "apr gmt news email mail fax phone".split()
)
DISCOURSE = frozenset(
    "thanks please anyone anybody someone somebody something anything nothing everything "
    "know think way time good right really want need use used using make makes made say "
    "says said see look looking help question problem answer read find point tell sure lot "
    "bit things thing stuff new one two first last many much still back going years year "
    "day days advance".split()
)

texts, labels = ng.load_dataset("/root/.cache/argmine/20newsgroups")
stop = ng.load_stopwords()

for name, extra in [("stop+boiler", BOILER), ("stop+boiler+disc", BOILER | DISCOURSE)]:
    t0 = time.time()
    res = ng.eval_clustering(
        texts, labels, k=20, restarts=2, seed=0, stopwords=stop | extra
    )
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
