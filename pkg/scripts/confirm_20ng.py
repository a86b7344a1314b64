"""Full benchmark run at the documented defaults; prints the result as JSON."""

import json
import sys
import time

sys.path.insert(0, "src")

from argmine.newsgroups import eval_clustering, load_dataset

texts, labels = load_dataset("/root/.cache/argmine/20newsgroups")
start = time.perf_counter()
result = eval_clustering(texts, labels, k=20, restarts=10, seed=0)
result["total_seconds"] = time.perf_counter() - start
print(json.dumps(result, indent=2))
