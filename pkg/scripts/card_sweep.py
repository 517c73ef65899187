"""Compare memoized card() with explicit path enumeration on random DAGs.

    python3 scripts/card_sweep.py [--seeds N] [--max-nodes K]
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from generators import random_dag_ontology  # noqa: E402
from oracles import path_count  # noqa: E402

from ontobuild import card, normalize, parse_ontology  # noqa: E402

ap = argparse.ArgumentParser()
ap.add_argument("--seeds", type=int, default=200)
ap.add_argument("--max-nodes", type=int, default=50)
args = ap.parse_args()

t0 = time.perf_counter()
nodes = bad = 0
for seed in range(args.seeds):
    g = normalize(parse_ontology(random_dag_ontology(random.Random(seed), args.max_nodes)))
    for c in g.names:
        nodes += 1
        if card(g, None, c) != path_count(g, c):
            bad += 1
            print(f"seed {seed}: card({c}) disagrees with path count")
print(f"{args.seeds} graphs, {nodes} nodes, {bad} mismatches, {time.perf_counter() - t0:.2f}s")
sys.exit(1 if bad else 0)
