"""The overlap rule checked three independent ways on every small coprime pair.

    python demos/02_three_oracles.py [max_sum]

Search over digit differences, divisibility of 1 + x^3p + x^3q + x^(3p+3q)
by 1 + x^tau, and the rank of an integer coefficient system must all agree
with the 2-adic rule.
"""

import sys
import time

from overlap_lab.cli import coprime_pairs, verify_pair
from overlap_lab.oracles import build_rank_instance, rank_equality_holds, valid_ells

max_sum = int(sys.argv[1]) if len(sys.argv) > 1 else 30

start = time.perf_counter()
rows = [(pq, verify_pair(pq)) for pq in coprime_pairs(max_sum)]
ORACLES = ("classifier", "witness", "divisibility", "rank")
bad = [pq for pq, r in rows if len({r[k] for k in ORACLES}) != 1]
n_overlap = sum(r["classifier"] for _, r in rows)
print(f"{len(rows)} pairs with p+q <= {max_sum}: {n_overlap} overlap, {len(bad)} disagreements "
      f"({time.perf_counter() - start:.2f}s)")

# The rank system for t = 1/2, tau = 2: b lies in the column span of A.
inst = build_rank_instance(1, 2, 1)
print(f"\nrank system for p=1 q=2 ell=1: {inst.rows} x {inst.cols}")
for row, rhs in zip(inst.A, inst.b):
    print("   ", "".join(str(v) for v in row), "|", rhs)
print("rank A == rank [A|b]:", rank_equality_holds(1, 2, 1))

print("\nell for which the rank condition holds, p+q <= 12:")
for p, q in coprime_pairs(12):
    hits = [ell for ell in valid_ells(p, q) if rank_equality_holds(p, q, ell)]
    print(f"   {p}/{q}: {hits or '-'}")
