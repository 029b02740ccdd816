"""Which rational slopes give an exact overlap, and what the overlap looks like.

    python demos/01_classify_and_witness.py
"""

from overlap_lab import classify, find_overlap_witness
from overlap_lab.oracles import DigitSet

# t = 1/2 has q = 2 with odd valuation, so no overlap. 1/3 and 1/11 do overlap.
for p, q in [(1, 2), (1, 3), (1, 11), (3, 8), (2, 3)]:
    c = classify(p, q)
    print(f"t = {p}/{q}: overlap={c.overlap}, regime={c.regime}, gamma_p={c.gamma_p}, gamma_q={c.gamma_q}")

print()
# A witness is two different digit blocks whose base-4 sums agree.
for p, q in [(1, 3), (1, 11)]:
    w = find_overlap_witness((p, q))
    human = w.to_dict(human=True)
    print(f"t = {p}/{q}, depth {w.depth}:")
    print("   ", " ".join(human["block_i"]), " vs ", " ".join(human["block_j"]))
    lhs = sum(d * 4 ** (w.depth - m) for m, d in enumerate(w.block_i, 1))
    print(f"    both blocks sum to {lhs} (in units of 1/q); valid={w.is_valid()}")

print()
# The family 1/(3*4^n - 1) needs witnesses of growing depth n + 2.
for n in range(1, 6):
    q = 3 * 4**n - 1
    w = find_overlap_witness((1, q))
    ds = DigitSet(1, q)
    print(f"n={n} q={q:5d} depth={w.depth}  ", " ".join(ds.symbol(d) for d in w.block_j))
