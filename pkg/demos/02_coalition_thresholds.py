"""
Which coalitions can tell the pair apart?
=========================================

A coalition can identify the prepared member with certainty iff its two
reduced density matrices have orthogonal supports. Sweeping every subset
gives the smallest coalition that can decode a share.
"""

import itertools

import numpy as np

from qss.locc import (
    distinguish_dicke_counting,
    minimal_coalition_size,
    oracle_distinguishable,
    verify_threshold_theorems,
)
from qss.states import DickePairSpec, GhzPairSpec, dicke_pair, distance0_dicke_spec, ghz_pair

# %%
# Distance-0 pairs need everybody.
for n in range(2, 7):
    g = minimal_coalition_size(ghz_pair(GhzPairSpec(n, 0)))
    d = minimal_coalition_size(dicke_pair(distance0_dicke_spec(n, 1)))
    print(f"n={n}: GHZ needs {g}, Dicke needs {d}")

# %%
# A GHZ pair with a block boundary is readable by any two players from
# different blocks and by no set of players from a single block.
pair = ghz_pair(GhzPairSpec(5, 2))
for s in [(1, 2), (3, 4, 5), (1, 3), (2, 5)]:
    v = oracle_distinguishable(pair, s)
    print(s, bool(v), v.witness)

# %%
# Dicke pairs |m,n>, |m+r,n> open up at n - r + 1 players, whatever m is.
n = 6
for m, r in itertools.product(range(1, 4), range(1, 3)):
    if m + r < n:
        size = minimal_coalition_size(dicke_pair(DickePairSpec(n, m, r)))
        print(f"m={m} r={r}: threshold {size} (n - r + 1 = {n - r + 1})")

# %%
# The counting decoder: k = n - r + 1 players measure Z and count ones.
spec = DickePairSpec(6, 2, 2)
pair = dicke_pair(spec)
rng = np.random.default_rng(0)
labels = rng.integers(0, 2, size=500)
hits = sum(distinguish_dicke_counting(pair[a], spec, [1, 2, 4, 5, 6], rng) == a for a in labels)
print(f"counting decoder: {hits}/500 correct")

# %%
# The whole sweep as a single report.
report = verify_threshold_theorems(6)
print(len(report.rows), "configurations,", len(report.violations), "violations")
