"""Cycle switchings: destroy a short cycle and recreate it in reverse.

A forward switching on the triangle 0-1-2 removes its edges together with
three far-away edges and rewires them so the triangle disappears.  The
mirrored backward switching puts everything back.

    python3 demos/02_switchings.py
"""

import numpy as np

from regspec import Cycle, RegularGraph, SamplerConfig, apply_backward, apply_forward, census, is_valid, sample_uniform
from regspec.switchings import backward_switchings, count_backward, count_forward, forward_switchings

# a triangle attached to a small cubic gadget
edges = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (3, 7), (4, 6), (4, 7), (5, 6), (5, 7)]
g = RegularGraph.from_edges(8, 3, edges)
tri = Cycle((0, 1, 2))
r = 3

moves = forward_switchings(g, tri, r)
print(f"valid forward switchings on {tri.vertices}: {len(moves)}")
if moves:
    s = moves[0]
    h = apply_forward(g, s)
    print("  removed:", s.removed())
    print("  added:  ", s.added())
    print("  triangles before/after:", census(g, r).counts[3], census(h, r).counts[3])
    back = s.mirror()
    print("  mirror valid:", is_valid(h, back, r), " restores graph:", apply_backward(h, back) == g)

# on a larger graph forward counts are of order n^k and backward counts of order (d(d-1))^k
big = sample_uniform(SamplerConfig(n=150, d=3, seed=3), 1)[0]
cen = census(big, 4)
rng = np.random.default_rng(0)
for alpha in cen.cycles[:3]:
    f = count_forward(big, alpha, 4, mode="monte-carlo", samples=2000, rng=rng, cen=cen)
    print(f"cycle {tuple(int(x) for x in alpha.vertices)}: forward ~ {f.value:.0f} +- {f.stderr:.0f} (upper bound {f.upper_bound:.0f})")

# a triangle on three pairwise non-adjacent vertices can be created by backward switchings
# (if two of its vertices were already adjacent there would be none)
alpha = Cycle((2, 70, 140))
assert not any(big.has_edge(a, b) for a, b in alpha.edges)
b = count_backward(big, alpha, 4, cen=cen)
print(f"backward switchings creating {alpha.vertices}: {b.value:.0f} of at most {b.upper_bound:.0f}")
print("first few (u, w):", [(tuple(map(int, s.u)), tuple(map(int, s.w))) for s in backward_switchings(big, alpha, 4)[:2]])
