"""Cyclically non-backtracking walks and the cycles that generate them.

When no two short cycles are close to each other, every closed
non-backtracking walk of length k winds around a single cycle of length
j | k, so CNBW_k = sum_{j | k} 2j C_j.  Overlapping cycles break this.

    python3 demos/03_walk_counts.py
"""

from regspec import SamplerConfig, census, cnbw_counts, cnbw_divisor_sum, overlap_events, sample_uniform
from regspec.graph import complete_graph, petersen_graph
from regspec.nbwalks import cnbw_trace

for name, g, k in (("K4", complete_graph(4), 3), ("Petersen", petersen_graph(), 5)):
    direct = cnbw_counts(g, k)
    print(f"{name}: CNBW_{k} = {direct[k]} (trace of B^{k}: {cnbw_trace(g, k)[k]})")

R = 6
for n in (250, 500, 1000):
    graphs = sample_uniform(SamplerConfig(n=n, d=3, seed=11), 400)
    mismatch = overlap = 0
    for g in graphs:
        cen = census(g, R)
        ev = overlap_events(g, R, cen)
        overlap += ev.E1 or ev.E2
        mismatch += cnbw_counts(g, R) != cnbw_divisor_sum(cen, R)
    print(f"n={n:5d}: formula fails on {mismatch}/400 graphs, overlapping cycles on {overlap}/400")
