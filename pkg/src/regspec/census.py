"""Short-cycle census, overlap events and subgraph-probability estimates."""

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from math import sqrt

import numpy as np

from . import _kernels
from .graph import Cycle, ball, contains_cycle
from .sampler import SamplerConfig, sample_uniform


def _trusted_cycle(vertices):
    c = object.__new__(Cycle)
    object.__setattr__(c, "vertices", tuple(vertices))
    return c


@dataclass
class CycleCensus:
    r: int
    counts: dict
    cycles: list = field(repr=False)

    def count(self, k):
        return self.counts.get(k, 0)

    def vector(self, kmin=3, kmax=None):
        kmax = self.r if kmax is None else kmax
        return np.array([self.count(k) for k in range(kmin, kmax + 1)], dtype=np.int64)

    @cached_property
    def cycles_by_edge(self):
        out = defaultdict(list)
        for c in self.cycles:
            for e in c.edges:
                out[e].append(c)
        return out

    @cached_property
    def cycle_set(self):
        return frozenset(self.cycles)


def census(g, r):
    """Count and list every simple cycle of length 3..r in ``g``."""
    if r < 3:
        raise ValueError("the cycle cutoff r must be at least 3")
    counts, rows = _kernels.enumerate_cycles(g.neighbors, r)
    cycles = [_trusted_cycle(row[: row[r]]) for row in rows]
    return CycleCensus(r=r, counts={k: int(counts[k]) for k in range(3, r + 1)}, cycles=cycles)


def cycle_counts(g, r):
    """Just the vector ``(C_3, ..., C_r)``."""
    counts, _ = _kernels.enumerate_cycles(g.neighbors, r)
    return counts[3 : r + 1].copy()


@dataclass(frozen=True)
class OverlapEvents:
    E1: bool
    E2: bool
    witness: tuple = None


def overlap_events(g, r, cen=None):
    """Detect two short cycles sharing a vertex (j+k <= r), or at distance l with j+k+2l <= r."""
    cen = census(g, r) if cen is None else cen
    small = sorted((c for c in cen.cycles if len(c) <= r - 3), key=len)
    e1 = e2 = False
    witness = None
    for i, a in enumerate(small):
        va = set(a.vertices)
        for b in small[i + 1 :]:
            j, k = len(a), len(b)
            if j + k > r:
                continue
            if va & set(b.vertices):
                if not e1:
                    e1 = True
                    witness = witness or ("E1", a, b)
                continue
            if e2:
                continue
            reach = (r - j - k) // 2
            if reach < 1:
                continue
            near = ball(g.adjacency, va, reach)
            if near & set(b.vertices):
                e2 = True
                witness = witness or ("E2", a, b)
        if e1 and e2:
            break
    return OverlapEvents(E1=e1, E2=e2, witness=witness)


def shares_edge_with_other_short_cycle(g, c, r, cen=None):
    if not contains_cycle(g, c):
        raise ValueError(f"cycle {c.vertices} is not contained in the graph")
    cen = census(g, r) if cen is None else cen
    by_edge = cen.cycles_by_edge
    return any(other != c for e in c.edges for other in by_edge.get(e, ()))


# -- Monte Carlo subgraph probabilities --------------------------------------


def subgraph_edges(kind, j=None, k=None, f=None, l=None):
    """Edge list and exponent for a fixed copy of one of the small structures.

    ``kind`` is ``"cycle"`` (a k-cycle, exponent k), ``"two-cycles"`` (a k-cycle
    and a j-cycle sharing a path of f edges, exponent j+k-f; f = 0 means
    vertex-disjoint) or ``"joined"`` (a j-cycle and a k-cycle joined by a path of
    length l, exponent j+k+l).
    """
    if kind == "cycle":
        if k is None or k < 3:
            raise ValueError("cycle length k >= 3 required")
        return [(i, (i + 1) % k) for i in range(k)], k, k
    if kind == "two-cycles":
        if None in (j, k, f) or min(j, k) < 3:
            raise ValueError("two-cycles needs j, k >= 3 and f")
        if not 0 <= f < min(j, k):
            raise ValueError("shared edge count must satisfy 0 <= f < min(j, k)")
        alpha = [(i, (i + 1) % k) for i in range(k)]
        if f == 0:
            beta_vs = list(range(k, k + j))
        else:
            beta_vs = list(range(f + 1)) + list(range(k, k + j - f - 1))
        beta = [(beta_vs[i], beta_vs[(i + 1) % j]) for i in range(j)]
        edges = sorted({tuple(sorted(e)) for e in alpha + beta})
        if len(edges) != j + k - f:
            raise ValueError("degenerate two-cycle structure")
        return edges, j + k - f, max(max(e) for e in edges) + 1
    if kind == "joined":
        if None in (j, k, l) or min(j, k) < 3 or l < 1:
            raise ValueError("joined needs j, k >= 3 and l >= 1")
        a = [(i, (i + 1) % j) for i in range(j)]
        path_vs = [0] + list(range(j, j + l - 1)) + [j + l - 1]
        path = list(zip(path_vs[:-1], path_vs[1:]))
        base = j + l - 1
        b = [(base + i, base + (i + 1) % k) for i in range(k)]
        return a + path + b, j + k + l, j + l - 1 + k
    raise ValueError(f"unknown structure {kind!r}")


def wilson_interval(successes, trials, z=1.959963984540054):
    if trials == 0:
        raise ValueError("no trials")
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass
class ProbabilityEstimate:
    estimate: float
    stderr: float
    interval: tuple
    samples: int
    bound: float
    exponent: int

    @property
    def ratio(self):
        return self.estimate / self.bound if self.bound else float("nan")


def estimate_subgraph_probability(kind, n, d, samples, seed, constant=1.0, threads=None, **params):
    """Monte Carlo estimate of P[H in G] next to the bound ``constant*(d-1)^e/n^e``."""
    if samples <= 0:
        raise ValueError("need at least one sample")
    edges, exponent, nverts = subgraph_edges(kind, **params)
    if nverts > n:
        raise ValueError(f"structure needs {nverts} vertices, graph has {n}")
    cfg = SamplerConfig(n=n, d=d, seed=seed)
    hits = 0
    for g in sample_uniform(cfg, samples, threads):
        hits += all(g.has_edge(u, v) for u, v in edges)
    p = hits / samples
    return ProbabilityEstimate(
        estimate=p,
        stderr=sqrt(p * (1 - p) / samples),
        interval=wilson_interval(hits, samples),
        samples=samples,
        bound=constant * (d - 1) ** exponent / n**exponent,
        exponent=exponent,
    )
