"""Cyclically non-backtracking walks and their relation to short cycles.

``CNBW_k`` is the number of closed non-backtracking walks of length k whose
wrap-around step is also non-backtracking, i.e. ``trace(B^k)`` for the
non-backtracking operator ``B`` on directed edges.
"""

import numpy as np
from scipy import sparse

from . import _kernels

# 2d walk choices per step; stop well short of int64 overflow
_INT64_SAFE = 2**62


def directed_edges(g):
    """Array of the 2|E| directed edges ``(tail, head)``, sorted."""
    e = g.edges
    return np.concatenate([e, e[:, ::-1]])


def _successors(g):
    de = directed_edges(g)
    n, d = g.n, g.d
    codes = de[:, 0] * n + de[:, 1]
    order = np.argsort(codes)
    # successors of (a, b) are (b, c) for the neighbors c != a of b
    nb = g.neighbors[de[:, 1]]
    keep = nb != de[:, [0]]
    heads = nb[keep].reshape(len(de), d - 1)
    tails = np.repeat(de[:, 1], d - 1).reshape(len(de), d - 1)
    succ = order[np.searchsorted(codes, tails * n + heads, sorter=order)]
    return de, succ


def directed_edge_operator(g):
    """Sparse non-backtracking matrix: ``B[(u,v),(v,w)] = 1`` for w != u."""
    de, succ = _successors(g)
    m = len(de)
    rows = np.repeat(np.arange(m), succ.shape[1])
    data = np.ones(rows.size, dtype=np.int64)
    return sparse.csr_matrix((data, (rows, succ.ravel())), shape=(m, m))


def cnbw_counts(g, kmax):
    """``{k: CNBW_k}`` for k = 1..kmax, by exact integer walk enumeration."""
    if kmax < 1:
        raise ValueError("kmax must be positive")
    if g.d < 2:
        return {k: 0 for k in range(1, kmax + 1)}
    if g.n * g.d * float(g.d - 1) ** kmax >= _INT64_SAFE:
        raise OverflowError(f"walk counts up to length {kmax} could overflow int64")
    _, succ = _successors(g)
    counts = _kernels.nb_closed_walk_counts(succ, kmax)
    return {k: int(counts[k]) for k in range(1, kmax + 1)}


def cnbw_trace(g, kmax):
    """``{k: trace(B^k)}`` by repeated sparse products; an independent route to :func:`cnbw_counts`."""
    if g.n * g.d * float(g.d - 1) ** kmax >= _INT64_SAFE:
        raise OverflowError(f"walk counts up to length {kmax} could overflow int64")
    b = directed_edge_operator(g)
    p = sparse.identity(b.shape[0], dtype=np.int64, format="csr")
    out = {}
    for k in range(1, kmax + 1):
        p = p @ b
        out[k] = int(p.diagonal().sum())
    return out


def divisors(k):
    return [j for j in range(1, k + 1) if k % j == 0]


def cnbw_from_cycles(cycle_counts, k):
    """``sum_{j | k} 2j C_j``, the walk count if every short cycle is isolated."""
    return sum(2 * j * cycle_counts.get(j, 0) for j in divisors(k) if j >= 3)


def mu_k(d, k):
    """Expected limiting walk count ``sum_{j | k, j >= 3} (d-1)^j``."""
    return sum((d - 1) ** j for j in divisors(k) if j >= 3)


def a_dk(d, k):
    """Number of length-k cyclically non-backtracking closed words in d generators and inverses."""
    return (2 * d - 1) ** k - 1 + 2 * d if k % 2 == 0 else (2 * d - 1) ** k + 1


def cnbw_divisor_sum(cen, kmax):
    """``{k: sum_{j | k} 2j C_j}`` for k = 1..kmax from a census with ``r >= kmax``."""
    if kmax > cen.r:
        raise ValueError(f"census only covers cycles up to length {cen.r} < kmax = {kmax}")
    return {k: cnbw_from_cycles(cen.counts, k) for k in range(1, kmax + 1)}


def cnbw_route_check(g, r, cen=None):
    """Compare direct walk counts with the cycle-count formula for k <= r."""
    from .census import census

    cen = census(g, r) if cen is None else cen
    direct = cnbw_counts(g, r)
    return direct, cnbw_divisor_sum(cen, r)
