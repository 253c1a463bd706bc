"""Random d-regular graphs: pairing-model rejection, edge-swap chains, exhaustive lists."""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels
from ._parallel import ordered_map, stream_rng, stream_seed32
from .graph import RegularGraph, circulant_graph

PAIRING = "pairing-rejection"
CHAIN = "switching-chain"

STREAM_PAIRING = 1
STREAM_CHAIN = 2
STREAM_METAGRAPH = 3

MAX_CONSECUTIVE_REJECTIONS = 10**6


class RejectionStall(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive computation would exceed its feasibility guard."""


@dataclass(frozen=True)
class SamplerConfig:
    n: int
    d: int
    seed: int = 0
    method: str = None
    burn_in: int = 0
    r: int = 3

    def __post_init__(self):
        if (self.n * self.d) % 2:
            raise ValueError(f"n*d = {self.n * self.d} must be even")
        if self.d >= self.n:
            raise ValueError("need d < n for a simple d-regular graph")
        if self.method is None:
            object.__setattr__(self, "method", PAIRING if self.d <= 5 else CHAIN)
        if self.method not in (PAIRING, CHAIN):
            raise ValueError(f"unknown method {self.method!r}")

    @property
    def chain_steps(self):
        """Burn-in in swap proposals; 0 means ten proposals per edge."""
        return self.burn_in if self.burn_in > 0 else 10 * (self.n * self.d // 2)


@dataclass
class SampleStats:
    samples: int = 0
    attempts: int = 0

    @property
    def acceptance_rate(self):
        return self.samples / self.attempts if self.attempts else float("nan")


def pairing_attempt(n, d, rng):
    """One pairing of the ``n*d`` half-edges; returns the edge array or None if not simple."""
    pts = np.repeat(np.arange(n), d)
    pairs = pts[rng.permutation(n * d)].reshape(-1, 2)
    lo = pairs.min(axis=1)
    hi = pairs.max(axis=1)
    if np.any(lo == hi):
        return None
    codes = np.sort(lo * n + hi)
    if np.any(codes[1:] == codes[:-1]):
        return None
    return np.stack([lo, hi], axis=1)


def _pairing_sample(n, d, rng):
    for attempt in range(1, MAX_CONSECUTIVE_REJECTIONS + 1):
        edges = pairing_attempt(n, d, rng)
        if edges is not None:
            return RegularGraph.from_edges(n, d, edges), attempt
    raise RejectionStall(
        f"pairing model rejected {MAX_CONSECUTIVE_REJECTIONS} consecutive attempts "
        f"at n={n}, d={d}; use method='{CHAIN}'"
    )


def sample_uniform(cfg, count, threads=None, stats=None):
    """Exactly uniform simple d-regular graphs from the pairing model with rejection.

    Sample ``i`` depends only on ``(cfg.seed, i)``.  If ``stats`` is a
    :class:`SampleStats`, attempt counts are accumulated into it.
    """
    if cfg.method != PAIRING:
        raise ValueError("sample_uniform requires method='pairing-rejection'")

    def one(i):
        return _pairing_sample(cfg.n, cfg.d, stream_rng(cfg.seed, STREAM_PAIRING, i))

    out = ordered_map(one, range(count), threads)
    if stats is not None:
        stats.samples += len(out)
        stats.attempts += sum(a for _, a in out)
    return [g for g, _ in out]


def swap_chain_sample(cfg, index, start=None):
    """Run an independent double-edge-swap chain for ``cfg.chain_steps`` proposals."""
    start = circulant_graph(cfg.n, cfg.d) if start is None else start
    nbr = np.array(start.neighbors)
    edges = np.array(start.edges)
    _kernels.swap_chain(nbr, edges, cfg.chain_steps, stream_seed32(cfg.seed, STREAM_CHAIN, index))
    return RegularGraph(cfg.n, cfg.d, nbr)


def sample_regular(cfg, count, threads=None, stats=None):
    """Dispatch on ``cfg.method``; the swap chain is only approximately uniform."""
    if cfg.method == PAIRING:
        return sample_uniform(cfg, count, threads, stats)
    start = circulant_graph(cfg.n, cfg.d)
    return ordered_map(lambda i: swap_chain_sample(cfg, i, start), range(count), threads)


def sample_switching_chain(cfg, start, steps, rng=None):
    """Advance the cycle-switching walk ``steps`` times from ``start`` (cutoff ``cfg.r``)."""
    from .switchings import metagraph_step

    rng = stream_rng(cfg.seed, STREAM_METAGRAPH, 0) if rng is None else rng
    g = start
    for _ in range(steps):
        g = metagraph_step(g, cfg.r, rng)
    return g


def enumerate_all_regular(n, d):
    """All labeled simple cubic graphs on ``n <= 8`` vertices, in a fixed order."""
    if d != 3 or n > 8 or n < 0:
        raise BudgetExceeded(
            "exhaustive enumeration is limited to d = 3 and n <= 8 "
            "(n = 10 already has 11,180,820 labeled cubic graphs)"
        )
    if (n * d) % 2 or n <= d:
        return []
    rem = [d] * n
    adj = [set() for _ in range(n)]
    out = []

    def rec():
        v = next((u for u in range(n) if rem[u] > 0), None)
        if v is None:
            out.append(RegularGraph.from_adjacency(adj))
            return
        cands = [u for u in range(v + 1, n) if rem[u] > 0 and u not in adj[v]]
        for chosen in combinations(cands, rem[v]):
            k = rem[v]
            rem[v] = 0
            for u in chosen:
                adj[v].add(u)
                adj[u].add(v)
                rem[u] -= 1
            rec()
            for u in chosen:
                adj[v].discard(u)
                adj[u].discard(v)
                rem[u] += 1
            rem[v] = k

    rec()
    return out
