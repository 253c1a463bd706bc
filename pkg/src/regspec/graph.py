"""Regular graph representation, cycles and distance queries.

Vertices are the integers ``0..n-1``.  A :class:`RegularGraph` is immutable;
the only way to obtain a modified graph is through an edge swap
(see :mod:`regspec.switchings`), which builds a new instance.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

INF = float("inf")


class GraphError(ValueError):
    """Raised when an edge list does not describe a simple d-regular graph."""


def falling_factorial(n, k):
    """Return ``n (n-1) ... (n-k+1)``; zero when ``k > n``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > n:
        return 0
    out = 1
    for i in range(k):
        out *= n - i
    return out


class RegularGraph:
    """Simple d-regular graph stored as an ``(n, d)`` array of sorted neighbors."""

    __slots__ = ("n", "d", "neighbors", "__dict__")

    def __init__(self, n, d, neighbors):
        nbr = np.array(neighbors, dtype=np.int64).reshape(n, d)
        nbr.sort(axis=1)
        _check_neighbors(n, d, nbr)
        nbr.setflags(write=False)
        self.n = int(n)
        self.d = int(d)
        self.neighbors = nbr

    @classmethod
    def from_edges(cls, n, d, edges):
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if (n * d) % 2:
            raise GraphError(f"n*d = {n * d} is odd; no {d}-regular graph on {n} vertices")
        if len(edges) != n * d // 2:
            raise GraphError(f"expected {n * d // 2} edges, got {len(edges)}")
        if len(edges) and (edges.min() < 0 or edges.max() >= n):
            raise GraphError("vertex id out of range")
        if np.any(edges[:, 0] == edges[:, 1]):
            raise GraphError("self-loop in edge list")
        lo = edges.min(axis=1)
        hi = edges.max(axis=1)
        codes = lo * n + hi
        if len(np.unique(codes)) != len(codes):
            raise GraphError("duplicate edge in edge list")
        deg = np.bincount(edges.ravel(), minlength=n)
        if np.any(deg != d):
            bad = int(np.flatnonzero(deg != d)[0])
            raise GraphError(f"vertex {bad} has degree {deg[bad]}, expected {d}")
        src = np.concatenate([edges[:, 0], edges[:, 1]])
        dst = np.concatenate([edges[:, 1], edges[:, 0]])
        order = np.lexsort((dst, src))
        return cls(n, d, dst[order].reshape(n, d))

    @classmethod
    def from_adjacency(cls, adjacency):
        adjacency = [sorted(a) for a in adjacency]
        n = len(adjacency)
        d = len(adjacency[0]) if n else 0
        if any(len(a) != d for a in adjacency):
            raise GraphError("adjacency lists have unequal lengths")
        return cls(n, d, adjacency)

    # -- views -----------------------------------------------------------

    @cached_property
    def adjacency(self):
        return tuple(tuple(int(v) for v in row) for row in self.neighbors)

    @cached_property
    def adjsets(self):
        return tuple(frozenset(row) for row in self.adjacency)

    @cached_property
    def edges(self):
        """Edges as an ``(m, 2)`` array with ``u < v``, lexicographically sorted."""
        u = np.repeat(np.arange(self.n), self.d)
        v = self.neighbors.ravel()
        keep = u < v
        out = np.stack([u[keep], v[keep]], axis=1)
        out.setflags(write=False)
        return out

    @cached_property
    def edge_set(self):
        return frozenset((int(u), int(v)) for u, v in self.edges)

    @cached_property
    def _key(self):
        return (self.n, self.d, self.neighbors.tobytes())

    def has_edge(self, u, v):
        return v in self.adjsets[u]

    def adjacency_matrix(self, dtype=float):
        a = np.zeros((self.n, self.n), dtype=dtype)
        a[self.edges[:, 0], self.edges[:, 1]] = 1
        a[self.edges[:, 1], self.edges[:, 0]] = 1
        return a

    def __eq__(self, other):
        return isinstance(other, RegularGraph) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"RegularGraph(n={self.n}, d={self.d})"

    # -- text format -----------------------------------------------------

    def to_text(self):
        lines = [f"{self.n} {self.d}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not rows or len(rows[0]) != 2:
            raise GraphError("first line must be 'n d'")
        try:
            n, d = int(rows[0][0]), int(rows[0][1])
            edges = [(int(a), int(b)) for a, b in rows[1:]]
        except ValueError as exc:
            raise GraphError(f"malformed graph file: {exc}") from None
        if any(len(r) != 2 for r in rows[1:]):
            raise GraphError("each edge line must hold exactly two ids")
        if any(u >= v for u, v in edges):
            raise GraphError("edge lines must satisfy u < v")
        return cls.from_edges(n, d, edges)

    def save(self, path):
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path):
        return cls.from_text(Path(path).read_text())


def _check_neighbors(n, d, nbr):
    if (n * d) % 2:
        raise GraphError(f"n*d = {n * d} is odd")
    if n == 0:
        return
    if nbr.min() < 0 or nbr.max() >= n:
        raise GraphError("neighbor id out of range")
    own = np.arange(n)[:, None]
    if np.any(nbr == own):
        raise GraphError("self-loop")
    if d > 1 and np.any(nbr[:, 1:] == nbr[:, :-1]):
        raise GraphError("parallel edge")
    # symmetry: the multiset of directed pairs equals its transpose
    fwd = np.sort(own.repeat(d, axis=1).ravel() * n + nbr.ravel())
    bwd = np.sort(nbr.ravel() * n + own.repeat(d, axis=1).ravel())
    if not np.array_equal(fwd, bwd):
        raise GraphError("adjacency is not symmetric")


@dataclass(frozen=True)
class Cycle:
    """Simple cycle in canonical form (lexicographically least rotation/reflection)."""

    vertices: tuple

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        if len(vs) < 3:
            raise ValueError("a cycle has length at least 3")
        if len(set(vs)) != len(vs):
            raise ValueError("cycle vertices must be distinct")
        object.__setattr__(self, "vertices", canonical_cycle(vs))

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def edges(self):
        vs = self.vertices
        k = len(vs)
        return tuple(_edge(vs[i], vs[(i + 1) % k]) for i in range(k))


def canonical_cycle(seq):
    """Lexicographically minimal rotation/reflection of a cyclic sequence."""
    seq = tuple(seq)
    k = len(seq)
    i = seq.index(min(seq))
    fwd = seq[i:] + seq[:i]
    rev = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, rev) if k > 2 else fwd


def _edge(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class OrientedEdge:
    tail: int
    head: int

    def __post_init__(self):
        if self.tail == self.head:
            raise ValueError("oriented edge endpoints must differ")


def contains_cycle(g, c):
    """True iff every edge of ``c`` is an edge of ``g``."""
    if max(c.vertices) >= g.n:
        raise ValueError("cycle vertex out of range")
    return all(g.has_edge(u, v) for u, v in c.edges)


def distance(g, a, b):
    """Shortest-path distance between vertex sets ``a`` and ``b`` (``inf`` if none)."""
    a = set(a)
    b = set(b)
    if not a or not b:
        raise ValueError("distance needs two nonempty vertex sets")
    if a & b:
        return 0
    seen = set(a)
    frontier = deque((v, 0) for v in sorted(a))
    while frontier:
        v, dist = frontier.popleft()
        for w in g.adjacency[v]:
            if w in seen:
                continue
            if w in b:
                return dist + 1
            seen.add(w)
            frontier.append((w, dist + 1))
    return INF


def ball(adj, sources, radius):
    """Vertices within ``radius`` of ``sources`` in an adjacency-list graph."""
    seen = set(sources)
    frontier = list(seen)
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


# -- small named graphs used in tests and demos ---------------------------


def complete_graph(n):
    return RegularGraph(n, n - 1, [[w for w in range(n) if w != v] for v in range(n)])


def cycle_graph(n):
    return RegularGraph(n, 2, [[(v - 1) % n, (v + 1) % n] for v in range(n)])


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return RegularGraph.from_edges(10, 3, outer + spokes + inner)


def complete_bipartite_33():
    return RegularGraph.from_edges(6, 3, [(i, j) for i in range(3) for j in range(3, 6)])


def disjoint_union(*graphs):
    d = graphs[0].d
    edges = []
    offset = 0
    for g in graphs:
        if g.d != d:
            raise GraphError("disjoint union needs equal degrees")
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return RegularGraph.from_edges(offset, d, edges)


def circulant_graph(n, d):
    """Deterministic simple d-regular graph (offsets 1..d/2, plus the diameter if d is odd)."""
    if (n * d) % 2 or d >= n:
        raise GraphError(f"no circulant {d}-regular graph on {n} vertices")
    edges = set()
    for v in range(n):
        for s in range(1, d // 2 + 1):
            edges.add(_edge(v, (v + s) % n))
        if d % 2:
            edges.add(_edge(v, (v + n // 2) % n))
    return RegularGraph.from_edges(n, d, sorted(edges))
