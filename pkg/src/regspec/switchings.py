"""Forward and backward cycle switchings, their counts, and the switching walk.

A forward switching on a cycle ``v_0 ... v_{k-1}`` of ``G`` picks oriented
edges ``w_i -> u_{i+1}`` and replaces the 2k edges ``v_i v_{i+1}``,
``w_i u_{i+1}`` by the 2k edges ``v_i u_i``, ``v_i w_i``.  A backward
switching is the inverse operation.  Both are identified by the vertex tuples
``(v, u, w)`` with ``v`` in the canonical orientation of the cycle, so
rotations are never counted twice.

Throughout, the ``u_i`` are pairwise distinct and so are the ``w_i``.  This
is what makes ``[n]_k d^k`` and ``(d(d-1))^k`` the sizes of the candidate
spaces for forward and backward moves.
"""

from collections import defaultdict
from dataclasses import dataclass
from math import sqrt

import numpy as np
from scipy import sparse

from . import _kernels
from .census import census
from .graph import Cycle, RegularGraph, ball, falling_factorial
from .sampler import BudgetExceeded

EXACT_FORWARD_BUDGET = 2 * 10**6
EXACT_BACKWARD_BUDGET = 10**6


class InvalidMove(ValueError):
    """The switching cannot be applied to this graph."""


def _e(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ForwardSwitching:
    alpha: tuple
    u: tuple
    w: tuple

    @classmethod
    def from_targets(cls, alpha, targets):
        """Build from the oriented target edges ``(w_i, u_{i+1})``."""
        k = len(alpha)
        w = tuple(t[0] for t in targets)
        u = tuple(targets[(i - 1) % k][1] for i in range(k))
        return cls(tuple(alpha), u, w)

    @property
    def k(self):
        return len(self.alpha)

    @property
    def targets(self):
        k = self.k
        return tuple((self.w[i], self.u[(i + 1) % k]) for i in range(k))

    @property
    def cycle(self):
        return Cycle(self.alpha)

    def removed(self):
        v, k = self.alpha, self.k
        return [_e(v[i], v[(i + 1) % k]) for i in range(k)] + [_e(a, b) for a, b in self.targets]

    def added(self):
        v = self.alpha
        return [_e(v[i], self.u[i]) for i in range(self.k)] + [_e(v[i], self.w[i]) for i in range(self.k)]

    def mirror(self):
        return BackwardSwitching(self.alpha, self.u, self.w)


@dataclass(frozen=True)
class BackwardSwitching:
    alpha: tuple
    u: tuple
    w: tuple

    @property
    def k(self):
        return len(self.alpha)

    @property
    def paths(self):
        return tuple(zip(self.u, self.alpha, self.w))

    @property
    def cycle(self):
        return Cycle(self.alpha)

    def removed(self):
        v = self.alpha
        return [_e(self.u[i], v[i]) for i in range(self.k)] + [_e(v[i], self.w[i]) for i in range(self.k)]

    def added(self):
        v, k = self.alpha, self.k
        return [_e(v[i], v[(i + 1) % k]) for i in range(k)] + [
            _e(self.w[i], self.u[(i + 1) % k]) for i in range(k)
        ]

    def mirror(self):
        return ForwardSwitching(self.alpha, self.u, self.w)


def applicability_error(g, s):
    """Reason ``s`` cannot be applied to ``g``, or None if it can."""
    adj = g.adjsets
    k = s.k
    if len(set(s.alpha)) != k or len(set(s.u)) != k or len(set(s.w)) != k:
        return "the v, u and w sequences must each consist of distinct vertices"
    removed = s.removed()
    added = s.added()
    if len(set(removed)) != 2 * k:
        return "edges to delete are not distinct"
    if len(set(added)) != 2 * k:
        return "edges to insert are not distinct"
    for a, b in removed:
        if b not in adj[a]:
            return f"edge {a}-{b} to delete is absent"
    for a, b in added:
        if a == b:
            return f"insertion would create a loop at {a}"
        if b in adj[a]:
            return f"edge {a}-{b} to insert is already present"
    return None


def _swapped_adjacency(g, removed, added):
    adj = list(g.adjsets)
    touched = {}
    for a, b in removed:
        touched.setdefault(a, set(adj[a])).discard(b)
        touched.setdefault(b, set(adj[b])).discard(a)
    for a, b in added:
        touched.setdefault(a, set(adj[a])).add(b)
        touched.setdefault(b, set(adj[b])).add(a)
    for v, nb in touched.items():
        adj[v] = nb
    return adj


def _apply(g, s):
    err = applicability_error(g, s)
    if err:
        raise InvalidMove(err)
    adj = _swapped_adjacency(g, s.removed(), s.added())
    return RegularGraph.from_adjacency(adj)


def apply_forward(g, s):
    if not isinstance(s, ForwardSwitching):
        raise TypeError("expected a ForwardSwitching")
    return _apply(g, s)


def apply_backward(g, s):
    if not isinstance(s, BackwardSwitching):
        raise TypeError("expected a BackwardSwitching")
    return _apply(g, s)


def cycles_through_edge(adj, a, b, r):
    """Canonical cycles of length <= r that use the edge a-b."""
    out = set()
    path = [a, b]
    onpath = {a, b}

    def rec(x):
        for y in adj[x]:
            if y == a:
                if len(path) >= 3:
                    out.add(Cycle(path))
                continue
            if y in onpath or len(path) >= r:
                continue
            path.append(y)
            onpath.add(y)
            rec(y)
            path.pop()
            onpath.discard(y)

    rec(b)
    return out


def switch_effect(g, s, r, cen=None):
    """Short cycles destroyed and created by applying ``s`` (no applicability check)."""
    removed = s.removed()
    added = s.added()
    if cen is not None and cen.r == r:
        by_edge = cen.cycles_by_edge
        destroyed = {c for e in removed for c in by_edge.get(e, ())}
    else:
        destroyed = set()
        for a, b in removed:
            destroyed |= cycles_through_edge(g.adjsets, a, b, r)
    adj2 = _swapped_adjacency(g, removed, added)
    created = set()
    for a, b in added:
        created |= cycles_through_edge(adj2, a, b, r)
    return destroyed, created


def is_valid(g, s, r, cen=None, method="local"):
    """True iff the cycle of ``s`` is the only short cycle the move creates or destroys.

    ``method="census"`` compares full censuses of the graph before and after;
    the default inspects only cycles through the swapped edges, which is
    equivalent and much cheaper.
    """
    if not 3 <= s.k <= r:
        raise ValueError(f"switching cycle length {s.k} outside 3..{r}")
    err = applicability_error(g, s)
    if err:
        raise InvalidMove(err)
    alpha = {s.cycle}
    if method == "census":
        before = census(g, r).cycle_set
        after = census(_apply(g, s), r).cycle_set
        destroyed, created = before - after, after - before
    else:
        destroyed, created = switch_effect(g, s, r, cen)
    if isinstance(s, ForwardSwitching):
        return destroyed == alpha and not created
    return not destroyed and created == alpha


def _valid_or_false(g, s, r, cen):
    if applicability_error(g, s):
        return False
    destroyed, created = switch_effect(g, s, r, cen)
    alpha = {s.cycle}
    if isinstance(s, ForwardSwitching):
        return destroyed == alpha and not created
    return not destroyed and created == alpha


# -- enumeration and counting -----------------------------------------------


@dataclass(frozen=True)
class CountEstimate:
    value: float
    stderr: float
    exact: bool
    upper_bound: int
    proposals: int = 0

    @property
    def ratio(self):
        return self.value / self.upper_bound


def _check_alpha(g, alpha, r):
    alpha = alpha if isinstance(alpha, Cycle) else Cycle(alpha)
    if not 3 <= len(alpha) <= r:
        raise ValueError(f"cycle length {len(alpha)} outside 3..{r}")
    if max(alpha.vertices) >= g.n:
        raise ValueError("cycle vertex out of range")
    return alpha


def forward_switchings(g, alpha, r, cen=None):
    """All valid forward switchings on ``alpha`` (which must lie in ``g``)."""
    alpha = _check_alpha(g, alpha, r)
    if not all(g.has_edge(a, b) for a, b in alpha.edges):
        raise ValueError(f"cycle {alpha.vertices} is not contained in the graph")
    n, d, k = g.n, g.d, len(alpha)
    if not ((k <= 4 and n * d <= 120) or falling_factorial(n, k) * d**k <= EXACT_FORWARD_BUDGET):
        raise BudgetExceeded(
            f"exact forward count needs up to {falling_factorial(n, k) * d**k} candidates; "
            "use mode='monte-carlo'"
        )
    cen = census(g, r) if cen is None or cen.r != r else cen
    by_edge = cen.cycles_by_edge
    if any(c != alpha for e in alpha.edges for c in by_edge.get(e, ())):
        return []
    v = alpha.vertices
    adj = g.adjsets
    on_short = set(by_edge)
    far = [[x for x in range(n) if x != v[i] and x not in adj[v[i]]] for i in range(k)]
    out = []
    u = [None] * k
    w = [None] * k

    def rec(i):
        # choose w_i, then u_{i+1} among its neighbors
        for wi in far[i]:
            if wi in w[:i] or wi == u[i]:
                continue
            w[i] = wi
            nxt = (i + 1) % k
            for ui in adj[wi]:
                if _e(wi, ui) in on_short:
                    continue
                if nxt == 0:
                    if ui != u[0]:
                        continue
                else:
                    if ui == v[nxt] or ui in adj[v[nxt]] or ui in u[1:nxt]:
                        continue
                    u[nxt] = ui
                if nxt == 0:
                    s = ForwardSwitching(v, tuple(u), tuple(w))
                    if _valid_or_false(g, s, r, cen):
                        out.append(s)
                else:
                    rec(nxt)
            w[i] = None

    for u0 in far[0]:
        u[0] = u0
        rec(0)
    return out


def backward_switchings(g, alpha, r, cen=None):
    """All valid backward switchings creating ``alpha`` (any cycle of K_n)."""
    alpha = _check_alpha(g, alpha, r)
    n, d, k = g.n, g.d, len(alpha)
    if (d * (d - 1)) ** k > EXACT_BACKWARD_BUDGET:
        raise BudgetExceeded(
            f"exact backward count needs {(d * (d - 1)) ** k} candidates; use mode='monte-carlo'"
        )
    v = alpha.vertices
    adj = g.adjsets
    if any(b in adj[a] for a, b in alpha.edges):
        return []
    cen = census(g, r) if cen is None or cen.r != r else cen
    out = []
    u = [None] * k
    w = [None] * k

    def rec(i):
        for ui in adj[v[i]]:
            if ui in u[:i]:
                continue
            if i > 0 and (ui == w[i - 1] or ui in adj[w[i - 1]]):
                continue
            for wi in adj[v[i]]:
                if wi == ui or wi in w[:i]:
                    continue
                u[i], w[i] = ui, wi
                if i == k - 1:
                    s = BackwardSwitching(v, tuple(u), tuple(w))
                    if _valid_or_false(g, s, r, cen):
                        out.append(s)
                else:
                    rec(i + 1)
        u[i] = w[i] = None

    rec(0)
    return out


def random_forward_candidate(g, alpha_seq, rng):
    """Uniform draw from the [n]_k d^k target tuples of a fixed cycle orientation."""
    k = len(alpha_seq)
    w = rng.choice(g.n, size=k, replace=False)
    picks = rng.integers(g.d, size=k)
    targets = [(int(w[i]), int(g.neighbors[w[i], picks[i]])) for i in range(k)]
    return ForwardSwitching.from_targets(alpha_seq, targets)


def random_backward_candidate(g, alpha_seq, rng):
    """Uniform draw from the (d(d-1))^k path tuples around a fixed cycle orientation."""
    d = g.d
    u, w = [], []
    for x in alpha_seq:
        a, b = rng.choice(d, size=2, replace=False)
        u.append(int(g.neighbors[x, a]))
        w.append(int(g.neighbors[x, b]))
    return BackwardSwitching(tuple(alpha_seq), tuple(u), tuple(w))


def _mc_fraction(g, make, r, cen, samples, rng):
    hits = 0
    for _ in range(samples):
        hits += _valid_or_false(g, make(rng), r, cen)
    p = hits / samples
    return p, sqrt(p * (1 - p) / samples)


def count_forward(g, alpha, r, mode="exact", samples=1000, rng=None, cen=None):
    """Number of valid forward switchings on ``alpha``; exact or Monte Carlo."""
    alpha = _check_alpha(g, alpha, r)
    if not all(g.has_edge(a, b) for a, b in alpha.edges):
        raise ValueError(f"cycle {alpha.vertices} is not contained in the graph")
    k = len(alpha)
    total = falling_factorial(g.n, k) * g.d**k
    if mode == "exact":
        return CountEstimate(len(forward_switchings(g, alpha, r, cen)), 0.0, True, total)
    if mode != "monte-carlo":
        raise ValueError(f"unknown mode {mode!r}")
    if samples <= 0:
        raise ValueError("need at least one proposal")
    rng = np.random.default_rng() if rng is None else rng
    cen = census(g, r) if cen is None or cen.r != r else cen
    p, se = _mc_fraction(g, lambda rg: random_forward_candidate(g, alpha.vertices, rg), r, cen, samples, rng)
    return CountEstimate(total * p, total * se, False, total, samples)


def count_backward(g, alpha, r, mode="exact", samples=1000, rng=None, cen=None):
    """Number of valid backward switchings creating ``alpha``; exact or Monte Carlo."""
    alpha = _check_alpha(g, alpha, r)
    k = len(alpha)
    total = (g.d * (g.d - 1)) ** k
    if mode == "exact":
        return CountEstimate(len(backward_switchings(g, alpha, r, cen)), 0.0, True, total)
    if mode != "monte-carlo":
        raise ValueError(f"unknown mode {mode!r}")
    if samples <= 0:
        raise ValueError("need at least one proposal")
    rng = np.random.default_rng() if rng is None else rng
    cen = census(g, r) if cen is None or cen.r != r else cen
    p, se = _mc_fraction(g, lambda rg: random_backward_candidate(g, alpha.vertices, rg), r, cen, samples, rng)
    return CountEstimate(total * p, total * se, False, total, samples)


def forward_lower_bound(g, alpha, r, cen=None, constant=1.0):
    """Lower estimate for the forward count when alpha shares no edge with another short cycle."""
    cen = census(g, r) if cen is None or cen.r != r else cen
    n, d, k = g.n, g.d, len(alpha)
    edges_on_cycles = sum(j * cen.count(j) for j in range(3, r + 1))
    frac = (2 * k * edges_on_cycles + constant * k * (d - 1) ** r) / (n * d)
    return falling_factorial(n, k) * d**k * (1 - frac)


def backward_mean_lower_bound(n, d, k, r, constant=1.0):
    return (d * (d - 1)) ** k * (1 - constant * k * (d - 1) ** (r - 1) / n)


def forward_sufficient_conditions(g, s, r, cen=None):
    """Evaluate the four distance conditions that guarantee a valid forward move.

    Returns a dict with keys ``a``..``d``; condition ``c`` (target edges at
    distance at least r/2 from one another) is tested as ``2*dist >= r``.
    """
    cen = census(g, r) if cen is None or cen.r != r else cen
    adj = g.adjacency
    k = s.k
    v = s.alpha
    tg = s.targets
    on_short = cen.cycles_by_edge

    def dist_at_least(src, dst, m):
        if m <= 0:
            return True
        return not (ball(adj, set(src), m - 1) & set(dst))

    a = all(_e(x, y) not in on_short for x, y in tg)
    b = all(dist_at_least((v[i], v[(i + 1) % k]), tg[i], r) for i in range(k))
    c = all(
        dist_at_least(tg[i], tg[j], (r + 1) // 2)
        for i in range(k)
        for j in range(k)
        if i != j
    )
    dd = all(dist_at_least((s.w[i],), (s.u[i],), r) for i in range(k))
    return {"a": a, "b": b, "c": c, "d": dd}


# -- the switching walk ------------------------------------------------------


def poisson_means(d, r):
    """``{k: (d-1)^k / 2k}`` for k = 3..r."""
    return {k: (d - 1) ** k / (2 * k) for k in range(3, r + 1)}


def walk_normalizer(n, d, r):
    """An upper bound on the total proposal mass of any state; plays the role of d_0."""
    total = 0.0
    for k in range(3, r + 1):
        most = min(falling_factorial(n, k) / (2 * k), n * d * (d - 1) ** (k - 2) / (2 * k))
        total += most + (d - 1) ** k / (2 * k)
    return total


def metagraph_step(g, r, rng, cen=None, normalizer=None):
    """One step of the reversible switching walk on d-regular graphs.

    Each valid switching on a k-cycle is taken with probability
    ``1 / (Z [n]_k d^k)``; the remaining mass is a self-loop.  Proposals are
    drawn uniformly and accepted iff valid, so ``Z`` only needs to bound the
    largest weighted degree.
    """
    cen = census(g, r) if cen is None or cen.r != r else cen
    z = walk_normalizer(g.n, g.d, r) if normalizer is None else normalizer
    lam = poisson_means(g.d, r)
    x = rng.random() * z
    ncyc = len(cen.cycles)
    if x < ncyc:
        alpha = cen.cycles[int(x)]
        s = random_forward_candidate(g, alpha.vertices, rng)
    else:
        x -= ncyc
        for k in range(3, r + 1):
            if x < lam[k]:
                break
            x -= lam[k]
        else:
            return g
        if g.n < k:
            return g
        seq = tuple(int(t) for t in rng.choice(g.n, size=k, replace=False))
        s = random_backward_candidate(g, seq, rng)
    if _valid_or_false(g, s, r, cen):
        return _apply(g, s)
    return g


@dataclass
class MetagraphReport:
    states: int
    edges: int
    forward_moves: int
    backward_moves: int
    normalizer: float
    bijection_error: float
    symmetry_error: float
    stationarity_error: float
    transition: sparse.csr_matrix = None


def _complement_cycles(g, r):
    comp = [[x for x in range(g.n) if x != v and x not in g.adjsets[v]] for v in range(g.n)]
    if g.n - 1 - g.d < 2:
        return []
    _, rows = _kernels.enumerate_cycles(np.array(comp, dtype=np.int64), r)
    return [Cycle(row[: row[r]]) for row in rows]


def exact_metagraph(graphs, r, normalizer=None):
    """Weighted switching structure over a complete list of d-regular graphs.

    ``F[i, j]`` sums ``1/([n]_k d^k)`` over valid forward moves from graph i
    to graph j, ``B`` likewise for backward moves.  The walk's (sparse)
    transition matrix uses ``F + B``; the bijection between forward and
    backward moves is measured as ``max |F - B.T|``.
    """
    index = {g: i for i, g in enumerate(graphs)}
    m = len(graphs)
    fwd = defaultdict(float)
    bwd = defaultdict(float)
    nf = nb = 0
    for i, g in enumerate(graphs):
        cen = census(g, r)
        n, d = g.n, g.d
        for alpha in cen.cycles:
            wt = 1.0 / (falling_factorial(n, len(alpha)) * d ** len(alpha))
            for s in forward_switchings(g, alpha, r, cen):
                fwd[i, index[_apply(g, s)]] += wt
                nf += 1
        for alpha in _complement_cycles(g, r):
            wt = 1.0 / (falling_factorial(n, len(alpha)) * d ** len(alpha))
            for s in backward_switchings(g, alpha, r, cen):
                bwd[i, index[_apply(g, s)]] += wt
                nb += 1
    fwd = _to_sparse(fwd, m)
    bwd = _to_sparse(bwd, m)
    weights = (fwd + bwd).tocsr()
    degree = np.asarray(weights.sum(axis=1)).ravel()
    if normalizer is not None:
        z = normalizer
    else:
        z = degree.max() if m and degree.max() > 0 else 1.0
    p = (weights / z + sparse.diags(1 - degree / z)).tocsr()
    pi = np.full(m, 1.0 / m)

    def maxabs(a):
        a = abs(a).tocsr()
        return float(a.max()) if a.nnz else 0.0

    return MetagraphReport(
        states=m,
        edges=int(sparse.triu(weights + weights.T, 1).count_nonzero()),
        forward_moves=nf,
        backward_moves=nb,
        normalizer=float(z),
        bijection_error=maxabs(fwd - bwd.T),
        symmetry_error=maxabs(weights - weights.T),
        stationarity_error=float(np.abs(p.T @ pi - pi).max()) if m else 0.0,
        transition=p,
    )


def local_balance(g, r, cen=None):
    """Compare ``W(g -> g')`` with ``W(g' -> g)`` for every g' one forward move away.

    A forward move on alpha can only be undone by a backward move creating
    alpha, so both weights are computed by enumerating moves on alpha alone.
    Returns ``(neighbors, max_abs_difference)``.
    """
    cen = census(g, r) if cen is None or cen.r != r else cen
    n, d = g.n, g.d
    out = defaultdict(float)
    for alpha in cen.cycles:
        wt = 1.0 / (falling_factorial(n, len(alpha)) * d ** len(alpha))
        for s in forward_switchings(g, alpha, r, cen):
            out[_apply(g, s), alpha] += wt
    worst = 0.0
    for (h, alpha), w in out.items():
        back = sum(1 for s in backward_switchings(h, alpha, r) if _apply(h, s) == g)
        wb = back / (falling_factorial(n, len(alpha)) * d ** len(alpha))
        worst = max(worst, abs(w - wb))
    return len(out), worst


def _to_sparse(acc, m):
    if not acc:
        return sparse.csr_matrix((m, m))
    ij = np.array(list(acc.keys()), dtype=np.int64)
    return sparse.csr_matrix((np.array(list(acc.values())), (ij[:, 0], ij[:, 1])), shape=(m, m))


# -- Stein certificate -------------------------------------------------------

STREAM_STEIN = 4


@dataclass
class SteinCertificate:
    n: int
    d: int
    r: int
    samples: int
    proposals: int
    lengths: list
    lambdas: list
    xi: list
    term1: list
    term1_se: list
    term2: list
    term2_se: list
    bound: float
    reference: float

    def as_dict(self):
        return dict(self.__dict__)


def switching_rates(g, r, proposals, rng, cen=None):
    """Monte Carlo ``c_k P[Delta_k^+ | g]`` and ``c_k P[Delta_k^- | g]`` for k = 3..r.

    The up-rate is ``lambda_k`` times the fraction of backward candidates on a
    uniform k-cycle of K_n that are valid; the down-rate sums, over the short
    cycles of ``g``, the fraction of valid forward candidates.  Neither needs
    the walk's normalizing degree.
    """
    cen = census(g, r) if cen is None or cen.r != r else cen
    lam = poisson_means(g.d, r)
    plus, minus = [], []
    for k in range(3, r + 1):
        hits = 0
        for _ in range(proposals):
            seq = tuple(int(t) for t in rng.choice(g.n, size=k, replace=False))
            hits += _valid_or_false(g, random_backward_candidate(g, seq, rng), r, cen)
        plus.append(lam[k] * hits / proposals)
        total = 0.0
        for alpha in cen.cycles:
            if len(alpha) != k:
                continue
            ok = sum(
                _valid_or_false(g, random_forward_candidate(g, alpha.vertices, rng), r, cen)
                for _ in range(proposals)
            )
            total += ok / proposals
        minus.append(total)
    return cen.vector(3, r), np.array(plus), np.array(minus)


def stein_certificate(n, d, r, samples, seed, proposals=200, threads=None, graphs=None):
    """Empirical upper bound on the TV distance between short-cycle counts and Poisson.

    Switching acceptance rates are estimated on ``samples`` uniform graphs;
    sample ``i`` uses the random stream ``(seed, i)`` so the result does not
    depend on ``threads``.
    """
    from ._parallel import ordered_map, stream_rng
    from .sampler import SamplerConfig, sample_uniform
    from .stats import bound_bestpoiapprox, stein_bound

    if samples <= 0 or proposals <= 0:
        raise ValueError("samples and proposals must be positive")
    if graphs is None:
        graphs = sample_uniform(SamplerConfig(n=n, d=d, seed=seed), samples, threads)
    rows = ordered_map(
        lambda i: switching_rates(graphs[i], r, proposals, stream_rng(seed, STREAM_STEIN, i)),
        range(len(graphs)),
        threads,
    )
    counts = np.array([x[0] for x in rows])
    plus = np.array([x[1] for x in rows])
    minus = np.array([x[2] for x in rows])
    lams = [poisson_means(d, r)[k] for k in range(3, r + 1)]
    res = stein_bound(lams, counts, plus, minus)
    return SteinCertificate(
        n=n,
        d=d,
        r=r,
        samples=len(graphs),
        proposals=proposals,
        lengths=list(range(3, r + 1)),
        lambdas=lams,
        xi=res["xi"].tolist(),
        term1=res["term1"].tolist(),
        term1_se=res["term1_se"].tolist(),
        term2=res["term2"].tolist(),
        term2_se=res["term2_se"].tolist(),
        bound=res["bound"],
        reference=bound_bestpoiapprox(n, d, r, 1.0),
    )
