"""Laws, total variation distances, goodness of fit, and the asymptotic bound formulas."""

from dataclasses import dataclass, field
from itertools import product
from math import sqrt

import numpy as np
from scipy import stats as sps

from .nbwalks import mu_k


class InsufficientSamples(ValueError):
    pass


def _key(v):
    if isinstance(v, (tuple, list, np.ndarray)):
        return tuple(int(x) for x in np.asarray(v).ravel())
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


def _dim(v):
    return len(v) if isinstance(v, tuple) else 0


@dataclass
class EmpiricalDistribution:
    """Finitely supported law: ``{value: probability}``; vector values are tuples."""

    support: dict

    def __post_init__(self):
        total = 0.0
        for w in self.support.values():
            if w < 0:
                raise ValueError("negative probability")
            total += w
        if abs(total - 1) > 1e-12:
            raise ValueError(f"weights sum to {total!r}, not 1")
        dims = {_dim(v) for v in self.support}
        if len(dims) > 1:
            raise ValueError("values of mixed dimension")

    @property
    def dim(self):
        return _dim(next(iter(self.support))) if self.support else 0

    @classmethod
    def from_samples(cls, samples):
        samples = list(samples)
        if not samples:
            raise InsufficientSamples("empty sample set")
        tally = {}
        for s in samples:
            k = _key(s)
            tally[k] = tally.get(k, 0) + 1
        n = len(samples)
        return cls({k: c / n for k, c in tally.items()})

    @classmethod
    def from_weights(cls, weights, renormalize=False):
        weights = {_key(k): float(v) for k, v in weights.items()}
        if renormalize:
            total = sum(weights.values())
            weights = {k: v / total for k, v in weights.items()}
        return cls(weights)


@dataclass(frozen=True)
class PoissonSpec:
    """Independent Poisson laws with means ``(d-1)^k / 2k`` for k = kmin..r."""

    d: int
    r: int
    kmin: int = 3

    def mean(self, k):
        return 0.0 if k < 3 else (self.d - 1) ** k / (2 * k)

    @property
    def lengths(self):
        return list(range(self.kmin, self.r + 1))

    @property
    def means(self):
        return np.array([self.mean(k) for k in self.lengths])

    def product_law(self, tail=1e-12):
        """Product pmf truncated where each marginal's upper tail is below ``tail``."""
        marg = []
        for lam in self.means:
            top = int(sps.poisson.isf(tail, lam)) + 1 if lam > 0 else 0
            xs = np.arange(top + 1)
            marg.append((xs, sps.poisson.pmf(xs, lam)))
        out = {}
        for combo in product(*[range(len(xs)) for xs, _ in marg]):
            key = tuple(int(marg[i][0][j]) for i, j in enumerate(combo))
            out[key] = float(np.prod([marg[i][1][j] for i, j in enumerate(combo)]))
        return EmpiricalDistribution.from_weights(out, renormalize=True)


def tv_exact(p, q):
    """Half the l1 distance between two finitely supported laws."""
    if p.support and q.support and p.dim != q.dim:
        raise ValueError(f"cannot compare laws on dimensions {p.dim} and {q.dim}")
    keys = set(p.support) | set(q.support)
    return 0.5 * sum(abs(p.support.get(k, 0.0) - q.support.get(k, 0.0)) for k in keys)


def poisson_tv(lam1, lam2, tail=1e-12):
    """TV between two Poisson laws by direct pmf summation."""
    top = int(max(sps.poisson.isf(tail, lam1), sps.poisson.isf(tail, lam2))) + 1
    xs = np.arange(top + 1)
    return 0.5 * float(np.abs(sps.poisson.pmf(xs, lam1) - sps.poisson.pmf(xs, lam2)).sum())


def freedman_diaconis_edges(x):
    x = np.asarray(x, dtype=float)
    iqr = np.subtract(*np.percentile(x, [75, 25]))
    lo, hi = x.min(), x.max()
    if hi == lo:
        return np.array([lo - 0.5, hi + 0.5])
    width = 2 * iqr / len(x) ** (1 / 3) if iqr > 0 else (hi - lo) / 10
    nb = max(1, int(np.ceil((hi - lo) / width)))
    return np.linspace(lo, hi, nb + 1)


def _codes(a, b, real):
    """Map both samples onto shared integer cell codes."""
    if real:
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        edges = freedman_diaconis_edges(np.concatenate([a, b]))
        inner = edges[1:-1]
        return np.searchsorted(inner, a, side="right"), np.searchsorted(inner, b, side="right"), len(edges) - 1
    ka = [_key(s) for s in a]
    kb = [_key(s) for s in b]
    index = {}
    for k in ka + kb:
        index.setdefault(k, len(index))
    return np.array([index[k] for k in ka]), np.array([index[k] for k in kb]), len(index)


def _tv_codes(ca, cb, m):
    pa = np.bincount(ca, minlength=m) / len(ca)
    pb = np.bincount(cb, minlength=m) / len(cb)
    return 0.5 * float(np.abs(pa - pb).sum())


@dataclass
class TVEstimate:
    """Plug-in TV with two bootstrap intervals.

    ``ci`` is the basic (reflected) interval ``2T - q``, which offsets the
    upward bias that resampling adds on top of the plug-in bias; the raw
    percentile interval is kept as ``ci_percentile``.
    """

    estimate: float
    ci: tuple
    ci_percentile: tuple
    replicates: int
    cells: int

    def as_dict(self):
        return {
            "estimate": self.estimate,
            "ci": list(self.ci),
            "ci_percentile": list(self.ci_percentile),
            "replicates": self.replicates,
            "cells": self.cells,
        }


def _intervals(est, reps, level):
    if len(reps) == 0:
        return (est, est), (est, est)
    tail = (1 - level) / 2
    lo, hi = float(np.quantile(reps, tail)), float(np.quantile(reps, 1 - tail))
    basic = (max(0.0, 2 * est - hi), min(1.0, max(0.0, 2 * est - lo)))
    return basic, (lo, hi)


def tv_empirical(a, b, bootstrap=200, seed=0, real=None, level=0.95):
    """Plug-in TV between two samples, with basic and percentile bootstrap intervals.

    Integer scalars and integer vectors are compared on their exact support;
    real values are binned on shared Freedman-Diaconis edges.  The plug-in
    estimate is biased upward when the support is large relative to the
    sample sizes.
    """
    a = list(a)
    b = list(b)
    if not a or not b:
        raise InsufficientSamples("empty sample set")
    if real is None:
        first = np.asarray(a[0])
        real = first.dtype.kind == "f" and first.ndim == 0
    ca, cb, m = _codes(a, b, real)
    est = _tv_codes(ca, cb, m)
    rng = np.random.default_rng(seed)
    reps = np.empty(bootstrap)
    for i in range(bootstrap):
        reps[i] = _tv_codes(rng.choice(ca, len(ca)), rng.choice(cb, len(cb)), m)
    return TVEstimate(est, *_intervals(est, reps, level), bootstrap, m)


def tv_to_law(samples, law, bootstrap=200, seed=0, level=0.95):
    """Plug-in TV between the empirical law of ``samples`` and an exact law."""
    keys = [_key(s) for s in samples]
    if not keys:
        raise InsufficientSamples("empty sample set")
    index = {}
    for k in list(law.support) + keys:
        index.setdefault(k, len(index))
    m = len(index)
    q = np.zeros(m)
    for k, w in law.support.items():
        q[index[k]] = w
    codes = np.array([index[k] for k in keys])

    def tv(c):
        return 0.5 * float(np.abs(np.bincount(c, minlength=m) / len(c) - q).sum())

    est = tv(codes)
    rng = np.random.default_rng(seed)
    reps = np.array([tv(rng.choice(codes, len(codes))) for _ in range(bootstrap)])
    return TVEstimate(est, *_intervals(est, reps, level), bootstrap, m)


# -- bound formulas ----------------------------------------------------------


def bound_bestpoiapprox(n, d, r, C=1.0):
    """``C sqrt(r) (d-1)^(3r/2 - 1) / n``: TV bound for the joint short-cycle counts."""
    _check_dr(d, r)
    return C * sqrt(r) * (d - 1) ** (1.5 * r - 1) / n


def bound_summed_cycles(n, d, r, C=1.0):
    """``C (d-1)^(2r-1) / n``: the cruder bound from summing per-cycle terms."""
    _check_dr(d, r)
    return C * (d - 1) ** (2 * r - 1) / n


def bound_cycle_term(n, d, r, k, C=1.0):
    """``C k (d-1)^(k+r-1) / n^(k+1)``: contribution of one k-cycle of K_n."""
    _check_dr(d, r)
    return C * k * (d - 1) ** (k + r - 1) / n ** (k + 1)


def bound_cnbw(n, d, r, C=1.0):
    """``C sqrt(r) (d-1)^(3r/2) / n``: TV bound for the walk-count vector."""
    _check_dr(d, r)
    return C * sqrt(r) * (d - 1) ** (1.5 * r) / n


def _check_dr(d, r):
    if d < 3 or r < 3:
        raise ValueError("bounds need d >= 3 and r >= 3")


def bound_report(n, d, r, C=1.0):
    """All TV bounds at one parameter point, each with its vacuous flag (value >= 1)."""
    vals = {
        "thm8": bound_bestpoiapprox(n, d, r, C),
        "cor6": bound_summed_cycles(n, d, r, C),
        "thm9": bound_cnbw(n, d, r, C),
    }
    return {k: {"value": v, "vacuous": v >= 1, "C": C} for k, v in vals.items()}


# -- walk-count standardization ----------------------------------------------


def standardized_cnbw(cnbw, d, r_n, kmax=None):
    """``N_k = (d-1)^(-k/2) (CNBW_k - mu_k(d))`` for k <= r_n, zero beyond."""
    kmax = max(cnbw) if kmax is None else kmax
    return {k: ((cnbw[k] - mu_k(d, k)) / (d - 1) ** (k / 2) if k <= r_n else 0.0) for k in range(1, kmax + 1)}


# -- goodness of fit ---------------------------------------------------------


def pooled_cells(lam, nsamples, min_expected=5.0):
    """Right endpoints of chi-square cells for Poisson(lam); the last cell is open."""
    if lam <= 0:
        return [0]
    top = int(sps.poisson.isf(1e-12, lam)) + 1
    exp = nsamples * sps.poisson.pmf(np.arange(top + 1), lam)
    cells, acc = [], 0.0
    for j in range(top + 1):
        acc += exp[j]
        if acc >= min_expected:
            cells.append(j)
            acc = 0.0
    if not cells:
        return [top]
    tail = nsamples * sps.poisson.sf(cells[-1], lam)
    if tail < min_expected and len(cells) > 1:
        cells.pop()
    return cells


def poisson_chisquare(x, lam, min_expected=5.0):
    """Chi-square goodness of fit of integer samples to Poisson(lam), pooling thin cells."""
    x = np.asarray(x, dtype=np.int64)
    n = len(x)
    if lam <= 0:
        return {"stat": 0.0, "df": 0, "pvalue": 1.0 if np.all(x == 0) else 0.0, "cells": 1}
    cuts = pooled_cells(lam, n, min_expected)
    if len(cuts) < 2:
        return {"stat": 0.0, "df": 0, "pvalue": 1.0, "cells": 1}
    cdf = sps.poisson.cdf(cuts, lam)
    probs = np.diff(np.concatenate([[0.0], cdf[:-1], [1.0]]))
    idx = np.searchsorted(np.array(cuts[:-1]), x, side="left")
    obs = np.bincount(idx, minlength=len(cuts))
    res = sps.chisquare(obs, n * probs)
    return {"stat": float(res.statistic), "df": len(cuts) - 1, "pvalue": float(res.pvalue), "cells": len(cuts)}


@dataclass
class GofResult:
    lengths: list
    means: list
    stderr: list
    expected: list
    chisquare: list
    pvalues: list
    bonferroni: list
    correlation: list = field(repr=False)
    max_abs_correlation: float = 0.0

    def as_dict(self):
        return dict(self.__dict__)


def gof_tests(samples, spec, min_samples=100):
    """Per-length Poisson chi-square tests plus pairwise correlations.

    ``samples`` is an (N, K) array of counts for lengths ``spec.lengths``.
    Bonferroni-adjusted p-values are ``min(1, K p)``.
    """
    x = np.asarray(samples, dtype=np.int64)
    if x.ndim == 1:
        x = x[:, None]
    if len(x) < min_samples:
        raise InsufficientSamples(f"need at least {min_samples} samples, got {len(x)}")
    ks = spec.lengths
    if x.shape[1] != len(ks):
        raise ValueError(f"expected {len(ks)} columns for lengths {ks}")
    tests = [poisson_chisquare(x[:, i], spec.mean(k)) for i, k in enumerate(ks)]
    pv = [t["pvalue"] for t in tests]
    kk = len(ks)
    with np.errstate(invalid="ignore", divide="ignore"):
        corr = np.corrcoef(x, rowvar=False) if kk > 1 else np.ones((1, 1))
    corr = np.nan_to_num(np.atleast_2d(corr))
    off = np.abs(corr[~np.eye(kk, dtype=bool)])
    return GofResult(
        lengths=ks,
        means=x.mean(axis=0).tolist(),
        stderr=(x.std(axis=0, ddof=1) / sqrt(len(x))).tolist(),
        expected=[spec.mean(k) for k in ks],
        chisquare=tests,
        pvalues=pv,
        bonferroni=[min(1.0, kk * p) for p in pv],
        correlation=corr.tolist(),
        max_abs_correlation=float(off.max()) if off.size else 0.0,
    )


def ks_normal(x, variance, lattice_step=None, seed=0):
    """KS test of ``x`` against N(0, variance).

    With ``lattice_step`` set, samples living on a lattice of that spacing are
    spread uniformly over their lattice cell first, which removes the
    discreteness that would otherwise dominate the statistic.
    """
    x = np.asarray(x, dtype=float)
    raw = sps.kstest(x, "norm", args=(0, sqrt(variance)))
    out = {"raw_stat": float(raw.statistic), "raw_pvalue": float(raw.pvalue)}
    if lattice_step:
        rng = np.random.default_rng(seed)
        y = x + lattice_step * (rng.random(len(x)) - 0.5)
        res = sps.kstest(y, "norm", args=(0, sqrt(variance + lattice_step**2 / 12)))
        out.update(stat=float(res.statistic), pvalue=float(res.pvalue))
    else:
        out.update(stat=out["raw_stat"], pvalue=out["raw_pvalue"])
    return out


# -- Stein bound -------------------------------------------------------------


def stein_xi(lam):
    return min(1.0, 1.4 / sqrt(lam)) if lam > 0 else 1.0


def stein_bound(lams, counts, plus_rates, minus_rates):
    """Assemble ``sum_k xi_k (E|lam_k - plus_k| + E|W_k - minus_k|)``.

    ``counts``, ``plus_rates`` and ``minus_rates`` are (N, K) arrays over
    sampled states; ``plus_rates[:, k]`` estimates ``c_k P[Delta_k^+ | state]``
    and ``minus_rates[:, k]`` estimates ``c_k P[Delta_k^- | state]``.
    """
    lams = np.asarray(lams, dtype=float)
    w = np.asarray(counts, dtype=float)
    plus = np.asarray(plus_rates, dtype=float)
    minus = np.asarray(minus_rates, dtype=float)
    if w.ndim != 2 or len(w) == 0:
        raise InsufficientSamples("need at least one sampled state")
    t1 = np.abs(lams[None, :] - plus)
    t2 = np.abs(w - minus)
    n = len(w)
    xi = np.array([stein_xi(x) for x in lams])
    term1 = t1.mean(axis=0)
    term2 = t2.mean(axis=0)
    se1 = t1.std(axis=0, ddof=1) / sqrt(n) if n > 1 else np.zeros_like(term1)
    se2 = t2.std(axis=0, ddof=1) / sqrt(n) if n > 1 else np.zeros_like(term2)
    return {
        "xi": xi,
        "term1": term1,
        "term1_se": se1,
        "term2": term2,
        "term2_se": se2,
        "bound": float(np.sum(xi * (term1 + term2))),
    }


def immigration_death_fixture(lams, samples, seed=0):
    """States of the stationary immigration-death chain with exact jump rates.

    Returns ``(counts, plus_rates, minus_rates)`` ready for :func:`stein_bound`:
    the counts are independent Poisson draws, the up-rate is ``lam_k`` and the
    down-rate is the current count, so every Stein term vanishes.
    """
    rng = np.random.default_rng(seed)
    lams = np.asarray(lams, dtype=float)
    w = rng.poisson(lams, size=(samples, len(lams)))
    return w, np.broadcast_to(lams, w.shape).copy(), w.astype(float)
