"""Scaled adjacency spectra, the Gamma/Phi Chebyshev bases and linear eigenvalue statistics."""

from dataclasses import dataclass
from math import floor, log, sqrt

import numpy as np
from scipy import linalg

from ._parallel import stream_rng
from .nbwalks import cnbw_counts, divisors, mu_k

GAMMA = "gamma"
PHI = "phi"

STREAM_LIMIT = 5


@dataclass(frozen=True)
class ScaledSpectrum:
    """Eigenvalues of ``A / sqrt(d-1)`` in descending order."""

    d: int
    values: np.ndarray

    @property
    def n(self):
        return len(self.values)


def scaled_spectrum(g, check=False):
    """Dense symmetric eigensolve; ``check=True`` also verifies every eigenpair residual."""
    a = g.adjacency_matrix().astype(float)
    if check:
        vals, vecs = linalg.eigh(a)
        resid = np.abs(a @ vecs - vecs * vals).max() if len(vals) else 0.0
        if resid > 1e-8 * g.d:
            raise ArithmeticError(f"eigensolver residual {resid:.3g} too large")
    else:
        vals = linalg.eigvalsh(a)
    return ScaledSpectrum(g.d, vals[::-1] / sqrt(g.d - 1))


def _cheb_t(k, x):
    """``T_k(x)`` by the three-term recurrence (valid for all real x)."""
    x = np.asarray(x, dtype=float)
    t0, t1 = np.ones_like(x), x
    if k == 0:
        return t0
    for _ in range(k - 1):
        t0, t1 = t1, 2 * x * t1 - t0
    return t1


def phi_poly(k, x):
    """``Phi_k(x) = 2 T_k(x/2)``, with ``Phi_0 = 1`` (the constant basis element)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return np.ones_like(np.asarray(x, dtype=float))
    return 2 * _cheb_t(k, np.asarray(x, dtype=float) / 2)


def gamma_shift(k, d):
    """Constant separating ``Gamma_k`` from ``Phi_k``: ``(d-2)/(d-1)^(k/2)`` for even k >= 2."""
    return (d - 2) / (d - 1) ** (k / 2) if k >= 2 and k % 2 == 0 else 0.0


def gamma_poly(k, d, x):
    if k == 0:
        return np.ones_like(np.asarray(x, dtype=float))
    return phi_poly(k, x) + gamma_shift(k, d)


def gamma_trace_deviations(spec, cnbw, kmax):
    """``{k: |sum_i Gamma_k(lambda_i) - (d-1)^(-k/2) CNBW_k|}`` for k = 1..kmax."""
    d = spec.d
    out = {}
    for k in range(1, kmax + 1):
        lhs = float(np.sum(gamma_poly(k, d, spec.values)))
        out[k] = abs(lhs - cnbw[k] / (d - 1) ** (k / 2))
    return out


def gamma_trace_identity_check(g, kmax, spec=None):
    """Largest deviation in the Gamma trace identity over k <= kmax."""
    spec = scaled_spectrum(g) if spec is None else spec
    return max(gamma_trace_deviations(spec, cnbw_counts(g, kmax), kmax).values())


# -- Chebyshev expansions ----------------------------------------------------


@dataclass(frozen=True)
class ChebExpansion:
    basis: str
    d: int
    coeffs: np.ndarray
    nodes: int = 0

    @property
    def m(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for k, a in enumerate(self.coeffs):
            if a:
                out = out + a * (gamma_poly(k, self.d, x) if self.basis == GAMMA else phi_poly(k, x))
        return out

    def to_basis(self, basis):
        if basis == self.basis:
            return self
        a = np.array(self.coeffs, dtype=float)
        shift = sum(a[k] * gamma_shift(k, self.d) for k in range(2, len(a)))
        a[0] += shift if basis == PHI else -shift
        return ChebExpansion(basis, self.d, a, self.nodes)

    def tail_bound(self, kmax):
        """``sum_{kmax < k <= m} |a_k| (d-1)^(-k/2) mu_k(d)``: size of the dropped part of the limit."""
        d = self.d
        return float(sum(abs(self.coeffs[k]) * mu_k(d, k) / (d - 1) ** (k / 2) for k in range(kmax + 1, self.m + 1)))


def _phi_coeffs(f, m, nodes):
    # Chebyshev-Gauss nodes on [-1, 1], f evaluated at x = 2t
    j = np.arange(nodes)
    t = np.cos(np.pi * (j + 0.5) / nodes)
    y = np.asarray(f(2 * t), dtype=float)
    if y.shape != t.shape or not np.all(np.isfinite(y)):
        raise FloatingPointError("f is not finite at every quadrature node")
    k = np.arange(m + 1)
    c = (2 / nodes) * np.cos(np.outer(k, np.pi * (j + 0.5) / nodes)) @ y
    c[0] /= 2
    # f = sum c_k T_k(x/2) = c_0 + sum_{k>=1} (c_k / 2) Phi_k(x)
    a = c.copy()
    a[1:] /= 2
    return a


def cheb_expand(f, basis=GAMMA, d=3, m=12, tol=1e-12, max_nodes=1 << 16):
    """Expand ``f`` on [-2, 2] in the Phi or Gamma(d) basis up to degree m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if basis not in (GAMMA, PHI):
        raise ValueError(f"unknown basis {basis!r}")
    nodes = 4 * (m + 1)
    a = _phi_coeffs(f, m, nodes)
    while nodes < max_nodes:
        b = _phi_coeffs(f, m, 2 * nodes)
        nodes *= 2
        done = np.max(np.abs(a - b)) <= tol
        a = b
        if done:
            break
    return ChebExpansion(PHI, d, a, nodes).to_basis(basis)


def coefficient_decay(exp):
    """Fitted geometric rate of ``|a_k|`` (slope of log|a_k| per step) over the nonzero tail."""
    a = np.abs(np.asarray(exp.coeffs[1:], dtype=float))
    k = np.arange(1, len(a) + 1)
    keep = a > 1e-14
    if keep.sum() < 2:
        return 0.0
    slope = np.polyfit(k[keep], np.log(a[keep]), 1)[0]
    return float(np.exp(slope))


def truncation_error(f, exp, lo=-2.1, hi=2.1, points=2001):
    """Sup-norm gap between ``f`` and the truncated expansion on [lo, hi]."""
    x = np.linspace(lo, hi, points)
    return float(np.max(np.abs(np.asarray(f(x), dtype=float) - exp(x))))


# -- functionals and centering ------------------------------------------------


def eigen_functional(spec, exp):
    """``sum_i f_m(lambda_i) - n a_0``."""
    if exp.d != spec.d and exp.basis == GAMMA:
        raise ValueError("expansion and spectrum use different d")
    return float(np.sum(exp(spec.values)) - spec.n * exp.coeffs[0])


def r_n(n, d, beta=0.3):
    """Truncation order ``floor(beta log n / log(d-1))``."""
    if d < 3:
        raise ValueError("need d >= 3")
    return int(floor(beta * log(n) / log(d - 1)))


def centering_m_f(n, d, exp, rn):
    """``n a_0 + sum_{k=1}^{rn} a_k (d-1)^(-k/2) (mu_k(d) - (d-2) n [k even])`` (Phi basis)."""
    exp = exp.to_basis(PHI)
    a = exp.coeffs
    total = n * a[0]
    for k in range(1, min(rn, exp.m) + 1):
        total += a[k] * (mu_k(d, k) - (d - 2) * n * (k % 2 == 0)) / (d - 1) ** (k / 2)
    return float(total)


def limit_variance_growing_d(exp):
    """``sum_{k>=3} 2k a_k^2`` (Phi basis)."""
    a = exp.to_basis(PHI).coeffs
    return float(sum(2 * k * a[k] ** 2 for k in range(3, len(a))))


def sample_limit_fixed_d(exp, d, kmax, count, seed):
    """Draws of ``sum_{k<=kmax} a_k (d-1)^(-k/2) CNBW_k`` with independent Poisson cycle counts.

    ``CNBW_k = sum_{j | k} 2j C_j`` and ``C_j ~ Poisson((d-1)^j / 2j)``.
    Returns ``(draws, tail_bound)``.
    """
    exp = exp.to_basis(GAMMA)
    kmax = min(kmax, exp.m)
    rng = stream_rng(seed, STREAM_LIMIT, 0)
    lengths = list(range(3, kmax + 1))
    weight = np.zeros(len(lengths))
    for k in range(1, kmax + 1):
        if not exp.coeffs[k]:
            continue
        for j in divisors(k):
            if j >= 3:
                weight[j - 3] += exp.coeffs[k] * 2 * j / (d - 1) ** (k / 2)
    if not lengths:
        return np.zeros(count), exp.tail_bound(kmax)
    lam = np.array([(d - 1) ** j / (2 * j) for j in lengths])
    cyc = rng.poisson(lam, size=(count, len(lengths)))
    return cyc @ weight, exp.tail_bound(kmax)


def limit_mean_fixed_d(exp, d, kmax):
    exp = exp.to_basis(GAMMA)
    return float(sum(exp.coeffs[k] * mu_k(d, k) / (d - 1) ** (k / 2) for k in range(1, min(kmax, exp.m) + 1)))


NAMED_FUNCTIONS = {
    "exp": np.exp,
    "cos": np.cos,
    "square": np.square,
}


def named_expansion(name, basis, d, m):
    """Resolve CLI names: ``gamma<k>``/``phi<k>`` give a single basis element, others are expanded."""
    for prefix, b in (("gamma", GAMMA), ("phi", PHI)):
        if name.startswith(prefix) and name[len(prefix) :].isdigit():
            k = int(name[len(prefix) :])
            a = np.zeros(max(k, m) + 1)
            a[k] = 1.0
            return ChebExpansion(b, d, a).to_basis(basis)
    if name not in NAMED_FUNCTIONS:
        raise ValueError(f"unknown function {name!r}; try exp, cos, square, gamma<k> or phi<k>")
    return cheb_expand(NAMED_FUNCTIONS[name], basis, d, m)
