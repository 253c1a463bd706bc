import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import triangle_fixture
from regspec.census import census
from regspec.graph import Cycle, complete_graph, contains_cycle, falling_factorial
from regspec.sampler import BudgetExceeded, SamplerConfig, enumerate_all_regular, sample_uniform
from regspec.switchings import (
    BackwardSwitching,
    ForwardSwitching,
    InvalidMove,
    applicability_error,
    apply_backward,
    apply_forward,
    backward_switchings,
    count_backward,
    count_forward,
    exact_metagraph,
    forward_lower_bound,
    forward_sufficient_conditions,
    forward_switchings,
    is_valid,
    local_balance,
    metagraph_step,
    random_forward_candidate,
    stein_certificate,
    switch_effect,
)

TRI = Cycle((0, 1, 2))


def all_forward_candidates(g, alpha):
    k = len(alpha)
    oriented = [(a, b) for a, b in g.edges] + [(b, a) for a, b in g.edges]
    for targets in itertools.permutations(oriented, k):
        yield ForwardSwitching.from_targets(alpha, [tuple(int(x) for x in t) for t in targets])


def test_fixture_forward_kills_triangle_and_backward_restores():
    g = triangle_fixture()
    moves = forward_switchings(g, TRI, 3)
    assert moves
    s = moves[0]
    h = apply_forward(g, s)
    assert census(h, 3).count(3) == 0
    assert np.all(h.adjacency_matrix().sum(axis=1) == 3)
    back = s.mirror()
    assert is_valid(h, back, 3)
    g2 = apply_backward(h, back)
    assert g2 == g
    assert contains_cycle(g2, TRI)
    assert census(g2, 3).count(3) == census(h, 3).count(3) + 1


def test_side_effect_triangle_makes_move_invalid():
    g = triangle_fixture()
    found = None
    for s in all_forward_candidates(g, TRI.vertices):
        if applicability_error(g, s):
            continue
        destroyed, created = switch_effect(g, s, 3)
        if created:
            found = s
            break
    assert found is not None
    assert not is_valid(g, found, 3)
    assert not is_valid(g, found, 3, method="census")


def test_k4_has_no_valid_triangle_switching():
    k4 = complete_graph(4)
    assert count_forward(k4, TRI, 3).value == 0
    # exhaustive scan over every target tuple
    valid = 0
    for s in all_forward_candidates(k4, TRI.vertices):
        if applicability_error(k4, s) is None:
            valid += is_valid(k4, s, 3)
    assert valid == 0


def test_inapplicable_moves_raise():
    g = triangle_fixture()
    bad = ForwardSwitching((0, 1, 2), (3, 4, 5), (6, 6, 7))
    with pytest.raises(InvalidMove):
        apply_forward(g, bad)
    with pytest.raises(InvalidMove):
        is_valid(g, bad, 3)
    with pytest.raises(TypeError):
        apply_forward(g, bad.mirror())


def test_count_bounds_and_errors():
    for g in sample_uniform(SamplerConfig(n=8, d=3, seed=11), 10):
        cen = census(g, 4)
        for alpha in cen.cycles:
            f = count_forward(g, alpha, 4, cen=cen)
            assert f.value <= falling_factorial(8, len(alpha)) * 3 ** len(alpha)
        b = count_backward(g, Cycle((0, 1, 2)), 4)
        assert b.value <= 216
    with pytest.raises(ValueError):
        count_forward(triangle_fixture(), Cycle((0, 3, 6)), 3)


def test_exact_guard():
    g = sample_uniform(SamplerConfig(n=60, d=3, seed=1), 1)[0]
    cen = census(g, 6)
    alpha = next(c for c in cen.cycles if len(c) >= 5)
    with pytest.raises(BudgetExceeded):
        count_forward(g, alpha, 6)
    est = count_forward(g, alpha, 6, mode="monte-carlo", samples=50, rng=np.random.default_rng(0))
    assert est.stderr >= 0


def test_monte_carlo_counts_match_exact():
    g = sample_uniform(SamplerConfig(n=12, d=3, seed=4), 1)[0]
    cen = census(g, 3)
    rng = np.random.default_rng(3)
    for alpha in cen.cycles:
        exact = count_forward(g, alpha, 3, cen=cen).value
        mc = count_forward(g, alpha, 3, mode="monte-carlo", samples=20000, rng=rng, cen=cen)
        assert abs(mc.value - exact) <= 4 * mc.stderr + 1e-9
    beta = Cycle((0, 5, 9))
    exact = count_backward(g, beta, 3).value
    mc = count_backward(g, beta, 3, mode="monte-carlo", samples=20000, rng=rng)
    assert abs(mc.value - exact) <= 4 * mc.stderr + 1e-9


def test_backward_counts_exchangeable_in_labels():
    gs = sample_uniform(SamplerConfig(n=100, d=3, seed=8), 150)
    a = np.array([count_backward(g, Cycle((0, 1, 2)), 5).value for g in gs]) / 216
    b = np.array([count_backward(g, Cycle((10, 20, 30)), 5).value for g in gs]) / 216
    assert a.max() <= 1 and b.max() <= 1
    se = np.sqrt(a.var(ddof=1) / len(a) + b.var(ddof=1) / len(b))
    assert abs(a.mean() - b.mean()) <= 4 * se + 1e-9
    # at this size a vertex on a short cycle already blocks every candidate,
    # so the mean ratio sits far below 1; only its range is asserted
    assert 0 < a.mean() < 1


def test_forward_lower_bound_reported():
    g = sample_uniform(SamplerConfig(n=12, d=3, seed=4), 1)[0]
    cen = census(g, 3)
    alpha = cen.cycles[0]
    f = count_forward(g, alpha, 3, cen=cen).value
    lb = forward_lower_bound(g, alpha, 3, cen)
    assert np.isfinite(f / max(lb, 1e-9))


def test_sufficient_conditions_imply_validity():
    g = sample_uniform(SamplerConfig(n=150, d=3, seed=2), 1)[0]
    cen = census(g, 4)
    rng = np.random.default_rng(0)
    lone = [c for c in cen.cycles if all(len(cen.cycles_by_edge[e]) == 1 for e in c.edges)]
    assert lone
    checked = 0
    for _ in range(3000):
        alpha = lone[rng.integers(len(lone))]
        s = random_forward_candidate(g, alpha.vertices, rng)
        if applicability_error(g, s):
            continue
        cond = forward_sufficient_conditions(g, s, 4, cen)
        if all(cond.values()):
            checked += 1
            assert is_valid(g, s, 4, cen)
    assert checked >= 5


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([8, 10, 12]))
def test_bijection_property(seed, n):
    g = sample_uniform(SamplerConfig(n=n, d=3, seed=seed), 1)[0]
    cen = census(g, 3)
    for alpha in cen.cycles:
        for s in forward_switchings(g, alpha, 3, cen):
            h = apply_forward(g, s)
            assert is_valid(h, s.mirror(), 3)
            assert apply_backward(h, s.mirror()) == g
            assert s.mirror() in backward_switchings(h, alpha, 3)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_local_validity_equals_census_diff(seed):
    g = sample_uniform(SamplerConfig(n=30, d=3, seed=seed), 1)[0]
    cen = census(g, 5)
    rng = np.random.default_rng(seed)
    for _ in range(150):
        alpha = cen.cycles[rng.integers(len(cen.cycles))]
        s = random_forward_candidate(g, alpha.vertices, rng)
        if applicability_error(g, s):
            continue
        assert is_valid(g, s, 5, cen) == is_valid(g, s, 5, method="census")


def test_local_detailed_balance():
    total = 0
    for g in sample_uniform(SamplerConfig(n=10, d=3, seed=6), 8):
        nb, err = local_balance(g, 3)
        total += nb
        assert err < 1e-15
    assert total > 0


def test_exact_metagraph_six_vertices():
    rep = exact_metagraph(enumerate_all_regular(6, 3), 5)
    assert rep.states == 70
    assert rep.symmetry_error <= 1e-12
    assert rep.stationarity_error <= 1e-12
    assert rep.bijection_error <= 1e-12


def test_metagraph_step_changes_one_cycle():
    g = sample_uniform(SamplerConfig(n=40, d=3, seed=5), 1)[0]
    rng = np.random.default_rng(1)
    moves = 0
    prev = census(g, 3).vector()
    for _ in range(2000):
        g = metagraph_step(g, 3, rng)
        assert np.all(g.adjacency_matrix().sum(axis=1) == 3)
        cur = census(g, 3).vector()
        delta = cur - prev
        assert np.abs(delta).sum() in (0, 1)
        moves += np.abs(delta).sum()
        prev = cur
    assert moves > 0


def test_stein_certificate_shape():
    cert = stein_certificate(60, 3, 3, samples=5, seed=1, proposals=20)
    assert cert.bound >= 0
    assert all(t >= 0 for t in cert.term1 + cert.term2)
    assert cert.bound == pytest.approx(sum(x * (a + b) for x, a, b in zip(cert.xi, cert.term1, cert.term2)))
    assert cert.reference == pytest.approx(np.sqrt(3) * 2**3.5 / 60)
    with pytest.raises(ValueError):
        stein_certificate(60, 3, 3, samples=0, seed=1)


def test_backward_move_fields():
    s = BackwardSwitching((0, 1, 2), (3, 4, 5), (6, 7, 8))
    assert s.paths == ((3, 0, 6), (4, 1, 7), (5, 2, 8))
    assert s.mirror().targets == ((6, 4), (7, 5), (8, 3))
