import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regspec.graph import (
    INF,
    Cycle,
    GraphError,
    OrientedEdge,
    RegularGraph,
    canonical_cycle,
    circulant_graph,
    complete_bipartite_33,
    complete_graph,
    contains_cycle,
    cycle_graph,
    disjoint_union,
    distance,
    falling_factorial,
    petersen_graph,
)
from regspec.sampler import SamplerConfig, sample_uniform


def test_falling_factorial():
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(7, 0) == 1
    assert falling_factorial(4, 4) == 24
    assert falling_factorial(3, 5) == 0


def test_distance_examples():
    k4 = complete_graph(4)
    assert distance(k4, {0}, {0}) == 0
    assert distance(k4, {0}, {3}) == 1
    assert distance(cycle_graph(6), {0}, {3}) == 3
    two = disjoint_union(complete_graph(4), complete_graph(4))
    assert distance(two, {0}, {5}) == INF
    with pytest.raises(ValueError):
        distance(k4, set(), {1})


def test_contains_cycle_examples():
    assert contains_cycle(complete_graph(4), Cycle((0, 1, 2)))
    assert not contains_cycle(cycle_graph(6), Cycle((0, 1, 2)))
    assert contains_cycle(petersen_graph(), Cycle((0, 1, 2, 3, 4)))


@pytest.mark.parametrize(
    "n,d,edges,msg",
    [
        (4, 3, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (1, 3)], "dup"),
        (4, 3, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 2)], "loop"),
        (4, 3, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], "count"),
        (5, 3, [], "odd"),
        (4, 2, [(0, 1), (0, 2), (0, 3), (1, 2)], "degree"),
    ],
)
def test_from_edges_rejects_bad_input(n, d, edges, msg):
    with pytest.raises(GraphError):
        RegularGraph.from_edges(n, d, edges)


def test_text_roundtrip_and_parser_rejects(tmp_path):
    g = petersen_graph()
    assert RegularGraph.from_text(g.to_text()) == g
    path = tmp_path / "p.txt"
    g.save(path)
    assert RegularGraph.load(path) == g
    with pytest.raises(GraphError):
        RegularGraph.from_text("4 3\n1 0\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    with pytest.raises(GraphError):
        RegularGraph.from_text("4 3\n0 1\n0 1\n0 3\n1 2\n1 3\n2 3\n")


def test_named_graphs_are_regular():
    for g, d in ((complete_graph(4), 3), (petersen_graph(), 3), (complete_bipartite_33(), 3), (cycle_graph(5), 2)):
        assert g.d == d
        assert np.all(g.adjacency_matrix().sum(axis=1) == d)
    for n, d in ((10, 3), (11, 4), (2000, 10)):
        assert circulant_graph(n, d).d == d


def test_oriented_edge():
    assert OrientedEdge(1, 2).head == 2
    with pytest.raises(ValueError):
        OrientedEdge(3, 3)


def test_immutable_neighbors():
    g = complete_graph(4)
    with pytest.raises(ValueError):
        g.neighbors[0, 0] = 2


cycles = st.lists(st.integers(0, 30), min_size=3, max_size=9, unique=True)


@given(cycles, st.integers(0, 8), st.booleans())
def test_canonical_form_invariant_under_rotation_and_reflection(seq, shift, flip):
    s = shift % len(seq)
    moved = seq[s:] + seq[:s]
    if flip:
        moved = moved[::-1]
    assert Cycle(moved) == Cycle(seq)
    assert canonical_cycle(moved) == canonical_cycle(seq)
    assert Cycle(seq).vertices[0] == min(seq)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_roundtrip_and_distance_properties(seed):
    g = sample_uniform(SamplerConfig(n=20, d=3, seed=seed), 1)[0]
    assert RegularGraph.from_text(g.to_text()) == g
    rng = np.random.default_rng(seed)
    a, b, m = (int(x) for x in rng.integers(20, size=3))
    dab = distance(g, {a}, {b})
    assert dab == distance(g, {b}, {a})
    assert dab <= distance(g, {a}, {m}) + distance(g, {m}, {b})
