import numpy as np
import pytest
from hypothesis import given, settings

from helpers import floyd_warshall
from modwalk.errors import DuplicateEdgeError, EmptyWalkError, InvalidInputError, NodeOutOfRangeError, SelfLoopError
from modwalk.genbench import fixture_graph
from modwalk.graphcore import UNREACHABLE, Walk, graph_from_edges, metric_closure, shortest_path, validate_closed_walk
from strategies import graphs


def test_triangle():
    g = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert g.n == 3 and g.m == 3
    assert all(g.degree(u) == 2 for u in range(3))


@pytest.mark.parametrize(
    "edges, exc",
    [
        ([(0, 1), (1, 1)], SelfLoopError),
        ([(0, 1), (1, 0)], DuplicateEdgeError),
        ([(0, 3)], NodeOutOfRangeError),
        ([(0, 1, 5)], InvalidInputError),
    ],
)
def test_bad_edges(edges, exc):
    with pytest.raises(exc):
        graph_from_edges(3, edges)


def test_fig2ab_reconstruction_size():
    g = fixture_graph("fig2ab").graph
    assert (g.n, g.m) == (10, 16)


def test_metric_closure_small_cases():
    k3 = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert metric_closure(k3).tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    path = graph_from_edges(3, [(0, 1), (1, 2)])
    assert metric_closure(path)[0, 2] == 2
    two = graph_from_edges(4, [(0, 1), (2, 3)])
    d = metric_closure(two)
    assert d[0, 2] == UNREACHABLE and d[1, 3] == UNREACHABLE and d[0, 1] == 1


def test_metric_closure_is_read_only():
    d = metric_closure(graph_from_edges(2, [(0, 1)]))
    with pytest.raises(ValueError):
        d[0, 1] = 5


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=10))
def test_metric_closure_matches_floyd_warshall(g):
    d = metric_closure(g)
    ref = floyd_warshall(g)
    for i in range(g.n):
        for j in range(g.n):
            expected = UNREACHABLE if ref[i][j] == float("inf") else ref[i][j]
            assert d[i, j] == expected
    assert np.array_equal(d, d.T)
    assert all(d[i, i] == 0 for i in range(g.n))
    for i in range(g.n):
        for j in range(g.n):
            for k in range(g.n):
                if UNREACHABLE not in (d[i, j], d[j, k]):
                    assert d[i, k] <= d[i, j] + d[j, k]


def test_shortest_path_is_lexicographically_smallest():
    # two shortest routes 0-1-3 and 0-2-3
    g = graph_from_edges(4, [(0, 2), (0, 1), (2, 3), (1, 3)])
    assert shortest_path(g, metric_closure(g), 0, 3) == [0, 1, 3]


def test_validate_quoted_walks():
    fx = fixture_graph("fig2ab")
    rep = validate_closed_walk(fx.graph, fx.walk("W1", fx.graph))
    assert rep.is_hamiltonian_walk_candidate and rep.length == 10
    fx = fixture_graph("fig2cd")
    rep = validate_closed_walk(fx.graph, fx.walk("W1", fx.graph))
    assert rep.is_hamiltonian_walk_candidate and rep.length == 16


def test_validate_non_covering_walk():
    k3 = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
    rep = validate_closed_walk(k3, Walk([0, 1, 0]))
    assert rep.is_closed and rep.all_steps_are_edges and not rep.covers_all_nodes
    assert not rep.is_hamiltonian_walk_candidate


def test_validate_flags_bad_steps_and_open_walks():
    path = graph_from_edges(3, [(0, 1), (1, 2)])
    rep = validate_closed_walk(path, [0, 2, 1, 0])
    assert rep.is_closed and not rep.all_steps_are_edges
    assert not validate_closed_walk(path, [0, 1, 2]).is_closed


def test_empty_walk():
    with pytest.raises(EmptyWalkError):
        Walk([])
    with pytest.raises(EmptyWalkError):
        validate_closed_walk(graph_from_edges(1, []), [])


def test_single_node_walk():
    g = graph_from_edges(1, [])
    rep = validate_closed_walk(g, Walk([0]))
    assert rep.is_hamiltonian_walk_candidate and rep.length == 0


@given(graphs(max_n=8, connected=True))
def test_walk_length_is_sequence_length_minus_one(g):
    seq = [0] + [v for v in range(1, g.n)] + [0]
    assert validate_closed_walk(g, seq).length == len(seq) - 1
    assert Walk(seq).length == len(seq) - 1


def test_components():
    g = graph_from_edges(5, [(0, 1), (3, 4)])
    assert g.components() == [[0, 1], [2], [3, 4]]
    assert not g.is_connected()
