import random
from itertools import combinations, permutations

import pytest

from modwalk.cliquewidth import (
    DisjointUnion,
    Join,
    Relabel,
    Seed,
    build_k_expression,
    eval_k_expression,
    from_dict,
    round_trip_ok,
    to_dict,
    width,
)
from modwalk.clusterdetect import ClusterParams, ClusterSet, detect_clusters
from modwalk.errors import CoverageGapError, JoinSameLabelError, MuNonZeroError
from modwalk.genbench import gen_planted
from modwalk.graphcore import Graph, graph_from_edges

TWO_TRIANGLES = graph_from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


def test_seed_is_single_node():
    lg = eval_k_expression(Seed(1))
    assert lg.graph.n == 1 and lg.graph.m == 0 and lg.labels == (1,)


def test_join_of_two_seeds_is_an_edge():
    lg = eval_k_expression(Join(1, 2, DisjointUnion(Seed(1), Seed(2))))
    assert lg.graph.edge_list() == [(0, 1)]


def test_join_same_label_rejected():
    with pytest.raises(JoinSameLabelError):
        eval_k_expression(Join(1, 1, DisjointUnion(Seed(1), Seed(1))))


def test_relabel_then_join():
    e = Join(2, 3, DisjointUnion(Relabel(1, 2, DisjointUnion(Seed(1), Seed(1))), Seed(3)))
    lg = eval_k_expression(e)
    assert lg.graph.edge_list() == [(0, 2), (1, 2)]
    assert lg.labels == (2, 2, 3) and width(e) == 3


def test_repeated_join_adds_no_duplicates():
    e = Join(1, 2, Join(1, 2, DisjointUnion(Seed(1), Seed(2))))
    assert eval_k_expression(e).graph.m == 1


def test_two_triangles_round_trip_width_three():
    cs = ClusterSet.build(TWO_TRIANGLES, [[0, 1, 2], [3, 4, 5]])
    expr, corr = build_k_expression(TWO_TRIANGLES, cs)
    assert round_trip_ok(TWO_TRIANGLES, expr, corr)
    assert width(expr) == 3
    assert width(expr) <= 1 * 2 + 0 + 2


def has_induced_p4(g: Graph) -> bool:
    for quad in combinations(range(g.n), 4):
        for a, b, c, d in permutations(quad):
            if a < d and all(g.has_edge(*e) for e in [(a, b), (b, c), (c, d)]) and not any(
                g.has_edge(*e) for e in [(a, c), (b, d), (a, d)]
            ):
                return True
    return False


def two_label_closure(max_nodes: int) -> set[frozenset]:
    """Every unlabeled graph (as a canonical edge set) with exactly
    ``max_nodes`` nodes that some expression over labels {1, 2} builds."""

    def canon(n, edges, labels):
        best = None
        for p in permutations(range(n)):
            key = (
                tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges)),
                tuple(labels[p.index(i)] for i in range(n)),
            )
            best = key if best is None or key < best else best
        return best

    by_size: dict[int, set] = {1: {((), (1,)), ((), (2,))}}
    for n in range(2, max_nodes + 1):
        found = set()
        for k in range(1, n):
            for e1, l1 in by_size[k]:
                for e2, l2 in by_size[n - k]:
                    edges = set(e1) | {(u + k, v + k) for u, v in e2}
                    found.add(canon(n, edges, l1 + l2))
        frontier = list(found)
        while frontier:
            edges, labels = frontier.pop()
            ones = [i for i in range(n) if labels[i] == 1]
            twos = [i for i in range(n) if labels[i] == 2]
            nexts = [
                (set(edges) | {tuple(sorted((a, b))) for a in ones for b in twos}, labels),
                (set(edges), tuple(2 for _ in labels)),
                (set(edges), tuple(1 for _ in labels)),
            ]
            for ed, lab in nexts:
                key = canon(n, ed, lab)
                if key not in found:
                    found.add(key)
                    frontier.append(key)
        by_size[n] = found
    return {frozenset(e) for e, _ in by_size[max_nodes]}


def test_two_triangles_need_three_labels():
    # the graph contains an induced 4-path, which no 2-label expression builds
    assert has_induced_p4(TWO_TRIANGLES)
    reachable = two_label_closure(4)
    p4 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert not any(has_induced_p4(graph_from_edges(4, sorted(e))) for e in reachable)
    assert has_induced_p4(p4)
    # every other 4-node graph is reachable: 11 classes minus the 4-path
    assert len({unlabeled_canon(4, e) for e in reachable}) == 10


def unlabeled_canon(n, edges):
    return min(tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges)) for p in permutations(range(n)))


def test_k4_width_two():
    g = graph_from_edges(4, list(combinations(range(4), 2)))
    expr, corr = build_k_expression(g, ClusterSet.build(g, [range(4)]))
    assert round_trip_ok(g, expr, corr) and width(expr) == 2


def test_free_nodes_only():
    g = graph_from_edges(3, [(0, 1), (1, 2)])
    expr, corr = build_k_expression(g, ClusterSet.empty(g))
    assert round_trip_ok(g, expr, corr)
    assert width(expr) <= 3 + 2


def test_planted_two_clusters():
    inst = gen_planted(2, 7, 2, 0, seed=3)
    expr, corr = build_k_expression(inst.graph, inst.truth)
    assert round_trip_ok(inst.graph, expr, corr)
    assert width(expr) <= 2 * 2 + 0 + 2


@pytest.mark.parametrize("seed", range(20))
def test_round_trip_on_detected_clusters(seed):
    rng = random.Random(seed)
    inst = gen_planted(rng.randint(1, 4), rng.randint(5, 9), 2, 0, seed, rng.choice(["ring", "random-tree"]))
    cs = detect_clusters(inst.graph, ClusterParams(2, 0), "greedy", seed)
    expr, corr = build_k_expression(inst.graph, cs)
    assert round_trip_ok(inst.graph, expr, corr)
    assert width(expr) <= 2 * len(cs.clusters) + len(cs.free_nodes) + 2
    lg = eval_k_expression(expr)
    assert all(u != v for u, v in lg.graph.edges)


def test_mu_nonzero_rejected():
    inst = gen_planted(2, 7, 1, 1, seed=0, topology="random-tree")
    with pytest.raises(MuNonZeroError):
        build_k_expression(inst.graph, inst.truth)


def test_coverage_gap_rejected():
    cs = ClusterSet((ClusterSet.build(TWO_TRIANGLES, [[0, 1, 2]]).clusters), frozenset())
    with pytest.raises(CoverageGapError):
        build_k_expression(TWO_TRIANGLES, cs)


def test_serialization_round_trip():
    inst = gen_planted(3, 6, 2, 0, seed=5)
    expr, _ = build_k_expression(inst.graph, inst.truth)
    assert from_dict(to_dict(expr)) == expr
