"""Test-only generators and brute-force references."""

from __future__ import annotations

import random
from itertools import combinations

from modwalk.coarsening import CoarsePlan
from modwalk.graphcore import Graph, Walk, graph_from_edges, metric_closure, shortest_path


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    """Random spanning tree plus each remaining pair with probability p."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u, v in combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    return graph_from_edges(n, sorted(edges))


def pair_scan_stats(g: Graph, members) -> tuple[int, int]:
    ms = set(members)
    ext = sum(1 for u, v in g.edges if (u in ms) != (v in ms))
    miss = sum(1 for u, v in combinations(sorted(ms), 2) if not g.has_edge(u, v))
    return ext, miss


def random_coarse_walk(plan: CoarsePlan, rng: random.Random, detours: int = 3) -> Walk:
    """Covering closed walk of the coarse graph that re-enters bulk nodes.

    A random walk until every node is seen, closed by a shortest path, then
    ``detours`` extra excursions ``x b y ... x`` into random bulk nodes.
    """
    cg = plan.coarse_graph
    if cg.n == 1:
        return Walk([0])
    dist = metric_closure(cg)
    start = rng.randrange(cg.n)
    seq = [start]
    seen = {start}
    while len(seen) < cg.n:
        nxt = rng.choice(sorted(cg.adjacency[seq[-1]]))
        seq.append(nxt)
        seen.add(nxt)
    seq += shortest_path(cg, dist, seq[-1], start)[1:]
    bulks = [r.bulk_node for r in plan.records]
    for _ in range(detours):
        b = rng.choice(bulks)
        spots = [i for i, v in enumerate(seq[:-1]) if b in cg.adjacency[v]]
        i = rng.choice(spots)
        x = seq[i]
        y = rng.choice(sorted(cg.adjacency[b]))
        back = shortest_path(cg, dist, y, x)
        seq[i + 1 : i + 1] = [b] + back
    return Walk(seq)


def floyd_warshall(g: Graph) -> list[list[float]]:
    inf = float("inf")
    d = [[0 if i == j else (1 if g.has_edge(i, j) else inf) for j in range(g.n)] for i in range(g.n)]
    for k in range(g.n):
        for i in range(g.n):
            for j in range(g.n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def clique_rich_graph(rng: random.Random, max_n: int = 16) -> Graph:
    """A few random cliques, some loose nodes, and sparse random links,
    forced connected. Node ids are shuffled so clusters are not contiguous."""
    sizes = []
    while True:
        s = rng.randint(3, 7)
        if sum(sizes) + s > max_n - 1:
            break
        sizes.append(s)
    n = min(max_n, sum(sizes) + rng.randint(0, 3))
    perm = list(range(n))
    rng.shuffle(perm)
    edges = set()
    start = 0
    groups = []
    for s in sizes:
        grp = perm[start : start + s]
        groups.append(grp)
        start += s
        for u, v in combinations(grp, 2):
            if rng.random() > 0.05:
                edges.add((min(u, v), max(u, v)))
    for _ in range(rng.randint(1, 4)):
        u, v = rng.sample(range(n), 2)
        edges.add((min(u, v), max(u, v)))
    g = graph_from_edges(n, sorted(edges))
    comps = g.components()
    for a, b in zip(comps, comps[1:]):
        u, v = rng.choice(a), rng.choice(b)
        edges.add((min(u, v), max(u, v)))
    return graph_from_edges(n, sorted(edges))
