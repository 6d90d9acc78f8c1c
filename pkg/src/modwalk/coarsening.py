"""Shell decomposition and coarsened-graph construction.

Each coarsenable cluster ``C`` is split into its shell ``S``, a second shell
``T`` of ``|S|`` interior nodes, and the good bulk ``GB = C - S - T``. The
coarse graph keeps every node outside the good bulks and replaces each
``GB`` with one bulk node adjacent to exactly ``S | T``.

Coarse node ids: surviving nodes first in ascending original id, then one
bulk node per cluster in ascending min-member order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Collection

from .clusterdetect import ClusterSet, shell_of
from .errors import ClusterIsWholeGraphError, EmptyClusterError, InvalidInputError, NotCoarsenableError
from .graphcore import Graph, graph_from_edges


@dataclass(frozen=True)
class ShellDecomposition:
    shell: frozenset[int]
    second_shell: frozenset[int]
    good_bulk: frozenset[int]

    @property
    def members(self) -> frozenset[int]:
        return self.shell | self.second_shell | self.good_bulk


def decompose_cluster(
    g: Graph,
    members: Collection[int],
    rng: random.Random | None = None,
) -> ShellDecomposition:
    """Split a coarsenable cluster into shell, second shell and good bulk.

    The second shell is the ``|S|`` lowest-numbered non-shell members, or a
    uniform sample of that size when ``rng`` is given.
    """
    ms = frozenset(members)
    if not ms:
        raise EmptyClusterError("cluster has no members")
    shell = shell_of(g, ms)
    if len(ms) <= 2 * len(shell):
        raise NotCoarsenableError(len(ms), len(shell))
    rest = sorted(ms - shell)
    if rng is None:
        second = frozenset(rest[: len(shell)])
    else:
        second = frozenset(rng.sample(rest, len(shell)))
    return ShellDecomposition(shell, second, ms - shell - second)


@dataclass(frozen=True)
class BulkRecord:
    cluster_id: int
    shell: frozenset[int]
    second_shell: frozenset[int]
    good_bulk: frozenset[int]
    bulk_node: int

    def sorted_bulk(self) -> list[int]:
        return sorted(self.good_bulk)


@dataclass(frozen=True)
class CoarsePlan:
    records: tuple[BulkRecord, ...]
    node_map: dict[int, int]  # original survivor -> coarse id
    inverse: dict[int, int]  # coarse survivor id -> original id
    coarse_graph: Graph

    @property
    def bulk_nodes(self) -> dict[int, BulkRecord]:
        return {r.bulk_node: r for r in self.records}

    @property
    def bulk_excess(self) -> int:
        """Sum of ``|GB_i| - 1``: what expansion adds to a coarse walk."""
        return sum(len(r.good_bulk) - 1 for r in self.records)

    def to_dict(self) -> dict:
        return {
            "coarse_n": self.coarse_graph.n,
            "survivors": [[orig, self.node_map[orig]] for orig in sorted(self.node_map)],
            "clusters": [
                {
                    "cluster_id": r.cluster_id,
                    "bulk_node": r.bulk_node,
                    "shell": sorted(r.shell),
                    "second_shell": sorted(r.second_shell),
                    "good_bulk": sorted(r.good_bulk),
                }
                for r in self.records
            ],
        }


def coarsen(g: Graph, cs: ClusterSet, rng: random.Random | None = None) -> CoarsePlan:
    decomps = [decompose_cluster(g, c.members, rng) for c in cs.clusters]
    removed: set[int] = set()
    for d in decomps:
        removed |= d.good_bulk
    survivors = [u for u in range(g.n) if u not in removed]
    node_map = {u: i for i, u in enumerate(survivors)}
    edges = [(node_map[u], node_map[v]) for u, v in g.edge_list() if u in node_map and v in node_map]
    records = []
    for i, d in enumerate(decomps):
        b = len(survivors) + i
        records.append(BulkRecord(i, d.shell, d.second_shell, d.good_bulk, b))
        edges.extend((node_map[x], b) for x in sorted(d.shell | d.second_shell))
    names = None
    if g.names is not None:
        names = [g.names[u] for u in survivors] + [f"b{i}" for i in range(len(decomps))]
    coarse = graph_from_edges(len(survivors) + len(decomps), edges, names)
    return CoarsePlan(tuple(records), node_map, {i: u for u, i in node_map.items()}, coarse)


def coarse_size_bound(delta: int, mu: int, n_clusters: int, n_free: int) -> int:
    return (2 * delta + 4 * mu + 1) * n_clusters + n_free


@dataclass(frozen=True)
class NaiveCoarsening:
    """Result of replacing one whole cluster by a single cluster-node."""

    graph: Graph
    members: frozenset[int]
    node_map: dict[int, int]
    inverse: dict[int, int]
    cluster_node: int


def naive_coarsen(g: Graph, members: Collection[int], cluster_name: str = "x") -> NaiveCoarsening:
    ms = frozenset(members)
    if not ms:
        raise EmptyClusterError("cluster has no members")
    if any(not 0 <= u < g.n for u in ms):
        raise InvalidInputError("cluster member out of range")
    if len(ms) == g.n:
        raise ClusterIsWholeGraphError("cannot replace the whole graph by one node")
    survivors = [u for u in range(g.n) if u not in ms]
    node_map = {u: i for i, u in enumerate(survivors)}
    x = len(survivors)
    edges = [(node_map[u], node_map[v]) for u, v in g.edge_list() if u in node_map and v in node_map]
    attach = sorted({v for u in ms for v in g.adjacency[u]} - ms)
    edges.extend((node_map[v], x) for v in attach)
    names = None
    if g.names is not None:
        names = [g.names[u] for u in survivors] + [cluster_name]
    coarse = graph_from_edges(x + 1, edges, names)
    return NaiveCoarsening(coarse, ms, node_map, {i: u for u, i in node_map.items()}, x)


def uncoarsen_edges(plan: CoarsePlan) -> set[tuple[int, int]]:
    """Edge set of the original graph rebuilt from a plan.

    Coarse survivor edges are mapped back; each bulk node becomes a clique
    fully attached to its cluster's ``S | T``.
    """
    out = set()
    bulk = plan.bulk_nodes
    for a, b in plan.coarse_graph.edges:
        if a in bulk or b in bulk:
            continue
        u, v = plan.inverse[a], plan.inverse[b]
        out.add((min(u, v), max(u, v)))
    for r in plan.records:
        gb = sorted(r.good_bulk)
        for i, u in enumerate(gb):
            for v in gb[i + 1 :]:
                out.add((u, v))
            for s in r.shell | r.second_shell:
                out.add((min(u, s), max(u, s)))
    return out

