"""(delta, mu)-cluster validation, exact enumeration and detection.

A cluster is a node set with at most ``delta`` edges leaving it and at most
``mu`` non-adjacent member pairs. Only clusters that can be coarsened, i.e.
``|C| > 2|S|`` with ``S`` the shell, are ever returned by
:func:`detect_clusters`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Collection, Iterable, Literal

from .errors import EmptyClusterError, InstanceTooLargeError, InvalidInputError, NodeOutOfRangeError
from .graphcore import Graph

EXACT_NODE_LIMIT = 32


@dataclass(frozen=True)
class ClusterParams:
    delta: int
    mu: int

    def __post_init__(self) -> None:
        if self.delta < 0 or self.mu < 0:
            raise InvalidInputError(f"delta and mu must be non-negative, got {self.delta}, {self.mu}")


@dataclass(frozen=True)
class Cluster:
    members: frozenset[int]
    external_degree: int
    missing_links: int

    @classmethod
    def of(cls, g: Graph, members: Iterable[int]) -> Cluster:
        members = frozenset(members)
        ext, miss = cluster_stats(g, members)
        return cls(members, ext, miss)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


@dataclass(frozen=True)
class ClusterSet:
    clusters: tuple[Cluster, ...]
    free_nodes: frozenset[int]

    @classmethod
    def build(cls, g: Graph, member_sets: Iterable[Iterable[int]]) -> ClusterSet:
        """Clusters in ascending min-member order; every other node is free."""
        clusters = sorted((Cluster.of(g, ms) for ms in member_sets), key=lambda c: min(c.members))
        covered: set[int] = set()
        for c in clusters:
            if covered & c.members:
                raise InvalidInputError("clusters overlap")
            covered |= c.members
        return cls(tuple(clusters), frozenset(range(g.n)) - covered)

    @classmethod
    def empty(cls, g: Graph) -> ClusterSet:
        return cls((), frozenset(range(g.n)))

    def member_lists(self) -> list[list[int]]:
        return [c.sorted_members() for c in self.clusters]

    def to_dict(self) -> dict:
        return {"clusters": self.member_lists(), "free": sorted(self.free_nodes)}

    @classmethod
    def from_dict(cls, g: Graph, data: dict) -> ClusterSet:
        cs = cls.build(g, data["clusters"])
        if "free" in data and sorted(data["free"]) != sorted(cs.free_nodes):
            raise InvalidInputError("free node list does not complement the clusters")
        return cs


def _check_members(g: Graph, members: Collection[int]) -> None:
    if not members:
        raise EmptyClusterError("cluster has no members")
    for u in members:
        if not 0 <= u < g.n:
            raise NodeOutOfRangeError(u, g.n)


def cluster_stats(g: Graph, members: Collection[int]) -> tuple[int, int]:
    """Return ``(external_degree, missing_links)`` for ``members``."""
    _check_members(g, members)
    ms = set(members)
    ext = 0
    internal_twice = 0
    for u in ms:
        inside = len(g.adjacency[u] & ms)
        internal_twice += inside
        ext += g.degree(u) - inside
    k = len(ms)
    return ext, k * (k - 1) // 2 - internal_twice // 2


def is_valid_cluster(g: Graph, members: Collection[int], p: ClusterParams) -> bool:
    ext, miss = cluster_stats(g, members)
    return ext <= p.delta and miss <= p.mu


def shell_of(g: Graph, members: Collection[int]) -> frozenset[int]:
    """Members with an edge leaving the set or a non-neighbor inside it."""
    ms = frozenset(members)
    k = len(ms)
    return frozenset(u for u in ms if not g.adjacency[u] <= ms or len(g.adjacency[u] & ms) < k - 1)


def is_coarsenable(g: Graph, members: Collection[int]) -> bool:
    return len(members) > 2 * len(shell_of(g, members))


def good_bulk_size(g: Graph, members: Collection[int]) -> int:
    return len(members) - 2 * len(shell_of(g, members))


def _connected_subsets(g: Graph, max_size: int, max_missing: int):
    """Yield every connected node set of size <= max_size with <= max_missing
    absent internal pairs, each exactly once (ESU enumeration).

    Missing-pair count never decreases under extension, so over-budget
    branches are cut whole.
    """
    adj = g.adjacency

    def extend(sub: list[int], subset: frozenset[int], ext: set[int], excl_nbrs: frozenset[int], root: int, missing: int):
        yield subset
        if len(sub) == max_size:
            return
        ext = set(ext)
        while ext:
            w = min(ext)
            ext.discard(w)
            new_missing = missing + len(sub) - len(adj[w] & subset)
            if new_missing > max_missing:
                continue
            new_ext = ext | {u for u in adj[w] if u > root and u not in subset and u not in excl_nbrs}
            yield from extend(
                sub + [w], subset | {w}, new_ext, excl_nbrs | adj[w] | subset, root, new_missing
            )

    for v in range(g.n):
        start = frozenset([v])
        yield from extend([v], start, {u for u in adj[v] if u > v}, adj[v] | start, v, 0)


def enumerate_valid_clusters(
    g: Graph,
    p: ClusterParams,
    min_size: int,
    max_size: int,
    limit: int = EXACT_NODE_LIMIT,
) -> list[frozenset[int]]:
    """All connected valid clusters with ``min_size <= |C| <= max_size``.

    Sorted by their ascending member tuples.
    """
    if g.n > limit:
        raise InstanceTooLargeError(g.n, limit, "exact cluster enumeration graph")
    if not 1 <= min_size <= max_size <= g.n:
        raise InvalidInputError(f"bad size bounds [{min_size}, {max_size}] for n={g.n}")
    found = [
        s
        for s in _connected_subsets(g, max_size, p.mu)
        if len(s) >= min_size and cluster_stats(g, s)[0] <= p.delta
    ]
    return sorted(found, key=lambda s: sorted(s))


def _max_bulk_packing(n: int, candidates: list[tuple[frozenset[int], int]]) -> list[frozenset[int]]:
    """Disjoint sub-family of candidates maximizing total weight.

    Nodes are decided in ascending order: the lowest undecided node is either
    left free or covered by a candidate whose minimum it is. The first packing
    found with the best weight wins, so results are deterministic.
    """
    by_min: dict[int, list[tuple[frozenset[int], int]]] = {}
    for c, w in candidates:
        by_min.setdefault(min(c), []).append((c, w))
    for lst in by_min.values():
        lst.sort(key=lambda cw: (-cw[1], sorted(cw[0])))
    best_ratio = max((w / len(c) for c, w in candidates), default=0.0)

    best: list = [0, []]

    def search(v: int, covered: frozenset[int], weight: int, chosen: list[frozenset[int]]) -> None:
        while v < n and v in covered:
            v += 1
        if v >= n:
            if weight > best[0]:
                best[0] = weight
                best[1] = list(chosen)
            return
        if weight + best_ratio * (n - v) <= best[0]:
            return
        for c, w in by_min.get(v, ()):
            if not c & covered:
                chosen.append(c)
                search(v + 1, covered | c, weight + w, chosen)
                chosen.pop()
        search(v + 1, covered, weight, chosen)

    search(0, frozenset(), 0, [])
    return best[1]


def _detect_exact(g: Graph, p: ClusterParams) -> list[frozenset[int]]:
    if g.n == 0:
        return []
    cands = []
    for s in enumerate_valid_clusters(g, p, 1, g.n):
        w = good_bulk_size(g, s)
        if w > 0:
            cands.append((s, w))
    return _max_bulk_packing(g.n, cands)


def _detect_greedy(g: Graph, p: ClusterParams, seed: int) -> list[frozenset[int]]:
    rng = random.Random(seed)
    rank = list(range(g.n))
    rng.shuffle(rank)
    seeds = sorted(range(g.n), key=lambda u: (-g.degree(u), rank[u]))
    used: set[int] = set()
    found = []
    for s in seeds:
        if s in used:
            continue
        members = {s}
        ext, miss = g.degree(s), 0
        frontier = set(g.adjacency[s]) - used
        best, best_bulk = None, 0
        while True:
            if ext <= p.delta and miss <= p.mu:
                bulk = good_bulk_size(g, members)
                if bulk > best_bulk:
                    best, best_bulk = frozenset(members), bulk
            if not frontier:
                break

            def score(w: int) -> tuple[int, int, int]:
                inside = len(g.adjacency[w] & members)
                return (miss + len(members) - inside, ext - inside + (g.degree(w) - inside), rank[w])

            w = min(frontier, key=score)
            w_miss, w_ext, _ = score(w)
            if w_miss > p.mu:
                break
            members.add(w)
            ext, miss = w_ext, w_miss
            frontier |= g.adjacency[w]
            frontier -= members
            frontier -= used
        if best is not None:
            found.append(best)
            used |= best
    return found


def detect_clusters(
    g: Graph,
    p: ClusterParams,
    mode: Literal["exact", "greedy"] = "exact",
    seed: int = 0,
) -> ClusterSet:
    """Pick disjoint valid coarsenable clusters.

    ``exact`` maximizes the total good-bulk size ``sum |C| - 2|S|`` over all
    packings of enumerated candidates and is limited to small graphs.
    ``greedy`` grows clusters from high-degree seeds; ``seed`` only breaks
    degree and score ties.
    """
    if mode == "exact":
        sets = _detect_exact(g, p)
    elif mode == "greedy":
        sets = _detect_greedy(g, p, seed)
    else:
        raise InvalidInputError(f"unknown detection mode {mode!r}")
    return ClusterSet.build(g, sets)

