"""Exact shortest covering closed walks, plus the coarsen-solve-expand pipeline.

A shortest closed walk that visits every node is a minimum travelling
salesman tour on the hop-distance matrix; :func:`solve_exact` runs Held-Karp
on that matrix and splices shortest paths back in. :func:`oracle_walk_length`
answers the same question by breadth-first search over (node, visited-set)
states of the raw graph and shares no code with it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Collection, Literal

import numpy as np

from .clusterdetect import ClusterParams, ClusterSet, detect_clusters
from .coarsening import CoarsePlan, coarsen, naive_coarsen
from .errors import (
    BulkVisitedNotOnceError,
    ClusterNodeAbsentFromWalkError,
    DisconnectedError,
    FlankNotInClusterError,
    InstanceTooLargeError,
    InvariantViolationError,
    InvalidInputError,
    NotACoarseWalkError,
)
from .graphcore import Graph, Walk, metric_closure, shortest_path, validate_closed_walk

EXACT_NODE_LIMIT = 22
ORACLE_NODE_LIMIT = 16

_HK_INF = 16000  # fits int16 with room for additions of hop distances


@dataclass(frozen=True)
class Solution:
    walk: Walk
    length: int
    coarse_nodes: int
    timings: dict[str, float] = field(default_factory=dict)
    stage_log: dict[str, int] = field(default_factory=dict)


def _require_connected(g: Graph) -> None:
    if g.n == 0 or not g.is_connected():
        raise DisconnectedError("graph is empty or disconnected")


def _masks_by_popcount(k: int) -> list[np.ndarray]:
    masks = np.arange(1 << k, dtype=np.int64)
    pc = np.bitwise_count(masks)
    return [masks[pc == size] for size in range(k + 1)]


def held_karp(dist: np.ndarray) -> tuple[int, list[int]]:
    """Minimum tour cost and tour order (starting at node 0) for a complete
    integer distance matrix.

    ``dp[mask, j]`` is the cheapest path from node 0 through exactly the
    nodes in ``mask`` (bit ``j`` stands for node ``j + 1``) ending at
    ``j + 1``. Layers are filled by mask popcount, vectorized over masks.
    Reconstruction prefers the smallest predecessor on ties.
    """
    n = dist.shape[0]
    if n == 1:
        return 0, [0]
    k = n - 1
    d = dist.astype(np.int32)
    inner = d[1:, 1:]
    dp = np.full((1 << k, k), _HK_INF, dtype=np.int16)
    for j in range(k):
        dp[1 << j, j] = d[0, j + 1]
    layers = _masks_by_popcount(k)
    for size in range(1, k):
        layer = layers[size]
        for t in range(k):
            src = layer[((layer >> t) & 1) == 0]
            cand = (dp[src].astype(np.int32) + inner[:, t]).min(axis=1)
            tgt = src | (1 << t)
            dp[tgt, t] = np.minimum(dp[tgt, t], cand).astype(np.int16)
    full = (1 << k) - 1
    closing = dp[full].astype(np.int32) + d[1:, 0]
    j = int(np.argmin(closing))
    cost = int(closing[j])
    order = []
    mask = full
    while True:
        order.append(j + 1)
        prev = mask ^ (1 << j)
        if prev == 0:
            break
        target = int(dp[mask, j])
        j = next(i for i in range(k) if prev >> i & 1 and int(dp[prev, i]) + int(inner[i, j]) == target)
        mask = prev
    return cost, [0] + order[::-1]


def solve_exact(g: Graph, node_limit: int = EXACT_NODE_LIMIT) -> Solution:
    """Optimal covering closed walk via Held-Karp on the hop-distance matrix."""
    _require_connected(g)
    if g.n > node_limit:
        raise InstanceTooLargeError(g.n, node_limit, "graph for Held-Karp")
    t0 = time.perf_counter()
    dist = metric_closure(g)
    cost, tour = held_karp(dist)
    seq = [tour[0]]
    for a, b in zip(tour, tour[1:] + [tour[0]]):
        if a != b:
            seq.extend(shortest_path(g, dist, a, b)[1:])
    walk = Walk(seq)
    if walk.length != cost:
        raise InvariantViolationError(f"spliced walk length {walk.length} != tour cost {cost}")
    return Solution(walk, cost, g.n, {"exact_s": time.perf_counter() - t0}, {"tour_cost": cost})


def oracle_walk_length(g: Graph, node_limit: int = ORACLE_NODE_LIMIT) -> int:
    """Exact covering-walk length by level-synchronous search over
    (current node, visited set) states, starting and ending at node 0."""
    _require_connected(g)
    n = g.n
    if n > node_limit:
        raise InstanceTooLargeError(n, node_limit, "graph for the oracle")
    full = (1 << n) - 1
    masks = np.arange(1 << n, dtype=np.int64)
    nbrs = [sorted(g.adjacency[u]) for u in range(n)]
    with_bit = [masks[(masks >> u) & 1 == 1] for u in range(n)]
    seen = np.zeros((1 << n, n), dtype=bool)
    frontier = np.zeros_like(seen)
    frontier[1, 0] = True
    seen[1, 0] = True
    steps = 0
    while not seen[full, 0]:
        nxt = np.zeros_like(seen)
        for u in range(n):
            if not nbrs[u]:
                continue
            arrive = frontier[:, nbrs[u]].any(axis=1)
            tm = with_bit[u]
            # stepping onto u from mask m lands in m | bit(u)
            nxt[tm, u] = arrive[tm] | arrive[tm ^ (1 << u)]
        frontier = nxt & ~seen
        if not frontier.any():
            raise InvariantViolationError("search exhausted without covering the graph")
        seen |= frontier
        steps += 1
    return steps


def _is_walk_of(g: Graph, w: Walk) -> bool:
    return validate_closed_walk(g, w).is_hamiltonian_walk_candidate


def normalize_bulk_visits(plan: CoarsePlan, w: Walk) -> Walk:
    """Rewrite a covering coarse walk so that each bulk node appears once.

    The first occurrence of each bulk node is kept; later ones are removed
    with the shell/second-shell substitutions, none of which lengthen the
    walk. The result starts at the earliest surviving position of ``w``.
    """
    cg = plan.coarse_graph
    if not _is_walk_of(cg, w):
        raise NotACoarseWalkError("input is not a covering closed walk of the coarse graph")
    items = list(enumerate(w.cyclic()))  # (original position, node)
    for rec in plan.records:
        b = rec.bulk_node
        shell = {plan.node_map[s] for s in rec.shell}
        second = sorted(plan.node_map[t] for t in rec.second_shell)
        second_set = set(second)
        while sum(1 for _, v in items if v == b) > 1:
            first = next(i for i, (_, v) in enumerate(items) if v == b)
            items = items[first:] + items[:first]
            i = next(i for i in range(1, len(items)) if items[i][1] == b)
            x, y = items[i - 1][1], items[i + 1][1]
            if x in shell and y in shell:
                if x == y:
                    del items[i : i + 2]
                else:
                    items[i] = (items[i][0], second[0])
            elif x in second_set and y in second_set and x == y:
                del items[i : i + 2]
            elif x in shell | second_set and y in shell | second_set:
                del items[i]
            else:
                raise NotACoarseWalkError(f"bulk node {b} flanked by non-cluster nodes {x}, {y}")
        start = min(range(len(items)), key=lambda i: items[i][0])
        items = items[start:] + items[:start]
    out = Walk.from_cyclic([v for _, v in items])
    if out.length > w.length or not _is_walk_of(cg, out):
        raise InvariantViolationError("normalization produced an invalid or longer walk")
    return out


def expand_walk(g: Graph, plan: CoarsePlan, w_coarse: Walk) -> Walk:
    """Map a normalized coarse walk back to the original graph.

    Every bulk node is replaced by its good-bulk members in ascending order;
    every survivor by its original id. If the coarse graph is a single bulk
    node the result is a Hamiltonian cycle of that clique instead.
    """
    bulk = plan.bulk_nodes
    cyc = w_coarse.cyclic()
    for b, rec in bulk.items():
        if cyc.count(b) != 1:
            raise BulkVisitedNotOnceError(f"bulk node {b} visited {cyc.count(b)} times")
    out: list[int] = []
    m = len(cyc)
    for i, v in enumerate(cyc):
        if v in bulk:
            rec = bulk[v]
            if m > 1:
                allowed = {plan.node_map[s] for s in rec.shell | rec.second_shell}
                if cyc[i - 1] not in allowed or cyc[(i + 1) % m] not in allowed:
                    raise FlankNotInClusterError(f"bulk node {v} entered or left outside its cluster")
            out.extend(rec.sorted_bulk())
        else:
            out.append(plan.inverse[v])
    return Walk.from_cyclic(out)


def _detect_and_coarsen(
    g: Graph,
    p: ClusterParams,
    mode: str,
    seed: int,
    random_second_shell: bool,
) -> tuple[ClusterSet, CoarsePlan]:
    cs = detect_clusters(g, p, mode, seed)
    rng = random.Random(seed) if random_second_shell else None
    return cs, coarsen(g, cs, rng)


def solve_pipeline(
    g: Graph,
    p: ClusterParams,
    mode: Literal["exact", "greedy"] = "exact",
    node_limit: int = EXACT_NODE_LIMIT,
    seed: int = 0,
    random_second_shell: bool = False,
    clusters: ClusterSet | None = None,
) -> Solution:
    """Detect clusters, coarsen, solve on the coarse graph, normalize, expand.

    Pass ``clusters`` to skip detection. ``stage_log`` records the coarse
    optimum, the normalized coarse length and the bulk excess.
    """
    _require_connected(g)
    timings = {}
    t0 = time.perf_counter()
    if clusters is None:
        cs, plan = _detect_and_coarsen(g, p, mode, seed, random_second_shell)
    else:
        cs = clusters
        plan = coarsen(g, cs, random.Random(seed) if random_second_shell else None)
    t1 = time.perf_counter()
    timings["coarsen_s"] = t1 - t0
    cg = plan.coarse_graph
    if cg.n > node_limit:
        raise InstanceTooLargeError(cg.n, node_limit, "coarse graph")
    coarse_sol = solve_exact(cg, node_limit)
    t2 = time.perf_counter()
    timings["solve_s"] = t2 - t1
    normalized = normalize_bulk_visits(plan, coarse_sol.walk)
    walk = expand_walk(g, plan, normalized)
    timings["expand_s"] = time.perf_counter() - t2
    timings["total_s"] = time.perf_counter() - t0
    if not _is_walk_of(g, walk):
        raise InvariantViolationError("expanded walk is not a covering closed walk")
    return Solution(
        walk,
        walk.length,
        cg.n,
        timings,
        {
            "coarse_length": coarse_sol.length,
            "normalized_length": normalized.length,
            "bulk_excess": plan.bulk_excess,
            "clusters": len(cs.clusters),
        },
    )


def _expansion_search(g: Graph, members: frozenset[int], cyc: list[int], x: int, inverse: dict[int, int]):
    """First assignment of cluster members to occurrences of ``x`` that turns
    the coarse cyclic walk into a walk of ``g``; None if there is none."""
    occ = [i for i, v in enumerate(cyc) if v == x]
    m = len(cyc)
    adj = g.adjacency
    pieces: list[list[int]] = []

    def paths(prev: int | None, nxt: int | None, unused: frozenset[int], need_all: bool, reserve: int):
        # simple runs through unused members; prev/nxt None means the walk is just (x)
        def done(path: list[int]) -> bool:
            if nxt is None:
                return len(path) < 3 or path[0] in adj[path[-1]]
            return path[-1] in adj[nxt]

        def grow(path: list[int], left: frozenset[int]):
            if done(path) and (not need_all or not left) and len(left) >= reserve:
                yield list(path), left
            if need_all or len(left) > reserve:
                for v in sorted(adj[path[-1]] & left):
                    path.append(v)
                    yield from grow(path, left - {v})
                    path.pop()

        for s in sorted(unused):
            if prev is None or s in adj[prev]:
                yield from grow([s], unused - {s})

    def search(k: int, unused: frozenset[int]) -> bool:
        if k == len(occ):
            return not unused
        i = occ[k]
        prev = None if m == 1 else inverse[cyc[i - 1]]
        nxt = None if m == 1 else inverse[cyc[(i + 1) % m]]
        for path, left in paths(prev, nxt, unused, k == len(occ) - 1, len(occ) - k - 1):
            pieces.append(path)
            if search(k + 1, left):
                return True
            pieces.pop()
        return False

    if not search(0, members):
        return None
    out = []
    it = iter(pieces)
    for v in cyc:
        out.extend(next(it) if v == x else [inverse[v]])
    return out


def expand_naive_walk(g: Graph, members: Collection[int], w_coarse: Walk) -> Walk | None:
    """Locally expand a walk of the naively coarsened graph, if possible.

    Each occurrence of the cluster-node is replaced by a nonempty run of
    distinct members so that every member is used exactly once and every step
    is an edge. Search order is lexicographic, so the result is deterministic.
    """
    nc = naive_coarsen(g, members)
    if not validate_closed_walk(nc.graph, w_coarse).all_steps_are_edges:
        raise NotACoarseWalkError("walk is not a walk of the naively coarsened graph")
    cyc = w_coarse.cyclic()
    if nc.cluster_node not in cyc:
        raise ClusterNodeAbsentFromWalkError("cluster-node does not occur in the walk")
    seq = _expansion_search(g, nc.members, cyc, nc.cluster_node, nc.inverse)
    if seq is None:
        return None
    out = Walk.from_cyclic(seq)
    if not validate_closed_walk(g, out).all_steps_are_edges:
        raise InvariantViolationError("local expansion produced a non-walk")
    return out


def check_local_expandability(g: Graph, members: Collection[int], w_coarse: Walk) -> bool:
    """True iff replacing only the cluster-node occurrences of ``w_coarse``
    yields a closed walk of ``g`` of length
    ``len(w_coarse) + |members| - occurrences``."""
    return expand_naive_walk(g, members, w_coarse) is not None


def solve_naive(g: Graph, p: ClusterParams, node_limit: int = EXACT_NODE_LIMIT, seed: int = 0) -> Solution | None:
    """Whole-cluster coarsening fast path for ``delta <= 2`` and ``mu = 0``.

    Returns None when the coarse optimum cannot be locally expanded for some
    cluster; callers should then use :func:`solve_pipeline`.
    """
    _require_connected(g)
    if p.mu != 0 or p.delta > 2:
        raise InvalidInputError("naive coarsening needs delta <= 2 and mu == 0")
    t0 = time.perf_counter()
    cs = detect_clusters(g, p, "exact" if g.n <= 32 else "greedy", seed)
    clusters = [c.sorted_members() for c in cs.clusters if len(c.members) < g.n]
    # coarsen one cluster at a time, tracking ids through each step
    stages = []
    cur = g
    origin = list(range(g.n))
    for members in clusters:
        local = [origin.index(u) for u in members]
        nc = naive_coarsen(cur, local)
        stages.append((cur, local, nc))
        origin = [origin[nc.inverse[i]] for i in range(nc.cluster_node)] + [-1]
        cur = nc.graph
    if cur.n > node_limit:
        raise InstanceTooLargeError(cur.n, node_limit, "naively coarsened graph")
    walk = solve_exact(cur, node_limit).walk
    coarse_len = walk.length
    for prev_graph, local, nc in reversed(stages):
        expanded = expand_naive_walk(prev_graph, local, walk)
        if expanded is None:
            return None
        walk = expanded
    return Solution(
        walk,
        walk.length,
        cur.n,
        {"total_s": time.perf_counter() - t0},
        {"coarse_length": coarse_len, "clusters": len(clusters)},
    )
