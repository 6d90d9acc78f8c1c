"""Simple undirected graphs over dense integer ids, BFS distances, and closed walks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DuplicateEdgeError,
    EmptyWalkError,
    InvalidInputError,
    NodeOutOfRangeError,
    SelfLoopError,
)

#: Distance-matrix entry for node pairs in different components.
UNREACHABLE = int(np.iinfo(np.int32).max)


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on nodes ``0..n-1``.

    Build instances with :func:`graph_from_edges`; the constructor trusts its
    arguments.
    """

    n: int
    adjacency: tuple[frozenset[int], ...]
    names: tuple[str, ...] | None = None
    edges: frozenset[tuple[int, int]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        es = frozenset(_canon(u, v) for u in range(self.n) for v in self.adjacency[u])
        object.__setattr__(self, "edges", es)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, u: int) -> frozenset[int]:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return sorted(self.edges)

    def name(self, u: int) -> str:
        return self.names[u] if self.names is not None else str(u)

    def node_id(self, name: str) -> int:
        if self.names is None:
            return int(name)
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidInputError(f"unknown node name {name!r}") from None

    def ids(self, names: Iterable[str]) -> list[int]:
        return [self.node_id(s) for s in names]

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self.adjacency[u]:
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        queue.append(v)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


def graph_from_edges(
    n: int,
    edge_list: Iterable[Sequence[int]],
    names: Sequence[str] | None = None,
) -> Graph:
    """Build a :class:`Graph`, rejecting self-loops, duplicates and bad ids."""
    if n < 0:
        raise InvalidInputError(f"negative node count {n}")
    if names is not None and len(names) != n:
        raise InvalidInputError(f"{len(names)} names given for {n} nodes")
    adj: list[set[int]] = [set() for _ in range(n)]
    for pair in edge_list:
        if len(pair) != 2:
            raise InvalidInputError(f"edge {tuple(pair)!r} is not a node pair (weighted edges unsupported)")
        u, v = int(pair[0]), int(pair[1])
        for x in (u, v):
            if not 0 <= x < n:
                raise NodeOutOfRangeError(x, n)
        if u == v:
            raise SelfLoopError(u)
        if v in adj[u]:
            raise DuplicateEdgeError(u, v)
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(frozenset(s) for s in adj), tuple(names) if names is not None else None)


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def metric_closure(g: Graph) -> np.ndarray:
    """All-pairs hop distances as a read-only ``int32`` matrix.

    Unreachable pairs hold :data:`UNREACHABLE`.
    """
    mat = np.array([bfs_distances(g, s) for s in range(g.n)], dtype=np.int32).reshape(g.n, g.n)
    mat.flags.writeable = False
    return mat


def shortest_path(g: Graph, dist: np.ndarray, u: int, v: int) -> list[int]:
    """Lexicographically smallest shortest ``u``-``v`` path, endpoints included."""
    if dist[u, v] == UNREACHABLE:
        raise InvalidInputError(f"no path between {u} and {v}")
    path = [u]
    cur = u
    while cur != v:
        remaining = dist[cur, v]
        cur = min(w for w in g.adjacency[cur] if dist[w, v] == remaining - 1)
        path.append(cur)
    return path


@dataclass(frozen=True)
class Walk:
    """Closed walk stored with the start node repeated at the end.

    A single-node walk ``(v,)`` is the closed walk of length zero.
    """

    nodes: tuple[int, ...]

    def __init__(self, nodes: Iterable[int]) -> None:
        object.__setattr__(self, "nodes", tuple(int(x) for x in nodes))
        if not self.nodes:
            raise EmptyWalkError("walk has no nodes")

    @property
    def length(self) -> int:
        return len(self.nodes) - 1

    def cyclic(self) -> list[int]:
        """Node sequence without the closing repeat."""
        return list(self.nodes[:-1]) if len(self.nodes) > 1 else list(self.nodes)

    @classmethod
    def from_cyclic(cls, seq: Sequence[int]) -> Walk:
        seq = list(seq)
        return cls(seq + [seq[0]] if len(seq) > 1 else seq)

    def visit_count(self, v: int) -> int:
        return self.cyclic().count(v)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)


@dataclass(frozen=True)
class WalkReport:
    is_closed: bool
    all_steps_are_edges: bool
    covers_all_nodes: bool
    length: int

    @property
    def is_hamiltonian_walk_candidate(self) -> bool:
        return self.is_closed and self.all_steps_are_edges and self.covers_all_nodes

    def as_dict(self) -> dict[str, bool | int]:
        return {
            "is_closed": self.is_closed,
            "all_steps_are_edges": self.all_steps_are_edges,
            "covers_all_nodes": self.covers_all_nodes,
            "is_hamiltonian_walk_candidate": self.is_hamiltonian_walk_candidate,
        }


def validate_closed_walk(g: Graph, w: Walk | Sequence[int]) -> WalkReport:
    nodes = tuple(w.nodes if isinstance(w, Walk) else w)
    if not nodes:
        raise EmptyWalkError("walk has no nodes")
    in_range = all(0 <= x < g.n for x in nodes)
    steps_ok = in_range and all(g.has_edge(a, b) for a, b in zip(nodes, nodes[1:]))
    covers = in_range and len(set(nodes)) == g.n
    return WalkReport(
        is_closed=nodes[0] == nodes[-1],
        all_steps_are_edges=steps_ok,
        covers_all_nodes=covers,
        length=len(nodes) - 1,
    )
