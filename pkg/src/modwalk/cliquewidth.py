"""k-expressions: build one for a clustered graph with complete clusters, and
evaluate expressions back into labeled graphs."""

from __future__ import annotations

from dataclasses import dataclass

from .clusterdetect import ClusterSet, cluster_stats
from .errors import CoverageGapError, InvalidInputError, JoinSameLabelError, MuNonZeroError
from .graphcore import Graph, graph_from_edges


@dataclass(frozen=True)
class Seed:
    label: int
    tag: int | None = None  # original node id, carried through evaluation


@dataclass(frozen=True)
class DisjointUnion:
    left: KExpression
    right: KExpression


@dataclass(frozen=True)
class Join:
    i: int
    j: int
    child: KExpression


@dataclass(frozen=True)
class Relabel:
    src: int
    dst: int
    child: KExpression


KExpression = Seed | DisjointUnion | Join | Relabel


def labels_used(e: KExpression) -> set[int]:
    out: set[int] = set()
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Seed):
            out.add(x.label)
        elif isinstance(x, DisjointUnion):
            stack += [x.left, x.right]
        elif isinstance(x, Join):
            out |= {x.i, x.j}
            stack.append(x.child)
        else:
            out |= {x.src, x.dst}
            stack.append(x.child)
    return out


def width(e: KExpression) -> int:
    return len(labels_used(e))


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: tuple[int, ...]
    tags: tuple[int | None, ...]


def eval_k_expression(e: KExpression) -> LabeledGraph:
    """Evaluate bottom-up. Nodes are numbered in left-to-right seed order."""
    labels: list[int] = []
    tags: list[int | None] = []
    edges: set[tuple[int, int]] = set()

    def go(x: KExpression) -> list[int]:
        # returns the node ids created by this subexpression
        if isinstance(x, Seed):
            if x.label < 1:
                raise InvalidInputError(f"labels must be positive, got {x.label}")
            labels.append(x.label)
            tags.append(x.tag)
            return [len(labels) - 1]
        if isinstance(x, DisjointUnion):
            return go(x.left) + go(x.right)
        if isinstance(x, Join):
            if x.i == x.j:
                raise JoinSameLabelError(f"join of label {x.i} with itself")
            nodes = go(x.child)
            a = [u for u in nodes if labels[u] == x.i]
            b = [u for u in nodes if labels[u] == x.j]
            edges.update((min(u, v), max(u, v)) for u in a for v in b)
            return nodes
        nodes = go(x.child)
        for u in nodes:
            if labels[u] == x.src:
                labels[u] = x.dst
        return nodes

    go(e)
    g = graph_from_edges(len(labels), sorted(edges))
    return LabeledGraph(g, tuple(labels), tuple(tags))


def _union_all(parts: list[KExpression]) -> KExpression:
    # balanced, keeps nesting logarithmic in the number of parts
    while len(parts) > 1:
        parts = [DisjointUnion(parts[i], parts[i + 1]) if i + 1 < len(parts) else parts[i] for i in range(0, len(parts), 2)]
    return parts[0]


def build_k_expression(g: Graph, cs: ClusterSet) -> tuple[KExpression, dict[int, int]]:
    """k-expression for ``g`` whose clusters are all cliques.

    Every free node and every shell node gets a private label; all other
    cluster nodes share one working label, which also serves as the resting
    label once a cluster is finished. Inside a cluster, non-shell nodes are
    added first under a temporary label borrowed from a private label not yet
    present in that subexpression. External edges are joined over private
    labels at the end. Width is at most ``delta * n_c + n' + 2``.

    Returns the expression and the map from original node id to evaluation
    node id.
    """
    if g.n == 0:
        raise InvalidInputError("empty graph has no k-expression")
    covered = set(cs.free_nodes)
    for c in cs.clusters:
        if cluster_stats(g, c.members)[1] != 0:
            raise MuNonZeroError("cluster with missing internal links")
        covered |= c.members
    if covered != set(range(g.n)):
        raise CoverageGapError("clusters and free nodes do not cover the graph")

    work = 1
    private: dict[int, int] = {}
    in_cluster: dict[int, int] = {}
    shells = []
    for ci, c in enumerate(cs.clusters):
        shell = sorted(u for u in c.members if not g.adjacency[u] <= c.members)
        shells.append(shell)
        for u in c.members:
            in_cluster[u] = ci
    for u in sorted(set(cs.free_nodes) | {u for s in shells for u in s}):
        private[u] = len(private) + 2
    spare = max(private.values(), default=1) + 1

    parts: list[KExpression] = []
    for ci, c in enumerate(cs.clusters):
        shell = shells[ci]
        inner = sorted(c.members - set(shell))
        if shell:
            temp = private[shell[0]]
        else:
            temp = next((lab for u, lab in sorted(private.items()) if in_cluster.get(u) != ci), spare)
        expr: KExpression | None = None
        for u in inner:
            if expr is None:
                expr = Seed(work, u)
            else:
                expr = Relabel(temp, work, Join(temp, work, DisjointUnion(expr, Seed(temp, u))))
        for k, u in enumerate(shell):
            lab = private[u]
            expr = Seed(lab, u) if expr is None else DisjointUnion(expr, Seed(lab, u))
            if inner:
                expr = Join(lab, work, expr)
            for prev in shell[:k]:
                expr = Join(lab, private[prev], expr)
        parts.append(expr)
    parts.extend(Seed(private[u], u) for u in sorted(cs.free_nodes))
    expr = _union_all(parts)
    for u, v in g.edge_list():
        cu, cv = in_cluster.get(u), in_cluster.get(v)
        if cu is None or cu != cv:
            expr = Join(private[u], private[v], expr)

    order = eval_order(expr)
    return expr, {u: i for i, u in enumerate(order)}


def eval_order(e: KExpression) -> list[int | None]:
    """Seed tags in evaluation order."""
    out = []
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Seed):
            out.append(x.tag)
        elif isinstance(x, DisjointUnion):
            stack += [x.right, x.left]
        else:
            stack.append(x.child)
    return out


def to_dict(e: KExpression) -> dict:
    if isinstance(e, Seed):
        d = {"op": "seed", "label": e.label}
        if e.tag is not None:
            d["node"] = e.tag
        return d
    if isinstance(e, DisjointUnion):
        return {"op": "union", "children": [to_dict(e.left), to_dict(e.right)]}
    if isinstance(e, Join):
        return {"op": "join", "labels": [e.i, e.j], "children": [to_dict(e.child)]}
    return {"op": "relabel", "labels": [e.src, e.dst], "children": [to_dict(e.child)]}


def from_dict(d: dict) -> KExpression:
    op = d.get("op")
    if op == "seed":
        return Seed(int(d["label"]), d.get("node"))
    kids = [from_dict(c) for c in d.get("children", [])]
    if op == "union" and len(kids) == 2:
        return DisjointUnion(kids[0], kids[1])
    if op in ("join", "relabel") and len(kids) == 1:
        i, j = (int(x) for x in d["labels"])
        return Join(i, j, kids[0]) if op == "join" else Relabel(i, j, kids[0])
    raise InvalidInputError(f"malformed k-expression node {op!r}")


def round_trip_ok(g: Graph, e: KExpression, correspondence: dict[int, int]) -> bool:
    lg = eval_k_expression(e)
    if lg.graph.n != g.n or sorted(correspondence) != list(range(g.n)):
        return False
    mapped = {tuple(sorted((correspondence[u], correspondence[v]))) for u, v in g.edges}
    return mapped == set(lg.graph.edges)
