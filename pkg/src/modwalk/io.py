"""Graph, walk and cluster-set files.

Graph files are JSON ``{"n", "names"?, "edges"}`` or a plain edge list with
an ``n <count>`` header line. Everything is written canonically (sorted
edges, sorted keys) so equal inputs give byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

from .clusterdetect import ClusterSet
from .errors import InvalidInputError
from .graphcore import Graph, Walk, graph_from_edges, validate_closed_walk


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def graph_to_dict(g: Graph) -> dict:
    d = {"n": g.n, "edges": [list(e) for e in g.edge_list()]}
    if g.names is not None:
        d["names"] = {str(i): s for i, s in enumerate(g.names)}
    return d


def graph_from_dict(d: dict) -> Graph:
    if not isinstance(d, dict) or "n" not in d or "edges" not in d:
        raise InvalidInputError("graph JSON needs 'n' and 'edges'")
    if "weights" in d:
        raise InvalidInputError("weighted graphs are not supported")
    n = int(d["n"])
    names = None
    if d.get("names") is not None:
        raw = d["names"]
        try:
            names = [str(raw[str(i)]) for i in range(n)]
        except KeyError as exc:
            raise InvalidInputError(f"missing name for node {exc}") from None
    return graph_from_edges(n, d["edges"], names)


def graph_to_text(g: Graph) -> str:
    return f"n {g.n}\n" + "".join(f"{u} {v}\n" for u, v in g.edge_list())


def graph_from_text(text: str) -> Graph:
    n = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise InvalidInputError(f"line {lineno}: expected header 'n <count>'")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise InvalidInputError(f"line {lineno}: expected 'u v' (weighted edges unsupported)")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InvalidInputError(f"line {lineno}: non-integer node id") from None
    if n is None:
        raise InvalidInputError("missing 'n <count>' header")
    return graph_from_edges(n, edges)


def read_graph(path: str | Path) -> Graph:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            return graph_from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{path}: {exc}") from None
    return graph_from_text(text)


def write_graph(g: Graph, path: str | Path) -> None:
    path = Path(path)
    path.write_text(dumps(graph_to_dict(g)) if path.suffix == ".json" else graph_to_text(g))


def walk_to_dict(g: Graph, w: Walk) -> dict:
    return {"length": w.length, "nodes": list(w.nodes), "valid": validate_closed_walk(g, w).as_dict()}


def walk_from_dict(d: dict) -> Walk:
    if not isinstance(d, dict) or "nodes" not in d:
        raise InvalidInputError("walk JSON needs 'nodes'")
    w = Walk(d["nodes"])
    if "length" in d and int(d["length"]) != w.length:
        raise InvalidInputError(f"declared length {d['length']} != {w.length}")
    return w


def read_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: {exc}") from None


def read_walk(path: str | Path) -> Walk:
    return walk_from_dict(read_json(path))


def read_clusters(g: Graph, path: str | Path) -> ClusterSet:
    return ClusterSet.from_dict(g, read_json(path))
