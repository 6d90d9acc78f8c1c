"""Planted-cluster generators, small letter-named fixture graphs, and a
small benchmark harness comparing the pipeline with direct Held-Karp."""

from __future__ import annotations

import csv
import io
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Literal, Sequence

from .clusterdetect import ClusterParams, ClusterSet
from .errors import ModwalkError, ParamsInfeasibleError, UnknownFixtureError
from .graphcore import Graph, Walk, graph_from_edges
from .hamwalk import EXACT_NODE_LIMIT, solve_exact, solve_pipeline

Topology = Literal["ring", "random-tree"]


@dataclass(frozen=True)
class PlantedInstance:
    graph: Graph
    truth: ClusterSet
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.graph.n


def _cluster_links(n_c: int, delta: int, topology: str, rng: random.Random) -> list[tuple[int, int]]:
    if n_c == 1:
        return []
    if topology == "ring":
        if delta < 2:
            raise ParamsInfeasibleError(f"ring topology needs delta >= 2, got {delta}")
        return [(i, (i + 1) % n_c) for i in range(n_c)]
    if topology == "random-tree":
        if delta < 1:
            raise ParamsInfeasibleError("a connected cluster tree needs delta >= 1")
        degree = [0] * n_c
        links = []
        for i in range(1, n_c):
            open_ = [j for j in range(i) if degree[j] < delta]
            if not open_:
                raise ParamsInfeasibleError(f"cannot attach {n_c} clusters in a tree with delta={delta}")
            j = rng.choice(open_)
            degree[i] += 1
            degree[j] += 1
            links.append((j, i))
        return links
    raise ParamsInfeasibleError(f"unknown topology {topology!r}")


def gen_planted(
    n_c: int,
    m: int,
    delta: int,
    mu: int,
    seed: int = 0,
    topology: Topology = "ring",
) -> PlantedInstance:
    """``n_c`` cliques of size ``m`` wired together by ``topology``.

    Each cluster loses ``mu`` random internal edges and has at most ``delta``
    external edges, all on distinct endpoints. Cluster ``i`` owns ids
    ``i*m .. (i+1)*m - 1``.
    """
    if n_c < 1:
        raise ParamsInfeasibleError("need at least one cluster")
    if delta < 0 or mu < 0:
        raise ParamsInfeasibleError("delta and mu must be non-negative")
    if m <= 2 * (delta + 2 * mu):
        raise ParamsInfeasibleError(f"cluster size {m} must exceed 2(delta + 2mu) = {2 * (delta + 2 * mu)}")
    rng = random.Random(seed)
    links = _cluster_links(n_c, delta, topology, rng)
    incident = [[] for _ in range(n_c)]
    for k, (a, b) in enumerate(links):
        incident[a].append(k)
        incident[b].append(k)
    ends: dict[tuple[int, int], int] = {}
    for c in range(n_c):
        ports = rng.sample(range(c * m, (c + 1) * m), len(incident[c]))
        for k, port in zip(incident[c], ports):
            ends[(k, c)] = port
    edges = set()
    for c in range(n_c):
        base = c * m
        pairs = list(combinations(range(base, base + m), 2))
        dropped = set(rng.sample(pairs, mu))
        edges.update(p for p in pairs if p not in dropped)
    for k, (a, b) in enumerate(links):
        u, v = ends[(k, a)], ends[(k, b)]
        edges.add((min(u, v), max(u, v)))
    g = graph_from_edges(n_c * m, sorted(edges))
    truth = ClusterSet.build(g, [range(c * m, (c + 1) * m) for c in range(n_c)])
    params = {"n_c": n_c, "m": m, "delta": delta, "mu": mu, "seed": seed, "topology": topology}
    return PlantedInstance(g, truth, params)


def log_family_shape(n_target: int, c: float) -> tuple[int, int]:
    n_c = max(1, round(c * math.log2(n_target)))
    return n_c, round(n_target / n_c)


def gen_log_family(
    n_target: int,
    c: float,
    delta: int,
    mu: int,
    seed: int = 0,
    topology: Topology = "ring",
) -> PlantedInstance:
    """Planted instance whose cluster count grows like ``c * log2(n)``."""
    n_c, m = log_family_shape(n_target, c)
    inst = gen_planted(n_c, m, delta, mu, seed, topology)
    params = dict(inst.params, n_target=n_target, coefficient=c, n=inst.n)
    return PlantedInstance(inst.graph, inst.truth, params)


# Letter-named fixture graphs. Edge lists are the smallest
# sets that make every quoted walk a walk and the stated cliques complete.
_FIXTURES = {
    "fig2ab": {
        "names": "abcdefghij",
        "clique": "bcde",
        "edges": ["ab", "bf", "fg", "gh", "hc", "ei", "ij", "ja", "jf", "jh"],
        "walks": {
            "W1": ("G", "abfghcdeija"),
            "W'1": ("G'", "axfghxija"),
            "W'2": ("G'", "ajfghjixa"),
        },
    },
    "fig2cd": {
        "names": "abcdefghijklmnp",
        "clique": "efgh",
        "edges": ["ab", "bc", "cd", "de", "hi", "ij", "jk", "kl", "la", "am", "mn", "np", "pf", "ga", "li"],
        "walks": {
            "W'1": ("G'", "abcdxijklamnpxa"),
            "W'2": ("G'", "abcdxijklixpnma"),
            "W1": ("G", "abcdehijklamnpfga"),
        },
    },
}


@dataclass(frozen=True)
class Fixture:
    graph: Graph
    cluster: frozenset[int]
    walks: dict[str, tuple[str, tuple[str, ...]]]

    def walk(self, key: str, graph: Graph) -> Walk:
        """Quoted walk ``key`` resolved to ids of ``graph`` by node name."""
        return Walk(graph.ids(self.walks[key][1]))


def fixture_graph(name: str) -> Fixture:
    """``fig2ab``, ``fig2cd`` (named nodes, cluster-node ``x`` in the walks
    on the naively coarsened graph) or ``toy8``."""
    if name == "toy8":
        edges = list(combinations(range(6), 2)) + [(0, 6), (1, 7), (6, 7)]
        return Fixture(graph_from_edges(8, edges), frozenset(range(6)), {})
    if name not in _FIXTURES:
        raise UnknownFixtureError(f"unknown fixture {name!r}")
    data = _FIXTURES[name]
    names = list(data["names"])
    idx = {s: i for i, s in enumerate(names)}
    pairs = [a + b for a, b in combinations(data["clique"], 2)] + data["edges"]
    g = graph_from_edges(len(names), [(idx[p[0]], idx[p[1]]) for p in pairs], names)
    walks = {k: (where, tuple(seq)) for k, (where, seq) in data["walks"].items()}
    return Fixture(g, frozenset(idx[s] for s in data["clique"]), walks)


BENCH_COLUMNS = [
    "instance_id",
    "family",
    "n",
    "n_c_truth",
    "delta",
    "mu",
    "coarse_nodes",
    "pipeline_ms",
    "direct_ms",
    "pipeline_len",
    "direct_len",
    "equal",
    "error",
]
TIMING_COLUMNS = ("pipeline_ms", "direct_ms")


@dataclass(frozen=True)
class BenchCase:
    family: str  # "planted" or "log"
    size: int  # cluster size m for planted, n_target for log
    seed: int
    delta: int
    mu: int
    n_c: int = 3
    coefficient: float = 0.5
    topology: str = "ring"

    @property
    def instance_id(self) -> str:
        if self.family == "log":
            return f"log-n{self.size}-c{self.coefficient:g}-d{self.delta}-mu{self.mu}-s{self.seed}"
        return f"planted-nc{self.n_c}-m{self.size}-d{self.delta}-mu{self.mu}-{self.topology}-s{self.seed}"

    def build(self) -> PlantedInstance:
        if self.family == "log":
            return gen_log_family(self.size, self.coefficient, self.delta, self.mu, self.seed, self.topology)
        if self.family == "planted":
            return gen_planted(self.n_c, self.size, self.delta, self.mu, self.seed, self.topology)
        raise ParamsInfeasibleError(f"unknown family {self.family!r}")


def bench_grid(
    family: str,
    sizes: Iterable[int],
    seeds: Iterable[int],
    delta: int,
    mu: int,
    n_c: int = 3,
    coefficient: float = 0.5,
    topology: str = "ring",
) -> list[BenchCase]:
    seeds = list(seeds)
    return [BenchCase(family, s, seed, delta, mu, n_c, coefficient, topology) for s in sizes for seed in seeds]


@dataclass
class BenchRecord:
    instance_id: str
    family: str
    n: int | None = None
    n_c_truth: int | None = None
    delta: int | None = None
    mu: int | None = None
    coarse_nodes: int | None = None
    pipeline_ms: float | None = None
    direct_ms: float | None = None
    pipeline_len: int | None = None
    direct_len: int | None = None
    error: str = ""

    @property
    def equal(self) -> bool | None:
        if self.pipeline_len is None or self.direct_len is None:
            return None
        return self.pipeline_len == self.direct_len

    def row(self) -> dict[str, str]:
        def fmt(v) -> str:
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, float):
                return f"{v:.3f}"
            return str(v)

        values = {c: getattr(self, c) for c in BENCH_COLUMNS}
        return {c: fmt(v) for c, v in values.items()}


def run_case(
    case: BenchCase,
    direct_limit: int = EXACT_NODE_LIMIT,
    node_limit: int = EXACT_NODE_LIMIT,
    mode: str = "greedy",
) -> BenchRecord:
    rec = BenchRecord(case.instance_id, case.family, delta=case.delta, mu=case.mu)
    try:
        inst = case.build()
        rec.n = inst.n
        rec.n_c_truth = len(inst.truth.clusters)
        t0 = time.perf_counter()
        sol = solve_pipeline(inst.graph, ClusterParams(case.delta, case.mu), mode, node_limit, case.seed)
        rec.pipeline_ms = (time.perf_counter() - t0) * 1000
        rec.pipeline_len = sol.length
        rec.coarse_nodes = sol.coarse_nodes
        if inst.n <= direct_limit:
            t0 = time.perf_counter()
            rec.direct_len = solve_exact(inst.graph, direct_limit).length
            rec.direct_ms = (time.perf_counter() - t0) * 1000
    except ModwalkError as exc:
        rec.error = f"{type(exc).__name__}: {exc}"
    return rec


def bench_run(
    cases: Sequence[BenchCase],
    direct_limit: int = EXACT_NODE_LIMIT,
    node_limit: int = EXACT_NODE_LIMIT,
    mode: str = "greedy",
    jobs: int = 1,
) -> list[BenchRecord]:
    """One record per case, in case order regardless of ``jobs``."""
    if jobs <= 1 or len(cases) <= 1:
        return [run_case(c, direct_limit, node_limit, mode) for c in cases]
    n = len(cases)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_case, cases, [direct_limit] * n, [node_limit] * n, [mode] * n))


def records_to_csv(records: Iterable[BenchRecord], include_timings: bool = True) -> str:
    cols = [c for c in BENCH_COLUMNS if include_timings or c not in TIMING_COLUMNS]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for r in records:
        writer.writerow(r.row())
    return buf.getvalue()
