"""``modwalk`` command line.

Exit codes: 0 success, 2 invalid input, 3 instance too large, 4 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

from . import cliquewidth, io
from .clusterdetect import ClusterParams, detect_clusters
from .coarsening import coarse_size_bound, coarsen, naive_coarsen
from .errors import InstanceTooLargeError, InvalidInputError, InvariantViolationError, ModwalkError
from .genbench import bench_grid, bench_run, fixture_graph, gen_log_family, gen_planted, records_to_csv
from .graphcore import validate_closed_walk
from .hamwalk import (
    EXACT_NODE_LIMIT,
    ORACLE_NODE_LIMIT,
    check_local_expandability,
    oracle_walk_length,
    solve_naive,
    solve_pipeline,
)

EXIT_OK, EXIT_INPUT, EXIT_TOO_LARGE, EXIT_INVARIANT = 0, 2, 3, 4


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _params(args) -> ClusterParams:
    return ClusterParams(args.delta, args.mu)


def cmd_gen(args) -> int:
    if args.fixture:
        fx = fixture_graph(args.fixture)
        _write(args.output, io.dumps(io.graph_to_dict(fx.graph)))
        if args.walks_dir and fx.walks:
            out = Path(args.walks_dir)
            out.mkdir(parents=True, exist_ok=True)
            coarse = naive_coarsen(fx.graph, fx.cluster).graph
            (out / "coarse.json").write_text(io.dumps(io.graph_to_dict(coarse)))
            for key, (where, _) in fx.walks.items():
                g = fx.graph if where == "G" else coarse
                fname = key.replace("'", "p") + ".json"
                (out / fname).write_text(io.dumps(io.walk_to_dict(g, fx.walk(key, g))))
        return EXIT_OK
    if args.family == "log":
        inst = gen_log_family(args.n_target, args.coef, args.delta, args.mu, args.seed, args.topology)
    else:
        inst = gen_planted(args.n_c, args.m, args.delta, args.mu, args.seed, args.topology)
    _write(args.output, io.dumps(io.graph_to_dict(inst.graph)))
    if args.truth:
        _write(args.truth, io.dumps(inst.truth.to_dict()))
    return EXIT_OK


def cmd_detect(args) -> int:
    g = io.read_graph(args.graph)
    cs = detect_clusters(g, _params(args), args.mode, args.seed)
    _write(args.output, io.dumps(cs.to_dict()))
    return EXIT_OK


def cmd_coarsen(args) -> int:
    g = io.read_graph(args.graph)
    cs = io.read_clusters(g, args.clusters) if args.clusters else detect_clusters(g, _params(args), args.mode, args.seed)
    plan = coarsen(g, cs, random.Random(args.seed) if args.random_t else None)
    bound = coarse_size_bound(args.delta, args.mu, len(cs.clusters), len(cs.free_nodes))
    _write(args.output, io.dumps(io.graph_to_dict(plan.coarse_graph)))
    if args.plan:
        _write(args.plan, io.dumps(plan.to_dict()))
    print(f"coarse={plan.coarse_graph.n} bound={bound} clusters={len(cs.clusters)}", file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = io.read_graph(args.graph)
    p = _params(args)
    t0 = time.perf_counter()
    sol = None
    if args.naive:
        if p.mu != 0 or p.delta > 2:
            raise InvalidInputError("--naive needs --delta <= 2 and --mu 0")
        sol = solve_naive(g, p, args.node_limit, args.seed)
        if sol is None:
            print("naive expansion failed; using the shell pipeline", file=sys.stderr)
    if sol is None:
        sol = solve_pipeline(g, p, args.mode, args.node_limit, args.seed, args.random_t)
    ms = (time.perf_counter() - t0) * 1000
    report = validate_closed_walk(g, sol.walk)
    if not report.is_hamiltonian_walk_candidate:
        raise InvariantViolationError("solver returned an invalid walk")
    if args.verify and g.n <= ORACLE_NODE_LIMIT:
        best = oracle_walk_length(g)
        if best != sol.length:
            raise InvariantViolationError(f"solver length {sol.length} differs from oracle {best}")
    if args.output:
        _write(args.output, io.dumps(io.walk_to_dict(g, sol.walk)))
    print(f"len={sol.length} coarse={sol.coarse_nodes} ms={ms:.1f}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    print(oracle_walk_length(io.read_graph(args.graph), args.node_limit))
    return EXIT_OK


def cmd_expandcheck(args) -> int:
    g = io.read_graph(args.graph)
    members = g.ids(s.strip() for s in args.cluster.split(","))
    w = io.read_walk(args.walk)
    ok = check_local_expandability(g, members, w)
    print("expandable" if ok else "not expandable")
    return EXIT_OK


def cmd_cwidth(args) -> int:
    g = io.read_graph(args.graph)
    cs = io.read_clusters(g, args.clusters) if args.clusters else detect_clusters(g, _params(args), args.mode, args.seed)
    expr, corr = cliquewidth.build_k_expression(g, cs)
    if not cliquewidth.round_trip_ok(g, expr, corr):
        raise InvariantViolationError("k-expression does not evaluate to the input graph")
    if args.output:
        _write(args.output, io.dumps(cliquewidth.to_dict(expr)))
    bound = args.delta * len(cs.clusters) + len(cs.free_nodes) + 2
    print(f"width={cliquewidth.width(expr)} bound={bound} verified=true")
    return EXIT_OK


def cmd_bench(args) -> int:
    cases = bench_grid(
        args.family, args.sizes, args.seeds, args.delta, args.mu, args.n_c, args.coef, args.topology
    )
    records = bench_run(cases, args.direct_limit, args.node_limit, args.mode, args.jobs)
    _write(args.output, records_to_csv(records, include_timings=not args.no_timings))
    return EXIT_OK


def cmd_validate(args) -> int:
    g = io.read_graph(args.graph)
    w = io.read_walk(args.walk)
    rep = validate_closed_walk(g, w)
    status = "valid" if rep.is_hamiltonian_walk_candidate else "invalid"
    flags = " ".join(f"{k}={str(v).lower()}" for k, v in rep.as_dict().items())
    print(f"{status} len={rep.length} {flags}")
    return EXIT_OK if rep.is_hamiltonian_walk_candidate else EXIT_INPUT


def _add_cluster_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--delta", type=int, default=2, help="max edges leaving a cluster")
    p.add_argument("--mu", type=int, default=0, help="max missing links inside a cluster")
    p.add_argument("--mode", choices=["exact", "greedy"], default="exact")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modwalk", description="Shortest covering walks via cluster coarsening.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a planted graph or a named fixture")
    p.add_argument("--fixture", choices=["fig2ab", "fig2cd", "toy8"])
    p.add_argument("--walks-dir", help="fixtures: also write the quoted walks and coarse graph here")
    p.add_argument("--family", choices=["planted", "log"], default="planted")
    p.add_argument("--n-c", type=int, default=3)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--n-target", type=int, default=64)
    p.add_argument("--coef", type=float, default=0.5)
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--mu", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--topology", choices=["ring", "random-tree"], default="ring")
    p.add_argument("-o", "--output")
    p.add_argument("--truth", help="write the planted cluster set here")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("detect", help="find coarsenable clusters")
    p.add_argument("graph")
    _add_cluster_args(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("coarsen", help="write the coarsened graph and plan")
    p.add_argument("graph")
    _add_cluster_args(p)
    p.add_argument("--clusters", help="cluster-set JSON instead of detection")
    p.add_argument("--random-t", action="store_true", help="seeded random second shells")
    p.add_argument("-o", "--output")
    p.add_argument("--plan")
    p.set_defaults(func=cmd_coarsen)

    p = sub.add_parser("solve", help="shortest covering closed walk")
    p.add_argument("graph")
    _add_cluster_args(p)
    p.add_argument("--node-limit", type=int, default=EXACT_NODE_LIMIT)
    p.add_argument("--naive", action="store_true", help="whole-cluster coarsening (delta <= 2, mu = 0)")
    p.add_argument("--random-t", action="store_true")
    p.add_argument("--verify", action="store_true", help="compare with the oracle on small graphs")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact length by state-space search")
    p.add_argument("graph")
    p.add_argument("--node-limit", type=int, default=ORACLE_NODE_LIMIT)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("expandcheck", help="can a naive-coarse walk be expanded locally")
    p.add_argument("graph")
    p.add_argument("--cluster", required=True, help="comma-separated node names or ids")
    p.add_argument("--walk", required=True, help="walk JSON on the naively coarsened graph")
    p.set_defaults(func=cmd_expandcheck)

    p = sub.add_parser("cwidth", help="build and verify a k-expression")
    p.add_argument("graph")
    _add_cluster_args(p)
    p.add_argument("--clusters")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_cwidth)

    p = sub.add_parser("bench", help="pipeline vs direct Held-Karp timings as CSV")
    p.add_argument("--family", choices=["planted", "log"], default="planted")
    p.add_argument("--sizes", type=int, nargs="+", default=[8, 12, 16, 20], help="m (planted) or n (log)")
    p.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    p.add_argument("--n-c", type=int, default=3)
    p.add_argument("--coef", type=float, default=0.5)
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--mu", type=int, default=0)
    p.add_argument("--topology", choices=["ring", "random-tree"], default="ring")
    p.add_argument("--mode", choices=["exact", "greedy"], default="greedy")
    p.add_argument("--direct-limit", type=int, default=EXACT_NODE_LIMIT)
    p.add_argument("--node-limit", type=int, default=EXACT_NODE_LIMIT)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timings", action="store_true", help="omit timing columns")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("validate", help="check a walk file against a graph file")
    p.add_argument("graph")
    p.add_argument("walk")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except InstanceTooLargeError as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (ModwalkError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
