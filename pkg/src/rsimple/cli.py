"""Command line front end. Exit codes: 0 yes / success, 1 no, 2 error."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys

from . import directed, oracle, undirected
from .colorings import EXHAUSTIVE, INJECTIVE, RANDOMIZED
from .errors import RSimpleError
from .generators import gen_grid_pendant, gen_tightness_directed, random_connected_graph, random_digraph
from .io import GraphInstance, instance_to_dict, parse_instance, parse_walk
from .packing import PackingInstance, kernelize, solve_packing
from .parallel import default_jobs

log = logging.getLogger("rsimple")

YES, NO, ERROR = 0, 1, 2


def _word(answer: bool) -> str:
    return "yes" if answer else "no"


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "text":
        print(" ".join(f"{k}={v}" for k, v in obj.items()))
    else:
        print(json.dumps(obj, sort_keys=True))


def _graph_instance(args, directed_expected: bool) -> GraphInstance:
    inst = parse_instance(args.input)
    if not isinstance(inst, GraphInstance):
        raise RSimpleError("expected a graph instance")
    if inst.directed != directed_expected:
        kind = "digraph" if directed_expected else "graph"
        raise RSimpleError(f"expected an instance of type {kind!r}")
    if inst.k is None or inst.r is None:
        raise RSimpleError("instance needs both k and r")
    return inst


def _cmd_solve_directed(args) -> int:
    inst = _graph_instance(args, True)
    params = directed.SolverParams(bound_override=args.bound, coloring=args.coloring,
                                   trials=args.trials, seed=args.seed, jobs=args.jobs)
    answer = directed.solve_directed(inst.graph, inst.k, inst.r, params)
    bound = args.bound or directed.default_bound(inst.k, inst.r)
    log.info("stats %s", params.stats)
    _emit({"answer": _word(answer), "bound_used": str(bound)}, args.format)
    return YES if answer else NO


def _cmd_solve_undirected(args) -> int:
    inst = _graph_instance(args, False)
    params = undirected.UndirSolverParams(bound_override=args.bound, pipeline=args.pipeline,
                                          coloring=args.coloring, trials=args.trials,
                                          seed=args.seed, jobs=args.jobs)
    answer = undirected.solve_undirected(inst.graph, inst.k, inst.r, params)
    bound = args.bound or undirected.default_bound(inst.k, inst.r)
    log.info("stats %s", params.stats)
    _emit({"answer": _word(answer), "bound_used": str(bound)}, args.format)
    return YES if answer else NO


def _packing(args) -> PackingInstance:
    inst = parse_instance(args.input)
    if not isinstance(inst, PackingInstance):
        raise RSimpleError("expected a packing instance")
    return inst


def _cmd_solve_packing(args) -> int:
    answer = solve_packing(_packing(args))
    _emit({"answer": _word(answer)}, args.format)
    return YES if answer else NO


def _cmd_kernelize(args) -> int:
    kernel = kernelize(_packing(args))
    body = {"type": "packing", "universe": kernel["universe"], "p": kernel["p"],
            "q": kernel["q"], "r": str(kernel["r"]), "sets": kernel["sets"],
            "mult": [str(m) for m in kernel["mult"]]}
    if not args.out:
        print(json.dumps(body, sort_keys=True))
        return YES
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(body, fh, sort_keys=True)
        fh.write("\n")
    _emit({"bits": kernel["bits"], "sets": len(kernel["sets"]), "universe": kernel["universe"]},
          args.format)
    return YES


def _cmd_oracle(args) -> int:
    inst = parse_instance(args.input)
    if not isinstance(inst, GraphInstance) or inst.r is None:
        raise RSimpleError("oracle needs a graph instance with r")
    g = inst.graph
    cap = inst.k if inst.k is not None else g.n * inst.r
    best = oracle.brute_rsimple_max(g, inst.r, cap, args.budget_states)
    out = {"max": str(best)}
    if inst.k is None:
        _emit(out, args.format)
        return YES
    answer = best >= inst.k
    out["answer"] = _word(answer)
    if args.witness and answer:
        out["witness"] = oracle.brute_rsimple_witness(g, inst.r, inst.k, args.budget_states)
    _emit(out, args.format)
    return YES if answer else NO


def _cmd_gen(args) -> int:
    if args.kind == "tightness-directed":
        g, k_opt = gen_tightness_directed(args.r)
        out = instance_to_dict(GraphInstance(g, None, args.r))
        out["k_opt"] = str(k_opt)
    elif args.kind == "grid-pendant":
        out = instance_to_dict(GraphInstance(gen_grid_pendant(args.c, args.r), None, args.r))
    elif args.kind == "random-digraph":
        g = random_digraph(args.n, args.p, random.Random(args.seed))
        out = instance_to_dict(GraphInstance(g, None, args.r))
    else:
        g = random_connected_graph(args.n, args.p, random.Random(args.seed))
        out = instance_to_dict(GraphInstance(g, None, args.r))
    print(json.dumps(out, sort_keys=True))
    return YES


def _cmd_verify(args) -> int:
    inst = parse_instance(args.input)
    if not isinstance(inst, GraphInstance):
        raise RSimpleError("verify needs a graph instance")
    r = args.r if args.r is not None else inst.r
    if r is None:
        raise RSimpleError("give r with --r or in the instance")
    result = oracle.verify_walk(inst.graph, parse_walk(args.walk), r)
    _emit(result, args.format)
    return YES if result["valid"] else NO


def _decimal(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsimple", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, solver=True):
        p.add_argument("--input", required=True, help="instance JSON path, or - for stdin")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if solver:
            p.add_argument("--bound", type=_decimal, help="override the color budget b")
            p.add_argument("--coloring", choices=(EXHAUSTIVE, INJECTIVE, RANDOMIZED))
            p.add_argument("--trials", type=int, help="number of random colorings")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--jobs", type=int, default=default_jobs(),
                           help="worker processes (default: all cores)")

    p = sub.add_parser("solve-directed", help="directed r-simple k-path")
    common(p)
    p.set_defaults(func=_cmd_solve_directed)

    p = sub.add_parser("solve-undirected", help="undirected r-simple k-path")
    common(p)
    p.add_argument("--pipeline", choices=(undirected.AUTO, undirected.GENERAL, undirected.SPECIAL),
                   default=undirected.AUTO)
    p.set_defaults(func=_cmd_solve_undirected)

    p = sub.add_parser("solve-packing", help="p-set (r,q)-packing")
    common(p, solver=False)
    p.set_defaults(func=_cmd_solve_packing)

    p = sub.add_parser("kernelize", help="reduce a packing instance to its kernel")
    common(p, solver=False)
    p.add_argument("--out", help="write the kernel JSON here (default: stdout)")
    p.set_defaults(func=_cmd_kernelize)

    p = sub.add_parser("oracle", help="exhaustive walk search")
    common(p, solver=False)
    p.add_argument("--budget-states", type=int, default=oracle.DEFAULT_STATE_BUDGET)
    p.add_argument("--witness", action="store_true", help="print a walk when the answer is yes")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("kind", choices=("tightness-directed", "grid-pendant", "random-digraph", "random-graph"))
    p.add_argument("--r", type=_decimal, default=2)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("verify", help="check a walk against a graph")
    p.add_argument("--walk", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--r", type=_decimal)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return ERROR if exc.code else YES
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (RSimpleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
