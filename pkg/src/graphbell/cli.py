"""Command-line entry point: ``graphbell <subcommand> ...``.

Exit codes: 0 success, 1 parse error, 2 validation error, 3 mismatch
against expected values.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .correlation import SubstitutionError
from .expr import ExpressionSyntaxError
from .graph import Graph, GraphError, local_complement
from .lhv import LabelCapExceeded
from .presets import COMPARISON_CONSTANTS, get_preset, load_registry, select
from .scenario import ScenarioError, correlation_form, evaluate, expand, load_scenario, quantum_value, scenario_from_dict

log = logging.getLogger("graphbell")

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_MISMATCH = 0, 1, 2, 3

METHOD_CHOICES = {"exhaustive": "exhaustive", "bnb": "branch_and_bound", "auto": "auto"}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def _write_json(path: str | None, obj) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(_dump(obj))


def _scenario(args):
    if args.scenario and args.preset:
        raise CliError("use either --scenario or --preset", EXIT_VALIDATION)
    if args.preset:
        try:
            return get_preset(args.preset)
        except KeyError as exc:
            raise CliError(str(exc), EXIT_VALIDATION) from exc
    if not args.scenario:
        raise CliError("a scenario is required (--scenario FILE or --preset NAME)", EXIT_VALIDATION)
    try:
        return load_scenario(args.scenario)
    except json.JSONDecodeError as exc:
        raise CliError(f"{args.scenario}: invalid JSON: {exc}", EXIT_PARSE) from exc


def cmd_expand(args) -> int:
    s = _scenario(args)
    poly = expand(s)
    for line in poly.render_lines():
        print(line)
    _write_json(args.json, {"name": s.name, "terms": poly.render_lines()})
    return EXIT_OK


def cmd_quantum(args) -> int:
    s = _scenario(args)
    out = {"name": s.name}
    if args.oracle in ("stabilizer", "both"):
        q = quantum_value(s)
        out["quantum"] = q.to_dict()
        print(f"quantum (stabilizer): {q.pretty()}")
    if args.oracle in ("dense", "both"):
        from .dense import build_graph_state, dense_expectation, densify

        val = dense_expectation(build_graph_state(s.graph), densify(correlation_form(s)))
        out["quantum_dense"] = round(val, 6)
        print(f"quantum (dense): {val:.6f}")
    _write_json(args.json, out)
    return EXIT_OK


def cmd_bound(args) -> int:
    from .lhv import lhv_bound

    s = _scenario(args)
    report = lhv_bound(correlation_form(s), method=METHOD_CHOICES[args.method], threads=args.threads)
    print(f"LHV bound: {report.bound.pretty()}  [{report.bound}]")
    print(f"method: {report.method}, strategies explored: {report.strategies_explored}")
    _write_json(args.json, {"name": s.name, **report.to_dict()})
    return EXIT_OK


def _result_line(r) -> str:
    v = r.violation.pretty() if r.violation is not None else f"≈{r.violation_approx:.6f}"
    status = "PASS" if r.passed else "FAIL"
    return f"{r.name:<18} {r.quantum.pretty():>8} {r.bound.pretty():>10} {v:>10}  {status}"


def cmd_violation(args) -> int:
    s = _scenario(args)
    r = evaluate(s, method=METHOD_CHOICES[args.method], oracle=args.oracle, threads=args.threads)
    print(f"{'scenario':<18} {'quantum':>8} {'bound':>10} {'violation':>10}")
    print(_result_line(r))
    for m in r.mismatches:
        print(f"  mismatch: {m}")
    _write_json(args.json, r.to_dict())
    return EXIT_OK if r.passed else EXIT_MISMATCH


def cmd_lc(args) -> int:
    if args.graph:
        try:
            with open(args.graph, encoding="utf-8") as fh:
                g = Graph.from_dict(json.load(fh))
        except json.JSONDecodeError as exc:
            raise CliError(f"{args.graph}: invalid JSON: {exc}", EXIT_PARSE) from exc
        except (KeyError, TypeError) as exc:
            raise CliError(f"{args.graph}: not a graph record", EXIT_VALIDATION) from exc
    else:
        g = _scenario(args).graph
    out = local_complement(g, args.vertex).to_dict()
    text = json.dumps(out)
    print(text)
    _write_json(args.json, out)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    if args.registry:
        try:
            with open(args.registry, encoding="utf-8") as fh:
                records = json.load(fh).get("presets", [])
        except json.JSONDecodeError as exc:
            raise CliError(f"{args.registry}: invalid JSON: {exc}", EXIT_PARSE) from exc
        scenarios = [scenario_from_dict(d) for d in records]
    else:
        scenarios = load_registry()
    scenarios = select(scenarios, args.only)
    if not scenarios:
        raise CliError("no scenarios to run (empty registry or --only matched nothing)", EXIT_VALIDATION)
    method = METHOD_CHOICES[args.method]

    def run(s):
        t0 = time.perf_counter()
        r = evaluate(s, method=method, oracle=args.oracle, threads=1)
        log.info("%s done in %.2fs", s.name, time.perf_counter() - t0)
        return r

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(run, scenarios))
    else:
        results = [run(s) for s in scenarios]

    print(f"{'scenario':<18} {'quantum':>8} {'bound':>10} {'violation':>10}")
    for r in results:
        print(_result_line(r))
        for m in r.mismatches:
            print(f"  mismatch: {m}")
    failures = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failures)}/{len(results)} scenarios pass")
    report = {
        "scenarios": [r.to_dict() for r in results],
        "failures": failures,
        "comparison_constants": {k: v for k, v in COMPARISON_CONSTANTS.items() if k in {r.name for r in results}},
    }
    _write_json(args.json, report)
    if failures:
        print("failed: " + ", ".join(failures), file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphbell", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", metavar="FILE", help="scenario JSON file")
            p.add_argument("--preset", metavar="NAME", help="named scenario from the registry")
        p.add_argument("--method", choices=sorted(METHOD_CHOICES), default="auto")
        p.add_argument("--oracle", choices=["stabilizer", "dense", "both"], default="stabilizer")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--json", metavar="FILE", help="also write a JSON report")

    for name, fn, help_ in (
        ("expand", cmd_expand, "print the Pauli expansion"),
        ("quantum", cmd_quantum, "graph-state expectation value"),
        ("bound", cmd_bound, "exact LHV bound"),
        ("violation", cmd_violation, "quantum value, bound and ratio"),
    ):
        p = sub.add_parser(name, help=help_)
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("lc", help="local complementation of a graph")
    common(p)
    p.add_argument("--graph", metavar="FILE", help='graph JSON {"n": .., "edges": [[i, j], ..]}')
    p.add_argument("--vertex", type=int, required=True)
    p.set_defaults(func=cmd_lc)

    p = sub.add_parser("reproduce", help="run every registered scenario")
    common(p, scenario=False)
    p.add_argument("--only", metavar="NAME[,NAME...]", help="names or shell patterns")
    p.add_argument("--registry", metavar="FILE", help="alternative registry JSON")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ExpressionSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ScenarioError, GraphError, SubstitutionError, LabelCapExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
