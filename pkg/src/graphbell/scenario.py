"""Scenario records (graph + expression + A/B replacements) and their evaluation."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .correlation import AXES, CorrelationPolynomial, ardehali_substitute, to_correlation_polynomial
from .expr import BellExpr, ExpressionIndexError, eval_expression, max_generator_index, parse_expression
from .graph import Graph, GraphError, graph_build, graph_family
from .lhv import LhvReport, lhv_bound
from .pauli import PauliPolynomial
from .scalar import RootTwoScalar
from .stabilizer import graph_expectation, stabilizer_basis


class ScenarioError(ValueError):
    """Scenario does not validate against its graph (exit code 2)."""


@dataclass(frozen=True)
class Substitution:
    qubit: int
    p: str
    q: str

    def to_dict(self) -> dict:
        return {"qubit": self.qubit, "p": self.p, "q": self.q}


@dataclass(frozen=True)
class Scenario:
    name: str
    graph: Graph
    expression: str
    substitutions: tuple = ()
    expected: dict = field(default_factory=dict, hash=False)
    notes: str = ""
    graph_spec: dict = field(default_factory=dict, hash=False)
    inferred: bool = False

    @property
    def tree(self) -> BellExpr:
        return parse_expression(self.expression)

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "graph": self.graph_spec or self.graph.to_dict(),
            "expression": self.expression,
            "substitutions": [s.to_dict() for s in self.substitutions],
        }
        if self.expected:
            d["expected"] = {k: v.to_dict() for k, v in self.expected.items()}
        if self.inferred:
            d["inferred"] = True
        if self.notes:
            d["notes"] = self.notes
        return d


def _graph_from_spec(spec) -> Graph:
    if not isinstance(spec, dict):
        raise ScenarioError(f"graph must be an object, got {spec!r}")
    try:
        if "family" in spec:
            return graph_family(spec["family"], int(spec["n"]))
        return Graph.from_dict(spec)
    except (GraphError, KeyError, TypeError) as exc:
        raise ScenarioError(f"invalid graph: {exc}") from exc


def scenario_from_dict(d: dict) -> Scenario:
    """Validate a scenario record; syntax errors propagate as ExpressionSyntaxError."""
    for key in ("name", "graph", "expression"):
        if key not in d:
            raise ScenarioError(f"scenario is missing {key!r}")
    graph = _graph_from_spec(d["graph"])
    tree = parse_expression(d["expression"])
    top = max_generator_index(tree)
    if top > graph.n:
        raise ScenarioError(f"{d['name']}: g{top} used on a {graph.n}-vertex graph")
    subs = []
    for s in d.get("substitutions", []):
        try:
            sub = Substitution(int(s["qubit"]), str(s["p"]).upper(), str(s["q"]).upper())
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"{d['name']}: bad substitution {s!r}") from exc
        if not 1 <= sub.qubit <= graph.n:
            raise ScenarioError(f"{d['name']}: substitution qubit {sub.qubit} out of range")
        if sub.p == sub.q or sub.p not in AXES or sub.q not in AXES:
            raise ScenarioError(f"{d['name']}: substitution needs two distinct axes, got {sub.p}/{sub.q}")
        subs.append(sub)
    expected = {}
    for key, val in (d.get("expected") or {}).items():
        if key not in ("quantum", "bound", "violation"):
            raise ScenarioError(f"{d['name']}: unknown expected field {key!r}")
        if val is not None:
            expected[key] = RootTwoScalar.from_dict(val)
    return Scenario(
        name=d["name"],
        graph=graph,
        expression=d["expression"],
        substitutions=tuple(subs),
        expected=expected,
        notes=d.get("notes", ""),
        graph_spec=dict(d["graph"]),
        inferred=bool(d.get("inferred", False)),
    )


def load_scenario(path: str | Path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return scenario_from_dict(json.load(fh))


def safe_ratio(quantum: RootTwoScalar, bound: RootTwoScalar) -> RootTwoScalar | None:
    """Exact quantum / bound, or None when it leaves the ring (e.g. 16/12)."""
    if bound.is_zero():
        return None
    try:
        return quantum / bound
    except ValueError:
        return None


@dataclass
class ScenarioResult:
    name: str
    pauli_terms: int
    correlation_terms: int
    label_count: int
    quantum: RootTwoScalar
    quantum_dense: float | None
    lhv: LhvReport
    violation: RootTwoScalar | None
    violation_approx: float
    mismatches: list
    timings: dict

    @property
    def bound(self) -> RootTwoScalar:
        return self.lhv.bound

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "pauli_terms": self.pauli_terms,
            "correlation_terms": self.correlation_terms,
            "labels": self.label_count,
            "quantum": self.quantum.to_dict(),
            "bound": self.lhv.bound.to_dict(),
            "violation": self.violation.to_dict() if self.violation is not None else None,
            "violation_approx": round(self.violation_approx, 6),
            "method": self.lhv.method,
            "strategies_explored": self.lhv.strategies_explored,
            "passed": self.passed,
            "mismatches": self.mismatches,
        }
        if self.quantum_dense is not None:
            d["quantum_dense"] = round(self.quantum_dense, 6)
        return d


def expand(s: Scenario) -> PauliPolynomial:
    return eval_expression(s.tree, s.graph)


def correlation_form(s: Scenario, poly: PauliPolynomial | None = None) -> CorrelationPolynomial:
    c = to_correlation_polynomial(poly if poly is not None else expand(s))
    for sub in s.substitutions:
        c = ardehali_substitute(c, sub.qubit, sub.p, sub.q)
    return c


def quantum_value(s: Scenario, poly: PauliPolynomial | None = None) -> RootTwoScalar:
    poly = poly if poly is not None else expand(s)
    return graph_expectation(stabilizer_basis(s.graph), poly)


def evaluate(s: Scenario, method: str = "auto", oracle: str = "stabilizer", threads: int = 1) -> ScenarioResult:
    """Quantum value, LHV bound and violation of a scenario, checked against ``expected``."""
    timings = {}
    t0 = time.perf_counter()
    try:
        poly = expand(s)
    except ExpressionIndexError as exc:
        raise ScenarioError(str(exc)) from exc
    corr = correlation_form(s, poly)
    timings["expand"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    quantum = quantum_value(s, poly)
    dense_val = None
    if oracle in ("dense", "both"):
        from .dense import build_graph_state, dense_expectation, densify

        dense_val = dense_expectation(build_graph_state(s.graph), densify(corr))
    timings["quantum"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    report = lhv_bound(corr, method=method, threads=threads)
    timings["bound"] = time.perf_counter() - t0

    ratio = safe_ratio(quantum, report.bound)
    approx = float(quantum) / float(report.bound) if not report.bound.is_zero() else float("inf")
    mismatches = []
    got = {"quantum": quantum, "bound": report.bound, "violation": ratio}
    for key, want in s.expected.items():
        if got[key] != want:
            shown = got[key].pretty() if got[key] is not None else f"≈{approx:.6f}"
            mismatches.append(f"{key}: expected {want.pretty()}, got {shown}")
    if dense_val is not None and abs(dense_val - float(quantum)) > 1e-9:
        mismatches.append(f"dense oracle {dense_val:.12f} disagrees with symbolic {quantum.pretty()}")
    return ScenarioResult(
        name=s.name,
        pauli_terms=len(poly),
        correlation_terms=len(corr),
        label_count=len(corr.labels()),
        quantum=quantum,
        quantum_dense=dense_val,
        lhv=report,
        violation=ratio,
        violation_approx=approx,
        mismatches=mismatches,
        timings=timings,
    )


def ratio_equals(quantum: RootTwoScalar, bound: RootTwoScalar, violation: RootTwoScalar) -> bool:
    """quantum / bound == violation, decided by cross-multiplication."""
    return quantum == violation * bound
