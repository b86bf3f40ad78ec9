"""Exact Bell-inequality workbench for graph states.

Build Bell operators from stabilizer expressions, apply the A/B
(Ardehali) replacement of two Pauli settings, and compare the
graph-state value with the exact local-hidden-variable bound.
"""

from .correlation import (
    CorrelationPolynomial,
    ObservableLabel,
    SubstitutionError,
    ardehali_substitute,
    clifford_lc_transform,
    to_correlation_polynomial,
)
from .expr import add_qubit_extend, eval_expression, parse_expression
from .graph import Graph, generator, graph_build, graph_family, local_complement
from .lhv import LhvReport, Strategy, lhv_bound, strategy_value
from .presets import get_preset, load_registry, preset_names
from .pauli import PauliPolynomial, PauliString, pauli_mul, poly_combine, poly_mul
from .scalar import RootTwoScalar, scalar_normalize, scalar_sign
from .scenario import Scenario, correlation_form, evaluate, expand, load_scenario, quantum_value
from .stabilizer import StabilizerBasis, graph_expectation, stab_membership, stabilizer_basis

__all__ = [
    "CorrelationPolynomial",
    "Graph",
    "LhvReport",
    "ObservableLabel",
    "PauliPolynomial",
    "PauliString",
    "RootTwoScalar",
    "Scenario",
    "StabilizerBasis",
    "Strategy",
    "SubstitutionError",
    "add_qubit_extend",
    "ardehali_substitute",
    "clifford_lc_transform",
    "correlation_form",
    "eval_expression",
    "evaluate",
    "expand",
    "generator",
    "get_preset",
    "graph_build",
    "graph_expectation",
    "graph_family",
    "lhv_bound",
    "load_registry",
    "load_scenario",
    "local_complement",
    "parse_expression",
    "pauli_mul",
    "poly_combine",
    "poly_mul",
    "preset_names",
    "quantum_value",
    "scalar_normalize",
    "scalar_sign",
    "stab_membership",
    "stabilizer_basis",
    "strategy_value",
    "to_correlation_polynomial",
]

__version__ = "0.1.0"
