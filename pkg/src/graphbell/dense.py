"""Brute-force statevector oracle for checking the symbolic results.

Qubit ``q`` (1-based) is bit ``q - 1`` of a basis index, so qubit 1 is the
least significant. Operators are built from Kronecker products with qubit
``n`` as the leftmost factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .correlation import CorrelationPolynomial, ObservableLabel, to_correlation_polynomial
from .graph import Graph
from .pauli import PauliPolynomial, PauliString, letters_of

MAX_STATE_QUBITS = 12
MAX_EIG_QUBITS = 10

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class OracleSizeError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.n,):
            raise ValueError("amplitude vector has the wrong length")
        if abs(np.linalg.norm(self.amplitudes) - 1.0) > 1e-12:
            raise ValueError("state vector is not normalized")


@dataclass(frozen=True)
class DenseOperator:
    n: int
    matrix: np.ndarray
    # sum of |coefficients| when built from a polynomial; bounds the spectrum
    coefficient_norm: float | None = None

    def is_hermitian(self, atol: float = 1e-9) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=atol))


def _check_size(n: int, cap: int = MAX_STATE_QUBITS) -> None:
    if n > cap:
        raise OracleSizeError(f"dense oracle limited to {cap} qubits, got {n}")


def build_graph_state(g: Graph) -> StateVector:
    """|+>^n followed by a controlled-Z on every edge."""
    _check_size(g.n)
    idx = np.arange(1 << g.n)
    phase = np.zeros(1 << g.n, dtype=np.int64)
    for i, j in g.edges:
        phase ^= ((idx >> (i - 1)) & (idx >> (j - 1))) & 1
    amps = (1.0 - 2.0 * phase) / np.sqrt(1 << g.n)
    return StateVector(g.n, amps.astype(complex))


def ghz_state(n: int) -> StateVector:
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return StateVector(n, amps)


def apply_local(s: StateVector, ops: dict[int, np.ndarray]) -> StateVector:
    """Apply single-qubit unitaries ``ops[q]`` to the state."""
    psi = s.amplitudes.reshape([2] * s.n)
    for q, u in ops.items():
        axis = s.n - q  # qubit n is axis 0 in C order
        psi = np.moveaxis(np.tensordot(u, psi, axes=([1], [axis])), 0, axis)
    return StateVector(s.n, psi.reshape(-1))


def label_matrix(lab: ObservableLabel) -> np.ndarray:
    if not lab.is_rotated:
        return PAULI[lab.kind]
    p, q = (PAULI[a] for a in lab.axes)
    return (p + q) / np.sqrt(2) if lab.kind == "A" else (p - q) / np.sqrt(2)


def pauli_matrix(p: PauliString) -> np.ndarray:
    _check_size(p.n)
    mats = [PAULI[ch] for ch in reversed(letters_of(p.n, p.x_mask, p.z_mask))]
    return (1j**p.phase_exp) * reduce(np.kron, mats, np.ones((1, 1), dtype=complex))


def densify(c: CorrelationPolynomial | PauliPolynomial) -> DenseOperator:
    """Dense matrix of a correlation (or Pauli) polynomial."""
    if isinstance(c, PauliPolynomial):
        c = to_correlation_polynomial(c)
    _check_size(c.n)
    dim = 1 << c.n
    out = np.zeros((dim, dim), dtype=complex)
    for coeff, factors in c.terms:
        mats = [label_matrix(factors[q]) if q in factors else PAULI["I"] for q in range(c.n, 0, -1)]
        out += float(coeff) * reduce(np.kron, mats, np.ones((1, 1), dtype=complex))
    return DenseOperator(c.n, out, float(c.coefficient_norm()))


def dense_expectation(s: StateVector, o: DenseOperator) -> float:
    if s.n != o.n:
        raise ValueError(f"{s.n}-qubit state against {o.n}-qubit operator")
    val = np.vdot(s.amplitudes, o.matrix @ s.amplitudes)
    if abs(val.imag) > 1e-9:
        raise ValueError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def max_abs_eigenvalue(o: DenseOperator, tol: float = 1e-6, max_iter: int = 100_000) -> float:
    """Largest |eigenvalue| by shifted power iteration.

    With ``s`` at least the spectral radius, ``O + sI`` and ``sI - O`` are
    positive semidefinite and their dominant eigenvalues are ``s + max`` and
    ``s - min``.
    """
    _check_size(o.n, MAX_EIG_QUBITS)
    if not o.is_hermitian():
        raise ValueError("power iteration needs a Hermitian operator")
    m = o.matrix
    shift = o.coefficient_norm
    if shift is None:
        shift = float(np.abs(m).sum(axis=1).max())
    shift = max(shift, 1e-300)
    eye = np.eye(m.shape[0])
    top = _power(m + shift * eye, tol, max_iter) - shift
    bottom = shift - _power(shift * eye - m, tol, max_iter)
    return max(abs(top), abs(bottom))


def _power(m: np.ndarray, tol: float, max_iter: int) -> float:
    rng = np.random.default_rng(12345)
    v = rng.standard_normal(m.shape[0]) + 1j * rng.standard_normal(m.shape[0])
    v /= np.linalg.norm(v)
    lam = 0.0
    resid = np.inf
    for _ in range(max_iter):
        w = m @ v
        lam = float(np.vdot(v, w).real)
        resid = float(np.linalg.norm(w - lam * v))
        if resid < tol * max(1.0, abs(lam)):
            return lam
        nrm = np.linalg.norm(w)
        if nrm == 0.0:
            return 0.0
        v = w / nrm
    raise ConvergenceError("power iteration did not converge", resid)
