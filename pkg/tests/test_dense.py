import numpy as np
import pytest

from graphbell.correlation import ObservableLabel
from graphbell.dense import (
    PAULI,
    ConvergenceError,
    DenseOperator,
    OracleSizeError,
    apply_local,
    build_graph_state,
    dense_expectation,
    densify,
    ghz_state,
    label_matrix,
    max_abs_eigenvalue,
    pauli_matrix,
)
from graphbell.expr import eval_expression
from graphbell.graph import generator, graph_family
from graphbell.pauli import PauliString
from graphbell.presets import get_preset
from graphbell.scenario import correlation_form

H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class TestStates:
    def test_line2(self):
        amps = build_graph_state(graph_family("line", 2)).amplitudes
        np.testing.assert_allclose(amps, np.array([1, 1, 1, -1]) / 2)

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_star_is_ghz_up_to_hadamards(self, n):
        star = build_graph_state(graph_family("star", n))
        rotated = apply_local(star, {q: H for q in range(2, n + 1)})
        overlap = abs(np.vdot(ghz_state(n).amplitudes, rotated.amplitudes))
        assert overlap == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("family, n", [("line", 5), ("ring", 6), ("star", 4)])
    def test_stabilized_by_generators(self, family, n):
        g = graph_family(family, n)
        psi = build_graph_state(g).amplitudes
        for i in range(1, n + 1):
            np.testing.assert_allclose(pauli_matrix(generator(g, i)) @ psi, psi, atol=1e-12)

    def test_size_cap(self):
        with pytest.raises(OracleSizeError):
            build_graph_state(graph_family("line", 13))

    def test_qubit_one_is_lsb(self):
        # X on qubit 1 flips bit 0
        m = pauli_matrix(PauliString.from_letters("X1"))
        assert m[1, 0] == 1 and m[2, 0] == 0


class TestOperators:
    def test_rotated_labels(self):
        a = label_matrix(ObservableLabel.rotated(1, "Z", "Y", "A"))
        b = label_matrix(ObservableLabel.rotated(1, "Z", "Y", "B"))
        np.testing.assert_allclose((a + b) / np.sqrt(2), PAULI["Z"], atol=1e-12)
        np.testing.assert_allclose((a - b) / np.sqrt(2), PAULI["Y"], atol=1e-12)
        np.testing.assert_allclose(a @ a, np.eye(2), atol=1e-12)

    def test_expectation_mermin(self):
        g = graph_family("star", 4)
        op = densify(eval_expression("g1(1+g2)(1+g3)(1+g4)", g))
        assert dense_expectation(build_graph_state(g), op) == pytest.approx(8, abs=1e-9)

    def test_imaginary_expectation_rejected(self):
        op = DenseOperator(1, np.array([[0, 1j], [0, 0]]))
        with pytest.raises(ValueError):
            dense_expectation(build_graph_state(graph_family("line", 1)), op)


class TestEigen:
    def test_mermin_b4(self):
        op = densify(eval_expression("g1(1+g2)(1+g3)(1+g4)", graph_family("star", 4)))
        assert max_abs_eigenvalue(op) == pytest.approx(8, abs=1e-6)

    def test_lc5_full_spectrum(self):
        op = densify(correlation_form(get_preset("lc5")))
        spectrum = np.linalg.eigvalsh(op.matrix)
        assert max(abs(spectrum)) == pytest.approx(8, abs=1e-9)
        assert max_abs_eigenvalue(op) == pytest.approx(8, abs=1e-6)

    def test_without_coefficient_norm(self):
        m = np.diag([3.0, -5.0, 1.0, 0.0]).astype(complex)
        assert max_abs_eigenvalue(DenseOperator(2, m)) == pytest.approx(5, abs=1e-6)

    def test_not_hermitian(self):
        with pytest.raises(ValueError):
            max_abs_eigenvalue(DenseOperator(1, np.array([[0, 1], [0, 0]], dtype=complex)))

    def test_convergence_error(self):
        m = np.diag([1.0, 0.999999, -0.5, 0.2]).astype(complex)
        with pytest.raises(ConvergenceError) as info:
            max_abs_eigenvalue(DenseOperator(2, m, 1.0), tol=1e-15, max_iter=5)
        assert info.value.residual > 0
