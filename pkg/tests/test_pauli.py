import itertools
import random

import numpy as np
import pytest

from graphbell.dense import pauli_matrix, densify
from graphbell.graph import generator, graph_family
from graphbell.pauli import (
    DimensionError,
    NonHermitianError,
    PauliPolynomial,
    PauliString,
    pauli_mul,
    poly_combine,
    poly_mul,
)
from graphbell.scalar import RootTwoScalar

P = PauliString.from_letters
R = RootTwoScalar


def all_strings(n):
    for letters in itertools.product("IXYZ", repeat=n):
        for phase in range(4):
            s = P("".join(letters))
            yield PauliString(n, s.x_mask, s.z_mask, phase)


class TestPauliMul:
    def test_x_times_z(self):
        r = pauli_mul(P("X"), P("Z"))
        assert r.letters == "Y" and r.phase_exp == 3  # -i Y

    def test_involution(self):
        r = pauli_mul(P("X"), P("X"))
        assert r == PauliString.identity(1)

    def test_tensor_factorization(self):
        r = pauli_mul(P("XZ"), P("ZZ"))
        assert r.letters == "YI" and r.phase_exp == 3

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            pauli_mul(P("X"), P("XX"))

    def test_matches_matrices_exhaustively(self):
        for p in all_strings(2):
            for q in list(all_strings(2))[::3]:
                np.testing.assert_allclose(pauli_matrix(p * q), pauli_matrix(p) @ pauli_matrix(q), atol=1e-12)

    def test_group_laws_two_qubits(self):
        strings = list(all_strings(2))
        ident = PauliString.identity(2)
        for p in strings:
            assert p * ident == p and ident * p == p
            sq = p * p
            assert sq.letters == "II"
            # Hermitian strings square to +1, ±i strings to -1
            assert sq.phase_exp == (0 if p.is_hermitian else 2)
        rng = random.Random(7)
        for _ in range(2000):
            a, b, c = rng.sample(strings, 3)
            assert (a * b) * c == a * (b * c)

    def test_anticommutation(self):
        xz, zx = P("X") * P("Z"), P("Z") * P("X")
        assert xz.letters == zx.letters
        assert (xz.phase_exp - zx.phase_exp) % 4 == 2
        assert not P("X").commutes_with(P("Z"))
        assert P("XZ").commutes_with(P("ZX"))

    def test_letters_round_trip(self):
        assert P("-ZYXY").render() == "-ZYXY"
        assert P("ZX1X").render() == "ZX1X"
        assert P("iXZ").phase_exp == 1
        with pytest.raises(ValueError):
            P("XQ")


class TestPolynomials:
    def test_cancel(self):
        p = PauliPolynomial.from_terms([(1, "XZ"), (2, "YY")])
        assert len(poly_combine(p, -p, 1)) == 0

    def test_two_terms(self):
        out = poly_combine(PauliPolynomial.from_terms([(1, "X")]), PauliPolynomial.from_terms([(1, "Z")]), 1)
        assert out.terms == {(1, 0): R(1), (0, 1): R(1)}

    def test_scaled_sum(self):
        x = PauliPolynomial.from_terms([(1, "X")])
        out = poly_combine(x, x, R.inv_sqrt2())
        (coeff,) = out.terms.values()
        # 1 + 1/√2 = (1 + √2)/√2
        assert (coeff.a, coeff.b, coeff.k) == (1, 1, 1)
        assert float(coeff) == pytest.approx(1 + 1 / np.sqrt(2), abs=1e-12)

    def test_projector_identity(self):
        g = graph_family("line", 4)
        one_plus = PauliPolynomial.identity(4) + PauliPolynomial.from_string(generator(g, 2))
        assert poly_mul(one_plus, one_plus) == one_plus.scale(2)

    def test_line4_expansion(self):
        g = graph_family("line", 4)
        gen = [PauliPolynomial.from_string(generator(g, i)) for i in range(1, 5)]
        one = PauliPolynomial.identity(4)
        prod = (one + gen[0]) * gen[1] * (one + gen[2]) * gen[3]
        want = PauliPolynomial.from_terms([(1, "ZX1X"), (-1, "ZYXY"), (1, "YY1X"), (1, "YXXY")])
        assert prod == want

    def test_two_vertex_generators(self):
        g = graph_family("line", 2)
        g1, g2 = (PauliPolynomial.from_string(generator(g, i)) for i in (1, 2))
        prod = g1 * g2
        # (XZ)(ZX) = (X Z)⊗(Z X) = (-iY)⊗(iY) = YY
        assert prod == PauliPolynomial.from_terms([(1, "YY")])
        dense = pauli_matrix(generator(g, 1)) @ pauli_matrix(generator(g, 2))
        np.testing.assert_allclose(densify(prod).matrix, dense, atol=1e-12)

    def test_dimension_error(self):
        with pytest.raises(DimensionError):
            poly_mul(PauliPolynomial.identity(2), PauliPolynomial.identity(3))
        with pytest.raises(DimensionError):
            poly_combine(PauliPolynomial.identity(2), PauliPolynomial.identity(3), 1)

    def test_non_commuting_product_raises(self):
        with pytest.raises(NonHermitianError):
            poly_mul(PauliPolynomial.from_terms([(1, "X")]), PauliPolynomial.from_terms([(1, "Z")]))

    def test_render_lines(self):
        p = PauliPolynomial.from_terms([(1, "ZX1X"), (-1, "ZYXY"), (R(1, 0, 1), "YYYY")])
        assert p.render_lines() == ["ZX1X", "-ZYXY", "(1+0√2)/√2^1 ≈ 0.707107 YYYY"]


def _random_group_poly(rng, n, gens, terms=3):
    """Random real combination of stabilizer-group elements (mutually commuting)."""
    out = PauliPolynomial.zero(n)
    for _ in range(terms):
        s = PauliString.identity(n)
        for g in gens:
            if rng.random() < 0.5:
                s = s * g
        c = R(rng.randint(-3, 3), rng.randint(-2, 2), rng.randint(0, 2))
        out = out + PauliPolynomial.from_string(s, c)
    return out


def _random_poly(rng, n, terms=3):
    out = PauliPolynomial.zero(n)
    for _ in range(terms):
        letters = "".join(rng.choice("IXYZ") for _ in range(n))
        out = out + PauliPolynomial.from_string(P(letters), R(rng.randint(-3, 3), rng.randint(-1, 1)))
    return out


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_poly_mul_matches_dense_commuting(n):
    rng = random.Random(100 + n)
    for _ in range(100):
        g = graph_family("ring", n) if n >= 3 else graph_family("line", max(n, 2)) if n == 2 else None
        gens = [generator(g, i) for i in range(1, n + 1)] if g else [P("X")]
        p, q = _random_group_poly(rng, n, gens), _random_group_poly(rng, n, gens)
        np.testing.assert_allclose(densify(p * q).matrix, densify(p).matrix @ densify(q).matrix, atol=1e-9)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_poly_mul_general_raises_or_matches(n):
    rng = random.Random(n)
    for _ in range(100):
        p, q = _random_poly(rng, n), _random_poly(rng, n)
        dense = densify(p).matrix @ densify(q).matrix
        hermitian = np.allclose(dense, dense.conj().T, atol=1e-9)
        if hermitian:
            np.testing.assert_allclose(densify(p * q).matrix, dense, atol=1e-9)
        else:
            with pytest.raises(NonHermitianError):
                p * q
