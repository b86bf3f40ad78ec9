import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphbell.scalar import RootTwoScalar, scalar_normalize, scalar_sign

R = RootTwoScalar
small = st.integers(-50, 50)
scalars = st.builds(R, small, small, st.integers(0, 6))


class TestNormalize:
    @pytest.mark.parametrize(
        "raw, canon",
        [
            ((2, 0, 2), (1, 0, 0)),
            ((0, 1, 1), (1, 0, 0)),
            # (4+2√2)/(2√2) = 1+√2; reduction continues while a is even
            ((4, 2, 3), (1, 1, 0)),
            ((0, 0, 5), (0, 0, 0)),
            ((1, 3, 2), (1, 3, 2)),
        ],
    )
    def test_examples(self, raw, canon):
        s = scalar_normalize(R(*raw))
        assert (s.a, s.b, s.k) == canon

    def test_value_unchanged(self):
        raw = (4, 2, 3)
        assert float(R(*raw)) == pytest.approx((4 + 2 * math.sqrt(2)) / math.sqrt(2) ** 3)

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            R(1, 0, -1)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            R(1.5, 0, 0)


class TestSign:
    @pytest.mark.parametrize("raw, sign", [((1, 1, 0), 1), ((-3, 2, 0), -1), ((0, 0, 0), 0), ((3, -2, 0), 1), ((-1, 1, 3), 1)])
    def test_examples(self, raw, sign):
        assert scalar_sign(R(*raw)) == sign

    @settings(max_examples=10_000, deadline=None)
    @given(scalars)
    def test_agrees_with_float(self, s):
        f = float(s)
        assert s.sign() == (f > 0) - (f < 0)


class TestRing:
    @settings(max_examples=10_000, deadline=None)
    @given(scalars, scalars, scalars)
    def test_axioms(self, x, y, z):
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + (-x) == R(0)
        assert x * R(1) == x
        assert float(x * y) == pytest.approx(float(x) * float(y), abs=1e-9)

    def test_sqrt2_squared(self):
        assert R.sqrt2() * R.sqrt2() == 2
        assert R.inv_sqrt2() * R.sqrt2() == 1

    @pytest.mark.parametrize(
        "num, den, want",
        [
            (R(8), R(0, 2), R(0, 2)),  # 8 / 2√2 = 2√2
            (R(128), R(0, 8), R(0, 8)),
            (R(16), R(8), R(2)),
            (R(1, 1, 0), R(1, 1, 0), R(1)),
        ],
    )
    def test_division(self, num, den, want):
        assert num / den == want

    def test_division_not_representable(self):
        with pytest.raises(ValueError):
            R(16) / R(12)
        with pytest.raises(ZeroDivisionError):
            R(1) / R(0)

    @settings(max_examples=500, deadline=None)
    @given(scalars, st.integers(0, 4), st.integers(-3, 3), st.sampled_from([(1, 0), (0, 1), (1, 1), (3, 2)]))
    def test_division_inverts_multiplication(self, x, k, s, unit):
        # units of Z[√2] times powers of √2 are always invertible
        y = R(unit[0] * (1 if s >= 0 else -1), unit[1], k)
        assert (x * y) / y == x

    def test_ordering(self):
        assert R(3) > R(0, 2)  # 3 > 2√2
        assert R(0, 2) > R(2)
        assert abs(R(-3, 1)) == R(3, -1)
        assert max([R(2), R(0, 2), R(1, 1)]) == R(0, 2)

    def test_rendering(self):
        assert str(R(1, 1, 1)) == "(1+1√2)/√2^1"
        assert R(0, 2).pretty() == "2√2"
        assert R(8).pretty() == "8"
        assert R(1, 1, 1).to_dict() == {"a": 1, "b": 1, "k": 1, "approx": 1.707107}
        assert R.from_dict({"a": 0, "b": 8, "k": 0}) == R(0, 8)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            R(1).a = 2
