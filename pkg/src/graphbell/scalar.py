"""Exact numbers of the form (a + b√2) / √2^k with integer a, b."""

from __future__ import annotations

import math
from functools import total_ordering

SQRT2 = math.sqrt(2.0)


@total_ordering
class RootTwoScalar:
    """Immutable element of Z[√2][1/√2].

    Stored in canonical form: ``k == 0`` or ``a`` odd. A numerator
    ``a + b√2`` is divisible by √2 inside Z[√2] exactly when ``a`` is even,
    since ``(a + b√2)/√2 = b + (a/2)√2``.

    Examples
    --------
    >>> RootTwoScalar(2, 0, 2)
    RootTwoScalar(1, 0, 0)
    >>> str(RootTwoScalar(1, 1, 1))
    '(1+1√2)/√2^1'
    """

    __slots__ = ("_a", "_b", "_k")

    def __init__(self, a: int = 0, b: int = 0, k: int = 0) -> None:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (a, b, k)):
            raise TypeError("RootTwoScalar components must be int")
        if k < 0:
            raise ValueError("k must be non-negative")
        a, b, k = _normalize(a, b, k)
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_k", k)

    def __setattr__(self, name, value):
        raise AttributeError("RootTwoScalar is immutable")

    @property
    def a(self) -> int:
        return self._a

    @property
    def b(self) -> int:
        return self._b

    @property
    def k(self) -> int:
        return self._k

    @classmethod
    def coerce(cls, x: int | RootTwoScalar) -> RootTwoScalar:
        if isinstance(x, RootTwoScalar):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return cls(x, 0, 0)
        raise TypeError(f"cannot convert {type(x).__name__} to RootTwoScalar")

    @classmethod
    def sqrt2(cls) -> RootTwoScalar:
        return cls(0, 1, 0)

    @classmethod
    def inv_sqrt2(cls) -> RootTwoScalar:
        return cls(1, 0, 1)

    # -- exact queries -------------------------------------------------

    def sign(self) -> int:
        return _numerator_sign(self._a, self._b)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def __abs__(self) -> RootTwoScalar:
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return (self._a + self._b * SQRT2) / SQRT2**self._k

    def to_dict(self) -> dict:
        return {"a": self._a, "b": self._b, "k": self._k, "approx": round(float(self), 6)}

    @classmethod
    def from_dict(cls, d: dict) -> RootTwoScalar:
        return cls(int(d["a"]), int(d.get("b", 0)), int(d.get("k", 0)))

    # -- arithmetic ----------------------------------------------------

    def _lifted(self, k: int) -> tuple[int, int]:
        """Numerator over the denominator √2^k, for k >= self.k."""
        a, b = self._a, self._b
        for _ in range(k - self._k):
            a, b = 2 * b, a
        return a, b

    def __add__(self, other):
        try:
            other = RootTwoScalar.coerce(other)
        except TypeError:
            return NotImplemented
        k = max(self._k, other._k)
        a1, b1 = self._lifted(k)
        a2, b2 = other._lifted(k)
        return RootTwoScalar(a1 + a2, b1 + b2, k)

    __radd__ = __add__

    def __neg__(self) -> RootTwoScalar:
        return RootTwoScalar(-self._a, -self._b, self._k)

    def __sub__(self, other):
        try:
            other = RootTwoScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RootTwoScalar.coerce(other)
        except TypeError:
            return NotImplemented
        a = self._a * other._a + 2 * self._b * other._b
        b = self._a * other._b + self._b * other._a
        return RootTwoScalar(a, b, self._k + other._k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = RootTwoScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero RootTwoScalar")
        # x/y = x * conj(num_y) * √2^k_y / norm(num_y); only exact when the
        # norm is ±2^j, which is then absorbed into the denominator.
        norm = other._a**2 - 2 * other._b**2
        j = abs(norm).bit_length() - 1
        if abs(norm) != 1 << j:
            raise ValueError(f"{self} / {other} is not representable exactly")
        a = self._a * other._a - 2 * self._b * other._b
        b = self._b * other._a - self._a * other._b
        if norm < 0:
            a, b = -a, -b
        k = self._k + 2 * j - other._k
        while k < 0:
            a, b = 2 * b, a
            k += 1
        return RootTwoScalar(a, b, k)

    def __rtruediv__(self, other):
        return RootTwoScalar.coerce(other) / self

    # -- comparison ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = RootTwoScalar(other)
        if not isinstance(other, RootTwoScalar):
            return NotImplemented
        return (self._a, self._b, self._k) == (other._a, other._b, other._k)

    def __lt__(self, other) -> bool:
        try:
            other = RootTwoScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        return hash((self._a, self._b, self._k))

    def __repr__(self) -> str:
        return f"RootTwoScalar({self._a}, {self._b}, {self._k})"

    def __str__(self) -> str:
        return f"({self._a}{self._b:+d}√2)/√2^{self._k}"

    def pretty(self) -> str:
        """Short human form such as ``8``, ``2√2`` or ``(1+√2)/√2``."""
        if self._k == 0 and self._b == 0:
            return str(self._a)
        if self._k == 0 and self._a == 0:
            return "√2" if self._b == 1 else f"{self._b}√2"
        return f"{self} ≈ {float(self):.6f}"


def _normalize(a: int, b: int, k: int) -> tuple[int, int, int]:
    if a == 0 and b == 0:
        return 0, 0, 0
    while k > 0 and a % 2 == 0:
        a, b, k = b, a // 2, k - 1
    return a, b, k


def _numerator_sign(a: int, b: int) -> int:
    """Exact sign of a + b√2."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == sb or sb == 0:
        return sa
    if sa == 0:
        return sb
    # opposite signs: the part with the larger square wins
    diff = a * a - 2 * b * b
    return sa if diff > 0 else sb


def scalar_normalize(s: RootTwoScalar) -> RootTwoScalar:
    """Return the canonical form of ``s`` (construction already normalizes)."""
    return RootTwoScalar(s.a, s.b, s.k)


def scalar_sign(s: RootTwoScalar) -> int:
    return s.sign()


ZERO = RootTwoScalar(0)
ONE = RootTwoScalar(1)
