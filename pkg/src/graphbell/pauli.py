"""Pauli strings in symplectic bit form and exact weighted sums of them.

Qubit ``q`` (1-based) is stored at bit ``q - 1`` of ``x_mask``/``z_mask``.
A :class:`PauliString` is ``i**phase_exp`` times the tensor product of the
textbook matrices named by its letters, so ``(x, z) = (1, 1)`` is the
Hermitian ``Y`` and Hermitian strings carry ``phase_exp`` 0 or 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .scalar import ONE, RootTwoScalar

LETTERS = "IXZY"  # indexed by x + 2*z


class DimensionError(ValueError):
    """Operands act on different numbers of qubits."""


class NonHermitianError(ValueError):
    """An operation produced or received a non-Hermitian operator."""


def _popcount(v: int) -> int:
    return bin(v).count("1")


def letter_at(x_mask: int, z_mask: int, q: int) -> str:
    """Letter ('I', 'X', 'Y', 'Z') on 1-based qubit ``q``."""
    bit = q - 1
    return LETTERS[((x_mask >> bit) & 1) + 2 * ((z_mask >> bit) & 1)]


def letters_of(n: int, x_mask: int, z_mask: int) -> str:
    return "".join(letter_at(x_mask, z_mask, q) for q in range(1, n + 1))


def _product_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    # sigma(x, z) = i^{xz} X^x Z^z per qubit; moving Z^{z1} past X^{x2}
    # costs (-1)^{z1 x2}.
    x3, z3 = x1 ^ x2, z1 ^ z2
    return (
        _popcount(x1 & z1) + _popcount(x2 & z2) + 2 * _popcount(z1 & x2) - _popcount(x3 & z3)
    ) % 4


@dataclass(frozen=True)
class PauliString:
    n: int
    x_mask: int
    z_mask: int
    phase_exp: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        full = (1 << self.n) - 1
        if self.x_mask & ~full or self.z_mask & ~full or self.x_mask < 0 or self.z_mask < 0:
            raise ValueError(f"masks exceed {self.n} qubits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n, 0, 0, 0)

    @classmethod
    def from_letters(cls, text: str) -> PauliString:
        """Parse e.g. ``"-ZYXY"``, ``"iXZ"``, ``"ZX1X"`` (``1`` is identity)."""
        phase = 0
        s = text.strip()
        if s.startswith("-"):
            phase, s = 2, s[1:]
        elif s.startswith("+"):
            s = s[1:]
        if s.startswith("i"):
            phase, s = phase + 1, s[1:]
        x = z = 0
        for q, ch in enumerate(s):
            ch = ch.upper()
            if ch in "I1":
                continue
            if ch not in "XYZ":
                raise ValueError(f"bad Pauli letter {ch!r} in {text!r}")
            if ch in "XY":
                x |= 1 << q
            if ch in "ZY":
                z |= 1 << q
        return cls(len(s), x, z, phase)

    @classmethod
    def single(cls, n: int, q: int, letter: str) -> PauliString:
        s = ["I"] * n
        s[q - 1] = letter
        return cls.from_letters("".join(s))

    @property
    def letters(self) -> str:
        return letters_of(self.n, self.x_mask, self.z_mask)

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    @property
    def sign(self) -> int:
        if not self.is_hermitian:
            raise NonHermitianError(f"{self} has an imaginary phase")
        return 1 if self.phase_exp == 0 else -1

    def __mul__(self, other: PauliString) -> PauliString:
        return pauli_mul(self, other)

    def __neg__(self) -> PauliString:
        return PauliString(self.n, self.x_mask, self.z_mask, self.phase_exp + 2)

    def commutes_with(self, other: PauliString) -> bool:
        return (_popcount(self.x_mask & other.z_mask) + _popcount(self.z_mask & other.x_mask)) % 2 == 0

    def render(self, identity: str = "1") -> str:
        prefix = ("", "i", "-", "-i")[self.phase_exp]
        return prefix + self.letters.replace("I", identity)

    def __str__(self) -> str:
        return self.render()


def pauli_mul(p: PauliString, q: PauliString) -> PauliString:
    """Product ``p·q`` with the accumulated ``i**m`` phase."""
    if p.n != q.n:
        raise DimensionError(f"cannot multiply {p.n}-qubit and {q.n}-qubit strings")
    phase = p.phase_exp + q.phase_exp + _product_phase(p.x_mask, p.z_mask, q.x_mask, q.z_mask)
    return PauliString(p.n, p.x_mask ^ q.x_mask, p.z_mask ^ q.z_mask, phase)


Key = tuple  # (x_mask, z_mask)


class PauliPolynomial:
    """Finite real combination of Hermitian Pauli strings.

    Keys are ``(x_mask, z_mask)`` naming the phase-free Hermitian string; any
    sign is folded into the :class:`RootTwoScalar` coefficient. Instances are
    treated as immutable.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Key, RootTwoScalar] | None = None):
        self.n = n
        full = (1 << n) - 1
        clean = {}
        for key, c in (terms or {}).items():
            x, z = key
            if x & ~full or z & ~full:
                raise ValueError(f"term {key} exceeds {n} qubits")
            c = RootTwoScalar.coerce(c)
            if not c.is_zero():
                clean[(x, z)] = c
        self._terms = clean

    @classmethod
    def identity(cls, n: int, coeff: int | RootTwoScalar = 1) -> PauliPolynomial:
        return cls(n, {(0, 0): RootTwoScalar.coerce(coeff)})

    @classmethod
    def zero(cls, n: int) -> PauliPolynomial:
        return cls(n)

    @classmethod
    def from_string(cls, p: PauliString, coeff: int | RootTwoScalar = 1) -> PauliPolynomial:
        c = RootTwoScalar.coerce(coeff)
        return cls(p.n, {(p.x_mask, p.z_mask): c * p.sign})

    @classmethod
    def from_terms(cls, items: Iterable[tuple[int | RootTwoScalar, str]]) -> PauliPolynomial:
        """Build from ``(coeff, "ZX1X")`` pairs; letter strings may carry a sign."""
        out = None
        for coeff, text in items:
            term = cls.from_string(PauliString.from_letters(text), coeff)
            out = term if out is None else out + term
        if out is None:
            raise ValueError("from_terms needs at least one term")
        return out

    @property
    def terms(self) -> dict[Key, RootTwoScalar]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, RootTwoScalar]]:
        """Terms in deterministic order (ascending masks)."""
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliPolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def __add__(self, other: PauliPolynomial) -> PauliPolynomial:
        return poly_combine(self, other, ONE)

    def __sub__(self, other: PauliPolynomial) -> PauliPolynomial:
        return poly_combine(self, other, -ONE)

    def __neg__(self) -> PauliPolynomial:
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, PauliPolynomial):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: int | RootTwoScalar) -> PauliPolynomial:
        c = RootTwoScalar.coerce(c)
        return PauliPolynomial(self.n, {k: v * c for k, v in self._terms.items()})

    def strings(self) -> list[tuple[RootTwoScalar, PauliString]]:
        return [(c, PauliString(self.n, x, z, 0)) for (x, z), c in self.items()]

    def render_lines(self) -> list[str]:
        """One line per term: signed letters with the magnitude when it is not 1."""
        lines = []
        for (x, z), c in self.items():
            sign = "-" if c.sign() < 0 else ""
            mag = abs(c)
            word = letters_of(self.n, x, z).replace("I", "1")
            lines.append(f"{sign}{word}" if mag == ONE else f"{sign}{mag.pretty()} {word}")
        return lines

    def __repr__(self) -> str:
        body = " ".join(self.render_lines()) or "0"
        return f"PauliPolynomial(n={self.n}: {body})"


def poly_combine(p: PauliPolynomial, q: PauliPolynomial, c: int | RootTwoScalar) -> PauliPolynomial:
    """``p + c·q`` with zero coefficients pruned."""
    if p.n != q.n:
        raise DimensionError(f"cannot combine {p.n}-qubit and {q.n}-qubit polynomials")
    c = RootTwoScalar.coerce(c)
    out = p.terms
    for key, v in q._terms.items():
        out[key] = out.get(key, RootTwoScalar(0)) + c * v
    return PauliPolynomial(p.n, out)


def poly_mul(p: PauliPolynomial, q: PauliPolynomial) -> PauliPolynomial:
    """Distributive product; raises if the result is not Hermitian.

    Odd phases from anticommuting pairs are collected separately; they must
    cancel (as they do whenever ``p`` and ``q`` commute).
    """
    if p.n != q.n:
        raise DimensionError(f"cannot multiply {p.n}-qubit and {q.n}-qubit polynomials")
    real: dict[Key, RootTwoScalar] = {}
    imag: dict[Key, RootTwoScalar] = {}
    for (x1, z1), c1 in p._terms.items():
        for (x2, z2), c2 in q._terms.items():
            ph = _product_phase(x1, z1, x2, z2)
            key = (x1 ^ x2, z1 ^ z2)
            c = c1 * c2
            if ph >= 2:
                c = -c
            bucket = imag if ph % 2 else real
            bucket[key] = bucket.get(key, RootTwoScalar(0)) + c
    leftover = {k: v for k, v in imag.items() if not v.is_zero()}
    if leftover:
        raise NonHermitianError(
            f"product has {len(leftover)} imaginary term(s); the factors do not commute"
        )
    return PauliPolynomial(p.n, real)
