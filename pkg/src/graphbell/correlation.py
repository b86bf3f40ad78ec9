"""Bell expressions over abstract per-site ±1 observables.

A :class:`CorrelationPolynomial` is what a local-hidden-variable model
sees: each distinct :class:`ObservableLabel` is an independent setting.
The A/B replacement changes which settings are declared, not the
Hilbert-space operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .graph import Graph
from .pauli import PauliPolynomial, PauliString, letter_at
from .scalar import RootTwoScalar

AXES = ("X", "Y", "Z")


class SubstitutionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class ObservableLabel:
    """Setting at one site: a Pauli axis, or ``A``/``B`` = (P ± Q)/√2."""

    site: int
    kind: str
    axes: tuple = ()

    def __post_init__(self):
        if self.kind in AXES:
            if self.axes:
                raise ValueError("axis labels carry no axis pair")
        elif self.kind in ("A", "B"):
            if len(self.axes) != 2 or self.axes[0] == self.axes[1] or not set(self.axes) <= set(AXES):
                raise ValueError(f"rotated label needs two distinct axes, got {self.axes!r}")
        else:
            raise ValueError(f"unknown label kind {self.kind!r}")

    @classmethod
    def axis(cls, site: int, letter: str) -> ObservableLabel:
        return cls(site, letter)

    @classmethod
    def rotated(cls, site: int, p: str, q: str, variant: str) -> ObservableLabel:
        return cls(site, variant, (p, q))

    @property
    def is_rotated(self) -> bool:
        return bool(self.axes)

    def __str__(self) -> str:
        if self.axes:
            return f"{self.kind}{self.site}[{self.axes[0]}{self.axes[1]}]"
        return f"{self.kind}{self.site}"


Factors = tuple  # sorted tuple of ObservableLabel, at most one per site


class CorrelationPolynomial:
    """Weighted sum of products of site observables; sites absent from a term carry 1."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Iterable[tuple[RootTwoScalar, Iterable[ObservableLabel]]] = ()):
        self.n = n
        merged: dict[Factors, RootTwoScalar] = {}
        for coeff, labels in terms:
            key = self._key(labels)
            merged[key] = merged.get(key, RootTwoScalar(0)) + RootTwoScalar.coerce(coeff)
        self._terms = {k: v for k, v in merged.items() if not v.is_zero()}

    def _key(self, labels) -> Factors:
        key = tuple(sorted(labels))
        sites = [lab.site for lab in key]
        if len(set(sites)) != len(sites):
            raise ValueError(f"term has two factors on one site: {key}")
        for s in sites:
            if not 1 <= s <= self.n:
                raise ValueError(f"site {s} out of range 1..{self.n}")
        return key

    def items(self) -> Iterator[tuple[Factors, RootTwoScalar]]:
        return iter(sorted(self._terms.items(), key=lambda kv: _term_order(kv[0])))

    @property
    def terms(self) -> list[tuple[RootTwoScalar, dict[int, ObservableLabel]]]:
        return [(c, {lab.site: lab for lab in key}) for key, c in self.items()]

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CorrelationPolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def labels(self) -> set[ObservableLabel]:
        return {lab for key in self._terms for lab in key}

    def labels_at(self, site: int) -> set[ObservableLabel]:
        return {lab for lab in self.labels() if lab.site == site}

    def coefficient_norm(self) -> RootTwoScalar:
        """Sum of absolute coefficients, an upper bound on any value."""
        total = RootTwoScalar(0)
        for c in self._terms.values():
            total = total + abs(c)
        return total

    def render_lines(self) -> list[str]:
        lines = []
        for key, c in self.items():
            word = " ".join(str(lab) for lab in key) or "1"
            lines.append(f"{c.pretty():>24}  {word}")
        return lines

    def __repr__(self) -> str:
        return f"CorrelationPolynomial(n={self.n}, terms={len(self)}, labels={len(self.labels())})"


def _term_order(key: Factors):
    return tuple((lab.site, lab.kind, lab.axes) for lab in key)


def to_correlation_polynomial(p: PauliPolynomial) -> CorrelationPolynomial:
    """Read each non-identity letter as the axis setting at its site."""
    terms = []
    for (x, z), c in p.items():
        labs = []
        for q in range(1, p.n + 1):
            letter = letter_at(x, z, q)
            if letter != "I":
                labs.append(ObservableLabel.axis(q, letter))
        terms.append((c, labs))
    return CorrelationPolynomial(p.n, terms)


def ardehali_substitute(c: CorrelationPolynomial, site: int, p: str, q: str) -> CorrelationPolynomial:
    """Replace P -> (A + B)/√2 and Q -> (A - B)/√2 at ``site``.

    A = (P + Q)/√2 and B = (P - Q)/√2 become two new independent settings;
    the operator represented is unchanged.
    """
    if p == q or p not in AXES or q not in AXES:
        raise SubstitutionError(f"need two distinct Pauli axes, got {p!r}, {q!r}")
    if not 1 <= site <= c.n:
        raise SubstitutionError(f"site {site} out of range 1..{c.n}")
    lab_p = ObservableLabel.axis(site, p)
    lab_q = ObservableLabel.axis(site, q)
    lab_a = ObservableLabel.rotated(site, p, q, "A")
    lab_b = ObservableLabel.rotated(site, p, q, "B")
    half = RootTwoScalar.inv_sqrt2()
    out = []
    for key, coeff in c.items():
        at_site = [lab for lab in key if lab.site == site]
        if not at_site:
            out.append((coeff, key))
            continue
        lab = at_site[0]
        rest = [x for x in key if x.site != site]
        if lab == lab_p:
            out.append((coeff * half, rest + [lab_a]))
            out.append((coeff * half, rest + [lab_b]))
        elif lab == lab_q:
            out.append((coeff * half, rest + [lab_a]))
            out.append((-coeff * half, rest + [lab_b]))
        else:
            word = " ".join(str(x) for x in key)
            raise SubstitutionError(f"term {coeff.pretty()} {word} carries {lab} at site {site}, not {p} or {q}")
    return CorrelationPolynomial(c.n, out)


# letter -> (sign, image) for the local Clifford of a local complementation
_LC_CENTER = {"X": (1, "X"), "Y": (1, "Z"), "Z": (-1, "Y")}
_LC_NEIGHBOR = {"X": (-1, "Y"), "Y": (1, "X"), "Z": (1, "Z")}


def lc_letter_map(g: Graph, i: int, q: int, letter: str) -> tuple[int, str]:
    """Image of a single-qubit letter under the local complementation at ``i``."""
    if letter == "I":
        return 1, "I"
    if q == i:
        return _LC_CENTER[letter]
    if q in g.neighbors(i):
        return _LC_NEIGHBOR[letter]
    return 1, letter


def clifford_lc_transform(p: PauliPolynomial, i: int, g: Graph) -> PauliPolynomial:
    """Conjugate ``p`` by the local unitary realizing ``local_complement(g, i)``.

    ``g`` is the graph before complementation.
    """
    if p.n != g.n:
        raise ValueError(f"{p.n}-qubit polynomial on a {g.n}-vertex graph")
    g._check_vertex(i)
    neighbors = g.neighbors(i)
    out = {}
    for (x, z), c in p.items():
        sign = 1
        word = []
        for q in range(1, p.n + 1):
            letter = letter_at(x, z, q)
            if letter != "I" and (q == i or q in neighbors):
                s, letter = (_LC_CENTER if q == i else _LC_NEIGHBOR)[letter]
                sign *= s
            word.append(letter)
        image = PauliString.from_letters("".join(word))
        key = (image.x_mask, image.z_mask)
        out[key] = out.get(key, RootTwoScalar(0)) + c * sign
    return PauliPolynomial(p.n, out)


def clifford_lc_string(s: PauliString, i: int, g: Graph) -> PauliString:
    """Same map on a single (possibly signed) Pauli string."""
    poly = clifford_lc_transform(PauliPolynomial.from_string(s), i, g)
    (key, c), = poly.items()
    return PauliString(s.n, key[0], key[1], 0 if c.sign() > 0 else 2)
