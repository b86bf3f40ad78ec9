"""Expectation values on graph states via stabilizer-group membership."""

from __future__ import annotations

from functools import lru_cache, reduce

from .graph import Graph, generators
from .pauli import DimensionError, NonHermitianError, PauliPolynomial, PauliString, pauli_mul
from .scalar import RootTwoScalar

NOT_MEMBER = 0


class StabilizerConsistencyError(RuntimeError):
    """A symplectic match came with an imaginary relative phase."""


class StabilizerBasis:
    """Generators of a graph state with their GF(2) rows in reduced echelon form.

    Each symplectic row is the integer ``x_mask | z_mask << n``. Every reduced
    row remembers which original generators it is built from (a bitmask
    over generator indices), so a decomposition found against the echelon
    rows maps straight back to a product of ``g_i``.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        self.generator_rows: tuple[PauliString, ...] = tuple(generators(graph))
        n = graph.n
        rows = [(p.x_mask | (p.z_mask << n), 1 << idx) for idx, p in enumerate(self.generator_rows)]
        pivots: list[tuple[int, int, int]] = []  # (pivot bit, row, combo)
        for vec, combo in rows:
            for bit, prow, pcombo in pivots:
                if vec >> bit & 1:
                    vec ^= prow
                    combo ^= pcombo
            if vec == 0:
                raise StabilizerConsistencyError("graph-state generators must be independent")
            bit = vec.bit_length() - 1
            # keep earlier pivots reduced against the new one
            pivots = [
                (b, r ^ vec, c ^ combo) if r >> bit & 1 else (b, r, c) for b, r, c in pivots
            ]
            pivots.append((bit, vec, combo))
        self.pivots: tuple[tuple[int, int, int], ...] = tuple(sorted(pivots, reverse=True))

    def decompose(self, p: PauliString) -> int | None:
        """Bitmask of generators whose product has p's symplectic part, or None."""
        if p.n != self.graph.n:
            raise DimensionError(f"{p.n}-qubit string against {self.graph.n}-qubit graph")
        vec = p.x_mask | (p.z_mask << p.n)
        combo = 0
        for bit, row, c in self.pivots:
            if vec >> bit & 1:
                vec ^= row
                combo ^= c
        return combo if vec == 0 else None

    def product(self, combo: int) -> PauliString:
        picked = [g for idx, g in enumerate(self.generator_rows) if combo >> idx & 1]
        return reduce(pauli_mul, picked, PauliString.identity(self.graph.n))


@lru_cache(maxsize=256)
def stabilizer_basis(graph: Graph) -> StabilizerBasis:
    return StabilizerBasis(graph)


def stab_membership(basis: StabilizerBasis, p: PauliString) -> int:
    """Return +1 or -1 if ``±p`` is in the stabilizer group, else ``NOT_MEMBER`` (0).

    The returned value equals the graph-state expectation of ``p``.
    """
    if not p.is_hermitian:
        raise NonHermitianError(f"{p} is not Hermitian")
    combo = basis.decompose(p)
    if combo is None:
        return NOT_MEMBER
    rel = (p.phase_exp - basis.product(combo).phase_exp) % 4
    if rel % 2:
        raise StabilizerConsistencyError(f"{p} matches a group element up to ±i")
    return 1 if rel == 0 else -1


def graph_expectation(basis: StabilizerBasis, poly: PauliPolynomial) -> RootTwoScalar:
    """Exact ``<G|poly|G>``: non-members contribute zero."""
    if poly.n != basis.graph.n:
        raise DimensionError(f"{poly.n}-qubit polynomial against {basis.graph.n}-qubit graph")
    total = RootTwoScalar(0)
    for (x, z), c in poly.items():
        s = stab_membership(basis, PauliString(poly.n, x, z, 0))
        if s:
            total = total + c * s
    return total
