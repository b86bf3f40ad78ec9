"""Simple undirected graphs on vertices ``1..n`` and their stabilizer generators."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .pauli import PauliString


class GraphError(ValueError):
    pass


def _edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Vertices are 1-based; ``edges`` holds sorted pairs ``(i, j)`` with ``i < j``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        for e in self.edges:
            i, j = e
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if i > j:
                raise GraphError(f"edge {e} is not normalized")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise GraphError(f"edge {e} out of range 1..{self.n}")

    def neighbors(self, i: int) -> frozenset:
        self._check_vertex(i)
        return frozenset(b if a == i else a for a, b in self.edges if i in (a, b))

    def adjacency_mask(self, i: int) -> int:
        m = 0
        for j in self.neighbors(i):
            m |= 1 << (j - 1)
        return m

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def _check_vertex(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.n):
            raise GraphError(f"vertex {i} out of range 1..{self.n}")

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> Graph:
        return graph_build(int(d["n"]), [tuple(e) for e in d.get("edges", [])])

    def relabel(self, perm: dict[int, int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]`` (a bijection on 1..n)."""
        if sorted(perm) != list(range(1, self.n + 1)) or sorted(perm.values()) != list(range(1, self.n + 1)):
            raise GraphError("relabeling must be a permutation of 1..n")
        return Graph(self.n, frozenset(_edge(perm[i], perm[j]) for i, j in self.edges))

    def __str__(self) -> str:
        body = ",".join(f"{i}{j}" if self.n < 10 else f"{i}-{j}" for i, j in self.sorted_edges())
        return f"Graph(n={self.n}, {{{body}}})"


def graph_build(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Validate and build a graph; duplicates (in either orientation) are errors."""
    if not isinstance(n, int) or n < 1:
        raise GraphError(f"invalid vertex count {n!r}")
    seen = set()
    for pair in edges:
        if len(pair) != 2:
            raise GraphError(f"edge {pair!r} must have two endpoints")
        i, j = int(pair[0]), int(pair[1])
        if i == j:
            raise GraphError(f"self-loop at vertex {i}")
        for v in (i, j):
            if not 1 <= v <= n:
                raise GraphError(f"vertex {v} out of range 1..{n}")
        e = _edge(i, j)
        if e in seen:
            raise GraphError(f"duplicate edge {e}")
        seen.add(e)
    return Graph(n, frozenset(seen))


def graph_family(name: str, n: int) -> Graph:
    """Named families: ``star`` (center 1), ``line``, ``ring`` and the five-vertex ``y5``."""
    if name == "y5":
        if n != 5:
            raise GraphError("y5 has exactly 5 vertices")
        return graph_build(5, [(1, 2), (2, 3), (3, 4), (2, 5)])
    if name not in ("star", "line", "ring"):
        raise GraphError(f"unknown graph family {name!r}")
    if not isinstance(n, int) or n < 2:
        raise GraphError(f"{name} needs n >= 2, got {n!r}")
    if name == "star":
        return graph_build(n, [(1, k) for k in range(2, n + 1)])
    edges = [(k, k + 1) for k in range(1, n)]
    if name == "ring":
        if n < 3:
            raise GraphError("ring needs n >= 3")
        edges.append((1, n))
    return graph_build(n, edges)


def generator(g: Graph, i: int) -> PauliString:
    """X on vertex ``i`` and Z on each neighbor."""
    g._check_vertex(i)
    return PauliString(g.n, 1 << (i - 1), g.adjacency_mask(i), 0)


def generators(g: Graph) -> list[PauliString]:
    return [generator(g, i) for i in range(1, g.n + 1)]


def local_complement(g: Graph, i: int) -> Graph:
    """Toggle every edge between two neighbors of ``i``."""
    nb = sorted(g.neighbors(i))
    edges = set(g.edges)
    for a in range(len(nb)):
        for b in range(a + 1, len(nb)):
            edges ^= {(nb[a], nb[b])}
    return Graph(g.n, frozenset(edges))


def add_vertex(g: Graph, attach: Iterable[int]) -> Graph:
    """New vertex ``n + 1`` joined to every vertex in ``attach``."""
    attach = sorted(set(attach))
    if not attach:
        raise GraphError("attach set must be nonempty")
    for v in attach:
        g._check_vertex(v)
    return Graph(g.n + 1, g.edges | frozenset((v, g.n + 1) for v in attach))


def disjoint_union(*graphs: Graph) -> Graph:
    """Concatenate graphs, shifting labels of later ones."""
    edges = set()
    offset = 0
    for h in graphs:
        edges |= {(i + offset, j + offset) for i, j in h.edges}
        offset += h.n
    return Graph(offset, frozenset(edges))
