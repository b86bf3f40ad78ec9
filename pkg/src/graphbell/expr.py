"""Stabilizer expressions such as ``(1+g1)g2(1+g3)g4``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor ("*"? factor)*
    factor := INT | "g" INT | "(" expr ")"

``1`` is the identity; juxtaposition multiplies.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Union

from .graph import Graph, GraphError, add_vertex, generator
from .pauli import PauliPolynomial

MAX_LITERAL = 2**31 - 1


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        pointer = f"\n  {text}\n  {' ' * position}^"
        super().__init__(f"{message} at position {position}{pointer}")


class ExpressionIndexError(GraphError):
    """A generator index is outside the graph."""


@dataclass(frozen=True)
class Num:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Gen:
    index: int

    def __str__(self) -> str:
        return f"g{self.index}"


@dataclass(frozen=True)
class Sum:
    # (sign, term) pairs, sign in {+1, -1}
    terms: tuple

    def __str__(self) -> str:
        out = []
        for k, (sign, t) in enumerate(self.terms):
            if k:
                out.append("+" if sign > 0 else "-")
            elif sign < 0:
                out.append("-1*")
            out.append(f"({t})" if isinstance(t, Sum) else str(t))
        return "".join(out)


@dataclass(frozen=True)
class Prod:
    factors: tuple

    def __str__(self) -> str:
        return "".join(f"({f})" if isinstance(f, Sum) else _atom_text(f, k) for k, f in enumerate(self.factors))


def _atom_text(f, k: int) -> str:
    # keep "g1 2" from reading as "g12"
    text = str(f)
    return text if k == 0 or not isinstance(f, Num) else f"*{text}"


BellExpr = Union[Num, Gen, Sum, Prod]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<gen>g\s*\d+)|(?P<op>[-+*()]))")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastgroup)
        if m.lastgroup == "int":
            val = int(m.group("int"))
            if val > MAX_LITERAL:
                raise ExpressionSyntaxError("integer literal overflow", text, start)
            tokens.append(("int", val, start))
        elif m.lastgroup == "gen":
            idx = int(m.group("gen")[1:].strip())
            if idx > MAX_LITERAL:
                raise ExpressionSyntaxError("generator index overflow", text, start)
            tokens.append(("gen", idx, start))
        else:
            tokens.append((m.group("op"), None, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def kind(self) -> str:
        return self.tokens[self.i][0]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str):
        raise ExpressionSyntaxError(message, self.text, self.tokens[self.i][2])

    def expr(self) -> BellExpr:
        terms = [(1, self.term())]
        while self.kind in ("+", "-"):
            sign = 1 if self.take()[0] == "+" else -1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> BellExpr:
        factors = [self.factor()]
        while True:
            if self.kind == "*":
                self.take()
                factors.append(self.factor())
            elif self.kind in ("int", "gen", "("):
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def factor(self) -> BellExpr:
        kind, val, _ = self.tokens[self.i]
        if kind == "int":
            self.take()
            return Num(val)
        if kind == "gen":
            self.take()
            if val < 1:
                self.i -= 1
                self.fail("generator indices start at 1")
            return Gen(val)
        if kind == "(":
            self.take()
            inner = self.expr()
            if self.kind != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        if kind == "end":
            self.fail("unexpected end of expression")
        self.fail(f"unexpected {kind!r}")


def parse_expression(text: str) -> BellExpr:
    """Parse ``text`` into an expression tree; raises :class:`ExpressionSyntaxError`."""
    p = _Parser(text)
    tree = p.expr()
    if p.kind != "end":
        p.fail(f"unexpected {p.kind!r}")
    return tree


def max_generator_index(e: BellExpr) -> int:
    if isinstance(e, Gen):
        return e.index
    if isinstance(e, Num):
        return 0
    parts = e.factors if isinstance(e, Prod) else [t for _, t in e.terms]
    return max(max_generator_index(t) for t in parts)


def eval_expression(e: BellExpr | str, g: Graph) -> PauliPolynomial:
    """Substitute the graph's generators and expand into a Pauli polynomial."""
    if isinstance(e, str):
        e = parse_expression(e)
    top = max_generator_index(e)
    if top > g.n:
        raise ExpressionIndexError(f"g{top} used on a graph with {g.n} vertices")
    cache: dict[int, PauliPolynomial] = {}

    def ev(node) -> PauliPolynomial:
        if isinstance(node, Num):
            return PauliPolynomial.identity(g.n, node.value)
        if isinstance(node, Gen):
            if node.index not in cache:
                cache[node.index] = PauliPolynomial.from_string(generator(g, node.index))
            return cache[node.index]
        if isinstance(node, Prod):
            return reduce(lambda acc, f: acc * ev(f), node.factors[1:], ev(node.factors[0]))
        out = PauliPolynomial.zero(g.n)
        for sign, t in node.terms:
            out = out + ev(t).scale(sign)
        return out

    return ev(e)


def times(*factors: BellExpr | str) -> Prod:
    """Product of expressions (strings are parsed)."""
    parsed = [parse_expression(f) if isinstance(f, str) else f for f in factors]
    flat = []
    for f in parsed:
        flat.extend(f.factors if isinstance(f, Prod) else [f])
    return Prod(tuple(flat))


@dataclass(frozen=True)
class Extension:
    graph: Graph
    expression: BellExpr
    condition_met: bool


def add_qubit_extend(g: Graph, e: BellExpr | str, attach) -> Extension:
    """Attach a new qubit to ``attach`` and multiply ``e`` by ``(1 + g_new)``.

    ``condition_met`` reports whether every term of ``e`` (expanded on the new
    graph) acts nontrivially on the new qubit, which is what makes the
    A/B replacement there meaningful.
    """
    if isinstance(e, str):
        e = parse_expression(e)
    new_graph = add_vertex(g, attach)
    m = new_graph.n
    base = eval_expression(e, new_graph)
    bit = 1 << (m - 1)
    ok = bool(base) and all((x | z) & bit for (x, z), _ in base.items())
    new_expr = times(e, Sum(((1, Num(1)), (1, Gen(m)))))
    return Extension(new_graph, new_expr, ok)
