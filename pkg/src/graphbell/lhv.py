"""Exact local-hidden-variable bounds of correlation polynomials.

The bound is ``max |value|`` over deterministic strategies (every label set
to ±1). Two exact solvers share one tie-break rule so they return the same
report: labels are put in a canonical order (sites by descending label
count, then site index, then label) and, among optimal strategies, the
lexicographically smallest ±1 tuple in that order wins (-1 before +1).

Internally values are kept as integer pairs ``(A, B)`` meaning
``(A + B√2) / √2^K`` for one common ``K``. Floating point is only used to
rank candidates: with ``|A|, |B| <= 2**20`` two distinct magnitudes differ
by at least ``1 / (5 * 2**20)``, far above ``_TOL``, and every winner is
re-checked with exact integer arithmetic.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .correlation import CorrelationPolynomial, ObservableLabel
from .scalar import SQRT2, RootTwoScalar, _numerator_sign

log = logging.getLogger(__name__)

MAX_LABELS = 40
AUTO_EXHAUSTIVE_LIMIT = 24
MAX_MAGNITUDE = 2**20
LOW_BITS = 12
_TOL = 1e-8

METHODS = ("exhaustive", "branch_and_bound", "auto")


class LabelCapExceeded(ValueError):
    pass


class IncompleteStrategy(ValueError):
    pass


@dataclass(frozen=True)
class Strategy:
    """Deterministic ±1 assignment to every label of a polynomial."""

    assignment: dict = field(hash=False)

    def __post_init__(self):
        bad = {lab: v for lab, v in self.assignment.items() if v not in (1, -1)}
        if bad:
            raise ValueError(f"strategy values must be ±1: {bad}")

    def __getitem__(self, label: ObservableLabel) -> int:
        return self.assignment[label]

    def as_tuple(self, order) -> tuple:
        return tuple(self.assignment[lab] for lab in order)

    def to_dict(self) -> dict:
        return {str(lab): v for lab, v in sorted(self.assignment.items())}


@dataclass(frozen=True)
class LhvReport:
    bound: RootTwoScalar
    argmax: Strategy
    strategies_explored: int
    method: str
    labels: tuple = ()

    def to_dict(self) -> dict:
        return {
            "bound": self.bound.to_dict(),
            "method": self.method,
            "strategies_explored": self.strategies_explored,
            "argmax": self.argmax.to_dict(),
        }


def strategy_value(c: CorrelationPolynomial, s: Strategy) -> RootTwoScalar:
    """Exact value of ``c`` under the deterministic strategy ``s``."""
    total = RootTwoScalar(0)
    for key, coeff in c.items():
        sign = 1
        for lab in key:
            try:
                sign *= s.assignment[lab]
            except KeyError:
                raise IncompleteStrategy(f"strategy does not assign {lab}") from None
        total = total + (coeff if sign > 0 else -coeff)
    return total


def canonical_labels(c: CorrelationPolynomial) -> tuple[ObservableLabel, ...]:
    by_site: dict[int, list] = {}
    for lab in c.labels():
        by_site.setdefault(lab.site, []).append(lab)
    sites = sorted(by_site, key=lambda s: (-len(by_site[s]), s))
    return tuple(lab for s in sites for lab in sorted(by_site[s]))


class _Problem:
    """Integer arrays describing ``c`` against a fixed label order."""

    def __init__(self, c: CorrelationPolynomial):
        self.poly = c
        self.order = canonical_labels(c)
        self.L = len(self.order)
        index = {lab: i for i, lab in enumerate(self.order)}
        items = list(c.items())
        self.K = max((coeff.k for _, coeff in items), default=0)
        A, B, masks, members = [], [], [], []
        for key, coeff in items:
            a, b = coeff._lifted(self.K)
            A.append(a)
            B.append(b)
            m = 0
            for lab in key:
                m |= 1 << (self.L - 1 - index[lab])
            masks.append(m)
            members.append([index[lab] for lab in key])
        if sum(map(abs, A)) + sum(map(abs, B)) > MAX_MAGNITUDE:
            raise OverflowError("coefficient magnitudes exceed the exact-ranking range (2**20)")
        self.A = np.array(A, dtype=np.float64)
        self.B = np.array(B, dtype=np.float64)
        self.C = self.A + SQRT2 * self.B
        self.masks = masks
        self.members = members
        self.T = len(items)

    def scalar(self, a: int, b: int) -> RootTwoScalar:
        return RootTwoScalar(a, b, self.K)

    def strategy(self, m: int) -> Strategy:
        return Strategy({lab: 1 if m >> (self.L - 1 - i) & 1 else -1 for i, lab in enumerate(self.order)})

    def exact_at(self, m: int) -> tuple[int, int]:
        a = b = 0
        inv = ~m
        for t in range(self.T):
            s = -1 if bin(self.masks[t] & inv).count("1") % 2 else 1
            a += s * int(self.A[t])
            b += s * int(self.B[t])
        return a, b


def _better(cand: tuple[int, int, int], best: tuple[int, int, int] | None) -> bool:
    """Order on (a, b, m): larger |a + b√2| first, then smaller m."""
    if best is None:
        return True
    ca, cb, cm = cand
    ba, bb, bm = best
    if _numerator_sign(ca, cb) < 0:
        ca, cb = -ca, -cb
    if _numerator_sign(ba, bb) < 0:
        ba, bb = -ba, -bb
    s = _numerator_sign(ca - ba, cb - bb)
    return s > 0 or (s == 0 and cm < bm)


def _merge(results):
    best = None
    for r in results:
        if r is not None and _better(r, best):
            best = r
    return best


def _parity(values: np.ndarray) -> np.ndarray:
    return np.bitwise_count(values) & 1


# -- exhaustive ------------------------------------------------------------


def _exhaustive_part(pb: _Problem, low: int, rest: int, prefix: int, s_low: np.ndarray):
    """Walk the ``rest`` free high bits (Gray order) under a fixed ``prefix``."""
    high_masks = np.array([m >> low for m in pb.masks], dtype=np.int64)
    H = prefix << rest
    sign = 1.0 - 2.0 * _parity(high_masks & ~np.int64(H))
    best = None
    prev = 0
    for step in range(1 << rest):
        g = step ^ (step >> 1)
        if step:
            flipped = (g ^ prev).bit_length() - 1
            sign[(high_masks >> flipped) & 1 == 1] *= -1.0
        prev = g
        vals_a = s_low @ (pb.A * sign)
        vals_b = s_low @ (pb.B * sign)
        mag = np.abs(vals_a + SQRT2 * vals_b)
        top = mag.max()
        j = int(np.flatnonzero(mag >= top - _TOL)[0])
        cand = (int(round(vals_a[j])), int(round(vals_b[j])), ((H | g) << low) | j)
        if _better(cand, best):
            best = cand
    return best


def _solve_exhaustive(pb: _Problem, threads: int):
    low = min(pb.L, LOW_BITS)
    high = pb.L - low
    js = np.arange(1 << low, dtype=np.int64)
    low_masks = np.array([m & ((1 << low) - 1) for m in pb.masks], dtype=np.int64)
    s_low = 1.0 - 2.0 * _parity(~js[:, None] & low_masks[None, :])
    split = min(high, max(threads - 1, 0).bit_length())
    rest = high - split
    prefixes = range(1 << split)
    if threads > 1 and split:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda p: _exhaustive_part(pb, low, rest, p, s_low), prefixes))
    else:
        results = [_exhaustive_part(pb, low, rest, p, s_low) for p in prefixes]
    return _merge(results), 1 << pb.L


# -- branch and bound ------------------------------------------------------


class _Tree:
    """Per-site factor tables and grouping used by the bound."""

    def __init__(self, pb: _Problem):
        self.pb = pb
        sites: list[list[int]] = []
        for i, lab in enumerate(pb.order):
            if sites and pb.order[sites[-1][0]].site == lab.site:
                sites[-1].append(i)
            else:
                sites.append([i])
        self.sites = sites
        T = pb.T
        # factor[d][u, t]: contribution of site d to term t under local choice u
        self.factors = []
        for labs in sites:
            c = len(labs)
            table = np.ones((1 << c, T))
            for t in range(T):
                hit = [labs.index(i) for i in pb.members[t] if i in labs]
                if hit:
                    pos = hit[0]
                    for u in range(1 << c):
                        table[u, t] = 1.0 if u >> (c - 1 - pos) & 1 else -1.0
            self.factors.append(table)
        # groups[d]: terms sharing the same labels on sites after d
        self.groups = []
        for d in range(len(sites)):
            later = {i for labs in sites[d + 1:] for i in labs}
            keys: dict[tuple, int] = {}
            gid = np.empty(T, dtype=np.int64)
            for t in range(T):
                gid[t] = keys.setdefault(tuple(i for i in pb.members[t] if i in later), len(keys))
            self.groups.append((gid, len(keys)))

    def search(self, first_choice: int | None = None):
        pb = self.pb
        state = {"best": None, "best_mag": -1.0, "nodes": 0}
        depth_total = len(self.sites)

        def visit(d: int, prod: np.ndarray, m: int):
            c = len(self.sites[d])
            choices = range(1 << c) if (d or first_choice is None) else (first_choice,)
            for u in choices:
                state["nodes"] += 1
                p = prod * self.factors[d][u]
                mm = (m << c) | u
                gid, ng = self.groups[d]
                upper = float(np.abs(np.bincount(gid, weights=pb.C * p, minlength=ng)).sum())
                if state["best"] is not None and upper < state["best_mag"] + _TOL:
                    continue
                if d + 1 == depth_total:
                    cand = (int(round(float(pb.A @ p))), int(round(float(pb.B @ p))), mm)
                    if _better(cand, state["best"]):
                        state["best"] = cand
                        state["best_mag"] = abs(cand[0] + SQRT2 * cand[1])
                else:
                    visit(d + 1, p, mm)

        if depth_total:
            visit(0, np.ones(pb.T), 0)
        return state["best"], state["nodes"]


def _solve_bnb(pb: _Problem, threads: int):
    tree = _Tree(pb)
    if not tree.sites:
        return None, 0
    first = range(1 << len(tree.sites[0]))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(tree.search, first))
    else:
        parts = [tree.search(u) for u in first]
    return _merge(r for r, _ in parts), sum(n for _, n in parts)


def lhv_bound(c: CorrelationPolynomial, method: str = "auto", threads: int = 1) -> LhvReport:
    """Maximum ``|value|`` of ``c`` over all deterministic strategies, exactly."""
    if method in ("bnb", "branch-and-bound"):
        method = "branch_and_bound"
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    pb = _Problem(c)
    if pb.L > MAX_LABELS:
        raise LabelCapExceeded(f"{pb.L} labels exceed the cap of {MAX_LABELS}")
    if method == "auto":
        method = "exhaustive" if pb.L <= AUTO_EXHAUSTIVE_LIMIT else "branch_and_bound"
    if pb.T == 0:
        return LhvReport(RootTwoScalar(0), Strategy({}), 1, method, ())
    if pb.L == 0:
        # only a constant term
        (_, coeff), = c.items()
        return LhvReport(abs(coeff), Strategy({}), 1, method, ())
    solve = _solve_exhaustive if method == "exhaustive" else _solve_bnb
    (a, b, m), explored = solve(pb, max(1, threads))
    if (a, b) != pb.exact_at(m):
        raise ArithmeticError("solver winner failed exact re-evaluation")
    value = pb.scalar(a, b)
    log.debug("lhv_bound %s: L=%d T=%d explored=%d bound=%s", method, pb.L, pb.T, explored, value)
    return LhvReport(abs(value), pb.strategy(m), explored, method, pb.order)


def violation(quantum: RootTwoScalar, bound: RootTwoScalar) -> RootTwoScalar:
    """Exact ratio quantum / bound."""
    return quantum / bound
