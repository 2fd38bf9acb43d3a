"""Exact anti-Ramsey numbers for tiny (n, p) by branch and bound.

Edges are colored in colex order and every assignment is kept in
restricted-growth form (edge i gets an existing color or exactly the next fresh
id), so each edge partition is visited once.  A partial assignment is cut as
soon as the newest edge closes a rainbow family member with earlier edges, or
when even a fresh color on every remaining edge cannot beat the incumbent.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Optional

from .errors import ParameterError
from .hypercore import Coloring, build_coloring
from .patterns import CANCELLATIVE, F4, F5, O, canonical_kind, find_rainbow, members_by_last_edge

PROVED = "Proved"
TIMED_OUT = "TimedOut"

SOLVER_FAMILIES = (CANCELLATIVE, F4, F5, O)
DEFAULT_EDGE_CAP = 64


@dataclass
class Budget:
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass
class SolveResult:
    value: int
    witness: Coloring
    status: str
    nodes: int
    elapsed: float
    family: str = ""
    n: int = 0
    p: int = 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "family": self.family,
            "value": self.value,
            "status": self.status,
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 6),
        }


class _BudgetExceeded(Exception):
    pass


@dataclass
class _Search:
    m: int
    checks: list  # per edge i: tuple of (j, k) pairs with j < k < i
    budget: Budget
    nodes: int = 0
    t0: float = field(default_factory=time.perf_counter)

    def tick(self) -> None:
        self.nodes += 1
        b = self.budget
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            raise _BudgetExceeded
        if b.max_seconds is not None and (self.nodes & 0x3FF) == 0:
            if time.perf_counter() - self.t0 > b.max_seconds:
                raise _BudgetExceeded


def _prepare(n: int, p: int, family: Optional[str], edge_cap: int):
    if not 2 <= p <= n:
        raise ParameterError(f"need n >= p >= 2, got n={n}, p={p}")
    m = comb(n, p)
    if m > edge_cap:
        raise ParameterError(f"C({n},{p}) = {m} edges exceeds the cap of {edge_cap}")
    if family is None:
        return m, [()] * m
    family = canonical_kind(family)
    if family not in SOLVER_FAMILIES:
        raise ParameterError(f"solver families are {SOLVER_FAMILIES}, not {family}")
    return m, [tuple(x) for x in members_by_last_edge(n, p, family)]


def _conflict(colors: list[int], pairs, c: int) -> bool:
    for j, k in pairs:
        cj = colors[j]
        if cj == c:
            continue
        ck = colors[k]
        if ck != c and ck != cj:
            return True
    return False


def solve_anti_ramsey(
    n: int,
    p: int,
    family: str,
    budget: Optional[Budget] = None,
    edge_cap: int = DEFAULT_EDGE_CAP,
    incumbent: Optional[Coloring] = None,
) -> SolveResult:
    """Maximum number of colors on K_n^(p) with no rainbow member of ``family``.

    ``incumbent`` optionally seeds the search with a known feasible coloring;
    it only tightens the bound and never changes a Proved value.
    """
    family = canonical_kind(family)
    m, checks = _prepare(n, p, family, edge_cap)
    budget = budget or Budget()
    search = _Search(m, checks, budget)

    best_val = 1
    best_assign = [0] * m
    if incumbent is not None:
        if (incumbent.n, incumbent.p) != (n, p):
            raise ParameterError("incumbent has the wrong shape")
        if find_rainbow(incumbent, family) is not None:
            raise ParameterError("incumbent contains a rainbow member of the family")
        best_val, best_assign = incumbent.k, incumbent.assign.tolist()

    colors = [-1] * m

    def dfs(i: int, k: int) -> None:
        nonlocal best_val, best_assign
        search.tick()
        if i == m:
            if k > best_val:
                best_val, best_assign = k, colors.copy()
            return
        pairs = checks[i]
        # fresh color first: pushes the incumbent up early
        if k + (m - i) > best_val:
            colors[i] = k
            if not _conflict(colors, pairs, k):
                dfs(i + 1, k + 1)
        if k + (m - i - 1) > best_val:
            for c in range(k):
                colors[i] = c
                if not _conflict(colors, pairs, c):
                    dfs(i + 1, k)
        colors[i] = -1

    status = PROVED
    try:
        if m:
            colors[0] = 0
            dfs(1, 1)
    except _BudgetExceeded:
        status = TIMED_OUT
    elapsed = time.perf_counter() - search.t0
    witness = build_coloring(n, p, best_assign)
    return SolveResult(best_val, witness, status, search.nodes, elapsed, family, n, p)


def enumerate_colorings(
    n: int,
    p: int,
    family: Optional[str] = None,
    min_colors: int = 1,
    exact_colors: Optional[int] = None,
    budget: Optional[Budget] = None,
    edge_cap: int = DEFAULT_EDGE_CAP,
) -> Iterator[list[int]]:
    """Yield restricted-growth assignments with no rainbow ``family`` member.

    With ``family=None`` and no color constraints this is a plain set-partition
    enumerator and yields Bell(C(n,p)) assignments.
    """
    m, checks = _prepare(n, p, family, edge_cap)
    search = _Search(m, checks, budget or Budget())
    lo = exact_colors if exact_colors is not None else min_colors
    hi = exact_colors if exact_colors is not None else m
    colors = [-1] * m

    def dfs(i: int, k: int):
        search.tick()
        if i == m:
            if k >= lo:
                yield colors.copy()
            return
        pairs = checks[i]
        if k < hi and k + (m - i) >= lo:
            colors[i] = k
            if not _conflict(colors, pairs, k):
                yield from dfs(i + 1, k + 1)
        if k + (m - i - 1) >= lo:
            for c in range(k):
                colors[i] = c
                if not _conflict(colors, pairs, c):
                    yield from dfs(i + 1, k)
        colors[i] = -1

    if m == 0:
        return
    colors[0] = 0
    try:
        yield from dfs(1, 1)
    except _BudgetExceeded:
        raise TimeoutError(f"enumeration budget exhausted after {search.nodes} nodes") from None


@dataclass
class StructureReport:
    n: int
    p: int
    value: int
    optimal_colorings: int
    passed: int
    failed: int
    inconclusive: int

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.inconclusive == 0

    def to_json(self) -> dict:
        return {**self.__dict__, "ok": self.ok}


def verify_optimal_structure(n: int, p: int, budget: Optional[Budget] = None) -> StructureReport:
    """Check every optimal rainbow-cancellative-free coloring for the extremal shape."""
    from .diagnostics import check_extremal_structure

    res = solve_anti_ramsey(n, p, CANCELLATIVE, budget)
    if res.status != PROVED:
        raise TimeoutError("solve did not reach Proved; structure check needs the exact value")
    passed = failed = inconclusive = total = 0
    try:
        for assign in enumerate_colorings(n, p, CANCELLATIVE, exact_colors=res.value, budget=budget):
            total += 1
            rep = check_extremal_structure(build_coloring(n, p, assign))
            if rep.status == "inconclusive":
                inconclusive += 1
            elif rep.ok:
                passed += 1
            else:
                failed += 1
    except TimeoutError:
        raise
    return StructureReport(n, p, res.value, total, passed, failed, inconclusive)


__all__ = [
    "Budget", "SolveResult", "StructureReport", "PROVED", "TIMED_OUT",
    "solve_anti_ramsey", "enumerate_colorings", "verify_optimal_structure",
    "F4", "F5", "O", "CANCELLATIVE",
]
