"""Bound formulas, the F4 accounting identities, and the extremal-shape checker."""
from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass
from itertools import combinations
from math import comb
from typing import Optional

from .designs import schonheim
from .errors import ParameterError
from .hypercore import Coloring, from_mask
from .patterns import (
    ColoredGraph,
    has_monochromatic_triangle,
    link_graph,
    popcount,
    require_no_rainbow_triangle,
    _require_p3,
)


def ar_cancellative_formula(n: int, p: int) -> int:
    if p < 3 or n < p + 1:
        raise ParameterError(f"formula holds for p >= 3, n >= p + 1; got n={n}, p={p}")
    return 1 + n // p


def f4_upper(n: int) -> int:
    return (5 * n * n - 8 * n) // 21


def f4_bounds(n: int) -> tuple[int, int]:
    """Known (lower, upper) bracket for ar(n, F4)."""
    if n < 4:
        raise ParameterError(f"f4_bounds needs n >= 4, got {n}")
    lower = schonheim(n) + 1
    if n >= 5:
        lower = max(lower, n - 2)
    return lower, f4_upper(n)


@dataclass
class GallaiDefect:
    c: int
    rho: int
    bound_ok: bool


def gallai_rho(g: ColoredGraph) -> int:
    """Number of colors whose class contains a monochromatic triangle."""
    return sum(has_monochromatic_triangle(g, col) for col in g.colors())


def gallai_defect(g: ColoredGraph) -> GallaiDefect:
    require_no_rainbow_triangle(g)
    c = g.num_colors()
    rho = gallai_rho(g)
    return GallaiDefect(c, rho, c + rho <= g.order - 1)


@dataclass
class F4Accounting:
    n: int
    k: int
    I: int
    rho: int
    s_singleton: int
    ell: int
    leave_identity: bool
    incidence_bound: bool
    color_bound: bool
    singletons_form_psts: bool

    def to_json(self) -> dict:
        return asdict(self)


def f4_accounting(c: Coloring) -> F4Accounting:
    """Vertex-color incidences, link-graph rho, singleton triples and their leave.

    ``leave_identity`` is 3s + l = C(n,2); it holds exactly when the singleton
    triples form a partial Steiner triple system, which rainbow-F4-freeness
    forces.  ``incidence_bound`` (I + rho <= n(n-2)) and ``color_bound``
    (k <= (5n^2 - 8n)/21) are only promised for rainbow-F4-free inputs.
    """
    _require_p3(c, "f4_accounting")
    n = c.n
    masks = c.index.masks
    cols = c.assign.tolist()
    support = [0] * c.k
    for mask, col in zip(masks, cols):
        support[col] |= mask
    I = sum(popcount(s) for s in support)
    rho = 0
    for v in range(n):
        rho += gallai_rho(link_graph(c, v))
    freq = Counter(cols)
    singles = [m for m, col in zip(masks, cols) if freq[col] == 1]
    covered = set()
    psts = True
    for m in singles:
        for pair in combinations(from_mask(m), 2):
            if pair in covered:
                psts = False
            covered.add(pair)
    ell = comb(n, 2) - len(covered)
    s = len(singles)
    return F4Accounting(
        n=n,
        k=c.k,
        I=I,
        rho=rho,
        s_singleton=s,
        ell=ell,
        leave_identity=3 * s + ell == comb(n, 2),
        incidence_bound=I + rho <= n * (n - 2),
        color_bound=c.k <= f4_upper(n) if n >= 4 else True,
        singletons_form_psts=psts,
    )


# ---------------------------------------------------------------------------
# extremal structure


@dataclass
class StructureCheck:
    ok: bool
    U: Optional[tuple[int, ...]] = None
    status: str = "decided"  # or "inconclusive" when the node cap is hit
    matching: Optional[tuple[tuple[int, ...], ...]] = None
    background: Optional[int] = None


def check_extremal_structure(c: Coloring, node_cap: int = 200_000) -> StructureCheck:
    """Look for floor(n/p) disjoint edges of distinct colors whose union U has
    every other edge inside it in one further common color.

    The coloring must also use exactly 1 + floor(n/p) colors.  Candidate
    background colors are tried from largest class down; for a background beta
    the matching edges are exactly the non-beta edges inside U.
    """
    n, p = c.n, c.p
    m = n // p
    if c.k != 1 + m:
        return StructureCheck(False)
    cmap = c.color_map()
    masks = c.index.masks
    sizes = c.class_sizes()
    nodes = 0
    for beta in sorted(range(c.k), key=lambda col: (-sizes[col], col)):
        others = [e for e in masks if cmap[e] != beta]
        chosen: list[int] = []
        used: set[int] = set()

        def extend(start: int, union: int) -> Optional[int]:
            nonlocal nodes
            nodes += 1
            if nodes > node_cap:
                raise _Cap
            if len(chosen) == m:
                return union
            for i in range(start, len(others)):
                e = others[i]
                col = cmap[e]
                if e & union or col in used:
                    continue
                nu = union | e
                # a non-beta edge inside the union that is not chosen breaks the shape
                if _stray_edge_inside(nu, chosen + [e], others, cmap, beta, p):
                    continue
                chosen.append(e)
                used.add(col)
                out = extend(i + 1, nu)
                if out is not None:
                    return out
                chosen.pop()
                used.discard(col)
            return None

        try:
            union = extend(0, 0)
        except _Cap:
            return StructureCheck(False, status="inconclusive")
        if union is not None:
            return StructureCheck(
                True,
                tuple(from_mask(union)),
                matching=tuple(from_mask(e) for e in chosen),
                background=beta,
            )
    return StructureCheck(False)


class _Cap(Exception):
    pass


def _stray_edge_inside(union: int, chosen: list[int], others: list[int], cmap, beta, p) -> bool:
    picked = set(chosen)
    verts = [1 << v for v in from_mask(union)]
    if comb(len(verts), p) < len(others):
        for combo in combinations(verts, p):
            f = sum(combo)
            if f not in picked and cmap[f] != beta:
                return True
        return False
    return any(f & ~union == 0 for f in others if f not in picked)
