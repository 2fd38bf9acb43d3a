"""Projective geometry over GF(2) with subspaces stored as point bitmasks.

A projective point is a nonzero vector v of F_2^s, written as the integer
1..2^s-1.  A set of points is an integer with bit (v - 1) set for each member,
so subspace intersection is a bitwise AND.  As a triple-system vertex, vector v
is vertex v - 1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .designs import TripleSystem
from .errors import GeometryError, ParameterError
from .patterns import popcount

BLOCK = "Block"
PLANE_TRIPLE = "PlaneTriple"
POINT_TYPE = "PointType"
LINE_TYPE = "LineType"


def point_set(points) -> int:
    m = 0
    for v in points:
        m |= 1 << (v - 1)
    return m


def points_of(mask: int) -> list[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def span(vectors: Sequence[int]) -> set[int]:
    """Linear span over GF(2), including 0."""
    out = {0}
    for v in vectors:
        out |= {u ^ v for u in out}
    return out


@dataclass(frozen=True)
class ProjSubspace:
    mask: int

    @property
    def points(self) -> list[int]:
        return points_of(self.mask)

    @property
    def size(self) -> int:
        return popcount(self.mask)

    @property
    def dim(self) -> int:
        # 2^(dim+1) - 1 points
        return (self.size + 1).bit_length() - 2

    def __contains__(self, v: int) -> bool:
        return bool(self.mask >> (v - 1) & 1)

    def meet(self, other: "ProjSubspace") -> "ProjSubspace":
        return ProjSubspace(self.mask & other.mask)

    def is_subspace(self) -> bool:
        pts = self.points
        if not pts:
            return False
        closed = all((a ^ b) in self for a, b in combinations(pts, 2))
        return closed and (self.size + 1) & self.size == 0


def _check_points(pts: Sequence[int], s: Optional[int]) -> None:
    if len(set(pts)) != len(pts):
        raise GeometryError(f"points {tuple(pts)} are not distinct")
    for v in pts:
        if v <= 0 or (s is not None and v >= 1 << s):
            raise GeometryError(f"{v} is not a nonzero vector of F_2^{s}")


def projective_closure(x: int, y: int, z: int, s: Optional[int] = None) -> ProjSubspace:
    """The span of {x, y, z} minus the origin: a line or a plane."""
    _check_points((x, y, z), s)
    return ProjSubspace(point_set(span((x, y, z)) - {0}))


@dataclass(frozen=True)
class TripleClass:
    kind: str
    closure: ProjSubspace


def classify_triple(x: int, y: int, z: int, s: Optional[int] = None) -> TripleClass:
    cl = projective_closure(x, y, z, s)
    return TripleClass(BLOCK if x ^ y ^ z == 0 else PLANE_TRIPLE, cl)


def build_pg(s: int) -> TripleSystem:
    """PG(s-1, 2) as a triple system on 2^s - 1 vertices (vertex i is vector i+1)."""
    if s < 2:
        raise ParameterError(f"build_pg needs s >= 2, got {s}")
    n = (1 << s) - 1
    blocks = set()
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            blocks.add(tuple(sorted((x - 1, y - 1, (x ^ y) - 1))))
    return TripleSystem(n, sorted(blocks), meta={"method": "projective-geometry", "s": s})


def enumerate_planes(s: int) -> list[ProjSubspace]:
    """All projective planes of F_2^s, sorted by point-set bitmask."""
    if s < 3:
        raise ParameterError(f"enumerate_planes needs s >= 3, got {s}")
    n = (1 << s) - 1
    found = set()
    for x, y in combinations(range(1, n + 1), 2):
        xy = x ^ y
        for z in range(y + 1, n + 1):
            if z == xy:
                continue
            found.add(point_set((x, y, xy, z, x ^ z, y ^ z, xy ^ z)))
    return [ProjSubspace(m) for m in sorted(found)]


def enumerate_lines(s: int) -> list[ProjSubspace]:
    n = (1 << s) - 1
    found = {point_set((x, y, x ^ y)) for x, y in combinations(range(1, n + 1), 2)}
    return [ProjSubspace(m) for m in sorted(found)]


@dataclass
class GrassmannGraph:
    """J_2(s, 3): planes of F_2^s, adjacent when they meet in a line."""

    s: int
    planes: list[ProjSubspace]
    adj: list[frozenset[int]]

    def __len__(self) -> int:
        return len(self.planes)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def adjacent(self, i: int, j: int) -> bool:
        return j in self.adj[i]

    def triangles(self):
        for u in range(len(self.planes)):
            for v in self.adj[u]:
                if v <= u:
                    continue
                for w in self.adj[u] & self.adj[v]:
                    if w > v:
                        yield u, v, w

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "planes": [p.points for p in self.planes],
            "adjacency": [sorted(a) for a in self.adj],
        }


def build_grassmann(s: int) -> GrassmannGraph:
    planes = enumerate_planes(s)
    # two distinct planes share at most one line, so grouping by line gives adjacency
    by_line: dict[int, list[int]] = {}
    for i, w in enumerate(planes):
        pts = w.points
        for x, y in combinations(pts, 2):
            if x < (x ^ y) and y < (x ^ y):
                by_line.setdefault(point_set((x, y, x ^ y)), []).append(i)
    adj: list[set[int]] = [set() for _ in planes]
    for members in by_line.values():
        for i in members:
            adj[i].update(members)
    for i, a in enumerate(adj):
        a.discard(i)
    return GrassmannGraph(s, planes, [frozenset(a) for a in adj])


def triangle_type(w1: ProjSubspace, w2: ProjSubspace, w3: ProjSubspace) -> str:
    ws = (w1, w2, w3)
    if len({w.mask for w in ws}) != 3 or any(w.size != 7 for w in ws):
        raise GeometryError("triangle_type needs three distinct planes")
    for a, b in combinations(ws, 2):
        if popcount(a.mask & b.mask) != 3:
            raise GeometryError("not a triangle: two planes do not meet in a line")
    k = popcount(w1.mask & w2.mask & w3.mask)
    if k == 1:
        return POINT_TYPE
    if k == 3:
        return LINE_TYPE
    raise GeometryError(f"triple intersection has {k} points; expected a point or a line")


def greedy_independent_set(J: GrassmannGraph, order_seed: int = 0, restarts: int = 32) -> list[int]:
    """Best of ``restarts`` greedy maximal independent sets under seeded vertex orders."""
    rng = random.Random(order_seed)
    best: list[int] = []
    order = list(range(len(J)))
    for _ in range(max(1, restarts)):
        rng.shuffle(order)
        chosen: list[int] = []
        blocked: set[int] = set()
        for v in order:
            if v in blocked:
                continue
            chosen.append(v)
            blocked.add(v)
            blocked |= J.adj[v]
        if len(chosen) > len(best):
            best = chosen
    return sorted(best)


def is_independent(J: GrassmannGraph, indep) -> bool:
    s = set(indep)
    return all(not (J.adj[v] & s) for v in s)


def good_coloring_from_independent_set(J: GrassmannGraph, indep) -> list[int]:
    """Distinct colors on the independent set, one shared color on the rest."""
    indep = sorted(set(indep))
    if not is_independent(J, indep):
        raise GeometryError("vertex set is not independent in the Grassmann graph")
    phi = [len(indep)] * len(J)
    for c, v in enumerate(indep):
        phi[v] = c
    return phi


@dataclass
class GoodReport:
    good: bool
    witness: Optional[tuple[int, int, int]] = None


def is_good_coloring(J: GrassmannGraph, phi) -> GoodReport:
    """Good iff no point-type triangle carries three distinct colors."""
    if isinstance(phi, dict):
        if set(phi) != set(range(len(J))):
            raise GeometryError("plane coloring is not total")
        phi = [phi[i] for i in range(len(J))]
    if len(phi) != len(J):
        raise GeometryError("plane coloring is not total")
    masks = [w.mask for w in J.planes]
    for u, v, w in J.triangles():
        cu, cv, cw = phi[u], phi[v], phi[w]
        if cu == cv or cu == cw or cv == cw:
            continue
        if popcount(masks[u] & masks[v] & masks[w]) == 1:
            return GoodReport(False, (u, v, w))
    return GoodReport(True)


def gaussian_binomial(s: int, k: int, q: int = 2) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (s - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
