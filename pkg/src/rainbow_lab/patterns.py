"""Rainbow forbidden-configuration detectors.

Every three-edge family is handled by one scanner.  A rainbow copy uses three
distinct colors, so at most one of its edges lies in the largest color class;
the scanner therefore walks pairs of edges outside that class and completes each
pair to all possible third edges of the family.  On colorings dominated by a
background color (all the constructions) this is close to linear in the number
of non-background edges.

Witness order: among all rainbow copies the detector returns the one whose
edge-rank tuple (in the kind's role order) is lexicographically smallest.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator, Optional

import numpy as np

from .errors import ParameterError, PreconditionError, UniformityError
from .hypercore import Coloring, Edge, edge_index, from_mask, to_mask

CANCELLATIVE = "Cancellative"
F4 = "F4"
F5 = "F5"
H1 = "H1"
H2 = "H2"
T = "T"
O = "O"
STAR = "Star"

THREE_EDGE_KINDS = (CANCELLATIVE, F4, F5, H1, H2, T, O)
P3_KINDS = (F4, F5, H1, H2)

_ALIASES = {k.lower(): k for k in THREE_EDGE_KINDS + (STAR,)}


def canonical_kind(kind: str) -> str:
    try:
        return _ALIASES[kind.lower()]
    except KeyError:
        raise ParameterError(f"unknown pattern kind {kind!r}") from None


def popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low)
        x ^= low
    return out


def _subsets_of_size(bits: list[int], size: int) -> Iterator[int]:
    for combo in combinations(bits, size):
        m = 0
        for b in combo:
            m |= b
        yield m


@dataclass(frozen=True)
class PatternWitness:
    kind: str
    edges: tuple[Edge, ...]
    colors: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "edges": [list(e) for e in self.edges], "colors": list(self.colors)}


# ---------------------------------------------------------------------------
# role assignment: given three distinct edge masks, return them in the kind's
# role order, or None when they do not form a member of the family.


def _cancellative_roles(a: int, b: int, c: int, strict_o: bool = False):
    found = []
    for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
        if (x ^ y) & ~z:
            continue
        if strict_o and not (z & ~(x | y)):
            continue
        found.append((x, y, z) if x < y else (y, x, z))
    return min(found) if found else None


def _roles_cancellative(a, b, c, p):
    return _cancellative_roles(a, b, c)


def _roles_o(a, b, c, p):
    return _cancellative_roles(a, b, c, strict_o=True)


def _roles_f4(a, b, c, p):
    if popcount(a | b | c) == 4:
        return tuple(sorted((a, b, c)))
    return None


def _roles_f5(a, b, c, p):
    # {abc, abd, cde}: A, B share a pair, C holds A^B plus one new vertex
    for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
        if popcount(x & y) == 2 and not ((x ^ y) & ~z) and popcount(z & ~(x | y)) == 1:
            return (x, y, z) if x < y else (y, x, z)
    return None


def _roles_h1(a, b, c, p):
    if popcount(a & b & c) == 2 and popcount(a | b | c) == 5:
        return tuple(sorted((a, b, c)))
    return None


def _roles_h2(a, b, c, p):
    # {abc, bcd, cde}: a tight path; the middle edge meets both ends in a pair
    if popcount(a | b | c) != 5:
        return None
    for mid, u, v in ((a, b, c), (b, a, c), (c, a, b)):
        if popcount(mid & u) == 2 and popcount(mid & v) == 2 and popcount(u & v) == 1:
            return (u, mid, v) if u < v else (v, mid, u)
    return None


def _roles_t(a, b, c, p):
    if popcount((a | b | c) & ~(a & b & c)) <= p:
        return tuple(sorted((a, b, c)))
    return None


_ROLES = {
    CANCELLATIVE: _roles_cancellative,
    O: _roles_o,
    F4: _roles_f4,
    F5: _roles_f5,
    H1: _roles_h1,
    H2: _roles_h2,
    T: _roles_t,
}


def is_member(kind: str, edges, p: int) -> bool:
    """True iff the three edges (tuples or masks) form a copy of ``kind``."""
    kind = canonical_kind(kind)
    ms = [e if isinstance(e, int) else to_mask(e) for e in edges]
    if len(ms) != 3 or len(set(ms)) != 3:
        return False
    return _ROLES[kind](*ms, p) is not None


# ---------------------------------------------------------------------------
# completions: given two distinct edges, every third edge that could complete a
# member.  A superset is fine; candidates are filtered through the role test.


def _complete_cancellative(e: int, f: int, n: int, p: int, full: int) -> Iterator[int]:
    d = e ^ f
    if popcount(d) <= p:
        rest = _bits(full & ~d)
        for extra in _subsets_of_size(rest, p - popcount(d)):
            yield d | extra
    for a, c in ((e, f), (f, e)):
        inside = _bits(a & c)
        outside = _bits(c & ~a)
        for t in range(1, min(len(inside), len(outside)) + 1):
            for x in _subsets_of_size(inside, t):
                base = a & ~x
                for y in _subsets_of_size(outside, t):
                    yield base | y


def _complete_f4(e, f, n, p, full):
    shared = e & f
    if popcount(shared) == 2:
        q = e | f
        for u in _bits(shared):
            yield q & ~u


def _complete_f5(e, f, n, p, full):
    shared = e & f
    k = popcount(shared)
    if k == 2:
        d = e ^ f
        for x in _bits(full & ~(e | f)):
            yield d | x
    elif k == 1:
        for d in _bits(f & ~e):
            yield (e & ~f) | d
        for y in _bits(e & ~f):
            yield (f & ~e) | y


def _complete_h1(e, f, n, p, full):
    shared = e & f
    if popcount(shared) == 2:
        for x in _bits(full & ~(e | f)):
            yield shared | x


def _complete_h2(e, f, n, p, full):
    shared = e & f
    k = popcount(shared)
    if k == 2:
        outside = _bits(full & ~(e | f))
        for u in _bits(shared):
            for w in _bits(e ^ f):
                for x in outside:
                    yield u | w | x
    elif k == 1:
        for y in _bits(e & ~f):
            for z in _bits(f & ~e):
                yield shared | y | z


def _complete_t(e, f, n, p, full):
    union = e | f
    core = e & f
    u = popcount(union)
    inner = _bits(union)
    outer = _bits(full & ~union)
    for j in range(max(0, p - len(outer)), min(p, u) + 1):
        for g_in in _subsets_of_size(inner, j):
            # |union of pairwise differences| = u + (p - j) - |g & core|
            if u + (p - j) - popcount(g_in & core) > p:
                continue
            for g_out in _subsets_of_size(outer, p - j):
                yield g_in | g_out


_COMPLETE: dict[str, Callable] = {
    CANCELLATIVE: _complete_cancellative,
    O: _complete_cancellative,
    F4: _complete_f4,
    F5: _complete_f5,
    H1: _complete_h1,
    H2: _complete_h2,
    T: _complete_t,
}


def _require_p3(c: Coloring, what: str) -> None:
    if c.p != 3:
        raise UniformityError(f"{what} needs a 3-uniform coloring, got p={c.p}")


def find_rainbow(c: Coloring, kind: str) -> Optional[PatternWitness]:
    """Smallest rainbow copy of a three-edge ``kind`` in ``c``, or None."""
    kind = canonical_kind(kind)
    if kind == STAR:
        raise ParameterError("use find_rainbow_star for stars")
    if kind in P3_KINDS:
        _require_p3(c, kind)
    if c.k < 3:
        return None
    idx = c.index
    rank = idx.rank
    cmap = c.color_map()
    beta = int(np.argmax(c.class_sizes()))
    pool = [m for m in idx.masks if cmap[m] != beta]
    full = (1 << c.n) - 1
    complete = _COMPLETE[kind]
    roles = _ROLES[kind]
    best_key = None
    best = None
    for i, e in enumerate(pool):
        ce = cmap[e]
        for f in pool[i + 1:]:
            cf = cmap[f]
            if cf == ce:
                continue
            for g in complete(e, f, c.n, c.p, full):
                if g == e or g == f:
                    continue
                cg = cmap[g]
                if cg == ce or cg == cf:
                    continue
                order = roles(e, f, g, c.p)
                if order is None:
                    continue
                key = tuple(rank[m] for m in order)
                if best_key is None or key < best_key:
                    best_key, best = key, order
    if best is None:
        return None
    return PatternWitness(kind, tuple(from_mask(m) for m in best), tuple(cmap[m] for m in best))


def find_rainbow_cancellative(c: Coloring) -> Optional[PatternWitness]:
    return find_rainbow(c, CANCELLATIVE)


def find_rainbow_p3(c: Coloring, kind: str) -> Optional[PatternWitness]:
    kind = canonical_kind(kind)
    if kind not in P3_KINDS:
        raise ParameterError(f"find_rainbow_p3 handles {P3_KINDS}, not {kind}")
    _require_p3(c, "find_rainbow_p3")
    return find_rainbow(c, kind)


def find_rainbow_T(c: Coloring) -> Optional[PatternWitness]:
    return find_rainbow(c, T)


def find_rainbow_O(c: Coloring) -> Optional[PatternWitness]:
    return find_rainbow(c, O)


def find_rainbow_star(c: Coloring, q: int, r: int) -> Optional[PatternWitness]:
    """Rainbow S_{q,r}: r edges on a common q-core with disjoint petals.

    Cores are tried in colex order; for each core the petal search picks
    non-background edges first and then at most one background edge.
    """
    n, p = c.n, c.p
    if not 0 <= q <= p or r < 1:
        raise ParameterError(f"need 0 <= q <= p and r >= 1, got q={q}, r={r}")
    if q + r * (p - q) > n:
        raise ParameterError(f"S_{{{q},{r}}} does not fit in {n} vertices")
    if q == p:
        if r > 1:
            return None
        e = c.index.edges()[0]
        return PatternWitness(f"Star({q},{r})", (e,), (c.color(e),))
    if r > c.k:
        return None
    cmap = c.color_map()
    rank = c.index.rank
    beta = int(np.argmax(c.class_sizes()))
    all_bits = [1 << v for v in range(n)]
    cores = sorted(_subsets_of_size(all_bits, q))
    for core in cores:
        rest = [b for b in all_bits if not b & core]
        petals = sorted(core | x for x in _subsets_of_size(rest, p - q))
        light = [m for m in petals if cmap[m] != beta]
        heavy = [m for m in petals if cmap[m] == beta]
        found = _star_search(light, heavy, core, r, cmap, beta)
        if found is not None:
            found = sorted(found, key=rank.__getitem__)
            return PatternWitness(
                f"Star({q},{r})", tuple(from_mask(m) for m in found), tuple(cmap[m] for m in found)
            )
    return None


def _star_search(light, heavy, core, r, cmap, beta):
    chosen: list[int] = []
    used_colors: set[int] = set()

    def extend(start: int, covered: int):
        if len(chosen) == r:
            return list(chosen)
        if len(chosen) == r - 1:
            for m in heavy:
                if not (m & ~core) & covered:
                    return chosen + [m]
        for i in range(start, len(light)):
            m = light[i]
            col = cmap[m]
            petal = m & ~core
            if col in used_colors or petal & covered:
                continue
            chosen.append(m)
            used_colors.add(col)
            out = extend(i + 1, covered | petal)
            if out is not None:
                return out
            chosen.pop()
            used_colors.discard(col)
        return None

    return extend(0, 0)


def validate_witness(c: Coloring, w: PatternWitness) -> bool:
    """Re-check a witness against its set relation and the coloring."""
    masks = [to_mask(e) for e in w.edges]
    if len(set(masks)) != len(masks):
        return False
    cols = [c.color(e) for e in w.edges]
    if len(set(cols)) != len(cols) or tuple(cols) != tuple(w.colors):
        return False
    if w.kind.startswith(STAR):
        q, r = (int(t) for t in w.kind[len(STAR) + 1:-1].split(","))
        if len(masks) != r:
            return False
        core = masks[0]
        for m in masks[1:]:
            core &= m
        if r > 1 and popcount(core) != q:
            return False
        petals = [m & ~core for m in masks]
        return all(not (a & b) for a, b in combinations(petals, 2))
    return _ROLES[canonical_kind(w.kind)](*masks, c.p) is not None


# ---------------------------------------------------------------------------
# family member lists for incremental checking


@lru_cache(maxsize=32)
def family_members(n: int, p: int, kind: str) -> tuple[tuple[int, int, int], ...]:
    """All copies of ``kind`` in K_n^(p) as sorted edge-rank triples."""
    kind = canonical_kind(kind)
    idx = edge_index(n, p)
    rank = idx.rank
    full = (1 << n) - 1
    complete = _COMPLETE[kind]
    roles = _ROLES[kind]
    out = set()
    masks = idx.masks
    for i, e in enumerate(masks):
        for f in masks[i + 1:]:
            for g in complete(e, f, n, p, full):
                if g == e or g == f or g not in rank:
                    continue
                if roles(e, f, g, p) is not None:
                    out.add(tuple(sorted((rank[e], rank[f], rank[g]))))
    return tuple(sorted(out))


def members_by_last_edge(n: int, p: int, kind: str) -> list[list[tuple[int, int]]]:
    """For each edge rank i, the pairs (j, k) with j < k < i completing a member."""
    m = len(edge_index(n, p))
    out: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    for a, b, c in family_members(n, p, kind):
        out[c].append((a, b))
    return out


# ---------------------------------------------------------------------------
# edge-colored complete graphs


@dataclass(frozen=True, eq=False)
class ColoredGraph:
    """Edge-colored complete graph; ``matrix[i, j]`` is the color of pair ij.

    ``labels[i]`` is the original vertex name of row ``i``.  The diagonal is -1.
    """

    labels: tuple[int, ...]
    matrix: np.ndarray

    @property
    def order(self) -> int:
        return len(self.labels)

    def colors(self) -> set[int]:
        iu = np.triu_indices(self.order, 1)
        return set(np.unique(self.matrix[iu]).tolist())

    def num_colors(self) -> int:
        return len(self.colors())

    def to_coloring(self) -> Coloring:
        from .hypercore import build_coloring

        idx = edge_index(self.order, 2)
        return build_coloring(self.order, 2, [int(self.matrix[a, b]) for a, b in idx.edges()])

    @classmethod
    def from_coloring(cls, c: Coloring) -> "ColoredGraph":
        if c.p != 2:
            raise UniformityError(f"need a 2-uniform coloring, got p={c.p}")
        mat = np.full((c.n, c.n), -1, dtype=np.int64)
        for (a, b), col in zip(c.index.edges(), c.assign.tolist()):
            mat[a, b] = mat[b, a] = col
        return cls(tuple(range(c.n)), mat)


def link_graph(c: Coloring, x: int) -> ColoredGraph:
    _require_p3(c, "link_graph")
    if not 0 <= x < c.n:
        raise ParameterError(f"vertex {x} outside 0..{c.n - 1}")
    labels = tuple(v for v in range(c.n) if v != x)
    m = len(labels)
    mat = np.full((m, m), -1, dtype=np.int64)
    cmap = c.color_map()
    bx = 1 << x
    for i in range(m):
        for j in range(i + 1, m):
            mat[i, j] = mat[j, i] = cmap[bx | (1 << labels[i]) | (1 << labels[j])]
    return ColoredGraph(labels, mat)


def has_rainbow_triangle(g: ColoredGraph) -> Optional[tuple[int, int, int]]:
    """Lexicographically first rainbow triangle (in original labels), or None."""
    mat = g.matrix
    n = g.order
    for i in range(n - 2):
        a = mat[i, i + 1:]
        sub = mat[i + 1:, i + 1:]
        hit = (a[:, None] != a[None, :]) & (a[:, None] != sub) & (a[None, :] != sub)
        hit = np.triu(hit, 1)
        if hit.any():
            j, k = np.unravel_index(int(np.argmax(hit)), hit.shape)
            return (g.labels[i], g.labels[i + 1 + j], g.labels[i + 1 + k])
    return None


def has_monochromatic_triangle(g: ColoredGraph, color: int) -> bool:
    adj = (g.matrix == color).astype(np.int64)
    return bool(((adj @ adj) * adj).any())


def require_no_rainbow_triangle(g: ColoredGraph) -> None:
    tri = has_rainbow_triangle(g)
    if tri is not None:
        raise PreconditionError(f"graph contains a rainbow triangle {tri}", witness=tri)


__all__ = [
    "CANCELLATIVE", "F4", "F5", "H1", "H2", "T", "O", "STAR",
    "PatternWitness", "ColoredGraph", "canonical_kind", "is_member",
    "find_rainbow", "find_rainbow_cancellative", "find_rainbow_p3",
    "find_rainbow_T", "find_rainbow_O", "find_rainbow_star", "validate_witness",
    "family_members", "members_by_last_edge", "link_graph",
    "has_rainbow_triangle", "has_monochromatic_triangle",
]
