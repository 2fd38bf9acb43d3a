"""Lower-bound colorings and a Gallai-coloring generator."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .designs import OPTIMAL, build_mpsts, schonheim
from .errors import DesignError, ParameterError
from .gf2geom import (
    build_grassmann,
    good_coloring_from_independent_set,
    greedy_independent_set,
    projective_closure,
)
from .hypercore import Coloring, build_coloring, edge_index, to_mask
from .patterns import ColoredGraph


def build_cancellative_extremal(n: int, p: int) -> Coloring:
    """Consecutive blocks {ip, ..., ip+p-1} get colors 1..floor(n/p); the rest share one color.

    Leftover vertices (n mod p of them) only meet background edges.
    """
    if p < 3 or n < p + 1:
        raise ParameterError(f"need p >= 3 and n >= p + 1, got n={n}, p={p}")
    m = n // p
    special = {to_mask(range(i * p, (i + 1) * p)): i + 1 for i in range(m)}
    bg = m + 1
    idx = edge_index(n, p)
    return build_coloring(n, p, [special.get(mask, bg) for mask in idx.masks])


def coloring_from_blocks(n: int, blocks) -> Coloring:
    """Each block its own color; every other triple one extra color."""
    own = {to_mask(b): i for i, b in enumerate(blocks)}
    extra = len(own)
    idx = edge_index(n, 3)
    return build_coloring(n, 3, [own.get(mask, extra) for mask in idx.masks])


def build_mpsts_coloring(n: int, seed: int = 0) -> Coloring:
    if n < 4:
        raise ParameterError(f"build_mpsts_coloring needs n >= 4, got {n}")
    t = build_mpsts(n, seed)
    if t.status != OPTIMAL:
        raise DesignError(f"MPSTS({n}) search stopped at {len(t)} of {schonheim(n)} blocks")
    return coloring_from_blocks(n, t.blocks)


@dataclass
class PGColoring:
    coloring: Coloring
    s: int
    independent_set: list[int]
    plane_classes: int

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "n": self.coloring.n,
            "colors": self.coloring.k,
            "independent_set_size": len(self.independent_set),
            "plane_classes": self.plane_classes,
        }


def build_pg_construction(s: int, restarts: int = 32, order_seed: int = 0) -> PGColoring:
    """Block colors on PG(s-1,2) lines plus a background color per plane class.

    Non-block triples take the class color of their unique plane; plane classes
    come from a greedy independent set of J_2(s,3) plus one shared class.
    """
    if s < 3:
        raise ParameterError(f"build_pg_coloring needs s >= 3, got {s}")
    n = (1 << s) - 1
    J = build_grassmann(s)
    indep = greedy_independent_set(J, order_seed, restarts)
    phi = good_coloring_from_independent_set(J, indep)
    plane_index = {w.mask: i for i, w in enumerate(J.planes)}
    nblocks = 0
    block_color: dict[int, int] = {}
    for x, y in combinations(range(1, n + 1), 2):
        z = x ^ y
        if z > y:
            block_color[to_mask((x - 1, y - 1, z - 1))] = nblocks
            nblocks += 1
    colors = []
    for mask in edge_index(n, 3).masks:
        col = block_color.get(mask)
        if col is None:
            x, y, z = (v + 1 for v in _verts(mask))
            plane = projective_closure(x, y, z).mask
            col = nblocks + phi[plane_index[plane]]
        colors.append(col)
    return PGColoring(build_coloring(n, 3, colors), s, indep, len(set(phi)))


def _verts(mask: int):
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


def build_pg_coloring(s: int, restarts: int = 32, order_seed: int = 0) -> Coloring:
    return build_pg_construction(s, restarts, order_seed).coloring


# ---------------------------------------------------------------------------
# Gallai colorings


def generate_gallai(
    n: int, seed: int = 0, max_parts: int = 4, two_part_bias: float = 0.5
) -> ColoredGraph:
    """Random edge coloring of K_n with no rainbow triangle, by substitution.

    The vertex set is split into 2..max_parts parts, the reduced graph on the
    parts gets at most two colors, and each part is colored recursively.
    Colors are reused from the palette built so far or drawn fresh.
    """
    if n < 1:
        raise ParameterError("generate_gallai needs n >= 1")
    if max_parts < 2:
        raise ParameterError("max_parts must be at least 2")
    rng = random.Random(seed)
    mat = np.full((n, n), -1, dtype=np.int64)
    palette: list[int] = []

    def pick_color() -> int:
        if not palette or rng.random() < 0.5:
            palette.append(len(palette))
            return palette[-1]
        return rng.choice(palette)

    def color(verts: list[int]) -> None:
        if len(verts) < 2:
            return
        if len(verts) == 2 or rng.random() < two_part_bias:
            t = 2
        else:
            t = rng.randint(2, min(max_parts, len(verts)))
        rng.shuffle(verts)
        cuts = sorted(rng.sample(range(1, len(verts)), t - 1))
        parts = [verts[a:b] for a, b in zip([0] + cuts, cuts + [len(verts)])]
        c1 = pick_color()
        c2 = pick_color() if t > 2 else c1
        for i, j in combinations(range(t), 2):
            col = c1 if rng.random() < 0.5 else c2
            for u in parts[i]:
                for v in parts[j]:
                    mat[u, v] = mat[v, u] = col
        for part in parts:
            color(part)

    color(list(range(n)))
    return ColoredGraph(tuple(range(n)), mat)
