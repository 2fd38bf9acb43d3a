"""Triple systems: Steiner triple systems and maximum packings.

Construction by residue of n mod 6:

* 1, 3   Skolem / Bose direct constructions.
* 0, 2   STS(n+1) with its last point deleted; exactly n(n-2)/6 blocks remain.
* 4, 5   Stinson-style hill-climbing on packings, started from a greedy packing
         and stopped once the Schönheim bound is reached.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

from .errors import DesignError, FormatError, ParameterError

Block = tuple[int, int, int]

OPTIMAL = "optimal"
SUBOPTIMAL = "suboptimal"


def schonheim(n: int) -> int:
    """Maximum number of blocks in a partial Steiner triple system of order n."""
    if n < 3:
        raise ParameterError(f"schonheim needs n >= 3, got {n}")
    r = n % 6
    if r in (0, 2):
        return n * (n - 2) // 6
    if r in (1, 3):
        return n * (n - 1) // 6
    if r == 4:
        return (n * n - 2 * n - 2) // 6
    return (n * n - n - 8) // 6


@dataclass
class TripleSystem:
    n: int
    blocks: list[Block]
    status: str = OPTIMAL
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.blocks = [tuple(sorted(b)) for b in self.blocks]

    def __len__(self) -> int:
        return len(self.blocks)

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": [list(b) for b in self.blocks], "status": self.status}

    def dumps(self) -> str:
        lines = [f"triple-system v1 n={self.n} blocks={len(self.blocks)}"]
        lines += [f"{a} {b} {c}" for a, b, c in self.blocks]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "TripleSystem":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise FormatError("malformed header: empty file")
        head = lines[0].split()
        if head[:2] != ["triple-system", "v1"]:
            raise FormatError("malformed header: missing 'triple-system v1'")
        try:
            kv = dict(tok.split("=", 1) for tok in head[2:])
            n, b = int(kv["n"]), int(kv["blocks"])
        except (KeyError, ValueError):
            raise FormatError(f"malformed header: {lines[0]!r}") from None
        if len(lines) - 1 != b:
            raise FormatError(f"block count mismatch: header says {b}, found {len(lines) - 1}")
        blocks = []
        for ln in lines[1:]:
            try:
                trip = tuple(int(t) for t in ln.split())
            except ValueError:
                raise FormatError(f"non-integer block line {ln!r}") from None
            if len(trip) != 3 or not trip[0] < trip[1] < trip[2] or trip[0] < 0 or trip[2] >= n:
                raise FormatError(f"bad block {ln!r}")
            blocks.append(trip)
        return cls(n, blocks)


@dataclass
class PackingCheck:
    valid: bool
    offending_pair: Optional[tuple[int, int]] = None


def validate_psts(t: TripleSystem) -> PackingCheck:
    seen = set()
    for b in t.blocks:
        if len(set(b)) != 3 or min(b) < 0 or max(b) >= t.n:
            return PackingCheck(False, None)
        for pair in combinations(b, 2):
            if pair in seen:
                return PackingCheck(False, pair)
            seen.add(pair)
    return PackingCheck(True)


def is_sts(t: TripleSystem) -> bool:
    return validate_psts(t).valid and 3 * len(t.blocks) == comb(t.n, 2)


def leave_graph(t: TripleSystem) -> list[tuple[int, int]]:
    """Pairs not covered by any block, in lexicographic order."""
    chk = validate_psts(t)
    if not chk.valid:
        raise DesignError(f"not a partial Steiner triple system (pair {chk.offending_pair} repeats)")
    covered = {pair for b in t.blocks for pair in combinations(b, 2)}
    return [pair for pair in combinations(range(t.n), 2) if pair not in covered]


# ---------------------------------------------------------------------------
# Steiner triple systems


def _bose(n: int) -> list[Block]:
    # n = 3m with m odd; idempotent commutative quasigroup x.y = (x+y)/2 mod m
    m = n // 3
    half = (m + 1) // 2
    pt = lambda x, i: x + m * i  # noqa: E731
    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for x in range(m):
        for y in range(x + 1, m):
            z = ((x + y) * half) % m
            for i in range(3):
                blocks.append((pt(x, i), pt(y, i), pt(z, (i + 1) % 3)))
    return blocks


def _skolem(n: int) -> list[Block]:
    # n = 6h + 1; half-idempotent commutative quasigroup of order 2h
    # built from Z_{2h} by renaming 2i -> i and 2i+1 -> h+i
    h = (n - 1) // 6
    order = 2 * h

    def mult(x: int, y: int) -> int:
        s = (x + y) % order
        return s // 2 if s % 2 == 0 else h + s // 2

    inf = 3 * order
    pt = lambda x, i: x + order * i  # noqa: E731
    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(h)]
    for x in range(h):
        for i in range(3):
            blocks.append((inf, pt(x + h, i), pt(x, (i + 1) % 3)))
    for x in range(order):
        for y in range(x + 1, order):
            z = mult(x, y)
            for i in range(3):
                blocks.append((pt(x, i), pt(y, i), pt(z, (i + 1) % 3)))
    return blocks


def _relabel(blocks: list[Block], n: int, seed: int, keep_last: bool = False) -> list[Block]:
    if seed == 0:
        return blocks
    perm = list(range(n))
    rng = random.Random(seed)
    if keep_last:
        head = perm[:-1]
        rng.shuffle(head)
        perm = head + [n - 1]
    else:
        rng.shuffle(perm)
    return [tuple(sorted(perm[v] for v in b)) for b in blocks]


def build_sts(n: int, seed: int = 0) -> TripleSystem:
    """STS(n) for n = 1, 3 (mod 6); seed 0 is the plain construction, other
    seeds apply a seeded vertex relabeling."""
    if n < 3 or n % 6 not in (1, 3):
        raise DesignError(f"no STS({n}) exists: an STS(n) exists iff n = 1 or 3 (mod 6)")
    blocks = _bose(n) if n % 6 == 3 else _skolem(n)
    blocks = sorted(tuple(sorted(b)) for b in _relabel(blocks, n, seed))
    return TripleSystem(n, blocks, meta={"method": "bose" if n % 6 == 3 else "skolem", "seed": seed})


# ---------------------------------------------------------------------------
# maximum packings


def _greedy_packing(n: int, rng: random.Random) -> list[Block]:
    triples = list(combinations(range(n), 3))
    rng.shuffle(triples)
    covered: set[tuple[int, int]] = set()
    out = []
    for b in triples:
        pairs = list(combinations(b, 2))
        if any(pr in covered for pr in pairs):
            continue
        covered.update(pairs)
        out.append(b)
    return out


def hill_climb_packing(
    n: int, target: int, seed: int = 0, iter_cap: int = 2_000_000
) -> tuple[list[Block], int]:
    """Randomized switch-based hill-climbing towards a packing with ``target`` blocks.

    Each step picks a point x with two uncovered pairs xy, xz.  If yz is
    uncovered, xyz is added; otherwise the block through yz is swapped out for
    xyz.  The block count never decreases.  Returns (blocks, steps used).
    """
    rng = random.Random(seed)
    # partner[x][y] = third point of the block on pair xy, or -1
    partner = [[-1] * n for _ in range(n)]
    free = [set(range(n)) - {x} for x in range(n)]  # uncovered partners of x
    blocks: set[Block] = set()

    def add(b: Block) -> None:
        a, bb, c = b
        for u, v, w in ((a, bb, c), (a, c, bb), (bb, c, a)):
            partner[u][v] = partner[v][u] = w
            free[u].discard(v)
            free[v].discard(u)
        blocks.add(b)

    def remove(b: Block) -> None:
        a, bb, c = b
        for u, v in ((a, bb), (a, c), (bb, c)):
            partner[u][v] = partner[v][u] = -1
            free[u].add(v)
            free[v].add(u)
        blocks.discard(b)

    for b in _greedy_packing(n, rng):
        add(b)

    steps = 0
    while len(blocks) < target and steps < iter_cap:
        steps += 1
        live = [x for x in range(n) if len(free[x]) >= 2]
        if not live:
            break
        x = rng.choice(live)
        y, z = rng.sample(sorted(free[x]), 2)
        w = partner[y][z]
        if w != -1:
            remove(tuple(sorted((y, z, w))))
        add(tuple(sorted((x, y, z))))
    return sorted(blocks), steps


def build_mpsts(n: int, seed: int = 0, iter_cap: int = 2_000_000) -> TripleSystem:
    """A maximum partial Steiner triple system of order n.

    When hill-climbing runs out of steps the result carries status
    ``"suboptimal"`` and the achieved block count; it is never silently short.
    """
    if n < 3:
        raise ParameterError(f"build_mpsts needs n >= 3, got {n}")
    target = schonheim(n)
    r = n % 6
    if r in (1, 3):
        t = build_sts(n, seed)
        t.meta["target"] = target
        return t
    if r in (0, 2):
        big = build_sts(n + 1, seed)
        last = n  # the deleted point is always the last vertex of STS(n+1)
        blocks = [b for b in big.blocks if last not in b]
        return TripleSystem(n, blocks, meta={"method": "point-deletion", "seed": seed, "target": target})
    blocks, steps = hill_climb_packing(n, target, seed, iter_cap)
    status = OPTIMAL if len(blocks) == target else SUBOPTIMAL
    return TripleSystem(
        n, blocks, status, meta={"method": "hill-climb", "seed": seed, "steps": steps, "target": target}
    )


def max_packing_exact(n: int) -> int:
    """Exact maximum packing size by branch and bound (independent of schonheim).

    Pairs are decided in lexicographic order: the first undecided pair is either
    covered by a block through it or declared part of the leave.  The bound is
    sum over vertices of floor(free degree / 2), divided by 3.
    """
    if n < 3:
        return 0
    covered = [[False] * n for _ in range(n)]
    deg = [n - 1] * n  # pairs at v still available (not covered, not left)
    dead = [[False] * n for _ in range(n)]
    pairs = list(combinations(range(n), 2))
    best = 0

    def bound() -> int:
        return sum(d // 2 for d in deg) // 3

    def dfs(pi: int, count: int) -> None:
        nonlocal best
        while pi < len(pairs):
            a, b = pairs[pi]
            if not covered[a][b] and not dead[a][b]:
                break
            pi += 1
        if pi == len(pairs):
            best = max(best, count)
            return
        if count + bound() <= best:
            return
        a, b = pairs[pi]
        for c in range(b + 1, n):
            if covered[a][c] or covered[b][c] or dead[a][c] or dead[b][c]:
                continue
            for u, v in ((a, b), (a, c), (b, c)):
                covered[u][v] = covered[v][u] = True
                deg[u] -= 1
                deg[v] -= 1
            dfs(pi + 1, count + 1)
            for u, v in ((a, b), (a, c), (b, c)):
                covered[u][v] = covered[v][u] = False
                deg[u] += 1
                deg[v] += 1
        # leave pair ab uncovered
        dead[a][b] = dead[b][a] = True
        deg[a] -= 1
        deg[b] -= 1
        dfs(pi + 1, count)
        dead[a][b] = dead[b][a] = False
        deg[a] += 1
        deg[b] += 1

    dfs(0, 0)
    return best
