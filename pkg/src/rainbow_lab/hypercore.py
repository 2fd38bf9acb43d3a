"""Complete p-graph combinatorics: colex edge ranking and edge colorings.

Edges are handled in two interchangeable forms: a sorted vertex tuple and an
integer bitmask with bit ``v`` set for vertex ``v``.  Colex order on p-sets is
exactly numeric order on their bitmasks, which is what makes the mask form
convenient for the detectors and the solver.
"""
from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import FormatError, InvalidEdgeError, ParameterError

MAX_VERTICES = 64
TEXT_MAGIC = "rainbow-coloring v1"

Edge = tuple[int, ...]


def _check_np(n: int, p: int) -> None:
    if not 1 <= p <= n:
        raise ParameterError(f"need 1 <= p <= n, got n={n}, p={p}")
    if n > MAX_VERTICES:
        raise ParameterError(f"n={n} exceeds the supported maximum of {MAX_VERTICES}")


def check_edge(edge: Sequence[int], n: int, p: int) -> Edge:
    """Return ``edge`` as a tuple after validating it for K_n^(p)."""
    e = tuple(int(v) for v in edge)
    if len(e) != p:
        raise InvalidEdgeError(f"edge {e} has {len(e)} vertices, expected {p}")
    for a, b in zip(e, e[1:]):
        if a >= b:
            raise InvalidEdgeError(f"edge {e} is not strictly increasing")
    if e and (e[0] < 0 or e[-1] >= n):
        raise InvalidEdgeError(f"edge {e} has a vertex outside 0..{n - 1}")
    return e


def edge_rank(edge: Sequence[int], n: int, p: int) -> int:
    """Colex rank of ``edge``: sum of C(v_i, i+1) over the sorted vertices."""
    e = check_edge(edge, n, p)
    return sum(comb(v, i + 1) for i, v in enumerate(e))


def edge_unrank(rank: int, n: int, p: int) -> Edge:
    _check_np(n, p)
    total = comb(n, p)
    if not 0 <= rank < total:
        raise InvalidEdgeError(f"rank {rank} outside 0..{total - 1}")
    out = []
    r = rank
    v = n - 1
    for i in range(p, 0, -1):
        while comb(v, i) > r:
            v -= 1
        out.append(v)
        r -= comb(v, i)
        v -= 1
    return tuple(reversed(out))


def to_mask(edge: Iterable[int]) -> int:
    m = 0
    for v in edge:
        m |= 1 << v
    return m


def from_mask(mask: int) -> Edge:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


class EdgeIndex:
    """All p-subsets of an n-set in colex order, with mask <-> rank lookup."""

    def __init__(self, n: int, p: int):
        _check_np(n, p)
        self.n = n
        self.p = p
        self.masks: list[int] = sorted(to_mask(c) for c in combinations(range(n), p))
        self.rank: dict[int, int] = {m: i for i, m in enumerate(self.masks)}

    def __len__(self) -> int:
        return len(self.masks)

    def edges(self) -> list[Edge]:
        return [from_mask(m) for m in self.masks]


@lru_cache(maxsize=64)
def edge_index(n: int, p: int) -> EdgeIndex:
    return EdgeIndex(n, p)


def normalize_colors(values: Sequence[int]) -> tuple[np.ndarray, int]:
    """Renumber colors by first occurrence (restricted-growth form)."""
    remap: dict[int, int] = {}
    out = np.empty(len(values), dtype=np.int32)
    for i, c in enumerate(values):
        c = int(c)
        if c < 0:
            raise ParameterError(f"negative color id {c} at position {i}")
        if c not in remap:
            remap[c] = len(remap)
        out[i] = remap[c]
    return out, len(remap)


@dataclass(frozen=True, eq=False)
class Coloring:
    """A total edge coloring of K_n^(p).

    ``assign[r]`` is the color of the edge with colex rank ``r``.  Color ids are
    always in restricted-growth form, so ``0..k-1`` are all used.
    """

    n: int
    p: int
    assign: np.ndarray = field(repr=False)
    k: int

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return (self.n, self.p, self.k) == (other.n, other.p, other.k) and np.array_equal(
            self.assign, other.assign
        )

    def __hash__(self):
        return hash((self.n, self.p, self.assign.tobytes()))

    @property
    def index(self) -> EdgeIndex:
        return edge_index(self.n, self.p)

    @property
    def num_edges(self) -> int:
        return len(self.assign)

    def color(self, edge: Sequence[int]) -> int:
        return int(self.assign[edge_rank(edge, self.n, self.p)])

    def color_of_mask(self, mask: int) -> int:
        return int(self.assign[self.index.rank[mask]])

    def color_map(self) -> dict[int, int]:
        """Mask -> color dictionary; the fast path used by the detectors."""
        return dict(zip(self.index.masks, self.assign.tolist()))

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.assign, minlength=self.k)

    def to_json(self) -> dict:
        return {
            "format": "rainbow-coloring",
            "version": 1,
            "p": self.p,
            "n": self.n,
            "colors": self.k,
            "edges": [list(e) + [int(c)] for e, c in zip(self.index.edges(), self.assign)],
        }


def build_coloring(n: int, p: int, assignments: Sequence[int]) -> Coloring:
    _check_np(n, p)
    expected = comb(n, p)
    if len(assignments) != expected:
        raise ParameterError(
            f"wrong length: got {len(assignments)} colors, K_{n}^({p}) has {expected} edges"
        )
    arr, k = normalize_colors(assignments)
    arr.setflags(write=False)
    return Coloring(n, p, arr, k)


def coloring_from_function(n: int, p: int, fn) -> Coloring:
    """Build a coloring by calling ``fn(edge_tuple)`` on every edge in colex order."""
    return build_coloring(n, p, [fn(e) for e in edge_index(n, p).edges()])


def monochromatic(n: int, p: int) -> Coloring:
    return build_coloring(n, p, [0] * comb(n, p))


def rainbow(n: int, p: int) -> Coloring:
    return build_coloring(n, p, list(range(comb(n, p))))


# ---------------------------------------------------------------------------
# text / JSON formats


def dump_coloring(c: Coloring) -> str:
    lines = [TEXT_MAGIC, f"p={c.p} n={c.n} colors={c.k}"]
    for e, col in zip(c.index.edges(), c.assign.tolist()):
        lines.append(" ".join(map(str, e)) + f" {col}")
    return "\n".join(lines) + "\n"


def save_coloring(c: Coloring, sink) -> None:
    """Write ``c`` in the text format to a path or an open text stream."""
    text = dump_coloring(c)
    if isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__"):
        with open(sink, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sink.write(text)


def _parse_header(line: str) -> tuple[int, int, int]:
    fields = {}
    for tok in line.split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise FormatError(f"malformed header: {line!r}")
        fields[key] = val
    try:
        return int(fields["p"]), int(fields["n"]), int(fields["colors"])
    except (KeyError, ValueError):
        raise FormatError(f"malformed header: {line!r}") from None


def parse_coloring(text: str) -> Coloring:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != TEXT_MAGIC:
        raise FormatError("malformed header: missing 'rainbow-coloring v1'")
    if len(lines) < 2:
        raise FormatError("malformed header: missing parameter line")
    p, n, k = _parse_header(lines[1])
    try:
        _check_np(n, p)
    except ParameterError as exc:
        raise FormatError(f"malformed header: {exc}") from None
    body = lines[2:]
    expected = comb(n, p)
    if len(body) != expected:
        raise FormatError(f"edge count mismatch: expected {expected} edge lines, found {len(body)}")
    masks = edge_index(n, p).masks
    colors = []
    for i, ln in enumerate(body):
        toks = ln.split()
        if len(toks) != p + 1:
            raise FormatError(f"line {i + 3}: expected {p} vertices and a color")
        try:
            nums = [int(t) for t in toks]
        except ValueError:
            raise FormatError(f"line {i + 3}: non-integer token") from None
        verts = nums[:p]
        if any(a >= b for a, b in zip(verts, verts[1:])):
            raise FormatError(f"line {i + 3}: non-ascending vertices {verts}")
        if to_mask(verts) != masks[i]:
            raise FormatError(f"line {i + 3}: edge {verts} out of colex order")
        colors.append(nums[p])
    if any(col < 0 for col in colors):
        raise FormatError("negative color id")
    used = set(colors)
    if used != set(range(k)):
        raise FormatError(
            f"color surjectivity violated: header declares colors={k}, file uses {len(used)} ids"
        )
    return build_coloring(n, p, colors)


def load_coloring(source) -> Coloring:
    """Read a coloring from a path or an open text stream."""
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, encoding="ascii") as fh:
            return parse_coloring(fh.read())
    if isinstance(source, io.TextIOBase) or hasattr(source, "read"):
        return parse_coloring(source.read())
    raise TypeError(f"cannot read a coloring from {type(source).__name__}")


def coloring_from_json(obj: dict | str) -> Coloring:
    if isinstance(obj, str):
        obj = json.loads(obj)
    n, p = int(obj["n"]), int(obj["p"])
    rows = obj["edges"]
    masks = edge_index(n, p).masks
    if len(rows) != len(masks):
        raise FormatError("edge count mismatch")
    for row, m in zip(rows, masks):
        if to_mask(row[:p]) != m:
            raise FormatError(f"edge {row[:p]} out of colex order")
    return build_coloring(n, p, [row[p] for row in rows])
