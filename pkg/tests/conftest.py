import random
from itertools import combinations

import pytest

from rainbow_lab.hypercore import build_coloring, edge_index

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# ---------------------------------------------------------------------------
# independent brute-force oracles, written straight from the set definitions


def _orderings(a, b, c):
    return ((a, b, c), (b, a, c), (a, c, b), (c, a, b), (b, c, a), (c, b, a))


def brute_is_member(kind, edges, p):
    a, b, c = (frozenset(e) for e in edges)
    if len({a, b, c}) < 3:
        return False
    union = a | b | c
    if kind == "Cancellative":
        return any((x ^ y) <= z for x, y, z in _orderings(a, b, c))
    if kind == "O":
        return any((x ^ y) <= z and not z <= (x | y) for x, y, z in _orderings(a, b, c))
    if kind == "T":
        diffs = (a ^ b) | (a ^ c) | (b ^ c)
        return len(diffs) <= p
    assert p == 3
    if kind == "F4":
        return len(union) == 4
    labels = sorted(union)
    if len(labels) != 5:
        return False
    # try every labeling a..e of the five vertices against the template
    templates = {
        "F5": ["abc", "abd", "cde"],
        "H1": ["abc", "abd", "abe"],
        "H2": ["abc", "bcd", "cde"],
    }
    target = {a, b, c}
    from itertools import permutations

    for perm in permutations(labels):
        name = dict(zip("abcde", perm))
        copy = {frozenset(name[ch] for ch in t) for t in templates[kind]}
        if copy == target:
            return True
    return False


def brute_find(coloring, kind):
    """All rainbow copies of ``kind`` as sorted edge-tuples (tiny n only)."""
    edges = edge_index(coloring.n, coloring.p).edges()
    cols = coloring.assign.tolist()
    out = []
    for i, j, k in combinations(range(len(edges)), 3):
        if len({cols[i], cols[j], cols[k]}) < 3:
            continue
        if brute_is_member(kind, (edges[i], edges[j], edges[k]), coloring.p):
            out.append((i, j, k))
    return out


def brute_f4_by_four_sets(coloring):
    """Rainbow F4 exists iff some 4-set has three triples in distinct colors."""
    cmap = coloring.color_map()
    for q in combinations(range(coloring.n), 4):
        cols = [cmap[sum(1 << v for v in t)] for t in combinations(q, 3)]
        if len(set(cols)) >= 3:
            return q
    return None


# ---------------------------------------------------------------------------
# random corpora


def random_coloring(n, p, rng, max_colors=None, background=0.0):
    """Uniform colors, or a background color with probability ``background``."""
    m = len(edge_index(n, p))
    kmax = max_colors or m
    vals = []
    for _ in range(m):
        if rng.random() < background:
            vals.append(0)
        else:
            vals.append(rng.randrange(kmax))
    return build_coloring(n, p, vals)


def corpus(n, p, count, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        kind = rng.random()
        if kind < 0.4:
            out.append(random_coloring(n, p, rng, max_colors=rng.randint(2, 5)))
        else:
            out.append(random_coloring(n, p, rng, max_colors=rng.randint(2, 12),
                                       background=rng.choice([0.7, 0.85, 0.95])))
    return out


@pytest.fixture
def rng():
    return random.Random(12345)
