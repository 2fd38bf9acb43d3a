from itertools import combinations

import pytest

from conftest import brute_f4_by_four_sets
from rainbow_lab.constructions import (
    build_cancellative_extremal,
    build_mpsts_coloring,
    build_pg_construction,
    build_pg_coloring,
    generate_gallai,
)
from rainbow_lab.designs import schonheim
from rainbow_lab.diagnostics import check_extremal_structure, f4_bounds
from rainbow_lab.errors import ParameterError
from rainbow_lab.gf2geom import build_pg, projective_closure
from rainbow_lab.hypercore import to_mask
from rainbow_lab.patterns import find_rainbow_cancellative, find_rainbow_p3, has_rainbow_triangle


def test_cancellative_examples():
    c = build_cancellative_extremal(7, 3)
    assert c.k == 3 and find_rainbow_cancellative(c) is None
    assert build_cancellative_extremal(4, 3).k == 2
    assert build_cancellative_extremal(8, 4).k == 3
    for bad in [(3, 3), (5, 2)]:
        with pytest.raises(ParameterError):
            build_cancellative_extremal(*bad)


@pytest.mark.parametrize("p", [3, 4, 5])
def test_cancellative_extremal_properties(p):
    for n in range(p + 1, 26):
        c = build_cancellative_extremal(n, p)
        assert c.k == 1 + n // p
        assert find_rainbow_cancellative(c) is None
        st = check_extremal_structure(c)
        assert st.ok
        assert len(st.U) == p * (n // p)


def test_cancellative_extremal_u_is_prefix():
    st = check_extremal_structure(build_cancellative_extremal(7, 3))
    assert st.U == (0, 1, 2, 3, 4, 5)


def test_mpsts_examples():
    c = build_mpsts_coloring(7)
    assert c.k == 8 and find_rainbow_p3(c, "F4") is None
    assert build_mpsts_coloring(6).k == 5
    assert build_mpsts_coloring(4).k == 2


@pytest.mark.parametrize("n", range(4, 31))
def test_mpsts_coloring_properties(n):
    c = build_mpsts_coloring(n)
    assert c.k == schonheim(n) + 1
    assert find_rainbow_p3(c, "F4") is None
    lo, hi = f4_bounds(n)
    assert lo <= c.k <= hi or n < 5


@pytest.mark.parametrize("n", range(4, 13))
def test_mpsts_coloring_four_set_oracle(n):
    assert brute_f4_by_four_sets(build_mpsts_coloring(n)) is None


@pytest.mark.parametrize("s,exact", [(3, 8), (4, 37), (5, None)])
def test_pg_coloring(s, exact):
    pg = build_pg_construction(s)
    c = pg.coloring
    n = (1 << s) - 1
    assert c.n == n
    assert c.k >= schonheim(n) + 1
    assert c.k == schonheim(n) + pg.plane_classes
    if exact is not None:
        assert c.k == exact
    else:
        assert pg.plane_classes >= 3
    assert find_rainbow_p3(c, "F4") is None


@pytest.mark.parametrize("s", [3, 4])
def test_pg_coloring_four_set_oracle(s):
    assert brute_f4_by_four_sets(build_pg_coloring(s)) is None


def test_pg_fano_non_blocks_share_color():
    # every block colored uniquely, so all 28 non-block triples share one color
    c = build_pg_coloring(3)
    blocks = {to_mask(b) for b in build_pg(3).blocks}
    cmap = c.color_map()
    sizes = c.class_sizes()
    assert all(sizes[cmap[b]] == 1 for b in blocks)
    others = {cmap[to_mask(t)] for t in combinations(range(7), 3) if to_mask(t) not in blocks}
    assert len(others) == 1


def test_pg_plane_colors_follow_closure():
    c = build_pg_coloring(4)
    cmap = c.color_map()
    by_plane = {}
    for t in combinations(range(15), 3):
        x, y, z = (v + 1 for v in t)
        if x ^ y ^ z == 0:
            continue
        by_plane.setdefault(projective_closure(x, y, z).mask, set()).add(cmap[to_mask(t)])
    assert len(by_plane) == 15
    assert all(len(cols) == 1 for cols in by_plane.values())


def test_gallai_examples():
    assert generate_gallai(1).order == 1
    g = generate_gallai(3, seed=4, max_parts=2)
    assert g.num_colors() <= 2 and has_rainbow_triangle(g) is None
    assert has_rainbow_triangle(generate_gallai(20, seed=11)) is None
    with pytest.raises(ParameterError):
        generate_gallai(0)
    with pytest.raises(ParameterError):
        generate_gallai(5, max_parts=1)


def test_gallai_never_rainbow():
    for n in (2, 5, 10, 25, 40):
        for seed in range(25):
            g = generate_gallai(n, seed)
            assert has_rainbow_triangle(g) is None
            m = g.matrix
            assert (m == m.T).all() and (m.diagonal() == -1).all()
            assert (m[~_eye(n)] >= 0).all()


def _eye(n):
    import numpy as np

    return np.eye(n, dtype=bool)


def test_gallai_deterministic():
    a, b = generate_gallai(15, seed=3), generate_gallai(15, seed=3)
    assert (a.matrix == b.matrix).all()
