import random
from itertools import combinations, product

import pytest

from rainbow_lab.designs import is_sts
from rainbow_lab.errors import GeometryError, ParameterError
from rainbow_lab.gf2geom import (
    BLOCK,
    LINE_TYPE,
    PLANE_TRIPLE,
    POINT_TYPE,
    ProjSubspace,
    build_grassmann,
    build_pg,
    classify_triple,
    enumerate_planes,
    gaussian_binomial,
    good_coloring_from_independent_set,
    greedy_independent_set,
    is_good_coloring,
    is_independent,
    point_set,
    projective_closure,
    triangle_type,
)

E = [1, 2, 4, 8, 16, 32]  # standard basis e1..e6


def plane(*basis):
    pts = {0}
    for v in basis:
        pts |= {u ^ v for u in pts}
    return ProjSubspace(point_set(pts - {0}))


def brute_planes(s):
    """Every 3 x s matrix over GF(2), spanned and deduplicated."""
    out = set()
    for rows in product(range(1 << s), repeat=3):
        pts = {0}
        for v in rows:
            pts |= {u ^ v for u in pts}
        if len(pts) == 8:
            out.add(frozenset(pts - {0}))
    return out


def test_closure_examples():
    line = projective_closure(1, 2, 3, s=3)
    assert line.points == [1, 2, 3] and line.dim == 1
    pl = projective_closure(1, 2, 4, s=3)
    assert pl.points == list(range(1, 8)) and pl.dim == 2
    assert projective_closure(1, 2, 8, s=4).points == [1, 2, 3, 8, 9, 10, 11]


@pytest.mark.parametrize("bad", [(1, 1, 2), (0, 1, 2), (1, 2, 8)])
def test_closure_errors(bad):
    with pytest.raises(GeometryError):
        projective_closure(*bad, s=3)


def test_classify_examples():
    assert classify_triple(1, 2, 3).kind == BLOCK
    t = classify_triple(1, 2, 4)
    assert t.kind == PLANE_TRIPLE and t.closure.points == list(range(1, 8))
    assert classify_triple(3, 5, 6).kind == BLOCK


@pytest.mark.parametrize("s,n,b", [(2, 3, 1), (3, 7, 7), (4, 15, 35), (5, 31, 155)])
def test_build_pg(s, n, b):
    t = build_pg(s)
    assert t.n == n and len(t) == b and is_sts(t)
    with pytest.raises(ParameterError):
        build_pg(1)


@pytest.mark.parametrize("s,count", [(3, 1), (4, 15), (5, 155), (6, 1395)])
def test_plane_counts(s, count):
    planes = enumerate_planes(s)
    assert len(planes) == count == gaussian_binomial(s, 3)
    assert all(p.size == 7 and p.dim == 2 and p.is_subspace() for p in planes)
    assert [p.mask for p in planes] == sorted(p.mask for p in planes)


@pytest.mark.parametrize("s", [3, 4, 5])
def test_planes_match_brute_force(s):
    expected = {point_set(p) for p in brute_planes(s)}
    assert {p.mask for p in enumerate_planes(s)} == expected


def test_plane_count_s6_matches_brute_force():
    assert len(brute_planes(6)) == len(enumerate_planes(6))


def test_grassmann_examples():
    j3 = build_grassmann(3)
    assert len(j3) == 1 and j3.num_edges == 0
    j4 = build_grassmann(4)
    assert len(j4) == 15 and j4.num_edges == comb2(15)
    j5 = build_grassmann(5)
    assert len(j5) == 155
    masks = [p.mask for p in j5.planes]
    for i, j in combinations(range(155), 2):
        k = bin(masks[i] & masks[j]).count("1")
        assert k in (1, 3)
        assert j5.adjacent(i, j) == (k == 3)
    with pytest.raises(ParameterError):
        build_grassmann(2)


def comb2(n):
    return n * (n - 1) // 2


def test_grassmann_symmetric_irreflexive():
    g = build_grassmann(5)
    for i, a in enumerate(g.adj):
        assert i not in a
        assert all(i in g.adj[j] for j in a)


def test_triangle_type_examples():
    e1, e2, e3, e4, e5 = E[:5]
    assert triangle_type(plane(e1, e2, e3), plane(e1, e2, e4), plane(e1, e2, e5)) == LINE_TYPE
    # three lines through e1: <e1,e2>, <e1,e3>, <e1,e4>
    w1, w2, w3 = plane(e1, e2, e3), plane(e1, e3, e4), plane(e1, e2, e4)
    assert triangle_type(w1, w2, w3) == POINT_TYPE
    with pytest.raises(GeometryError):
        triangle_type(plane(e1, e2, e3), plane(e3, e4, e5), plane(e1, e2, e4))
    with pytest.raises(GeometryError):
        triangle_type(w1, w1, w2)


def test_s4_triangle_types():
    g = build_grassmann(4)
    masks = [p.mask for p in g.planes]
    for u, v, w in g.triangles():
        k = bin(masks[u] & masks[v] & masks[w]).count("1")
        assert triangle_type(g.planes[u], g.planes[v], g.planes[w]) == (POINT_TYPE if k == 1 else LINE_TYPE)


@pytest.mark.parametrize("s", [4, 5])
def test_triangle_intersections_point_or_line(s):
    g = build_grassmann(s)
    masks = [p.mask for p in g.planes]
    n = 0
    for u, v, w in g.triangles():
        assert bin(masks[u] & masks[v] & masks[w]).count("1") in (1, 3)
        n += 1
    assert n > 0


def test_triangles_match_brute_force_s4():
    g = build_grassmann(4)
    assert sum(1 for _ in g.triangles()) == 455  # C(15,3), complete graph


def test_greedy_independent_set_examples():
    assert len(greedy_independent_set(build_grassmann(3))) == 1
    assert len(greedy_independent_set(build_grassmann(4))) == 1
    g5 = build_grassmann(5)
    ind = greedy_independent_set(g5)
    assert len(ind) >= 2 and is_independent(g5, ind)
    a = g5.planes.index(plane(E[0], E[1], E[2]))
    b = g5.planes.index(plane(E[2], E[3], E[4]))
    assert not g5.adjacent(a, b) and is_independent(g5, [a, b])


def test_greedy_is_maximal_and_seeded():
    g = build_grassmann(5)
    for seed in range(3):
        ind = greedy_independent_set(g, order_seed=seed, restarts=4)
        assert ind == greedy_independent_set(g, order_seed=seed, restarts=4)
        chosen = set(ind)
        for v in range(len(g)):
            assert v in chosen or g.adj[v] & chosen


def test_good_coloring_examples():
    g3 = build_grassmann(3)
    phi = good_coloring_from_independent_set(g3, [0])
    assert len(set(phi)) == 1
    g4 = build_grassmann(4)
    phi = good_coloring_from_independent_set(g4, [5])
    assert len(set(phi)) == 2 and phi.count(phi[0] if phi[0] != phi[5] else phi[1]) == 14
    g5 = build_grassmann(5)
    ind = greedy_independent_set(g5)
    phi = good_coloring_from_independent_set(g5, ind)
    assert len(set(phi)) == len(ind) + 1
    assert is_good_coloring(g5, phi).good
    with pytest.raises(GeometryError):
        good_coloring_from_independent_set(g4, [0, 1])


def test_is_good_coloring_examples():
    g5 = build_grassmann(5)
    rng = random.Random(0)
    two = [rng.randrange(2) for _ in range(155)]
    assert is_good_coloring(g5, two).good
    rep = is_good_coloring(g5, list(range(155)))
    assert not rep.good
    u, v, w = rep.witness
    assert triangle_type(g5.planes[u], g5.planes[v], g5.planes[w]) == POINT_TYPE
    assert is_good_coloring(g5, {i: i % 2 for i in range(155)}).good
    with pytest.raises(GeometryError):
        is_good_coloring(g5, {0: 1})
    with pytest.raises(GeometryError):
        is_good_coloring(g5, [0] * 10)


# ---------------------------------------------------------------------------
# exhaustive structure checks for s in {3, 4}


@pytest.mark.parametrize("s", [3, 4])
def test_block_iff_pg_block(s):
    n = (1 << s) - 1
    blocks = set(build_pg(s).blocks)
    for x, y, z in combinations(range(1, n + 1), 3):
        is_block = classify_triple(x, y, z, s).kind == BLOCK
        assert is_block == ((x - 1, y - 1, z - 1) in blocks)


@pytest.mark.parametrize("s", [3, 4])
def test_unique_plane_through_non_block(s):
    n = (1 << s) - 1
    planes = [p.mask for p in enumerate_planes(s)]
    fano = sorted(build_pg(3).blocks)
    for x, y, z in combinations(range(1, n + 1), 3):
        if x ^ y ^ z == 0:
            continue
        t = point_set((x, y, z))
        containing = [m for m in planes if m & t == t]
        cl = classify_triple(x, y, z, s).closure
        assert containing == [cl.mask]
        # restricted to its plane, the blocks form a Fano plane
        pts = cl.points
        inner = sorted(
            tuple(sorted(pts.index(v) for v in (a, b, c)))
            for a, b, c in combinations(pts, 3)
            if a ^ b ^ c == 0
        )
        assert len(inner) == 7 and _isomorphic_to(inner, fano)


def _isomorphic_to(blocks, target):
    from itertools import permutations

    tgt = set(target)
    for perm in permutations(range(7)):
        if {tuple(sorted(perm[v] for v in b)) for b in blocks} == tgt:
            return True
    return False


@pytest.mark.parametrize("s", [3, 4])
def test_block_plus_outside_point(s):
    n = (1 << s) - 1
    for x, y in combinations(range(1, n + 1), 2):
        z = x ^ y
        if z < y:
            continue
        for d in range(1, n + 1):
            if d in (x, y, z):
                continue
            a = projective_closure(x, y, d, s)
            b = projective_closure(x, z, d, s)
            c = projective_closure(y, z, d, s)
            assert a == b == c and a.dim == 2


def test_gaussian_binomial():
    assert [gaussian_binomial(s, 3) for s in (3, 4, 5, 6)] == [1, 15, 155, 1395]
