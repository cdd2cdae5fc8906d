import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from bielliptic.errors import AmbientMismatch, NotASublattice, RankDeficient
from bielliptic.exact import Formal, QuadElement, Quadratic
from bielliptic.lattice import (
    INTEGERS,
    Lattice,
    TorsionPoint,
    colon_lattice,
    contains,
    dual_lattice,
    hnf_canonicalize,
    index,
    intersection,
    is_sublattice,
    maximal_order,
    multiplier_ring,
    rational_gcd,
    torsion_points,
    xgcd,
)
from conftest import formal_lattices, quad_lattices

I = Quadratic(1)
T = Formal("t0")


def lat(u, v, amb=I):
    return hnf_canonicalize([u, v], amb)


def pairs(L):
    return tuple((e.a, e.b) for e in L.basis)


def unimodular(rng, steps=6):
    m = [[1, 0], [0, 1]]
    for _ in range(steps):
        i, j = rng.sample([0, 1], 2)
        k = rng.choice([-2, -1, 1, 2])
        m[i] = [m[i][0] + k * m[j][0], m[i][1] + k * m[j][1]]
        if rng.random() < 0.3:
            m[i] = [-m[i][0], -m[i][1]]
    return m


def test_xgcd_and_rational_gcd():
    for a, b in product(range(-12, 13), repeat=2):
        g, s, t = xgcd(a, b)
        assert g >= 0 and s * a + t * b == g
    assert rational_gcd([Fraction(1, 2), Fraction(1, 3)]) == Fraction(1, 6)
    assert rational_gcd([Fraction(4, 3), Fraction(2)]) == Fraction(2, 3)


def test_hnf_shape_and_examples():
    L = lat((2, 0), (1, 1))
    assert (L.a, L.b, L.c) == (2, 1, 1)
    assert lat((1, 0), (1, 2)) == lat((1, 0), (0, 2))
    assert maximal_order(3) == hnf_canonicalize([(1, 0), (Fraction(1, 2), Fraction(1, 2))], Quadratic(3))
    assert maximal_order(1) == lat((1, 0), (0, 1))
    assert str(maximal_order(3)) == "<1, 1/2 + 1/2*w>"
    assert L.to_json() == [["2", "1"], ["0", "1"]]


def test_hnf_rejects_rank_deficiency():
    with pytest.raises(RankDeficient):
        lat((1, 1), (2, 2))
    with pytest.raises(RankDeficient):
        hnf_canonicalize([(1, 0)], I)
    with pytest.raises(ValueError):
        Lattice(I, 1, 1, 1)  # b must be < a


@settings(max_examples=50)
@given(quad_lattices(), st.randoms(use_true_random=False))
def test_hnf_is_basis_independent(L, rng):
    u, v = pairs(L)
    m = unimodular(rng)
    u2 = (m[0][0] * u[0] + m[0][1] * v[0], m[0][0] * u[1] + m[0][1] * v[1])
    v2 = (m[1][0] * u[0] + m[1][1] * v[0], m[1][0] * u[1] + m[1][1] * v[1])
    assert hnf_canonicalize([u2, v2], L.ambient) == L
    # redundant generators change nothing
    assert hnf_canonicalize([u, v, u2, v2, (u[0] + v[0], u[1] + v[1])], L.ambient) == L
    assert hnf_canonicalize(L.basis) == L


@settings(max_examples=50)
@given(quad_lattices())
def test_coordinates_and_containment(L):
    for x, y in product(range(-2, 3), repeat=2):
        v = L.point(x, y)
        assert contains(L, v)
        assert L.coordinates(v) == (x, y)
    assert not contains(L, L.point(Fraction(1, 2), 0))
    assert oracle.in_lattice((L.b + L.a, L.c), pairs(L))


@settings(max_examples=40)
@given(quad_lattices(d=1), quad_lattices(d=1), quad_lattices(d=1))
def test_index_is_multiplicative(L1, L2, L3):
    # build a chain by intersecting
    inner = intersection(intersection(L1, L2), L3)
    middle = intersection(L1, L2)
    assert is_sublattice(inner, middle) and is_sublattice(middle, L1)
    assert index(inner, L1) == index(inner, middle) * index(middle, L1)
    # brute force: the index equals the number of cosets found by reducing a box
    assert index(middle, L1) == middle.det / L1.det


def test_index_errors():
    with pytest.raises(NotASublattice):
        index(lat((1, 0), (0, 1)), lat((1, 0), (0, 2)))
    assert index(lat((1, 0), (0, 2)), lat((1, 0), (0, 1))) == 2
    assert not is_sublattice(lat((1, 0), (0, 1)), lat((1, 0), (0, 1), T))


@settings(max_examples=40)
@given(quad_lattices(), quad_lattices())
def test_intersection_and_sum(L1, L2):
    if L1.ambient != L2.ambient:
        with pytest.raises(AmbientMismatch):
            intersection(L1, L2)
        return
    meet, join = intersection(L1, L2), L1 + L2
    for L in (L1, L2):
        assert is_sublattice(meet, L) and is_sublattice(L, join)
    assert index(meet, L1) == index(L2, join)
    assert dual_lattice(dual_lattice(L1)) == L1


# colon lattice against brute force over the grid p/r, p, r <= 8

COLON_CASES = [
    (Quadratic(1), ((1, 0), (0, 2)), ((1, 0), (0, 1))),
    (Quadratic(1), ((1, 0), (0, 1)), ((1, 0), (0, 2))),
    (Quadratic(1), ((2, 0), (1, 1)), ((2, 0), (1, 1))),
    (Quadratic(2), ((1, 0), (0, 1)), ((2, 0), (0, 1))),
    (Quadratic(3), ((1, 0), (Fraction(1, 2), Fraction(1, 2))), ((1, 0), (0, 1))),
    (Quadratic(5), ((2, 0), (1, 1)), ((1, 0), (0, 1))),
    (Quadratic(7), ((1, 0), (Fraction(1, 2), Fraction(1, 2))), ((1, 0), (0, 2))),
]


def _grid_agreement(L_a, L_b, d):
    colon = colon_lattice(L_a, L_b)
    src = tuple(tuple(Fraction(x) for x in e) for e in pairs(L_b))
    tgt = tuple(tuple(Fraction(x) for x in e) for e in pairs(L_a))
    for zeta in oracle.grid(8, 8, rational_only=d is None):
        expected = oracle.is_multiplier(zeta, src, tgt, d)
        if d is None:
            got = (zeta[0] / colon).denominator == 1
        else:
            got = contains(colon, QuadElement(zeta[0], zeta[1], L_a.ambient))
        assert got == expected, zeta


@pytest.mark.parametrize("amb,a,b", COLON_CASES, ids=lambda x: str(x))
def test_colon_matches_brute_force(amb, a, b):
    _grid_agreement(hnf_canonicalize(a, amb), hnf_canonicalize(b, amb), amb.d)


def test_colon_formal_matches_brute_force():
    cases = [
        (((1, 0), (0, 1)), ((Fraction(1, 2), 0), (0, 1))),
        (((Fraction(1, 2), 0), (0, 1)), ((1, 0), (0, 1))),
        (((2, 0), (1, 3)), ((1, 0), (0, 1))),
        (((1, 0), (0, Fraction(1, 3))), ((Fraction(1, 2), 0), (0, 1))),
    ]
    for a, b in cases:
        _grid_agreement(hnf_canonicalize(a, T), hnf_canonicalize(b, T), None)


@settings(max_examples=25, deadline=None)
@given(quad_lattices(max_entry=3), st.data())
def test_colon_property(L_b, data):
    L_a = data.draw(quad_lattices(d=L_b.ambient.d, max_entry=3))
    colon = colon_lattice(L_a, L_b)
    for zeta in colon.basis:
        assert all(contains(L_a, zeta * e) for e in L_b.basis)


def test_example_hom_lattice():
    assert colon_lattice(lat((1, 0), (0, 2)), lat((1, 0), (0, 1))) == lat((2, 0), (0, 2))


def test_multiplier_rings():
    assert multiplier_ring(lat((1, 0), (0, 1))) == lat((1, 0), (0, 1))
    assert multiplier_ring(lat((1, 0), (0, 2))) == lat((1, 0), (0, 2))
    assert multiplier_ring(maximal_order(3)) == maximal_order(3)
    assert multiplier_ring(lat((1, 0), (0, 1), T)) == INTEGERS
    # the ideal <2, 1 + w> of Z[sqrt(-5)] has the maximal order as multiplier ring
    d5 = Quadratic(5)
    assert multiplier_ring(hnf_canonicalize([(2, 0), (1, 1)], d5)) == maximal_order(5)


@pytest.mark.parametrize("d", [1, 2, 3, 5, 7])
def test_multiplier_ring_is_maximal_among_samples(d):
    """200 grid elements outside End(L) never multiply L into itself."""
    amb = Quadratic(d)
    rng = random.Random(d)
    for L in (maximal_order(d), hnf_canonicalize([(1, 0), (0, 2)], amb),
              hnf_canonicalize([(3, 0), (1, 1)], amb)):
        end = multiplier_ring(L)
        assert contains(end, QuadElement(1, 0, amb))
        for e, f in product(end.basis, repeat=2):
            assert contains(end, e * f)
        src = pairs(L)
        outside = [z for z in oracle.grid(6, 6)
                   if not contains(end, QuadElement(z[0], z[1], amb))]
        for z in rng.sample(outside, 200):
            assert not oracle.is_multiplier(z, src, src, d)


# torsion

@pytest.mark.parametrize("n", range(1, 7))
def test_torsion_group_cayley_table(n):
    L = hnf_canonicalize([(2, 0), (1, 3)], Quadratic(2))
    pts = torsion_points(L, n)
    assert len(pts) == n * n == len(set(pts))
    zero = TorsionPoint.zero(L)
    index_of = {p: k for k, p in enumerate(pts)}
    table = [[index_of[p + q] for q in pts] for p in pts]
    # every row and column is a permutation
    for k in range(len(pts)):
        assert sorted(table[k]) == list(range(len(pts)))
        assert sorted(row[k] for row in table) == list(range(len(pts)))
    for p in pts:
        assert p + zero == p and p + (-p) == zero
        assert n * p == zero
        assert p.order * p == zero
        assert all(k * p != zero for k in range(1, p.order))
        assert TorsionPoint.from_lift(L, p.lift()) == p
    for p, q, r in product(pts[:5], repeat=3):
        assert (p + q) + r == p + (q + r)
    assert pts == sorted(pts, key=lambda p: p.coords)


def test_exact_order_counts():
    L = maximal_order(1)
    counts = {}
    for p in torsion_points(L, 4):
        counts[p.order] = counts.get(p.order, 0) + 1
    assert counts == {1: 1, 2: 3, 4: 12}
    assert sum(1 for p in torsion_points(maximal_order(3), 3) if p.order == 3) == 8


def test_torsion_point_reduction_and_strings():
    L = maximal_order(1)
    p = TorsionPoint(L, (Fraction(3, 2), Fraction(-1, 4)))
    assert p.coords == (Fraction(1, 2), Fraction(3, 4))
    assert str(p) == "(1/2, 3/4)" and p.to_json() == ["1/2", "3/4"]
    with pytest.raises(ValueError):
        torsion_points(L, 0)


@settings(max_examples=30)
@given(formal_lattices())
def test_formal_lattices_behave(L):
    assert multiplier_ring(L) == INTEGERS
    assert colon_lattice(L, L) == 1
    assert colon_lattice(L, L.scaled(2)) == Fraction(1, 2)
