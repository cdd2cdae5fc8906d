"""Small curves and isogenies shared by the isogeny and acceptance tests."""

from fractions import Fraction as F

import oracle
from bielliptic.exact import Formal, QuadElement, Quadratic
from bielliptic.isogeny import EllipticCurve, Isogeny
from bielliptic.lattice import hnf_canonicalize, maximal_order

T = Formal("t0")

CM_CURVES = [
    hnf_canonicalize(b, Quadratic(d)) for d, b in [
        (1, [(1, 0), (0, 1)]),
        (1, [(1, 0), (0, 2)]),
        (1, [(2, 0), (0, 1)]),
        (1, [(2, 0), (1, 1)]),
        (2, [(1, 0), (0, 1)]),
        (2, [(2, 0), (0, 1)]),
        (3, [(1, 0), (F(1, 2), F(1, 2))]),
        (3, [(1, 0), (0, 1)]),
        (5, [(1, 0), (0, 1)]),
    ]
]
FORMAL_CURVES = [
    hnf_canonicalize(b, T) for b in [
        [(1, 0), (0, 1)],
        [(F(1, 2), 0), (0, 1)],
        [(1, 0), (0, F(1, 2))],
        [(F(1, 3), 0), (0, 1)],
        [(1, 0), (F(1, 2), F(1, 2))],
    ]
]


def isogeny_samples(max_degree=6):
    """Every isogeny between listed curves whose multiplier has small
    coordinates (numerators <= 3, denominators <= 2) and degree <= max_degree."""
    out = []
    for lattices, d in ((CM_CURVES, "cm"), (FORMAL_CURVES, None)):
        for src in lattices:
            for tgt in lattices:
                if src.ambient != tgt.ambient:
                    continue
                dd = None if d is None else src.ambient.d
                sb = tuple((e.a, e.b) for e in src.basis)
                tb = tuple((e.a, e.b) for e in tgt.basis)
                for z in oracle.grid(3, 2, rational_only=dd is None):
                    if z == (0, 0) or not oracle.is_multiplier(z, sb, tb, dd):
                        continue
                    n = z[0] * z[0] if dd is None else oracle.norm(z, dd)
                    if n * oracle.covolume(sb) / oracle.covolume(tb) > max_degree:
                        continue
                    out.append(Isogeny(EllipticCurve(src), EllipticCurve(tgt),
                                       QuadElement(z[0], z[1], src.ambient)))
    return out


def gaussian():
    return EllipticCurve(maximal_order(1))
