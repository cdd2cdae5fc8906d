"""Rank-2 lattices in the rational plane spanned by {1, w}.

A lattice is stored by its unique upper-triangular basis

    e1 = a,    e2 = b + c*w,    a > 0, c > 0, 0 <= b < a,

i.e. the column-style Hermite normal form of any generating set (the
entries may be rational).  Two lattices are equal as sets exactly when
these stored forms agree, so dataclass equality is set equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import AmbientMismatch, NotASublattice, RankDeficient
from .exact import AmbientTag, Formal, QuadElement, Quadratic, format_rational, to_rational

INTEGERS = "Z"
"""Marker returned by :func:`multiplier_ring` for a curve without CM."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def rational_gcd(values: Iterable[Fraction]) -> Fraction:
    """Positive generator of the subgroup of Q generated by ``values``."""
    num, den = 0, 1
    for v in values:
        v = Fraction(v)
        if v == 0:
            continue
        num = gcd(num, v.numerator)
        den = lcm(den, v.denominator)
    return Fraction(num, den)


def _hnf_columns(vectors: Sequence[tuple[Fraction, Fraction]]):
    """Upper-triangular Hermite form (a, b, c) of the Z-span of rational 2-vectors."""
    den = 1
    for x, y in vectors:
        den = lcm(den, Fraction(x).denominator, Fraction(y).denominator)
    ints = [(int(Fraction(x) * den), int(Fraction(y) * den)) for x, y in vectors]

    pivot = None
    first_row = 0
    for vx, vy in ints:
        if vy == 0:
            first_row = gcd(first_row, vx)
            continue
        if pivot is None:
            pivot = (vx, vy)
            continue
        px, py = pivot
        g, s, t = xgcd(py, vy)
        pivot = (s * px + t * vx, g)
        # the complementary unimodular column has zero second coordinate
        first_row = gcd(first_row, (vy // g) * px - (py // g) * vx)
    if pivot is None or first_row == 0:
        raise RankDeficient("generators do not span a rank-2 lattice")
    px, py = pivot
    if py < 0:
        px, py = -px, -py
    a = first_row
    return Fraction(a, den), Fraction(px % a, den), Fraction(py, den)


def _as_pair(v) -> tuple[Fraction, Fraction]:
    if isinstance(v, QuadElement):
        return v.a, v.b
    x, y = v
    return to_rational(x), to_rational(y)


@dataclass(frozen=True)
class Lattice:
    ambient: AmbientTag
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if not (self.a > 0 and self.c > 0 and 0 <= self.b < self.a):
            raise ValueError(
                "Lattice fields must be in Hermite normal form; use hnf_canonicalize"
            )

    # views of the stored basis

    @property
    def basis(self) -> tuple[QuadElement, QuadElement]:
        return (
            QuadElement(self.a, Fraction(0), self.ambient),
            QuadElement(self.b, self.c, self.ambient),
        )

    @property
    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        """Rows of the basis matrix; its columns are the basis vectors."""
        return ((self.a, self.b), (Fraction(0), self.c))

    @property
    def det(self) -> Fraction:
        return self.a * self.c

    @property
    def scale(self) -> Fraction:
        """Positive rational s with matrix = s * (primitive integer HNF matrix)."""
        return rational_gcd((self.a, self.b, self.c))

    @property
    def integer_matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        s = self.scale
        return (
            (int(self.a / s), int(self.b / s)),
            (0, int(self.c / s)),
        )

    def coordinates(self, v) -> tuple[Fraction, Fraction]:
        """Coordinates of ``v`` with respect to (e1, e2)."""
        if isinstance(v, QuadElement) and v.ambient != self.ambient:
            raise AmbientMismatch(f"{v.ambient} vs {self.ambient}")
        x, y = _as_pair(v)
        cy = y / self.c
        return (x - cy * self.b) / self.a, cy

    def point(self, x, y) -> QuadElement:
        x, y = to_rational(x), to_rational(y)
        return QuadElement(x * self.a + y * self.b, y * self.c, self.ambient)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def scaled(self, zeta) -> Lattice:
        """The lattice zeta * self."""
        if not isinstance(zeta, QuadElement):
            zeta = QuadElement.rational(zeta, self.ambient)
        e1, e2 = self.basis
        return hnf_canonicalize([zeta * e1, zeta * e2])

    def __add__(self, other: Lattice) -> Lattice:
        if other.ambient != self.ambient:
            raise AmbientMismatch(f"{self.ambient} vs {other.ambient}")
        return hnf_canonicalize(list(self.basis) + list(other.basis))

    def to_json(self):
        return [[format_rational(x) for x in row] for row in self.matrix]

    def __str__(self):
        e1, e2 = self.basis
        return f"<{e1}, {e2}>"


def hnf_canonicalize(vectors, ambient: AmbientTag | None = None) -> Lattice:
    """Canonical lattice spanned by ``vectors`` (QuadElements or coordinate pairs).

    Any number of generators is accepted as long as they span a rank-2 group.
    """
    vectors = list(vectors)
    for v in vectors:
        if isinstance(v, QuadElement):
            if ambient is None:
                ambient = v.ambient
            elif v.ambient != ambient:
                raise AmbientMismatch(f"{v.ambient} vs {ambient}")
    if ambient is None:
        raise ValueError("ambient must be given for coordinate-pair input")
    if len(vectors) < 2:
        raise RankDeficient("a rank-2 lattice needs at least two generators")
    a, b, c = _hnf_columns([_as_pair(v) for v in vectors])
    return Lattice(ambient, a, b, c)


def contains(lat: Lattice, v: QuadElement) -> bool:
    x, y = lat.coordinates(v)
    return x.denominator == 1 and y.denominator == 1


def is_sublattice(sub: Lattice, sup: Lattice) -> bool:
    if sub.ambient != sup.ambient:
        return False
    return all(contains(sup, e) for e in sub.basis)


def index(sub: Lattice, sup: Lattice) -> int:
    if not is_sublattice(sub, sup):
        raise NotASublattice(f"{sub} is not contained in {sup}")
    q = sub.det / sup.det
    assert q.denominator == 1
    return int(q)


def dual_lattice(lat: Lattice) -> Lattice:
    """Dual with respect to the coordinate dot product in the frame {1, w}."""
    a, b, c = lat.a, lat.b, lat.c
    return hnf_canonicalize([(1 / a, -b / (a * c)), (Fraction(0), 1 / c)], lat.ambient)


def intersection(l1: Lattice, l2: Lattice) -> Lattice:
    if l1.ambient != l2.ambient:
        raise AmbientMismatch(f"{l1.ambient} vs {l2.ambient}")
    return dual_lattice(dual_lattice(l1) + dual_lattice(l2))


def colon_lattice(lat_a: Lattice, lat_b: Lattice) -> Lattice | Fraction:
    """{zeta : zeta * lat_b is contained in lat_a}.

    Quadratic ambient: a rank-2 Lattice.  Formal ambient: the multipliers are
    rational, and the positive generator c of the ideal c*Z is returned.
    Formal lattices with rational coordinates are always commensurable, so
    the ideal is never zero.
    """
    if lat_a.ambient != lat_b.ambient:
        raise AmbientMismatch(f"{lat_a.ambient} vs {lat_b.ambient}")
    amb = lat_a.ambient
    if isinstance(amb, Formal):
        coords = []
        for e in lat_b.basis:
            coords.extend(lat_a.coordinates(e))
        return 1 / rational_gcd(coords)

    # zeta = u + v*w maps to coordinates T_e (u, v) of zeta*e in lat_a;
    # the colon lattice is the dual of the span of the rows of all T_e.
    rows = []
    for e in lat_b.basis:
        p, q = e.a, e.b
        # zeta*e as a vector: [[p, -d q], [q, p]] (u, v)
        col_u = (p, q)
        col_v = (-amb.d * q, p)
        cu = lat_a.coordinates(col_u)
        cv = lat_a.coordinates(col_v)
        rows.append((cu[0], cv[0]))
        rows.append((cu[1], cv[1]))
    return dual_lattice(hnf_canonicalize(rows, amb))


def multiplier_ring(lat: Lattice) -> Lattice | str:
    """End of the curve C/lat: an order in the quadratic case, ``INTEGERS`` otherwise."""
    if isinstance(lat.ambient, Formal):
        return INTEGERS
    return colon_lattice(lat, lat)


def maximal_order(d: int) -> Lattice:
    """The ring of integers of Q(sqrt(-d)) as a lattice."""
    amb = Quadratic(d)
    if d % 4 == 3:
        delta = (Fraction(1, 2), Fraction(1, 2))
    else:
        delta = (Fraction(0), Fraction(1))
    return hnf_canonicalize([(Fraction(1), Fraction(0)), delta], amb)


@dataclass(frozen=True)
class TorsionPoint:
    """A point of C/lat with rational coordinates in the canonical basis, reduced mod 1."""

    lattice: Lattice
    coords: tuple[Fraction, Fraction]

    def __post_init__(self):
        x, y = (to_rational(c) for c in self.coords)
        object.__setattr__(self, "coords", (x - (x.numerator // x.denominator),
                                            y - (y.numerator // y.denominator)))

    @classmethod
    def from_lift(cls, lat: Lattice, v: QuadElement) -> TorsionPoint:
        return cls(lat, lat.coordinates(v))

    @classmethod
    def zero(cls, lat: Lattice) -> TorsionPoint:
        return cls(lat, (Fraction(0), Fraction(0)))

    def lift(self) -> QuadElement:
        return self.lattice.point(*self.coords)

    def is_zero(self) -> bool:
        return self.coords == (0, 0)

    @property
    def order(self) -> int:
        return point_order(self)

    def _check(self, other: TorsionPoint):
        if other.lattice != self.lattice:
            raise AmbientMismatch("points lie on different curves")

    def __add__(self, other: TorsionPoint) -> TorsionPoint:
        self._check(other)
        return TorsionPoint(self.lattice, (self.coords[0] + other.coords[0],
                                           self.coords[1] + other.coords[1]))

    def __neg__(self) -> TorsionPoint:
        return TorsionPoint(self.lattice, (-self.coords[0], -self.coords[1]))

    def __sub__(self, other: TorsionPoint) -> TorsionPoint:
        return self + (-other)

    def __rmul__(self, n: int) -> TorsionPoint:
        if not isinstance(n, int):
            return NotImplemented
        return TorsionPoint(self.lattice, (n * self.coords[0], n * self.coords[1]))

    def to_json(self):
        return [format_rational(c) for c in self.coords]

    def __str__(self):
        return "(" + ", ".join(format_rational(c) for c in self.coords) + ")"


def torsion_points(lat: Lattice, n: int) -> list[TorsionPoint]:
    """All n^2 points of C/lat killed by n, in lexicographic coordinate order."""
    if n < 1:
        raise ValueError("n must be positive")
    return [TorsionPoint(lat, (Fraction(i, n), Fraction(j, n)))
            for i in range(n) for j in range(n)]


def point_order(p: TorsionPoint) -> int:
    return lcm(p.coords[0].denominator, p.coords[1].denominator)
