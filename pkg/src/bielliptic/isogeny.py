"""Elliptic curves C/L as lattices and isogenies between them as multipliers.

An isogeny B -> A is multiplication by a nonzero zeta with zeta*L_B inside
L_A.  Degree-zero line bundles are identified with points via x -> P_x, and
pullback along phi on Pic^0 is computed as the dual isogeny, whose
multiplier is deg(phi)/zeta (the unique multiplier composing with zeta to
multiplication by deg(phi)).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import (
    AmbientMismatch,
    CurveMismatch,
    NoGeneratorFound,
    NotAMultiplier,
    ZeroModule,
    ZeroMultiplier,
    ZeroPoint,
)
from .exact import Formal, QuadElement, Quadratic, format_rational
from .lattice import (
    Lattice,
    TorsionPoint,
    colon_lattice,
    hnf_canonicalize,
    index,
    is_sublattice,
    maximal_order,
    multiplier_ring,
    torsion_points,
)


class SpecialJ(enum.Enum):
    J1728 = "j=1728"
    J0 = "j=0"
    OTHER_CM = "CM"
    NO_CM = "no CM"


@dataclass(frozen=True)
class EllipticCurve:
    lattice: Lattice
    endomorphisms: Lattice | str = field(init=False, compare=False, repr=False)
    special: SpecialJ = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        end = multiplier_ring(self.lattice)
        amb = self.lattice.ambient
        if isinstance(amb, Formal):
            special = SpecialJ.NO_CM
        elif amb.d == 1 and end == maximal_order(1):
            special = SpecialJ.J1728
        elif amb.d == 3 and end == maximal_order(3):
            special = SpecialJ.J0
        else:
            special = SpecialJ.OTHER_CM
        object.__setattr__(self, "endomorphisms", end)
        object.__setattr__(self, "special", special)

    @classmethod
    def from_generators(cls, vectors, ambient=None) -> EllipticCurve:
        return cls(hnf_canonicalize(vectors, ambient))

    @property
    def ambient(self):
        return self.lattice.ambient

    @property
    def has_cm(self) -> bool:
        return self.special is not SpecialJ.NO_CM

    def element(self, a, b=0) -> QuadElement:
        return QuadElement(a, b, self.ambient)

    def point(self, x, y) -> TorsionPoint:
        return TorsionPoint(self.lattice, (x, y))

    def point_from_lift(self, v: QuadElement) -> TorsionPoint:
        return TorsionPoint.from_lift(self.lattice, v)

    def torsion(self, n: int) -> list[TorsionPoint]:
        return torsion_points(self.lattice, n)

    def __str__(self):
        return f"C/{self.lattice} [{self.special.value}]"


def _as_multiplier(zeta, ambient) -> QuadElement:
    if isinstance(zeta, QuadElement):
        if zeta.ambient != ambient:
            raise AmbientMismatch(f"{zeta.ambient} vs {ambient}")
        return zeta
    return QuadElement.rational(zeta, ambient)


@dataclass(frozen=True)
class Isogeny:
    """phi_zeta: source -> target, z -> zeta*z."""

    source: EllipticCurve
    target: EllipticCurve
    multiplier: QuadElement
    degree: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.source.ambient != self.target.ambient:
            raise NotAMultiplier("no isogenies between curves with different ambients")
        zeta = _as_multiplier(self.multiplier, self.source.ambient)
        object.__setattr__(self, "multiplier", zeta)
        if zeta.is_zero():
            raise ZeroMultiplier("the zero map is not an isogeny")
        if isinstance(zeta.ambient, Formal) and not zeta.is_rational:
            raise NotAMultiplier("formal curves only admit rational multipliers")
        image = self.source.lattice.scaled(zeta)
        if not is_sublattice(image, self.target.lattice):
            raise NotAMultiplier(f"{zeta} * {self.source.lattice} is not inside {self.target.lattice}")
        object.__setattr__(self, "degree", index(image, self.target.lattice))

    @property
    def is_endomorphism(self) -> bool:
        return self.source == self.target

    def __add__(self, other: Isogeny) -> Isogeny:
        if (other.source, other.target) != (self.source, self.target):
            raise CurveMismatch("can only add isogenies with the same source and target")
        return Isogeny(self.source, self.target, self.multiplier + other.multiplier)

    def __neg__(self) -> Isogeny:
        return Isogeny(self.source, self.target, -self.multiplier)

    def __rmul__(self, n: int) -> Isogeny:
        if not isinstance(n, int):
            return NotImplemented
        return Isogeny(self.source, self.target, n * self.multiplier)

    def to_json(self):
        return {
            "source": self.source.lattice.to_json(),
            "target": self.target.lattice.to_json(),
            "multiplier": self.multiplier.to_json(),
            "degree": self.degree,
        }

    def __str__(self):
        return f"[{self.multiplier}]: {self.source.lattice} -> {self.target.lattice} (deg {self.degree})"


def make_isogeny(source: EllipticCurve, target: EllipticCurve, zeta) -> Isogeny:
    return Isogeny(source, target, zeta)


def multiplication_by(curve: EllipticCurve, zeta) -> Isogeny:
    return Isogeny(curve, curve, zeta)


def identity(curve: EllipticCurve) -> Isogeny:
    return Isogeny(curve, curve, 1)


def compose(f: Isogeny, g: Isogeny) -> Isogeny:
    """f o g (apply g first)."""
    if g.target != f.source:
        raise CurveMismatch("target of the inner map must be the source of the outer map")
    return Isogeny(g.source, f.target, f.multiplier * g.multiplier)


def dual(phi: Isogeny) -> Isogeny:
    return Isogeny(phi.target, phi.source, phi.degree / phi.multiplier)


def apply_point(phi: Isogeny, p: TorsionPoint) -> TorsionPoint:
    if p.lattice != phi.source.lattice:
        raise CurveMismatch("point does not lie on the source of the isogeny")
    return phi.target.point_from_lift(phi.multiplier * p.lift())


def pic0_pullback_point(phi: Isogeny, x: TorsionPoint) -> TorsionPoint:
    """The point y on the source with phi^* P_x = P_y."""
    if x.lattice != phi.target.lattice:
        raise CurveMismatch("point does not lie on the target of the isogeny")
    return apply_point(dual(phi), x)


def kernel_of_dual(phi: Isogeny) -> list[TorsionPoint]:
    """Points x of the target with phi^* P_x trivial, by enumerating target[deg]."""
    return [x for x in phi.target.torsion(phi.degree)
            if pic0_pullback_point(phi, x).is_zero()]


def quotient_by_cyclic(curve: EllipticCurve, theta: TorsionPoint):
    """Return (curve / <theta>, quotient map); the map has multiplier 1."""
    if theta.lattice != curve.lattice:
        raise CurveMismatch("point does not lie on the curve")
    if theta.is_zero():
        raise ZeroPoint("cannot quotient by the zero point")
    quotient = EllipticCurve(hnf_canonicalize(list(curve.lattice.basis) + [theta.lift()]))
    return quotient, Isogeny(curve, quotient, 1)


def units(curve: EllipticCurve) -> list[QuadElement]:
    """The automorphisms of the curve fixing the origin, as multipliers."""
    one = curve.element(1)
    if curve.special is SpecialJ.J1728:
        i = curve.element(0, 1)
        return [one, i, -one, -i]
    if curve.special is SpecialJ.J0:
        rho = special_multiplier(curve)
        return [one, rho, rho * rho, -one, -rho, -(rho * rho)]
    return [one, -one]


def special_multiplier(curve: EllipticCurve) -> QuadElement:
    """lambda with End(curve) = Z + Z*lambda.

    i for j = 1728, rho = (-1 + sqrt(-3))/2 for j = 0 (so rho^2 + rho + 1 = 0),
    and the second Hermite basis vector of the order otherwise.
    """
    if curve.special is SpecialJ.J1728:
        return curve.element(0, 1)
    if curve.special is SpecialJ.J0:
        return curve.element(Fraction(-1, 2), Fraction(1, 2))
    if curve.special is SpecialJ.NO_CM:
        raise ValueError("a curve without CM has no complex multiplication")
    return curve.endomorphisms.basis[1]


def special_automorphism(curve: EllipticCurve) -> Isogeny:
    if curve.special not in (SpecialJ.J1728, SpecialJ.J0):
        raise ValueError("only curves with j = 0 or 1728 carry the extra automorphism")
    return multiplication_by(curve, special_multiplier(curve))


@dataclass(frozen=True)
class HomModule:
    """Hom(source, target) as multipliers: a lattice (CM), a rational ideal, or zero."""

    source: EllipticCurve
    target: EllipticCurve
    kind: str  # "rank2" | "rank1" | "zero"
    lattice: Lattice | None = None
    generator: Fraction | None = None

    @property
    def rank(self) -> int:
        return {"rank2": 2, "rank1": 1, "zero": 0}[self.kind]

    def basis(self) -> list[Isogeny]:
        """A Z-basis of the module; the Hermite basis in the rank-2 case."""
        if self.kind == "rank2":
            return [Isogeny(self.source, self.target, e) for e in self.lattice.basis]
        if self.kind == "rank1":
            return [Isogeny(self.source, self.target, self.generator)]
        return []

    def ideal_norm(self) -> Fraction:
        """Covolume ratio det(H)/det(End(source))."""
        if self.kind != "rank2":
            raise ValueError("ideal norm is defined for rank-2 modules only")
        return self.lattice.det / self.source.endomorphisms.det

    def to_json(self):
        if self.kind == "rank2":
            payload = self.lattice.to_json()
        elif self.kind == "rank1":
            payload = format_rational(self.generator)
        else:
            payload = None
        return {"kind": self.kind, "payload": payload}


def hom_module(source: EllipticCurve, target: EllipticCurve) -> HomModule:
    """Hom(source, target) = {zeta : zeta*L_source in L_target}."""
    if source.ambient != target.ambient:
        return HomModule(source, target, "zero")
    colon = colon_lattice(target.lattice, source.lattice)
    if isinstance(source.ambient, Quadratic):
        return HomModule(source, target, "rank2", lattice=colon)
    if colon == 0:
        return HomModule(source, target, "zero")
    return HomModule(source, target, "rank1", generator=colon)


def _floor_sqrt(q: Fraction) -> int:
    return isqrt(q.numerator // q.denominator)


def generating_isogeny(hom: HomModule) -> Isogeny:
    """An isogeny psi with Hom = End(source)*psi, i.e. Hom = <psi, psi o lambda>.

    Rank 2: every element of the module has norm at least N(H), and a
    generator has norm exactly N(H).  The elements of norm N(H) are found by
    exact enumeration inside the ellipse Q(x, y) <= N(H) of the norm form in
    Hermite coordinates, then tested for End(source)*psi == H.
    """
    if hom.kind == "zero":
        raise ZeroModule("Hom is zero: the curves are not isogenous")
    if hom.kind == "rank1":
        return Isogeny(hom.source, hom.target, hom.generator)

    h1, h2 = hom.lattice.basis
    target_norm = hom.ideal_norm()
    qa = h1.norm()
    qc = h2.norm()
    qb = 2 * (h1 * h2.conj()).a
    disc = 4 * qa * qc - qb * qb
    y_max = _floor_sqrt(4 * qa * target_norm / disc)
    x_max = _floor_sqrt(4 * qc * target_norm / disc)
    o1, o2 = hom.source.endomorphisms.basis

    found = []
    for y in range(-y_max, y_max + 1):
        for x in range(-x_max, x_max + 1):
            if qa * x * x + qb * x * y + qc * y * y != target_norm:
                continue
            psi = x * h1 + y * h2
            if hnf_canonicalize([psi * o1, psi * o2]) == hom.lattice:
                found.append(psi)
    if not found:
        raise NoGeneratorFound(
            f"Hom({hom.source.lattice}, {hom.target.lattice}) is not principal over End(source)"
        )
    best = max(found, key=lambda z: (z.a, z.b))
    return Isogeny(hom.source, hom.target, best)


def generating_pair(hom: HomModule) -> tuple[Isogeny, Isogeny]:
    """(psi, psi o lambda_B) for a rank-2 module."""
    psi = generating_isogeny(hom)
    lam = special_multiplier(hom.source)
    return psi, Isogeny(hom.source, hom.target, psi.multiplier * lam)
