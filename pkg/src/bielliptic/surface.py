"""Bielliptic surface specifications, validation, and the per-type invariant tables."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

from .errors import (
    MissingPoint,
    PointNotOnCurve,
    TauEqualsTheta1,
    UnexpectedPoint,
    UnknownType,
    WrongPointOrder,
    WrongSpecialJ,
)
from .isogeny import EllipticCurve, SpecialJ
from .lattice import TorsionPoint

# name -> (curve the point lies on, required order)
REQUIRED_POINTS: dict[int, dict[str, tuple[str, int]]] = {
    1: {"tau": ("A", 2)},
    2: {"theta1": ("A", 2), "theta2": ("B", 2), "tau": ("A", 2)},
    3: {"epsilon": ("A", 4)},
    4: {},
    5: {"eta": ("A", 3)},
    6: {},
    7: {},
}

REQUIRED_SPECIAL_J = {3: SpecialJ.J1728, 4: SpecialJ.J1728,
                      5: SpecialJ.J0, 6: SpecialJ.J0, 7: SpecialJ.J0}


@dataclass(frozen=True)
class SurfaceSpec:
    surface_type: int
    A: EllipticCurve
    B: EllipticCurve
    points: Mapping[str, TorsionPoint] = field(default_factory=dict)
    validated: bool = field(default=False, compare=False)

    def point(self, name: str) -> TorsionPoint:
        return self.points[name]


def validate(spec: SurfaceSpec) -> SurfaceSpec:
    """Check the type's constraints; return the spec marked as validated.

    Points are stored on the canonical (Hermite) basis of their curve, so the
    coordinates are already canonical and validation is idempotent.
    """
    t = spec.surface_type
    if t not in REQUIRED_POINTS:
        raise UnknownType(f"bielliptic surfaces have types 1-7, got {t!r}", field="type")
    required = REQUIRED_POINTS[t]
    for name in spec.points:
        if name not in required:
            raise UnexpectedPoint(f"type {t} takes no point named {name!r}", field=f"points.{name}")
    for name, (curve_name, order) in required.items():
        if name not in spec.points:
            raise MissingPoint(f"type {t} needs the point {name!r} on {curve_name}",
                               field=f"points.{name}")
        p = spec.points[name]
        curve = spec.A if curve_name == "A" else spec.B
        if p.lattice != curve.lattice:
            raise PointNotOnCurve(f"point {name!r} must lie on curve {curve_name}",
                                  field=f"points.{name}")
        if p.order != order:
            raise WrongPointOrder(f"point {name!r} must have order {order}, has order {p.order}",
                                  field=f"points.{name}")
    special = REQUIRED_SPECIAL_J.get(t)
    if special is not None and spec.B.special is not special:
        raise WrongSpecialJ(f"type {t} needs B with {special.value}, got {spec.B.special.value}",
                            field="curve_b")
    if t == 2 and spec.points["tau"] == spec.points["theta1"]:
        raise TauEqualsTheta1("type 2 needs tau != theta1", field="points.tau")
    return replace(spec, points=dict(sorted(spec.points.items())), validated=True)


def is_isogenous(A: EllipticCurve, B: EllipticCurve) -> bool:
    """Curves sharing a quadratic field are CM by orders of it, hence isogenous;
    formal curves are isogenous exactly when they share the formal period."""
    return A.ambient == B.ambient


def format_group(shape: tuple[int, ...]) -> str:
    if not shape:
        return "0"
    return " x ".join(f"Z/{n}" for n in shape)


def group_order(shape: tuple[int, ...]) -> int:
    n = 1
    for k in shape:
        n *= k
    return n


@dataclass(frozen=True)
class TypeRow:
    group_G: tuple[int, ...]
    ord_canonical: int
    h2_torsion: tuple[int, ...]
    fiber_multiplicities: tuple[int, ...]
    h2_decomposition: str
    sigma: str


# The seven types with the torsion of H^2(S, Z) and the multiple fibres
# of S -> P^1.  sigma generates the deck group of the canonical cover.
TABLE: dict[int, TypeRow] = {
    1: TypeRow((2,), 2, (2, 2), (2, 2, 2, 2),
               "Z[a/2] + Z[b] + Z/2 + Z/2", "sigma(x, y) = (x + tau, -y)"),
    2: TypeRow((2, 2), 2, (2,), (2, 2, 2, 2),
               "Z[a/2] + Z[b/2] + Z/2",
               "X = A x B / <(theta1, theta2)>, sigma[x, y] = [x + tau, -y]"),
    3: TypeRow((4,), 4, (2,), (2, 4, 4),
               "Z[a/4] + Z[b] + Z/2", "sigma(x, y) = (x + epsilon, omega(y))"),
    4: TypeRow((4, 2), 4, (), (2, 4, 4), "Z[a/4] + Z[b/2]", ""),
    5: TypeRow((3,), 3, (3,), (3, 3, 3),
               "Z[a/3] + Z[b] + Z/3", "sigma(x, y) = (x + eta, rho(y))"),
    6: TypeRow((3, 3), 3, (), (3, 3, 3), "Z[a/3] + Z[b/3]", ""),
    7: TypeRow((6,), 6, (), (2, 3, 6), "Z[a/6] + Z[b]", ""),
}


@dataclass(frozen=True)
class IntermediateCover:
    cover_type: int
    degree: int
    num_pullback: tuple[int, int]
    construction: str
    involution: str

    def to_json(self):
        return {
            "cover_type": self.cover_type,
            "degree": self.degree,
            "num_pullback": list(self.num_pullback),
            "construction": self.construction,
            "involution": self.involution,
        }


@dataclass(frozen=True)
class SurfaceInvariants:
    surface_type: int
    group_G: str
    group_order: int
    ord_canonical: int
    lambda_S: int
    h2_torsion: tuple[int, ...]
    brauer_group: tuple[int, ...]
    fiber_multiplicities: tuple[int, ...]
    h2_decomposition: str
    num_pullback: tuple[int, int]
    sigma: str
    intermediate_cover: IntermediateCover | None

    def to_json(self):
        return {
            "type": self.surface_type,
            "group_G": self.group_G,
            "group_order": self.group_order,
            "ord_canonical": self.ord_canonical,
            "lambda_S": self.lambda_S,
            "h2_torsion": format_group(self.h2_torsion),
            "brauer_group": format_group(self.brauer_group),
            "fiber_multiplicities": list(self.fiber_multiplicities),
            "h2_decomposition": self.h2_decomposition,
            "num_pullback": list(self.num_pullback),
            "sigma": self.sigma,
            "intermediate_cover": (self.intermediate_cover.to_json()
                                   if self.intermediate_cover else None),
        }


def type_invariants(surface_type: int) -> SurfaceInvariants:
    if surface_type not in TABLE:
        raise UnknownType(f"bielliptic surfaces have types 1-7, got {surface_type!r}", field="type")
    row = TABLE[surface_type]
    n = row.ord_canonical
    order_G = group_order(row.group_G)
    lam = order_G // n
    return SurfaceInvariants(
        surface_type=surface_type,
        group_G=format_group(row.group_G),
        group_order=order_G,
        ord_canonical=n,
        lambda_S=lam,
        h2_torsion=row.h2_torsion,
        brauer_group=row.h2_torsion,
        fiber_multiplicities=row.fiber_multiplicities,
        h2_decomposition=row.h2_decomposition,
        # pi^* a0 = a_X, pi^* b0 = (n / lambda_S) b_X
        num_pullback=(1, n // lam),
        sigma=row.sigma,
        intermediate_cover=_intermediate_cover(surface_type),
    )


def invariants(spec: SurfaceSpec) -> SurfaceInvariants:
    return type_invariants(spec.surface_type)


def _intermediate_cover(surface_type: int) -> IntermediateCover | None:
    if surface_type == 3:
        # ord(omega_S) = 4 with proper divisor 2
        return IntermediateCover(
            cover_type=1, degree=2, num_pullback=(1, 2),
            construction="S~ = A x B / <(x, y) -> (x + 2 epsilon, -y)>",
            involution="sigma~[x, y] = [x + epsilon, omega(y)]",
        )
    if surface_type == 2:
        # lambda_S = 2
        return IntermediateCover(
            cover_type=1, degree=2, num_pullback=(2, 1),
            construction="S~ = A x B / <(x, y) -> (x + tau, -y)>",
            involution="sigma~[x, y] = [x + theta1, y + theta2]",
        )
    return None


def intermediate_cover_info(spec: SurfaceSpec) -> IntermediateCover | None:
    return _intermediate_cover(spec.surface_type)
