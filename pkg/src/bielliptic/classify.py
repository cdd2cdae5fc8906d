"""Decide whether the Brauer map Br(S) -> Br(X) to the canonical cover is
injective, trivial, or neither.

Every criterion reduces to whether certain points vanish: pullbacks
psi^* P_x of degree-zero line bundles (computed through dual isogenies) and
images psi(theta).  Each evaluated point is reported as a witness.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import NotApplicable, NotIsogenous, UnvalidatedSpec
from .isogeny import (
    EllipticCurve,
    Isogeny,
    apply_point,
    generating_isogeny,
    hom_module,
    multiplication_by,
    pic0_pullback_point,
)
from .lattice import TorsionPoint
from .surface import SurfaceSpec, format_group, group_order, type_invariants


class MapKind(enum.Enum):
    INJECTIVE = "Injective"
    TRIVIAL = "Trivial"
    MIXED = "Mixed"
    ZERO_GROUP = "ZeroGroup"


@dataclass(frozen=True)
class ConditionReport:
    label: str
    evaluated_point: TorsionPoint

    @property
    def is_trivial(self) -> bool:
        return self.evaluated_point.is_zero()

    def to_json(self):
        return {
            "label": self.label,
            "point": self.evaluated_point.to_json(),
            "is_trivial": self.is_trivial,
        }


@dataclass(frozen=True)
class BrauerClassification:
    map_kind: MapKind
    kernel_order: int
    brauer_group: tuple[int, ...]
    witnesses: list[ConditionReport] = field(default_factory=list)
    theorem_tag: str = ""
    hom_rank: int = 0

    def to_json(self):
        return {
            "map_kind": self.map_kind.value,
            "kernel_order": self.kernel_order,
            "brauer_group": format_group(self.brauer_group),
            "witnesses": [w.to_json() for w in self.witnesses],
            "theorem": self.theorem_tag,
            "hom_rank": self.hom_rank,
        }


def _require_validated(spec: SurfaceSpec):
    if not spec.validated:
        raise UnvalidatedSpec("classify a spec returned by surface.validate()")


def _hom_basis(B: EllipticCurve, A: EllipticCurve, hom_basis) -> list[Isogeny]:
    if hom_basis is not None:
        return list(hom_basis)
    hom = hom_module(B, A)
    if hom.rank == 0:
        raise NotIsogenous("A and B are not isogenous")
    return hom.basis()


def _basis_combinations(basis: Sequence[Isogeny]):
    """(label suffix, isogeny) for psi, or for psi1, psi2, psi1 + psi2."""
    if len(basis) == 1:
        return [("psi", basis[0])]
    psi1, psi2 = basis
    return [("psi1", psi1), ("psi2", psi2), ("(psi1+psi2)", psi1 + psi2)]


def evaluate_type1_conditions(A: EllipticCurve, B: EllipticCurve, tau: TorsionPoint,
                              hom_basis=None) -> list[ConditionReport]:
    """L = psi^* P_tau for each psi in {psi} or {psi1, psi2, psi1 + psi2}."""
    basis = _hom_basis(B, A, hom_basis)
    return [ConditionReport(f"{name}^* P_tau", pic0_pullback_point(psi, tau))
            for name, psi in _basis_combinations(basis)]


def evaluate_type2_conditions(A: EllipticCurve, B: EllipticCurve, theta1: TorsionPoint,
                              theta2: TorsionPoint, hom_basis=None) -> list[ConditionReport]:
    basis = _hom_basis(B, A, hom_basis)
    combos = _basis_combinations(basis)
    reports = [ConditionReport(f"{name}(theta2)", apply_point(psi, theta2))
               for name, psi in combos]
    reports += [ConditionReport(f"{name}^* P_theta1", pic0_pullback_point(psi, theta1))
                for name, psi in combos]
    return reports


def evaluate_type3_condition(A: EllipticCurve, B: EllipticCurve, epsilon: TorsionPoint,
                             psi: Isogeny | None = None) -> ConditionReport:
    """(1 + omega)^* psi^* P_{2 epsilon}; (f o g)^* = g^* o f^*, so psi's dual acts first."""
    if psi is None:
        psi = generating_isogeny(hom_module(B, A))
    p = pic0_pullback_point(psi, 2 * epsilon)
    one_plus_omega = multiplication_by(B, B.element(1, 1))
    return ConditionReport("(1+omega)^* psi^* P_(2 epsilon)",
                           pic0_pullback_point(one_plus_omega, p))


def evaluate_type5_condition(A: EllipticCurve, B: EllipticCurve, eta: TorsionPoint,
                             psi: Isogeny | None = None) -> ConditionReport:
    """(2 rho + 1)^* psi^* P_eta, where 2 rho + 1 = sqrt(-3)."""
    if psi is None:
        psi = generating_isogeny(hom_module(B, A))
    p = pic0_pullback_point(psi, eta)
    two_rho_plus_one = multiplication_by(B, B.element(0, 1))
    return ConditionReport("(2 rho+1)^* psi^* P_eta",
                           pic0_pullback_point(two_rho_plus_one, p))


def classify_canonical(spec: SurfaceSpec, hom_basis=None, generator=None) -> BrauerClassification:
    """Brauer map to the canonical cover.

    ``hom_basis`` overrides the Hermite Z-basis of Hom(B, A) (types 1, 2) and
    ``generator`` the generating isogeny (types 3, 5); the verdict does not
    depend on either choice.
    """
    _require_validated(spec)
    t = spec.surface_type
    A, B = spec.A, spec.B
    br = type_invariants(t).brauer_group
    order = group_order(br)
    hom = hom_module(B, A)

    if order == 1:
        return BrauerClassification(MapKind.ZERO_GROUP, 1, br,
                                    theorem_tag="Br(S) = 0", hom_rank=hom.rank)
    if hom.rank == 0:
        return BrauerClassification(MapKind.INJECTIVE, 1, br,
                                    theorem_tag="A, B not isogenous: injective", hom_rank=0)

    if t == 1:
        reports = evaluate_type1_conditions(A, B, spec.point("tau"), hom_basis)
        n_trivial = sum(r.is_trivial for r in reports)
        if len(reports) == 1:
            # without CM the map is never trivial
            kind = MapKind.MIXED if n_trivial else MapKind.INJECTIVE
            tag = "type 1, no CM: psi^* P_tau"
        else:
            if n_trivial == 2:
                raise AssertionError("two of L1, L2, L3 trivial forces the third")
            kind = {0: MapKind.INJECTIVE, 1: MapKind.MIXED, 3: MapKind.TRIVIAL}[n_trivial]
            tag = "type 1, CM: L1, L2, L3"
        kernel = {MapKind.INJECTIVE: 1, MapKind.MIXED: 2, MapKind.TRIVIAL: 4}[kind]
        return BrauerClassification(kind, kernel, br, reports, tag, hom.rank)

    if t == 2:
        reports = evaluate_type2_conditions(A, B, spec.point("theta1"), spec.point("theta2"),
                                            hom_basis)
        if all(r.is_trivial for r in reports):
            kind, kernel = MapKind.INJECTIVE, 1
        else:
            kind, kernel = MapKind.TRIVIAL, 2
        tag = "type 2: psi(theta2), psi^* P_theta1" + (", CM" if hom.rank == 2 else ", no CM")
        return BrauerClassification(kind, kernel, br, reports, tag, hom.rank)

    if t == 3:
        report = evaluate_type3_condition(A, B, spec.point("epsilon"), generator)
        kind, kernel = (MapKind.TRIVIAL, 2) if report.is_trivial else (MapKind.INJECTIVE, 1)
        return BrauerClassification(kind, kernel, br, [report],
                                    "type 3: (1+omega)^* psi^* P_(2 epsilon)", hom.rank)

    if t == 5:
        report = evaluate_type5_condition(A, B, spec.point("eta"), generator)
        kind, kernel = (MapKind.TRIVIAL, 3) if report.is_trivial else (MapKind.INJECTIVE, 1)
        return BrauerClassification(kind, kernel, br, [report],
                                    "type 5: (2 rho+1)^* psi^* P_eta", hom.rank)

    raise AssertionError(f"unhandled surface type {t}")


def classify_intermediate_cover(spec: SurfaceSpec) -> BrauerClassification:
    """Brauer map to the type-1 double cover S~ of a type 2 or type 3 surface."""
    _require_validated(spec)
    t = spec.surface_type
    if t not in (2, 3):
        raise NotApplicable("only type 2 and type 3 surfaces have the type-1 double cover")
    br = type_invariants(t).brauer_group
    rank = hom_module(spec.B, spec.A).rank
    if t == 2:
        return BrauerClassification(MapKind.TRIVIAL, 2, br,
                                    theorem_tag="type 2 -> type 1 cover: trivial", hom_rank=rank)
    return BrauerClassification(MapKind.INJECTIVE, 1, br,
                                theorem_tag="type 3 -> type 1 cover: injective", hom_rank=rank)
