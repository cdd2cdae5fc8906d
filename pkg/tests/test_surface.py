import json
from fractions import Fraction as F

import pytest

from bielliptic.errors import (
    MissingPoint,
    PointNotOnCurve,
    TauEqualsTheta1,
    UnexpectedPoint,
    UnknownType,
    WrongPointOrder,
    WrongSpecialJ,
)
from bielliptic.exact import Quadratic
from bielliptic.isogeny import EllipticCurve
from bielliptic.lattice import hnf_canonicalize, maximal_order
from bielliptic.surface import (
    SurfaceSpec,
    format_group,
    group_order,
    intermediate_cover_info,
    invariants,
    is_isogenous,
    type_invariants,
    validate,
)
from samples import T

GAUSS = EllipticCurve(maximal_order(1))
EIS = EllipticCurve(maximal_order(3))
FORMAL = EllipticCurve(hnf_canonicalize([(1, 0), (0, 1)], T))


def test_table_matches_fixture(fixtures_dir):
    table = json.loads((fixtures_dir / "table1.json").read_text())
    for t in range(1, 8):
        inv = type_invariants(t).to_json()
        row = table[str(t)]
        assert inv["group_G"] == row["G"]
        assert inv["ord_canonical"] == row["ord_canonical"]
        assert inv["h2_torsion"] == row["h2_torsion"]
        assert inv["brauer_group"] == row["h2_torsion"]
        assert inv["fiber_multiplicities"] == row["fiber_multiplicities"]
        assert inv["h2_decomposition"] == row["h2_decomposition"]


@pytest.mark.parametrize("t", range(1, 8))
def test_invariant_relations(t):
    inv = type_invariants(t)
    assert inv.group_order == inv.ord_canonical * inv.lambda_S
    assert inv.lambda_S in (1, 2, 3)
    assert group_order(inv.brauer_group) in (1, 2, 3, 4)
    assert inv.num_pullback == (1, inv.ord_canonical // inv.lambda_S)
    # the canonical bundle formula: sum over multiple fibres of (1 - 1/m) = 2 since K_S is torsion
    assert sum(1 - F(1, m) for m in inv.fiber_multiplicities) == 2


def test_lambda_and_intermediate_cover():
    assert type_invariants(2).lambda_S == 2
    assert type_invariants(4).lambda_S == 2
    assert type_invariants(6).lambda_S == 3
    assert type_invariants(1).intermediate_cover is None
    cover2 = type_invariants(2).intermediate_cover
    cover3 = type_invariants(3).intermediate_cover
    assert (cover2.cover_type, cover2.degree) == (1, 2)
    assert (cover3.cover_type, cover3.degree) == (1, 2)
    with pytest.raises(UnknownType):
        type_invariants(8)


def test_format_group():
    assert format_group(()) == "0"
    assert format_group((2, 2)) == "Z/2 x Z/2"
    assert group_order((4, 2)) == 8


def test_validate_accepts_and_sorts():
    spec = SurfaceSpec(2, GAUSS, GAUSS, {
        "tau": GAUSS.point(0, F(1, 2)),
        "theta2": GAUSS.point(F(1, 2), 0),
        "theta1": GAUSS.point(F(1, 2), 0),
    })
    v = validate(spec)
    assert v.validated and not spec.validated
    assert list(v.points) == ["tau", "theta1", "theta2"]
    assert validate(v) == v


@pytest.mark.parametrize("spec,error,field", [
    (SurfaceSpec(8, GAUSS, GAUSS), UnknownType, "type"),
    (SurfaceSpec(1, GAUSS, GAUSS), MissingPoint, "points.tau"),
    (SurfaceSpec(1, GAUSS, GAUSS, {"tau": GAUSS.point(F(1, 4), 0)}), WrongPointOrder, "points.tau"),
    (SurfaceSpec(1, GAUSS, GAUSS, {"tau": GAUSS.point(0, 0)}), WrongPointOrder, "points.tau"),
    (SurfaceSpec(1, GAUSS, GAUSS, {"tau": GAUSS.point(F(1, 2), 0), "eta": GAUSS.point(F(1, 3), 0)}),
     UnexpectedPoint, "points.eta"),
    (SurfaceSpec(1, FORMAL, GAUSS, {"tau": GAUSS.point(F(1, 2), 0)}), PointNotOnCurve, "points.tau"),
    (SurfaceSpec(3, GAUSS, EIS, {"epsilon": GAUSS.point(F(1, 4), 0)}), WrongSpecialJ, "curve_b"),
    (SurfaceSpec(5, EIS, GAUSS, {"eta": EIS.point(F(1, 3), 0)}), WrongSpecialJ, "curve_b"),
    (SurfaceSpec(4, GAUSS, EIS), WrongSpecialJ, "curve_b"),
    (SurfaceSpec(6, EIS, GAUSS), WrongSpecialJ, "curve_b"),
    (SurfaceSpec(7, GAUSS, FORMAL), WrongSpecialJ, "curve_b"),
    (SurfaceSpec(2, GAUSS, GAUSS, {"tau": GAUSS.point(F(1, 2), 0), "theta1": GAUSS.point(F(1, 2), 0),
                                   "theta2": GAUSS.point(F(1, 2), 0)}), TauEqualsTheta1, "points.tau"),
])
def test_validation_errors(spec, error, field):
    with pytest.raises(error) as info:
        validate(spec)
    assert info.value.field == field


def test_type_b_constraints_are_on_b_only():
    other = EllipticCurve(hnf_canonicalize([(1, 0), (0, 2)], Quadratic(1)))
    validate(SurfaceSpec(3, other, GAUSS, {"epsilon": other.point(F(1, 4), 0)}))
    validate(SurfaceSpec(5, FORMAL, EIS, {"eta": FORMAL.point(F(1, 3), 0)}))


def test_isogeny_classes():
    assert is_isogenous(GAUSS, EllipticCurve(hnf_canonicalize([(1, 0), (0, 5)], Quadratic(1))))
    assert not is_isogenous(GAUSS, EIS)
    assert not is_isogenous(GAUSS, FORMAL)


def test_invariants_of_spec():
    spec = validate(SurfaceSpec(3, GAUSS, GAUSS, {"epsilon": GAUSS.point(F(1, 4), 0)}))
    assert invariants(spec) == type_invariants(3)
    assert intermediate_cover_info(spec).num_pullback == (1, 2)
