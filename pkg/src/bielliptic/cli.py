"""Command line interface: classify | invariants | hom | census.

Spec files are JSON with integers and strings only; rationals are strings
such as "1/2".  A curve basis is a 2x2 matrix given as a list of rows whose
columns are the basis vectors in the frame {1, w}:

    {"type": 1,
     "curve_a": {"ambient": {"kind": "quadratic", "d": 1},
                 "basis": [["1", "0"], ["0", "2"]]},
     "curve_b": {"ambient": {"kind": "quadratic", "d": 1},
                 "basis": [["1", "0"], ["0", "1"]]},
     "points": {"tau": ["0", "1/2"]}}

Point coordinates refer to the basis as written in the file.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import __version__
from .classify import classify_canonical, classify_intermediate_cover
from .errors import BiellipticError, NoGeneratorFound, SpecError, UnknownType
from .exact import Formal, Quadratic, ambient_from_json, format_rational, parse_rational
from .isogeny import EllipticCurve, generating_pair, hom_module, special_multiplier
from .lattice import Lattice, TorsionPoint, hnf_canonicalize, maximal_order
from .surface import REQUIRED_POINTS, SurfaceSpec, invariants, validate

TOOL = "bielliptic"

SPEC_FIELDS = {"type", "curve_a", "curve_b", "points"}
CURVE_FIELDS = {"ambient", "basis"}


class DocumentError(SpecError):
    pass


def _reject_float(text):
    raise DocumentError(f"non-integer number {text} in document; write rationals as strings")


def _reject_constant(text):
    raise DocumentError(f"{text} is not allowed in a spec document")


def load_json(text: str):
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None


def _rational_field(value, where: str) -> Fraction:
    if not isinstance(value, str):
        raise DocumentError(f"{where}: rationals must be strings, got {value!r}", field=where)
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}", field=where) from None


@dataclass(frozen=True)
class ParsedCurve:
    curve: EllipticCurve
    input_basis: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]  # columns

    def lift(self, x: Fraction, y: Fraction):
        (v1x, v1y), (v2x, v2y) = self.input_basis
        return self.curve.element(x * v1x + y * v2x, x * v1y + y * v2y)

    def input_json(self):
        (v1x, v1y), (v2x, v2y) = self.input_basis
        return [[format_rational(v1x), format_rational(v2x)],
                [format_rational(v1y), format_rational(v2y)]]


def parse_curve(obj, where: str) -> ParsedCurve:
    if not isinstance(obj, dict):
        raise DocumentError(f"{where} must be an object", field=where)
    unknown = set(obj) - CURVE_FIELDS
    if unknown:
        raise DocumentError(f"{where}: unknown fields {sorted(unknown)}", field=where)
    missing = CURVE_FIELDS - set(obj)
    if missing:
        raise DocumentError(f"{where}: missing fields {sorted(missing)}", field=where)
    try:
        ambient = ambient_from_json(obj["ambient"])
    except (ValueError, TypeError) as exc:
        raise DocumentError(f"{where}.ambient: {exc}", field=f"{where}.ambient") from None
    rows = obj["basis"]
    if not (isinstance(rows, list) and len(rows) == 2
            and all(isinstance(r, list) and len(r) == 2 for r in rows)):
        raise DocumentError(f"{where}.basis must be a 2x2 array of rational strings",
                            field=f"{where}.basis")
    m = [[_rational_field(rows[i][j], f"{where}.basis[{i}][{j}]") for j in range(2)]
         for i in range(2)]
    columns = ((m[0][0], m[1][0]), (m[0][1], m[1][1]))
    if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0:
        raise DocumentError(f"{where}.basis is not of rank 2", field=f"{where}.basis")
    lattice = hnf_canonicalize(list(columns), ambient)
    return ParsedCurve(EllipticCurve(lattice), columns)


@dataclass(frozen=True)
class ParsedSpec:
    spec: SurfaceSpec | None
    curve_a: ParsedCurve
    curve_b: ParsedCurve
    input_points: dict


def parse_document(obj, require_type: bool = True) -> ParsedSpec:
    if not isinstance(obj, dict):
        raise DocumentError("spec document must be a JSON object")
    unknown = set(obj) - SPEC_FIELDS
    if unknown:
        raise DocumentError(f"unknown fields {sorted(unknown)}", field=sorted(unknown)[0])
    for name in ("curve_a", "curve_b"):
        if name not in obj:
            raise DocumentError(f"missing field {name!r}", field=name)
    curve_a = parse_curve(obj["curve_a"], "curve_a")
    curve_b = parse_curve(obj["curve_b"], "curve_b")
    if "type" not in obj:
        if require_type or "points" in obj:
            raise DocumentError("missing field 'type'", field="type")
        return ParsedSpec(None, curve_a, curve_b, {})

    t = obj["type"]
    if isinstance(t, bool) or not isinstance(t, int):
        raise DocumentError("'type' must be an integer", field="type")
    if t not in REQUIRED_POINTS:
        raise UnknownType(f"bielliptic surfaces have types 1-7, got {t}", field="type")
    raw_points = obj.get("points", {})
    if not isinstance(raw_points, dict):
        raise DocumentError("'points' must be an object", field="points")
    on_curve = {name: curve for name, (curve, _) in REQUIRED_POINTS[t].items()}
    points, echo = {}, {}
    for name, value in sorted(raw_points.items()):
        where = f"points.{name}"
        if name not in on_curve:
            raise DocumentError(f"type {t} takes no point named {name!r}", field=where)
        if not (isinstance(value, list) and len(value) == 2):
            raise DocumentError(f"{where} must be a pair of rational strings", field=where)
        x, y = (_rational_field(v, f"{where}[{k}]") for k, v in enumerate(value))
        parsed = curve_a if on_curve[name] == "A" else curve_b
        points[name] = parsed.curve.point_from_lift(parsed.lift(x, y))
        echo[name] = [format_rational(x), format_rational(y)]
    spec = validate(SurfaceSpec(t, curve_a.curve, curve_b.curve, points))
    return ParsedSpec(spec, curve_a, curve_b, echo)


def serialize_spec(spec: SurfaceSpec) -> dict:
    """Spec document in canonical form (canonical bases and coordinates)."""
    return {
        "type": spec.surface_type,
        "curve_a": {"ambient": spec.A.ambient.to_json(), "basis": spec.A.lattice.to_json()},
        "curve_b": {"ambient": spec.B.ambient.to_json(), "basis": spec.B.lattice.to_json()},
        "points": {name: p.to_json() for name, p in sorted(spec.points.items())},
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# reports

def _curve_json(parsed: ParsedCurve) -> dict:
    curve = parsed.curve
    end = curve.endomorphisms
    return {
        "ambient": curve.ambient.to_json(),
        "input_basis": parsed.input_json(),
        "canonical_basis": curve.lattice.to_json(),
        "special": curve.special.value,
        "endomorphisms": end if isinstance(end, str) else end.to_json(),
    }


def _input_json(parsed: ParsedSpec) -> dict:
    out = {"curve_a": _curve_json(parsed.curve_a), "curve_b": _curve_json(parsed.curve_b)}
    if parsed.spec is not None:
        out["type"] = parsed.spec.surface_type
        out["points"] = {
            name: {"input": parsed.input_points[name], "canonical": p.to_json()}
            for name, p in sorted(parsed.spec.points.items())
        }
    return out


def classify_report(parsed: ParsedSpec) -> dict:
    spec = parsed.spec
    report = {
        "tool": TOOL,
        "version": __version__,
        "input": _input_json(parsed),
        "classification": classify_canonical(spec).to_json(),
        "invariants": invariants(spec).to_json(),
    }
    if spec.surface_type in (2, 3):
        report["intermediate_cover_classification"] = classify_intermediate_cover(spec).to_json()
    return report


def invariants_report(parsed: ParsedSpec) -> dict:
    return {
        "tool": TOOL,
        "version": __version__,
        "input": _input_json(parsed),
        "invariants": invariants(parsed.spec).to_json(),
    }


def hom_report(B: EllipticCurve, A: EllipticCurve) -> tuple[dict, int]:
    """Report on Hom(B, A) and the exit code (2 when no single generator exists)."""
    hom = hom_module(B, A)
    end_b = B.endomorphisms
    out = {
        "rank": hom.rank,
        "module": hom.to_json(),
        "basis": [psi.multiplier.to_json() for psi in hom.basis()],
        "end_b": end_b if isinstance(end_b, str) else end_b.to_json(),
        "special_b": B.special.value,
        "generator": None,
        "generator_pair": None,
        "generator_degree": None,
    }
    code = 0
    if hom.rank == 1:
        psi = hom.basis()[0]
        out["generator"] = psi.multiplier.to_json()
        out["generator_degree"] = psi.degree
    elif hom.rank == 2:
        out["ideal_norm"] = format_rational(hom.ideal_norm())
        out["lambda_b"] = special_multiplier(B).to_json()
        try:
            psi, psi_lam = generating_pair(hom)
        except NoGeneratorFound as exc:
            out["generator_error"] = str(exc)
            code = 2
        else:
            out["generator"] = psi.multiplier.to_json()
            out["generator_pair"] = [psi.multiplier.to_json(), psi_lam.multiplier.to_json()]
            out["generator_degree"] = psi.degree
    return {"tool": TOOL, "version": __version__, "hom": out}, code


# text rendering

def _fmt_value(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "(" + ", ".join(_fmt_value(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt_value(v[k])}" for k in sorted(v)) + "}"
    return str(v)


def render_text(report: dict) -> str:
    lines = []

    def section(title, mapping, skip=()):
        lines.append(f"[{title}]")
        width = max((len(k) for k in mapping if k not in skip), default=0)
        for key in sorted(mapping):
            if key in skip:
                continue
            lines.append(f"  {key.ljust(width)}  {_fmt_value(mapping[key])}")

    lines.append(f"{report['tool']} {report['version']}")
    if "input" in report:
        inp = report["input"]
        for name in ("curve_a", "curve_b"):
            section(name, inp[name])
        if "points" in inp:
            section("points", {k: f"{_fmt_value(v['input'])} -> {_fmt_value(v['canonical'])}"
                               for k, v in inp["points"].items()})
    if "classification" in report:
        cls = report["classification"]
        section("classification", cls, skip=("witnesses",))
        for w in cls["witnesses"]:
            mark = "trivial" if w["is_trivial"] else "nontrivial"
            lines.append(f"    {w['label']:<36} {_fmt_value(w['point']):<14} {mark}")
    if "intermediate_cover_classification" in report:
        section("intermediate cover", report["intermediate_cover_classification"],
                skip=("witnesses",))
    if "invariants" in report:
        section("invariants", report["invariants"])
    if "hom" in report:
        section("hom", report["hom"])
    if "census" in report:
        c = report["census"]
        section("census", {k: v for k, v in c.items() if k not in ("counts", "specs")})
        lines.append("  counts")
        for kind in sorted(c["counts"]):
            lines.append(f"    {kind:<10} {c['counts'][kind]}")
        for item in c.get("specs", []):
            pts = ", ".join(f"{k}={_fmt_value(v)}" for k, v in sorted(item["points"].items()))
            lines.append(f"    {pts:<50} {item['map_kind']} (kernel {item['kernel_order']})")
    return "\n".join(lines) + "\n"


# census

def preset_lattice(name: str, d: int | None) -> Lattice:
    if name == "formal":
        return hnf_canonicalize([(1, 0), (0, 1)], Formal("t0"))
    if name == "gaussian":
        return maximal_order(1)
    if name == "gaussian-conductor2":
        return hnf_canonicalize([(1, 0), (0, 2)], Quadratic(1))
    if name == "eisenstein":
        return maximal_order(3)
    if name == "maximal":
        if d is None:
            raise DocumentError("preset 'maximal' needs --d", field="--d")
        return maximal_order(d)
    raise DocumentError(f"unknown curve preset {name!r}", field="--curve-preset")


PRESETS = ("maximal", "gaussian", "gaussian-conductor2", "eisenstein", "formal")
DEFAULT_D = {1: 1, 2: 1, 3: 1, 4: 1, 5: 3, 6: 3, 7: 3}


def _points_of_order(curve: EllipticCurve, n: int) -> list[TorsionPoint]:
    return [p for p in curve.torsion(n) if p.order == n]


def census_domain(t: int, A: EllipticCurve, B: EllipticCurve) -> list[SurfaceSpec]:
    """All parameter tuples for type t on fixed curves, in lexicographic order."""
    required = REQUIRED_POINTS[t]
    names = sorted(required)
    choices = []
    for name in names:
        curve_name, order = required[name]
        choices.append(_points_of_order(A if curve_name == "A" else B, order))
    specs = []
    for combo in product(*choices):
        points = dict(zip(names, combo))
        if t == 2 and points["tau"] == points["theta1"]:
            continue
        specs.append(SurfaceSpec(t, A, B, points))
    return specs


def _classify_one(spec: SurfaceSpec):
    c = classify_canonical(validate(spec))
    return {
        "points": {name: p.to_json() for name, p in sorted(spec.points.items())},
        "map_kind": c.map_kind.value,
        "kernel_order": c.kernel_order,
    }


def run_census(t: int, A: EllipticCurve, B: EllipticCurve, jobs: int = 1) -> dict:
    if t not in REQUIRED_POINTS:
        raise UnknownType(f"bielliptic surfaces have types 1-7, got {t}", field="--type")
    specs = census_domain(t, A, B)
    if not specs:
        raise DocumentError("the enumeration domain is empty")
    validate(specs[0])  # a bad curve choice fails identically for every tuple
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_classify_one, specs))
    else:
        results = [_classify_one(s) for s in specs]
    results.sort(key=lambda r: sorted((k, tuple(Fraction(x) for x in v))
                                      for k, v in r["points"].items()))
    counts = Counter(r["map_kind"] for r in results)
    return {
        "type": t,
        "curve_a": A.lattice.to_json(),
        "curve_b": B.lattice.to_json(),
        "ambient": A.ambient.to_json(),
        "total": len(results),
        "counts": dict(sorted(counts.items())),
        "specs": results,
    }


# entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL,
        description="Brauer maps of bielliptic surfaces to their canonical cover.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("classify", "classify the Brauer map of a surface"),
                            ("invariants", "print the invariants of the surface type"),
                            ("hom", "compute Hom(B, A) and a generating isogeny")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="spec file (JSON); '-' reads stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("census", help="classify every torsion choice on fixed curves")
    p.add_argument("--type", type=int, required=True, dest="surface_type")
    p.add_argument("--d", type=int, default=None, help="quadratic field Q(sqrt(-d))")
    p.add_argument("--curve-preset", choices=PRESETS, default="maximal",
                   help="lattice used for both A and B (default: maximal order)")
    p.add_argument("--a-preset", choices=PRESETS, default=None,
                   help="override the lattice of A")
    p.add_argument("--points", choices=("all",), default="all")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verbose", action="store_true", help="list every classified tuple")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(report: dict, as_json: bool, out):
    out.write(dumps(report) if as_json else render_text(report))


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "census":
            d = args.d if args.d is not None else DEFAULT_D.get(args.surface_type)
            B = EllipticCurve(preset_lattice(args.curve_preset, d))
            A = EllipticCurve(preset_lattice(args.a_preset, d)) if args.a_preset else B
            census = run_census(args.surface_type, A, B, jobs=args.jobs)
            if not args.verbose:
                del census["specs"]
            _emit({"tool": TOOL, "version": __version__, "census": census}, args.json, out)
            return 0

        doc = load_json(_read(args.path))
        if args.command == "hom":
            parsed = parse_document(doc, require_type=False)
            report, code = hom_report(parsed.curve_b.curve, parsed.curve_a.curve)
            report["input"] = _input_json(parsed)
            _emit(report, args.json, out)
            return code
        parsed = parse_document(doc)
        report = classify_report(parsed) if args.command == "classify" else invariants_report(parsed)
        _emit(report, args.json, out)
        return 0
    except SpecError as exc:
        where = f"{exc.field}: " if exc.field else ""
        err.write(f"error: {type(exc).__name__}: {where}{exc}\n")
        return 1
    except NoGeneratorFound as exc:
        err.write(f"error: NoGeneratorFound: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except (BiellipticError, ValueError, TypeError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
