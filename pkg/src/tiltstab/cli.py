"""Command-line entry point.

Exit status: 0 on success, 1 when a mathematical check fails (the report is
still written), 2 on usage, schema or I/O errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import jsonschema

from . import chern, reider, scan, tilt
from .chern import CurveClassData, General, PolarizedGeometry
from .errors import HodgeIndexViolation, SchemaError, TiltStabError
from .rational import as_fraction

EXIT_OK, EXIT_FAILED_CHECK, EXIT_USAGE = 0, 1, 2

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"},
    ]
}

GEOMETRY_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["d"],
    "properties": {
        "d": _RATIONAL,
        "divisors": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["L2D", "LD2"],
                "properties": {
                    "name": {"type": "string"},
                    "L2D": _RATIONAL,
                    "LD2": _RATIONAL,
                    "integral": {"type": "boolean"},
                },
            },
        },
        "curves": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["LC"],
                "properties": {
                    "name": {"type": "string"},
                    "LC": _RATIONAL,
                    "KXC": {"type": "integer"},
                    "ch3OC": _RATIONAL,
                },
            },
        },
    },
}

HELP_EPILOG = """\
geometry file (JSON, unknown keys rejected):
  {"d": 64,
   "divisors": [{"L2D": 16, "LD2": 0, "integral": true, "name": "H"}],
   "curves":   [{"LC": 4, "KXC": -2, "ch3OC": 1, "name": "line"}]}
  d = L^3 (positive integer), L2D = L^2.D, LD2 = L.D^2, LC = L.C,
  KXC = K_X.C, ch3OC = ch_3(O_C).  Rationals are integers or "p/q" strings.
"""


def _pointer(path) -> str:
    return "".join(f"/{p}" for p in path)


def parse_geometry(path) -> tuple:
    """Load ``(PolarizedGeometry, divisors, curves)`` from a JSON file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(f"geometry file not found: {path}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno})") from None
    return geometry_from_data(data)


def geometry_from_data(data) -> tuple:
    validator = jsonschema.Draft7Validator(GEOMETRY_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(err.message, _pointer(err.absolute_path))

    d = as_fraction(data["d"])
    if d.denominator != 1 or d <= 0:
        raise SchemaError("d must be a positive integer", "/d")

    divisors = []
    for i, raw in enumerate(data.get("divisors", [])):
        div = General(as_fraction(raw["L2D"]), as_fraction(raw["LD2"]), raw.get("integral", True))
        if div.q1 * div.q1 < d * div.q2:
            raise HodgeIndexViolation(
                f"divisor {i}: (L^2.D)^2 = {div.q1 ** 2} < L^3 * L.D^2 = {d * div.q2}", index=i
            )
        divisors.append(div)

    curves, pairings = [], {}
    for i, raw in enumerate(data.get("curves", [])):
        lc = as_fraction(raw["LC"])
        if lc <= 0:
            raise SchemaError("L.C must be positive", f"/curves/{i}/LC")
        ch3 = as_fraction(raw["ch3OC"]) if "ch3OC" in raw else None
        curves.append(CurveClassData(lc, raw.get("KXC"), ch3))
        if "KXC" in raw:
            pairings[raw.get("name", f"C{i}")] = raw["KXC"]

    geom = PolarizedGeometry(int(d), pairings or None)
    return geom, divisors, curves


# -- text rendering -------------------------------------------------------


def _text(obj) -> str:
    data = scan.to_jsonable(obj)
    lines = []

    def walk(value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            for k, v in value.items():
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(item, indent + 1)
                else:
                    lines.append(f"{pad}- {item}")
        else:
            lines.append(f"{pad}{value}")

    walk(data, 0)
    return "\n".join(lines) + "\n"


def _render(obj, fmt: str) -> bytes:
    if fmt == "text":
        return _text(obj).encode("utf-8")
    return scan.emit(obj, fmt)


# -- subcommands ----------------------------------------------------------


def _geometry(args) -> tuple:
    if args.geometry:
        return parse_geometry(args.geometry)
    if args.d is not None:
        return PolarizedGeometry(args.d), [], []
    raise _Usage("either --geometry or --d is required")


class _Usage(Exception):
    pass


def _standard_objects(geom, alpha, curves) -> list:
    objs = [
        ("O_X[1]", reider.twisted_shifted_structure_sheaf(geom)),
        ("L⊗I_Z", reider.twisted_line_ideal(geom, alpha)),
    ]
    for i, curve in enumerate(curves):
        ch3 = curve.ch3OC if curve.ch3OC is not None else 0
        objs.append((f"L⊗I_C{i}", reider.twisted_curve_ideal(geom, curve.degLC, ch3)))
    return objs


def cmd_chern(args):
    geom, _, curves = _geometry(args)
    objs = [("O_X", chern.twisted(chern.line_bundle_class(geom, 0), tilt.HALF))]
    objs += _standard_objects(geom, args.alpha, curves)
    objs.append(("E", reider.extension_class(geom, args.alpha)))
    report = {
        "d": geom.d,
        "alpha": args.alpha,
        "b": tilt.HALF,
        "classes": {label: ch for label, ch in objs},
        "L_delta": {label: chern.discriminant_L(ch) for label, ch in objs},
    }
    return report, EXIT_OK


def cmd_slope(args):
    geom, _, curves = _geometry(args)
    t = args.t if args.t is not None else Fraction(1, 8)
    objs = _standard_objects(geom, args.alpha, curves)
    objs.append(("E", reider.extension_class(geom, args.alpha)))
    report = {
        "d": geom.d,
        "t": t,
        "b": args.b,
        "mu": {label: tilt.mu_slope(ch, args.b) for label, ch in objs},
        "nu": {label: tilt.nu_slope(ch, t, args.b) for label, ch in objs},
        "strong_bg_E": tilt.strong_bg_check(reider.extension_class(geom, args.alpha), t, args.b),
    }
    return report, EXIT_OK


def cmd_wall(args):
    geom, _, _ = _geometry(args)
    e = reider.extension_class(geom, args.alpha)
    report = {
        "d": geom.d,
        "alpha": args.alpha,
        "walls": {
            label: tilt.wall(ch, e, args.b)
            for label, ch in _standard_objects(geom, args.alpha, [])
        },
        "min_unstable_t": reider.min_unstable_t(geom, args.alpha),
    }
    return report, EXIT_OK


def cmd_scan(args):
    geom, _, curves = _geometry(args)
    table = scan.wall_scan(geom, args.alpha, _standard_objects(geom, args.alpha, curves), args.b)
    return table, EXIT_OK


def cmd_reider(args):
    if args.format == "svg":
        return scan.ReiderRhsCurve(args.alpha), EXIT_OK
    geom, divisors, curves = _geometry(args)
    report = reider.check_conditions(geom, args.alpha, divisors, curves)
    return report, EXIT_OK if report.all_pass else EXIT_FAILED_CHECK


def cmd_fujita(args):
    report = reider.fujita_verify(args.m, args.alpha, args.grid_bound, d_min=args.d_min)
    return report, EXIT_OK if report.passed else EXIT_FAILED_CHECK


def cmd_l5(args):
    return reider.l5_analysis(args.m3, args.kxc), EXIT_OK


COMMANDS = {
    "chern": (cmd_chern, "twisted Chern characters of the objects in the extension"),
    "slope": (cmd_slope, "mu and nu_t slopes, strong BG check for E at t"),
    "wall": (cmd_wall, "walls of O_X[1] and L(x)I_Z against E, instability threshold"),
    "reider": (cmd_reider, "audit conditions (A)(B)(C) for a geometry file"),
    "fujita": (cmd_fujita, "exhaustive grid check of (A)(B)(C) for mL"),
    "l5": (cmd_l5, "the degree-one curve analysis for L = M^5"),
    "scan": (cmd_scan, "wall table for all standard and supplied candidates"),
}


def _rational_arg(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational p/q: {text!r}") from exc


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tiltstab",
        description="Exact tilt-stability and Reider-type computations on polarized threefolds.",
        epilog=HELP_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, epilog=HELP_EPILOG,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--geometry", metavar="PATH", help="geometry JSON file")
        p.add_argument("--d", type=_positive_int, help="L^3, when no geometry file is given")
        p.add_argument("--alpha", type=_positive_int, default=1, help="length of Z (default 1)")
        p.add_argument("--t", type=_rational_arg, help="tilt parameter t = T^2/6 (default 1/8)")
        p.add_argument("--b", type=_rational_arg, default=tilt.HALF, help="twist b (default 1/2)")
        p.add_argument("--m", type=_positive_int, default=4, help="multiple of L (fujita)")
        p.add_argument("--grid-bound", type=_positive_int, default=20, help="grid bound (fujita)")
        p.add_argument("--d-min", type=_positive_int, default=1, help="smallest L^3 scanned (fujita)")
        p.add_argument("--m3", type=_positive_int, default=1, help="M^3 (l5)")
        p.add_argument("--kxc", type=int, default=0, help="K_X.C (l5)")
        p.add_argument("--format", choices=("text", "json", "csv", "svg"), default="text")
        p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    handler = COMMANDS[args.command][0]
    try:
        payload, code = handler(args)
        data = _render(payload, args.format)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"tiltstab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, TiltStabError, ValueError) as exc:
        print(f"tiltstab: error: {exc}", file=sys.stderr)
        if isinstance(exc, SchemaError):
            print(HELP_EPILOG, file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.out:
            Path(args.out).write_bytes(data)
        else:
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
    except OSError as exc:
        print(f"tiltstab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
