"""Command-line front end: cone, classify, slope, cfrac, curve and batch.

All machine output is exact: rationals render as ``p/q`` strings and
quadratic irrationals as ``(a + b*sqrt(d))``.  Decimal columns only appear
under ``--approx`` and are labeled non-authoritative.  Output is
deterministic: fixed field order, no ambient state.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import cfrac, cone, exceptional
from .chern import ChernCharacter, character_from_json, character_to_json
from .errors import DescentError, DomainError
from .exceptional import DEFAULT_MAX_ORDER, DyadicRational
from .qarith import QuadraticNumber, format_rational, parse_rational

CONFIG_ENV = "PLANECONES_CONFIG"

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_CLASSIFICATION_ONLY = 2


def _load_config() -> dict:
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"unreadable config file {path}: {exc}") from exc
    allowed = {"max_order", "multiplier"}
    return {k: int(v) for k, v in data.items() if k in allowed}


def _qn_str(x: Optional[QuadraticNumber]) -> Optional[str]:
    return None if x is None else str(x)


def _approx(value, digits: Optional[int]) -> Optional[str]:
    if digits is None or value is None:
        return None
    if isinstance(value, QuadraticNumber):
        return value.decimal(digits)
    return QuadraticNumber(Fraction(value)).decimal(digits)


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "text":
        for line in _text_lines(payload, ""):
            print(line)
    else:
        print(json.dumps(payload))


def _text_lines(value, prefix: str) -> list[str]:
    lines = []
    if isinstance(value, dict):
        for key, sub in value.items():
            child = f"{prefix}{key}"
            if isinstance(sub, (dict, list)):
                lines.append(f"{child}:")
                lines.extend(_text_lines(sub, prefix + "  "))
            else:
                lines.append(f"{child}: {sub}")
    elif isinstance(value, list):
        for sub in value:
            if isinstance(sub, (dict, list)):
                lines.append(f"{prefix}-")
                lines.extend(_text_lines(sub, prefix + "  "))
            else:
                lines.append(f"{prefix}- {sub}")
    else:
        lines.append(f"{prefix}{value}")
    return lines


# -- report rendering ---------------------------------------------------------


def _slope_dict(s: exceptional.ExceptionalSlope) -> dict:
    left, right = s.interval()
    shift, word = cfrac.slope_to_lr(s)
    return {
        "slope": format_rational(s.slope),
        "rank": s.rank,
        "discriminant": format_rational(s.discriminant),
        "order": s.order,
        "dyadic": str(s.dyadic),
        "lr_word": word,
        "lr_translation": shift,
        "interval": {"left": str(left), "right": str(right)},
    }


def _invariants_dict(inv: cone.OrthogonalInvariants, digits: Optional[int]) -> dict:
    out = {
        "mu": format_rational(inv.point.mu),
        "delta": format_rational(inv.point.delta),
        "case_sign": inv.case_sign.value,
        "on_delta_curve": inv.on_delta_curve,
        "corresponding_slope": _slope_dict(inv.corresponding_slope),
    }
    if digits is not None:
        out["approx_mu"] = _approx(inv.point.mu, digits)
    return out


def _primary_dict(edge: cone.PrimaryEdge, digits: Optional[int]) -> dict:
    out: dict = {"invariants": _invariants_dict(edge.invariants, digits)}
    out["extremal_character"] = character_to_json(edge.extremal_character)
    if edge.basis_coords is not None:
        out["extremal_ray_coordinates"] = {
            "zeta0": format_rational(edge.basis_coords[0]),
            "zeta1": format_rational(edge.basis_coords[1]),
        }
    if edge.resolution is not None:
        res = edge.resolution
        out["resolution"] = {
            "case_sign": res.case_sign.value,
            "triad": [format_rational(s.slope) for s in res.triad_slopes],
            "triad_characters": [character_to_json(c) for c in res.triad],
            "multiplicities": [m for m in (res.m1, res.m2, res.m3) if m is not None],
            "shape": res.shape,
        }
    if edge.kronecker is not None:
        kron = edge.kronecker
        out["kronecker"] = {
            "N": kron.hom_count,
            "dim_vector": list(kron.dim_vector),
            "expected_dimension": kron.expected_dimension,
            "fibration": kron.fibration.value,
        }
    wall = edge.wall
    out["wall"] = {
        "center_s": format_rational(wall.center_s),
        "radius": str(wall.radius),
        "radius_squared": format_rational(wall.radius_squared),
        "exceeds_collapse_bound": wall.exceeds_collapse_bound,
    }
    if digits is not None:
        out["wall"]["approx_radius"] = _approx(wall.radius, digits)
    out["movable_edge_coincides"] = edge.movable_edge_coincides
    return out


def report_to_dict(report: cone.ConeReport, digits: Optional[int] = None) -> dict:
    out: dict = {
        "input": character_to_json(report.input),
        "classification": {
            "kind": report.classification.kind.value,
            "reasons": list(report.classification.reasons),
        },
        "dimension": report.dimension,
    }
    if report.natural is not None:
        out["natural_classes"] = {
            "zeta0": character_to_json(report.natural[0]),
            "zeta1": character_to_json(report.natural[1]),
        }
    if report.mu0_plus is not None:
        out["mu0"] = {
            "plus": _qn_str(report.mu0_plus),
            "minus": _qn_str(report.mu0_minus),
        }
        if digits is not None:
            out["mu0"]["approx_plus"] = _approx(report.mu0_plus, digits)
            if report.mu0_minus is not None:
                out["mu0"]["approx_minus"] = _approx(report.mu0_minus, digits)
    if report.primary is not None:
        out["primary"] = _primary_dict(report.primary, digits)
    if report.secondary is not None:
        sec = report.secondary
        sec_out: dict = {"mode": sec.mode.value, "descriptor": sec.descriptor}
        if sec.invariants is not None:
            sec_out["mu"] = format_rational(sec.invariants.mu)
            sec_out["delta"] = format_rational(sec.invariants.delta)
        if sec.corresponding_slope is not None:
            sec_out["corresponding_slope"] = _slope_dict(sec.corresponding_slope)
        if sec.extremal_character is not None:
            sec_out["extremal_character"] = character_to_json(sec.extremal_character)
        if sec.basis_coords is not None:
            sec_out["extremal_ray_coordinates"] = {
                "zeta0": format_rational(sec.basis_coords[0]),
                "zeta1": format_rational(sec.basis_coords[1]),
            }
        if sec.dual_primary is not None:
            sec_out["serre_dual_pipeline"] = _primary_dict(sec.dual_primary, digits)
        out["secondary"] = sec_out
    if report.note is not None:
        out["note"] = report.note
    return out


# -- input parsing -------------------------------------------------------------


def _parse_triple(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError(f"expected three comma-separated rationals, got {text!r}")
    a, b, c = (parse_rational(p) for p in parts)
    return a, b, c


def _character_from_args(args) -> ChernCharacter:
    if getattr(args, "chern", None):
        ch0, ch1, ch2 = _parse_triple(args.chern)
        return ChernCharacter(ch0, ch1, ch2)
    if getattr(args, "rmd", None):
        r, mu, delta = _parse_triple(args.rmd)
        return ChernCharacter.from_rmd(r, mu, delta)
    raise DomainError("provide --chern r,c1,ch2 or --rmd r,mu,delta")


def _parse_dyadic(text: str) -> DyadicRational:
    text = text.strip()
    if "^" in text:
        mantissa, _, exponent = text.partition("/2^")
        if not exponent:
            raise DomainError(f"bad dyadic literal {text!r}")
        return DyadicRational.make(int(mantissa), int(exponent))
    value = parse_rational(text)
    return DyadicRational.from_fraction(value)


def _slope_from_args(args) -> exceptional.ExceptionalSlope:
    chosen = [
        flag for flag in ("dyadic", "rational", "lr") if getattr(args, flag, None) is not None
    ]
    if len(chosen) != 1:
        raise DomainError("provide exactly one of --dyadic, --rational, --lr")
    if args.dyadic is not None:
        return exceptional.from_dyadic(_parse_dyadic(args.dyadic))
    if args.rational is not None:
        return exceptional.from_slope_value(parse_rational(args.rational), args.max_order)
    return cfrac.lr_to_slope(args.lr.strip())


# -- subcommands ---------------------------------------------------------------


def _cmd_cone(args) -> int:
    x = _character_from_args(args)
    report = cone.cone_report(x, args.multiplier, args.max_order)
    _emit(report_to_dict(report, args.approx), args.format)
    if report.classification.kind is cone.Kind.INVALID:
        return EXIT_BAD_INPUT
    if report.primary is None:
        return EXIT_CLASSIFICATION_ONLY
    return EXIT_OK


def _cmd_classify(args) -> int:
    x = _character_from_args(args)
    cls = cone.classify(x, args.max_order)
    _emit(
        {
            "input": character_to_json(x),
            "classification": {"kind": cls.kind.value, "reasons": list(cls.reasons)},
        },
        args.format,
    )
    return EXIT_OK


def _cmd_slope(args) -> int:
    s = _slope_from_args(args)
    _emit(_slope_dict(s), args.format)
    return EXIT_OK


def _cmd_cfrac(args) -> int:
    s = _slope_from_args(args)
    normalized, shift, negated = cfrac.normalize_slope(s.slope)
    even = cfrac.even_expansion(normalized)
    odd = cfrac.parity_convert(even) if even else None
    out = {
        "slope": format_rational(s.slope),
        "normalized_slope": format_rational(normalized),
        "translation": shift,
        "negated": negated,
        "even": even,
        "odd": odd,
        "palindrome": even == even[::-1],
    }
    if args.period:
        _, word = cfrac.slope_to_lr(
            exceptional.from_slope_value(normalized) if normalized != s.slope else s
        )
        try:
            period = cfrac.period_structure(word)
            out["period_block"] = period.block
            out["period_exponent"] = period.exponent
            out["tail"] = period.tail
            out["beta_is_half"] = period.beta_is_half
        except DomainError as exc:
            out["period_error"] = str(exc)
    _emit(out, args.format)
    return EXIT_OK


def _cmd_curve(args) -> int:
    lo = parse_rational(args.lo)
    hi = parse_rational(args.hi)
    if not lo < hi:
        raise DomainError("--lo must be smaller than --hi")
    if args.samples < 2:
        raise DomainError("--samples must be at least 2")
    step = (hi - lo) / (args.samples - 1)
    rows = []
    for i in range(args.samples):
        mu = lo + i * step
        try:
            value = exceptional.delta_curve(mu, args.max_order)
            rows.append((mu, value, None))
        except DescentError as exc:
            rows.append((mu, None, str(exc)))
    intervals = [
        {
            "slope": format_rational(s.slope),
            "order": s.order,
            "left": str(s.interval()[0]),
            "right": str(s.interval()[1]),
        }
        for s in exceptional.enumerate_slopes(lo, hi, args.interval_order)
    ]
    overlay = None
    if getattr(args, "chern", None) or getattr(args, "rmd", None):
        x = _character_from_args(args)
        if x.ch0 != 0:
            overlay = {
                "vertex_mu": format_rational(-Fraction(3, 2) - x.slope()),
                "vertex_delta": format_rational(-Fraction(1, 8) - x.discriminant()),
                "translation_mu": format_rational(-x.slope()),
                "translation_delta": format_rational(-x.discriminant()),
            }
        else:
            overlay = {"line_mu": format_rational(-x.euler_chi() / x.ch1)}

    if args.output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["mu", "delta"] + (["approx_delta"] if args.approx is not None else [])
        writer.writerow(header)
        for mu, value, err in rows:
            if err is not None:
                record = [format_rational(mu), "ERROR"]
            else:
                record = [format_rational(mu), format_rational(value)]
            if args.approx is not None:
                record.append("" if err else _approx(value, args.approx))
            writer.writerow(record)
        sys.stdout.write(buf.getvalue())
    else:
        payload = {
            "samples": [
                {
                    "mu": format_rational(mu),
                    "delta": None if err else format_rational(value),
                    **({"error": err} if err else {}),
                }
                for mu, value, err in rows
            ],
            "intervals": intervals,
        }
        if overlay is not None:
            payload["parabola"] = overlay
        _emit(payload, "json")
    return EXIT_OK


def _cmd_batch(args) -> int:
    if args.input == "-":
        stream = sys.stdin
        close = False
    else:
        try:
            stream = open(args.input, "r", encoding="utf-8")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BAD_INPUT
        close = True
    try:
        for number, line in enumerate(stream, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
                x = character_from_json(data)
                report = cone.cone_report(x, args.multiplier, args.max_order)
                if report.classification.kind is cone.Kind.INVALID:
                    record = {
                        "line": number,
                        "error": "; ".join(report.classification.reasons),
                    }
                else:
                    record = report_to_dict(report, args.approx)
            except (DomainError, DescentError, ValueError) as exc:
                record = {"line": number, "error": str(exc)}
            print(json.dumps(record))
    finally:
        if close:
            stream.close()
    return EXIT_OK


# -- argument wiring -------------------------------------------------------------


def _add_character_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--chern", help="character as r,c1,ch2 (exact rationals)")
    parser.add_argument("--rmd", help="character as r,mu,delta (exact rationals)")


def _add_common(parser: argparse.ArgumentParser, defaults: dict) -> None:
    parser.add_argument(
        "--max-order",
        dest="max_order",
        type=int,
        default=defaults.get("max_order", DEFAULT_MAX_ORDER),
        help="interval-descent order budget",
    )
    parser.add_argument(
        "--approx",
        type=int,
        default=None,
        metavar="N",
        help="add non-authoritative N-digit decimal columns",
    )
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument(
        "--json", dest="format", action="store_const", const="json", default="json"
    )
    fmt.add_argument("--text", dest="format", action="store_const", const="text")


def build_parser(defaults: Optional[dict] = None) -> argparse.ArgumentParser:
    defaults = defaults or {}
    parser = argparse.ArgumentParser(
        prog="planecones",
        description="Exact effective-cone computations for moduli of sheaves on the plane",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cone = sub.add_parser("cone", help="full cone report for a character")
    _add_character_flags(p_cone)
    p_cone.add_argument(
        "--multiplier", type=int, default=defaults.get("multiplier", 1),
        help="rank multiplier for the primary orthogonal character",
    )
    _add_common(p_cone, defaults)
    p_cone.set_defaults(func=_cmd_cone)

    p_classify = sub.add_parser("classify", help="classification only")
    _add_character_flags(p_classify)
    _add_common(p_classify, defaults)
    p_classify.set_defaults(func=_cmd_classify)

    p_slope = sub.add_parser("slope", help="exceptional-slope lookup")
    p_slope.add_argument("--dyadic", help="dyadic address, p/2^q or p/q with q a power of two")
    p_slope.add_argument("--rational", help="slope value p/q (must be exceptional)")
    p_slope.add_argument("--lr", help="left-right word over {L,R}")
    _add_common(p_slope, defaults)
    p_slope.set_defaults(func=_cmd_slope)

    p_cfrac = sub.add_parser("cfrac", help="continued-fraction expansions")
    p_cfrac.add_argument("--dyadic")
    p_cfrac.add_argument("--rational")
    p_cfrac.add_argument("--lr")
    p_cfrac.add_argument("--odd", action="store_true", help="odd expansion is always included")
    p_cfrac.add_argument("--period", action="store_true", help="include the period structure")
    _add_common(p_cfrac, defaults)
    p_cfrac.set_defaults(func=_cmd_cfrac)

    p_curve = sub.add_parser("curve", help="boundary-curve samples and interval table")
    p_curve.add_argument("--lo", required=True)
    p_curve.add_argument("--hi", required=True)
    p_curve.add_argument("--samples", type=int, default=33)
    p_curve.add_argument(
        "--interval-order", dest="interval_order", type=int, default=4,
        help="enumerate intervals up to this order",
    )
    p_curve.add_argument(
        "--format", dest="output_format", choices=("csv", "json"), default="json"
    )
    _add_character_flags(p_curve)
    _add_common(p_curve, defaults)
    p_curve.set_defaults(func=_cmd_curve)

    p_batch = sub.add_parser("batch", help="one JSON character per line, one report per line")
    p_batch.add_argument("input", help="path to a JSONL file, or - for standard input")
    p_batch.add_argument(
        "--multiplier", type=int, default=defaults.get("multiplier", 1)
    )
    _add_common(p_batch, defaults)
    p_batch.set_defaults(func=_cmd_batch)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        defaults = _load_config()
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    parser = build_parser(defaults)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, DescentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
