"""Batch front end: JSON problem in, JSON report out, optional DOT trees.

A problem document looks like::

    {"p": 2, "ell": 5, "points": ["7", "12", "0", "5", "1", "inf"]}

with points given as exact decimal-integer or "num/den" strings ("inf" for
the point at infinity).  The report is a stable JSON object whose rational
entries are always exact normalised strings, never floats.  Exit codes:
0 the configuration is good, 1 not good, 2 redundant, 3 invalid input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import folding, oracle
from .clusters import Configuration, PairedConfiguration, pair_up
from .errors import (
    InvalidInputError,
    PairingError,
    SchottkyFoldError,
    UnsupportedFieldError,
)
from .hull import reduced_convex_hull, to_dot
from .projline import INFINITY, Mobius, PPoint, point_str
from .valfield import FieldContext, Val, field_context, format_fraction

EXIT_GOOD = 0
EXIT_NOT_GOOD = 1
EXIT_REDUNDANT = 2
EXIT_INVALID = 3


class ProblemError(SchottkyFoldError):
    """Raised for malformed or invalid problem documents."""


class ParseError(ProblemError):
    pass


class ValidationError(ProblemError):
    pass


@dataclass
class ProblemSpec:
    p: int
    ell: int
    points: list  # Fraction values and the string "inf"
    trace: bool = False
    dot: Optional[str] = None
    verify_depth: Optional[int] = None
    normalize_infinity: bool = False


_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def _parse_rational(text: str, where: str) -> Fraction:
    if not _RATIONAL_RE.match(text):
        raise ParseError(
            f"{where}: expected a decimal integer or num/den string, got {text!r}"
        )
    return Fraction(text)


def parse_problem(text: str) -> ProblemSpec:
    """Parse and validate a JSON problem document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("problem document must be a JSON object")
    for field in ("p", "ell", "points"):
        if field not in doc:
            raise ParseError(f"field {field!r} is missing")
    p, ell = doc["p"], doc["ell"]
    if not isinstance(p, int) or not isinstance(ell, int):
        raise ValidationError("fields 'p' and 'ell' must be integers")
    raw_points = doc["points"]
    if not isinstance(raw_points, list):
        raise ParseError("field 'points' must be a list")
    points: list = []
    inf_seen = 0
    for k, item in enumerate(raw_points):
        if not isinstance(item, str):
            raise ParseError(f"points[{k}]: expected a string literal")
        if item == "inf":
            inf_seen += 1
            points.append("inf")
        else:
            points.append(_parse_rational(item, f"points[{k}]"))
    if inf_seen > 1:
        raise ValidationError("the point at infinity may appear only once")
    if len(points) < 4 or len(points) % 2 != 0:
        raise ValidationError("the number of points must be even and >= 4")
    try:
        field_context(p, ell)
    except UnsupportedFieldError as exc:
        raise ValidationError(str(exc)) from exc
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise ParseError("field 'options' must be an object")
    return ProblemSpec(
        p=p,
        ell=ell,
        points=points,
        trace=bool(options.get("trace", False)),
        dot=options.get("dot"),
        verify_depth=options.get("verify_depth"),
        normalize_infinity=bool(options.get("normalize_infinity", False)),
    )


# --------------------------------------------------------------------------
# report assembly
# --------------------------------------------------------------------------


def _fmt_point(ctx: FieldContext, pt: PPoint) -> str:
    return point_str(ctx, pt)


def _fmt_points(ctx, cfg: Configuration) -> list[str]:
    return [_fmt_point(ctx, pt) for pt in cfg.points]

def _fmt_val(v: Val) -> str:
    return "inf" if v.is_infinite else format_fraction(v.fraction)


def _fmt_matrix(ctx, m: Mobius) -> list[str]:
    return [ctx.to_str(x) for x in m.entries()]


def _fmt_pairs(ctx, pcfg: PairedConfiguration) -> list[list[str]]:
    return [[_fmt_point(ctx, a), _fmt_point(ctx, b)] for a, b in pcfg.pairs]


def _fold_record(ctx, step: folding.FoldingStep) -> dict:
    return {
        "i": step.i,
        "j": step.j,
        "n": step.n,
        "indices": sorted(step.indices),
        "matrix": _fmt_matrix(ctx, step.map),
        "witness": None
        if step.witness is None
        else {
            "l": step.witness.l,
            "lhs": _fmt_val(step.witness.lhs),
            "rhs": _fmt_val(step.witness.rhs),
        },
        "result": _fmt_points(ctx, step.after),
    }


def _audit_record(ctx, pcfg: PairedConfiguration, depth: int) -> dict:
    result = oracle.schottky_audit(pcfg, depth)
    record: dict = {"depth": depth, "words_checked": result.words_checked}
    if result.witness is None:
        record["witness"] = None
    else:
        word, cls = result.witness
        matrix = oracle.word_matrix(pcfg, word)
        record["witness"] = {
            "word": [[i, e] for i, e in word.syllables],
            "class": cls.kind.value,
            "matrix": _fmt_matrix(ctx, matrix),
            "trace_valuation": _fmt_val(ctx.valuation(matrix.trace())),
            "det_valuation": _fmt_val(ctx.valuation(matrix.det())),
        }
    record["relations"] = [
        [[i, e] for i, e in w.syllables] for w in result.relations
    ]
    return record


def run(spec: ProblemSpec) -> tuple[dict, int]:
    """Execute a problem and return (report, exit code)."""
    ctx = field_context(spec.p, spec.ell)
    raw = list(spec.points)
    report: dict = {
        "p": spec.p,
        "ell": spec.ell,
        "points": [
            x if isinstance(x, str) else format_fraction(x) for x in raw
        ],
        "normalization": None,
    }
    points = [
        INFINITY if x == "inf" else PPoint(ctx.from_fraction(x)) for x in raw
    ]
    if not any(pt.is_infinity for pt in points):
        if not spec.normalize_infinity:
            report["error"] = (
                "the point at infinity is required; pass normalize_infinity "
                "to change coordinates first"
            )
            return report, EXIT_INVALID
        c = points[0].value
        # z -> 1/(z - c) carries the first point to infinity
        moved = []
        for pt in points:
            diff = ctx.sub(pt.value, c)
            moved.append(
                INFINITY if ctx.is_zero(diff) else PPoint(ctx.inv(diff))
            )
        points = moved
        report["normalization"] = {
            "matrix": [
                "0",
                "1",
                "1",
                format_fraction(-ctx.as_fraction(c)),
            ]
        }
    cfg = Configuration(ctx, tuple(points))

    try:
        verdict = folding.run_algorithm(ctx, cfg)
    except InvalidInputError as exc:
        report["error"] = str(exc)
        return report, EXIT_INVALID

    report["fold_count"] = len(verdict.trace)
    if isinstance(verdict, folding.Good):
        report["verdict"] = {
            "kind": "good",
            "s_min": _fmt_points(ctx, verdict.s_min.configuration()),
            "s_min_pairs": _fmt_pairs(ctx, verdict.s_min),
        }
        code = EXIT_GOOD
    elif isinstance(verdict, folding.NotGood):
        reason = verdict.reason
        if isinstance(reason, folding.InitialNotPaired):
            detail = {"stage": "initial", "failure": reason.failure.value}
        else:
            detail = {
                "stage": "after_fold",
                "failure": reason.failure.value,
                "failing_fold": len(verdict.trace) - 1,
            }
        report["verdict"] = {"kind": "not_good", **detail}
        code = EXIT_NOT_GOOD
    else:
        report["verdict"] = {
            "kind": "redundant",
            "reduced": _fmt_points(ctx, verdict.reduced),
        }
        code = EXIT_REDUNDANT

    if spec.trace:
        report["folds"] = [_fold_record(ctx, s) for s in verdict.trace]

    stages: list[PairedConfiguration] = [s.before for s in verdict.trace]
    if isinstance(verdict, folding.Good):
        stages.append(verdict.s_min)
    elif not verdict.trace:
        try:
            stages.append(pair_up(cfg))
        except (PairingError, ValueError):
            pass

    if spec.dot is not None:
        trees = {}
        for k, pcfg in enumerate(stages):
            trees[f"stage{k:02d}"] = to_dot(reduced_convex_hull(pcfg))
        report["trees"] = trees

    if spec.verify_depth is not None and stages:
        report["audit"] = _audit_record(ctx, stages[0], spec.verify_depth)

    return report, code


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2)


def write_dot_files(report: dict, prefix: str) -> list[str]:
    written = []
    for stage, text in report.get("trees", {}).items():
        path = f"{prefix}.{stage}.dot"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        written.append(path)
    return written


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schottkyfold",
        description=(
            "Decide whether an even configuration of projective points over "
            "a discretely valued field is good, by folding."
        ),
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", metavar="PATH", help="problem JSON file")
    source.add_argument(
        "--stdin", action="store_true", help="read the problem JSON from stdin"
    )
    parser.add_argument(
        "--trace", action="store_true", help="include every fold in the report"
    )
    parser.add_argument(
        "--dot",
        metavar="PREFIX",
        help="write skeleton forests as PREFIX.<stage>.dot and embed them",
    )
    parser.add_argument(
        "--verify-depth",
        type=int,
        metavar="N",
        help="run the group-word audit up to word length N",
    )
    parser.add_argument(
        "--normalize-infinity",
        action="store_true",
        help="move the first point to infinity when infinity is absent",
    )
    parser.add_argument(
        "--quiet", action="store_true", help="suppress diagnostics on stderr"
    )
    return parser


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        if args.stdin:
            text = sys.stdin.read()
        else:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        if not args.quiet:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        spec = parse_problem(text)
    except ProblemError as exc:
        if not args.quiet:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    spec.trace = spec.trace or args.trace
    spec.dot = spec.dot if args.dot is None else args.dot
    if args.verify_depth is not None:
        spec.verify_depth = args.verify_depth
    spec.normalize_infinity = spec.normalize_infinity or args.normalize_infinity

    report, code = run(spec)
    print(render_report(report))
    if spec.dot is not None:
        written = write_dot_files(report, spec.dot)
        if written and not args.quiet:
            print("wrote " + ", ".join(written), file=sys.stderr)
    if code == EXIT_INVALID and not args.quiet and "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    return code
