"""Command-line interface: ``cygan dist|cr|reduce|rcircle|campaign``.

Exit codes: 0 on success, 1 for a mathematical violation or degenerate input,
2 for usage and parse errors. Numbers print as the shortest decimal that
round-trips, so every printed point can be fed back in.
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys

from .core import (
    INFINITY,
    DegenerateParams,
    DegenerateQuadruple,
    GeometryError,
    InversionClosure,
    ParseError,
    format_point,
    format_real,
    format_word,
    make_quadruple,
    parse_point,
    parse_word,
)
from .crossratio import x1_x2
from .cygan import rho
from .harness.campaign import SUITES, CampaignConfig, run_campaign
from .harness.sampling import NEAR_DEGENERATE, min_pairwise_distance
from .normalize import reduce_to_infinity_form
from .rcircles import (
    RCircle,
    circle_point,
    ptolemaeus_case,
    quadruple_on_circle,
    sample_parameters,
)

OK, VIOLATION, USAGE = 0, 1, 2
TIGHT_TOL = 1e-9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # points such as -1,0,0,0 are values, not options
        self._negative_number_matcher = re.compile(r"^-[\d.]")

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _point(text: str):
    try:
        return parse_point(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _param(text: str) -> float:
    if text.strip() != text or not text:
        raise UsageError(f"bad parameter {text!r}")
    try:
        t = float(text)
    except ValueError:
        raise UsageError(f"bad parameter {text!r}") from None
    if math.isnan(t):
        raise UsageError(f"bad parameter {text!r}")
    return math.inf if math.isinf(t) else t


def _default_seed() -> int:
    raw = os.environ.get("CYGAN_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"CYGAN_SEED must be an integer, got {raw!r}") from None


def _pair_line(x1: float, x2: float, prefix: str = "") -> str:
    return f"{prefix}X1={format_real(x1)} X2={format_real(x2)}"


# commands ------------------------------------------------------------------

def cmd_dist(args, out) -> int:
    print(format_real(rho(args.p, args.q)), file=out)
    return OK


def cmd_cr(args, out) -> int:
    q = make_quadruple(*args.points)
    if min_pairwise_distance(q) < NEAR_DEGENERATE:
        print(f"warning: two points are closer than {NEAR_DEGENERATE:g}", file=sys.stderr)
    x1, x2 = x1_x2(q)
    print(_pair_line(x1, x2), file=out)
    total = x1 + x2
    print(f"X1+X2={format_real(total)} ({'tight' if total - 1.0 <= TIGHT_TOL else 'slack'})",
          file=out)
    label, diff = ("X1-X2", x1 - x2) if x1 >= x2 else ("X2-X1", x2 - x1)
    print(f"{label}={format_real(diff)} ({'tight' if 1.0 - diff <= TIGHT_TOL else 'slack'})",
          file=out)
    return OK


def cmd_reduce(args, out) -> int:
    q = make_quadruple(*args.points)
    red = reduce_to_infinity_form(q)
    print(_pair_line(*x1_x2(q), prefix="before "), file=out)
    print("permutation " + ",".join(str(i + 1) for i in red.permutation), file=out)
    print(f"height_shift {format_real(red.height_shift)}", file=out)
    print(f"word {format_word(red.word)}", file=out)
    for k, p in enumerate(red.quadruple, 1):
        print(f"p{k} {format_point(p)}", file=out)
    print(_pair_line(*x1_x2(red.quadruple), prefix="after "), file=out)
    return OK


def _csv_row(t: float, p) -> str:
    if p is INFINITY:
        return f"{format_real(t)},inf,inf,inf,inf"
    return ",".join(format_real(x) for x in (t, p.zeta.real, p.zeta.imag, p.v, p.u))


def cmd_rcircle(args, out) -> int:
    try:
        word = parse_word(args.word)
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    if any(isinstance(g, InversionClosure) for g in word):
        raise UsageError("the closure inversion I does not preserve horospheres")
    if not (math.isfinite(args.height) and args.height >= 0):
        raise UsageError("--height must be finite and nonnegative")
    circle = RCircle(args.height, word)

    if args.samples is not None:
        if args.samples < 1:
            raise UsageError("--samples must be positive")
        print("t,zre,zim,v,u", file=out)
        for t in sample_parameters(args.samples):
            print(_csv_row(t, circle_point(circle, t)), file=out)
        return OK

    params = [_param(t) for t in args.params.split(",")]
    if len(params) != 4:
        raise UsageError("--params takes exactly four comma-separated values")
    cq = quadruple_on_circle(circle, *params)
    print("t,zre,zim,v,u", file=out)
    for t, p in zip(params, cq.quadruple):
        print(_csv_row(t, p), file=out)
    print(f"# pattern {cq.pattern.name}", file=out)
    res = ptolemaeus_case(cq.quadruple, cq.pattern)
    print(f"# case {res.case.value} {_pair_line(res.x1, res.x2)} "
          f"residual={format_real(res.residuals[res.case.value - 1])} "
          f"margin={format_real(res.margin)}", file=out)
    if not res.matches:
        print(f"# mismatch: separation predicts case {cq.pattern.value}", file=out)
        return VIOLATION
    return OK


def cmd_campaign(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    try:
        cfg = CampaignConfig(seed=seed, samples=args.samples, tolerance=args.tol,
                             suite=args.suite, coordinate_scale=args.scale)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    report = run_campaign(cfg, jobs=args.jobs)
    text = report.to_json() if args.format == "json" else report.to_csv()
    if args.output in (None, "-"):
        out.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    print(f"{report.suite}: {len(report.violations)} violations, "
          f"{report.rejections} rejections, {report.elapsed_ms:.0f} ms", file=sys.stderr)
    return OK if report.passed else VIOLATION


# parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cygan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("dist", help="Cygan distance between two points")
    p.add_argument("p", type=_point)
    p.add_argument("q", type=_point)
    p.set_defaults(func=cmd_dist)

    for name, func, text in (("cr", cmd_cr, "cross-ratio pair X1, X2 of four points"),
                             ("reduce", cmd_reduce, "move a quadruple to (p, q, r, inf) form")):
        p = sub.add_parser(name, help=text)
        p.add_argument("points", type=_point, nargs=4, metavar="POINT")
        p.set_defaults(func=func)

    p = sub.add_parser("rcircle", help="sample an R-circle as CSV")
    p.add_argument("--height", type=float, default=0.0)
    p.add_argument("--word", default="")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--params", help="four parameters, e.g. inf,2,1,0")
    mode.add_argument("--samples", type=int)
    p.set_defaults(func=cmd_rcircle)

    p = sub.add_parser("campaign", help="run a seeded verification campaign")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, help="defaults to $CYGAN_SEED, else 0")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--scale", type=float, default=10.0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", help="file to write, '-' for stdout")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_campaign)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return USAGE
    except (DegenerateQuadruple, DegenerateParams) as exc:
        print(f"DEGENERATE: {exc}", file=out)
        return VIOLATION
    except (GeometryError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VIOLATION
