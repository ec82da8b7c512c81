"""Verification campaigns and their reports.

A campaign evaluates ``samples`` independent indices of one suite. Each index
produces CSV rows, violation records and a rejection count; the report is a
reduction over indices in order, so it is identical for any ``jobs`` value.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from ..core import (
    INFINITY,
    GeometryError,
    NoEqualityHolds,
    Point,
    Rotation,
    Translation,
    UndefinedImage,
    format_point,
    format_real,
    format_word,
    make_quadruple,
    parse_point,
    parse_word,
)
from ..crossratio import x1_x2
from ..cygan import apply_word, lift_pairing_modulus, rho
from ..heisenberg import d_heis, d_heis_via_lift
from ..rcircles import RCircle, case_residuals, ptolemaeus_case, quadruple_on_circle
from . import checks
from .sampling import (
    BOUNDARY,
    CLOSURE,
    INTERIOR,
    is_ill_conditioned,
    is_near_degenerate,
    sample_point,
    sample_quadruple,
    sample_word,
    substream,
)

STREAMS = {"inequality": 1, "equality": 2, "triangle": 3, "invariance": 4, "oracle": 5}
SUITES = tuple(STREAMS)
CSV_COLUMNS = ("suite", "index", "check", "x1", "x2", "slack_a", "slack_b", "ok")

TRIANGLE_EQUALITY_EVERY = 100
NEGATIVE_CONTROL_EVERY = 10

SIMILARITY_WORD = ("T", "R", "D", "J", "I")
HOROSPHERE_WORD = ("T", "R", "D", "J", "Iu")


@dataclass(frozen=True)
class CampaignConfig:
    seed: int = 0
    samples: int = 1000
    tolerance: float = 1e-9
    suite: str = "all"
    coordinate_scale: float = 10.0

    def __post_init__(self):
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not (self.tolerance > 0 and math.isfinite(self.tolerance)):
            raise ValueError("tolerance must be positive")
        if not (self.coordinate_scale > 0 and math.isfinite(self.coordinate_scale)):
            raise ValueError("coordinate scale must be positive")
        if self.suite not in SUITES + ("all",):
            raise ValueError(f"unknown suite {self.suite!r}")


class Sample(NamedTuple):
    rows: list
    violations: list
    rejections: int


@dataclass
class CampaignReport:
    suite: str
    seed: int
    samples: int
    tolerance: float
    scale: float
    violations: list
    max_slack: Optional[float]
    min_slack: Optional[float]
    rejections: int
    elapsed_ms: float
    details: dict = field(default_factory=dict)
    rows: list = field(default_factory=list, repr=False)
    suites: list = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "seed": self.seed,
            "samples": self.samples,
            "tolerance": self.tolerance,
            "scale": self.scale,
            "violations": self.violations,
            "max_slack": self.max_slack,
            "min_slack": self.min_slack,
            "rejections": self.rejections,
            "elapsed_ms": self.elapsed_ms,
            "details": self.details,
        }
        if self.suites:
            out["suites"] = [s.to_dict() for s in self.suites]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for report in (self.suites or [self]):
            for row in report.rows:
                writer.writerow([report.suite] + [_cell(x) for x in row])
        return buf.getvalue()


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return format_real(x)
    return str(x)


def _pts(points) -> list:
    return [format_point(p) for p in points]


def _violation(check: str, index: int, inputs: dict, values: dict, slack: float) -> dict:
    return {"check": check, "index": index, "inputs": inputs, "values": values,
            "slack": slack}


# inequality ------------------------------------------------------------------

def _inequality_sample(cfg: CampaignConfig, i: int) -> Sample:
    rng = substream(cfg.seed, STREAMS["inequality"], i)
    pts, rejected = sample_quadruple(rng, cfg.coordinate_scale, CLOSURE)
    q = make_quadruple(*pts)
    res = checks.check_ptolemaean_inequality(q, cfg.tolerance)
    rows = [(i, "cross_ratio", res.x1, res.x2, res.lower_slack, res.upper_slack, res.passed)]
    violations = []
    if not res.passed:
        violations.append(_violation(
            "ptolemaean_inequality", i, {"points": _pts(q)},
            {"x1": res.x1, "x2": res.x2},
            max(-res.lower_slack, res.upper_slack)))
    if INFINITY not in q:
        prod = checks.check_equivalent_ptolemaean_form(q, cfg.tolerance)
        agree = prod.passed == res.passed
        rows.append((i, "product_form", None, None, min(prod.slacks), None, agree))
        if not agree:
            violations.append(_violation(
                "product_form_agreement", i, {"points": _pts(q)},
                {"cross_ratio_pass": res.passed, "product_pass": prod.passed,
                 "slacks": list(prod.slacks)}, min(prod.slacks)))
    return Sample(rows, violations, rejected)


def _inequality_summary(samples: list) -> dict:
    lows = [r[4] for s in samples for r in s.rows if r[1] == "cross_ratio"]
    ups = [r[5] for s in samples for r in s.rows if r[1] == "cross_ratio"]
    n_prod = sum(1 for s in samples for r in s.rows if r[1] == "product_form")
    return {"min_slack": min(lows), "max_slack": max(ups),
            "details": {"product_form_checked": n_prod,
                        "min_sum_minus_one": min(lows),
                        "max_abs_diff_minus_one": max(ups)}}


# equality (Ptolemaeus' theorem on R-circles) -----------------------------------

def _random_circle_quadruple(rng, scale: float):
    rejections = 0
    while True:
        height = scale * (1.0 - rng.random())
        word = sample_word(rng, scale, HOROSPHERE_WORD, max_length=5, min_length=0)
        params = [scale * (2.0 * rng.random() - 1.0) for _ in range(4)]
        if rng.random() < 0.1:
            params[int(rng.integers(4))] = math.inf
        circle = RCircle(height, word)
        try:
            cq = quadruple_on_circle(circle, *params)
        except (UndefinedImage, GeometryError):
            rejections += 1
            continue
        if is_ill_conditioned(cq.quadruple):
            rejections += 1
            continue
        return circle, params, cq, rejections


def _equality_sample(cfg: CampaignConfig, i: int) -> Sample:
    rng = substream(cfg.seed, STREAMS["equality"], i)
    circle, params, cq, rejected = _random_circle_quadruple(rng, cfg.coordinate_scale)
    rows, violations = [], []
    inputs = {"height": circle.height, "word": format_word(circle.word),
              "params": [format_real(t) for t in params], "points": _pts(cq.quadruple)}
    try:
        res = ptolemaeus_case(cq.quadruple, cq.pattern, cfg.tolerance)
    except NoEqualityHolds:
        x1, x2 = x1_x2(cq.quadruple)
        resid = case_residuals(x1, x2)
        rows.append((i, "circle", x1, x2, resid[cq.pattern.value - 1], None, False))
        violations.append(_violation("ptolemaeus_case", i, inputs,
                                     {"x1": x1, "x2": x2, "expected": cq.pattern.value,
                                      "case": None, "residuals": list(resid)},
                                     resid[cq.pattern.value - 1]))
    else:
        resid = res.residuals[res.case.value - 1]
        ok = res.matches and res.margin > cfg.tolerance
        rows.append((i, "circle", res.x1, res.x2, resid, res.margin, ok))
        if not ok:
            violations.append(_violation("ptolemaeus_case", i, inputs,
                                         {"x1": res.x1, "x2": res.x2,
                                          "expected": cq.pattern.value,
                                          "case": res.case.value,
                                          "residuals": list(res.residuals)},
                                         res.residuals[cq.pattern.value - 1]))
    if i % NEGATIVE_CONTROL_EVERY == 0:
        pts, more = sample_quadruple(rng, cfg.coordinate_scale, INTERIOR)
        rejected += more
        q = make_quadruple(*pts)
        x1, x2 = x1_x2(q)
        resid = case_residuals(x1, x2)
        ok = min(resid) > cfg.tolerance
        rows.append((i, "negative_control", x1, x2, None, min(resid), ok))
        if not ok:
            violations.append(_violation("negative_control", i, {"points": _pts(q)},
                                         {"x1": x1, "x2": x2, "residuals": list(resid)},
                                         min(resid)))
    return Sample(rows, violations, rejected)


def _equality_summary(samples: list) -> dict:
    circle = [r for s in samples for r in s.rows if r[1] == "circle"]
    controls = [r for s in samples for r in s.rows if r[1] == "negative_control"]
    margins = [r[5] for r in circle if r[5] is not None] + [r[5] for r in controls]
    return {"max_slack": max(r[4] for r in circle),
            "min_slack": min(margins) if margins else None,
            "details": {"circle_quadruples": len(circle),
                        "negative_controls": len(controls),
                        "negative_controls_rejected": sum(1 for r in controls if r[6]),
                        "max_case_residual": max(r[4] for r in circle),
                        "min_margin_other_cases": min((r[5] for r in circle
                                                       if r[5] is not None), default=None),
                        "min_negative_control_residual": min((r[5] for r in controls),
                                                             default=None)}}


# triangle --------------------------------------------------------------------

def _random_isometry(rng, scale: float) -> tuple:
    re, im, v = (scale * (2.0 * rng.random() - 1.0) for _ in range(3))
    return (Rotation(2.0 * math.pi * rng.random()), Translation(complex(re, im), v))


def _triangle_sample(cfg: CampaignConfig, i: int) -> Sample:
    rng = substream(cfg.seed, STREAMS["triangle"], i)
    s = cfg.coordinate_scale
    tri = tuple(sample_point(rng, s, INTERIOR) for _ in range(3))
    slack = checks.triangle_slack(*tri)
    ok = slack >= -checks.TRIANGLE_SLACK
    rows = [(i, "random_triple", None, None, slack, None, ok)]
    violations = []
    if not ok:
        violations.append(_violation("triangle", i, {"points": _pts(tri)}, {}, slack))
    if i % TRIANGLE_EQUALITY_EVERY == 0:
        a = s * (0.1 + 0.9 * rng.random())
        c = s * (0.1 + 0.9 * rng.random())
        u = s * (1.0 - rng.random())
        eps = 1e-3 * max(1.0, s) * (1.0 + 9.0 * rng.random())
        iso = _random_isometry(rng, s)
        flat = tuple(apply_word(iso, p) for p in checks.equality_configuration(a, c, u))
        defect = checks.triangle_defect(*flat)
        ok = abs(defect) <= checks.TRIANGLE_EQUALITY_TOL
        rows.append((i, "equality_config", None, None, defect, None, ok))
        if not ok:
            violations.append(_violation("triangle_equality", i, {"points": _pts(flat)},
                                         {"a": a, "c": c, "u": u}, defect))
        for kind, tri in checks.perturbations(a, c, u, eps).items():
            moved = tuple(apply_word(iso, p) for p in tri)
            margin = checks.triangle_defect(*moved)
            ok = margin > checks.STRICT_MARGIN
            rows.append((i, "perturbed_" + kind, None, None, margin, eps, ok))
            if not ok:
                violations.append(_violation("triangle_strict", i,
                                             {"points": _pts(moved), "kind": kind},
                                             {"eps": eps}, margin))
    return Sample(rows, violations, 0)


def _triangle_summary(samples: list) -> dict:
    rows = [r for s in samples for r in s.rows]
    random_slacks = [r[4] for r in rows if r[1] == "random_triple"]
    defects = [abs(r[4]) for r in rows if r[1] == "equality_config"]
    margins = {}
    for r in rows:
        if r[1].startswith("perturbed_"):
            kind = r[1][len("perturbed_"):]
            margins[kind] = min(margins.get(kind, math.inf), r[4])
    return {"min_slack": min(random_slacks),
            "max_slack": max(defects) if defects else None,
            "details": {"random_triples": len(random_slacks),
                        "equality_configs": len(defects),
                        "max_equality_defect": max(defects) if defects else None,
                        "min_perturbation_margin": margins}}


# invariance ------------------------------------------------------------------

def _common_height_quadruple(rng, scale: float):
    u = 0.0 if rng.random() < 0.25 else scale * (1.0 - rng.random())
    rejections = 0
    while True:
        pts = []
        for _ in range(4):
            p = sample_point(rng, scale, BOUNDARY)
            pts.append(Point(p.zeta, p.v, u))
        if not is_near_degenerate(pts):
            return tuple(pts), rejections
        rejections += 1


def _invariance_sample(cfg: CampaignConfig, i: int) -> Sample:
    rng = substream(cfg.seed, STREAMS["invariance"], i)
    s = cfg.coordinate_scale
    family, kinds = ("closure", SIMILARITY_WORD) if i % 2 == 0 else ("horosphere", HOROSPHERE_WORD)
    rejected = 0
    while True:
        if family == "closure":
            pts, more = sample_quadruple(rng, s, CLOSURE)
        else:
            pts, more = _common_height_quadruple(rng, s)
        rejected += more
        word = sample_word(rng, s, kinds, max_length=5)
        try:
            moved = tuple(apply_word(word, p) for p in pts)
        except UndefinedImage:
            rejected += 1
            continue
        if is_ill_conditioned(pts) or is_ill_conditioned(moved):
            rejected += 1
            continue
        break
    before = x1_x2(make_quadruple(*pts))
    after = x1_x2(make_quadruple(*moved))
    change = checks.relative_change(before, after)
    ok = change <= cfg.tolerance
    interior = sum(1 for p in pts if p is not INFINITY and p.u > 0)
    rows = [(i, family, before[0], before[1], change, float(interior), ok)]
    violations = []
    if not ok:
        violations.append(_violation(
            "invariance", i,
            {"family": family, "points": _pts(pts), "word": format_word(word)},
            {"before": list(before), "after": list(after), "interior_points": interior},
            change))
    return Sample(rows, violations, rejected)


def _invariance_summary(samples: list) -> dict:
    details = {}
    for family in ("closure", "horosphere"):
        rows = [r for s in samples for r in s.rows if r[1] == family]
        bad = [r for r in rows if not r[6]]
        by_interior = {}
        for r in rows:
            k = str(int(r[5]))
            n, b = by_interior.get(k, (0, 0))
            by_interior[k] = (n + 1, b + (0 if r[6] else 1))
        details[family] = {
            "samples": len(rows),
            "violations": len(bad),
            "max_relative_change": max((r[4] for r in rows), default=None),
            "by_interior_count": {k: {"samples": n, "violations": b}
                                  for k, (n, b) in sorted(by_interior.items())},
        }
    changes = [r[4] for s in samples for r in s.rows]
    return {"max_slack": max(changes), "min_slack": min(changes), "details": details}


# oracle ----------------------------------------------------------------------

def _oracle_sample(cfg: CampaignConfig, i: int) -> Sample:
    rng = substream(cfg.seed, STREAMS["oracle"], i)
    s = cfg.coordinate_scale
    rows, violations = [], []

    b1, b2 = (sample_point(rng, s, BOUNDARY) for _ in range(2))
    gauge = d_heis(b1.horizontal, b2.horizontal)
    lift = d_heis_via_lift(b1.horizontal, b2.horizontal)
    err = abs(gauge - lift) / gauge if gauge else abs(lift)
    ok = err <= checks.ORACLE_TOL
    rows.append((i, "heisenberg_lift", gauge, lift, err, None, ok))
    if not ok:
        violations.append(_violation("heisenberg_lift", i, {"points": _pts((b1, b2))},
                                     {"gauge": gauge, "lift": lift}, err))

    p = sample_point(rng, s, INTERIOR)
    q = sample_point(rng, s, BOUNDARY)
    if rng.random() < 0.5:
        p, q = q, p
    r2 = rho(p, q) ** 2
    pairing = lift_pairing_modulus(p, q)
    err = abs(r2 - pairing) / r2
    ok = err <= checks.ORACLE_TOL
    rows.append((i, "boundary_pairing", r2, pairing, err, None, ok))
    if not ok:
        violations.append(_violation("boundary_pairing", i, {"points": _pts((p, q))},
                                     {"rho_squared": r2, "pairing": pairing}, err))

    p, q = (sample_point(rng, s, INTERIOR) for _ in range(2))
    r2 = rho(p, q) ** 2
    pairing = lift_pairing_modulus(p, q)
    gap = abs(r2 - pairing) / r2
    ok = gap > checks.ORACLE_TOL
    rows.append((i, "interior_mismatch", r2, pairing, None, gap, ok))
    if not ok:
        violations.append(_violation("interior_mismatch", i, {"points": _pts((p, q))},
                                     {"rho_squared": r2, "pairing": pairing}, gap))
    return Sample(rows, violations, 0)


def _oracle_summary(samples: list) -> dict:
    rows = [r for s in samples for r in s.rows]
    agree = [r[4] for r in rows if r[1] in ("heisenberg_lift", "boundary_pairing")]
    gaps = [r[5] for r in rows if r[1] == "interior_mismatch"]
    return {"max_slack": max(agree), "min_slack": min(gaps),
            "details": {
                "max_lift_error": max(r[4] for r in rows if r[1] == "heisenberg_lift"),
                "max_pairing_error": max(r[4] for r in rows if r[1] == "boundary_pairing"),
                "min_interior_gap": min(gaps),
                "interior_agreements": sum(1 for r in rows
                                           if r[1] == "interior_mismatch" and not r[6])}}


_SAMPLERS = {
    "inequality": (_inequality_sample, _inequality_summary),
    "equality": (_equality_sample, _equality_summary),
    "triangle": (_triangle_sample, _triangle_summary),
    "invariance": (_invariance_sample, _invariance_summary),
    "oracle": (_oracle_sample, _oracle_summary),
}


def _evaluate_range(suite: str, cfg: CampaignConfig, start: int, stop: int) -> list:
    sampler = _SAMPLERS[suite][0]
    return [sampler(cfg, i) for i in range(start, stop)]


def run_suite(suite: str, cfg: CampaignConfig, jobs: int = 1) -> CampaignReport:
    t0 = time.perf_counter()
    if jobs > 1:
        step = -(-cfg.samples // jobs)
        bounds = [(a, min(a + step, cfg.samples)) for a in range(0, cfg.samples, step)]
        with ProcessPoolExecutor(jobs) as pool:
            parts = pool.map(_evaluate_range, *zip(*[(suite, cfg, a, b) for a, b in bounds]))
            samples = [s for part in parts for s in part]
    else:
        samples = _evaluate_range(suite, cfg, 0, cfg.samples)
    summary = _SAMPLERS[suite][1](samples)
    violations = [v for s in samples for v in s.violations]
    rows = [r for s in samples for r in s.rows]
    return CampaignReport(
        suite=suite, seed=cfg.seed, samples=cfg.samples, tolerance=cfg.tolerance,
        scale=cfg.coordinate_scale, violations=violations,
        max_slack=summary["max_slack"], min_slack=summary["min_slack"],
        rejections=sum(s.rejections for s in samples),
        elapsed_ms=round((time.perf_counter() - t0) * 1000.0, 3),
        details=summary["details"], rows=rows)


def check_inequality_suite(cfg: CampaignConfig, jobs: int = 1) -> CampaignReport:
    return run_suite("inequality", cfg, jobs)


def check_ptolemaeus_suite(cfg: CampaignConfig, jobs: int = 1) -> CampaignReport:
    return run_suite("equality", cfg, jobs)


def check_triangle_suite(cfg: CampaignConfig, jobs: int = 1) -> CampaignReport:
    return run_suite("triangle", cfg, jobs)


def check_invariance_suite(cfg: CampaignConfig, jobs: int = 1) -> CampaignReport:
    return run_suite("invariance", cfg, jobs)


def check_oracle_suite(cfg: CampaignConfig, jobs: int = 1) -> CampaignReport:
    return run_suite("oracle", cfg, jobs)


def run_campaign(cfg: CampaignConfig, jobs: int = 1) -> CampaignReport:
    if cfg.suite != "all":
        return run_suite(cfg.suite, cfg, jobs)
    t0 = time.perf_counter()
    parts = [run_suite(name, cfg, jobs) for name in SUITES]
    violations = [dict(v, suite=p.suite) for p in parts for v in p.violations]
    return CampaignReport(
        suite="all", seed=cfg.seed, samples=cfg.samples, tolerance=cfg.tolerance,
        scale=cfg.coordinate_scale, violations=violations, max_slack=None,
        min_slack=None, rejections=sum(p.rejections for p in parts),
        elapsed_ms=round((time.perf_counter() - t0) * 1000.0, 3),
        details={p.suite: {"violations": len(p.violations)} for p in parts},
        suites=parts)


# replay ----------------------------------------------------------------------

def replay(record: dict, tolerance: float = 1e-9) -> bool:
    """Re-run the check behind a violation record; True if it still fails."""
    check = record["check"]
    inputs = record["inputs"]
    pts = [parse_point(t) for t in inputs["points"]]
    if check == "ptolemaean_inequality":
        return not checks.check_ptolemaean_inequality(make_quadruple(*pts), tolerance).passed
    if check == "product_form_agreement":
        q = make_quadruple(*pts)
        return (checks.check_ptolemaean_inequality(q, tolerance).passed
                != checks.check_equivalent_ptolemaean_form(q, tolerance).passed)
    if check == "ptolemaeus_case":
        circle = RCircle(inputs["height"], parse_word(inputs["word"]))
        params = [float(t) for t in inputs["params"]]
        cq = quadruple_on_circle(circle, *params)
        try:
            res = ptolemaeus_case(cq.quadruple, cq.pattern, tolerance)
        except NoEqualityHolds:
            return True
        return not res.matches or res.margin <= tolerance
    if check == "negative_control":
        x1, x2 = x1_x2(make_quadruple(*pts))
        return min(case_residuals(x1, x2)) <= tolerance
    if check == "triangle":
        return checks.triangle_slack(*pts) < -checks.TRIANGLE_SLACK
    if check == "triangle_equality":
        return abs(checks.triangle_defect(*pts)) > checks.TRIANGLE_EQUALITY_TOL
    if check == "triangle_strict":
        return checks.triangle_defect(*pts) <= checks.STRICT_MARGIN
    if check == "invariance":
        word = parse_word(inputs["word"])
        before = x1_x2(make_quadruple(*pts))
        after = x1_x2(make_quadruple(*(apply_word(word, p) for p in pts)))
        return checks.relative_change(before, after) > tolerance
    if check == "heisenberg_lift":
        a, b = (p.horizontal for p in pts)
        g = d_heis(a, b)
        return abs(g - d_heis_via_lift(a, b)) / g > checks.ORACLE_TOL
    if check == "boundary_pairing":
        r2 = rho(*pts) ** 2
        return abs(r2 - lift_pairing_modulus(*pts)) / r2 > checks.ORACLE_TOL
    if check == "interior_mismatch":
        r2 = rho(*pts) ** 2
        return abs(r2 - lift_pairing_modulus(*pts)) / r2 <= checks.ORACLE_TOL
    raise ValueError(f"unknown check {check!r}")
