"""Floating-point cross-examination of the symbolic verdicts.

Samples same-fiber point pairs (equal x, different determinations or
branches, the relative Lipschitz condition) at a geometric ladder of
radii, measures max |h(P) - h(P')| / |P - P'|, and regresses the log-log
slope against the exact prediction min_tau (nu - mu/m).  The regression
uses only the smallest half of the radii to keep higher-order terms out
of the fit.  Everything runs under a fixed mpmath precision and a seeded
RNG, so reports are reproducible bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import log

import mpmath

from .errors import DenominatorVanishesOnBranch
from .mpoly import MPoly
from .puiseux import CurveContext, PuiseuxBranch, algnum_to_mpc
from .saturation import contact_exponents, is_lipschitz_fraction
from .series import INF


@dataclass(frozen=True)
class SamplePlan:
    radii: tuple = (1e-1, 1e-2, 1e-3, 1e-4)
    pairs_per_radius: int = 6
    seed: int = 0
    float_precision: int = 128
    slope_tolerance: float = 0.15
    exponent_tolerance: float = 0.10

    def __post_init__(self):
        if not self.radii or any(r <= 0 for r in self.radii):
            raise ValueError("radii must be positive")
        if any(a <= b for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("radii must be strictly decreasing")
        if self.pairs_per_radius < 1:
            raise ValueError("need at least one pair per radius")


@dataclass
class SlopeData:
    radii: tuple
    max_ratios: tuple  # per radius, as floats (0.0 when every pair cancelled)
    measured_slope: object  # float or None when degenerate
    degenerate: bool


@dataclass
class ConsistencyReport:
    measured_slope: object  # float or None
    predicted_slope: object  # Fraction or None
    agree: bool
    degenerate: bool
    verdict: str
    residuals: list  # per-radius (radius, max_ratio)


def _mpoly_eval(poly: MPoly, x, y):
    total = mpmath.mpc(0)
    for (i, j), c in poly.terms.items():
        total += (mpmath.mpf(c.numerator) / c.denominator) * x**i * y**j
    return total


def _fiber_points(branches, x, prec):
    """All determinations of all branches over the same x (invertible order)."""
    pts = []
    for b in branches:
        n = b.ramification_index
        s = x ** (mpmath.mpf(1) / n)
        coeffs = [(int(e * n), algnum_to_mpc(c, prec)) for e, c in b.sorted_terms()]
        for k in range(n):
            zs = mpmath.expjpi(mpmath.mpf(2 * k) / n) * s
            y = mpmath.mpc(0)
            for en, cv in coeffs:
                y += cv * zs**en
            pts.append(y)
    return pts


def _regress(radii, values):
    """Least-squares slope of log(values) against log(radii), smallest half."""
    take = max(2, (len(radii) + 1) // 2)
    rs = radii[-take:]
    vs = values[-take:]
    xs = [log(r) for r in rs]
    ys = [log(v) for v in vs]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    num = sum((a - mx) * (b - my) for a, b in zip(xs, ys))
    den = sum((a - mx) ** 2 for a in xs)
    return num / den


def empirical_lipschitz_slope(p: MPoly, q: MPoly, f: MPoly, plan: SamplePlan) -> SlopeData:
    """Measured log-log slope of the worst same-fiber Lipschitz quotient."""
    ctx = CurveContext.get(f)
    for b in ctx.branches:
        if ctx.vanishes_on_branch(q, b.branch_id):
            raise DenominatorVanishesOnBranch(b.branch_id)
    rng = random.Random(plan.seed)
    prec = plan.float_precision
    max_ratios = []
    with mpmath.workprec(prec + 30):
        for r in plan.radii:
            best = mpmath.mpf(0)
            for _ in range(plan.pairs_per_radius):
                x = mpmath.mpf(r) * mpmath.expjpi(2 * mpmath.mpf(rng.random()))
                ys = _fiber_points(ctx.branches, x, prec)
                hs = [_mpoly_eval(p, x, y) / _mpoly_eval(q, x, y) for y in ys]
                for i in range(len(ys)):
                    for j in range(i + 1, len(ys)):
                        dy = abs(ys[i] - ys[j])
                        if dy == 0:
                            continue
                        ratio = abs(hs[i] - hs[j]) / dy
                        if ratio > best:
                            best = ratio
            max_ratios.append(float(best))
    degenerate = all(v == 0.0 for v in max_ratios)
    slope = None
    if not degenerate and all(v > 0.0 for v in max_ratios):
        slope = _regress(plan.radii, max_ratios)
    return SlopeData(
        radii=tuple(plan.radii),
        max_ratios=tuple(max_ratios),
        measured_slope=slope,
        degenerate=degenerate,
    )


def crosscheck(p: MPoly, q: MPoly, f: MPoly, plan: SamplePlan) -> ConsistencyReport:
    """Compare the measured slope with the exact per-type prediction."""
    report = is_lipschitz_fraction(p, q, f)
    if report.verdict == "Undefined":
        raise DenominatorVanishesOnBranch(-1)
    data = empirical_lipschitz_slope(p, q, f, plan)
    diffs = [c.nu - c.contact.exponent for c in report.per_type if c.nu != INF]
    predicted = min(diffs) if diffs else None
    if report.verdict == "Lipschitz":
        predicted = max(Fraction(0), predicted) if predicted is not None else Fraction(0)
        if data.degenerate:
            agree = True
        elif data.measured_slope is None:
            agree = False
        else:
            # a Lipschitz quotient must not diverge; growth beyond tolerance fails
            agree = data.measured_slope >= -plan.slope_tolerance
    else:
        if data.degenerate or data.measured_slope is None or predicted is None:
            agree = False
        else:
            agree = abs(data.measured_slope - float(predicted)) <= plan.slope_tolerance
    return ConsistencyReport(
        measured_slope=data.measured_slope,
        predicted_slope=predicted,
        agree=agree,
        degenerate=data.degenerate,
        verdict=report.verdict,
        residuals=list(zip(data.radii, data.max_ratios)),
    )


@dataclass
class ContactMeasurement:
    measured: float
    predicted: Fraction
    agree: bool
    data: list


def verify_contact_exponent(
    a: PuiseuxBranch, b: PuiseuxBranch, klass: int, plan: SamplePlan
) -> ContactMeasurement:
    """Measure |y_beta - y_beta'| against |x| and compare with mu/m."""
    types = contact_exponents(a, b)
    matching = [t for t in types if t.class_rep == klass]
    if not matching:
        raise ValueError(f"no determination class {klass} for this pair")
    predicted = matching[0].exponent
    rng = random.Random(plan.seed)
    prec = plan.float_precision
    values = []
    with mpmath.workprec(prec + 30):
        for r in plan.radii:
            best = mpmath.mpf(0)
            for _ in range(plan.pairs_per_radius):
                x = mpmath.mpf(r) * mpmath.expjpi(2 * mpmath.mpf(rng.random()))
                ya = _fiber_points([a], x, prec)
                if a.branch_id == b.branch_id:
                    yb = ya
                else:
                    yb = _fiber_points([b], x, prec)
                d = abs(ya[0] - yb[klass % b.ramification_index])
                if d > best:
                    best = d
            values.append(float(best))
    slope = _regress(plan.radii, values)
    return ContactMeasurement(
        measured=slope,
        predicted=predicted,
        agree=abs(slope - float(predicted)) <= plan.exponent_tolerance,
        data=list(zip(plan.radii, values)),
    )


@dataclass
class ResidualCheck:
    normalized: list  # per radius: max |f(x, y(x))| / |x|^truncation_order
    bounded: bool


def branch_residual_check(b: PuiseuxBranch, f: MPoly, plan: SamplePlan) -> ResidualCheck:
    """Numeric certificate that the expansion residual exceeds the truncation order."""
    rng = random.Random(plan.seed)
    prec = plan.float_precision
    t_ord = 0 if b.truncation_order == INF else float(b.truncation_order)
    out = []
    with mpmath.workprec(prec + 30):
        for r in plan.radii:
            worst = mpmath.mpf(0)
            for _ in range(plan.pairs_per_radius):
                x = mpmath.mpf(r) * mpmath.expjpi(2 * mpmath.mpf(rng.random()))
                y = _fiber_points([b], x, prec)[0]
                val = abs(_mpoly_eval(f, x, y)) / abs(x) ** t_ord
                if val > worst:
                    worst = val
            out.append(float(worst))
    tiny = 1e-25
    bounded = out[-1] <= 10.0 * out[0] + tiny
    return ResidualCheck(normalized=out, bounded=bounded)
