"""Executable comparison inequalities and Weyl-law diagnostics.

Each check returns a BoundReport with the quantities on both sides; the
inequalities are exact in the continuum, so the only admissible slack is
discretization error.  The slack rule is

    satisfied  <=>  lhs <= rhs + 1e-6 * scale + 1e-9

with scale the natural magnitude of the comparison (recorded in context).
"""
import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from . import geometry, spectrum
from .errors import NotApplicableError, PreconditionError, ValidationError

REL_SLACK = 1e-6
ABS_SLACK = 1e-9


@dataclass(frozen=True)
class BoundReport:
    name: str
    lhs: float
    rhs: float
    satisfied: bool
    context: dict = field(default_factory=dict)

    def __str__(self):
        mark = "ok" if self.satisfied else "VIOLATED"
        return f"{self.name}: lhs={self.lhs:.12g} rhs={self.rhs:.12g} [{mark}]"


def _report(name, lhs, rhs, scale=None, **context):
    if scale is None:
        scale = max(abs(lhs), abs(rhs))
    slack = REL_SLACK * scale + ABS_SLACK
    ok = lhs <= rhs + slack
    ctx = dict(context)
    ctx["slack"] = slack
    ctx["scale"] = scale
    return BoundReport(name=name, lhs=float(lhs), rhs=float(rhs),
                       satisfied=bool(ok), context=ctx)


def _curve_hash(meridian):
    return hashlib.sha256(meridian.points.tobytes()).hexdigest()[:16]


def _annulus_meridian(rho1, rho2, nodes=64):
    """Flat radial segment [rho1, rho2]: the annulus as a degenerate surface
    of revolution, fed through the same Sturm-Liouville path."""
    pts = np.column_stack([np.linspace(rho1, rho2, nodes + 1),
                           np.zeros(nodes + 1)])
    return geometry.Meridian(pts, x_min=min(rho1, rho2) * 1e-6)


def annulus_mode_values(rho1, rho2, k, n_max, mesh):
    prob = spectrum.assemble_sl(_annulus_meridian(rho1, rho2), k, mesh)
    return spectrum.solve_sl(prob, n_max)


def check_annulus_comparison(meridian, k_max, n_max, mesh):
    """Projection comparison: every mode eigenvalue of the curve is bounded
    by the same-mode eigenvalue of the flat annulus over its radius range.

    Applies only when the radius profile is non-constant.
    """
    rho1 = float(meridian.x.min())
    rho2 = float(meridian.x.max())
    if rho2 - rho1 <= 1e-12 * rho2:
        raise NotApplicableError("constant radius profile: the annulus degenerates")
    reports = []
    h = _curve_hash(meridian)
    for k in range(0, k_max + 1):
        lam_curve = spectrum.solve_sl(spectrum.assemble_sl(meridian, k, mesh), n_max)
        lam_annulus = annulus_mode_values(rho1, rho2, k, n_max, mesh)
        for n in range(1, n_max + 1):
            reports.append(_report(
                f"annulus-comparison[k={k},n={n}]",
                lam_curve[n - 1], lam_annulus[n - 1],
                scale=lam_annulus[n - 1],
                curve=h, k=k, n=n, mesh=mesh,
            ))
    return reports


def check_confinement(meridian, j, a, b, mesh):
    """Two-sided confinement implications for the radius profile.

    If the j-th eigenvalue of the curve exceeds that of the two inner
    annuli (radii [a, r1] and [a, r2]), the profile stays >= a; likewise
    with the outer annuli (radii [r1, b], [r2, b]) and <= b.  Each report
    encodes one implication as

        min(lambda_curve - lambda_annuli, bound_gap) <= 0

    which is the statement that the eigenvalue hypothesis and the failure
    of the conclusion cannot hold together.
    """
    r1 = float(meridian.points[0, 0])
    r2 = float(meridian.points[-1, 0])
    if not (a < min(r1, r2) <= max(r1, r2) < b):
        raise PreconditionError(
            f"need a < min(r1, r2) and b > max(r1, r2); got a={a}, b={b}, r1={r1}, r2={r2}"
        )
    lam_curve = spectrum.merged_spectrum(meridian, j, mesh).nth(j)
    min_f = float(meridian.x.min())
    max_f = float(meridian.x.max())
    h = _curve_hash(meridian)

    def union_nth(rho_pairs):
        parts = []
        for lo, hi in rho_pairs:
            mer = _annulus_meridian(lo, hi)
            parts.append(spectrum.merged_spectrum(mer, j, mesh))
        return spectrum.union_spectrum(parts, j).nth(j)

    lam_inner = union_nth([(a, r1), (a, r2)])
    lam_outer = union_nth([(r1, b), (r2, b)])
    rep_a = _report(
        "confinement[inner]",
        min(lam_curve - lam_inner, a - min_f), 0.0,
        scale=lam_inner,
        curve=h, j=j, mesh=mesh, lambda_curve=lam_curve,
        lambda_annuli=lam_inner, min_radius=min_f, a=a,
    )
    rep_b = _report(
        "confinement[outer]",
        min(lam_curve - lam_outer, max_f - b), 0.0,
        scale=lam_outer,
        curve=h, j=j, mesh=mesh, lambda_curve=lam_curve,
        lambda_annuli=lam_outer, max_radius=max_f, b=b,
    )
    return rep_a, rep_b


def length_bound(meridian, j, mesh):
    """Eigenvalue upper bound from length and radius range:

        lambda_j <= j^2 pi^2 max_radius / (length^2 min_radius)
    """
    lam = spectrum.merged_spectrum(meridian, j, mesh).nth(j)
    a = float(meridian.x.min())
    b = float(meridian.x.max())
    L = meridian.length
    rhs = j * j * math.pi ** 2 * b / (L * L * a)
    return _report("length-bound", lam, rhs, scale=rhs,
                   curve=_curve_hash(meridian), j=j, mesh=mesh,
                   min_radius=a, max_radius=b, length=L)


def rectangle_counting_check(parts, j):
    """Counting inequality for a disjoint union of rectangles:

        Area - 2 * Perimeter / sqrt(lambda_j - 1)  <=  4 pi j / (lambda_j - 1)

    valid whenever lambda_j > 1.
    """
    parts = list(parts)
    if not parts:
        raise ValidationError("need at least one rectangle")
    for w, h in parts:
        if w <= 0 or h <= 0:
            raise ValidationError("rectangle sides must be positive")
    specs = [spectrum.rectangle_spectrum(w, h, j) for w, h in parts]
    lam = spectrum.union_spectrum(specs, j).nth(j) if len(specs) > 1 else specs[0].nth(j)
    if lam <= 1.0:
        raise PreconditionError(f"lambda_j = {lam:.6g} <= 1: counting bound needs lambda_j > 1")
    area = sum(w * h for w, h in parts)
    perim = sum(2.0 * (w + h) for w, h in parts)
    lhs = area - 2.0 * perim / math.sqrt(lam - 1.0)
    rhs = 4.0 * math.pi * j / (lam - 1.0)
    return _report("rectangle-counting", lhs, rhs, scale=max(abs(lhs), rhs, area),
                   j=j, lam=lam, area=area, perimeter=perim, parts=len(parts))


def weyl_slope(spec, lo, hi):
    """Least-squares slope of lambda_j against j over j in [lo, hi].

    The asymptotic target is 4 pi / area.
    """
    lo, hi = int(lo), int(hi)
    if hi - lo + 1 < 10:
        raise ValidationError("Weyl window needs at least 10 eigenvalues")
    if lo < 1:
        raise ValidationError("window is 1-based")
    vals = spec.values(hi)[lo - 1:]
    js = np.arange(lo, hi + 1, dtype=float)
    js_c = js - js.mean()
    return float(np.dot(js_c, vals - vals.mean()) / np.dot(js_c, js_c))


def weyl_report(spec, lo, hi, rel_tol):
    """BoundReport comparing the empirical slope against 4 pi / area."""
    slope = weyl_slope(spec, lo, hi)
    target = 4.0 * math.pi / spec.area
    return _report(f"weyl[{lo},{hi}]", abs(slope / target - 1.0), rel_tol,
                   scale=1.0, slope=slope, target=target, area=spec.area)
