"""Catenoids spanning two coaxial circles and the area-minimizer trichotomy.

A catenoid meridian is x = c*cosh((y - y0)/c).  The boundary conditions

    c*cosh(y0/c) = r1,      c*cosh((h - y0)/c) = r2

are reduced to one unknown: for each candidate scale c <= r1 the first
equation has the two solutions y0 = +/- c*arccosh(r1/c), and the second
equation becomes a one-dimensional residual in c that is scanned for sign
changes and tangent minima, then bisected.  Near the fold at the critical
separation the two roots merge, which is why plain sign-change scanning is
backed by minimum detection.
"""
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import geometry
from .errors import CoplanarError, NumericalError, ValidationError

_SCAN_POINTS = 900
TIE_TOL = 1e-9


class Branch(enum.Enum):
    OUTER = "outer"
    INNER = "inner"


class MinimizerKind(enum.Enum):
    COPLANAR_ANNULUS = "coplanar-annulus"
    CATENOID_UNIQUE = "catenoid-unique"
    DISCS_UNIQUE = "discs-unique"
    TIE = "tie"


@dataclass(frozen=True)
class CatenoidSolution:
    """One catenary satisfying both boundary equations.

    branch is OUTER for the larger scale c (the area-smaller, stable neck)
    and INNER for the smaller one.
    """

    c: float
    y0: float
    area: float
    branch: Branch


@dataclass(frozen=True)
class MinimizerClass:
    kind: MinimizerKind
    catenoid: Optional[CatenoidSolution]
    discs_area: float


def _cosh_safe(u):
    if abs(u) > 700.0:
        return math.inf
    return math.cosh(u)


def _sinh_safe(u):
    if abs(u) > 700.0:
        return math.copysign(math.inf, u)
    return math.sinh(u)


def catenoid_area(c, y0, h):
    """Closed-form lateral area of the catenoid between y = 0 and y = h."""
    s1 = _sinh_safe(2.0 * (h - y0) / c)
    s2 = _sinh_safe(2.0 * y0 / c)
    return math.pi * c * (h + 0.5 * c * (s1 + s2))


def _residual(c, sign, r1, r2, h):
    """r2-residual after eliminating y0 through the r1 equation."""
    if c <= 0.0 or c > r1:
        return math.inf
    y0 = sign * c * math.acosh(r1 / c)
    x = c * _cosh_safe((h - y0) / c)
    return x - r2


def _bisect_residual(f, lo, hi, flo):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (flo <= 0.0) == (fm <= 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= 1e-16 * hi:
            break
    return 0.5 * (lo + hi)


def _ternary_min(f, lo, hi):
    for _ in range(220):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if f(m1) <= f(m2):
            hi = m2
        else:
            lo = m1
        if hi - lo <= 1e-15 * hi:
            break
    c = 0.5 * (lo + hi)
    return c, f(c)


def _branch_roots(sign, circles, x_min):
    r1, r2, h = circles.r1, circles.r2, circles.h
    f = lambda c: _residual(c, sign, r1, r2, h)
    cmax = min(r1, r2)
    grid = np.geomspace(max(x_min, 1e-9 * cmax), cmax, _SCAN_POINTS)
    vals = np.array([f(c) for c in grid])
    roots = []
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if not (math.isfinite(a) or math.isfinite(b)):
            continue
        if (a <= 0.0) != (b <= 0.0):
            roots.append(_bisect_residual(f, grid[i], grid[i + 1], a))
        elif 0 < i and vals[i - 1] > a and a < b and a > 0.0 and math.isfinite(a):
            # near-tangent pair hiding between grid points
            c_min, f_min = _ternary_min(f, grid[i - 1], grid[i + 1])
            if f_min <= 0.0:
                roots.append(_bisect_residual(f, grid[i - 1], c_min, f(grid[i - 1])))
                if f(grid[i + 1]) > 0.0:
                    roots.append(_bisect_residual(f, c_min, grid[i + 1], f_min))
    return roots


def solve_catenoids(circles, x_min=None, _check_area=True):
    """All catenaries through both boundary circles, sorted by area.

    Returns 0, 1 or 2 solutions.  Each satisfies both boundary equations to
    1e-10 relative, and the closed-form area is cross-checked against the
    polyline area of the generated meridian to 1e-6 relative.  Necks below
    x_min are outside the admissible class and are not searched.
    """
    if circles.h <= 0:
        raise CoplanarError("coplanar circles: use the planar annulus path")
    if x_min is None:
        x_min = circles.default_x_min()
    r1, r2, h = circles.r1, circles.r2, circles.h
    found = []
    for sign in (1.0, -1.0):
        for c in _branch_roots(sign, circles, x_min):
            y0 = sign * c * math.acosh(max(r1 / c, 1.0))
            dup = any(abs(c - c2) <= 1e-8 * r1 and abs(y0 - y02) <= 1e-8 * max(1.0, h)
                      for c2, y02 in found)
            if not dup:
                found.append((c, y0))
    sols = []
    for c, y0 in found:
        e1 = abs(c * _cosh_safe(y0 / c) - r1) / r1
        e2 = abs(c * _cosh_safe((h - y0) / c) - r2) / r2
        if max(e1, e2) > 1e-10:
            raise NumericalError("catenary boundary equations not satisfied",
                                 {"c": c, "y0": y0, "err": max(e1, e2)})
        area = catenoid_area(c, y0, h)
        if _check_area:
            mer = geometry.make_catenary(_PlainSolution(c, y0), circles, 4000)
            poly_area = geometry.area(mer)
            if abs(poly_area - area) > 1e-6 * area:
                raise NumericalError("catenoid area cross-check failed",
                                     {"closed_form": area, "polyline": poly_area})
        sols.append((c, y0, area))
    sols.sort(key=lambda t: t[2])
    c_values = sorted((s[0] for s in sols), reverse=True)
    out = []
    for c, y0, area in sols:
        branch = Branch.OUTER if c == c_values[0] else Branch.INNER
        out.append(CatenoidSolution(c=float(c), y0=float(y0), area=float(area),
                                    branch=branch))
    return out


class _PlainSolution:
    def __init__(self, c, y0):
        self.c = c
        self.y0 = y0


def critical_separation(r1, r2):
    """Largest axial separation for which a connecting catenoid exists.

    Bisection on existence, to 1e-8 absolute in units of min(r1, r2).
    """
    if r1 <= 0 or r2 <= 0:
        raise ValidationError("radii must be positive")
    scale = min(r1, r2)

    def exists(h):
        circles = geometry.BoundaryCircles(r1, r2, h)
        return len(solve_catenoids(circles, _check_area=False)) > 0

    lo = 1e-6 * scale
    if not exists(lo):
        raise NumericalError("no catenoid found at near-zero separation",
                             {"r1": r1, "r2": r2})
    hi = 2.0 * max(r1, r2)
    grow = 0
    while exists(hi):
        hi *= 2.0
        grow += 1
        if grow > 60:
            raise NumericalError("catenoid existence did not terminate", {"hi": hi})
    while hi - lo > 1e-8 * scale:
        mid = 0.5 * (lo + hi)
        if exists(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def discs_area(circles):
    """Area of the two flat discs spanning the circles."""
    return math.pi * (circles.r1 ** 2 + circles.r2 ** 2)


def classify_minimizer(circles, tol=TIE_TOL):
    """The area-minimizer trichotomy for the given boundary circles.

    Coplanar circles always give the planar annulus.  Otherwise the least
    catenoid area is compared against the two flat discs; ties within
    tol (relative) are flagged instead of resolved.
    """
    d_area = discs_area(circles)
    if circles.h == 0:
        return MinimizerClass(kind=MinimizerKind.COPLANAR_ANNULUS, catenoid=None,
                              discs_area=d_area)
    sols = solve_catenoids(circles)
    if not sols:
        return MinimizerClass(kind=MinimizerKind.DISCS_UNIQUE, catenoid=None,
                              discs_area=d_area)
    best = sols[0]
    if abs(best.area - d_area) <= tol * d_area:
        kind = MinimizerKind.TIE
    elif best.area < d_area:
        kind = MinimizerKind.CATENOID_UNIQUE
    else:
        kind = MinimizerKind.DISCS_UNIQUE
    return MinimizerClass(kind=kind, catenoid=best, discs_area=d_area)
