"""Meridian curves of surfaces of revolution with two boundary circles.

A surface of revolution about the y-axis is generated by a curve in the open
half-plane x > 0 (its meridian).  Meridians are stored as constant-speed
polylines: all chords equal within 1e-12 relative, so the polyline read over
a uniform parameter grid has constant discrete speed.  All types are
immutable after construction and all operations are pure functions.
"""
import json
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import _directed_hausdorff, _fill_points, _resample_chain
from .errors import NumericalError, ValidationError

CHORD_TOL = 1e-12
X_MIN_FACTOR = 1e-6
_EPS = float(np.finfo(float).eps)


def _chord_tolerance(coord_scale, mean_chord):
    """Equal-chord tolerance: 1e-12, or the float64 quantization floor.

    Point coordinates are quantized at ~eps*|coord|, so chords of length c
    cannot be equalized below ~eps*|coord|/c relative; the certification
    threshold keeps a 4x margin over that floor.
    """
    return max(CHORD_TOL, 4.0 * _EPS * coord_scale / mean_chord)


@dataclass(frozen=True)
class BoundaryCircles:
    """Two coaxial circles: radii r1, r2 and axial separation h.

    h = 0 is the coplanar case, in which the circles must have distinct
    radii.  The meridian half-plane meets the circles at p = (r1, 0) and
    q = (r2, h).
    """

    r1: float
    r2: float
    h: float = 0.0

    def __post_init__(self):
        for name in ("r1", "r2", "h"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ValidationError(f"{name} must be a finite number, got {v!r}")
        if self.r1 <= 0 or self.r2 <= 0:
            raise ValidationError("circle radii must be positive")
        if self.h < 0:
            raise ValidationError("axial separation h must be >= 0")
        if self.h == 0 and self.r1 == self.r2:
            raise ValidationError("coplanar circles must have distinct radii")

    @property
    def p(self):
        return (self.r1, 0.0)

    @property
    def q(self):
        return (self.r2, self.h)

    def default_x_min(self):
        return X_MIN_FACTOR * min(self.r1, self.r2)


class Meridian:
    """Constant-speed polyline in the half-plane x >= x_min > 0.

    points has shape (M+1, 2); chord lengths are equal within 1e-12
    relative.  The curve parametrized over t in [0, 1] with vertices at
    t_i = i/M then has |curve'(t)| = length everywhere.
    """

    __slots__ = ("points", "x_min", "_length")

    def __init__(self, points, x_min):
        pts = np.array(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ValidationError("a meridian needs at least two (x, y) points")
        if not np.all(np.isfinite(pts)):
            raise ValidationError("meridian coordinates must be finite")
        if not (0.0 < x_min):
            raise ValidationError("x_min must be positive")
        if pts[:, 0].min() < x_min:
            raise ValidationError(
                f"meridian touches the axis guard: min x = {pts[:, 0].min():.6g} < x_min = {x_min:.6g}"
            )
        chords = np.hypot(*np.diff(pts, axis=0).T)
        mean = chords.mean()
        if mean <= 0:
            raise ValidationError("meridian has zero length")
        dev = max(chords.max() - mean, mean - chords.min()) / mean
        tol = _chord_tolerance(np.abs(pts).max(), mean)
        if dev > tol:
            raise ValidationError(
                f"not constant speed: chord deviation {dev:.3e} exceeds {tol:g}"
            )
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "x_min", float(x_min))
        object.__setattr__(self, "_length", float(chords.sum()))

    def __setattr__(self, name, value):
        raise AttributeError("Meridian is immutable")

    @property
    def x(self):
        return self.points[:, 0]

    @property
    def y(self):
        return self.points[:, 1]

    @property
    def n_chords(self):
        return self.points.shape[0] - 1

    @property
    def length(self):
        return self._length

    def __repr__(self):
        return (f"Meridian({self.n_chords + 1} pts, length={self.length:.6g}, "
                f"x in [{self.x.min():.6g}, {self.x.max():.6g}])")


def _sanitize_raw(raw):
    pts = np.array(raw, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValidationError("raw curve needs at least two (x, y) points")
    if not np.all(np.isfinite(pts)):
        raise ValidationError("raw curve coordinates must be finite")
    if pts[:, 0].min() <= 0:
        raise ValidationError("raw curve leaves the half-plane x > 0")
    seg = np.hypot(*np.diff(pts, axis=0).T)
    keep = np.concatenate([[True], seg > 0])
    pts = pts[keep]
    if pts.shape[0] < 2:
        raise ValidationError("raw curve is a single point")
    return pts


def reparametrize_constant_speed(raw, m, x_min=None):
    """Resample a polyline at m+1 points on its trace with equal chords.

    The endpoints are preserved exactly.  The chain is found by bisection on
    the common chord length followed by redistribution and a Newton polish;
    the equal-chord certificate (1e-12 relative) is enforced, and a
    NumericalError is raised for traces folded too tightly to subdivide.
    """
    if m < 2:
        raise ValidationError("node count m must be >= 2")
    pts = _sanitize_raw(raw)
    if x_min is None:
        x_min = X_MIN_FACTOR * min(pts[0, 0], pts[-1, 0])
    if pts[:, 0].min() < x_min:
        raise ValidationError(
            f"raw curve dips below x_min = {x_min:.6g}"
        )
    tol = _chord_tolerance(np.abs(pts).max(),
                           np.hypot(*np.diff(pts, axis=0).T).sum() / m)
    work = pts
    out = None
    for _ in range(4):
        xs = np.ascontiguousarray(work[:, 0])
        ys = np.ascontiguousarray(work[:, 1])
        seg_len = np.hypot(np.diff(xs), np.diff(ys))
        dev, jarr, uarr = _resample_chain(xs, ys, seg_len, int(m), tol)
        out = np.empty((m + 1, 2))
        _fill_points(xs, ys, jarr, uarr, out)
        out[0] = pts[0]
        out[-1] = pts[-1]
        if dev <= tol:
            break
        # Traces folded at chord scale admit no exactly equal-chord chain
        # (the reachable set of the next point has a gap at each fold).
        # The best chain's own polyline chamfers the folds by less than a
        # chord, so rerunning on it converges while staying within one
        # chord length of the requested trace.
        keep = np.concatenate([[True],
                               np.hypot(*np.diff(out, axis=0).T) > 0])
        work = out[keep]
        if work.shape[0] < 2:
            break
    chords = np.hypot(*np.diff(out, axis=0).T)
    mean = chords.mean()
    dev = max(chords.max() - mean, mean - chords.min()) / mean
    if dev > tol:
        raise NumericalError(
            "equal-chord resampling did not certify",
            {"chord_deviation": float(dev), "tolerance": float(tol),
             "m": int(m)},
        )
    if out[:, 0].min() <= 0:
        raise ValidationError("resampled curve left the half-plane x > 0")
    return Meridian(out, x_min=min(x_min, out[:, 0].min()))


def length(meridian):
    """Total length: the sum of chord lengths."""
    return meridian.length


def area(meridian):
    """Area of the surface of revolution, 2*pi * sum(chord * midpoint x).

    The integrand x(t)*speed is piecewise linear on a polyline, so the
    midpoint rule is exact per chord for the discrete model.
    """
    pts = meridian.points
    chords = np.hypot(*np.diff(pts, axis=0).T)
    xmid = 0.5 * (pts[:-1, 0] + pts[1:, 0])
    return float(2.0 * np.pi * np.dot(chords, xmid))


def hausdorff_distance(m1, m2):
    """Hausdorff distance between two surfaces of revolution, computed on
    meridians.

    For two rotation-invariant sets about the same axis the 3-D Hausdorff
    distance reduces to the planar one: given a point P on surface 1, rotate
    the half-plane so that it contains P; the nearest point of surface 2 can
    be chosen in that same half-plane, because rotating any candidate point
    into the half-plane of P does not increase the distance (the axial and
    radial coordinates are preserved and the azimuthal offset drops to
    zero).  The sup-inf over surfaces therefore equals the sup-inf over the
    two meridian curves.

    Point-to-segment distances are exact; the maximum is taken over the
    vertices of each polyline.
    """
    pa = _as_points(m1)
    qa = _as_points(m2)
    d1 = _directed_hausdorff(pa, qa)
    d2 = _directed_hausdorff(qa, pa)
    return float(max(d1, d2))


def _as_points(m):
    if isinstance(m, Meridian):
        return m.points
    pts = np.asarray(m, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValidationError("expected a Meridian or an (n, 2) point array")
    return np.ascontiguousarray(pts)


def make_segment(circles, m):
    """Constant-speed meridian tracing the straight chord p -> q."""
    p = np.array(circles.p)
    q = np.array(circles.q)
    t = np.linspace(0.0, 1.0, m + 1)[:, None]
    pts = (1 - t) * p + t * q
    pts[0], pts[-1] = p, q
    return Meridian(pts, x_min=circles.default_x_min())


def make_catenary(sol, circles, m):
    """Constant-speed meridian on the catenary x = c*cosh((y - y0)/c).

    sol provides the scale c and waist height y0 (any object with .c and
    .y0 attributes).  The catenary must hit both boundary points within
    1e-8 relative, else the inputs are inconsistent.
    """
    c, y0 = float(sol.c), float(sol.y0)
    if circles.h <= 0:
        raise ValidationError("a catenary meridian needs h > 0")
    x_at_0 = c * math.cosh((0.0 - y0) / c)
    x_at_h = c * math.cosh((circles.h - y0) / c)
    if abs(x_at_0 - circles.r1) > 1e-8 * circles.r1 or abs(x_at_h - circles.r2) > 1e-8 * circles.r2:
        raise ValidationError(
            f"catenary (c={c:.12g}, y0={y0:.12g}) misses the boundary circles: "
            f"x(0)={x_at_0:.12g} vs r1={circles.r1:.12g}, x(h)={x_at_h:.12g} vs r2={circles.r2:.12g}"
        )
    yy = np.linspace(0.0, circles.h, max(8 * m, 256) + 1)
    xx = c * np.cosh((yy - y0) / c)
    pts = np.column_stack([xx, yy])
    pts[0] = circles.p
    pts[-1] = circles.q
    mer = reparametrize_constant_speed(pts, m, x_min=circles.default_x_min())
    return mer


def random_meridian(rng, x_range=(1.0, 2.0), n_control=None, y_step=(0.08, 0.35),
                    nodes=300, dip_to=None):
    """Seeded random constant-speed meridian for property checks.

    Control points have x drawn from x_range and strictly increasing y; the
    control polygon is resampled at `nodes` chords.  With dip_to set, one
    interior control point is pulled down to that radius so both branches of
    the confinement implications get exercised.
    """
    lo, hi = x_range
    n = int(n_control) if n_control is not None else int(rng.integers(3, 9))
    x = rng.uniform(lo, hi, n)
    dy = rng.uniform(y_step[0], y_step[1], n - 1)
    y = np.concatenate([[0.0], np.cumsum(dy)])
    if dip_to is not None and n >= 3:
        k = int(rng.integers(1, n - 1))
        x[k] = dip_to
    pts = np.column_stack([x, y])
    return reparametrize_constant_speed(pts, nodes)


# --- curve files -----------------------------------------------------------
# JSON object {"points": [[x, y], ...], "x_min": optional}; 17 significant
# digits on output so files round-trip exactly.

def _fmt(v):
    return format(float(v), ".17g")


def save_curve(meridian, path):
    lines = ["{", '  "points": [']
    body = ",\n".join(
        f"    [{_fmt(px)}, {_fmt(py)}]" for px, py in meridian.points
    )
    lines.append(body)
    lines.append("  ],")
    lines.append(f'  "x_min": {_fmt(meridian.x_min)}')
    lines.append("}")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def load_curve(path):
    with open(path, "r", encoding="utf-8") as f:
        doc = json.load(f)
    if not isinstance(doc, dict) or "points" not in doc:
        raise ValidationError(f"{path}: curve file must be an object with a 'points' field")
    pts = np.array(doc["points"], dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValidationError(f"{path}: 'points' must be a list of [x, y] pairs")
    x_min = doc.get("x_min")
    if x_min is None:
        x_min = X_MIN_FACTOR * min(pts[0, 0], pts[-1, 0])
    return Meridian(pts, x_min=float(x_min))
