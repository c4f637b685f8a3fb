"""Derivative-free maximization of Dirichlet eigenvalues over meridians.

The decision variables are the interior control points of a polyline from
p to q.  Every candidate is projected to the half-plane guard x >= x_min,
resampled to a constant-speed meridian, and scored by the j-th merged
eigenvalue.  A compass pattern search (coordinate-wise +/- moves, step
halving on stalled sweeps) drives the ascent; eigenvalue crossings make the
objective non-smooth, so no gradients are used.  Everything is seeded and
single-threaded, hence bit-reproducible.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import bounds, catenoid, geometry, spectrum
from .errors import (CoplanarError, NumericalError, PreconditionError,
                     ValidationError)

_STALL_SWEEPS = 20   # cut a restart after this many sweeps without
_STALL_REL = 1e-7    # a relative improvement of at least _STALL_REL


@dataclass(frozen=True)
class OptimizerConfig:
    control_points: int = 12
    restarts: int = 4
    max_iters: int = 200
    mesh_inner: int = 1000
    mesh_final: int = 8000
    step_init: float = 0.25
    step_min: float = 1e-4
    seed: int = 0
    x_min: Optional[float] = None

    def __post_init__(self):
        if self.control_points < 1:
            raise ValidationError("need at least one control point")
        if not (0 < self.step_min < self.step_init):
            raise ValidationError("need 0 < step_min < step_init")
        if self.mesh_final < self.mesh_inner:
            raise ValidationError("mesh_final must be >= mesh_inner")
        if self.restarts < 1 or self.max_iters < 1:
            raise ValidationError("restarts and max_iters must be >= 1")


@dataclass(frozen=True)
class OptimizerResult:
    meridian: geometry.Meridian
    lambda_j: float
    j: int
    iterations: int
    trace: tuple
    restart_values: tuple
    mesh_suspect: bool
    length_bound: bounds.BoundReport


def _chord_controls(circles, n):
    p = np.array(circles.p)
    q = np.array(circles.q)
    t = np.linspace(0.0, 1.0, n + 2)[1:-1, None]
    return (1 - t) * p + t * q


def _catenary_controls(circles, n):
    sols = catenoid.solve_catenoids(circles, _check_area=False)
    if not sols:
        return None
    outer = sols[0] if sols[0].branch is catenoid.Branch.OUTER else sols[-1]
    mer = geometry.make_catenary(outer, circles, n + 1)
    return mer.points[1:-1].copy()


class _Objective:
    def __init__(self, circles, j, cfg, mesh):
        self.circles = circles
        self.j = j
        self.cfg = cfg
        self.nodes = cfg.mesh_inner  # node count of the discrete curve class
        self.mesh = mesh
        self.x_min = cfg.x_min if cfg.x_min is not None else circles.default_x_min()
        self.p = np.array(circles.p)
        self.q = np.array(circles.q)
        self.evaluations = 0

    def __call__(self, controls):
        """Score a control-point matrix; returns (value, length, meridian)."""
        self.evaluations += 1
        poly = np.vstack([self.p, controls, self.q])
        poly[:, 0] = np.maximum(poly[:, 0], self.x_min)
        try:
            mer = geometry.reparametrize_constant_speed(poly, self.nodes, x_min=self.x_min)
            val = spectrum.merged_spectrum(mer, self.j, self.mesh).nth(self.j)
        except NumericalError:
            return -math.inf, math.inf, None
        return val, mer.length, mer


def maximize_eigenvalue(circles, j, cfg=None):
    """Best meridian found for the j-th eigenvalue over seeded restarts.

    Restart seeds: the straight chord, the outer catenary when one exists,
    and random perturbations of the chord.  Ties in value prefer the
    shorter curve.  The winner is re-scored on mesh_final; a relative gap
    above 1e-3 between the two meshes flags the result mesh_suspect.
    """
    cfg = cfg or OptimizerConfig()
    j = int(j)
    if j < 1:
        raise ValidationError("eigenvalue index j must be >= 1")
    obj = _Objective(circles, j, cfg, cfg.mesh_inner)
    scale = max(abs(circles.r2 - circles.r1), circles.h, 0.25 * max(circles.r1, circles.r2))
    n_ctl = cfg.control_points
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)

    starts = []
    for ridx in range(cfg.restarts):
        if ridx == 0:
            starts.append(_chord_controls(circles, n_ctl))
            continue
        if ridx == 1:
            try:
                cat = _catenary_controls(circles, n_ctl)
            except CoplanarError:
                cat = None
            if cat is not None and cat.shape[0] == n_ctl:
                starts.append(cat)
                continue
        rng = np.random.default_rng(children[ridx])
        base = _chord_controls(circles, n_ctl)
        starts.append(base + rng.normal(0.0, 0.08 * scale, base.shape))

    best_val = -math.inf
    best_len = math.inf
    best_controls = None
    restart_values = []
    trace = []
    sweeps_total = 0

    for start in starts:
        cur = np.array(start, dtype=float)
        cur_val, cur_len, _ = obj(cur)
        step = cfg.step_init * scale
        local_best = cur_val
        last_gain = 0
        if _better(cur_val, cur_len, best_val, best_len):
            best_val, best_len, best_controls = cur_val, cur_len, cur.copy()
        trace.append((sweeps_total, best_val))
        for sweep in range(cfg.max_iters):
            sweeps_total += 1
            improved = False
            for i in range(n_ctl):
                for dim in (0, 1):
                    for sgn in (1.0, -1.0):
                        cand = cur.copy()
                        cand[i, dim] += sgn * step
                        val, clen, _ = obj(cand)
                        if _better(val, clen, cur_val, cur_len):
                            cur, cur_val, cur_len = cand, val, clen
                            improved = True
            if cur_val > local_best * (1.0 + _STALL_REL):
                last_gain = sweep
            if cur_val > local_best:
                local_best = cur_val
            if _better(cur_val, cur_len, best_val, best_len):
                best_val, best_len, best_controls = cur_val, cur_len, cur.copy()
            trace.append((sweeps_total, best_val))
            if improved:
                step = min(step * 2.0, cfg.step_init * scale)
            else:
                step *= 0.5
                if step < cfg.step_min * scale:
                    break
            if sweep - last_gain >= _STALL_SWEEPS:
                break
        restart_values.append(local_best)

    if best_controls is None or not math.isfinite(best_val):
        raise NumericalError("no feasible candidate was found", {"j": j})

    # final scoring on the fine mesh
    obj_final = _Objective(circles, j, cfg, cfg.mesh_final)
    final_val, _, final_mer = obj_final(best_controls)
    if final_mer is None:
        raise NumericalError("winning curve failed to resample on mesh_final", {"j": j})
    gap = abs(final_val - best_val) / max(abs(final_val), 1e-300)
    lb = bounds.length_bound(final_mer, j, cfg.mesh_final)
    if not lb.satisfied:
        raise NumericalError("result violates the length eigenvalue bound",
                             {"lambda": final_val, "bound": lb.rhs})
    return OptimizerResult(
        meridian=final_mer,
        lambda_j=float(final_val),
        j=j,
        iterations=sweeps_total,
        trace=tuple(trace),
        restart_values=tuple(restart_values),
        mesh_suspect=bool(gap > 1e-3),
        length_bound=lb,
    )


def _better(val, length, ref_val, ref_len):
    if val > ref_val:
        return True
    return val == ref_val and length < ref_len


def convergence_experiment(circles, j_list, cfg=None):
    """Maximizer diagnostics for each j, against the minimizing catenoid.

    Requires the boundary circles to fall in the catenoid-unique case.
    Each row reports (j, lambda_j, lambda_j/j, area, length,
    hausdorff_to_catenoid); the Hausdorff column measures the distance to
    the outer-branch catenary meridian.
    """
    cfg = cfg or OptimizerConfig()
    cls = catenoid.classify_minimizer(circles)
    if cls.kind is not catenoid.MinimizerKind.CATENOID_UNIQUE:
        raise PreconditionError(
            f"convergence experiment needs a unique minimizing catenoid, got {cls.kind.value}"
        )
    cat_mer = geometry.make_catenary(cls.catenoid, circles, min(cfg.mesh_final, 2000))
    rows = []
    for j in j_list:
        res = maximize_eigenvalue(circles, int(j), cfg)
        rows.append({
            "j": int(j),
            "lambda_j": res.lambda_j,
            "lambda_over_j": res.lambda_j / int(j),
            "area": geometry.area(res.meridian),
            "length": res.meridian.length,
            "hausdorff_to_catenoid": geometry.hausdorff_distance(res.meridian, cat_mer),
            "mesh_suspect": res.mesh_suspect,
        })
    return rows
