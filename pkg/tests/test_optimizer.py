import math

import numpy as np
import pytest

import revspec as rs
from revspec.errors import PreconditionError, ValidationError


def small_cfg(**kw):
    base = dict(control_points=3, restarts=2, max_iters=30,
                mesh_inner=300, mesh_final=600, seed=11)
    base.update(kw)
    return rs.OptimizerConfig(**base)


class TestConfig:
    def test_defaults(self):
        cfg = rs.OptimizerConfig()
        assert cfg.control_points == 12
        assert cfg.mesh_inner == 1000 and cfg.mesh_final == 8000
        assert cfg.restarts == 4

    def test_validation(self):
        with pytest.raises(ValidationError):
            rs.OptimizerConfig(control_points=0)
        with pytest.raises(ValidationError):
            rs.OptimizerConfig(step_init=1e-5, step_min=1e-4)
        with pytest.raises(ValidationError):
            rs.OptimizerConfig(mesh_inner=2000, mesh_final=1000)


class TestMaximize:
    def test_coplanar_stays_at_segment(self):
        circles = rs.BoundaryCircles(1.0, 2.0, 0.0)
        res = rs.maximize_eigenvalue(circles, 1, small_cfg())
        seg = rs.make_segment(circles, 300)
        lam_seg = rs.merged_spectrum(seg, 1, 600).nth(1)
        assert res.lambda_j >= lam_seg * (1 - 1e-9)
        assert rs.hausdorff_distance(res.meridian, seg) < 1e-2

    def test_monotone_improvement_over_starts(self):
        circles = rs.BoundaryCircles(1.0, 1.0, 0.6)
        cfg = small_cfg(restarts=3)
        res = rs.maximize_eigenvalue(circles, 2, cfg)
        seg = rs.make_segment(circles, cfg.mesh_inner)
        lam_seg = rs.merged_spectrum(seg, 2, cfg.mesh_inner).nth(2)
        # final value at mesh_inner-level at least the chord start's value
        assert max(res.restart_values) >= lam_seg * (1 - 1e-12)
        vals = [v for _, v in res.trace]
        assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))

    def test_single_control_point_vs_grid(self):
        # exhaustive oracle: optimizer beats every point of a coarse grid
        circles = rs.BoundaryCircles(1.0, 1.0, 0.8)
        cfg = rs.OptimizerConfig(control_points=1, restarts=2, max_iters=60,
                                 mesh_inner=200, mesh_final=200, seed=3,
                                 step_init=0.3, step_min=1e-5)
        res = rs.maximize_eigenvalue(circles, 1, cfg)
        best_grid = -math.inf
        x_min = circles.default_x_min()
        for x in np.linspace(0.2, 1.6, 50):
            for y in np.linspace(0.05, 0.75, 50):
                poly = [circles.p, (x, y), circles.q]
                try:
                    mer = rs.reparametrize_constant_speed(poly, 200, x_min=x_min)
                except Exception:
                    continue
                best_grid = max(best_grid,
                                rs.merged_spectrum(mer, 1, 200).nth(1))
        assert res.lambda_j >= best_grid - 1e-6

    def test_determinism(self):
        circles = rs.BoundaryCircles(1.0, 1.0, 0.5)
        cfg = small_cfg(seed=42)
        r1 = rs.maximize_eigenvalue(circles, 2, cfg)
        r2 = rs.maximize_eigenvalue(circles, 2, cfg)
        assert r1.lambda_j == r2.lambda_j
        assert np.array_equal(r1.meridian.points, r2.meridian.points)
        assert r1.trace == r2.trace
        assert r1.restart_values == r2.restart_values

    def test_result_invariants(self):
        circles = rs.BoundaryCircles(1.0, 1.0, 0.5)
        res = rs.maximize_eigenvalue(circles, 2, small_cfg())
        again = rs.merged_spectrum(res.meridian, 2, 600).nth(2)
        assert res.lambda_j == pytest.approx(again, rel=1e-12)
        assert res.length_bound.satisfied
        # feasibility of the returned curve
        assert res.meridian.x.min() >= circles.default_x_min()
        assert not res.mesh_suspect
        assert tuple(res.meridian.points[0]) == circles.p
        assert tuple(res.meridian.points[-1]) == circles.q

    def test_rejects_bad_j(self):
        with pytest.raises(ValidationError):
            rs.maximize_eigenvalue(rs.BoundaryCircles(1, 1, 0.5), 0, small_cfg())


class TestConvergenceRows:
    def test_coplanar_gate(self):
        with pytest.raises(PreconditionError):
            rs.convergence_experiment(rs.BoundaryCircles(1.0, 2.0, 0.0), [2],
                                      small_cfg())

    def test_discs_gate(self):
        with pytest.raises(PreconditionError):
            rs.convergence_experiment(rs.BoundaryCircles(1.0, 1.0, 1.2), [2],
                                      small_cfg())

    def test_rows_and_reproducibility(self):
        circles = rs.BoundaryCircles(1.0, 1.0, 0.5)
        cfg = small_cfg(seed=5)
        rows = rs.convergence_experiment(circles, [2, 3], cfg)
        assert [r["j"] for r in rows] == [2, 3]
        for r in rows:
            assert r["lambda_over_j"] == pytest.approx(r["lambda_j"] / r["j"])
            assert r["area"] > 0 and r["length"] > 0
            assert r["hausdorff_to_catenoid"] >= 0
        single = rs.maximize_eigenvalue(circles, 2, cfg)
        assert single.lambda_j == rows[0]["lambda_j"]

    def test_areas_exceed_catenoid(self):
        circles = rs.BoundaryCircles(1.0, 1.0, 0.5)
        cat = rs.classify_minimizer(circles).catenoid
        rows = rs.convergence_experiment(circles, [3], small_cfg(seed=1))
        assert rows[0]["area"] >= cat.area * (1 - 5e-3)
