"""Independent oracles the tests check the library against.

Everything here is deliberately written from scratch along a different
route than the library: dense/Lanczos eigensolvers instead of pencil
bisection, quadrature instead of chord sums, brute-force sampling instead
of exact point-segment minimization, series sign scans instead of McMahon
brackets.
"""
import math

import numpy as np
import scipy.integrate
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg


def dense_pencil(meridian, k, mesh):
    """Assemble the mode-k stiffness/mass pencil densely, from scratch."""
    pts = meridian.points
    mc = pts.shape[0] - 1
    t_nodes = np.arange(mc + 1) / mc
    L = float(np.hypot(*np.diff(pts, axis=0).T).sum())
    h = 1.0 / mesh
    K = np.zeros((mesh + 1, mesh + 1))
    M = np.zeros((mesh + 1, mesh + 1))
    for e in range(mesh):
        tm = (e + 0.5) * h
        F = np.interp(tm, t_nodes, pts[:, 0])
        p = F / L
        q = k * k * L / F
        w = F * L
        Ke = p / h * np.array([[1.0, -1.0], [-1.0, 1.0]])
        Ke += q * h * np.array([[1 / 3, 1 / 6], [1 / 6, 1 / 3]])
        Me = w * h * np.array([[1 / 3, 1 / 6], [1 / 6, 1 / 3]])
        K[e:e + 2, e:e + 2] += Ke
        M[e:e + 2, e:e + 2] += Me
    return K[1:-1, 1:-1], M[1:-1, 1:-1]


def dense_sl_eigs(meridian, k, mesh, n_eigs):
    """Smallest eigenvalues by a full dense generalized eigensolve."""
    K, M = dense_pencil(meridian, k, mesh)
    return scipy.linalg.eigh(K, M, eigvals_only=True,
                             subset_by_index=[0, n_eigs - 1])


def lanczos_sl_eigs(meridian, k, mesh, n_eigs):
    """Smallest eigenvalues by shift-invert Lanczos on the sparse pencil."""
    K, M = dense_pencil(meridian, k, mesh)
    kd, ko = np.diag(K).copy(), np.diag(K, 1).copy()
    md, mo = np.diag(M).copy(), np.diag(M, 1).copy()
    Ks = scipy.sparse.diags([ko, kd, ko], [-1, 0, 1], format="csc")
    Ms = scipy.sparse.diags([mo, md, mo], [-1, 0, 1], format="csc")
    vals = scipy.sparse.linalg.eigsh(Ks, k=n_eigs, M=Ms, sigma=0,
                                     which="LM", return_eigenvectors=False)
    return np.sort(vals)


def dense_merged(meridian, j_max, mesh, k_cap=40, n_cap=30):
    """Merged spectrum via the dense solver: brute force over modes."""
    vals = []
    max_f = meridian.points[:, 0].max()
    for k in range(k_cap + 1):
        n_want = min(n_cap, mesh - 2)
        lam = dense_sl_eigs(meridian, k, mesh, n_want)
        for v in lam:
            vals.append(v)
            if k != 0:
                vals.append(v)
        if len(vals) >= j_max and (k + 1) ** 2 / max_f ** 2 > sorted(vals)[j_max - 1]:
            break
    vals.sort()
    if len(vals) < j_max:
        raise AssertionError("oracle enumeration too small; raise caps")
    return np.array(vals[:j_max])


def brute_hausdorff(pts1, pts2, subdiv=60):
    """Hausdorff distance by dense sampling of both polylines."""
    def densify(pts):
        out = []
        for a, b in zip(pts[:-1], pts[1:]):
            for t in np.linspace(0.0, 1.0, subdiv, endpoint=False):
                out.append(a + t * (b - a))
        out.append(pts[-1])
        return np.array(out)

    A = densify(np.asarray(pts1, float))
    B = densify(np.asarray(pts2, float))
    d2 = ((A[:, None, :] - B[None, :, :]) ** 2).sum(axis=2)
    return max(np.sqrt(d2.min(axis=1)).max(), np.sqrt(d2.min(axis=0)).max())


def quad_arc_length(xfun, y_lo, y_hi):
    """Arc length of x = xfun(y) by adaptive quadrature."""
    eps = 1e-7

    def integrand(y):
        d = (xfun(y + eps) - xfun(y - eps)) / (2 * eps)
        return math.sqrt(1.0 + d * d)

    val, _ = scipy.integrate.quad(integrand, y_lo, y_hi, limit=400)
    return val


def series_bessel_j(k, x, terms=400):
    """Power series only; valid for moderate x."""
    half = 0.5 * x
    term = 1.0
    for i in range(1, k + 1):
        term *= half / i
    total = term
    for m in range(1, terms):
        term *= -(half * half) / (m * (m + k))
        total += term
    return total


def series_scan_bessel_zero(k, n):
    """n-th zero of J_k from a sign-change scan of the power series."""
    found = 0
    x = 1e-4 if k == 0 else float(k)
    f0 = series_bessel_j(k, x)
    step = 0.05
    while True:
        x1 = x + step
        f1 = series_bessel_j(k, x1)
        if f0 * f1 <= 0.0:
            found += 1
            if found == n:
                lo, hi = x, x1
                for _ in range(100):
                    mid = 0.5 * (lo + hi)
                    if series_bessel_j(k, lo) * series_bessel_j(k, mid) <= 0:
                        hi = mid
                    else:
                        lo = mid
                return 0.5 * (lo + hi)
        x, f0 = x1, f1
        if x > 60:
            raise AssertionError("series scan ran too far")


def catenary_roots_symmetric(r, h):
    """Both roots of c*cosh(h/(2c)) = r by grid scan plus bisection."""
    def f(c):
        arg = h / (2 * c)
        if arg > 700:
            return math.inf
        return c * math.cosh(arg) - r

    grid = np.geomspace(1e-6 * r, r, 20000)
    roots = []
    prev = f(grid[0])
    for i in range(1, len(grid)):
        cur = f(grid[i])
        if (prev <= 0) != (cur <= 0):
            lo, hi = grid[i - 1], grid[i]
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if (f(lo) <= 0) == (f(mid) <= 0):
                    lo = mid
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
        prev = cur
    return sorted(roots)


def golden_section_hstar(r=1.0):
    """Critical separation for equal radii: maximize 2c*acosh(r/c)."""
    g = lambda c: 2.0 * c * math.acosh(r / c)
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = 1e-9 * r, r * (1 - 1e-12)
    x1, x2 = b - gr * (b - a), a + gr * (b - a)
    for _ in range(300):
        if g(x1) < g(x2):
            a, x1 = x1, x2
            x2 = a + gr * (b - a)
        else:
            b, x2 = x2, x1
            x1 = b - gr * (b - a)
    return g(0.5 * (a + b))


def closed_form_catenoid_area(r, h):
    """Least catenoid area for equal radii r and separation h (or None)."""
    roots = catenary_roots_symmetric(r, h)
    if not roots:
        return None
    areas = [math.pi * c * (h + c * math.sinh(h / c)) for c in roots]
    return min(areas)


def grid_scan_catenoid_exists(r1, r2, h, nc=700, ny=700):
    """2-D sign-change scan of the boundary residual system.

    For each c, the y0 zero-curve of the r1 equation is found by bisection
    in y0; the r2 residual is evaluated along it and scanned for sign
    changes in c.
    """
    def safe_cosh(u):
        return math.inf if abs(u) > 700 else math.cosh(u)

    def g2(c, y0):
        return c * safe_cosh((h - y0) / c) - r2

    cs = np.geomspace(1e-4 * min(r1, r2), min(r1, r2), nc)
    found_sign = []
    for c in cs:
        # y0 roots of g1 come in a +/- pair
        ymax = c * math.acosh(max(r1 / c, 1.0))
        for y0 in (ymax, -ymax):
            found_sign.append((c, y0, g2(c, y0)))
    for branch in (0, 1):
        vals = found_sign[branch::2]
        for (c0, y0a, v0), (c1, y0b, v1) in zip(vals[:-1], vals[1:]):
            if (v0 <= 0) != (v1 <= 0):
                return True
    return False


def lattice_rectangle_values(w, h, count):
    """Rectangle Dirichlet eigenvalues by plain lattice enumeration."""
    vals = []
    m = 1
    while True:
        base = (math.pi * m / w) ** 2
        if vals and len(vals) >= count and base + (math.pi / h) ** 2 > vals[count - 1]:
            break
        n = 1
        while True:
            v = base + (math.pi * n / h) ** 2
            vals.append(v)
            vals.sort()
            n += 1
            if len(vals) >= count and v > vals[count - 1]:
                break
        m += 1
        if m > 10000:
            raise AssertionError("lattice enumeration runaway")
    return np.array(vals[:count])
