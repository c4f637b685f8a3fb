"""Compiled numerical kernels.

Everything here is deterministic: no fastmath, no parallel sections, so
results are bit-identical across runs and independent of thread settings.
Falls back to pure Python when numba is unavailable (slow but correct).
"""
import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        def wrap(func):
            return func
        if args and callable(args[0]):
            return args[0]
        return wrap


# ---------------------------------------------------------------------------
# polyline resampling at equal chord lengths
#
# Points are tracked as (segment index, local parameter u in [0,1]) pairs so
# that chord arithmetic stays local to a segment; accumulating global arc
# positions would add rounding noise of order eps*total_length per point,
# which at several thousand nodes is visible against the 1e-12 equal-chord
# certification.
# ---------------------------------------------------------------------------

@njit(cache=True)
def _advance(seg_len, j, u, a):
    """Move along the polyline by signed arc length a from (j, u)."""
    K = seg_len.shape[0]
    rem = a
    while True:
        if rem >= 0.0:
            room = (1.0 - u) * seg_len[j]
            if rem <= room or j == K - 1:
                if seg_len[j] > 0.0:
                    u = u + rem / seg_len[j]
                if u > 1.0 and j == K - 1:
                    u = 1.0
                return j, u
            rem -= room
            j += 1
            u = 0.0
        else:
            room = u * seg_len[j]
            if -rem <= room or j == 0:
                if seg_len[j] > 0.0:
                    u = u + rem / seg_len[j]
                if u < 0.0 and j == 0:
                    u = 0.0
                return j, u
            rem += room
            j -= 1
            u = 1.0


@njit(cache=True)
def _point_of(xs, ys, j, u):
    px = xs[j] + u * (xs[j + 1] - xs[j])
    py = ys[j] + u * (ys[j + 1] - ys[j])
    return px, py


@njit(cache=True)
def _march(xs, ys, seg_len, c, m, jout, uout):
    """First-crossing march of m-1 chords of length c from vertex 0.

    Fills jout/uout (length m+1, entries 0..m-1; caller sets the endpoint).
    Returns 0 on success, 1 if the chain runs past the end of the polyline.
    """
    K = seg_len.shape[0]
    jout[0] = 0
    uout[0] = 0.0
    px = xs[0]
    py = ys[0]
    j = 0
    u = 0.0
    c2 = c * c
    for step in range(1, m):
        found = False
        while j < K:
            ax = xs[j] + u * (xs[j + 1] - xs[j])
            ay = ys[j] + u * (ys[j + 1] - ys[j])
            dx = xs[j + 1] - ax
            dy = ys[j + 1] - ay
            fa = dx * dx + dy * dy
            qx = ax - px
            qy = ay - py
            fb = 2.0 * (dx * qx + dy * qy)
            fc = qx * qx + qy * qy - c2
            if fa + fb + fc >= 0.0:
                # crossing inside the remaining part of this segment
                if fa > 0.0:
                    disc = fb * fb - 4.0 * fa * fc
                    if disc < 0.0:
                        disc = 0.0
                    t = (-fb + np.sqrt(disc)) / (2.0 * fa)
                else:
                    t = 0.0
                if t < 0.0:
                    t = 0.0
                if t > 1.0:
                    t = 1.0
                px = ax + t * dx
                py = ay + t * dy
                u = u + t * (1.0 - u)
                jout[step] = j
                uout[step] = u
                found = True
                break
            j += 1
            u = 0.0
        if not found:
            return 1
    return 0


@njit(cache=True)
def _fill_points(xs, ys, jarr, uarr, out):
    for i in range(jarr.shape[0]):
        px, py = _point_of(xs, ys, jarr[i], uarr[i])
        out[i, 0] = px
        out[i, 1] = py


@njit(cache=True)
def _chord_dev(xs, ys, jarr, uarr):
    """max |chord - mean| / mean over the chain."""
    m = jarr.shape[0] - 1
    cmin = 1e300
    cmax = 0.0
    csum = 0.0
    p0x, p0y = _point_of(xs, ys, jarr[0], uarr[0])
    for i in range(1, m + 1):
        p1x, p1y = _point_of(xs, ys, jarr[i], uarr[i])
        c = np.hypot(p1x - p0x, p1y - p0y)
        if c < cmin:
            cmin = c
        if c > cmax:
            cmax = c
        csum += c
        p0x, p0y = p1x, p1y
    mean = csum / m
    if mean <= 0.0:
        return 1e300
    d1 = cmax - mean
    d2 = mean - cmin
    return (d1 if d1 > d2 else d2) / mean


@njit(cache=True)
def _arc_between(seg_len, j0, u0, j1, u1):
    if j0 == j1:
        return (u1 - u0) * seg_len[j0]
    a = (1.0 - u0) * seg_len[j0]
    for j in range(j0 + 1, j1):
        a += seg_len[j]
    a += u1 * seg_len[j1]
    return a


@njit(cache=True)
def _equalize(xs, ys, seg_len, jarr, uarr, max_iter, tol, stall_limit):
    """Cumulative-chord redistribution; keeps the best chain seen.

    Returns the best deviation; jarr/uarr hold the best chain on exit.
    """
    m = jarr.shape[0] - 1
    best = _chord_dev(xs, ys, jarr, uarr)
    bj = jarr.copy()
    bu = uarr.copy()
    if best <= tol:
        return best
    chords = np.empty(m)
    cum = np.empty(m + 1)
    nj = np.empty_like(jarr)
    nu = np.empty_like(uarr)
    stall = 0
    for _ in range(max_iter):
        p0x, p0y = _point_of(xs, ys, jarr[0], uarr[0])
        for i in range(1, m + 1):
            p1x, p1y = _point_of(xs, ys, jarr[i], uarr[i])
            chords[i - 1] = np.hypot(p1x - p0x, p1y - p0y)
            p0x, p0y = p1x, p1y
        cum[0] = 0.0
        for i in range(m):
            cum[i + 1] = cum[i] + chords[i]
        total = cum[m]
        nj[0] = jarr[0]
        nu[0] = uarr[0]
        nj[m] = jarr[m]
        nu[m] = uarr[m]
        idx = 0
        for i in range(1, m):
            target = total * i / m
            while idx < m - 1 and cum[idx + 1] < target:
                idx += 1
            span = cum[idx + 1] - cum[idx]
            f = 0.0 if span <= 0.0 else (target - cum[idx]) / span
            arc = _arc_between(seg_len, jarr[idx], uarr[idx], jarr[idx + 1], uarr[idx + 1])
            jn, un = _advance(seg_len, jarr[idx], uarr[idx], f * arc)
            nj[i] = jn
            nu[i] = un
        jarr[:] = nj
        uarr[:] = nu
        dev = _chord_dev(xs, ys, jarr, uarr)
        if dev < best:
            if dev < 0.9 * best:
                stall = 0
            best = dev
            bj[:] = jarr
            bu[:] = uarr
        else:
            stall += 1
        if best <= tol or stall > stall_limit:
            break
    jarr[:] = bj
    uarr[:] = bu
    return best


@njit(cache=True)
def _thomas(sub, mid, sup, rhs):
    n = mid.shape[0]
    cp = np.empty(n)
    dp = np.empty(n)
    if mid[0] == 0.0:
        return np.zeros(n), 1
    cp[0] = sup[0] / mid[0]
    dp[0] = rhs[0] / mid[0]
    for i in range(1, n):
        den = mid[i] - sub[i] * cp[i - 1]
        if den == 0.0:
            return np.zeros(n), 1
        cp[i] = sup[i] / den
        dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / den
    x = np.empty(n)
    x[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x, 0


@njit(cache=True)
def _newton_polish(xs, ys, seg_len, jarr, uarr, max_iter, tol):
    """Damped Newton on chord_i^2 - chord_{i+1}^2 = 0; interior nodes move
    along the trace.  Quadratic near the solution; used after _equalize."""
    m = jarr.shape[0] - 1
    n = m - 1
    if n < 1:
        return _chord_dev(xs, ys, jarr, uarr)
    px = np.empty(m + 1)
    py = np.empty(m + 1)
    best = _chord_dev(xs, ys, jarr, uarr)
    bj = jarr.copy()
    bu = uarr.copy()
    sub = np.empty(n)
    mid = np.empty(n)
    sup = np.empty(n)
    rhs = np.empty(n)
    for _ in range(max_iter):
        for i in range(m + 1):
            px[i], py[i] = _point_of(xs, ys, jarr[i], uarr[i])
        # E_i = c2[i] - c2[i-1] at interior node i (1..m-1)
        merit = 0.0
        for i in range(1, m):
            dxf = px[i + 1] - px[i]
            dyf = py[i + 1] - py[i]
            dxb = px[i] - px[i - 1]
            dyb = py[i] - py[i - 1]
            e = (dxf * dxf + dyf * dyf) - (dxb * dxb + dyb * dyb)
            rhs[i - 1] = -e
            merit += e * e
        for i in range(1, m):
            jj = jarr[i]
            sl = seg_len[jj]
            tx = (xs[jj + 1] - xs[jj]) / sl if sl > 0.0 else 0.0
            ty = (ys[jj + 1] - ys[jj]) / sl if sl > 0.0 else 0.0
            dxf = px[i + 1] - px[i]
            dyf = py[i + 1] - py[i]
            dxb = px[i] - px[i - 1]
            dyb = py[i] - py[i - 1]
            # d E_i / d s_i
            mid[i - 1] = -2.0 * (dxf * tx + dyf * ty) - 2.0 * (dxb * tx + dyb * ty)
            if i >= 2:
                jm = jarr[i - 1]
                sm = seg_len[jm]
                tmx = (xs[jm + 1] - xs[jm]) / sm if sm > 0.0 else 0.0
                tmy = (ys[jm + 1] - ys[jm]) / sm if sm > 0.0 else 0.0
                sub[i - 1] = 2.0 * (dxb * tmx + dyb * tmy)
            else:
                sub[i - 1] = 0.0
            if i <= m - 2:
                jp = jarr[i + 1]
                sp = seg_len[jp]
                tpx = (xs[jp + 1] - xs[jp]) / sp if sp > 0.0 else 0.0
                tpy = (ys[jp + 1] - ys[jp]) / sp if sp > 0.0 else 0.0
                sup[i - 1] = 2.0 * (dxf * tpx + dyf * tpy)
            else:
                sup[i - 1] = 0.0
        dv, bad = _thomas(sub, mid, sup, rhs)
        if bad == 1:
            break
        ok = True
        for i in range(n):
            if not np.isfinite(dv[i]):
                ok = False
        if not ok:
            break
        step = 1.0
        improved = False
        tj = jarr.copy()
        tu = uarr.copy()
        for _ in range(45):
            for i in range(1, m):
                jn, un = _advance(seg_len, jarr[i], uarr[i], step * dv[i - 1])
                tj[i] = jn
                tu[i] = un
            mono = True
            for i in range(m):
                if tj[i + 1] < tj[i] or (tj[i + 1] == tj[i] and tu[i + 1] <= tu[i]):
                    mono = False
                    break
            if mono:
                nmerit = 0.0
                q0x, q0y = _point_of(xs, ys, tj[0], tu[0])
                prev = -1.0
                for i in range(1, m + 1):
                    q1x, q1y = _point_of(xs, ys, tj[i], tu[i])
                    c2 = (q1x - q0x) ** 2 + (q1y - q0y) ** 2
                    if prev >= 0.0:
                        nmerit += (c2 - prev) ** 2
                    prev = c2
                    q0x, q0y = q1x, q1y
                if nmerit < merit:
                    jarr[:] = tj
                    uarr[:] = tu
                    improved = True
                    break
            step *= 0.5
        if not improved:
            break
        dev = _chord_dev(xs, ys, jarr, uarr)
        if dev < best:
            best = dev
            bj[:] = jarr
            bu[:] = uarr
        if best <= tol:
            break
    jarr[:] = bj
    uarr[:] = bu
    return best


@njit(cache=True)
def _pinned_march(xs, ys, seg_len, assign, c, jout, uout):
    """March with every crossing pinned to its assigned segment.

    Unlike first crossings, the pinned residual is continuous and monotone
    in c, which is what makes root finding across fold corners possible.
    Returns (status, R, bad): status 0 with R = (last gap) - c on success;
    status 2 when c is too small for the assignment (the crossing at index
    `bad` falls before its segment window), 3 when too large (it exits the
    segment).
    """
    K = seg_len.shape[0]
    m = assign.shape[0] - 1
    px = xs[0]
    py = ys[0]
    pj = 0
    pu = 0.0
    jout[0] = 0
    uout[0] = 0.0
    c2 = c * c
    for i in range(1, m):
        j = assign[i]
        ax = xs[j]
        ay = ys[j]
        dx = xs[j + 1] - ax
        dy = ys[j + 1] - ay
        fa = dx * dx + dy * dy
        qx_ = ax - px
        qy_ = ay - py
        fb = 2.0 * (dx * qx_ + dy * qy_)
        fc = qx_ * qx_ + qy_ * qy_ - c2
        disc = fb * fb - 4.0 * fa * fc
        if fa <= 0.0 or disc < 0.0:
            return 2, 0.0, i
        t = (-fb + np.sqrt(disc)) / (2.0 * fa)
        if t < -1e-12:
            return 2, 0.0, i
        if t > 1.0 + 1e-12:
            return 3, 0.0, i
        if t < 0.0:
            t = 0.0
        if t > 1.0:
            t = 1.0
        if j < pj or (j == pj and t <= pu):
            return 2, 0.0, i
        px = ax + t * dx
        py = ay + t * dy
        pj = j
        pu = t
        jout[i] = j
        uout[i] = t
    jout[m] = K - 1
    uout[m] = 1.0
    gap = np.hypot(xs[K] - px, ys[K] - py)
    return 0, gap - c, m


@njit(cache=True)
def _pinned_signed(xs, ys, seg_len, assign, c, jout, uout):
    status, r, bad = _pinned_march(xs, ys, seg_len, assign, c, jout, uout)
    if status == 2:
        return 1e300
    if status == 3:
        return -1e300
    return r


@njit(cache=True)
def _pinned_solve(xs, ys, seg_len, assign0, c0, S, jout, uout):
    """Find (c, assignment) with all chords equal, mutating the assignment.

    R is monotone decreasing in c inside an assignment's validity window;
    invalid-low counts as R > 0 and invalid-high as R < 0, so bisection
    either converges to the root or to a validity boundary.  At a boundary
    the violating crossing is moved one segment over (with the tail kept
    monotone) and the solve retries.  Returns 1 and fills jout/uout when a
    true root is reached.
    """
    K = seg_len.shape[0]
    m = assign0.shape[0] - 1
    assign = assign0.copy()
    c_cur = c0

    def fwd(bad):
        assign[bad] += 1
        if assign[bad] >= K:
            return 0
        for l in range(bad + 1, m):
            if assign[l] < assign[bad]:
                assign[l] = assign[bad]
        return 1

    def back(bad):
        assign[bad] -= 1
        if assign[bad] < 0:
            return 0
        for l in range(1, bad):
            if assign[l] > assign[bad]:
                assign[l] = assign[bad]
        return 1

    for _ in range(128):
        status0, r0, bad0 = _pinned_march(xs, ys, seg_len, assign, c_cur, jout, uout)
        if status0 == 3:
            # a crossing exits its segment already at c_cur: push it forward;
            # when it is on the last segment there is nowhere to go and the
            # chain simply overshoots (signed residual -inf)
            if assign[bad0] < K - 1:
                if fwd(bad0) == 0:
                    return 0
                continue
            r0 = -1e300
        elif status0 == 2:
            if assign[bad0] > 0:
                if back(bad0) == 0:
                    return 0
                continue
            r0 = 1e300
        lo = c_cur
        hi = c_cur
        step = 1e-14 * S
        if r0 > 0.0:
            rhi = r0
            for _ in range(130):
                hi = hi + step
                rhi = _pinned_signed(xs, ys, seg_len, assign, hi, jout, uout)
                if rhi <= 0.0:
                    break
                step *= 2.0
            if rhi > 0.0:
                return 0
        elif r0 < 0.0:
            rlo = r0
            for _ in range(130):
                lo = lo - step
                if lo <= 0.0:
                    return 0
                rlo = _pinned_signed(xs, ys, seg_len, assign, lo, jout, uout)
                if rlo >= 0.0:
                    break
                step *= 2.0
            if rlo < 0.0:
                return 0
        for _ in range(170):
            mid = 0.5 * (lo + hi)
            rm = _pinned_signed(xs, ys, seg_len, assign, mid, jout, uout)
            if rm > 0.0:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-18 * S:
                break
        st_lo, r_lo, bad_lo = _pinned_march(xs, ys, seg_len, assign, lo, jout, uout)
        if st_lo == 0 and abs(r_lo) <= 1e-7 * c0:
            return 1
        st_hi, r_hi, bad_hi = _pinned_march(xs, ys, seg_len, assign, hi, jout, uout)
        if st_hi == 0 and abs(r_hi) <= 1e-7 * c0:
            return 1
        # converged onto a validity boundary: switch branch there and keep
        # tracking the root from the boundary, not from the start
        if st_hi == 3 and assign[bad_hi] < K - 1:
            if fwd(bad_hi) == 0:
                return 0
            c_cur = hi
        elif st_lo == 2 and assign[bad_lo] > 0:
            if back(bad_lo) == 0:
                return 0
            c_cur = lo
        else:
            return 0
    return 0


@njit(cache=True)
def _resample_chain(xs, ys, seg_len, m, tol):
    """Full pipeline: marching bisection, pinned-assignment root polish,
    redistribution, Newton polish.  Returns (dev, jarr, uarr)."""
    K = seg_len.shape[0]
    S = 0.0
    for j in range(K):
        S += seg_len[j]
    jarr = np.zeros(m + 1, dtype=np.int64)
    uarr = np.zeros(m + 1)
    # bisection on the common chord length; first-crossing marching
    qx = xs[K]
    qy = ys[K]
    lo = 1e-12 * S
    hi = S / m
    for _ in range(110):
        c = 0.5 * (lo + hi)
        status = _march(xs, ys, seg_len, c, m, jarr, uarr)
        if status == 1:
            hi = c
        else:
            plx, ply = _point_of(xs, ys, jarr[m - 1], uarr[m - 1])
            if np.hypot(plx - qx, ply - qy) > c:
                lo = c
            else:
                hi = c
        if hi - lo <= 1e-17 * S:
            break
    status = _march(xs, ys, seg_len, lo, m, jarr, uarr)
    jarr[m] = K - 1
    uarr[m] = 1.0
    if status == 1:
        # marching stalled below the root; start from uniform arc instead
        for i in range(1, m):
            jn, un = _advance(seg_len, 0, 0.0, S * i / m)
            jarr[i] = jn
            uarr[i] = un
    dev = _chord_dev(xs, ys, jarr, uarr)
    if dev > 0.5 * tol:
        # first-crossing residual can jump past zero at fold corners; retry
        # with the assignments on both sides of the bisection limit pinned
        tj = np.empty_like(jarr)
        tu = np.empty_like(uarr)
        for side in range(2):
            c_side = lo if side == 0 else hi
            st = _march(xs, ys, seg_len, c_side, m, tj, tu)
            if st != 0:
                continue
            tj[m] = K - 1
            tu[m] = 1.0
            assign = tj.copy()
            if _pinned_solve(xs, ys, seg_len, assign, c_side, S, tj, tu) == 1:
                d2 = _chord_dev(xs, ys, tj, tu)
                if d2 < dev:
                    dev = d2
                    jarr[:] = tj
                    uarr[:] = tu
            if dev <= 0.5 * tol:
                break
    if dev > 0.5 * tol:
        dev = _equalize(xs, ys, seg_len, jarr, uarr, 4000, 0.5 * tol, 60)
    if dev > 0.5 * tol:
        dev = _newton_polish(xs, ys, seg_len, jarr, uarr, 60, 0.5 * tol)
        if dev > 0.5 * tol:
            dev = _equalize(xs, ys, seg_len, jarr, uarr, 4000, 0.5 * tol, 200)
    return dev, jarr, uarr


# ---------------------------------------------------------------------------
# symmetric tridiagonal pencil: inertia counts and bisection
# ---------------------------------------------------------------------------

@njit(cache=True)
def _count_below(kd, ko, md, mo, sigma):
    """Eigenvalues of (K, M) strictly below sigma via LDL^T sign counts."""
    n = kd.shape[0]
    pivmin = 1e-290
    cnt = 0
    d = kd[0] - sigma * md[0]
    if abs(d) < pivmin:
        d = -pivmin
    if d < 0.0:
        cnt += 1
    for i in range(1, n):
        e = ko[i - 1] - sigma * mo[i - 1]
        d = (kd[i] - sigma * md[i]) - e * e / d
        if abs(d) < pivmin:
            d = -pivmin
        if d < 0.0:
            cnt += 1
    return cnt


@njit(cache=True)
def _pencil_upper_bound(kd, ko, md, mo):
    n = kd.shape[0]
    upper = 0.0
    for i in range(n):
        rk = abs(ko[i - 1]) if i > 0 else 0.0
        if i < n - 1:
            rk += abs(ko[i])
        rm = abs(mo[i - 1]) if i > 0 else 0.0
        if i < n - 1:
            rm += abs(mo[i])
        den = md[i] - rm
        val = (kd[i] + rk) / den
        if val > upper:
            upper = val
    return upper


@njit(cache=True)
def _pencil_smallest(kd, ko, md, mo, n_eig, rtol):
    """The n_eig smallest eigenvalues of the SPD pencil, by bisection."""
    upper = _pencil_upper_bound(kd, ko, md, mo)
    out = np.empty(n_eig)
    lo_prev = 0.0
    for idx in range(1, n_eig + 1):
        lo = lo_prev
        hi = upper
        for _ in range(260):
            mid = 0.5 * (lo + hi)
            if _count_below(kd, ko, md, mo, mid) >= idx:
                hi = mid
            else:
                lo = mid
            if hi - lo <= rtol * hi:
                break
        out[idx - 1] = 0.5 * (lo + hi)
        lo_prev = lo
    return out


@njit(cache=True)
def _tridiag_solve_shifted(kd, ko, md, mo, sigma, rhs):
    """Solve (K - sigma*M) x = rhs; used by inverse iteration."""
    n = kd.shape[0]
    mid = np.empty(n)
    off = np.empty(n - 1) if n > 1 else np.empty(0)
    for i in range(n):
        mid[i] = kd[i] - sigma * md[i]
    for i in range(n - 1):
        off[i] = ko[i] - sigma * mo[i]
    sub = np.empty(n)
    sup = np.empty(n)
    sub[0] = 0.0
    sup[n - 1] = 0.0
    for i in range(1, n):
        sub[i] = off[i - 1]
    for i in range(n - 1):
        sup[i] = off[i]
    x, bad = _thomas(sub, mid, sup, rhs)
    return x, bad


# ---------------------------------------------------------------------------
# Hausdorff distance between polylines
# ---------------------------------------------------------------------------

@njit(cache=True)
def _directed_hausdorff(pa, qa):
    """max over vertices of pa of the exact distance to the polyline qa."""
    n = pa.shape[0]
    mq = qa.shape[0]
    worst = 0.0
    for i in range(n):
        x = pa[i, 0]
        y = pa[i, 1]
        best = 1e300
        for j in range(mq - 1):
            ax = qa[j, 0]
            ay = qa[j, 1]
            bx = qa[j + 1, 0]
            by = qa[j + 1, 1]
            dx = bx - ax
            dy = by - ay
            den = dx * dx + dy * dy
            if den > 0.0:
                t = ((x - ax) * dx + (y - ay) * dy) / den
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
            else:
                t = 0.0
            ex = ax + t * dx - x
            ey = ay + t * dy - y
            d2 = ex * ex + ey * ey
            if d2 < best:
                best = d2
        if best > worst:
            worst = best
    return np.sqrt(worst)
