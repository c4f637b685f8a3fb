"""Bessel functions of the first kind and their positive zeros.

Only what the disc spectrum needs: J_k(x) for integer k >= 0 and real
x >= 0, and the n-th positive zero j_{k,n}.  The ascending power series is
used for small arguments; for large arguments J_k is taken from Miller's
downward recurrence normalized with J_0 + 2*sum J_{2m} = 1, which is stable
where the series loses digits to cancellation.
"""
import math

from .errors import NumericalError, ValidationError

_SERIES_LIMIT = 12.0
_zero_cache = {}


def _bessel_j_series(k, x):
    # ascending series: sum_m (-1)^m (x/2)^{k+2m} / (m! (m+k)!)
    half = 0.5 * x
    term = 1.0
    for i in range(1, k + 1):
        term *= half / i
    total = term
    m = 1
    while True:
        term *= -(half * half) / (m * (m + k))
        total += term
        if abs(term) <= 1e-18 * max(abs(total), 1e-280):
            break
        m += 1
        if m > 600:
            raise NumericalError("Bessel series failed to converge", {"k": k, "x": x})
    return total


def _bessel_j_miller(k, x):
    # downward recurrence J_{n-1} = (2n/x) J_n - J_{n+1} from high order,
    # normalized by J_0 + 2 J_2 + 2 J_4 + ... = 1
    top = max(k, x)
    start = int(top + 8.0 * math.sqrt(top) + 36)
    start += start % 2  # even start keeps the normalization sum aligned
    jp = 0.0
    jc = 1e-290
    norm = 0.0
    jk = 0.0
    for n in range(start, 0, -1):
        jm = (2.0 * n / x) * jc - jp
        jp = jc
        jc = jm
        if abs(jc) > 1e280:
            jc *= 1e-280
            jp *= 1e-280
            norm *= 1e-280
            jk *= 1e-280
        if n - 1 == k:
            jk = jc
        if (n - 1) % 2 == 0:
            norm += jc if n - 1 == 0 else 2.0 * jc
    if norm == 0.0:
        raise NumericalError("Miller recurrence normalization vanished", {"k": k, "x": x})
    return jk / norm


def bessel_j(k, x):
    """J_k(x) for integer order k >= 0 and x >= 0.

    The series is alternating with term ratio (x/2)^2 / (m (m+k)), so its
    cancellation stays bounded only while x^2/4 is comparable to k; beyond
    max(12, 2 sqrt(k)) the normalized downward recurrence takes over.
    """
    k = int(k)
    if k < 0:
        raise ValidationError("Bessel order must be >= 0")
    x = float(x)
    if x < 0:
        raise ValidationError("Bessel argument must be >= 0")
    if x == 0.0:
        return 1.0 if k == 0 else 0.0
    if x <= max(_SERIES_LIMIT, 2.0 * math.sqrt(k)):
        return _bessel_j_series(k, x)
    return _bessel_j_miller(k, x)


def _bessel_j_prime(k, x):
    if k == 0:
        return -bessel_j(1, x)
    return 0.5 * (bessel_j(k - 1, x) - bessel_j(k + 1, x))


def _refine_zero(k, lo, hi, flo):
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fm = bessel_j(k, mid)
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo <= 1e-14 * hi:
            break
    x = 0.5 * (lo + hi)
    for _ in range(4):
        f = bessel_j(k, x)
        fp = _bessel_j_prime(k, x)
        if fp == 0.0:
            break
        step = f / fp
        xn = x - step
        if not (lo - 1e-9 <= xn <= hi + 1e-9):
            break
        x = xn
        if abs(step) <= 1e-15 * x:
            break
    return x


def _next_zero(k, start):
    """First zero of J_k strictly beyond `start` (J_k nonzero at start).

    Consecutive zeros of J_k are at least pi apart, so a forward scan with
    step pi/6 cannot skip a sign change.
    """
    step = math.pi / 6.0
    x = start
    f0 = bessel_j(k, x)
    if f0 == 0.0:
        x += 1e-9 * max(1.0, x)
        f0 = bessel_j(k, x)
    for _ in range(4000):
        x1 = x + step
        f1 = bessel_j(k, x1)
        if f0 * f1 <= 0.0:
            return _refine_zero(k, x, x1, f0)
        x, f0 = x1, f1
    raise NumericalError("Bessel zero scan did not terminate", {"k": k, "start": start})


def bessel_zero(k, n):
    """The n-th positive zero of J_k, to about 1e-13 relative.

    Zeros are located sequentially: J_k is positive on (0, j_{k,1}), and a
    pi/6 forward scan can never straddle two zeros, so each sign change
    brackets exactly the next zero.  Results are cached per (k, n).
    """
    k = int(k)
    n = int(n)
    if k < 0 or n < 1:
        raise ValidationError("need order k >= 0 and zero index n >= 1")
    got = _zero_cache.get((k, n))
    if got is not None:
        return got
    have = 0
    prev = float(k) if k > 0 else 1e-6
    for i in range(n, 0, -1):
        z = _zero_cache.get((k, i))
        if z is not None:
            have, prev = i, z
            break
    for i in range(have + 1, n + 1):
        prev = _next_zero(k, prev + (1e-6 if i > 1 else 0.0))
        _zero_cache[(k, i)] = prev
    return prev
