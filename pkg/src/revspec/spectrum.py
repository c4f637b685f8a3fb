"""Dirichlet spectra: per-mode Sturm-Liouville eigenvalues and merged lists.

Separation of variables on a surface of revolution reduces the Dirichlet
problem to a family of regular Sturm-Liouville problems indexed by the
angular mode k:

    -(p w')' + q w = lambda * w_m * w,   w(0) = w(1) = 0,

with p = F/L, q = k^2 L / F, w_m = F L, where F(t) is the meridian radius
and L its (constant) speed.  Each mode k != 0 contributes every eigenvalue
twice.  The discretization uses continuous piecewise-linear elements on a
uniform parameter grid with midpoint-sampled coefficients, giving a
symmetric tridiagonal stiffness/mass pencil solved by bisection with
inertia counts; assembly is O(mesh) and each count is O(mesh).

Closed-form reference spectra (cylinder, rectangle, disc, disjoint unions)
share the Spectrum container.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import geometry
from ._kernels import _pencil_smallest, _tridiag_solve_shifted
from .bessel import bessel_zero
from .errors import InsufficientMeshError, NumericalError, ValidationError

DEFAULT_MESH_INNER = 2000
DEFAULT_MESH_FINAL = 8000
_BISECT_RTOL = 1e-12


class SpectrumEntry(NamedTuple):
    value: float
    k: int
    n: int
    multiplicity: int


@dataclass(frozen=True)
class SLProblem:
    """Discretized Sturm-Liouville pencil for one angular mode.

    p, q, w hold the coefficient values at the element midpoints of a
    uniform grid with `nodes` = mesh+1 points and step 1/mesh.
    """

    k: int
    nodes: int
    step: float
    p: np.ndarray
    q: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        for name in ("p", "q", "w"):
            arr = getattr(self, name)
            if not (np.all(np.isfinite(arr)) and arr.min() >= 0.0):
                raise ValidationError(f"coefficient array {name} must be finite and nonnegative")
        if self.p.min() <= 0.0 or self.w.min() <= 0.0:
            raise ValidationError("p and w must be strictly positive")
        if self.k > 0 and self.q.min() <= 0.0:
            raise ValidationError("q must be strictly positive for k > 0")

    @property
    def mesh(self):
        return self.nodes - 1

    def pencil(self):
        """Tridiagonal (K, M) with Dirichlet rows eliminated.

        Returns (kd, ko, md, mo): diagonals and off-diagonals over the
        mesh-1 interior nodes.
        """
        h = self.step
        p, q, w = self.p, self.q, self.w
        kd = (p[:-1] + p[1:]) / h + h * (q[:-1] + q[1:]) / 3.0
        ko = -p[1:-1] / h + h * q[1:-1] / 6.0
        md = h * (w[:-1] + w[1:]) / 3.0
        mo = h * w[1:-1] / 6.0
        return kd, ko, md, mo


def assemble_sl(meridian, k, mesh):
    """Build the mode-k pencil for a meridian on a uniform mesh."""
    if mesh < 2:
        raise ValidationError("mesh must be >= 2")
    k = int(k)
    if k < 0:
        raise ValidationError("angular mode k must be >= 0")
    pts = meridian.points
    mc = pts.shape[0] - 1
    t_nodes = np.arange(mc + 1) / mc
    t_mid = (np.arange(mesh) + 0.5) / mesh
    F = np.interp(t_mid, t_nodes, pts[:, 0])
    if F.min() < meridian.x_min * (1.0 - 1e-12):
        raise ValidationError("meridian radius dips below its x_min guard")
    L = meridian.length
    p = F / L
    q = (k * k) * L / F
    w = F * L
    return SLProblem(k=k, nodes=mesh + 1, step=1.0 / mesh, p=p, q=q, w=w)


def solve_sl(prob, n_max):
    """The n_max smallest eigenvalues of the pencil, strictly increasing.

    Bisection with LDL^T inertia counts, to ~1e-12 relative at the discrete
    level.  Raises InsufficientMeshError when the mesh cannot resolve that
    many eigenvalues.
    """
    n_max = int(n_max)
    if n_max < 1:
        raise ValidationError("n_max must be >= 1")
    if n_max >= prob.nodes - 1:
        raise InsufficientMeshError(
            f"n_max = {n_max} needs a mesh with more than {n_max + 1} elements"
        )
    kd, ko, md, mo = prob.pencil()
    vals = _pencil_smallest(kd, ko, md, mo, n_max, _BISECT_RTOL)
    if not np.all(np.diff(vals) > 0):
        raise NumericalError(
            "Sturm-Liouville eigenvalues came out non-increasing",
            {"k": prob.k, "mesh": prob.mesh, "values": vals.tolist()},
        )
    if vals[0] <= 0:
        raise NumericalError("nonpositive eigenvalue from a Dirichlet pencil",
                             {"k": prob.k, "value": float(vals[0])})
    return vals


def _eigenvector(prob, lam):
    # inverse iteration on (K - lam*M); internal diagnostic only
    kd, ko, md, mo = prob.pencil()
    rng = np.random.default_rng(12345)
    v = rng.standard_normal(kd.shape[0])
    v /= np.linalg.norm(v)
    shift = lam * (1.0 + 1e-9) + 1e-30
    for _ in range(3):
        v, bad = _tridiag_solve_shifted(kd, ko, md, mo, shift, v)
        if bad:
            raise NumericalError("inverse iteration hit a singular shift", {"lam": lam})
        v /= np.linalg.norm(v)
    return v


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalue list with (k, n) labels and multiplicities.

    `entries` is sorted ascending by (value, k, n); an entry with k != 0
    stands for a two-dimensional eigenspace.  `size` is the number of
    eigenvalues requested; values() flattens multiplicities and truncates
    to it.
    """

    entries: tuple
    area: float
    size: int

    def __post_init__(self):
        vals = [e.value for e in self.entries]
        if any(v <= 0 for v in vals):
            raise ValidationError("Dirichlet spectra are strictly positive")
        if any(vals[i] > vals[i + 1] for i in range(len(vals) - 1)):
            raise ValidationError("spectrum entries must be sorted ascending")
        for e in self.entries:
            if e.multiplicity != (2 if e.k != 0 else 1):
                raise ValidationError("multiplicity must be 2 exactly when k != 0")

    def values(self, j_max=None):
        """Flattened eigenvalues (multiplicity expanded), first j_max."""
        if j_max is None:
            j_max = self.size
        out = np.empty(j_max)
        i = 0
        for e in self.entries:
            for _ in range(e.multiplicity):
                if i >= j_max:
                    return out
                out[i] = e.value
                i += 1
        if i < j_max:
            raise ValidationError(f"spectrum holds only {i} eigenvalues, {j_max} requested")
        return out

    def flat(self, j_max=None):
        """Like values() but yielding (value, k, n, multiplicity) rows."""
        if j_max is None:
            j_max = self.size
        rows = []
        for e in self.entries:
            for _ in range(e.multiplicity):
                if len(rows) >= j_max:
                    return rows
                rows.append(e)
        if len(rows) < j_max:
            raise ValidationError(f"spectrum holds only {len(rows)} eigenvalues, {j_max} requested")
        return rows

    def nth(self, j):
        """The j-th eigenvalue, 1-based, multiplicities counted."""
        if j < 1:
            raise ValidationError("eigenvalue index is 1-based")
        return float(self.values(j)[j - 1])

    def counting(self, lam):
        return sum(e.multiplicity for e in self.entries if e.value <= lam)


def counting_function(spectrum, lam):
    """Number of eigenvalues <= lam, multiplicities counted."""
    return spectrum.counting(lam)


def _merge_entries(raw_entries, j_max, area):
    """Sort labeled values, truncate at the entry that reaches j_max."""
    ordered = sorted(raw_entries, key=lambda e: (e.value, e.k, e.n))
    kept = []
    count = 0
    for e in ordered:
        kept.append(e)
        count += e.multiplicity
        if count >= j_max:
            break
    if count < j_max:
        raise NumericalError("mode enumeration stopped before reaching j_max",
                             {"have": count, "want": j_max})
    return Spectrum(entries=tuple(kept), area=float(area), size=int(j_max))


def _enumerate_modes(mode_values, mode_floor, j_max, area):
    """Generic merged-spectrum builder over angular modes, lazily.

    mode_values(k, n_count) returns the n_count smallest mode-k values
    (increasing); mode_floor(k) is a lower bound for every mode-k value,
    nondecreasing and unbounded in k.  A heap merge pops the globally
    smallest next value; mode k+1 is activated before any value at or
    above its floor is consumed, so no eigenvalue can be missed, and each
    mode is solved only as deep as the merge actually needs.
    """
    import heapq

    entries = []
    count = 0
    heap = []
    solved = {}
    cursor = {}
    exhausted = set()

    def activate(k):
        vals = mode_values(k, 4)
        solved[k] = list(vals)
        cursor[k] = 0
        heapq.heappush(heap, (float(vals[0]), k))

    k_act = 0
    activate(0)
    while count < j_max:
        if not heap:
            raise NumericalError("mode enumeration ran dry before j_max",
                                 {"have": count, "want": j_max})
        v, k = heapq.heappop(heap)
        if mode_floor(k_act + 1) <= v:
            heapq.heappush(heap, (v, k))
            while mode_floor(k_act + 1) <= v:
                k_act += 1
                activate(k_act)
            continue
        idx = cursor[k]
        mult = 2 if k != 0 else 1
        entries.append(SpectrumEntry(v, k, idx + 1, mult))
        count += mult
        cursor[k] = idx + 1
        if cursor[k] >= len(solved[k]) and k not in exhausted:
            more = mode_values(k, 2 * len(solved[k]))
            if len(more) <= len(solved[k]):
                exhausted.add(k)
            else:
                solved[k] = list(more)
        if cursor[k] < len(solved[k]):
            heapq.heappush(heap, (float(solved[k][cursor[k]]), k))
    return _merge_entries(entries, j_max, area)


def merged_spectrum(meridian, j_max, mesh):
    """First j_max Dirichlet eigenvalues of the surface, with (k, n) labels.

    Modes are truncated at the smallest k with (k/max F)^2 above the running
    j_max-th value; that is safe because every mode-k Rayleigh quotient is
    bounded below by k^2/(max F)^2.  Per-mode counts stop once the last
    computed value exceeds the running threshold.
    """
    j_max = int(j_max)
    if j_max < 1:
        raise ValidationError("j_max must be >= 1")
    max_f = float(meridian.x.max())
    cache = {}

    def mode_values(k, n_count):
        n_count = min(n_count, mesh - 2)
        got = cache.get(k)
        if got is None or len(got) < n_count:
            prob = assemble_sl(meridian, k, mesh)
            vals = solve_sl(prob, n_count)
            floor = (k / max_f) ** 2
            if k > 0 and vals[0] < floor * (1.0 - 1e-9):
                raise NumericalError(
                    "mode truncation bound violated",
                    {"k": k, "lambda": float(vals[0]), "floor": floor},
                )
            cache[k] = vals
            got = vals
        return got[:n_count]

    def mode_floor(k):
        return (k / max_f) ** 2

    if j_max > mesh - 2:
        raise InsufficientMeshError(
            f"j_max = {j_max} needs a mesh with more than {j_max + 1} elements"
        )
    return _enumerate_modes(mode_values, mode_floor, j_max, geometry.area(meridian))


def cylinder_spectrum(a, length, j_max):
    """Closed-form spectrum of a cylinder: (n*pi/length)^2 + (k/a)^2."""
    if a <= 0 or length <= 0:
        raise ValidationError("cylinder radius and height must be positive")
    j_max = int(j_max)
    if j_max < 1:
        raise ValidationError("j_max must be >= 1")

    def mode_values(k, n_count):
        n = np.arange(1, n_count + 1)
        return ((n * np.pi / length) ** 2 + (k / a) ** 2).tolist()

    def mode_floor(k):
        return (k / a) ** 2

    return _enumerate_modes(mode_values, mode_floor, j_max, 2.0 * np.pi * a * length)


def rectangle_spectrum(w, h, j_max):
    """Dirichlet spectrum of a w-by-h rectangle: pi^2 (m^2/w^2 + n^2/h^2).

    Every lattice pair contributes once; accidental coincidences stay as
    separate entries.  The stored labels are flattened ranks (k = 0), since
    the lattice index is not an angular mode.
    """
    import heapq

    if w <= 0 or h <= 0:
        raise ValidationError("rectangle sides must be positive")
    j_max = int(j_max)
    if j_max < 1:
        raise ValidationError("j_max must be >= 1")
    vals = []
    heap = [((np.pi / w) ** 2 + (np.pi / h) ** 2, 1, 1)]
    m_act = 1
    while len(vals) < j_max:
        v, m, n = heapq.heappop(heap)
        nxt = (np.pi * (m_act + 1) / w) ** 2 + (np.pi / h) ** 2
        if nxt <= v:
            heapq.heappush(heap, (v, m, n))
            m_act += 1
            heapq.heappush(heap, (nxt, m_act, 1))
            continue
        vals.append(float(v))
        heapq.heappush(heap, ((np.pi * m / w) ** 2 + (np.pi * (n + 1) / h) ** 2,
                              m, n + 1))
    entries = tuple(SpectrumEntry(v, 0, i + 1, 1) for i, v in enumerate(vals))
    return Spectrum(entries=entries, area=float(w * h), size=j_max)


def union_spectrum(parts, j_max):
    """Multiset merge of component spectra; area adds."""
    j_max = int(j_max)
    raw = []
    for s in parts:
        for e in s.entries:
            raw.append(e)
    ordered = sorted(raw, key=lambda e: (e.value, e.k, e.n))
    kept = []
    count = 0
    for e in ordered:
        kept.append(e)
        count += e.multiplicity
        if count >= j_max:
            break
    if count < j_max:
        raise ValidationError(
            f"union parts hold {count} eigenvalues in range, {j_max} requested; "
            "build the parts with larger j_max"
        )
    return Spectrum(entries=tuple(kept), area=float(sum(s.area for s in parts)),
                    size=j_max)


def disc_spectrum(r, j_max):
    """Dirichlet spectrum of a disc: (j_{k,n}/r)^2 from Bessel zeros."""
    if r <= 0:
        raise ValidationError("disc radius must be positive")
    j_max = int(j_max)
    if j_max < 1:
        raise ValidationError("j_max must be >= 1")

    def mode_values(k, n_count):
        return [(bessel_zero(k, n) / r) ** 2 for n in range(1, n_count + 1)]

    def mode_floor(k):
        # j_{k,1} > k, so (k/r)^2 bounds every mode-k eigenvalue from below
        return (k / r) ** 2

    return _enumerate_modes(mode_values, mode_floor, j_max, np.pi * r * r)
