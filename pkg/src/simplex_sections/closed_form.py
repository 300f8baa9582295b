"""Closed-form hyperplane-section volumes of the regular n-simplex.

The simplex is S = conv{e_1, ..., e_(n+1)} in R^(n+1), side length sqrt(2),
living in the affine plane sum(x_j) = 1.  A hyperplane through the origin
with unit normal a meets S in an (n-1)-dimensional slice whenever a has
coordinates of both signs, and the slice volume has a closed form: a
prefactor sqrt(n+1 - K^2)/(n-1)! with K = sum(a_j), times a residue sum
over the positive coordinates.

Sections can equivalently be written as a central hyperplane (coordinate
sum zero) translated by an offset t; both representations and the
conversions between them live here, together with the extremal bounds for
fixed K and for k-dimensional subspaces.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, EmptySection, OutOfRange
from .subspaces import SubspaceBasis

ZERO_REL = 1e-12   # |a_j| below this times max|a| counts as a zero coordinate
TIE_REL = 1e-6     # positive coordinates closer than this times max|a| are tied
CANON_TOL = 1e-12

_METHODS = ("residue", "quadrature", "oracle", "monte-carlo", "closed-form")


@dataclass(frozen=True)
class VolumeResult:
    """A volume value with the method that produced it and an error estimate."""

    value: float
    method: str
    err: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "err", float(self.err))
        if not math.isfinite(self.value):
            raise ValueError("volume must be finite")
        if self.err < 0.0:
            raise ValueError("error estimate must be nonnegative")
        if self.method not in _METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")


@dataclass(frozen=True)
class Direction:
    """A unit normal vector with cached norm and coordinate sum.

    The canonical form (default on construction) has coordinate sum >= 0
    and coordinates sorted descending; permutations and a global sign flip
    leave the section volume invariant, so canonicalizing dedupes the
    symmetry group.  Pass canonicalize=False where coordinate order is
    geometrically meaningful (labeled vertices, deformed simplices).
    """

    a: np.ndarray
    norm: float
    ksum: float

    @staticmethod
    def make(values, normalize: bool = True, canonicalize: bool = True) -> "Direction":
        v = np.array(values, dtype=float).ravel()
        if v.size < 2:
            raise ValueError("need at least two coordinates")
        if not np.all(np.isfinite(v)):
            raise ValueError("coordinates must be finite")
        nrm = float(np.linalg.norm(v))
        if nrm == 0.0:
            raise ValueError("zero vector")
        if not normalize and abs(nrm - 1.0) > 1e-9:
            raise ValueError(f"norm {nrm} deviates from 1 beyond 1e-9")
        v = v / nrm
        if canonicalize:
            v = _canonical_coords(v)
        v.setflags(write=False)
        return Direction(a=v, norm=float(np.linalg.norm(v)), ksum=float(v.sum()))

    @property
    def n(self) -> int:
        return self.a.size - 1

    def zero_tol(self) -> float:
        return ZERO_REL * float(np.max(np.abs(self.a)))

    def positive_indices(self) -> list[int]:
        t = self.zero_tol()
        return [j for j, c in enumerate(self.a) if c > t]

    def negative_indices(self) -> list[int]:
        t = self.zero_tol()
        return [j for j, c in enumerate(self.a) if c < -t]

    def canonical(self) -> "Direction":
        return Direction.make(self.a, canonicalize=True)


def _canonical_coords(v: np.ndarray) -> np.ndarray:
    up = np.sort(v)[::-1]
    down = np.sort(-v)[::-1]
    s = v.sum()
    if s > CANON_TOL:
        return up.copy()
    if s < -CANON_TOL:
        return down.copy()
    # sum ~ 0: both signs are admissible, break the tie lexicographically
    for x, y in zip(up, down):
        if x > y:
            return up.copy()
        if x < y:
            return down.copy()
    return up.copy()


@dataclass(frozen=True)
class CentralForm:
    """A section written as a central hyperplane plus a signed offset t.

    The normal a0 has coordinate sum zero; canonical form has t >= 0 (the
    pair (a0, t) and (-a0, -t) describe the same hyperplane).
    """

    a0: Direction
    t: float

    @staticmethod
    def make(values, t: float) -> "CentralForm":
        v = np.array(values, dtype=float).ravel()
        s = float(v.sum())
        if abs(s) > 1e-6 * max(1.0, float(np.max(np.abs(v)))):
            raise ValueError("central form requires coordinate sum zero")
        v = v - v.mean()  # enforce the constraint exactly
        if t < -CANON_TOL:
            v, t = -v, -t
        elif abs(t) <= CANON_TOL:
            v = _canonical_coords(v / np.linalg.norm(v))
            t = 0.0
        v = np.sort(v)[::-1]
        d = Direction.make(v, canonicalize=False)
        return CentralForm(a0=d, t=float(t))


# ---------------------------------------------------------------------------
# special directions and their elementary volumes

def a_min_direction(n: int) -> Direction:
    """Unit normal of the central section parallel to a face."""
    if n < 2:
        raise OutOfRange("n >= 2 required")
    v = [math.sqrt(n / (n + 1.0))] + [-1.0 / math.sqrt(n * (n + 1.0))] * n
    return Direction.make(v)


def a_max_direction(n: int) -> Direction:
    """Unit normal of the central section through n-1 vertices."""
    if n < 2:
        raise OutOfRange("n >= 2 required")
    v = [0.0] * (n + 1)
    v[0], v[-1] = 1.0 / math.sqrt(2.0), -1.0 / math.sqrt(2.0)
    return Direction.make(v)


def special_min_volume(n: int) -> float:
    """Volume of the central section parallel to a face."""
    if n < 2:
        raise OutOfRange("n >= 2 required")
    return math.sqrt(n + 1.0) / math.factorial(n - 1) * (n / (n + 1.0)) ** (n - 0.5)


def special_max_volume(n: int) -> float:
    """Volume of the central section through n-1 vertices (the maximum)."""
    if n < 2:
        raise OutOfRange("n >= 2 required")
    return math.sqrt(n + 1.0) / math.factorial(n - 1) / math.sqrt(2.0)


# ---------------------------------------------------------------------------
# residue sum

def _direct_residue_sum(coords: list[float], ztol: float) -> tuple[float, float]:
    """Residue sum over positive coordinates, assuming distinct positives.

    Returns (value, amplification); amplification = sum|terms| / |value| is
    the cancellation factor that scales the rounding error.
    """
    total = 0.0
    abs_total = 0.0
    for j, aj in enumerate(coords):
        if aj <= ztol:
            continue
        t = 1.0 / aj
        for k, ak in enumerate(coords):
            if k == j or abs(ak) <= ztol:
                continue
            t *= aj / (aj - ak)
        total += t
        abs_total += abs(t)
    amp = abs_total / abs(total) if total != 0.0 else abs_total
    return total, amp


def _tie_groups(coords: list[float], ztol: float, tie_tol: float):
    """Cluster positive coordinate indices whose values nearly coincide."""
    pos = sorted((c, j) for j, c in enumerate(coords) if c > ztol)
    groups: list[list[tuple[float, int]]] = []
    for item in pos:
        if groups and item[0] - groups[-1][-1][0] < tie_tol:
            groups[-1].append(item)
        else:
            groups.append([item])
    return groups


def _residue_sum_with_err(coords: list[float]) -> tuple[float, float]:
    """Tie-aware residue sum with an error estimate.

    Distinct positive coordinates use the exact sum.  Near-coincident ones
    hit a removable singularity with catastrophic cancellation, so the sum
    is evaluated at symmetric perturbations +-eps and +-eps/2 of the tied
    block and Richardson-extrapolated; eps shrinks with the tie-group size.
    """
    scale = max(abs(c) for c in coords)
    ztol = ZERO_REL * scale
    if not any(c > ztol for c in coords) or not any(c < -ztol for c in coords):
        raise EmptySection(
            "all nonzero coordinates share one sign; the hyperplane meets the "
            "simplex in at most a face"
        )
    groups = _tie_groups(coords, ztol, TIE_REL * scale)
    gmax = max(len(g) for g in groups)
    if gmax == 1:
        value, amp = _direct_residue_sum(coords, ztol)
        return value, 3e-16 * (amp + len(coords)) * abs(value)

    # symmetric perturbation offsets, zero-sum inside each tied group
    d = [0.0] * len(coords)
    span = 0.0
    for g in groups:
        g_n = len(g)
        for i, (_, j) in enumerate(g):
            off = i - (g_n - 1) / 2.0
            d[j] = off
            span = max(span, abs(off))
    centers = [g[0][0] for g in groups]
    min_gap = min((b - a for a, b in zip(centers, centers[1:])), default=math.inf)
    eps = {2: 1e-5, 3: 5e-4}.get(gmax, 3e-3) * scale
    if math.isfinite(min_gap):
        eps = min(eps, 0.2 * min_gap / max(2.0 * span, 1.0))
    eps = min(eps, 0.3 * min(centers) / max(span, 1.0))

    def evaluate(h: float) -> tuple[float, float]:
        pert = [c + h * dj for c, dj in zip(coords, d)]
        return _direct_residue_sum(pert, ztol)

    v1p, a1 = evaluate(eps)
    v1m, a2 = evaluate(-eps)
    v2p, a3 = evaluate(eps / 2)
    v2m, a4 = evaluate(-eps / 2)
    s1 = 0.5 * (v1p + v1m)
    s2 = 0.5 * (v2p + v2m)
    value = (4.0 * s2 - s1) / 3.0
    noise = 2e-16 * max(a1, a2, a3, a4) * abs(value)
    err = 5.0 * abs(value - s2) + noise + 1e-15 * abs(value)
    return value, err


def residue_functional(a: Direction) -> float:
    """The residue sum over positive coordinates, without the prefactor.

    The section volume equals sqrt(n+1-K^2)/(n-1)! times this value.
    """
    value, _ = _residue_sum_with_err([float(c) for c in a.a])
    return value


def residue_volume(a: Direction) -> VolumeResult:
    """Hyperplane section volume by the residue closed form.

    Requires a sign change among the nonzero coordinates (EmptySection
    otherwise).  For coordinate sums with K^2 > 1 the value is the formula's
    analytic continuation; it is only validated against independent methods
    for K^2 < n+1.
    """
    n = a.n
    K = a.ksum
    value, err = _residue_sum_with_err([float(c) for c in a.a])
    denom = n + 1.0 - K * K
    if denom <= 1e-12:
        raise DegenerateInput("coordinate sum too large: hyperplane parallel to the simplex")
    pref = math.sqrt(denom) / math.factorial(n - 1)
    return VolumeResult(value=pref * value, method="residue", err=pref * err)


# ---------------------------------------------------------------------------
# representation conversions

def central_to_embedded(cf: CentralForm) -> Direction:
    """Convert (central normal, offset) to a normal through the origin."""
    a0 = cf.a0.a
    n = cf.a0.n
    denom = math.sqrt(1.0 + (n + 1.0) * cf.t * cf.t)
    b = (a0 - cf.t) / denom
    return Direction.make(b)


def embedded_to_central(b: Direction) -> CentralForm:
    """Convert an origin-normal to a (central normal, offset) pair."""
    n = b.n
    sb = b.ksum
    denom = n + 1.0 - sb * sb
    if denom <= 1e-12:
        raise DegenerateInput("hyperplane parallel to the simplex's affine hull")
    root = math.sqrt((n + 1.0) * denom)
    a0 = math.sqrt((n + 1.0) / denom) * b.a - sb / root
    t = -sb / root
    return CentralForm.make(a0, t)


def centroid_distance(b: Direction) -> float:
    """Distance from the simplex centroid to the section H_b intersect S."""
    n = b.n
    sb = b.ksum
    denom = n + 1.0 - sb * sb
    if denom <= 1e-12:
        raise DegenerateInput("hyperplane parallel to the simplex's affine hull")
    return abs(sb) / math.sqrt((n + 1.0) * denom)


def subspace_origin_distance(basis: SubspaceBasis) -> float:
    """Distance from the origin to H intersected with the sum(x)=1 plane."""
    denom = basis.n + 1.0 - basis.sum_squares()
    if denom <= 1e-12:
        raise DegenerateInput("subspace parallel to the simplex's affine hull")
    return 1.0 / math.sqrt(denom)


# ---------------------------------------------------------------------------
# extremal bounds

def max_noncentral_bound(n: int, K: float) -> tuple[float, Direction]:
    """Sharp upper bound for sections with coordinate sum K in [0, 1].

    Returns the bound and the two-coordinate direction attaining it.  At
    K = 1 the maximizer is a vertex normal and the section is a facet.
    """
    if not (0.0 <= K <= 1.0):
        raise OutOfRange(f"K={K} outside [0, 1]")
    if n < 2:
        raise OutOfRange("n >= 2 required")
    bound = math.sqrt(n + 1.0 - K * K) / math.factorial(n - 1) / math.sqrt(2.0 - K * K)
    r = math.sqrt(0.5 - K * K / 4.0)
    v = [0.0] * (n + 1)
    v[0], v[-1] = K / 2.0 + r, K / 2.0 - r
    return bound, Direction.make(v)


def brascamp_lieb_bounds(n: int, k: int) -> tuple[float, float]:
    """(general, centroid-sharp) upper bounds for k-dim sections through c.

    The first bound holds for every k-subspace through the centroid; the
    second additionally needs every vertex within distance
    sqrt((n+1-k)/(n+2-k)) of the subspace, and is then attained.
    """
    if not (2 <= k <= n):
        raise OutOfRange(f"k={k} outside 2..{n}")
    general = k ** (k / (2.0 * (n + 1.0))) / math.factorial(k - 1)
    conditional = math.sqrt(n + 1.0) / (math.factorial(k - 1) * math.sqrt(n + 2.0 - k))
    if general < conditional - 1e-12:
        raise AssertionError("general bound fell below the conditional one")
    return general, conditional


# ---------------------------------------------------------------------------
# samplers used by the verification suites

def random_direction_fixed_sum(n: int, K: float, rng: np.random.Generator) -> Direction:
    """Uniform-ish unit normal with coordinate sum exactly K.

    Decomposes a = (K/(n+1)) * ones + sqrt(1 - K^2/(n+1)) * u with u a
    random unit vector orthogonal to ones, so the constraints hold by
    construction.  Requires K^2 < n+1.
    """
    if K * K >= n + 1.0:
        raise OutOfRange("K^2 must be below n+1")
    while True:
        g = rng.standard_normal(n + 1)
        u = g - g.mean()
        nrm = np.linalg.norm(u)
        if nrm > 1e-12:
            break
    u /= nrm
    a = (K / (n + 1.0)) + math.sqrt(1.0 - K * K / (n + 1.0)) * u
    return Direction.make(a)


def random_direction_sign_pattern(n: int, P: int, rng: np.random.Generator) -> Direction:
    """Random sum-zero unit normal with exactly P positive coordinates.

    Not canonicalized (the sum-zero tie-break could flip the pattern);
    coordinates come sorted descending, positives first.
    """
    if not (1 <= P <= n):
        raise OutOfRange(f"P={P} outside 1..{n}")
    N = n + 1 - P
    while True:
        p = np.abs(rng.standard_normal(P)) + 1e-9
        q = np.abs(rng.standard_normal(N)) + 1e-9
        cp = 1.0 / math.sqrt(float(p @ p) + (p.sum() ** 2) * float(q @ q) / (q.sum() ** 2))
        cq = cp * p.sum() / q.sum()
        v = np.sort(np.concatenate([cp * p, -cq * q]))[::-1]
        if np.all(np.isfinite(v)):
            return Direction.make(v, canonicalize=False)
