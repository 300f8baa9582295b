"""Ground-truth section volumes by explicit vertex enumeration.

Independent of the analytic formulas: sections are realized as polytopes
(edge intersections for hyperplanes, basic feasible solutions for general
subspaces) and measured by recursive pyramid decomposition over the face
lattice.  Facets are identified by the exact zero-coordinate labels carried
from construction, never re-detected numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg
from .closed_form import Direction, VolumeResult
from .errors import (
    DegeneratePolytope,
    EmptySection,
    NotSupported,
    OutOfRange,
    PointSection,
    Singular,
    ZeroHits,
)
from .subspaces import SubspaceBasis

VERTEX_DEDUP_TOL = 1e-10
ZERO_COORD_TOL = 1e-12
MAX_ENUM_N = 12
MAX_ENUM_CODIM = 4


@dataclass(frozen=True)
class SimplexSpec:
    """The regular embedded simplex, or a general one given by its vertices.

    `vertices` holds one vertex per column; every column sums to 1, so all
    vertices lie in the affine plane of the regular simplex.
    """

    n: int
    vertices: np.ndarray  # (n+1, n+1), column j = vertex j
    is_regular: bool

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.shape != (self.n + 1, self.n + 1):
            raise ValueError("vertex matrix must be (n+1) x (n+1)")
        if np.max(np.abs(v.sum(axis=0) - 1.0)) > 1e-12:
            raise ValueError("every vertex must have coordinate sum 1")
        v = v.copy()
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)


def regular_simplex(n: int) -> SimplexSpec:
    if n < 1:
        raise OutOfRange("n >= 1 required")
    return SimplexSpec(n=n, vertices=np.eye(n + 1), is_regular=True)


def general_simplex(vertex_matrix) -> SimplexSpec:
    m = np.array(vertex_matrix, dtype=float)
    n = m.shape[0] - 1
    if abs(linalg.det(m)) < 1e-12:
        raise ValueError("vertex matrix is singular")
    return SimplexSpec(n=n, vertices=m, is_regular=bool(np.allclose(m, np.eye(n + 1))))


@dataclass(frozen=True)
class SectionPolytope:
    """Vertex list of a section, with per-vertex zero-coordinate labels.

    For a general simplex the labels are barycentric: index j is in a
    vertex's zero set when the j-th simplex vertex does not support it.
    Facets of the section are exactly the label classes, which is what the
    volume recursion walks.
    """

    dim: int
    vertices: np.ndarray  # (m, n+1) rows
    zero_sets: tuple[frozenset[int], ...]

    @property
    def vertex_count(self) -> int:
        return self.vertices.shape[0]


def _dedupe(points: list[np.ndarray], zsets: list[frozenset[int]]):
    kept_pts: list[np.ndarray] = []
    kept_zs: list[frozenset[int]] = []
    for p, z in zip(points, zsets):
        for i, q in enumerate(kept_pts):
            if np.max(np.abs(p - q)) < VERTEX_DEDUP_TOL:
                kept_zs[i] = kept_zs[i] | z
                break
        else:
            kept_pts.append(p)
            kept_zs.append(z)
    return kept_pts, kept_zs


def _build_polytope(points: list[np.ndarray], zsets: list[frozenset[int]]) -> SectionPolytope:
    pts, zs = _dedupe(points, zsets)
    arr = np.array(pts)
    d = linalg.rank(arr - arr.mean(axis=0)) if len(pts) > 1 else 0
    return SectionPolytope(dim=d, vertices=arr, zero_sets=tuple(zs))


def hyperplane_section_vertices(spec: SimplexSpec, b) -> SectionPolytope:
    """Vertices of H_b intersected with the simplex.

    They are the crossings of H_b with edges whose endpoints evaluate to
    opposite signs, plus any simplex vertices lying on H_b.
    """
    bvec = b.a if isinstance(b, Direction) else np.asarray(b, dtype=float)
    phi = bvec @ spec.vertices  # per-vertex values
    scale = float(np.max(np.abs(phi)))
    if scale == 0.0:
        raise ValueError("normal vector vanishes on all vertices")
    tol = 1e-12 * scale
    on = [j for j in range(spec.n + 1) if abs(phi[j]) <= tol]
    pos = [j for j in range(spec.n + 1) if phi[j] > tol]
    neg = [j for j in range(spec.n + 1) if phi[j] < -tol]

    everything = frozenset(range(spec.n + 1))
    points: list[np.ndarray] = []
    zsets: list[frozenset[int]] = []
    for j in on:
        points.append(spec.vertices[:, j].copy())
        zsets.append(everything - {j})
    for i in pos:
        for j in neg:
            lam = -phi[j] / (phi[i] - phi[j])  # weight of vertex i, in (0,1)
            points.append(lam * spec.vertices[:, i] + (1.0 - lam) * spec.vertices[:, j])
            zsets.append(everything - {i, j})

    if not points:
        raise EmptySection("normal is one-signed on all vertices and touches none")
    if len(points) == 1:
        raise PointSection(points[0])
    return _build_polytope(points, zsets)


def kdim_section_vertices(spec: SimplexSpec, basis: SubspaceBasis) -> SectionPolytope:
    """Vertices of H intersected with the simplex, H of any codimension.

    Basic feasible solutions of {lambda >= 0, sum lambda = 1, A V lambda = 0}:
    every support of size codim+1 contributes the solution of the square
    system on that support when it is nonnegative.
    """
    codim = basis.codim
    if codim > MAX_ENUM_CODIM or spec.n > MAX_ENUM_N:
        raise NotSupported(
            f"enumeration accepted up to n={MAX_ENUM_N}, codim={MAX_ENUM_CODIM}"
        )
    if codim > spec.n - 1 + 1:
        raise OutOfRange("codimension exceeds the section dimension range")
    m_constraints = basis.vectors @ spec.vertices  # (codim, n+1) in barycentric terms
    rhs = np.zeros(codim + 1)
    rhs[0] = 1.0

    points: list[np.ndarray] = []
    zsets: list[frozenset[int]] = []
    for support in combinations(range(spec.n + 1), codim + 1):
        sys_rows = np.vstack([np.ones(codim + 1), m_constraints[:, support]])
        try:
            sol = linalg.solve_small(sys_rows, rhs)
        except Singular:
            continue
        if np.min(sol) < -1e-12:
            continue
        lam = np.zeros(spec.n + 1)
        lam[list(support)] = np.clip(sol, 0.0, None)
        points.append(spec.vertices @ lam)
        zsets.append(frozenset(j for j in range(spec.n + 1) if lam[j] <= ZERO_COORD_TOL))

    if not points:
        raise EmptySection("subspace misses the simplex")
    return _build_polytope(points, zsets)


def polytope_volume(poly: SectionPolytope) -> VolumeResult:
    """Intrinsic volume by recursive pyramid decomposition.

    Facet j = vertices whose zero set contains j, kept when that subset has
    rank dim-1; the apex is the vertex centroid, so every height is
    nonnegative and no signed-volume bookkeeping is needed.  The recursion
    bottoms out at segment length; a dim-0 polytope counts as 1 by the
    point-measure convention.
    """
    if poly.vertex_count == 0:
        raise EmptySection("empty polytope")
    if poly.dim == 0:
        return VolumeResult(value=1.0, method="oracle", err=0.0)
    verts = poly.vertices
    zsets = poly.zero_sets
    cache: dict[tuple[int, ...], float] = {}

    def vol(idx: tuple[int, ...], d: int) -> float:
        if d == 1:
            if len(idx) != 2:
                raise DegeneratePolytope(f"1-dim face with {len(idx)} vertices")
            return float(np.linalg.norm(verts[idx[0]] - verts[idx[1]]))
        if idx in cache:
            return cache[idx]
        pts = verts[list(idx)]
        apex = pts.mean(axis=0)
        label_pool = sorted(set().union(*(zsets[i] for i in idx)))
        seen: set[tuple[int, ...]] = set()
        total = 0.0
        found = False
        for j in label_pool:
            sub = tuple(i for i in idx if j in zsets[i])
            if len(sub) < d or sub in seen:
                continue
            sub_pts = verts[list(sub)]
            if linalg.rank(sub_pts - sub_pts.mean(axis=0)) != d - 1:
                continue
            seen.add(sub)
            height = linalg.distance_to_affine(apex, sub_pts)
            total += height * vol(sub, d - 1)
            found = True
        if not found:
            raise DegeneratePolytope("no proper facets found")
        cache[idx] = total / d
        return cache[idx]

    value = vol(tuple(range(poly.vertex_count)), poly.dim)
    return VolumeResult(value=value, method="oracle", err=1e-13 * value * max(1, poly.dim))


def frustum_volume(N: int, x: float) -> float:
    """Section volume profile for two positive and N equal negative weights.

    The section is the convex hull of two parallel regular (N-1)-simplices;
    the closed form is the frustum height times a geometric cross-term sum,
    extended continuously to the endpoints x = 0 and x = 1 where one of the
    two simplices degenerates.
    """
    if not isinstance(N, (int, np.integer)) or N < 2:
        raise OutOfRange("N must be an integer >= 2")
    if not (0.0 <= x <= 1.0):
        raise OutOfRange(f"x={x} outside [0, 1]")
    top = N * x / (N * x + 1.0)
    bot = N * (1.0 - x) / (N * (1.0 - x) + 1.0)
    height = math.sqrt(
        1.0 / (N * x + 1.0) ** 2
        + 1.0 / (N * (1.0 - x) + 1.0) ** 2
        + N * (x / (N * x + 1.0) - (1.0 - x) / (N * (1.0 - x) + 1.0)) ** 2
    )
    cross = sum(top ** (N - 1 - m) * bot**m for m in range(N))
    return math.sqrt(N) / math.factorial(N) * height * cross


def simplex_volume(spec: SimplexSpec) -> float:
    """n-volume of the simplex inside its affine hull."""
    if spec.is_regular:
        return math.sqrt(spec.n + 1.0) / math.factorial(spec.n)
    w = spec.vertices[:, 1:] - spec.vertices[:, :1]
    gram = w.T @ w
    return math.sqrt(max(linalg.det(gram), 0.0)) / math.factorial(spec.n)


def face_volumes(spec: SimplexSpec) -> np.ndarray:
    """(n-1)-volumes of all n+1 faces."""
    out = np.empty(spec.n + 1)
    for j in range(spec.n + 1):
        others = [i for i in range(spec.n + 1) if i != j]
        w = spec.vertices[:, others[1:]] - spec.vertices[:, others[:1]]
        gram = w.T @ w
        out[j] = math.sqrt(max(linalg.det(gram), 0.0)) / math.factorial(spec.n - 1)
    return out


def monte_carlo_slab_volume(
    spec: SimplexSpec, b, eps: float, samples: int, seed: int
) -> VolumeResult:
    """Third independent check: uniform sampling of a thin slab around H_b.

    Points are drawn flat on the simplex (normalized spacings of sorted
    uniforms, mapped through the vertex matrix for general simplices); the
    hit fraction of |<b, x>| <= eps estimates the slab volume, divided by
    the slab width measured inside the simplex's affine hull.
    """
    if eps <= 0.0 or samples < 1:
        raise OutOfRange("eps > 0 and samples >= 1 required")
    bvec = b.a if isinstance(b, Direction) else np.asarray(b, dtype=float)
    n = spec.n
    ksum = float(bvec.sum())
    b_par = math.sqrt(max(0.0, float(bvec @ bvec) - ksum * ksum / (n + 1.0)))
    if b_par <= 1e-12:
        raise OutOfRange("normal is parallel to the affine hull's normal")
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    batch = 200_000
    vt = spec.vertices.T
    while done < samples:
        m = min(batch, samples - done)
        u = np.sort(rng.random((m, n)), axis=1)
        lam = np.diff(u, axis=1, prepend=0.0, append=1.0)
        x = lam if spec.is_regular else lam @ vt
        hits += int(np.count_nonzero(np.abs(x @ bvec) <= eps))
        done += m
    if hits == 0:
        raise ZeroHits("no sample landed in the slab")
    p = hits / samples
    factor = simplex_volume(spec) * b_par / (2.0 * eps)
    value = p * factor
    err = math.sqrt(p * (1.0 - p) / samples) * factor
    return VolumeResult(value=value, method="monte-carlo", err=err)
