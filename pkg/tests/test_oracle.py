import math

import numpy as np
import pytest

from simplex_sections import closed_form as cf
from simplex_sections import linalg, oracle, subspaces
from simplex_sections.errors import (
    EmptySection,
    NotSupported,
    OutOfRange,
    PointSection,
    ZeroHits,
)


# --- hyperplane section vertices --------------------------------------------

def test_square_section_n3():
    spec = oracle.regular_simplex(3)
    poly = oracle.hyperplane_section_vertices(spec, cf.Direction.make([0.5, 0.5, -0.5, -0.5]))
    assert poly.vertex_count == 4
    assert poly.dim == 2
    # all four vertices are edge midpoints
    for v in poly.vertices:
        nz = np.sort(v[np.abs(v) > 1e-12])
        assert np.allclose(nz, [0.5, 0.5])
    # the four edges have equal length: a square
    for zs in poly.zero_sets:
        assert len(zs) == 2


def test_face_parallel_section_structure():
    n = 5
    spec = oracle.regular_simplex(n)
    poly = oracle.hyperplane_section_vertices(spec, cf.a_min_direction(n))
    assert poly.vertex_count == n
    assert poly.dim == n - 1
    # a regular (n-2)-simplex: all pairwise distances equal
    dists = [
        np.linalg.norm(poly.vertices[i] - poly.vertices[j])
        for i in range(n)
        for j in range(i + 1, n)
    ]
    assert max(dists) - min(dists) < 1e-12
    # parallel to the face x_1 = 0: every vertex has the same first coordinate
    assert np.ptp(poly.vertices[:, 0]) < 1e-12


def test_segment_section_n2():
    spec = oracle.regular_simplex(2)
    poly = oracle.hyperplane_section_vertices(
        spec, cf.Direction.make([2.0, -1.0, -1.0]))
    assert poly.vertex_count == 2
    assert poly.dim == 1


def test_section_errors():
    spec = oracle.regular_simplex(3)
    with pytest.raises(EmptySection):
        oracle.hyperplane_section_vertices(spec, [1.0, 1.0, 1.0, 1.0])
    with pytest.raises(PointSection):
        oracle.hyperplane_section_vertices(spec, [0.0, 1.0, 1.0, 1.0])


def test_vertices_on_hyperplane_included():
    spec = oracle.regular_simplex(4)
    poly = oracle.hyperplane_section_vertices(spec, [1.0, 0.0, 0.0, 0.0, -1.0])
    # e_2, e_3, e_4 lie on the hyperplane; one edge crossing between e_1, e_5
    assert poly.vertex_count == 4


# --- k-dimensional section vertices ------------------------------------------

def test_kdim_matches_hyperplane_vertices():
    n = 5
    rng = np.random.default_rng(0)
    spec = oracle.regular_simplex(n)
    a = cf.random_direction_fixed_sum(n, 0.3, rng)
    p1 = oracle.hyperplane_section_vertices(spec, a)
    p2 = oracle.kdim_section_vertices(spec, subspaces.hyperplane_basis(a.a))
    assert p1.vertex_count == p2.vertex_count
    got = sorted(tuple(np.round(v, 10)) for v in p2.vertices)
    want = sorted(tuple(np.round(v, 10)) for v in p1.vertices)
    assert got == want


def test_kdim_face_case():
    n, k = 5, 3
    spec = oracle.regular_simplex(n)
    basis = subspaces.complement_of_span([np.eye(n + 1)[i] for i in range(k)])
    poly = oracle.kdim_section_vertices(spec, basis)
    assert poly.vertex_count == k
    got = sorted(tuple(np.round(v, 12)) for v in poly.vertices)
    want = sorted(tuple(np.eye(n + 1)[i]) for i in range(k))
    assert got == want


def test_kdim_witness_vertices():
    # k-1 vertices plus the centroid of the remaining face
    n, k = 5, 3
    spec = oracle.regular_simplex(n)
    span = [np.eye(n + 1)[i] for i in range(k - 1)]
    rest = np.zeros(n + 1)
    rest[k - 1:] = 1.0
    span.append(rest)
    poly = oracle.kdim_section_vertices(spec, subspaces.complement_of_span(span))
    assert poly.vertex_count == k
    key = sorted(tuple(np.round(v, 10)) for v in poly.vertices)
    expect = sorted(
        [
            tuple(np.eye(6)[0]),
            tuple(np.eye(6)[1]),
            tuple(np.round(np.array([0, 0, 0.25, 0.25, 0.25, 0.25]), 10)),
        ]
    )
    assert key == expect


def test_kdim_enumeration_limits():
    spec = oracle.regular_simplex(5)
    rows = linalg.gram_schmidt(np.random.default_rng(1).standard_normal((5, 6)))
    with pytest.raises(NotSupported):
        oracle.kdim_section_vertices(spec, subspaces.SubspaceBasis(n=5, vectors=np.array(rows)))


# --- polytope volume -----------------------------------------------------------

def test_segment_volume():
    spec = oracle.regular_simplex(4)
    poly = oracle.kdim_section_vertices(
        spec, subspaces.complement_of_span([np.eye(5)[0], np.eye(5)[1]])
    )
    assert oracle.polytope_volume(poly).value == pytest.approx(math.sqrt(2), rel=1e-14)


def test_half_half_square_volume():
    spec = oracle.regular_simplex(3)
    poly = oracle.hyperplane_section_vertices(spec, cf.Direction.make([0.5, 0.5, -0.5, -0.5]))
    assert oracle.polytope_volume(poly).value == pytest.approx(0.5, rel=1e-13)


def test_face_volume_formula():
    # the (k-1)-face spanned by k vertices has volume sqrt(k)/(k-1)!
    for k in range(2, 8):
        n = max(k, 3)
        spec = oracle.regular_simplex(n)
        basis = subspaces.complement_of_span([np.eye(n + 1)[i] for i in range(k)])
        if basis.codim > 4:
            continue
        poly = oracle.kdim_section_vertices(spec, basis)
        want = math.sqrt(k) / math.factorial(k - 1)
        assert oracle.polytope_volume(poly).value == pytest.approx(want, rel=1e-12)


def test_oracle_agrees_with_residue():
    rng = np.random.default_rng(2)
    for n in range(3, 8):
        spec = oracle.regular_simplex(n)
        for _ in range(120):
            a = cf.random_direction_fixed_sum(n, float(rng.uniform(0, 0.9)), rng)
            try:
                rv = cf.residue_volume(a)
            except EmptySection:
                continue
            poly = oracle.hyperplane_section_vertices(spec, a)
            ov = oracle.polytope_volume(poly)
            assert ov.value == pytest.approx(rv.value, rel=1e-9)


# --- parallel-slice structure (two positive, equal negative coordinates) -------

def _two_block_direction(a1, a2, N):
    coords = np.array([a1, a2] + [-(a1 + a2) / N] * N)
    return cf.Direction.make(coords / np.linalg.norm(coords), canonicalize=False)


def test_parallel_slice_structure():
    a1, a2, N = 0.8, 0.45, 4
    d = _two_block_direction(a1, a2, N)
    beta = float(d.a[2])
    spec = oracle.regular_simplex(N + 1)
    poly = oracle.hyperplane_section_vertices(spec, d)
    assert poly.vertex_count == 2 * N

    groups = {0: [], 1: []}
    for v, zs in zip(poly.vertices, poly.zero_sets):
        owner = 0 if 0 not in zs else 1
        groups[owner].append(v)
    scaled = [float(d.a[0]), float(d.a[1])]
    hulls = []
    for i in (0, 1):
        pts = np.array(groups[i])
        assert pts.shape[0] == N
        # a regular (N-1)-simplex of side sqrt(2) a_i / (a_i - beta)
        want = math.sqrt(2) * scaled[i] / (scaled[i] - beta)
        for p in range(N):
            for q in range(p + 1, N):
                assert np.linalg.norm(pts[p] - pts[q]) == pytest.approx(want, abs=1e-10)
        centered = pts - pts.mean(axis=0)
        u, s, vt = np.linalg.svd(centered)
        hulls.append(vt[: N - 1])

    # affine hulls are parallel: each basis vector of one lies in the other
    b0, b1 = hulls
    for row in b0:
        resid = row - b1.T @ (b1 @ row)
        assert np.linalg.norm(resid) < 1e-9

    # centroid distance matches the closed form
    c0 = np.array(groups[0]).mean(axis=0)
    c1 = np.array(groups[1]).mean(axis=0)
    r0 = scaled[0] / (scaled[0] - beta)
    r1 = scaled[1] / (scaled[1] - beta)
    want_h = math.sqrt(
        beta**2 / (scaled[0] - beta) ** 2
        + beta**2 / (scaled[1] - beta) ** 2
        + (r0 - r1) ** 2 / N
    )
    assert np.linalg.norm(c0 - c1) == pytest.approx(want_h, abs=1e-10)


# --- frustum closed form ---------------------------------------------------------

def test_frustum_paper_values():
    assert oracle.frustum_volume(5, 0.0) == pytest.approx(
        125 / 186624 * math.sqrt(210), rel=1e-12
    )
    assert oracle.frustum_volume(5, 0.5) == pytest.approx(
        625 / 201684 * math.sqrt(10), rel=1e-12
    )
    assert oracle.frustum_volume(5, 0.0) < oracle.frustum_volume(5, 0.5)


def test_frustum_matches_residue_on_grid():
    N = 3
    for x in np.linspace(0.05, 0.95, 19):
        coords = np.array([x, 1 - x] + [-1.0 / N] * N)
        d = cf.Direction.make(coords / np.linalg.norm(coords))
        rv = cf.residue_volume(d)
        # x = 1/2 runs the tied-coordinate extrapolation; allow its error
        tol = max(1e-11 * rv.value, 5 * rv.err)
        assert abs(oracle.frustum_volume(N, float(x)) - rv.value) <= tol


def test_frustum_endpoint_is_padded_face_parallel_direction():
    # at x = 0 the two-positive normal degenerates to (0, face-parallel normal)
    for N in range(2, 7):
        padded = np.concatenate([[0.0], np.asarray(cf.a_min_direction(N).a)])
        want = cf.residue_volume(cf.Direction.make(padded, canonicalize=False)).value
        assert oracle.frustum_volume(N, 0.0) == pytest.approx(want, rel=1e-12)


def test_frustum_consistency_with_slice_decomposition():
    # V(x) equals height times the geometric cross-term sum of the two slices
    N, x = 4, 0.3
    d = _two_block_direction(x, 1 - x, N)
    spec = oracle.regular_simplex(N + 1)
    got = oracle.polytope_volume(oracle.hyperplane_section_vertices(spec, d)).value
    assert oracle.frustum_volume(N, x) == pytest.approx(got, rel=1e-11)


def test_frustum_domain():
    with pytest.raises(OutOfRange):
        oracle.frustum_volume(1, 0.5)
    with pytest.raises(OutOfRange):
        oracle.frustum_volume(3, 1.5)


# --- Monte Carlo slab -------------------------------------------------------------

def test_slab_matches_special_max():
    # the volume profile has a kink at the max section, so the slab bias is
    # first order in eps there; keep eps small relative to the noise
    res = oracle.monte_carlo_slab_volume(
        oracle.regular_simplex(4), cf.a_max_direction(4), eps=0.001, samples=10**6, seed=3
    )
    assert abs(res.value - cf.special_max_volume(4)) <= 3 * res.err


def test_slab_matches_half():
    res = oracle.monte_carlo_slab_volume(
        oracle.regular_simplex(3),
        cf.Direction.make([0.5, 0.5, -0.5, -0.5]),
        eps=0.01,
        samples=400_000,
        seed=4,
    )
    assert abs(res.value - 0.5) <= 3 * res.err


def test_slab_matches_residue_random():
    rng = np.random.default_rng(5)
    a = cf.random_direction_fixed_sum(5, 0.2, rng)
    res = oracle.monte_carlo_slab_volume(
        oracle.regular_simplex(5), a, eps=0.01, samples=400_000, seed=6
    )
    assert abs(res.value - cf.residue_volume(a).value) <= 3 * res.err


def test_slab_zero_hits():
    # slab far outside the simplex: shifted normal never fires
    with pytest.raises(ZeroHits):
        oracle.monte_carlo_slab_volume(
            oracle.regular_simplex(3),
            np.array([1.0, -1.0, 0.0, 0.0]) * 1e6,
            eps=1e-9,
            samples=2_000,
            seed=7,
        )


# --- simplex helpers ----------------------------------------------------------------

def test_simplex_volume_regular():
    for n in (2, 3, 6):
        spec = oracle.regular_simplex(n)
        assert oracle.simplex_volume(spec) == pytest.approx(
            math.sqrt(n + 1) / math.factorial(n), rel=1e-13
        )


def test_general_simplex_requires_unit_column_sums():
    with pytest.raises(ValueError):
        oracle.general_simplex(np.eye(4) * 1.01)


def test_face_volumes_regular():
    n = 4
    fv = oracle.face_volumes(oracle.regular_simplex(n))
    want = math.sqrt(n) / math.factorial(n - 1)
    assert np.allclose(fv, want, rtol=1e-13)
