import numpy as np
import pytest

from helpers import (
    directed_edges_balanced,
    edge_use_counts,
    localized_periodic_grid,
    sphere_grid,
)
from mxv.errors import DataError, EmptyGrid
from mxv.isosurface import (
    ScalarField,
    default_isovalue,
    evolve_isovalue,
    extract_pair,
    marching_cubes,
    marching_tetrahedra,
    surface_nets,
    transform_mesh,
)
from mxv.model import VolumetricGrid

ALGOS = [marching_cubes, marching_tetrahedra, surface_nets]


def _grid(values, steps=None, origin=(0, 0, 0)):
    return VolumetricGrid(origin=origin,
                          steps=np.eye(3) if steps is None else steps,
                          values=np.asarray(values, dtype=float))


def _linear_grid(n, g, d):
    ax = np.arange(n)
    X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
    return _grid(g[0] * X + g[1] * Y + g[2] * Z + d)


# --- default isovalue ---

def test_default_isovalue_trivial():
    assert default_isovalue(_grid(np.ones((2, 2, 2)))) == pytest.approx(0.005)


def test_default_isovalue_sign_insensitive():
    vals = np.zeros((2, 2, 2))
    vals[0, 0, 0] = -2.0
    assert default_isovalue(_grid(vals)) == pytest.approx(0.01)


def test_default_isovalue_random_grids():
    rng = np.random.default_rng(0)
    for _ in range(20):
        shape = tuple(rng.integers(2, 12, size=3))
        vals = rng.normal(size=shape) * rng.uniform(0.01, 100)
        g = _grid(vals)
        assert default_isovalue(g) == pytest.approx(np.max(np.abs(vals)) / 200, rel=1e-12)


def test_default_isovalue_empty():
    g = sphere_grid(8)
    object.__setattr__(g, "values", np.zeros((0, 0, 0)))
    with pytest.raises(EmptyGrid):
        default_isovalue(g)


# --- basic extraction behavior ---

def test_constant_field_empty_everywhere():
    g = _grid(np.full((6, 6, 6), 2.5))
    field = ScalarField(g)
    for algo in ALGOS:
        mesh = algo(field, 1.0)
        assert len(mesh.vertices) == 0
        assert len(mesh.triangles) == 0


def test_planar_field_single_plane():
    # f = x - c on a small block: a flat quad sheet at x = c
    g = _linear_grid(4, (1, 0, 0), 0.0)
    mesh = marching_cubes(ScalarField(g), 1.5)
    assert np.allclose(mesh.vertices[:, 0], 1.5, atol=1e-12)
    assert len(mesh.triangles) == 2 * 3 * 3  # two triangles per cell face


def test_planar_mt_coincides_with_mc_plane():
    g = _linear_grid(5, (0, 1, 0), 0.2)
    mc = marching_cubes(ScalarField(g), 1.7)
    mt = marching_tetrahedra(ScalarField(g), 1.7)
    assert np.allclose(mc.vertices[:, 1], 1.5, atol=1e-9)
    assert np.allclose(mt.vertices[:, 1], 1.5, atol=1e-9)


def test_planar_surface_nets_vertices_at_cell_centers():
    g = _linear_grid(5, (1, 0, 0), 0.0)
    sn = surface_nets(ScalarField(g), 1.5)
    # crossings on the four x-edges of each cell average to the cell center
    assert np.allclose(sn.vertices[:, 0], 1.5, atol=1e-12)
    assert np.allclose(sn.vertices[:, 1] % 1.0, 0.5, atol=1e-12)
    assert np.allclose(sn.vertices[:, 2] % 1.0, 0.5, atol=1e-12)


def test_linear_field_exactness_all_cell_algorithms():
    rng = np.random.default_rng(42)
    for trial in range(10):
        gvec = rng.normal(size=3)
        gvec /= np.linalg.norm(gvec)
        d = rng.normal() * 0.5
        iso = rng.normal() * 0.5
        grid = _linear_grid(7, gvec, d)
        field = ScalarField(grid)
        for algo in (marching_cubes, marching_tetrahedra):
            mesh = algo(field, iso)
            if len(mesh.vertices) == 0:
                continue
            err = np.abs(mesh.vertices @ gvec + d - iso)
            assert err.max() <= 1e-9, f"trial {trial}"


# --- sphere topology ---

def test_sphere_mc_closed_euler_two_and_on_surface():
    g = sphere_grid(48)
    mesh = marching_cubes(ScalarField(g), 0.0)
    counts = edge_use_counts(mesh.triangles)
    assert set(counts.values()) == {2}
    V, E, F = len(mesh.vertices), len(counts), len(mesh.triangles)
    assert V - E + F == 2
    c = (48 - 1) / 2
    r = np.linalg.norm(mesh.vertices - c, axis=1)
    assert np.abs(r - 0.38 * 48).max() <= np.sqrt(3.0)


def test_sphere_mt_closed_and_windings_consistent():
    g = sphere_grid(32)
    for algo in (marching_cubes, marching_tetrahedra):
        mesh = algo(ScalarField(g), 0.0)
        counts = edge_use_counts(mesh.triangles)
        assert set(counts.values()) == {2}
        assert directed_edges_balanced(mesh.triangles)


def test_sphere_normals_point_outward():
    g = sphere_grid(32)
    c = (32 - 1) / 2
    for algo in ALGOS:
        mesh = algo(ScalarField(g), 0.0)
        outward = mesh.vertices - c
        outward /= np.linalg.norm(outward, axis=1)[:, None]
        dots = (outward * mesh.normals).sum(axis=1)
        assert dots.min() > 0.9, algo.__name__


def test_sphere_winding_agrees_with_normals():
    g = sphere_grid(32)
    for algo in ALGOS:
        mesh = algo(ScalarField(g), 0.0)
        t = mesh.triangles
        geo = np.cross(mesh.vertices[t[:, 1]] - mesh.vertices[t[:, 0]],
                       mesh.vertices[t[:, 2]] - mesh.vertices[t[:, 0]])
        norm = np.linalg.norm(geo, axis=1)
        keep = norm > 1e-12
        geo = geo[keep] / norm[keep][:, None]
        mean = (mesh.normals[t[:, 0]] + mesh.normals[t[:, 1]] + mesh.normals[t[:, 2]])[keep] / 3
        assert ((geo * mean).sum(axis=1) > 0).all(), algo.__name__


def test_surface_nets_vertex_count_equals_sign_changing_cells():
    g = sphere_grid(32)
    mesh = surface_nets(ScalarField(g), 0.0)
    vals = g.values
    below = vals < 0.0
    crossing = np.zeros(tuple(d - 1 for d in vals.shape), dtype=bool)
    all_below = np.ones_like(crossing)
    for dx in (0, 1):
        for dy in (0, 1):
            for dz in (0, 1):
                sl = below[dx:dx + 31, dy:dy + 31, dz:dz + 31]
                crossing |= sl
                all_below &= sl
    n_cells = int((crossing & ~all_below).sum())
    assert len(mesh.vertices) == n_cells


def test_sphere_euler_duality_pins_sn_vertex_count():
    # For any closed genus-0 surface: surface nets puts one vertex per
    # sign-changing cell and one quad per crossing edge, while welded
    # marching cubes puts one vertex per crossing edge, so
    # V_sn - 3*E + 2*E = 2 forces V_sn = V_mc + 2 exactly.
    for n, R, center in ((48, 15.0, 23.5), (64, 24.32, 31.5)):
        g = sphere_grid(n, radius_vox=R)
        mc = marching_cubes(ScalarField(g), 0.0)
        sn = surface_nets(ScalarField(g), 0.0)
        assert len(sn.vertices) == len(mc.vertices) + 2


def test_surface_nets_fewer_vertices_on_lumpy_density():
    # the memory advantage shows on realistic, lumpy fields: cells crossed
    # by several surface patches still contribute a single net vertex
    rng = np.random.default_rng(8)
    n = 48
    ax = np.arange(n)
    X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
    vals = np.zeros((n, n, n))
    for _ in range(40):
        c = rng.uniform(8, n - 8, size=3)
        w = rng.uniform(1.0, 2.5)
        vals += np.exp(-(((X - c[0]) ** 2 + (Y - c[1]) ** 2 + (Z - c[2]) ** 2)
                         / (2 * w * w)))
    g = _grid(vals)
    iso = default_isovalue(g) * 4
    mc = marching_cubes(ScalarField(g), iso)
    sn = surface_nets(ScalarField(g), iso)
    assert len(sn.vertices) < len(mc.vertices)


def test_mt_hausdorff_within_voxel_diagonal_of_mc():
    g = sphere_grid(32)
    mc = marching_cubes(ScalarField(g), 0.0)
    mt = marching_tetrahedra(ScalarField(g), 0.0)
    from scipy.spatial import cKDTree

    d1, _ = cKDTree(mc.vertices).query(mt.vertices)
    d2, _ = cKDTree(mt.vertices).query(mc.vertices)
    assert max(d1.max(), d2.max()) <= np.sqrt(3.0)


# --- supercell tiling ---

def test_supercell_continuity_all_algorithms():
    g = localized_periodic_grid(32)
    n = 32

    def canon(a):
        return np.array(sorted(map(tuple, np.round(a, 9))))

    for algo in ALGOS:
        base = algo(ScalarField(g), 0.5)
        tiled = algo(ScalarField(g, supercell=(2, 1, 1)), 0.5)
        first = tiled.vertices[tiled.vertices[:, 0] < n - 0.5]
        second = tiled.vertices[tiled.vertices[:, 0] >= n - 0.5].copy()
        second[:, 0] -= n
        a0, a1, a2 = canon(base.vertices), canon(first), canon(second)
        assert a1.shape == a0.shape and np.abs(a1 - a0).max() <= 1e-9, algo.__name__
        assert a2.shape == a0.shape and np.abs(a2 - a0).max() <= 1e-9, algo.__name__


def test_tiled_mesh_is_seam_free():
    g = localized_periodic_grid(24)
    mesh = marching_cubes(ScalarField(g, supercell=(2, 1, 1)), 0.5)
    counts = edge_use_counts(mesh.triangles)
    assert set(counts.values()) == {2}
    # two disjoint closed lobes: Euler characteristic 2 + 2
    V, E, F = len(mesh.vertices), len(counts), len(mesh.triangles)
    assert V - E + F == 4


# --- affine transform ---

def test_transform_identity_keeps_index_coordinates():
    g = sphere_grid(16, step=1.0)
    mesh = marching_cubes(ScalarField(g), 0.0)
    tri = transform_mesh(mesh, g, isovalue=0.0)
    assert np.array_equal(tri.vertices, mesh.vertices)
    assert np.allclose(tri.normals, mesh.normals, atol=1e-12)


def test_transform_isotropic_scale():
    g = sphere_grid(16, step=0.2)
    mesh = marching_cubes(ScalarField(g), 0.0)
    tri = transform_mesh(mesh, g, isovalue=0.0)
    assert np.allclose(tri.vertices, mesh.vertices * 0.2, atol=1e-12)
    assert np.allclose(tri.normals, mesh.normals, atol=1e-9)


def test_transform_offsets_by_origin():
    g = VolumetricGrid(origin=(1.0, 2.0, 3.0), steps=np.eye(3) * 0.5,
                       values=sphere_grid(12).values)
    mesh = marching_cubes(ScalarField(g), 0.0)
    tri = transform_mesh(mesh, g, isovalue=0.0)
    assert np.allclose(tri.vertices, mesh.vertices * 0.5 + [1, 2, 3])


def test_sheared_plane_normals_match_analytic():
    # plane field under a sheared hexagonal cell: transformed face normals
    # must match the analytically transformed plane normal
    n = 8
    gvec = np.array([1.0, 0.0, 0.0])
    ax = np.arange(n)
    X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
    a = 2.46 / n
    steps = np.array([[a, 0, 0], [-a / 2, a * np.sqrt(3) / 2, 0], [0, 0, 6.7 / n]])
    g = VolumetricGrid(origin=(0, 0, 0), steps=steps, values=gvec[0] * X)
    mesh = marching_cubes(ScalarField(g), 3.5)
    tri = transform_mesh(mesh, g, isovalue=3.5)
    # index-space plane g.idx = iso maps to cartesian normal (V^-1)^T g
    # with V = steps^T, i.e. inv(steps) @ g as a column vector
    expected = np.linalg.inv(steps) @ gvec
    expected = -expected / np.linalg.norm(expected)  # normals face decreasing field
    t = tri.triangles
    geo = np.cross(tri.vertices[t[:, 1]] - tri.vertices[t[:, 0]],
                   tri.vertices[t[:, 2]] - tri.vertices[t[:, 0]])
    geo /= np.linalg.norm(geo, axis=1)[:, None]
    assert np.abs(np.abs(geo @ expected) - 1.0).max() <= 1e-6
    assert np.allclose(tri.normals, expected, atol=1e-6)


def test_negative_determinant_flips_winding():
    g = sphere_grid(12, step=1.0)
    mesh = marching_cubes(ScalarField(g), 0.0)
    flipped = VolumetricGrid(origin=(0, 0, 0), steps=np.diag([1.0, 1.0, -1.0]),
                             values=g.values)
    tri = transform_mesh(mesh, flipped, isovalue=0.0)
    assert np.array_equal(tri.triangles[:, 1], mesh.triangles[:, 2])
    assert np.array_equal(tri.triangles[:, 2], mesh.triangles[:, 1])


# --- sign pair ---

def test_extract_pair_positive_only_data():
    vals = np.zeros((6, 6, 6))
    vals[2:4, 2:4, 2:4] = 1.0
    g = _grid(vals)
    pos, neg = extract_pair(g, 0.5)
    assert len(pos.vertices) > 0
    assert len(neg.vertices) == 0
    assert pos.sign == "positive" and neg.sign == "negative"
    assert pos.isovalue == 0.5 and neg.isovalue == 0.5


def test_extract_pair_swaps_under_negation():
    rng = np.random.default_rng(9)
    vals = rng.normal(size=(6, 6, 6))
    g = _grid(vals)
    gneg = _grid(-vals)
    p1, n1 = extract_pair(g, 0.4)
    p2, n2 = extract_pair(gneg, 0.4)
    assert np.array_equal(p1.vertices, n2.vertices)
    assert np.array_equal(n1.vertices, p2.vertices)
    assert np.array_equal(p1.triangles, n2.triangles)


def test_extract_pair_dipole_two_disjoint_lobes():
    n = 28
    ax = np.arange(n)
    X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
    c = (n - 1) / 2
    lobe = lambda x0: np.exp(-(((X - x0) ** 2 + (Y - c) ** 2 + (Z - c) ** 2) / 9.0))
    g = _grid(lobe(c - 6) - lobe(c + 6))
    pos, neg = extract_pair(g, 0.3, algorithm="mc")
    for mesh in (pos, neg):
        assert len(mesh.vertices) > 0
        counts = edge_use_counts(mesh.triangles)
        assert set(counts.values()) == {2}
        assert len(mesh.vertices) - len(counts) + len(mesh.triangles) == 2
    # each closed lobe sits entirely on its own side of the midplane
    assert pos.vertices[:, 0].max() < c
    assert neg.vertices[:, 0].min() > c


def test_extract_pair_algorithms_and_errors():
    g = sphere_grid(12)
    for algo in ("mc", "mt", "sn"):
        pos, neg = extract_pair(g, default_isovalue(g), algorithm=algo)
        assert len(pos.vertices) > 0
    with pytest.raises(DataError):
        extract_pair(g, -1.0)
    with pytest.raises(DataError):
        extract_pair(g, 0.1, algorithm="nope")


# --- evolution mode ---

def test_evolve_basic_step():
    assert evolve_isovalue(0.01, +1, 0.005, 1.0) == pytest.approx(0.015)


def test_evolve_clamps_at_max_abs():
    assert evolve_isovalue(0.9, +1, 0.5, 1.0) == 1.0


def test_evolve_refuses_to_cross_zero():
    assert evolve_isovalue(0.01, -1, 0.05, 1.0) == 0.01


def test_evolve_alternation_returns_to_start():
    iso = 0.37
    for _ in range(5):
        iso = evolve_isovalue(iso, +1, 0.04, 10.0)
        iso = evolve_isovalue(iso, -1, 0.04, 10.0)
    assert iso == pytest.approx(0.37, rel=1e-12)


def test_field_wrap_sampling():
    g = sphere_grid(8)
    f = ScalarField(g)
    assert f.value(8, 8, 8) == f.value(0, 0, 0)
    assert f.value(-1, 0, 0) == f.value(7, 0, 0)
