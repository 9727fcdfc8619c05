"""Isosurface extraction from volumetric grids.

Three algorithms (marching cubes, marching tetrahedra, surface nets) run on
the cubic index grid, optionally tiled periodically into a supercell; the
resulting index-space mesh is then carried to cartesian space by the affine
map x = origin + V·idx, where V's columns are the voxel step vectors. Both
signs of the data can be extracted as a pair of independently renderable
meshes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DataError, EmptyGrid, SingularSteps
from .model import TriangleMesh, VolumetricGrid

ALGORITHMS = ("mc", "mt", "sn")


@dataclass(frozen=True)
class ScalarField:
    """A grid plus a periodic tiling; sampling wraps in every axis."""

    grid: VolumetricGrid
    supercell: tuple[int, int, int] = (1, 1, 1)

    def __post_init__(self):
        sc = tuple(int(t) for t in self.supercell)
        if len(sc) != 3 or min(sc) < 1:
            raise DataError(f"supercell factors must be positive, got {self.supercell}")
        object.__setattr__(self, "supercell", sc)

    def value(self, i: int, j: int, k: int) -> float:
        n1, n2, n3 = self.grid.dims
        return float(self.grid.values[i % n1, j % n2, k % n3])

    @property
    def tiled_points(self) -> tuple[int, int, int]:
        n1, n2, n3 = self.grid.dims
        t1, t2, t3 = self.supercell
        return (t1 * n1, t2 * n2, t3 * n3)


@dataclass(frozen=True)
class IndexMesh:
    """Mesh in continuous grid-index coordinates (units of voxels)."""

    vertices: np.ndarray   # (M, 3)
    normals: np.ndarray    # (M, 3) unit, index-space
    triangles: np.ndarray  # (K, 3)


def default_isovalue(grid: VolumetricGrid) -> float:
    """Default display isovalue: largest absolute data value divided by 200."""
    if grid.values.size == 0:
        raise EmptyGrid("grid has no values")
    return grid.max_abs() / 200.0


def _extract(field: ScalarField, iso: float, kernel) -> IndexMesh:
    if not np.isfinite(iso):
        raise DataError(f"isovalue must be finite, got {iso}")
    verts, normals, tris = kernel(field.grid.values, float(iso), field.supercell)
    return IndexMesh(vertices=verts, normals=normals, triangles=tris)


def marching_cubes(field: ScalarField, iso: float) -> IndexMesh:
    """Classic 256-case cube triangulation with edge-welded vertices."""
    return _extract(field, iso, kernels.marching_cubes)


def marching_tetrahedra(field: ScalarField, iso: float) -> IndexMesh:
    """Six tetrahedra per cube (main-diagonal split), 16-case triangulation."""
    return _extract(field, iso, kernels.marching_tetrahedra)


def surface_nets(field: ScalarField, iso: float) -> IndexMesh:
    """One vertex per sign-changing cell at the centroid of its edge crossings,
    linked by quads across the cells around each crossing grid edge."""
    return _extract(field, iso, kernels.surface_nets)


_KERNELS = {
    "mc": marching_cubes,
    "mt": marching_tetrahedra,
    "sn": surface_nets,
}


def transform_mesh(mesh: IndexMesh, grid: VolumetricGrid,
                   isovalue: float, sign: str = "positive") -> TriangleMesh:
    """Affine map from index space to cartesian: x = origin + V·idx.

    V's columns are the voxel step vectors; normals transform with the
    inverse transpose and are renormalized. Triangle winding flips when
    det(V) < 0 so outward orientation is preserved.
    """
    steps = grid.steps
    det = float(np.linalg.det(steps))
    if abs(det) < 1e-300:
        raise SingularSteps("voxel step vectors are singular")
    verts = grid.origin + mesh.vertices @ steps
    normals = mesh.normals @ np.linalg.inv(steps).T
    if len(normals):
        length = np.linalg.norm(normals, axis=1)
        length[length == 0.0] = 1.0
        normals = normals / length[:, None]
    tris = mesh.triangles
    if det < 0 and len(tris):
        tris = tris[:, (0, 2, 1)]
    return TriangleMesh(vertices=verts, normals=normals, triangles=tris,
                        isovalue=isovalue, sign=sign)


def extract_pair(grid: VolumetricGrid, iso: float, algorithm: str = "mc",
                 supercell: tuple[int, int, int] = (1, 1, 1),
                 ) -> tuple[TriangleMesh, TriangleMesh]:
    """Positive and negative isosurfaces at +iso, both in cartesian space.

    The negative mesh is the +iso surface of the negated field, so its
    normals also point outward from the negative lobes.
    """
    if not iso > 0:
        raise DataError(f"isovalue for a surface pair must be > 0, got {iso}")
    try:
        kern = _KERNELS[algorithm]
    except KeyError:
        raise DataError(f"unknown algorithm {algorithm!r}, expected one of {ALGORITHMS}") from None
    field = ScalarField(grid=grid, supercell=supercell)
    pos = transform_mesh(kern(field, iso), grid, iso, "positive")
    neg_grid = VolumetricGrid(origin=grid.origin, steps=grid.steps,
                              values=-grid.values, atoms=grid.atoms)
    neg_field = ScalarField(grid=neg_grid, supercell=field.supercell)
    neg = transform_mesh(kern(neg_field, iso), grid, iso, "negative")
    return pos, neg


def evolve_isovalue(iso: float, direction: int, step: float, max_abs: float) -> float:
    """One tick of evolution mode: iso + direction*step, kept in (0, max_abs].

    A step that would cross zero is ignored (the isovalue stays put); the
    upper end clamps to max_abs.
    """
    if step <= 0:
        raise DataError(f"evolution step must be > 0, got {step}")
    nxt = iso + (1.0 if direction >= 0 else -1.0) * step
    if nxt > max_abs:
        return max_abs
    if nxt <= 0.0:
        return iso
    return nxt


def default_evolution_step(grid: VolumetricGrid) -> float:
    """Default per-tick isovalue increment: a tenth of the default isovalue."""
    return default_isovalue(grid) / 10.0
