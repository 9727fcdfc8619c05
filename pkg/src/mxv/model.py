"""Shared domain types and unit conventions.

Lengths are stored in angstrom and energies in hartree everywhere inside the
package; conversion to eV or bohr happens only at the presentation edge and
always goes through the two constants below. All types are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import DataError, InconsistentFrames, SingularLattice

BOHR_TO_ANG = 0.529177210903
HARTREE_TO_EV = 27.211386245988

# per-atom property keys recognized by parsers and the display layer
ATOM_PROPERTY_KEYS = ("net_charge", "spin", "force", "velocity", "spin_up", "spin_down")


def _frozen_array(x, shape=None, dtype=float) -> np.ndarray:
    a = np.asarray(x, dtype=dtype)
    if shape is not None and a.shape != shape:
        raise DataError(f"expected array of shape {shape}, got {a.shape}")
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Element:
    symbol: str
    atomic_number: int
    covalent_radius: float   # angstrom
    display_radius: float    # angstrom, ball-and-stick sphere size
    color: tuple[float, float, float]  # RGB in [0, 1]


@dataclass(frozen=True)
class Lattice:
    """Cell vectors; rows of `vectors` are a1, a2, a3 in cartesian angstrom."""

    vectors: np.ndarray

    def __post_init__(self):
        v = _frozen_array(self.vectors, (3, 3))
        object.__setattr__(self, "vectors", v)
        if not np.all(np.isfinite(v)):
            raise SingularLattice("lattice vectors must be finite")
        if abs(np.linalg.det(v)) < 1e-12:
            raise SingularLattice("lattice vectors are linearly dependent")

    def lengths(self) -> np.ndarray:
        return np.linalg.norm(self.vectors, axis=1)

    def angles(self) -> np.ndarray:
        """Cell angles (alpha, beta, gamma) in degrees."""
        v = self.vectors
        n = self.lengths()
        cos = np.array([
            np.dot(v[1], v[2]) / (n[1] * n[2]),
            np.dot(v[0], v[2]) / (n[0] * n[2]),
            np.dot(v[0], v[1]) / (n[0] * n[1]),
        ])
        return np.degrees(np.arccos(np.clip(cos, -1.0, 1.0)))


@dataclass(frozen=True)
class Atom:
    species: str
    element: Element
    position: np.ndarray  # cartesian angstrom, shape (3,)
    serial: int           # 1-based, unique within a Structure
    properties: Optional[Mapping[str, object]] = None

    def __post_init__(self):
        object.__setattr__(self, "position", _frozen_array(self.position, (3,)))
        if not np.all(np.isfinite(self.position)):
            raise DataError(f"atom {self.serial}: non-finite position")
        if self.serial < 1:
            raise DataError(f"atom serial must be >= 1, got {self.serial}")


@dataclass(frozen=True)
class Structure:
    atoms: tuple[Atom, ...]
    lattice: Optional[Lattice] = None
    comment: str = ""

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        serials = [a.serial for a in self.atoms]
        if len(set(serials)) != len(serials):
            raise DataError("duplicate atom serials in structure")

    def __len__(self) -> int:
        return len(self.atoms)

    def positions(self) -> np.ndarray:
        if not self.atoms:
            return np.zeros((0, 3))
        return np.array([a.position for a in self.atoms])

    def species(self) -> tuple[str, ...]:
        return tuple(a.species for a in self.atoms)


@dataclass(frozen=True)
class Trajectory:
    """Ordered frames with identical atom count and species sequence."""

    frames: tuple[Structure, ...]
    energies: tuple[Optional[float], ...] = field(default=())  # hartree per frame
    times: tuple[Optional[float], ...] = field(default=())     # fs per frame

    def __post_init__(self):
        frames = tuple(self.frames)
        object.__setattr__(self, "frames", frames)
        if not frames:
            raise DataError("trajectory needs at least one frame")
        ref = frames[0].species()
        for i, f in enumerate(frames[1:], start=2):
            if f.species() != ref:
                raise InconsistentFrames(
                    f"frame {i} differs in atom count or species sequence")
        for name in ("energies", "times"):
            vals = tuple(getattr(self, name))
            if not vals:
                vals = (None,) * len(frames)
            if len(vals) != len(frames):
                raise DataError(f"{name} must have one entry per frame")
            object.__setattr__(self, name, vals)

    def __len__(self) -> int:
        return len(self.frames)


@dataclass(frozen=True)
class VolumetricGrid:
    """Scalar values on a regular grid; the flattened order is k-fastest,
    i.e. flat index = i*n2*n3 + j*n3 + k (C order of the (n1, n2, n3) array).
    """

    origin: np.ndarray   # (3,) angstrom
    steps: np.ndarray    # (3, 3); rows are the voxel step vectors e1, e2, e3
    values: np.ndarray   # (n1, n2, n3)
    atoms: tuple[Atom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "origin", _frozen_array(self.origin, (3,)))
        object.__setattr__(self, "steps", _frozen_array(self.steps, (3, 3)))
        v = np.ascontiguousarray(np.asarray(self.values, dtype=float))
        if v.ndim != 3 or min(v.shape) < 1:
            raise DataError("grid values must be a non-empty 3d array")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if abs(np.linalg.det(self.steps)) < 1e-300:
            raise DataError("voxel step vectors are singular")

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.values.shape

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class TriangleMesh:
    """Triangle soup with welded vertices, tagged by the isovalue and the
    field sign it was extracted from."""

    vertices: np.ndarray   # (M, 3) angstrom
    normals: np.ndarray    # (M, 3), unit length
    triangles: np.ndarray  # (K, 3) indices into vertices
    isovalue: float
    sign: str  # "positive" | "negative"

    def __post_init__(self):
        verts = _frozen_array(self.vertices)
        norms = _frozen_array(self.normals)
        tris = _frozen_array(self.triangles, dtype=np.int64)
        if verts.ndim != 2 or verts.shape[1] != 3:
            raise DataError("vertices must be (M, 3)")
        if norms.shape != verts.shape:
            raise DataError("normals must match vertices")
        tris = tris.reshape(-1, 3) if tris.size else tris.reshape(0, 3)
        tris.flags.writeable = False
        if tris.size and (tris.min() < 0 or tris.max() >= len(verts)):
            raise DataError("triangle index out of range")
        if len(verts) and np.any(np.abs(np.linalg.norm(norms, axis=1) - 1.0) > 1e-6):
            raise DataError("normals must be unit length")
        if self.sign not in ("positive", "negative"):
            raise DataError(f"bad mesh sign {self.sign!r}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "normals", norms)
        object.__setattr__(self, "triangles", tris)


@dataclass(frozen=True)
class BandSegment:
    n_points: int
    k_start: np.ndarray    # fractional, (3,)
    k_end: np.ndarray
    label_start: str
    label_end: str
    kpoints: np.ndarray    # (n_points, 3) fractional
    eigenvalues: np.ndarray  # (spin_channels, n_points, n_bands) hartree

    def __post_init__(self):
        object.__setattr__(self, "k_start", _frozen_array(self.k_start, (3,)))
        object.__setattr__(self, "k_end", _frozen_array(self.k_end, (3,)))
        object.__setattr__(self, "kpoints", _frozen_array(self.kpoints))
        object.__setattr__(self, "eigenvalues", _frozen_array(self.eigenvalues))
        if self.kpoints.shape != (self.n_points, 3):
            raise DataError("segment k-point count mismatch")


@dataclass(frozen=True)
class BandData:
    n_bands: int
    spin_channels: int  # 1 or 2
    chem_potential: float  # hartree
    reciprocal: np.ndarray  # (3, 3) bohr^-1, rows b1, b2, b3
    segments: tuple[BandSegment, ...]

    def __post_init__(self):
        object.__setattr__(self, "reciprocal", _frozen_array(self.reciprocal, (3, 3)))
        object.__setattr__(self, "segments", tuple(self.segments))
        if self.spin_channels not in (1, 2):
            raise DataError(f"spin_channels must be 1 or 2, got {self.spin_channels}")
        for seg in self.segments:
            if seg.eigenvalues.shape != (self.spin_channels, seg.n_points, self.n_bands):
                raise DataError("segment eigenvalue shape mismatch")


def structure_from_arrays(
    species: Sequence[str],
    positions: np.ndarray,
    lattice: Optional[Lattice] = None,
    comment: str = "",
    properties: Optional[Sequence[Optional[Mapping[str, object]]]] = None,
) -> Structure:
    """Convenience constructor; serials are assigned 1..N in order."""
    from .elements import element_lookup

    positions = np.asarray(positions, dtype=float).reshape(len(species), 3)
    atoms = []
    for i, sp in enumerate(species):
        props = properties[i] if properties is not None else None
        atoms.append(Atom(species=sp, element=element_lookup(sp),
                          position=positions[i], serial=i + 1, properties=props))
    return Structure(atoms=tuple(atoms), lattice=lattice, comment=comment)
