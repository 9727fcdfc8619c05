"""Coordinate conversions, supercells, bond detection and measurements."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import (
    BadIndex,
    CellTooSmall,
    DegenerateGeometry,
    DuplicatePick,
    NeedsLattice,
    SingularLattice,
)
from .model import Atom, Lattice, Structure

BOND_MIN_DIST = 0.4  # angstrom; floor against spurious bonds between overlapping atoms


def frac_to_cart(frac, lattice: Lattice) -> np.ndarray:
    """Cartesian position of fractional coordinates: c = f·vectors."""
    return np.asarray(frac, dtype=float) @ lattice.vectors


def cart_to_frac(cart, lattice: Lattice) -> np.ndarray:
    try:
        inv = np.linalg.inv(lattice.vectors)
    except np.linalg.LinAlgError:
        raise SingularLattice("cannot invert lattice vectors") from None
    return np.asarray(cart, dtype=float) @ inv


def make_supercell(s: Structure, na: int, nb: int, nc: int) -> Structure:
    """Replicate over all translations p·a1 + q·a2 + r·a3, 0 <= p < na etc.

    Serials are renumbered 1..N·na·nb·nc in (original atom, p, q, r) order;
    per-atom properties are carried to every copy.
    """
    if s.lattice is None:
        raise NeedsLattice("supercell requires a lattice")
    if min(na, nb, nc) < 1:
        raise ValueError(f"supercell factors must be >= 1, got {(na, nb, nc)}")
    a1, a2, a3 = s.lattice.vectors
    atoms = []
    serial = 1
    for atom in s.atoms:
        for p in range(na):
            for q in range(nb):
                for r in range(nc):
                    atoms.append(Atom(
                        species=atom.species,
                        element=atom.element,
                        position=atom.position + (p * a1 + q * a2 + r * a3),
                        serial=serial,
                        properties=atom.properties,
                    ))
                    serial += 1
    lattice = Lattice(vectors=np.array([na * a1, nb * a2, nc * a3]))
    return Structure(atoms=tuple(atoms), lattice=lattice, comment=s.comment)


@dataclass(frozen=True)
class Bond:
    """Bond between atoms i and j (0-based indices, i < j); `image` is the
    integer lattice translation applied to atom j."""

    i: int
    j: int
    image: tuple[int, int, int]
    length: float


def detect_bonds(s: Structure, bond_factor: float = 1.0) -> list[Bond]:
    """Bonds where 0.4 A < d <= bond_factor·(r_cov_i + r_cov_j).

    Periodic structures include neighbor images with offsets in {-1,0,1}^3;
    that window is only valid while no cell edge is shorter than the largest
    cutoff, which is checked, not assumed. Output is sorted by (i, j, image)
    and independent of the backend's traversal order.
    """
    if bond_factor <= 0:
        raise ValueError(f"bond factor must be > 0, got {bond_factor}")
    if len(s) == 0:
        return []
    positions = s.positions()
    radii = np.array([a.element.covalent_radius for a in s.atoms])
    lattice = None
    if s.lattice is not None:
        lattice = np.asarray(s.lattice.vectors)
        maxcut = bond_factor * 2.0 * float(radii.max())
        shortest = float(np.linalg.norm(lattice, axis=1).min())
        if shortest < maxcut:
            raise CellTooSmall(
                f"cell edge {shortest:.3f} A is shorter than the largest bond "
                f"cutoff {maxcut:.3f} A; adjacent-image search would miss bonds")
    ii, jj, images, lengths = kernels.bond_search(
        positions, radii, float(bond_factor), lattice, BOND_MIN_DIST)
    return [Bond(int(a), int(b), (int(m[0]), int(m[1]), int(m[2])), float(d))
            for a, b, m, d in zip(ii, jj, images, lengths)]


def distance(p1, p2) -> float:
    d = np.asarray(p2, dtype=float) - np.asarray(p1, dtype=float)
    return float(np.linalg.norm(d))


def angle(p1, p2, p3) -> float:
    """Angle at vertex p2, in degrees."""
    u = np.asarray(p1, dtype=float) - np.asarray(p2, dtype=float)
    v = np.asarray(p3, dtype=float) - np.asarray(p2, dtype=float)
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise DegenerateGeometry("angle arm has zero length")
    cos = float(np.dot(u, v) / (nu * nv))
    return math.degrees(math.acos(min(1.0, max(-1.0, cos))))


def dihedral(p1, p2, p3, p4) -> float:
    """Signed dihedral angle in degrees, range (-180, 180].

    Right-hand convention about the p2->p3 axis: trans chains give 180,
    eclipsed give 0. Collinear arms have no defined plane and raise.
    """
    pts = [np.asarray(p, dtype=float) for p in (p1, p2, p3, p4)]
    b1 = pts[1] - pts[0]
    b2 = pts[2] - pts[1]
    b3 = pts[3] - pts[2]
    n1 = np.cross(b1, b2)
    n2 = np.cross(b2, b3)
    nb2 = np.linalg.norm(b2)
    if nb2 == 0.0:
        raise DegenerateGeometry("central dihedral bond has zero length")
    scale = 1e-10 * max(np.linalg.norm(b1) * nb2, nb2 * np.linalg.norm(b3))
    if np.linalg.norm(n1) <= scale or np.linalg.norm(n2) <= scale:
        raise DegenerateGeometry("dihedral arms are collinear with the axis")
    y = nb2 * float(np.dot(b1, np.cross(b2, b3)))
    x = float(np.dot(n1, n2))
    deg = math.degrees(math.atan2(y, x))
    return 180.0 if deg == -180.0 else deg


@dataclass(frozen=True)
class MeasurementReport:
    """Measurements over up to four picked atoms, in pick order: consecutive
    pair distances, consecutive triple angles, and the 1-2-3-4 dihedral.
    Entries with degenerate geometry are None, with the reason recorded."""

    picked: tuple[Atom, ...]
    distances: tuple[float, ...]
    angles: tuple[Optional[float], ...]
    dihedral: Optional[float]
    degenerate: dict[str, str]


def measure_selection(s: Structure, picks: Sequence[int]) -> MeasurementReport:
    """Measure a pick sequence of 1..4 atom serials (order = pick order)."""
    if not 1 <= len(picks) <= 4:
        raise BadIndex(f"need 1..4 picked atoms, got {len(picks)}")
    seen = set()
    for p in picks:
        if p in seen:
            raise DuplicatePick(f"atom {p} picked twice")
        seen.add(p)
    by_serial = {a.serial: a for a in s.atoms}
    try:
        atoms = tuple(by_serial[int(p)] for p in picks)
    except KeyError as exc:
        raise BadIndex(f"no atom with serial {exc.args[0]}") from None

    pos = [a.position for a in atoms]
    distances = tuple(distance(pos[i], pos[i + 1]) for i in range(len(pos) - 1))
    degenerate: dict[str, str] = {}
    angles: list[Optional[float]] = []
    for i in range(len(pos) - 2):
        try:
            angles.append(angle(pos[i], pos[i + 1], pos[i + 2]))
        except DegenerateGeometry as exc:
            angles.append(None)
            degenerate[f"angle_{i + 1}"] = str(exc)
    dih: Optional[float] = None
    if len(pos) == 4:
        try:
            dih = dihedral(*pos)
        except DegenerateGeometry as exc:
            degenerate["dihedral"] = str(exc)
    return MeasurementReport(picked=atoms, distances=distances,
                             angles=tuple(angles), dihedral=dih,
                             degenerate=degenerate)
