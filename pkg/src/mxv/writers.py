"""Serializers: structures to xyz/cif/OpenMX input, meshes to OBJ/PLY,
band data to CSV, grids back to cube. All output is deterministic.

Cartesian coordinates are written with 6 decimals; fractional coordinates
use 9 so positions survive a write/parse roundtrip to 1e-6 angstrom even
for large cells.
"""

from __future__ import annotations

import re
from typing import Optional

import numpy as np

from .bandplot import assemble_band_plot
from .errors import DataError, NeedsLattice
from .geometry import cart_to_frac
from .model import BOHR_TO_ANG, HARTREE_TO_EV, BandData, Structure, TriangleMesh, VolumetricGrid

STRUCTURE_FORMATS = ("xyz", "cif", "omx_cart", "omx_frac")
MESH_FORMATS = ("obj", "ply")


def write_structure(s: Structure, format: str) -> bytes:
    """Serialize a structure; cif and omx_frac require a lattice."""
    if format == "xyz":
        text = _to_xyz(s)
    elif format == "cif":
        text = _to_cif(s)
    elif format == "omx_cart":
        text = _to_openmx(s, fractional=False)
    elif format == "omx_frac":
        text = _to_openmx(s, fractional=True)
    else:
        raise DataError(f"unknown structure format {format!r}, expected one of {STRUCTURE_FORMATS}")
    return text.encode()


def _comment_line(s: Structure) -> str:
    return s.comment.replace("\n", " ").replace("\r", " ")


def _to_xyz(s: Structure) -> str:
    comment = re.sub(r'\s*Lattice\s*=\s*"[^"]*"', "", _comment_line(s),
                     flags=re.IGNORECASE).strip()
    if s.lattice is not None:
        cell = " ".join(repr(float(v)) for v in s.lattice.vectors.reshape(-1))
        comment = (comment + " " if comment else "") + f'Lattice="{cell}"'
    lines = [str(len(s)), comment]
    for a in s.atoms:
        x, y, z = a.position
        lines.append(f"{a.species} {x:.6f} {y:.6f} {z:.6f}")
    return "\n".join(lines) + "\n"


def _to_cif(s: Structure) -> str:
    if s.lattice is None:
        raise NeedsLattice("cif output needs a lattice")
    la, lb, lc = s.lattice.lengths()
    alpha, beta, gamma = s.lattice.angles()
    lines = [
        "data_structure",
        f"_cell_length_a {la:.6f}",
        f"_cell_length_b {lb:.6f}",
        f"_cell_length_c {lc:.6f}",
        f"_cell_angle_alpha {alpha:.6f}",
        f"_cell_angle_beta {beta:.6f}",
        f"_cell_angle_gamma {gamma:.6f}",
        "_symmetry_space_group_name_H-M 'P 1'",
        "_symmetry_Int_Tables_number 1",
        "loop_",
        "_symmetry_equiv_pos_as_xyz",
        "'x, y, z'",
        "loop_",
        "_atom_site_label",
        "_atom_site_type_symbol",
        "_atom_site_fract_x",
        "_atom_site_fract_y",
        "_atom_site_fract_z",
    ]
    frac = cart_to_frac(s.positions(), s.lattice)
    for a, f in zip(s.atoms, frac):
        label = f"{a.element.symbol}{a.serial}"
        lines.append(f"{label} {a.species} {f[0]:.9f} {f[1]:.9f} {f[2]:.9f}")
    return "\n".join(lines) + "\n"


def _to_openmx(s: Structure, fractional: bool) -> str:
    if fractional and s.lattice is None:
        raise NeedsLattice("fractional OpenMX output needs a lattice")
    lines = [
        "# generated by mxv; spin columns default to 0.0/0.0 when the",
        "# structure carries no spin data",
        "",
        f"Atoms.Number  {len(s)}",
        "",
        "<Definition.of.Atomic.Species",
    ]
    seen = []
    for a in s.atoms:
        if a.species not in seen:
            seen.append(a.species)
            sym = a.element.symbol
            lines.append(f"  {a.species}  {sym}7.0-s2p2d1  {sym}_PBE19")
    lines.append("Definition.of.Atomic.Species>")
    lines.append("")
    unit = "FRAC" if fractional else "Ang"
    lines.append(f"Atoms.SpeciesAndCoordinates.Unit  {unit}")
    lines.append("<Atoms.SpeciesAndCoordinates")
    if fractional:
        coords = cart_to_frac(s.positions(), s.lattice)
        fmt = "{:.9f}"
    else:
        coords = s.positions()
        fmt = "{:.6f}"
    for a, pos in zip(s.atoms, coords):
        props = a.properties or {}
        up = props.get("spin_up", 0.0)
        down = props.get("spin_down", 0.0)
        xyz = " ".join(fmt.format(v) for v in pos)
        lines.append(f"  {a.serial} {a.species} {xyz} {up} {down}")
    lines.append("Atoms.SpeciesAndCoordinates>")
    if s.lattice is not None:
        lines.append("")
        lines.append("Atoms.UnitVectors.Unit  Ang")
        lines.append("<Atoms.UnitVectors")
        for row in s.lattice.vectors:
            lines.append("  " + " ".join(f"{v:.6f}" for v in row))
        lines.append("Atoms.UnitVectors>")
    return "\n".join(lines) + "\n"


def write_mesh(mesh, format: str) -> bytes:
    """Serialize a TriangleMesh or a (positive, negative) pair.

    OBJ carries the pair as two named groups; PLY merges them into one
    element block (group ranges noted in comments). An empty mesh still
    produces a valid zero-face file.
    """
    if isinstance(mesh, TriangleMesh):
        meshes = [mesh]
    else:
        meshes = list(mesh)
    if format == "obj":
        return _to_obj(meshes).encode()
    if format == "ply":
        return _to_ply(meshes).encode()
    raise DataError(f"unknown mesh format {format!r}, expected one of {MESH_FORMATS}")


def _to_obj(meshes: list[TriangleMesh]) -> str:
    lines = []
    base = 1
    for m in meshes:
        lines.append(f"g {m.sign}")
        for v in m.vertices:
            lines.append(f"v {v[0]:.6f} {v[1]:.6f} {v[2]:.6f}")
        for n in m.normals:
            lines.append(f"vn {n[0]:.6f} {n[1]:.6f} {n[2]:.6f}")
        for t in m.triangles:
            a, b, c = (int(i) + base for i in t)
            lines.append(f"f {a}//{a} {b}//{b} {c}//{c}")
        base += len(m.vertices)
    return "\n".join(lines) + "\n"


def _to_ply(meshes: list[TriangleMesh]) -> str:
    nv = sum(len(m.vertices) for m in meshes)
    nf = sum(len(m.triangles) for m in meshes)
    lines = [
        "ply",
        "format ascii 1.0",
    ]
    base = 0
    for m in meshes:
        lines.append(f"comment group {m.sign}: {len(m.vertices)} vertices from index {base}")
        base += len(m.vertices)
    lines += [
        f"element vertex {nv}",
        "property float x",
        "property float y",
        "property float z",
        "property float nx",
        "property float ny",
        "property float nz",
        f"element face {nf}",
        "property list uchar int vertex_indices",
        "end_header",
    ]
    for m in meshes:
        for v, n in zip(m.vertices, m.normals):
            lines.append(f"{v[0]:.6f} {v[1]:.6f} {v[2]:.6f} {n[0]:.6f} {n[1]:.6f} {n[2]:.6f}")
    base = 0
    for m in meshes:
        for t in m.triangles:
            lines.append(f"3 {int(t[0]) + base} {int(t[1]) + base} {int(t[2]) + base}")
        base += len(m.vertices)
    return "\n".join(lines) + "\n"


def write_band_table(b: BandData, emin: Optional[float] = None,
                     emax: Optional[float] = None) -> bytes:
    """CSV of (distance, spin, band, energy_eV), Fermi level at zero.

    The leading comment row lists the segment-endpoint labels and their
    distances; emin/emax (eV) filter rows when given.
    """
    plot = assemble_band_plot(b)
    ticks = " ".join(f"{label}={dist!r}" for dist, label in plot.ticks)
    lines = [f"# ticks: {ticks}", "distance,spin,band,energy_ev"]
    for spin, spin_lines in enumerate(plot.lines):
        for band, polys in enumerate(spin_lines):
            for poly in polys:
                for d, e in poly:
                    if emin is not None and e < emin:
                        continue
                    if emax is not None and e > emax:
                        continue
                    lines.append(f"{float(d)!r},{spin},{band},{float(e)!r}")
    return ("\n".join(lines) + "\n").encode()


def write_cube(g: VolumetricGrid, comment: str = "written by mxv") -> bytes:
    """Serialize a grid in cube format (bohr units, positive grid counts)."""
    inv = 1.0 / BOHR_TO_ANG
    lines = [comment, "values ordered with the third index fastest"]
    o = g.origin * inv
    lines.append(f"{len(g.atoms):5d} {o[0]:.12E} {o[1]:.12E} {o[2]:.12E}")
    for n, e in zip(g.dims, g.steps):
        ev = e * inv
        lines.append(f"{n:5d} {ev[0]:.12E} {ev[1]:.12E} {ev[2]:.12E}")
    for a in g.atoms:
        p = a.position * inv
        charge = (a.properties or {}).get("net_charge", float(a.element.atomic_number))
        lines.append(f"{a.element.atomic_number:5d} {charge:.6f} "
                     f"{p[0]:.12E} {p[1]:.12E} {p[2]:.12E}")
    flat = g.values.reshape(-1)
    for i in range(0, len(flat), 6):
        lines.append(" ".join(f"{v:.12E}" for v in flat[i:i + 6]))
    return ("\n".join(lines) + "\n").encode()
