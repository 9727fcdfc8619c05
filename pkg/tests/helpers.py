"""Shared fixture builders and independent oracles used across the suite."""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

from mxv.model import Lattice, Structure, VolumetricGrid, structure_from_arrays

DIAMOND_A = 5.43
DIAMOND_FRAC = np.array([
    (0.00, 0.00, 0.00), (0.00, 0.50, 0.50), (0.50, 0.00, 0.50), (0.50, 0.50, 0.00),
    (0.25, 0.25, 0.25), (0.25, 0.75, 0.75), (0.75, 0.25, 0.75), (0.75, 0.75, 0.25),
])


def diamond_structure(a: float = DIAMOND_A) -> Structure:
    """Hand-built 8-atom conventional diamond cell."""
    lattice = Lattice(vectors=np.eye(3) * a)
    return structure_from_arrays(["Si"] * 8, DIAMOND_FRAC * a, lattice=lattice,
                                 comment="Si conventional cell")


def diamond_xyz_bytes(a: float = DIAMOND_A, with_lattice: bool = True) -> bytes:
    from mxv.writers import write_structure

    s = diamond_structure(a)
    if not with_lattice:
        s = Structure(atoms=s.atoms, lattice=None, comment=s.comment)
    return write_structure(s, "xyz")


def diamond_dat_bytes(a: float = DIAMOND_A) -> bytes:
    rows = "".join(
        f" {i + 1} Si {f[0]} {f[1]} {f[2]} 2.0 2.0\n"
        for i, f in enumerate(DIAMOND_FRAC))
    return (f"Atoms.Number  8\n"
            f"Atoms.SpeciesAndCoordinates.Unit   FRAC\n"
            f"<Atoms.SpeciesAndCoordinates\n{rows}"
            f"Atoms.SpeciesAndCoordinates>\n"
            f"Atoms.UnitVectors.Unit  Ang\n"
            f"<Atoms.UnitVectors\n"
            f"  {a} 0.0 0.0\n  0.0 {a} 0.0\n  0.0 0.0 {a}\n"
            f"Atoms.UnitVectors>\n").encode()


# --- Fd-3m operator generation (independent of the CIF parser) ---

def _signed_permutations():
    mats = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            m = np.zeros((3, 3), dtype=int)
            for row, (col, sg) in enumerate(zip(perm, signs)):
                m[row, col] = sg
            mats.append(m)
    return mats


def fd3m_operator_strings() -> list[str]:
    """All 192 symmetry operators of the diamond structure, derived
    numerically: signed permutations combined with quarter translations that
    map the 8-site set onto itself (mod 1)."""
    sites = DIAMOND_FRAC
    quarters = [k / 4.0 for k in range(4)]
    ops = []
    for rot in _signed_permutations():
        for tx in quarters:
            for ty in quarters:
                for tz in quarters:
                    t = np.array([tx, ty, tz])
                    mapped = (sites @ rot.T + t) % 1.0
                    ok = True
                    for m in mapped:
                        d = np.abs(sites - m)
                        d = np.minimum(d, 1 - d)
                        if not np.any(np.all(d < 1e-9, axis=1)):
                            ok = False
                            break
                    if ok:
                        ops.append((rot, t))
    assert len(ops) == 192, f"expected 192 operators, derived {len(ops)}"
    return [_op_to_xyz(rot, t) for rot, t in ops]


def _op_to_xyz(rot: np.ndarray, trans: np.ndarray) -> str:
    frac_names = {0.0: "", 0.25: "1/4", 0.5: "1/2", 0.75: "3/4"}
    parts = []
    for row in range(3):
        term = ""
        for col, axis in enumerate("xyz"):
            if rot[row, col] == 1:
                term += f"+{axis}"
            elif rot[row, col] == -1:
                term += f"-{axis}"
        tname = frac_names[round(float(trans[row]) % 1.0, 6)]
        if tname:
            term += f"+{tname}"
        parts.append(term.lstrip("+") or "0")
    return ", ".join(parts)


def fd3m_cif_text(shuffle_seed=None) -> str:
    ops = fd3m_operator_strings()
    if shuffle_seed is not None:
        rng = np.random.default_rng(shuffle_seed)
        ops = [ops[i] for i in rng.permutation(len(ops))]
    op_lines = "\n".join(f"'{op}'" for op in ops)
    return f"""data_si_diamond
_cell_length_a {DIAMOND_A}
_cell_length_b {DIAMOND_A}
_cell_length_c {DIAMOND_A}
_cell_angle_alpha 90
_cell_angle_beta 90
_cell_angle_gamma 90
_symmetry_space_group_name_H-M 'F d -3 m'
_symmetry_Int_Tables_number 227
loop_
_symmetry_equiv_pos_as_xyz
{op_lines}
loop_
_atom_site_label
_atom_site_type_symbol
_atom_site_fract_x
_atom_site_fract_y
_atom_site_fract_z
Si1 Si 0.0 0.0 0.0
"""


# --- volumetric fixtures ---

def sphere_grid(n: int = 64, radius_vox: float | None = None,
                step: float = 0.25) -> VolumetricGrid:
    """f = R - |p - center| sampled on an n^3 grid (positive inside)."""
    if radius_vox is None:
        radius_vox = 0.38 * n
    ax = np.arange(n)
    X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
    c = (n - 1) / 2.0
    f = radius_vox - np.sqrt((X - c) ** 2 + (Y - c) ** 2 + (Z - c) ** 2)
    return VolumetricGrid(origin=(0, 0, 0), steps=np.eye(3) * step, values=f)


def localized_periodic_grid(n: int = 48) -> VolumetricGrid:
    """Periodic bump that vanishes at every cell boundary plane, so its
    isosurfaces stay away from copy seams under tiling."""
    ax = np.arange(n)
    X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
    c = (n - 1) / 2.0
    f = (0.5 * (1 + np.cos(2 * np.pi * (X - c) / n))
         * 0.5 * (1 + np.cos(2 * np.pi * (Y - c) / n))
         * 0.5 * (1 + np.cos(2 * np.pi * (Z - c) / n)))
    return VolumetricGrid(origin=(0, 0, 0), steps=np.eye(3) * 0.3, values=f)


# --- independent oracles ---

def brute_force_bonds(s: Structure, factor: float, min_dist: float = 0.4):
    """All-pairs, all-images reference for detect_bonds (O(N^2), no binning)."""
    out = set()
    lengths = {}
    pos = s.positions()
    radii = [a.element.covalent_radius for a in s.atoms]
    images = [(0, 0, 0)]
    if s.lattice is not None:
        images = list(itertools.product((-1, 0, 1), repeat=3))
    vectors = s.lattice.vectors if s.lattice is not None else np.zeros((3, 3))
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            for img in images:
                shift = img[0] * vectors[0] + img[1] * vectors[1] + img[2] * vectors[2]
                d = float(np.linalg.norm(pos[j] + shift - pos[i]))
                if min_dist < d <= factor * (radii[i] + radii[j]):
                    out.add((i, j, img))
                    lengths[(i, j, img)] = d
    return out, lengths


def edge_use_counts(triangles: np.ndarray) -> Counter:
    """How many triangles use each undirected edge (watertight => all 2)."""
    counts: Counter = Counter()
    for a, b, c in triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            counts[frozenset((int(u), int(v)))] += 1
    return counts


def directed_edges_balanced(triangles: np.ndarray) -> bool:
    """Consistent winding: each undirected edge appears once per direction."""
    directed = Counter()
    for a, b, c in triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            directed[(int(u), int(v))] += 1
    return all(directed[(v, u)] == n for (u, v), n in directed.items())


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
