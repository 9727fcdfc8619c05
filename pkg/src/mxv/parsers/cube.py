"""Gaussian cube reader.

Header: two comment lines; `natoms origin_x origin_y origin_z`; three
`n_i e_ix e_iy e_iz` voxel lines; one row per atom `Z charge x y z`. Values
follow whitespace-separated with the third index fastest. Positive grid
counts mean lengths are in bohr, negative counts mean angstrom; a negative
atom count announces a dataset-id line after the atoms (only a single
dataset is accepted). Everything is converted to angstrom on ingest.
"""

from __future__ import annotations

import numpy as np

from ..elements import element_from_number
from ..errors import BadHeader, MultiOrbitalUnsupported, TruncatedData
from ..model import BOHR_TO_ANG, Atom, VolumetricGrid


def _floats(tokens, count, what):
    try:
        vals = [float(t) for t in tokens[:count]]
    except ValueError:
        raise BadHeader(f"non-numeric {what}: {tokens!r}") from None
    if len(vals) < count:
        raise BadHeader(f"{what} needs {count} numbers, got {len(vals)}")
    return vals


def parse_cube(data: bytes | str) -> VolumetricGrid:
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
    lines = text.splitlines()
    if len(lines) < 6:
        raise BadHeader(f"cube header needs at least 6 lines, got {len(lines)}")

    tok = lines[2].split()
    if not tok:
        raise BadHeader("missing atom-count line")
    try:
        natoms_signed = int(tok[0])
    except ValueError:
        raise BadHeader(f"bad atom count {tok[0]!r}") from None
    origin = np.array(_floats(tok[1:], 3, "origin"))
    has_dataset_ids = natoms_signed < 0
    natoms = abs(natoms_signed)

    dims = []
    steps = []
    for ln in lines[3:6]:
        tok = ln.split()
        if not tok:
            raise BadHeader("missing voxel line")
        try:
            n = int(tok[0])
        except ValueError:
            raise BadHeader(f"bad grid count {tok[0]!r}") from None
        dims.append(n)
        steps.append(_floats(tok[1:], 3, "voxel vector"))
    scale = BOHR_TO_ANG if dims[0] > 0 else 1.0
    dims = [abs(n) for n in dims]
    if min(dims) < 1:
        raise BadHeader(f"grid counts must be nonzero, got {dims}")
    origin = origin * scale
    steps = np.array(steps) * scale

    cursor = 6
    atoms = []
    if len(lines) < cursor + natoms:
        raise BadHeader(f"cube ends inside the {natoms}-atom block")
    for i in range(natoms):
        tok = lines[cursor + i].split()
        if len(tok) < 5:
            raise BadHeader(f"atom row needs 5 numbers: {lines[cursor + i]!r}")
        try:
            z = int(float(tok[0]))
        except ValueError:
            raise BadHeader(f"bad atomic number {tok[0]!r}") from None
        charge = _floats(tok[1:2], 1, "atom charge")[0]
        pos = np.array(_floats(tok[2:], 3, "atom position")) * scale
        element = element_from_number(z)
        atoms.append(Atom(species=element.symbol, element=element, position=pos,
                          serial=i + 1, properties={"net_charge": charge}))
    cursor += natoms

    if has_dataset_ids:
        tok = lines[cursor].split() if cursor < len(lines) else []
        if not tok:
            raise BadHeader("missing dataset-id line after atom block")
        try:
            m = int(tok[0])
        except ValueError:
            raise BadHeader(f"bad dataset count {tok[0]!r}") from None
        if m != 1:
            raise MultiOrbitalUnsupported(
                f"cube carries {m} datasets; only single-dataset files are supported")
        # the id list may wrap onto further lines; consume m ids
        ids = tok[1:]
        cursor += 1
        while len(ids) < m and cursor < len(lines):
            ids.extend(lines[cursor].split())
            cursor += 1

    expected = dims[0] * dims[1] * dims[2]
    flat = " ".join(lines[cursor:]).split()
    if len(flat) != expected:
        raise TruncatedData(expected, len(flat))
    try:
        values = np.array(flat, dtype=float).reshape(dims)
    except ValueError:
        raise TruncatedData(expected, len(flat)) from None
    return VolumetricGrid(origin=origin, steps=steps, values=values, atoms=tuple(atoms))
