"""OpenMX input (.dat) and trajectory (.md) readers.

Keywords are matched case-insensitively and '#' comments are stripped.
Coordinate rows are `serial species x y z [up down]`; initial spin counts
become spin_up/spin_down properties, and their difference the spin.
"""

from __future__ import annotations

import re
from typing import Optional

import numpy as np

from ..elements import element_lookup
from ..errors import CountMismatch, FracWithoutCell, MalformedFrame, MissingKeyword
from ..model import BOHR_TO_ANG, Atom, Lattice, Structure, Trajectory
from .xyz import read_frames

_UNIT_SCALE = {"ANG": 1.0, "AU": BOHR_TO_ANG}


def _logical_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        if "#" in line:
            line = line[:line.index("#")]
        out.append(line.rstrip())
    return out


def _keyword_value(lines: list[str], name: str) -> Optional[str]:
    pat = re.compile(rf"^\s*{re.escape(name)}\b\s*(.*)$", re.IGNORECASE)
    for line in lines:
        m = pat.match(line)
        if m:
            return m.group(1).strip()
    return None


def _block(lines: list[str], name: str) -> Optional[list[str]]:
    """Rows between `<Name` and `Name>` markers, or None when absent."""
    open_pat = re.compile(rf"^\s*<{re.escape(name)}\s*$", re.IGNORECASE)
    close_pat = re.compile(rf"^\s*{re.escape(name)}>\s*$", re.IGNORECASE)
    start = None
    for i, line in enumerate(lines):
        if open_pat.match(line):
            start = i + 1
            break
    if start is None:
        return None
    for j in range(start, len(lines)):
        if close_pat.match(lines[j]):
            return [ln for ln in lines[start:j] if ln.strip()]
    raise MissingKeyword(f"{name}> (unterminated block)")


def parse_openmx_dat(data: bytes | str) -> Structure:
    """Read an OpenMX input file into a Structure.

    Atoms.SpeciesAndCoordinates.Unit may be Ang, AU or FRAC; FRAC requires
    an Atoms.UnitVectors block. Without unit vectors the result is a
    molecule (no lattice).
    """
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
    lines = _logical_lines(text)

    natoms_str = _keyword_value(lines, "Atoms.Number")
    if natoms_str is None:
        raise MissingKeyword("Atoms.Number")
    try:
        natoms = int(natoms_str.split()[0])
    except (ValueError, IndexError):
        raise MissingKeyword(f"Atoms.Number (unreadable value {natoms_str!r})") from None

    rows = _block(lines, "Atoms.SpeciesAndCoordinates")
    if rows is None:
        raise MissingKeyword("Atoms.SpeciesAndCoordinates")
    if len(rows) != natoms:
        raise CountMismatch(
            f"Atoms.Number says {natoms} but the coordinate block has {len(rows)} rows")

    unit = (_keyword_value(lines, "Atoms.SpeciesAndCoordinates.Unit") or "Ang").split()
    unit = unit[0].upper() if unit else "ANG"

    lattice = None
    vec_rows = _block(lines, "Atoms.UnitVectors")
    if vec_rows is not None:
        if len(vec_rows) != 3:
            raise CountMismatch(f"Atoms.UnitVectors needs 3 rows, got {len(vec_rows)}")
        vunit = (_keyword_value(lines, "Atoms.UnitVectors.Unit") or "Ang").split()
        vscale = _UNIT_SCALE.get(vunit[0].upper() if vunit else "ANG")
        if vscale is None:
            raise MissingKeyword(f"Atoms.UnitVectors.Unit (unknown unit {vunit[0]!r})")
        try:
            vectors = [[float(t) * vscale for t in row.split()[:3]] for row in vec_rows]
        except ValueError:
            raise MissingKeyword("Atoms.UnitVectors (non-numeric row)") from None
        lattice = Lattice(vectors=vectors)

    if unit == "FRAC" and lattice is None:
        raise FracWithoutCell("fractional coordinates need an Atoms.UnitVectors block")
    if unit not in ("ANG", "AU", "FRAC"):
        raise MissingKeyword(f"Atoms.SpeciesAndCoordinates.Unit (unknown unit {unit!r})")

    atoms = []
    for row in rows:
        tok = row.split()
        if len(tok) < 5:
            raise CountMismatch(f"coordinate row needs serial, species and xyz: {row!r}")
        try:
            serial = int(tok[0])
            xyz = [float(t) for t in tok[2:5]]
            updown = [float(t) for t in tok[5:7]]
        except ValueError:
            raise CountMismatch(f"non-numeric field in coordinate row {row!r}") from None
        species = tok[1]
        if unit == "AU":
            position = [v * BOHR_TO_ANG for v in xyz]
        elif unit == "FRAC":
            position = np.asarray(xyz) @ lattice.vectors
        else:
            position = xyz
        props = {}
        if len(updown) == 2:
            up, down = updown
            props = {"spin_up": up, "spin_down": down, "spin": up - down}
        atoms.append(Atom(species=species, element=element_lookup(species),
                          position=position, serial=serial, properties=props or None))
    return Structure(atoms=tuple(atoms), lattice=lattice, comment="")


def parse_openmx_md(data: bytes | str) -> Trajectory:
    """Read an OpenMX .md trajectory (multi-frame XYZ layout with per-frame
    `time=` and `Energy=` annotations)."""
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data

    def error(frame_no: int, line_no: int, message: str) -> Exception:
        return MalformedFrame(frame_no, line_no, message)

    return read_frames(text, error)
