"""XYZ reader, single- and multi-frame, shared by the trajectory formats.

Frame layout: a line with the atom count, a comment line, then one row per
atom: `Symbol x y z [extra numeric columns]`. Columns 5-7 are stored as a
velocity triple and 8-10 as a force triple when present. Comment lines are
scanned for `time=<fs>` and `Energy=<hartree>` key=value pairs.
"""

from __future__ import annotations

import re
from typing import Callable, Optional

from ..elements import element_lookup
from ..errors import MalformedXYZ
from ..model import Atom, Lattice, Structure, Trajectory

_KEYVAL = re.compile(r"([A-Za-z_]\w*)\s*=\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eEdD][-+]?\d+)?)")
_LATTICE = re.compile(r'Lattice\s*=\s*"([^"]+)"', re.IGNORECASE)


def _to_float(tok: str) -> float:
    return float(tok.replace("d", "e").replace("D", "E"))


def scan_comment(comment: str) -> tuple[Optional[float], Optional[float]]:
    """Extract (time_fs, energy_hartree) from a frame comment, if present."""
    time = energy = None
    for key, val in _KEYVAL.findall(comment):
        k = key.lower()
        if k == "time":
            time = _to_float(val)
        elif k == "energy":
            energy = _to_float(val)
    return time, energy


def scan_lattice(comment: str) -> Optional[Lattice]:
    """Read an extended-XYZ style Lattice="ax ay az bx ..." cell, if any."""
    m = _LATTICE.search(comment)
    if m is None:
        return None
    tok = m.group(1).split()
    if len(tok) != 9:
        return None
    try:
        values = [_to_float(t) for t in tok]
    except ValueError:
        return None
    return Lattice(vectors=[values[0:3], values[3:6], values[6:9]])


def read_frames(text: str, error: Callable[[int, int, str], Exception]) -> Trajectory:
    """Parse repeated count/comment/rows frames.

    `error(frame_no, line_no, message)` builds the exception to raise; frame
    and line numbers are 1-based.
    """
    lines = text.splitlines()
    frames: list[Structure] = []
    energies: list[Optional[float]] = []
    times: list[Optional[float]] = []
    i = 0
    while i < len(lines):
        if not lines[i].strip():
            i += 1
            continue
        frame_no = len(frames) + 1
        tok = lines[i].split()
        if len(tok) != 1:
            raise error(frame_no, i + 1, f"expected an atom count, got {lines[i]!r}")
        try:
            natoms = int(tok[0])
        except ValueError:
            raise error(frame_no, i + 1, f"bad atom count {tok[0]!r}") from None
        if natoms < 1:
            raise error(frame_no, i + 1, f"atom count must be >= 1, got {natoms}")
        if i + 1 >= len(lines):
            raise error(frame_no, i + 2, "missing comment line")
        comment = lines[i + 1]
        rows = lines[i + 2: i + 2 + natoms]
        if len(rows) < natoms:
            raise error(frame_no, len(lines), f"frame needs {natoms} atom rows, file ended after {len(rows)}")
        atoms = []
        for r, row in enumerate(rows):
            line_no = i + 3 + r
            tok = row.split()
            if len(tok) < 4:
                raise error(frame_no, line_no, f"atom row needs symbol + 3 coordinates, got {row!r}")
            if not tok[0][:1].isalpha():
                raise error(frame_no, line_no, f"expected an element symbol, got {tok[0]!r}")
            try:
                x, y, z = (_to_float(t) for t in tok[1:4])
                extras = [_to_float(t) for t in tok[4:]]
            except ValueError:
                raise error(frame_no, line_no, f"non-numeric coordinate in {row!r}") from None
            props = {}
            if len(extras) >= 3:
                props["velocity"] = tuple(extras[0:3])
            if len(extras) >= 6:
                props["force"] = tuple(extras[3:6])
            atoms.append(Atom(species=tok[0], element=element_lookup(tok[0]),
                              position=(x, y, z), serial=r + 1,
                              properties=props or None))
        frames.append(Structure(atoms=tuple(atoms), lattice=scan_lattice(comment),
                                comment=comment.strip()))
        t, e = scan_comment(comment)
        times.append(t)
        energies.append(e)
        i += 2 + natoms
    if not frames:
        raise error(1, 1, "no frames found")
    return Trajectory(frames=tuple(frames), energies=tuple(energies), times=tuple(times))


def parse_xyz(data: bytes | str) -> Trajectory:
    """Parse XYZ text; multi-frame files become multi-frame trajectories."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data

    def error(frame_no: int, line_no: int, message: str) -> Exception:
        return MalformedXYZ(line_no, message)

    return read_frames(text, error)
