"""OpenMX band-file reader.

Layout: `n_bands spin_switch chem_potential`; nine reciprocal-vector
components (bohr^-1); the segment count; one line per segment with
`n_points k_start(3) k_end(3) label_start label_end`; then for every
segment and k-point, per spin channel, a `n_bands k(3)` record followed by
n_bands eigenvalues in hartree wrapped over any number of lines.
"""

from __future__ import annotations

import numpy as np

from ..errors import BandCountMismatch, TruncatedBand
from ..model import BandData, BandSegment


def _tokens_from(lines, start):
    for ln in lines[start:]:
        yield from ln.split()


def parse_band(data: bytes | str) -> BandData:
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 3:
        raise TruncatedBand("file ends inside the header")

    tok = lines[0].split()
    if len(tok) < 3:
        raise TruncatedBand(f"first line needs n_bands, spin switch and chemical potential: {lines[0]!r}")
    try:
        n_bands = int(tok[0])
        spin_switch = int(tok[1])
        chem_potential = float(tok[2])
    except ValueError:
        raise TruncatedBand(f"bad header line {lines[0]!r}") from None
    if spin_switch not in (0, 1):
        raise TruncatedBand(f"unsupported spin switch {spin_switch} (0 or 1 expected)")
    spin_channels = 2 if spin_switch == 1 else 1

    tok = lines[1].split()
    if len(tok) != 9:
        raise TruncatedBand(f"reciprocal-vector line needs 9 numbers, got {len(tok)}")
    try:
        reciprocal = np.array([float(t) for t in tok]).reshape(3, 3)
    except ValueError:
        raise TruncatedBand(f"bad reciprocal vectors {lines[1]!r}") from None

    try:
        n_segments = int(lines[2].split()[0])
    except (ValueError, IndexError):
        raise TruncatedBand(f"bad segment count line {lines[2]!r}") from None
    if len(lines) < 3 + n_segments:
        raise TruncatedBand("file ends inside the segment table")

    seg_meta = []
    for s in range(n_segments):
        tok = lines[3 + s].split()
        if len(tok) < 9:
            raise TruncatedBand(f"segment line needs n, k_start, k_end and labels: {lines[3 + s]!r}")
        try:
            npts = int(tok[0])
            k_start = [float(t) for t in tok[1:4]]
            k_end = [float(t) for t in tok[4:7]]
        except ValueError:
            raise TruncatedBand(f"bad segment line {lines[3 + s]!r}") from None
        labels = [t.strip("'\"") for t in tok[7:9]] if len(tok) >= 9 else ["", ""]
        seg_meta.append((npts, k_start, k_end, labels[0], labels[1]))

    cursor = _tokens_from(lines, 3 + n_segments)

    def take(what: str) -> str:
        try:
            return next(cursor)
        except StopIteration:
            raise TruncatedBand(f"file ends while reading {what}") from None

    segments = []
    for s, (npts, k_start, k_end, l0, l1) in enumerate(seg_meta):
        kpoints = np.zeros((npts, 3))
        eig = np.zeros((spin_channels, npts, n_bands))
        for p in range(npts):
            for spin in range(spin_channels):
                where = f"segment {s + 1}, k-point {p + 1}, spin {spin}"
                try:
                    nb = int(take(where))
                    k = [float(take(where)) for _ in range(3)]
                except ValueError:
                    raise TruncatedBand(f"bad k-point record at {where}") from None
                if nb != n_bands:
                    raise BandCountMismatch(
                        f"{where}: record says {nb} bands, header says {n_bands}")
                if spin == 0:
                    kpoints[p] = k
                try:
                    eig[spin, p] = [float(take(where)) for _ in range(n_bands)]
                except ValueError:
                    raise TruncatedBand(f"bad eigenvalue at {where}") from None
        segments.append(BandSegment(
            n_points=npts, k_start=np.array(k_start), k_end=np.array(k_end),
            label_start=l0, label_end=l1, kpoints=kpoints, eigenvalues=eig))

    return BandData(n_bands=n_bands, spin_channels=spin_channels,
                    chem_potential=chem_potential, reciprocal=reciprocal,
                    segments=tuple(segments))
