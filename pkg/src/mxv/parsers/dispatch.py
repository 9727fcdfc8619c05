"""Detect-then-parse helpers used by the CLI and the HTTP service."""

from __future__ import annotations

import os

from .band import parse_band
from .cif import parse_cif
from .cube import parse_cube
from .detect import DetectedFormat, detect_format
from .openmx import parse_openmx_dat, parse_openmx_md
from .xyz import parse_xyz

_PARSERS = {
    "xyz": parse_xyz,
    "xyz_multi": parse_xyz,
    "openmx_md": parse_openmx_md,
    "cif": parse_cif,
    "openmx_dat": parse_openmx_dat,
    "cube": parse_cube,
    "band": parse_band,
}


def parse_any(filename: str, data: bytes) -> tuple[DetectedFormat, object]:
    """Detect the format of `data` and parse it; returns (format, payload).

    Payload type by kind: Trajectory for xyz/xyz_multi/openmx_md, Structure
    for cif/openmx_dat, VolumetricGrid for cube, BandData for band.
    """
    detected = detect_format(filename, data[:4096])
    payload = _PARSERS[detected.kind](data)
    return detected, payload


def load_path(path: str) -> tuple[DetectedFormat, object]:
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_any(os.path.basename(path), data)
