"""Frame/supercell selection shared by the CLI and the HTTP service."""

from __future__ import annotations

import re
from typing import Optional

from .errors import BadIndex
from .geometry import make_supercell
from .model import Structure, Trajectory


def parse_dims(text: str) -> tuple[int, int, int]:
    """Parse an AxBxC supercell spec like "2x2x1" (also accepts unicode x)."""
    m = re.fullmatch(r"\s*(\d+)\s*[x*×]\s*(\d+)\s*[x*×]\s*(\d+)\s*", str(text))
    if not m:
        raise ValueError(f"supercell spec must look like AxBxC, got {text!r}")
    dims = tuple(int(g) for g in m.groups())
    if min(dims) < 1:
        raise ValueError(f"supercell factors must be >= 1, got {text!r}")
    return dims


def frame_of(payload, frame: int) -> tuple[Structure, Optional[float], Optional[float], int]:
    """Pick a frame from a Structure/Trajectory payload.

    Returns (structure, energy, time, frame_count); negative indices count
    from the end as usual.
    """
    if isinstance(payload, Trajectory):
        n = len(payload.frames)
        if not -n <= frame < n:
            raise BadIndex(f"frame {frame} out of range for {n} frames")
        idx = frame % n
        return (payload.frames[idx], payload.energies[idx], payload.times[idx], n)
    if isinstance(payload, Structure):
        if frame not in (0, -1):
            raise BadIndex(f"frame {frame} out of range for a single structure")
        return payload, None, None, 1
    raise BadIndex(f"document holds {type(payload).__name__}, not an atomic structure")


def displayed_structure(payload, frame: int = 0,
                        supercell: tuple[int, int, int] = (1, 1, 1)):
    """Frame selection plus optional supercell expansion."""
    s, energy, time, count = frame_of(payload, frame)
    if tuple(supercell) != (1, 1, 1):
        s = make_supercell(s, *supercell)
    return s, energy, time, count
