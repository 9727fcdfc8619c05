"""Kernel backend selection.

Imports the compiled extension when available; otherwise (or when
MXV_PURE_PYTHON=1 is set) falls back to the NumPy implementation. Both
backends are contractually bitwise-identical, so the choice is invisible
apart from speed.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("MXV_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

backend = _impl.backend
marching_cubes = _impl.marching_cubes
marching_tetrahedra = _impl.marching_tetrahedra
surface_nets = _impl.surface_nets
vertex_normals = _impl.vertex_normals
bond_search = _impl.bond_search
