"""File-format readers: XYZ, CIF, OpenMX input/trajectory, cube, band."""

from .band import parse_band
from .cif import lattice_from_parameters, parse_cif, parse_symmetry_op, SymmetryOp
from .cube import parse_cube
from .detect import DetectedFormat, detect_format
from .openmx import parse_openmx_dat, parse_openmx_md
from .xyz import parse_xyz
from .dispatch import parse_any, load_path

__all__ = [
    "DetectedFormat",
    "SymmetryOp",
    "detect_format",
    "lattice_from_parameters",
    "load_path",
    "parse_any",
    "parse_band",
    "parse_cif",
    "parse_cube",
    "parse_openmx_dat",
    "parse_openmx_md",
    "parse_symmetry_op",
    "parse_xyz",
]
