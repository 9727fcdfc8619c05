"""mxv: crystalline/molecular structure toolkit.

Parsers for XYZ, CIF, OpenMX input/trajectory, Gaussian cube and band
files; structural geometry (supercells, bonds, measurements); isosurface
extraction under an affine lattice transform; band-plot assembly; plus a
CLI (`mxv`) and a local HTTP service backing the bundled web viewer.
"""

__version__ = "0.1.0"

from .model import (
    BOHR_TO_ANG,
    HARTREE_TO_EV,
    Atom,
    BandData,
    BandSegment,
    Element,
    Lattice,
    Structure,
    Trajectory,
    TriangleMesh,
    VolumetricGrid,
)
from .elements import element_from_number, element_lookup

__all__ = [
    "BOHR_TO_ANG",
    "HARTREE_TO_EV",
    "Atom",
    "BandData",
    "BandSegment",
    "Element",
    "Lattice",
    "Structure",
    "Trajectory",
    "TriangleMesh",
    "VolumetricGrid",
    "element_from_number",
    "element_lookup",
    "__version__",
]
