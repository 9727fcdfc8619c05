"""JSON bodies shared byte-for-byte by the CLI's --json output and the HTTP
service. Everything funnels through to_json_bytes so the two surfaces can
never drift."""

from __future__ import annotations

import json
from typing import Optional

from .bandplot import BandPlot
from .geometry import Bond, MeasurementReport
from .model import Structure, Trajectory, TriangleMesh, VolumetricGrid


def to_json_bytes(obj) -> bytes:
    return (json.dumps(obj, separators=(",", ":"), allow_nan=False) + "\n").encode()


def atom_json(a) -> dict:
    return {
        "serial": a.serial,
        "species": a.species,
        "symbol": a.element.symbol,
        "atomic_number": a.element.atomic_number,
        "position": [float(v) for v in a.position],
        "covalent_radius": a.element.covalent_radius,
        "display_radius": a.element.display_radius,
        "color": list(a.element.color),
        "properties": _props_json(a.properties),
    }


def _props_json(props) -> Optional[dict]:
    if not props:
        return None
    out = {}
    for key, val in props.items():
        if isinstance(val, tuple):
            out[key] = [float(v) for v in val]
        else:
            out[key] = float(val)
    return out


def bond_json(b: Bond) -> dict:
    return {"i": b.i, "j": b.j, "image": list(b.image), "length": b.length}


def structure_json(s: Structure, bonds: list[Bond], kind: str, frame: int,
                   frame_count: int, energy: Optional[float],
                   time: Optional[float]) -> dict:
    return {
        "kind": kind,
        "frame": frame,
        "frame_count": frame_count,
        "energy": energy,
        "time": time,
        "comment": s.comment,
        "lattice": None if s.lattice is None else [[float(v) for v in row]
                                                   for row in s.lattice.vectors],
        "atoms": [atom_json(a) for a in s.atoms],
        "bonds": [bond_json(b) for b in bonds],
    }


def measurement_json(r: MeasurementReport) -> dict:
    return {
        "picked": [{
            "serial": a.serial,
            "species": a.species,
            "symbol": a.element.symbol,
            "position": [float(v) for v in a.position],
        } for a in r.picked],
        "distances": list(r.distances),
        "angles": list(r.angles),
        "dihedral": r.dihedral,
        "degenerate": r.degenerate,
    }


def bonds_json(bonds: list[Bond], bond_factor: float) -> dict:
    return {
        "bond_factor": bond_factor,
        "count": len(bonds),
        "bonds": [bond_json(b) for b in bonds],
    }


def mesh_json(m: TriangleMesh) -> dict:
    return {
        "isovalue": m.isovalue,
        "sign": m.sign,
        "vertex_count": int(len(m.vertices)),
        "triangle_count": int(len(m.triangles)),
        "vertices": [float(v) for v in m.vertices.reshape(-1)],
        "normals": [float(v) for v in m.normals.reshape(-1)],
        "triangles": [int(v) for v in m.triangles.reshape(-1)],
    }


def band_plot_json(p: BandPlot) -> dict:
    return {
        "spin_channels": p.spin_channels,
        "n_bands": p.n_bands,
        "ticks": [{"distance": float(d), "label": label} for d, label in p.ticks],
        "e_range": [p.e_range[0], p.e_range[1]],
        "lines": [[[{"distance": [float(v) for v in poly[:, 0]],
                     "energy": [float(v) for v in poly[:, 1]]}
                    for poly in polys]
                   for polys in spin_lines]
                  for spin_lines in p.lines],
    }


def summary_json(kind: str, payload) -> dict:
    """Small upload/info summary keyed by payload type."""
    from .isosurface import default_isovalue

    if isinstance(payload, Trajectory):
        return {
            "atoms": len(payload.frames[0]),
            "frames": len(payload.frames),
            "periodic": payload.frames[0].lattice is not None,
            "has_energies": any(e is not None for e in payload.energies),
        }
    if isinstance(payload, Structure):
        return {"atoms": len(payload), "frames": 1,
                "periodic": payload.lattice is not None, "has_energies": False}
    if isinstance(payload, VolumetricGrid):
        return {
            "atoms": len(payload.atoms),
            "dims": list(payload.dims),
            "max_abs": payload.max_abs(),
            "default_isovalue": default_isovalue(payload),
        }
    # band data
    return {
        "bands": payload.n_bands,
        "spin_channels": payload.spin_channels,
        "segments": len(payload.segments),
        "chem_potential": payload.chem_potential,
    }
