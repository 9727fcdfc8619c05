"""Band-structure plot assembly: cumulative k-distance, Fermi-zeroed
energies, axis tick labels, and energy-window clipping."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyWindow
from .model import HARTREE_TO_EV, BandData

# polyline: (P, 2) array of (distance bohr^-1, energy eV)
Polyline = np.ndarray


@dataclass(frozen=True)
class BandPlot:
    """Plot-ready band data. `lines[spin][band]` is a list of polylines
    (one per path segment; window clipping may split them further); energies
    are eV relative to the chemical potential."""

    spin_channels: int
    n_bands: int
    lines: tuple            # lines[spin][band] -> list of (P, 2) arrays
    ticks: tuple            # ((distance, label), ...)
    e_range: tuple          # (min_eV, max_eV)


def assemble_band_plot(b: BandData) -> BandPlot:
    """Flatten segments onto one continuous distance axis with the Fermi
    level (chemical potential) at zero."""
    seg_dists = []
    offset = 0.0
    ticks: list[tuple[float, str]] = []
    for seg in b.segments:
        k_cart = seg.kpoints @ b.reciprocal
        if seg.n_points > 1:
            steps = np.linalg.norm(np.diff(k_cart, axis=0), axis=1)
            dist = offset + np.concatenate([[0.0], np.cumsum(steps)])
        else:
            dist = np.array([offset])
        seg_dists.append(dist)
        if ticks and abs(ticks[-1][0] - offset) < 1e-12:
            prev_d, prev_label = ticks[-1]
            if seg.label_start and seg.label_start != prev_label:
                merged = f"{prev_label}|{seg.label_start}" if prev_label else seg.label_start
                ticks[-1] = (prev_d, merged)
        else:
            ticks.append((float(dist[0]), seg.label_start))
        ticks.append((float(dist[-1]), seg.label_end))
        offset = float(dist[-1])

    lines = []
    emin = np.inf
    emax = -np.inf
    for spin in range(b.spin_channels):
        per_band = []
        for band in range(b.n_bands):
            polys = []
            for seg, dist in zip(b.segments, seg_dists):
                energy = (seg.eigenvalues[spin, :, band] - b.chem_potential) * HARTREE_TO_EV
                emin = min(emin, float(energy.min()))
                emax = max(emax, float(energy.max()))
                polys.append(np.column_stack([dist, energy]))
            per_band.append(polys)
        lines.append(tuple(per_band))
    return BandPlot(spin_channels=b.spin_channels, n_bands=b.n_bands,
                    lines=tuple(lines), ticks=tuple(ticks),
                    e_range=(float(emin), float(emax)))


def _clip_polyline(poly: Polyline, emin: float, emax: float) -> list[Polyline]:
    """Clip one polyline to emin <= energy <= emax, interpolating at the
    crossings; returns the surviving pieces."""

    def inside(e: float) -> bool:
        return emin <= e <= emax

    def crossing(p, q, bound):
        t = (bound - p[1]) / (q[1] - p[1])
        return (p[0] + t * (q[0] - p[0]), bound)

    pieces: list[list[tuple[float, float]]] = []
    current: list[tuple[float, float]] = []
    n = len(poly)
    if n == 1:
        return [poly.copy()] if inside(poly[0, 1]) else []
    for idx in range(n - 1):
        p = (float(poly[idx, 0]), float(poly[idx, 1]))
        q = (float(poly[idx + 1, 0]), float(poly[idx + 1, 1]))
        pin, qin = inside(p[1]), inside(q[1])
        if pin and not current:
            current.append(p)
        if pin and qin:
            current.append(q)
            continue
        if pin and not qin:
            bound = emax if q[1] > emax else emin
            current.append(crossing(p, q, bound))
            pieces.append(current)
            current = []
        elif not pin and qin:
            bound = emax if p[1] > emax else emin
            current = [crossing(p, q, bound), q]
        else:
            # both outside; the segment may still slice through the window
            lo, hi = (p, q) if p[1] <= q[1] else (q, p)
            if lo[1] < emin and hi[1] > emax:
                a = crossing(p, q, emin)
                bnd = crossing(p, q, emax)
                first, second = (a, bnd) if a[0] <= bnd[0] else (bnd, a)
                pieces.append([first, second])
    if current:
        pieces.append(current)
    return [np.array(piece) for piece in pieces if piece]


def window(plot: BandPlot, emin: float, emax: float) -> BandPlot:
    """Restrict a plot to an energy window; ticks are unchanged."""
    if not emin < emax:
        raise EmptyWindow(f"window is empty: emin={emin} >= emax={emax}")
    lines = []
    survived = False
    for spin_lines in plot.lines:
        per_band = []
        for polys in spin_lines:
            clipped: list[Polyline] = []
            for poly in polys:
                clipped.extend(_clip_polyline(poly, emin, emax))
            if clipped:
                survived = True
            per_band.append(clipped)
        lines.append(tuple(per_band))
    if not survived:
        raise EmptyWindow(f"no band data inside [{emin}, {emax}] eV")
    return BandPlot(spin_channels=plot.spin_channels, n_bands=plot.n_bands,
                    lines=tuple(lines), ticks=plot.ticks, e_range=(emin, emax))
