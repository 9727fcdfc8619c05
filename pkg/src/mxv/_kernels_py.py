"""NumPy fallback for the hot kernels (cell triangulation, bond search).

This module and the compiled `mxv._kernels` extension implement the same
contract and MUST stay arithmetically identical, operation for operation:
the test suite asserts bitwise-equal output between the two backends. Cell
traversal is canonical (lexicographic) in both, so results never depend on
which backend served a request.

All mesh kernels take the raw (n1, n2, n3) value array, the isovalue and a
(t1, t2, t3) tiling; sampling wraps periodically over t*n grid points per
axis, giving t*n - 1 cells: interior seams between copies are meshed (tiled
output is seam-free) while no cell spans the outer wrap. Returned vertices are
in continuous grid-index coordinates; normals are the negated, normalized
trilinear interpolation of the central-difference gradient (they point
toward decreasing field values).
"""

from __future__ import annotations

import numpy as np

from .isotables import (
    CUBE_CORNERS,
    CUBE_EDGES,
    CUBE_TETRA,
    CUBE_TRIANGLES,
    TETRA_EDGES,
    TETRA_TRIANGLES,
)

backend = "python"

# per cube edge: corner offsets A/B, the edge axis, and the lower corner offset
_EDGE_INFO = []
for _ca, _cb in CUBE_EDGES:
    _oa = CUBE_CORNERS[_ca]
    _ob = CUBE_CORNERS[_cb]
    _axis = int(np.nonzero(_oa != _ob)[0][0])
    _base = np.minimum(_oa, _ob)
    _EDGE_INFO.append((tuple(int(x) for x in _oa), tuple(int(x) for x in _ob),
                       _axis, tuple(int(x) for x in _base)))

_TRI_ROWS = [tuple(int(e) for e in row if e >= 0) for row in CUBE_TRIANGLES]

# per tetrahedron: its cube-corner ids, and per 16-case the triangles as
# triples of (corner_a, corner_b) cube-corner pairs
_TET_CORNERS = [tuple(int(c) for c in tet) for tet in CUBE_TETRA]
_TET_TRIS = []
for _tet in _TET_CORNERS:
    cases = []
    for _mask in range(16):
        tris = []
        for tri in TETRA_TRIANGLES[_mask]:
            tris.append(tuple((_tet[int(TETRA_EDGES[e][0])],
                               _tet[int(TETRA_EDGES[e][1])]) for e in tri))
        cases.append(tuple(tris))
    _TET_TRIS.append(tuple(cases))


def _sampled(values: np.ndarray, pts: tuple[int, int, int]) -> np.ndarray:
    """Periodic sample array over pts grid points per axis."""
    n1, n2, n3 = values.shape
    i = np.arange(pts[0]) % n1
    j = np.arange(pts[1]) % n2
    k = np.arange(pts[2]) % n3
    return values[np.ix_(i, j, k)]


def _cube_index(below: np.ndarray) -> np.ndarray:
    ci = below[:-1, :-1, :-1].astype(np.uint8)
    ci |= below[1:, :-1, :-1].astype(np.uint8) << 1
    ci |= below[1:, 1:, :-1].astype(np.uint8) << 2
    ci |= below[:-1, 1:, :-1].astype(np.uint8) << 3
    ci |= below[:-1, :-1, 1:].astype(np.uint8) << 4
    ci |= below[1:, :-1, 1:].astype(np.uint8) << 5
    ci |= below[1:, 1:, 1:].astype(np.uint8) << 6
    ci |= below[:-1, 1:, 1:].astype(np.uint8) << 7
    return ci


def _empty_mesh():
    return (np.zeros((0, 3)), np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int64))


def _interp_t(iso: float, va: float, vb: float) -> float:
    denom = vb - va
    t = 0.5 if denom == 0.0 else (iso - va) / denom
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return t


def vertex_normals(values: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """Unit normals at index-space positions: -grad(field), trilinear."""
    if len(verts) == 0:
        return np.zeros((0, 3))
    n1, n2, n3 = values.shape
    x, y, z = verts[:, 0], verts[:, 1], verts[:, 2]
    i0 = np.floor(x).astype(np.int64)
    j0 = np.floor(y).astype(np.int64)
    k0 = np.floor(z).astype(np.int64)
    fx, fy, fz = x - i0, y - j0, z - k0

    def val(i, j, k):
        return values[i % n1, j % n2, k % n3]

    gxs = np.zeros(len(verts))
    gys = np.zeros(len(verts))
    gzs = np.zeros(len(verts))
    for di in (0, 1):
        wx = fx if di else 1.0 - fx
        for dj in (0, 1):
            wy = fy if dj else 1.0 - fy
            for dk in (0, 1):
                wz = fz if dk else 1.0 - fz
                qi, qj, qk = i0 + di, j0 + dj, k0 + dk
                gx = (val(qi + 1, qj, qk) - val(qi - 1, qj, qk)) * 0.5
                gy = (val(qi, qj + 1, qk) - val(qi, qj - 1, qk)) * 0.5
                gz = (val(qi, qj, qk + 1) - val(qi, qj, qk - 1)) * 0.5
                w = (wx * wy) * wz
                gxs += w * gx
                gys += w * gy
                gzs += w * gz
    length = np.sqrt((gxs * gxs + gys * gys) + gzs * gzs)
    flat = length == 0.0
    length[flat] = 1.0
    normals = np.stack([-gxs / length, -gys / length, -gzs / length], axis=1)
    normals[flat] = (0.0, 0.0, 1.0)
    return normals


def marching_cubes(values: np.ndarray, iso: float, tiles) -> tuple:
    n1, n2, n3 = values.shape
    pts = (tiles[0] * n1, tiles[1] * n2, tiles[2] * n3)
    samp = _sampled(values, pts)
    ci = _cube_index(samp < iso)
    active = np.argwhere((ci != 0) & (ci != 255))
    if len(active) == 0:
        return _empty_mesh()

    p2 = pts[1]
    p3 = pts[2]
    weld: dict[int, int] = {}
    vx: list[float] = []
    vy: list[float] = []
    vz: list[float] = []
    tris: list[int] = []
    for a, b, c in active:
        a, b, c = int(a), int(b), int(c)
        row = _TRI_ROWS[ci[a, b, c]]
        idxs = []
        for e in row:
            oa, ob, axis, base = _EDGE_INFO[e]
            key = (((a + base[0]) * p2 + (b + base[1])) * p3 + (c + base[2])) * 3 + axis
            idx = weld.get(key, -1)
            if idx < 0:
                ai, aj, ak = a + oa[0], b + oa[1], c + oa[2]
                bi, bj, bk = a + ob[0], b + ob[1], c + ob[2]
                t = _interp_t(iso, samp[ai, aj, ak], samp[bi, bj, bk])
                idx = len(vx)
                vx.append(ai + t * float(bi - ai))
                vy.append(aj + t * float(bj - aj))
                vz.append(ak + t * float(bk - ak))
                weld[key] = idx
            idxs.append(idx)
        tris.extend(idxs)

    verts = np.stack([np.asarray(vx), np.asarray(vy), np.asarray(vz)], axis=1)
    triangles = np.asarray(tris, dtype=np.int64).reshape(-1, 3)
    return verts, vertex_normals(values, verts), triangles


def marching_tetrahedra(values: np.ndarray, iso: float, tiles) -> tuple:
    n1, n2, n3 = values.shape
    pts = (tiles[0] * n1, tiles[1] * n2, tiles[2] * n3)
    samp = _sampled(values, pts)
    ci = _cube_index(samp < iso)
    active = np.argwhere((ci != 0) & (ci != 255))
    if len(active) == 0:
        return _empty_mesh()

    p2 = pts[1]
    p3 = pts[2]
    npts = pts[0] * p2 * p3
    corners = [tuple(int(x) for x in off) for off in CUBE_CORNERS]
    weld: dict[int, int] = {}
    vx: list[float] = []
    vy: list[float] = []
    vz: list[float] = []
    tris: list[int] = []
    for a, b, c in active:
        a, b, c = int(a), int(b), int(c)
        cell_mask = int(ci[a, b, c])
        for tet, cases in zip(_TET_CORNERS, _TET_TRIS):
            tmask = (((cell_mask >> tet[0]) & 1)
                     | ((cell_mask >> tet[1]) & 1) << 1
                     | ((cell_mask >> tet[2]) & 1) << 2
                     | ((cell_mask >> tet[3]) & 1) << 3)
            for tri in cases[tmask]:
                idxs = []
                for ca, cb in tri:
                    oa = corners[ca]
                    ob = corners[cb]
                    ai, aj, ak = a + oa[0], b + oa[1], c + oa[2]
                    bi, bj, bk = a + ob[0], b + ob[1], c + ob[2]
                    pa = (ai * p2 + aj) * p3 + ak
                    pb = (bi * p2 + bj) * p3 + bk
                    key = pa * npts + pb if pa < pb else pb * npts + pa
                    idx = weld.get(key, -1)
                    if idx < 0:
                        t = _interp_t(iso, samp[ai, aj, ak], samp[bi, bj, bk])
                        idx = len(vx)
                        vx.append(ai + t * float(bi - ai))
                        vy.append(aj + t * float(bj - aj))
                        vz.append(ak + t * float(bk - ak))
                        weld[key] = idx
                    idxs.append(idx)
                tris.extend(idxs)

    verts = np.stack([np.asarray(vx), np.asarray(vy), np.asarray(vz)], axis=1)
    triangles = np.asarray(tris, dtype=np.int64).reshape(-1, 3)
    return verts, vertex_normals(values, verts), triangles


def surface_nets(values: np.ndarray, iso: float, tiles) -> tuple:
    n1, n2, n3 = values.shape
    pts = (tiles[0] * n1, tiles[1] * n2, tiles[2] * n3)
    samp = _sampled(values, pts)
    below = samp < iso
    ci = _cube_index(below)
    active = np.argwhere((ci != 0) & (ci != 255))
    if len(active) == 0:
        return _empty_mesh()

    # one vertex per sign-changing cell: centroid of its edge crossings
    cell_vert = np.full(ci.shape, -1, dtype=np.int64)
    vx: list[float] = []
    vy: list[float] = []
    vz: list[float] = []
    for a, b, c in active:
        a, b, c = int(a), int(b), int(c)
        accx = accy = accz = 0.0
        cnt = 0
        for e in range(12):
            oa, ob, _axis, _base = _EDGE_INFO[e]
            ai, aj, ak = a + oa[0], b + oa[1], c + oa[2]
            bi, bj, bk = a + ob[0], b + ob[1], c + ob[2]
            if below[ai, aj, ak] != below[bi, bj, bk]:
                t = _interp_t(iso, samp[ai, aj, ak], samp[bi, bj, bk])
                accx += ai + t * float(bi - ai)
                accy += aj + t * float(bj - aj)
                accz += ak + t * float(bk - ak)
                cnt += 1
        cell_vert[a, b, c] = len(vx)
        vx.append(accx / float(cnt))
        vy.append(accy / float(cnt))
        vz.append(accz / float(cnt))

    # faces: one quad per interior crossing grid edge, linking the 4 cells
    # that share the edge; orientation keeps normals toward the low side
    cross = np.zeros((pts[0], pts[1], pts[2], 3), dtype=bool)
    cross[:-1, 1:-1, 1:-1, 0] = below[:-1, 1:-1, 1:-1] != below[1:, 1:-1, 1:-1]
    cross[1:-1, :-1, 1:-1, 1] = below[1:-1, :-1, 1:-1] != below[1:-1, 1:, 1:-1]
    cross[1:-1, 1:-1, :-1, 2] = below[1:-1, 1:-1, :-1] != below[1:-1, 1:-1, 1:]
    tris: list[int] = []
    for i, j, k, d in np.argwhere(cross):
        i, j, k, d = int(i), int(j), int(k), int(d)
        du = [0, 0, 0]
        dw = [0, 0, 0]
        du[(d + 1) % 3] = 1
        dw[(d + 2) % 3] = 1
        v0 = cell_vert[i - du[0] - dw[0], j - du[1] - dw[1], k - du[2] - dw[2]]
        v1 = cell_vert[i - dw[0], j - dw[1], k - dw[2]]
        v2 = cell_vert[i, j, k]
        v3 = cell_vert[i - du[0], j - du[1], k - du[2]]
        if below[i, j, k]:
            tris.extend((v0, v2, v1, v0, v3, v2))
        else:
            tris.extend((v0, v1, v2, v0, v2, v3))

    verts = np.stack([np.asarray(vx), np.asarray(vy), np.asarray(vz)], axis=1)
    triangles = np.asarray(tris, dtype=np.int64).reshape(-1, 3)
    return verts, vertex_normals(values, verts), triangles


def bond_search(positions: np.ndarray, radii: np.ndarray, factor: float,
                lattice: np.ndarray | None, min_dist: float = 0.4) -> tuple:
    """All (i, j, image) pairs with min_dist < |rj + image·L - ri| <= factor*(ri+rj).

    Periodic systems search image offsets in {-1, 0, 1}^3 applied to atom j;
    pairs are returned with i < j, sorted by (i, j, image). Uses a KD-tree
    over the pruned image cloud; the compiled twin uses spatial binning and
    must produce identical output. The candidate radius is padded slightly
    so borderline pairs are never lost to tree rounding; the exact distance
    filter below is what decides.
    """
    from scipy.spatial import cKDTree

    n = len(positions)
    out_i: list[int] = []
    out_j: list[int] = []
    out_img: list[tuple[int, int, int]] = []
    out_len: list[float] = []
    if n == 0:
        return _pack_bonds(out_i, out_j, out_img, out_len)
    maxcut = factor * (2.0 * float(radii.max()))
    pad = maxcut * (1.0 + 1e-12) + 1e-9

    if lattice is None:
        tree = cKDTree(positions)
        for i, j in sorted(tree.query_pairs(pad)):
            dx = positions[j, 0] - positions[i, 0]
            dy = positions[j, 1] - positions[i, 1]
            dz = positions[j, 2] - positions[i, 2]
            d = np.sqrt((dx * dx + dy * dy) + dz * dz)
            if min_dist < d <= factor * (radii[i] + radii[j]):
                out_i.append(i)
                out_j.append(j)
                out_img.append((0, 0, 0))
                out_len.append(float(d))
        return _pack_bonds(out_i, out_j, out_img, out_len)

    lo = positions.min(axis=0) - pad
    hi = positions.max(axis=0) + pad
    ext_pos = []
    ext_j = []
    ext_img = []
    for ma in (-1, 0, 1):
        for mb in (-1, 0, 1):
            for mc in (-1, 0, 1):
                shift = (ma * lattice[0] + mb * lattice[1]) + mc * lattice[2]
                cand = positions + shift
                keep = np.all((cand >= lo) & (cand <= hi), axis=1)
                ext_pos.append(cand[keep])
                ext_j.append(np.nonzero(keep)[0])
                ext_img.extend([(ma, mb, mc)] * int(keep.sum()))
    ext_pos = np.concatenate(ext_pos)
    ext_j = np.concatenate(ext_j)
    tree = cKDTree(ext_pos)
    hits = tree.query_ball_point(positions, pad)
    for i in range(n):
        for h in hits[i]:
            j = int(ext_j[h])
            if j <= i:
                continue
            ma, mb, mc = ext_img[h]
            shift = (ma * lattice[0] + mb * lattice[1]) + mc * lattice[2]
            dx = (positions[j, 0] + shift[0]) - positions[i, 0]
            dy = (positions[j, 1] + shift[1]) - positions[i, 1]
            dz = (positions[j, 2] + shift[2]) - positions[i, 2]
            d = np.sqrt((dx * dx + dy * dy) + dz * dz)
            if min_dist < d <= factor * (radii[i] + radii[j]):
                out_i.append(i)
                out_j.append(j)
                out_img.append((ma, mb, mc))
                out_len.append(float(d))
    return _pack_bonds(out_i, out_j, out_img, out_len)


def _pack_bonds(out_i, out_j, out_img, out_len) -> tuple:
    if not out_i:
        return (np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64),
                np.zeros((0, 3), dtype=np.int64), np.zeros(0))
    ii = np.asarray(out_i, dtype=np.int64)
    jj = np.asarray(out_j, dtype=np.int64)
    img = np.asarray(out_img, dtype=np.int64).reshape(-1, 3)
    ll = np.asarray(out_len)
    order = np.lexsort((img[:, 2], img[:, 1], img[:, 0], jj, ii))
    return ii[order], jj[order], img[order], ll[order]
