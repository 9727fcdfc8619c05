# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of mxv._kernels_py.

Same contract, same canonical traversal order, and arithmetic written
operation-for-operation like the NumPy fallback so both backends produce
bitwise-identical output (the build disables FP contraction to keep it so).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport floor as c_floor
from libc.math cimport sqrt as c_sqrt

from .isotables import (
    CUBE_CORNERS,
    CUBE_EDGES,
    CUBE_TETRA,
    CUBE_TRIANGLES,
    TETRA_EDGES,
    TETRA_TRIANGLES,
)

cnp.import_array()

backend = "compiled"

ctypedef Py_ssize_t idx_t

# --- case tables flattened into typed buffers at import time ---

cdef long long[:, ::1] _CORNER = np.ascontiguousarray(CUBE_CORNERS, dtype=np.int64)

_ea = np.zeros((12, 3), dtype=np.int64)
_eb = np.zeros((12, 3), dtype=np.int64)
_eaxis = np.zeros(12, dtype=np.int64)
_ebase = np.zeros((12, 3), dtype=np.int64)
for _e, (_ca, _cb) in enumerate(CUBE_EDGES):
    _oa = CUBE_CORNERS[_ca]
    _ob = CUBE_CORNERS[_cb]
    _ea[_e] = _oa
    _eb[_e] = _ob
    _eaxis[_e] = int(np.nonzero(_oa != _ob)[0][0])
    _ebase[_e] = np.minimum(_oa, _ob)
cdef long long[:, ::1] _EDGE_A = _ea
cdef long long[:, ::1] _EDGE_B = _eb
cdef long long[::1] _EDGE_AXIS = _eaxis
cdef long long[:, ::1] _EDGE_BASE = _ebase

_rows = np.full((256, 16), -1, dtype=np.int64)
_rowlen = np.zeros(256, dtype=np.int64)
for _m in range(256):
    _r = [int(e) for e in CUBE_TRIANGLES[_m] if e >= 0]
    _rows[_m, :len(_r)] = _r
    _rowlen[_m] = len(_r)
cdef long long[:, ::1] _TRI_ROWS = _rows
cdef long long[::1] _TRI_LEN = _rowlen

cdef long long[:, ::1] _TETS = np.ascontiguousarray(CUBE_TETRA, dtype=np.int64)

# per (tet, case): up to 2 triangles stored as cube-corner pairs
_tca = np.zeros((6, 16, 6), dtype=np.int64)
_tcb = np.zeros((6, 16, 6), dtype=np.int64)
_tlen = np.zeros((6, 16), dtype=np.int64)
for _t in range(6):
    _tet = [int(c) for c in CUBE_TETRA[_t]]
    for _m in range(16):
        _slot = 0
        for _tri in TETRA_TRIANGLES[_m]:
            for _edge in _tri:
                _la, _lb = TETRA_EDGES[_edge]
                _tca[_t, _m, _slot] = _tet[int(_la)]
                _tcb[_t, _m, _slot] = _tet[int(_lb)]
                _slot += 1
        _tlen[_t, _m] = _slot
cdef long long[:, :, ::1] _TET_CA = _tca
cdef long long[:, :, ::1] _TET_CB = _tcb
cdef long long[:, ::1] _TET_LEN = _tlen

# cube edge endpoint corner ids, for the surface-nets crossing test
_eca = np.zeros(12, dtype=np.int64)
_ecb = np.zeros(12, dtype=np.int64)
for _e, (_ca, _cb) in enumerate(CUBE_EDGES):
    _eca[_e] = _ca
    _ecb[_e] = _cb
cdef long long[::1] CUBE_EDGE_CA = _eca
cdef long long[::1] CUBE_EDGE_CB = _ecb


cdef inline idx_t _wrap(idx_t i, idx_t n):
    i = i % n
    if i < 0:
        i += n
    return i


cdef inline double _interp_t(double iso, double va, double vb):
    cdef double denom = vb - va
    cdef double t
    if denom == 0.0:
        t = 0.5
    else:
        t = (iso - va) / denom
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return t


cdef inline int _cell_mask(const double[:, :, ::1] v, idx_t a, idx_t b, idx_t c,
                           idx_t n1, idx_t n2, idx_t n3, double iso):
    cdef int mask = 0
    cdef idx_t cc
    cdef idx_t ia, jb, kc
    for cc in range(8):
        ia = _wrap(a + _CORNER[cc, 0], n1)
        jb = _wrap(b + _CORNER[cc, 1], n2)
        kc = _wrap(c + _CORNER[cc, 2], n3)
        if v[ia, jb, kc] < iso:
            mask |= 1 << cc
    return mask


def vertex_normals(cnp.ndarray values_in, cnp.ndarray verts_in):
    """Unit normals at index-space positions: -grad(field), trilinear."""
    cdef const double[:, :, ::1] v = np.ascontiguousarray(values_in, dtype=np.float64)
    cdef const double[:, ::1] verts = np.ascontiguousarray(verts_in, dtype=np.float64)
    cdef idx_t m = verts.shape[0]
    out = np.zeros((m, 3), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef idx_t n1 = v.shape[0], n2 = v.shape[1], n3 = v.shape[2]
    cdef idx_t p, i0, j0, k0, qi, qj, qk
    cdef int di, dj, dk
    cdef double x, y, z, fx, fy, fz, wx, wy, wz, w
    cdef double gx, gy, gz, ax, ay, az, L
    for p in range(m):
        x = verts[p, 0]
        y = verts[p, 1]
        z = verts[p, 2]
        i0 = <idx_t>c_floor(x)
        j0 = <idx_t>c_floor(y)
        k0 = <idx_t>c_floor(z)
        fx = x - <double>i0
        fy = y - <double>j0
        fz = z - <double>k0
        ax = 0.0
        ay = 0.0
        az = 0.0
        for di in range(2):
            wx = fx if di else 1.0 - fx
            for dj in range(2):
                wy = fy if dj else 1.0 - fy
                for dk in range(2):
                    wz = fz if dk else 1.0 - fz
                    qi = i0 + di
                    qj = j0 + dj
                    qk = k0 + dk
                    gx = (v[_wrap(qi + 1, n1), _wrap(qj, n2), _wrap(qk, n3)]
                          - v[_wrap(qi - 1, n1), _wrap(qj, n2), _wrap(qk, n3)]) * 0.5
                    gy = (v[_wrap(qi, n1), _wrap(qj + 1, n2), _wrap(qk, n3)]
                          - v[_wrap(qi, n1), _wrap(qj - 1, n2), _wrap(qk, n3)]) * 0.5
                    gz = (v[_wrap(qi, n1), _wrap(qj, n2), _wrap(qk + 1, n3)]
                          - v[_wrap(qi, n1), _wrap(qj, n2), _wrap(qk - 1, n3)]) * 0.5
                    w = (wx * wy) * wz
                    ax = ax + w * gx
                    ay = ay + w * gy
                    az = az + w * gz
        L = c_sqrt((ax * ax + ay * ay) + az * az)
        if L == 0.0:
            o[p, 0] = 0.0
            o[p, 1] = 0.0
            o[p, 2] = 1.0
        else:
            o[p, 0] = -ax / L
            o[p, 1] = -ay / L
            o[p, 2] = -az / L
    return out


def _empty_mesh():
    return (np.zeros((0, 3)), np.zeros((0, 3)), np.zeros((0, 3), dtype=np.int64))


def marching_cubes(cnp.ndarray values_in, double iso, tiles):
    cdef const double[:, :, ::1] v = np.ascontiguousarray(values_in, dtype=np.float64)
    cdef idx_t n1 = v.shape[0], n2 = v.shape[1], n3 = v.shape[2]
    cdef idx_t P1 = (<idx_t>tiles[0]) * n1
    cdef idx_t P2 = (<idx_t>tiles[1]) * n2
    cdef idx_t P3 = (<idx_t>tiles[2]) * n3
    cdef dict weld = {}
    vx, vy, vz, tris = [], [], [], []
    cdef idx_t a, b, c, ai, aj, ak, bi, bj, bk
    cdef int mask, nrow, r, e, axis
    cdef long long key, idx, nvert = 0
    cdef double t, va, vb
    cdef long long i0, i1, i2
    for a in range(P1 - 1):
        for b in range(P2 - 1):
            for c in range(P3 - 1):
                mask = _cell_mask(v, a, b, c, n1, n2, n3, iso)
                if mask == 0 or mask == 255:
                    continue
                nrow = <int>_TRI_LEN[mask]
                r = 0
                while r < nrow:
                    e = <int>_TRI_ROWS[mask, r]
                    axis = <int>_EDGE_AXIS[e]
                    key = (((a + _EDGE_BASE[e, 0]) * P2 + (b + _EDGE_BASE[e, 1])) * P3
                           + (c + _EDGE_BASE[e, 2])) * 3 + axis
                    idx = weld.get(key, -1)
                    if idx < 0:
                        ai = a + _EDGE_A[e, 0]
                        aj = b + _EDGE_A[e, 1]
                        ak = c + _EDGE_A[e, 2]
                        bi = a + _EDGE_B[e, 0]
                        bj = b + _EDGE_B[e, 1]
                        bk = c + _EDGE_B[e, 2]
                        va = v[_wrap(ai, n1), _wrap(aj, n2), _wrap(ak, n3)]
                        vb = v[_wrap(bi, n1), _wrap(bj, n2), _wrap(bk, n3)]
                        t = _interp_t(iso, va, vb)
                        idx = nvert
                        nvert += 1
                        vx.append(<double>ai + t * <double>(bi - ai))
                        vy.append(<double>aj + t * <double>(bj - aj))
                        vz.append(<double>ak + t * <double>(bk - ak))
                        weld[key] = idx
                    if r % 3 == 0:
                        i0 = idx
                    elif r % 3 == 1:
                        i1 = idx
                    else:
                        tris.append(i0)
                        tris.append(i1)
                        tris.append(idx)
                    r += 1
    if nvert == 0:
        return _empty_mesh()
    verts = np.stack([np.asarray(vx), np.asarray(vy), np.asarray(vz)], axis=1)
    triangles = np.asarray(tris, dtype=np.int64).reshape(-1, 3)
    return verts, vertex_normals(values_in, verts), triangles


def marching_tetrahedra(cnp.ndarray values_in, double iso, tiles):
    cdef const double[:, :, ::1] v = np.ascontiguousarray(values_in, dtype=np.float64)
    cdef idx_t n1 = v.shape[0], n2 = v.shape[1], n3 = v.shape[2]
    cdef idx_t P1 = (<idx_t>tiles[0]) * n1
    cdef idx_t P2 = (<idx_t>tiles[1]) * n2
    cdef idx_t P3 = (<idx_t>tiles[2]) * n3
    cdef long long npts = P1 * P2 * P3
    cdef dict weld = {}
    vx, vy, vz, tris = [], [], [], []
    cdef idx_t a, b, c, ai, aj, ak, bi, bj, bk
    cdef int mask, tmask, tt, slot, nslot, ca, cb
    cdef long long key, pa, pb, idx, nvert = 0
    cdef double t, va, vb
    cdef long long i0, i1
    for a in range(P1 - 1):
        for b in range(P2 - 1):
            for c in range(P3 - 1):
                mask = _cell_mask(v, a, b, c, n1, n2, n3, iso)
                if mask == 0 or mask == 255:
                    continue
                for tt in range(6):
                    tmask = (((mask >> _TETS[tt, 0]) & 1)
                             | ((mask >> _TETS[tt, 1]) & 1) << 1
                             | ((mask >> _TETS[tt, 2]) & 1) << 2
                             | ((mask >> _TETS[tt, 3]) & 1) << 3)
                    nslot = <int>_TET_LEN[tt, tmask]
                    slot = 0
                    while slot < nslot:
                        ca = <int>_TET_CA[tt, tmask, slot]
                        cb = <int>_TET_CB[tt, tmask, slot]
                        ai = a + _CORNER[ca, 0]
                        aj = b + _CORNER[ca, 1]
                        ak = c + _CORNER[ca, 2]
                        bi = a + _CORNER[cb, 0]
                        bj = b + _CORNER[cb, 1]
                        bk = c + _CORNER[cb, 2]
                        pa = (ai * P2 + aj) * P3 + ak
                        pb = (bi * P2 + bj) * P3 + bk
                        if pa < pb:
                            key = pa * npts + pb
                        else:
                            key = pb * npts + pa
                        idx = weld.get(key, -1)
                        if idx < 0:
                            va = v[_wrap(ai, n1), _wrap(aj, n2), _wrap(ak, n3)]
                            vb = v[_wrap(bi, n1), _wrap(bj, n2), _wrap(bk, n3)]
                            t = _interp_t(iso, va, vb)
                            idx = nvert
                            nvert += 1
                            vx.append(<double>ai + t * <double>(bi - ai))
                            vy.append(<double>aj + t * <double>(bj - aj))
                            vz.append(<double>ak + t * <double>(bk - ak))
                            weld[key] = idx
                        if slot % 3 == 0:
                            i0 = idx
                        elif slot % 3 == 1:
                            i1 = idx
                        else:
                            tris.append(i0)
                            tris.append(i1)
                            tris.append(idx)
                        slot += 1
    if nvert == 0:
        return _empty_mesh()
    verts = np.stack([np.asarray(vx), np.asarray(vy), np.asarray(vz)], axis=1)
    triangles = np.asarray(tris, dtype=np.int64).reshape(-1, 3)
    return verts, vertex_normals(values_in, verts), triangles


def surface_nets(cnp.ndarray values_in, double iso, tiles):
    cdef const double[:, :, ::1] v = np.ascontiguousarray(values_in, dtype=np.float64)
    cdef idx_t n1 = v.shape[0], n2 = v.shape[1], n3 = v.shape[2]
    cdef idx_t P1 = (<idx_t>tiles[0]) * n1
    cdef idx_t P2 = (<idx_t>tiles[1]) * n2
    cdef idx_t P3 = (<idx_t>tiles[2]) * n3
    cdef idx_t C1 = P1 - 1, C2 = P2 - 1, C3 = P3 - 1

    cell_vert_arr = np.full((C1, C2, C3), -1, dtype=np.int64)
    cdef long long[:, :, ::1] cell_vert = cell_vert_arr
    vx, vy, vz, tris = [], [], [], []
    cdef idx_t a, b, c, ai, aj, ak, bi, bj, bk, i, j, k
    cdef int mask, e, cnt, d, u, w, below_p
    cdef long long nvert = 0, v0, v1, v2, v3
    cdef double t, va, vb, accx, accy, accz
    cdef idx_t du0, du1, du2, dw0, dw1, dw2

    for a in range(C1):
        for b in range(C2):
            for c in range(C3):
                mask = _cell_mask(v, a, b, c, n1, n2, n3, iso)
                if mask == 0 or mask == 255:
                    continue
                accx = 0.0
                accy = 0.0
                accz = 0.0
                cnt = 0
                for e in range(12):
                    if (((mask >> CUBE_EDGE_CA[e]) & 1) != ((mask >> CUBE_EDGE_CB[e]) & 1)):
                        ai = a + _EDGE_A[e, 0]
                        aj = b + _EDGE_A[e, 1]
                        ak = c + _EDGE_A[e, 2]
                        bi = a + _EDGE_B[e, 0]
                        bj = b + _EDGE_B[e, 1]
                        bk = c + _EDGE_B[e, 2]
                        va = v[_wrap(ai, n1), _wrap(aj, n2), _wrap(ak, n3)]
                        vb = v[_wrap(bi, n1), _wrap(bj, n2), _wrap(bk, n3)]
                        t = _interp_t(iso, va, vb)
                        accx += <double>ai + t * <double>(bi - ai)
                        accy += <double>aj + t * <double>(bj - aj)
                        accz += <double>ak + t * <double>(bk - ak)
                        cnt += 1
                cell_vert[a, b, c] = nvert
                nvert += 1
                vx.append(accx / <double>cnt)
                vy.append(accy / <double>cnt)
                vz.append(accz / <double>cnt)
    if nvert == 0:
        return _empty_mesh()

    for i in range(P1):
        for j in range(P2):
            for k in range(P3):
                for d in range(3):
                    if d == 0:
                        if i > C1 - 1 or j < 1 or j > C2 - 1 or k < 1 or k > C3 - 1:
                            continue
                        below_p = v[_wrap(i, n1), _wrap(j, n2), _wrap(k, n3)] < iso
                        if below_p == (v[_wrap(i + 1, n1), _wrap(j, n2), _wrap(k, n3)] < iso):
                            continue
                    elif d == 1:
                        if j > C2 - 1 or i < 1 or i > C1 - 1 or k < 1 or k > C3 - 1:
                            continue
                        below_p = v[_wrap(i, n1), _wrap(j, n2), _wrap(k, n3)] < iso
                        if below_p == (v[_wrap(i, n1), _wrap(j + 1, n2), _wrap(k, n3)] < iso):
                            continue
                    else:
                        if k > C3 - 1 or i < 1 or i > C1 - 1 or j < 1 or j > C2 - 1:
                            continue
                        below_p = v[_wrap(i, n1), _wrap(j, n2), _wrap(k, n3)] < iso
                        if below_p == (v[_wrap(i, n1), _wrap(j, n2), _wrap(k + 1, n3)] < iso):
                            continue
                    du0 = du1 = du2 = 0
                    dw0 = dw1 = dw2 = 0
                    u = (d + 1) % 3
                    w = (d + 2) % 3
                    if u == 0:
                        du0 = 1
                    elif u == 1:
                        du1 = 1
                    else:
                        du2 = 1
                    if w == 0:
                        dw0 = 1
                    elif w == 1:
                        dw1 = 1
                    else:
                        dw2 = 1
                    v0 = cell_vert[i - du0 - dw0, j - du1 - dw1, k - du2 - dw2]
                    v1 = cell_vert[i - dw0, j - dw1, k - dw2]
                    v2 = cell_vert[i, j, k]
                    v3 = cell_vert[i - du0, j - du1, k - du2]
                    if below_p:
                        tris.append(v0)
                        tris.append(v2)
                        tris.append(v1)
                        tris.append(v0)
                        tris.append(v3)
                        tris.append(v2)
                    else:
                        tris.append(v0)
                        tris.append(v1)
                        tris.append(v2)
                        tris.append(v0)
                        tris.append(v2)
                        tris.append(v3)

    verts = np.stack([np.asarray(vx), np.asarray(vy), np.asarray(vz)], axis=1)
    triangles = np.asarray(tris, dtype=np.int64).reshape(-1, 3)
    return verts, vertex_normals(values_in, verts), triangles



def bond_search(cnp.ndarray positions_in, cnp.ndarray radii_in, double factor,
                lattice_in, double min_dist=0.4):
    """Spatial-binning twin of the fallback's KD-tree bond search."""
    cdef const double[:, ::1] pos = np.ascontiguousarray(positions_in, dtype=np.float64)
    cdef const double[::1] radii = np.ascontiguousarray(radii_in, dtype=np.float64)
    cdef idx_t n = pos.shape[0]
    from ._kernels_py import _pack_bonds
    out_i, out_j, out_img, out_len = [], [], [], []
    if n == 0:
        return _pack_bonds(out_i, out_j, out_img, out_len)

    cdef double rmax = radii[0]
    cdef idx_t q
    for q in range(n):
        if radii[q] > rmax:
            rmax = radii[q]
    cdef double maxcut = factor * (2.0 * rmax)
    cdef double pad = maxcut * (1.0 + 1e-12) + 1e-9

    # candidate cloud: atoms plus (for periodic cells) their 27 images,
    # pruned to a pad-box around the originals
    cdef const double[:, ::1] lat
    cdef bint periodic = lattice_in is not None
    cdef idx_t ncand
    cdef double lox, loy, loz, hix, hiy, hiz
    cdef double sx, sy, sz, cx, cy, cz
    cdef int ma, mb, mc
    cand_pos_l, cand_j_l, cand_img_l = [], [], []
    if periodic:
        lat = np.ascontiguousarray(lattice_in, dtype=np.float64)
        lox = hix = pos[0, 0]
        loy = hiy = pos[0, 1]
        loz = hiz = pos[0, 2]
        for q in range(n):
            if pos[q, 0] < lox: lox = pos[q, 0]
            if pos[q, 0] > hix: hix = pos[q, 0]
            if pos[q, 1] < loy: loy = pos[q, 1]
            if pos[q, 1] > hiy: hiy = pos[q, 1]
            if pos[q, 2] < loz: loz = pos[q, 2]
            if pos[q, 2] > hiz: hiz = pos[q, 2]
        lox -= pad
        loy -= pad
        loz -= pad
        hix += pad
        hiy += pad
        hiz += pad
        for ma in range(-1, 2):
            for mb in range(-1, 2):
                for mc in range(-1, 2):
                    sx = (ma * lat[0, 0] + mb * lat[1, 0]) + mc * lat[2, 0]
                    sy = (ma * lat[0, 1] + mb * lat[1, 1]) + mc * lat[2, 1]
                    sz = (ma * lat[0, 2] + mb * lat[1, 2]) + mc * lat[2, 2]
                    for q in range(n):
                        cx = pos[q, 0] + sx
                        cy = pos[q, 1] + sy
                        cz = pos[q, 2] + sz
                        if (cx >= lox and cx <= hix and cy >= loy and cy <= hiy
                                and cz >= loz and cz <= hiz):
                            cand_pos_l.append((cx, cy, cz))
                            cand_j_l.append(q)
                            cand_img_l.append((ma, mb, mc))
    else:
        for q in range(n):
            cand_pos_l.append((pos[q, 0], pos[q, 1], pos[q, 2]))
            cand_j_l.append(q)
            cand_img_l.append((0, 0, 0))

    cand_pos_arr = np.asarray(cand_pos_l, dtype=np.float64)
    cdef double[:, ::1] cand = cand_pos_arr
    cand_j_arr = np.asarray(cand_j_l, dtype=np.int64)
    cdef long long[::1] cand_j = cand_j_arr
    cand_img_arr = np.asarray(cand_img_l, dtype=np.int64).reshape(-1, 3)
    cdef long long[:, ::1] cand_img = cand_img_arr
    ncand = cand.shape[0]

    # bins over the candidate cloud, cell size >= maxcut
    cdef double ex = (cand_pos_arr[:, 0].max() - cand_pos_arr[:, 0].min())
    cdef double ey = (cand_pos_arr[:, 1].max() - cand_pos_arr[:, 1].min())
    cdef double ez = (cand_pos_arr[:, 2].max() - cand_pos_arr[:, 2].min())
    cdef double bx = cand_pos_arr[:, 0].min()
    cdef double by = cand_pos_arr[:, 1].min()
    cdef double bz = cand_pos_arr[:, 2].min()
    cdef idx_t nbx = 1, nby = 1, nbz = 1
    if maxcut > 0.0:
        nbx = <idx_t>(ex / maxcut)
        nby = <idx_t>(ey / maxcut)
        nbz = <idx_t>(ez / maxcut)
    if nbx < 1: nbx = 1
    if nby < 1: nby = 1
    if nbz < 1: nbz = 1
    if nbx > 128: nbx = 128
    if nby > 128: nby = 128
    if nbz > 128: nbz = 128
    cdef double bsx = ex / nbx if ex > 0.0 else 1.0
    cdef double bsy = ey / nby if ey > 0.0 else 1.0
    cdef double bsz = ez / nbz if ez > 0.0 else 1.0

    head_arr = np.full(nbx * nby * nbz, -1, dtype=np.int64)
    nxt_arr = np.full(ncand, -1, dtype=np.int64)
    cdef long long[::1] head = head_arr
    cdef long long[::1] nxt = nxt_arr
    cdef idx_t gi, gj, gk, h
    for q in range(ncand):
        gi = <idx_t>((cand[q, 0] - bx) / bsx)
        gj = <idx_t>((cand[q, 1] - by) / bsy)
        gk = <idx_t>((cand[q, 2] - bz) / bsz)
        if gi >= nbx: gi = nbx - 1
        if gj >= nby: gj = nby - 1
        if gk >= nbz: gk = nbz - 1
        h = (gi * nby + gj) * nbz + gk
        nxt[q] = head[h]
        head[h] = q

    cdef idx_t i, oi, oj, ok
    cdef long long cj, cur
    cdef double dx, dy, dz, dd, cut
    for i in range(n):
        gi = <idx_t>((pos[i, 0] - bx) / bsx)
        gj = <idx_t>((pos[i, 1] - by) / bsy)
        gk = <idx_t>((pos[i, 2] - bz) / bsz)
        if gi >= nbx: gi = nbx - 1
        if gj >= nby: gj = nby - 1
        if gk >= nbz: gk = nbz - 1
        for oi in range(gi - 1, gi + 2):
            if oi < 0 or oi >= nbx:
                continue
            for oj in range(gj - 1, gj + 2):
                if oj < 0 or oj >= nby:
                    continue
                for ok in range(gk - 1, gk + 2):
                    if ok < 0 or ok >= nbz:
                        continue
                    cur = head[(oi * nby + oj) * nbz + ok]
                    while cur >= 0:
                        cj = cand_j[cur]
                        if cj > i:
                            if periodic:
                                ma = <int>cand_img[cur, 0]
                                mb = <int>cand_img[cur, 1]
                                mc = <int>cand_img[cur, 2]
                                sx = (ma * lat[0, 0] + mb * lat[1, 0]) + mc * lat[2, 0]
                                sy = (ma * lat[0, 1] + mb * lat[1, 1]) + mc * lat[2, 1]
                                sz = (ma * lat[0, 2] + mb * lat[1, 2]) + mc * lat[2, 2]
                                dx = (pos[cj, 0] + sx) - pos[i, 0]
                                dy = (pos[cj, 1] + sy) - pos[i, 1]
                                dz = (pos[cj, 2] + sz) - pos[i, 2]
                            else:
                                dx = pos[cj, 0] - pos[i, 0]
                                dy = pos[cj, 1] - pos[i, 1]
                                dz = pos[cj, 2] - pos[i, 2]
                            dd = c_sqrt((dx * dx + dy * dy) + dz * dz)
                            if dd > min_dist and dd <= factor * (radii[i] + radii[cj]):
                                out_i.append(i)
                                out_j.append(cj)
                                out_img.append((<int>cand_img[cur, 0],
                                                <int>cand_img[cur, 1],
                                                <int>cand_img[cur, 2]))
                                out_len.append(dd)
                        cur = nxt[cur]
    return _pack_bonds(out_i, out_j, out_img, out_len)
