#!/usr/bin/env python3
"""Compare the compiled kernel extension against the NumPy fallback.

Runs each mesh kernel on sphere fields of growing size and the bond search
on growing supercells, checks the outputs are bitwise identical, and prints
a timing table.

Usage: python benchmarks/bench_kernels.py [--sizes 32,48,64,96]
"""

import argparse
import time

import numpy as np

import mxv._kernels_py as k_py

try:
    import mxv._kernels as k_c
except ImportError:
    k_c = None


def sphere(n):
    ax = np.arange(n)
    X, Y, Z = np.meshgrid(ax, ax, ax, indexing="ij")
    c = (n - 1) / 2
    return 0.38 * n - np.sqrt((X - c) ** 2 + (Y - c) ** 2 + (Z - c) ** 2)


def timed(fn, *args, repeat=3):
    best = np.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return out, best


def same(a, b):
    return all(x.shape == y.shape and np.array_equal(x, y) for x, y in zip(a, b))


def bench_meshes(sizes):
    print(f"{'kernel':<22}{'grid':>8}{'python [s]':>12}{'compiled [s]':>14}"
          f"{'speedup':>9}  identical")
    for n in sizes:
        f = sphere(n)
        for name in ("marching_cubes", "marching_tetrahedra", "surface_nets"):
            py_out, t_py = timed(getattr(k_py, name), f, 0.0, (1, 1, 1))
            if k_c is None:
                print(f"{name:<22}{n:>6}^3{t_py:>12.3f}{'-':>14}{'-':>9}  -")
                continue
            c_out, t_c = timed(getattr(k_c, name), f, 0.0, (1, 1, 1))
            print(f"{name:<22}{n:>6}^3{t_py:>12.3f}{t_c:>14.3f}"
                  f"{t_py / t_c:>8.1f}x  {same(py_out, c_out)}")


def bench_bonds(reps):
    print()
    print(f"{'bond search':<22}{'atoms':>8}{'python [s]':>12}{'compiled [s]':>14}"
          f"{'speedup':>9}  identical")
    base = np.array([(0, 0, 0), (0, .5, .5), (.5, 0, .5), (.5, .5, 0),
                     (.25, .25, .25), (.25, .75, .75), (.75, .25, .75),
                     (.75, .75, .25)]) * 5.43
    for m in reps:
        shifts = np.array([(p, q, r) for p in range(m) for q in range(m) for r in range(m)])
        pos = (base[None, :, :] + (shifts * 5.43)[:, None, :]).reshape(-1, 3)
        radii = np.full(len(pos), 1.11)
        lat = np.eye(3) * 5.43 * m
        py_out, t_py = timed(k_py.bond_search, pos, radii, 1.15, lat, 0.4, repeat=1)
        if k_c is None:
            print(f"{'':<22}{len(pos):>8}{t_py:>12.3f}{'-':>14}{'-':>9}  -")
            continue
        c_out, t_c = timed(k_c.bond_search, pos, radii, 1.15, lat, 0.4, repeat=1)
        print(f"{'':<22}{len(pos):>8}{t_py:>12.3f}{t_c:>14.3f}"
              f"{t_py / t_c:>8.1f}x  {same(py_out, c_out)}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="32,48,64",
                    help="comma-separated grid sizes for the mesh kernels")
    ap.add_argument("--cells", default="5,10,15",
                    help="comma-separated supercell multipliers for bond search")
    args = ap.parse_args()
    if k_c is None:
        print("compiled extension not available; timing the fallback only\n")
    bench_meshes([int(s) for s in args.sizes.split(",")])
    bench_bonds([int(s) for s in args.cells.split(",")])


if __name__ == "__main__":
    main()
