"""Command-line interface. Every subcommand is a thin wrapper over library
calls; exit code 0 = success, 1 = usage/selection error, 2 = parse or data
error."""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .errors import MxvError, SelectionError
from .jsonio import (
    bonds_json,
    measurement_json,
    summary_json,
    to_json_bytes,
)
from .model import Trajectory, VolumetricGrid, BandData


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mxv", description="structure / volumetric data / band toolkit")
    p.add_argument("--version", action="version", version=f"mxv {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("info", help="detect a file's format and summarize it")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("convert", help="rewrite a structure in another format")
    sp.add_argument("file")
    sp.add_argument("--to", required=True,
                    choices=["xyz", "cif", "omx-cart", "omx-frac"])
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--frame", type=int, default=0)

    sp = sub.add_parser("supercell", help="replicate a periodic structure")
    sp.add_argument("file")
    sp.add_argument("--dims", required=True, metavar="AxBxC")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--to", default="xyz",
                    choices=["xyz", "cif", "omx-cart", "omx-frac"])
    sp.add_argument("--frame", type=int, default=0)

    sp = sub.add_parser("measure", help="distances/angles/dihedral over picked atoms")
    sp.add_argument("file")
    sp.add_argument("--atoms", required=True, metavar="i,j[,k[,l]]")
    sp.add_argument("--frame", type=int, default=0)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("bonds", help="detect bonds from covalent radii")
    sp.add_argument("file")
    sp.add_argument("--factor", type=float, default=1.0)
    sp.add_argument("--frame", type=int, default=0)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("isosurface", help="extract an isosurface mesh from a cube file")
    sp.add_argument("file")
    sp.add_argument("--isovalue", type=float, default=None)
    sp.add_argument("--algorithm", choices=["mc", "mt", "sn"], default="mc")
    sp.add_argument("--supercell", default="1x1x1", metavar="AxBxC")
    sp.add_argument("--negative", action="store_true",
                    help="export the negative surface instead of the positive one")
    sp.add_argument("--format", choices=["obj", "ply"], default=None)
    sp.add_argument("-o", "--output", required=True)

    sp = sub.add_parser("band", help="export band-plot data as CSV")
    sp.add_argument("file")
    sp.add_argument("--csv", required=True, metavar="OUT")
    sp.add_argument("--emin", type=float, default=None)
    sp.add_argument("--emax", type=float, default=None)

    sp = sub.add_parser("serve", help="start the local viewer service")
    sp.add_argument("--port", type=int, default=8787)
    sp.add_argument("--bind", default="127.0.0.1")
    sp.add_argument("--max-docs", type=int, default=32)
    sp.add_argument("--max-upload", type=int, default=None, metavar="BYTES")

    return p


def _load(path: str):
    from .parsers import load_path

    return load_path(path)


def _write_out(path: str, data: bytes):
    with open(path, "wb") as fh:
        fh.write(data)


def _atoms_arg(text: str) -> list[int]:
    try:
        picks = [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise UsageError(f"--atoms expects comma-separated serials, got {text!r}") from None
    if not 1 <= len(picks) <= 4:
        raise UsageError(f"--atoms expects 1..4 serials, got {len(picks)}")
    return picks


def _writer_format(name: str) -> str:
    return name.replace("-", "_")


def cmd_info(args) -> int:
    detected, payload = _load(args.file)
    summary = summary_json(detected.kind, payload)
    if args.json:
        sys.stdout.buffer.write(to_json_bytes({
            "kind": detected.kind,
            "confidence": detected.confidence,
            "summary": summary,
        }))
        return 0
    print(f"format: {detected.kind} ({detected.confidence})")
    for key, val in summary.items():
        print(f"{key}: {val}")
    return 0


def cmd_convert(args) -> int:
    from .views import displayed_structure
    from .writers import write_structure

    _, payload = _load(args.file)
    s, _, _, _ = displayed_structure(payload, frame=args.frame)
    _write_out(args.output, write_structure(s, _writer_format(args.to)))
    print(f"wrote {args.output}")
    return 0


def cmd_supercell(args) -> int:
    from .views import displayed_structure, parse_dims
    from .writers import write_structure

    dims = parse_dims(args.dims)
    _, payload = _load(args.file)
    s, _, _, _ = displayed_structure(payload, frame=args.frame, supercell=dims)
    _write_out(args.output, write_structure(s, _writer_format(args.to)))
    print(f"wrote {args.output} ({len(s)} atoms)")
    return 0


def cmd_measure(args) -> int:
    from .geometry import measure_selection
    from .views import displayed_structure

    picks = _atoms_arg(args.atoms)
    _, payload = _load(args.file)
    s, _, _, _ = displayed_structure(payload, frame=args.frame)
    report = measure_selection(s, picks)
    if args.json:
        sys.stdout.buffer.write(to_json_bytes(measurement_json(report)))
        return 0
    for a in report.picked:
        x, y, z = a.position
        print(f"atom {a.serial} {a.species}: ({x:.6f}, {y:.6f}, {z:.6f})")
    pairs = [(report.picked[i].serial, report.picked[i + 1].serial)
             for i in range(len(report.picked) - 1)]
    for (i, j), d in zip(pairs, report.distances):
        print(f"distance {i}-{j}: {d:.6f} A")
    for n, ang in enumerate(report.angles):
        serials = "-".join(str(a.serial) for a in report.picked[n:n + 3])
        print(f"angle {serials}: " + (f"{ang:.4f} deg" if ang is not None else "undefined"))
    if len(report.picked) == 4:
        serials = "-".join(str(a.serial) for a in report.picked)
        if report.dihedral is not None:
            print(f"dihedral {serials}: {report.dihedral:.4f} deg")
        else:
            print(f"dihedral {serials}: undefined ({report.degenerate.get('dihedral', '')})")
    return 0


def cmd_bonds(args) -> int:
    from .geometry import detect_bonds
    from .views import displayed_structure

    _, payload = _load(args.file)
    s, _, _, _ = displayed_structure(payload, frame=args.frame)
    bonds = detect_bonds(s, bond_factor=args.factor)
    if args.json:
        sys.stdout.buffer.write(to_json_bytes(bonds_json(bonds, args.factor)))
        return 0
    print(f"{len(bonds)} bonds (factor {args.factor})")
    for b in bonds:
        img = "" if b.image == (0, 0, 0) else f" image {b.image}"
        print(f"{s.atoms[b.i].serial:>5} {s.atoms[b.j].serial:>5}  {b.length:.4f} A{img}")
    return 0


def cmd_isosurface(args) -> int:
    from .isosurface import default_isovalue, extract_pair
    from .views import parse_dims
    from .writers import write_mesh

    _, payload = _load(args.file)
    if not isinstance(payload, VolumetricGrid):
        raise UsageError(f"{args.file} is not volumetric data")
    iso = args.isovalue if args.isovalue is not None else default_isovalue(payload)
    supercell = parse_dims(args.supercell)
    pos, neg = extract_pair(payload, iso, algorithm=args.algorithm, supercell=supercell)
    mesh = neg if args.negative else pos
    fmt = args.format or (os.path.splitext(args.output)[1].lstrip(".").lower() or "obj")
    if fmt not in ("obj", "ply"):
        fmt = "obj"
    _write_out(args.output, write_mesh(mesh, fmt))
    print(f"wrote {args.output}: {mesh.sign} surface at isovalue {iso:g}, "
          f"{len(mesh.vertices)} vertices, {len(mesh.triangles)} triangles")
    return 0


def cmd_band(args) -> int:
    from .writers import write_band_table

    _, payload = _load(args.file)
    if not isinstance(payload, BandData):
        raise UsageError(f"{args.file} is not band data")
    _write_out(args.csv, write_band_table(payload, emin=args.emin, emax=args.emax))
    print(f"wrote {args.csv}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import DEFAULT_MAX_UPLOAD, create_app

    port = int(os.environ.get("MXV_PORT", args.port))
    bind = os.environ.get("MXV_BIND", args.bind)
    max_upload = args.max_upload if args.max_upload is not None else DEFAULT_MAX_UPLOAD
    max_upload = int(os.environ.get("MXV_MAX_UPLOAD", max_upload))
    app = create_app(max_docs=args.max_docs, max_upload=max_upload)
    uvicorn.run(app, host=bind, port=port, log_level="info")
    return 0


_COMMANDS = {
    "info": cmd_info,
    "convert": cmd_convert,
    "supercell": cmd_supercell,
    "measure": cmd_measure,
    "bonds": cmd_bonds,
    "isosurface": cmd_isosurface,
    "band": cmd_band,
    "serve": cmd_serve,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SelectionError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except MxvError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
