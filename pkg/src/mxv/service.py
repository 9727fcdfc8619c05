"""Local HTTP+JSON service backing the web viewer.

Documents live in an in-memory LRU store keyed by an opaque upload id; the
store is the only state. Parse, mesh and measure work runs in the thread
pool so slow extractions never stall the event loop, and operations on one
document are serialized by a per-document lock.

Error mapping: 404 unknown id, 400 malformed request body, 413 oversized
upload, 422 parse/data errors (body carries the library error class name).
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from collections import OrderedDict
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from starlette.concurrency import run_in_threadpool

from . import __version__
from .errors import MxvError
from .jsonio import (
    band_plot_json,
    measurement_json,
    mesh_json,
    structure_json,
    summary_json,
    to_json_bytes,
)
from .model import BandData, VolumetricGrid

DEFAULT_MAX_UPLOAD = 256 * 1024 * 1024  # bytes
DEFAULT_MAX_DOCS = 32

_EXPORT_FORMATS = {"xyz": "xyz", "cif": "cif", "omx-cart": "omx_cart",
                   "omx-frac": "omx_frac"}


@dataclass
class Document:
    id: str
    kind: str
    payload: object
    created_at: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class DocumentStore:
    """Thread-safe LRU map of upload id -> Document."""

    def __init__(self, max_docs: int):
        self._docs: OrderedDict[str, Document] = OrderedDict()
        self._lock = threading.Lock()
        self._max = max_docs

    def put(self, kind: str, payload) -> Document:
        doc = Document(id=secrets.token_hex(8), kind=kind, payload=payload,
                       created_at=time.time())
        with self._lock:
            self._docs[doc.id] = doc
            while len(self._docs) > self._max:
                self._docs.popitem(last=False)
        return doc

    def get(self, doc_id: str) -> Document | None:
        with self._lock:
            doc = self._docs.get(doc_id)
            if doc is not None:
                self._docs.move_to_end(doc_id)
            return doc

    def __len__(self) -> int:
        with self._lock:
            return len(self._docs)


class _HttpError(Exception):
    def __init__(self, status: int, name: str, detail: str):
        self.status = status
        self.name = name
        self.detail = detail


def _json_response(obj, status: int = 200) -> Response:
    return Response(content=to_json_bytes(obj), status_code=status,
                    media_type="application/json")


async def _json_body(request: Request) -> dict:
    raw = await request.body()
    try:
        body = json.loads(raw) if raw else {}
    except json.JSONDecodeError as exc:
        raise _HttpError(400, "MalformedBody", f"request body is not JSON: {exc}") from None
    if not isinstance(body, dict):
        raise _HttpError(400, "MalformedBody", "request body must be a JSON object")
    return body


def _supercell_of(value) -> tuple[int, int, int]:
    from .views import parse_dims

    if value is None:
        return (1, 1, 1)
    if isinstance(value, str):
        return parse_dims(value)
    if isinstance(value, (list, tuple)) and len(value) == 3:
        dims = tuple(int(v) for v in value)
        if min(dims) < 1:
            raise ValueError(f"supercell factors must be >= 1, got {value}")
        return dims
    raise ValueError(f"supercell must be AxBxC or [a,b,c], got {value!r}")


def create_app(max_docs: int = DEFAULT_MAX_DOCS,
               max_upload: int = DEFAULT_MAX_UPLOAD) -> FastAPI:
    app = FastAPI(title="mxv viewer service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"^https?://(localhost|127\.0\.0\.1)(:\d+)?$",
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = DocumentStore(max_docs=max_docs)
    app.state.store = store

    @app.exception_handler(_HttpError)
    async def handle_http_error(_req, exc: _HttpError):
        return JSONResponse({"error": exc.name, "detail": exc.detail},
                            status_code=exc.status)

    @app.exception_handler(MxvError)
    async def handle_mxv_error(_req, exc: MxvError):
        return JSONResponse({"error": type(exc).__name__, "detail": str(exc)},
                            status_code=422)

    @app.exception_handler(ValueError)
    async def handle_value_error(_req, exc: ValueError):
        return JSONResponse({"error": "BadRequest", "detail": str(exc)},
                            status_code=400)

    def _doc(doc_id: str) -> Document:
        doc = store.get(doc_id)
        if doc is None:
            raise _HttpError(404, "UnknownDocument", f"no document {doc_id!r}")
        return doc

    @app.get("/api/version")
    async def version():
        return _json_response({"name": "mxv", "version": __version__, "api": 1})

    @app.post("/api/documents")
    async def upload(request: Request):
        length = request.headers.get("content-length")
        if length is not None and int(length) > max_upload:
            raise _HttpError(413, "UploadTooLarge",
                             f"upload exceeds the {max_upload}-byte cap")
        data = await request.body()
        if len(data) > max_upload:
            raise _HttpError(413, "UploadTooLarge",
                             f"upload exceeds the {max_upload}-byte cap")
        filename = (request.headers.get("x-filename")
                    or request.query_params.get("filename") or "upload")

        from .parsers import parse_any

        detected, payload = await run_in_threadpool(parse_any, filename, data)
        doc = store.put(detected.kind, payload)
        return _json_response({
            "id": doc.id,
            "kind": doc.kind,
            "summary": summary_json(doc.kind, doc.payload),
        })

    @app.get("/api/documents/{doc_id}/structure")
    async def structure(doc_id: str, frame: int = 0, supercell: str = "1x1x1",
                        bond_factor: float = 1.0):
        doc = _doc(doc_id)

        def work():
            from .geometry import detect_bonds
            from .views import displayed_structure

            with doc.lock:
                s, energy, t, count = displayed_structure(
                    doc.payload, frame=frame, supercell=_supercell_of(supercell))
                bonds = detect_bonds(s, bond_factor=bond_factor)
                body = structure_json(s, bonds, doc.kind, frame, count, energy, t)
                if hasattr(doc.payload, "energies"):
                    body["energies"] = list(doc.payload.energies)
                    body["times"] = list(doc.payload.times)
                else:
                    body["energies"] = None
                    body["times"] = None
                return body

        return _json_response(await run_in_threadpool(work))

    @app.post("/api/documents/{doc_id}/measure")
    async def measure(doc_id: str, request: Request):
        doc = _doc(doc_id)
        body = await _json_body(request)
        picks = body.get("atoms")
        if not isinstance(picks, list) or not picks or not all(
                isinstance(p, int) for p in picks):
            raise _HttpError(400, "MalformedBody",
                             '"atoms" must be a non-empty list of serial numbers')
        frame = body.get("frame", 0)
        if not isinstance(frame, int):
            raise _HttpError(400, "MalformedBody", '"frame" must be an integer')
        supercell = _supercell_of(body.get("supercell"))

        def work():
            from .geometry import measure_selection
            from .views import displayed_structure

            with doc.lock:
                s, _, _, _ = displayed_structure(doc.payload, frame=frame,
                                                 supercell=supercell)
                return measurement_json(measure_selection(s, picks))

        return _json_response(await run_in_threadpool(work))

    @app.get("/api/documents/{doc_id}/volume/meta")
    async def volume_meta(doc_id: str):
        doc = _doc(doc_id)
        if not isinstance(doc.payload, VolumetricGrid):
            raise _HttpError(422, "WrongDocumentKind",
                             f"document {doc_id} holds {doc.kind}, not volumetric data")
        from .isosurface import default_isovalue

        grid = doc.payload
        return _json_response({
            "dims": list(grid.dims),
            "max_abs": grid.max_abs(),
            "default_isovalue": default_isovalue(grid),
            "atoms": len(grid.atoms),
        })

    @app.post("/api/documents/{doc_id}/volume/mesh")
    async def volume_mesh(doc_id: str, request: Request):
        doc = _doc(doc_id)
        if not isinstance(doc.payload, VolumetricGrid):
            raise _HttpError(422, "WrongDocumentKind",
                             f"document {doc_id} holds {doc.kind}, not volumetric data")
        body = await _json_body(request)
        algorithm = body.get("algorithm", "mc")
        if algorithm not in ("mc", "mt", "sn"):
            raise _HttpError(400, "MalformedBody",
                             f'"algorithm" must be mc, mt or sn, got {algorithm!r}')
        supercell = _supercell_of(body.get("supercell"))
        isovalue = body.get("isovalue")
        if isovalue is not None and not isinstance(isovalue, (int, float)):
            raise _HttpError(400, "MalformedBody", '"isovalue" must be a number')

        def work():
            from .isosurface import default_isovalue, extract_pair

            with doc.lock:
                iso = isovalue if isovalue is not None else default_isovalue(doc.payload)
                pos, neg = extract_pair(doc.payload, float(iso),
                                        algorithm=algorithm, supercell=supercell)
                return {
                    "isovalue": float(iso),
                    "algorithm": algorithm,
                    "supercell": list(supercell),
                    "positive": mesh_json(pos),
                    "negative": mesh_json(neg),
                }

        return _json_response(await run_in_threadpool(work))

    @app.get("/api/documents/{doc_id}/band")
    async def band(doc_id: str):
        doc = _doc(doc_id)
        if not isinstance(doc.payload, BandData):
            raise _HttpError(422, "WrongDocumentKind",
                             f"document {doc_id} holds {doc.kind}, not band data")

        def work():
            from .bandplot import assemble_band_plot

            with doc.lock:
                return band_plot_json(assemble_band_plot(doc.payload))

        return _json_response(await run_in_threadpool(work))

    @app.post("/api/documents/{doc_id}/export")
    async def export(doc_id: str, request: Request):
        doc = _doc(doc_id)
        body = await _json_body(request)
        fmt = body.get("format")
        if fmt not in _EXPORT_FORMATS:
            raise _HttpError(400, "MalformedBody",
                             f'"format" must be one of {sorted(_EXPORT_FORMATS)}, got {fmt!r}')
        frame = body.get("frame", 0)
        if not isinstance(frame, int):
            raise _HttpError(400, "MalformedBody", '"frame" must be an integer')

        def work():
            from .views import displayed_structure
            from .writers import write_structure

            with doc.lock:
                s, _, _, _ = displayed_structure(doc.payload, frame=frame)
                return write_structure(s, _EXPORT_FORMATS[fmt])

        data = await run_in_threadpool(work)
        ext = fmt.split("-")[0] if fmt.startswith("omx") else fmt
        name = f"structure.{'dat' if ext == 'omx' else ext}"
        return Response(content=data, media_type="text/plain",
                        headers={"Content-Disposition": f'attachment; filename="{name}"'})

    webui_dir = Path(__file__).parent / "webui"
    if webui_dir.is_dir():
        app.mount("/", StaticFiles(directory=str(webui_dir), html=True), name="webui")

    return app
