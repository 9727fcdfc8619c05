"""Format auto-detection from filename extension and leading file content."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import UnknownFormat

KINDS = ("xyz", "xyz_multi", "cif", "openmx_dat", "openmx_md", "cube", "band")

_EXTENSIONS = {
    ".xyz": "xyz",
    ".cif": "cif",
    ".dat": "openmx_dat",
    ".md": "openmx_md",
    ".cube": "cube",
    ".band": "band",
}

_FLOAT = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eEdD][-+]?\d+)?"


@dataclass(frozen=True)
class DetectedFormat:
    kind: str        # one of KINDS
    confidence: str  # "by_extension" | "by_content"


def _is_int(tok: str) -> bool:
    return re.fullmatch(r"[-+]?\d+", tok) is not None


def _is_float(tok: str) -> bool:
    return re.fullmatch(_FLOAT, tok) is not None


def _nonblank(lines: list[str]) -> list[str]:
    return [ln for ln in lines if ln.strip()]


def _xyz_frames_in_head(lines: list[str]) -> int:
    """Count complete `N / comment / N rows` blocks visible in the head."""
    frames = 0
    i = 0
    while i < len(lines):
        if not lines[i].strip():
            i += 1
            continue
        tok = lines[i].split()
        if len(tok) != 1 or not _is_int(tok[0]) or int(tok[0]) < 1:
            return frames
        n = int(tok[0])
        if i + 1 >= len(lines):
            return frames
        rows = lines[i + 2: i + 2 + n]
        if len(rows) < n:
            # frame truncated by the head window; count it as present
            return frames + 1 if _looks_coord_rows(rows) or not rows else frames
        if not _looks_coord_rows(rows):
            return frames
        frames += 1
        i += 2 + n
    return frames


def _looks_coord_rows(rows: list[str]) -> bool:
    for row in rows:
        tok = row.split()
        if len(tok) < 4 or not tok[0][:1].isalpha():
            return False
        if not all(_is_float(t) for t in tok[1:4]):
            return False
    return True


def _looks_cif(lines: list[str]) -> bool:
    for ln in lines:
        t = ln.strip()
        if t.startswith("data_") or t.startswith("_cell_") or t.startswith("_audit"):
            return True
    return False


def _looks_openmx_dat(text: str) -> bool:
    return re.search(r"atoms\.number", text, re.IGNORECASE) is not None


def _looks_cube(lines: list[str]) -> bool:
    nb = _nonblank(lines)
    if len(nb) < 6:
        return False
    hdr = nb[2].split()
    if len(hdr) < 4 or not _is_int(hdr[0]) or not all(_is_float(t) for t in hdr[1:4]):
        return False
    for ln in nb[3:6]:
        tok = ln.split()
        if len(tok) < 4 or not _is_int(tok[0]) or not all(_is_float(t) for t in tok[1:4]):
            return False
    return True


def _looks_band(lines: list[str]) -> bool:
    nb = _nonblank(lines)
    if len(nb) < 3:
        return False
    t1 = nb[0].split()
    if len(t1) != 3 or not _is_int(t1[0]) or t1[1] not in ("0", "1") or not _is_float(t1[2]):
        return False
    t2 = nb[1].split()
    return len(t2) == 9 and all(_is_float(t) for t in t2)


def _content_kind(text: str, lines: list[str]) -> str | None:
    if _looks_cif(lines):
        return "cif"
    if _looks_openmx_dat(text):
        return "openmx_dat"
    if _looks_cube(lines):
        return "cube"
    if _looks_band(lines):
        return "band"
    frames = _xyz_frames_in_head(lines)
    if frames >= 2:
        return "xyz_multi"
    if frames == 1:
        return "xyz"
    return None


def _consistent(kind: str, text: str, lines: list[str]) -> bool:
    if kind == "cif":
        return _looks_cif(lines)
    if kind == "openmx_dat":
        return _looks_openmx_dat(text)
    if kind == "cube":
        return _looks_cube(lines)
    if kind == "band":
        return _looks_band(lines)
    # .xyz and .md share the frame layout
    return _xyz_frames_in_head(lines) >= 1


def detect_format(filename: str, head: bytes) -> DetectedFormat:
    """Identify a file's kind from its name and first bytes.

    The extension decides when the content is consistent with it; otherwise
    content heuristics take over. `head` should hold the first <= 4096 bytes.
    """
    text = head.decode("utf-8", errors="replace")
    lines = text.splitlines()
    ext = ""
    name = filename or ""
    if "." in name:
        ext = "." + name.rsplit(".", 1)[1].lower()
    kind = _EXTENSIONS.get(ext)
    if kind is not None and _consistent(kind, text, lines):
        if kind == "xyz" and _xyz_frames_in_head(lines) >= 2:
            kind = "xyz_multi"
        return DetectedFormat(kind=kind, confidence="by_extension")
    kind = _content_kind(text, lines)
    if kind is None:
        raise UnknownFormat(f"cannot recognize {filename!r} by extension or content")
    return DetectedFormat(kind=kind, confidence="by_content")
