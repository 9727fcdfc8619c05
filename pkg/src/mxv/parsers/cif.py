"""CIF reader: cell items, atom-site loop, explicit symmetry-operator loop.

Only explicit operator loops are expanded; a bare space-group designation is
honored solely for P1. Site images are wrapped into [0, 1) and deduplicated
within a fractional tolerance of 1e-3 (component-wise, modulo 1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..elements import element_lookup
from ..errors import (
    BadSymmetryExpr,
    DegenerateCell,
    MissingCell,
    MissingSites,
    UnsupportedSymmetry,
)
from ..model import Atom, Lattice, Structure

DEDUP_TOL = 1e-3  # fractional, modulo 1

_SYMOP_TAGS = ("_symmetry_equiv_pos_as_xyz", "_space_group_symop_operation_xyz")
_GROUP_NAME_TAGS = ("_symmetry_space_group_name_h-m", "_space_group_name_h-m_alt")
_GROUP_NUMBER_TAGS = ("_symmetry_int_tables_number", "_space_group_it_number")


@dataclass(frozen=True)
class SymmetryOp:
    """Fractional-space map r -> rotation·r + translation (translation in [0,1))."""

    rotation: np.ndarray     # (3,3) integers in {-1,0,1}
    translation: np.ndarray  # (3,) in [0,1)

    def apply(self, frac) -> np.ndarray:
        return self.rotation @ np.asarray(frac, dtype=float) + self.translation


_TOKEN = re.compile(r"\s*([+-]?)\s*(x|y|z|\d+/\d+|\d*\.\d+|\d+)", re.IGNORECASE)


def parse_symmetry_op(expr: str) -> SymmetryOp:
    """Parse an xyz-style operator like "-x, y+1/2, -z+1/2"."""
    parts = expr.split(",")
    if len(parts) != 3:
        raise BadSymmetryExpr(f"need 3 comma-separated components: {expr!r}")
    rotation = np.zeros((3, 3), dtype=np.int64)
    translation = [Fraction(0)] * 3
    axes = {"x": 0, "y": 1, "z": 2}
    for row, part in enumerate(parts):
        pos = 0
        first = True
        while pos < len(part):
            m = _TOKEN.match(part, pos)
            if m is None:
                if part[pos:].strip() == "":
                    break
                raise BadSymmetryExpr(f"bad token at {part[pos:]!r} in {expr!r}")
            sign_str, body = m.groups()
            if not first and sign_str == "" and m.group(0).strip() == m.group(2):
                raise BadSymmetryExpr(f"missing +/- between terms in {part!r}")
            sign = -1 if sign_str == "-" else 1
            body_l = body.lower()
            if body_l in axes:
                col = axes[body_l]
                if rotation[row, col] != 0:
                    raise BadSymmetryExpr(f"axis {body} repeated in {part!r}")
                rotation[row, col] = sign
            elif "/" in body:
                num, den = body.split("/")
                translation[row] += sign * Fraction(int(num), int(den))
            else:
                translation[row] += sign * Fraction(body)
            pos = m.end()
            first = False
        if not np.any(rotation[row]):
            raise BadSymmetryExpr(f"component {part!r} uses no axis")
    det = round(float(np.linalg.det(rotation)))
    if abs(det) != 1:
        raise BadSymmetryExpr(f"rotation part of {expr!r} is singular")
    trans = np.array([float(t % 1) for t in translation])
    return SymmetryOp(rotation=rotation, translation=trans)


def lattice_from_parameters(a: float, b: float, c: float,
                            alpha: float, beta: float, gamma: float) -> Lattice:
    """Cell vectors from lengths (angstrom) and angles (degrees), with a1
    along x and a2 in the xy plane."""
    if min(a, b, c) <= 0:
        raise DegenerateCell(f"cell lengths must be positive: {(a, b, c)}")
    for ang in (alpha, beta, gamma):
        if not 0.0 < ang < 180.0:
            raise DegenerateCell(f"cell angles must lie in (0, 180): {(alpha, beta, gamma)}")
    ca, cb, cg = (np.cos(np.radians(v)) for v in (alpha, beta, gamma))
    sg = np.sin(np.radians(gamma))
    arg = 1.0 - ca * ca - cb * cb - cg * cg + 2.0 * ca * cb * cg
    if arg <= 0.0:
        raise DegenerateCell(f"cell angles {(alpha, beta, gamma)} enclose no volume")
    vectors = np.array([
        [a, 0.0, 0.0],
        [b * cg, b * sg, 0.0],
        [c * cb, c * (ca - cb * cg) / sg, c * np.sqrt(arg) / sg],
    ])
    return Lattice(vectors=vectors)


def strip_uncertainty(value: str) -> str:
    """Remove a parenthesized standard uncertainty: "5.4310(2)" -> "5.4310"."""
    return re.sub(r"\([\d]+\)\s*$", "", value.strip())


# --- lightweight CIF tokenizer ---

def _tokenize(text: str):
    """Yield CIF tokens: tags, loop_/data_ keywords and (possibly quoted)
    values. Semicolon text fields collapse to one value token."""
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i]
        if line.startswith(";"):
            i += 1
            block = []
            while i < len(lines) and not lines[i].startswith(";"):
                block.append(lines[i])
                i += 1
            i += 1
            yield ("value", "\n".join(block))
            continue
        pos = 0
        n = len(line)
        while pos < n:
            ch = line[pos]
            if ch in " \t":
                pos += 1
                continue
            if ch == "#":
                break
            if ch in "'\"":
                end = line.find(ch, pos + 1)
                while end != -1 and end + 1 < n and line[end + 1] not in " \t":
                    end = line.find(ch, end + 1)
                if end == -1:
                    yield ("value", line[pos + 1:])
                    pos = n
                else:
                    yield ("value", line[pos + 1:end])
                    pos = end + 1
                continue
            m = re.match(r"\S+", line[pos:])
            word = m.group(0)
            pos += len(word)
            low = word.lower()
            if low.startswith("data_"):
                yield ("data", word[5:])
            elif low == "loop_":
                yield ("loop", "")
            elif word.startswith("_"):
                yield ("tag", low)
            else:
                yield ("value", word)
        i += 1


def _parse_block(text: str) -> tuple[dict, list]:
    """First data block as (single items, loops); loops are (tags, rows)."""
    items: dict[str, str] = {}
    loops: list[tuple[list[str], list[list[str]]]] = []
    tokens = list(_tokenize(text))
    # restrict to the first data block when one exists
    starts = [i for i, (k, _) in enumerate(tokens) if k == "data"]
    if starts:
        end = starts[1] if len(starts) > 1 else len(tokens)
        tokens = tokens[starts[0] + 1:end]
    i = 0
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "tag":
            if i + 1 < len(tokens) and tokens[i + 1][0] == "value":
                items[val] = tokens[i + 1][1]
                i += 2
            else:
                i += 1
        elif kind == "loop":
            i += 1
            tags = []
            while i < len(tokens) and tokens[i][0] == "tag":
                tags.append(tokens[i][1])
                i += 1
            values = []
            while i < len(tokens) and tokens[i][0] == "value":
                values.append(tokens[i][1])
                i += 1
            if tags and values:
                ncol = len(tags)
                rows = [values[r:r + ncol] for r in range(0, len(values) - ncol + 1, ncol)]
                loops.append((tags, rows))
        else:
            i += 1
    return items, loops


def _cell_value(items: dict, tag: str) -> float:
    if tag not in items:
        raise MissingCell(f"CIF lacks {tag}")
    try:
        return float(strip_uncertainty(items[tag]))
    except ValueError:
        raise MissingCell(f"bad value for {tag}: {items[tag]!r}") from None


def _find_loop(loops: list, *needed: str):
    for tags, rows in loops:
        if all(any(t == n for t in tags) for n in needed):
            return tags, rows
    return None


def _wrap01(frac: np.ndarray) -> np.ndarray:
    w = frac % 1.0
    w[w >= 1.0] = 0.0  # 0.9999999999 % 1.0 can round up to 1.0
    return w


def _same_site(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    d = np.abs(a - b)
    d = np.minimum(d, 1.0 - d)
    return bool(np.all(d < tol))


def _is_p1(items: dict) -> bool:
    for tag in _GROUP_NUMBER_TAGS:
        if tag in items:
            try:
                return int(strip_uncertainty(items[tag])) == 1
            except ValueError:
                return False
    for tag in _GROUP_NAME_TAGS:
        if tag in items:
            name = items[tag].replace(" ", "").replace("_", "").upper()
            return name == "P1"
    return False


def _has_group_designation(items: dict) -> bool:
    return any(tag in items for tag in _GROUP_NAME_TAGS + _GROUP_NUMBER_TAGS)


def parse_cif(data: bytes | str) -> Structure:
    """Read the first data block into a fully expanded conventional cell."""
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
    items, loops = _parse_block(text)

    a = _cell_value(items, "_cell_length_a")
    b = _cell_value(items, "_cell_length_b")
    c = _cell_value(items, "_cell_length_c")
    alpha = _cell_value(items, "_cell_angle_alpha")
    beta = _cell_value(items, "_cell_angle_beta")
    gamma = _cell_value(items, "_cell_angle_gamma")
    lattice = lattice_from_parameters(a, b, c, alpha, beta, gamma)

    site_loop = _find_loop(loops, "_atom_site_fract_x", "_atom_site_fract_y",
                           "_atom_site_fract_z")
    if site_loop is None:
        raise MissingSites("CIF lacks an _atom_site loop with fractional coordinates")
    tags, rows = site_loop
    col = {t: i for i, t in enumerate(tags)}
    if "_atom_site_type_symbol" in col:
        species_col = col["_atom_site_type_symbol"]
    elif "_atom_site_label" in col:
        species_col = col["_atom_site_label"]
    else:
        raise MissingSites("atom-site loop has neither type_symbol nor label")

    ops: list[SymmetryOp] = []
    for tag in _SYMOP_TAGS:
        op_loop = _find_loop(loops, tag)
        if op_loop is not None:
            op_tags, op_rows = op_loop
            c_idx = op_tags.index(tag)
            ops = [parse_symmetry_op(row[c_idx]) for row in op_rows]
            break
    if not ops:
        if _has_group_designation(items) and not _is_p1(items):
            raise UnsupportedSymmetry(
                "space group given without an explicit symmetry-operator loop; "
                "only P1 is accepted in that form")
        ops = [parse_symmetry_op("x, y, z")]

    atoms = []
    serial = 1
    for row in rows:
        try:
            frac = np.array([float(strip_uncertainty(row[col[t]]))
                             for t in ("_atom_site_fract_x", "_atom_site_fract_y",
                                       "_atom_site_fract_z")])
        except (ValueError, IndexError):
            raise MissingSites(f"bad fractional coordinates in atom-site row {row!r}") from None
        species = row[species_col]
        images: list[np.ndarray] = []
        for op in ops:
            cand = _wrap01(op.apply(frac))
            if not any(_same_site(cand, known, DEDUP_TOL) for known in images):
                images.append(cand)
        element = element_lookup(species)
        for img in images:
            atoms.append(Atom(species=species, element=element,
                              position=img @ lattice.vectors, serial=serial))
            serial += 1
    if not atoms:
        raise MissingSites("atom-site loop has no usable rows")
    return Structure(atoms=tuple(atoms), lattice=lattice, comment="")
