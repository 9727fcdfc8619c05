"""Element lookup keyed by chemical symbol or species tag."""

from __future__ import annotations

from functools import lru_cache

from ._element_data import ELEMENT_TABLE
from .errors import UnknownElement
from .model import Element

_BY_SYMBOL = {sym: Element(sym, z, cov, disp, color)
              for z, (sym, cov, disp, color) in ELEMENT_TABLE.items()}
_BY_NUMBER = {e.atomic_number: e for e in _BY_SYMBOL.values()}


def element_from_number(z: int) -> Element:
    try:
        return _BY_NUMBER[int(z)]
    except KeyError:
        raise UnknownElement(f"no element with atomic number {z}") from None


@lru_cache(maxsize=4096)
def element_lookup(symbol_or_tag: str) -> Element:
    """Resolve a symbol or species tag ("Si7.0-s2p2d1", "MoSe2", "c") to an Element.

    Trailing digits/punctuation are ignored; the leading one or two alphabetic
    characters are matched case-insensitively, longest match first.
    """
    if not symbol_or_tag or not isinstance(symbol_or_tag, str):
        raise UnknownElement(f"empty species tag {symbol_or_tag!r}")
    head = []
    for ch in symbol_or_tag:
        if ch.isalpha():
            head.append(ch)
            if len(head) == 2:
                break
        else:
            break
    if not head:
        raise UnknownElement(f"no element symbol in {symbol_or_tag!r}")
    if len(head) == 2:
        two = (head[0] + head[1]).capitalize()
        if two in _BY_SYMBOL:
            return _BY_SYMBOL[two]
    one = head[0].upper()
    if one in _BY_SYMBOL:
        return _BY_SYMBOL[one]
    raise UnknownElement(f"unknown element in species tag {symbol_or_tag!r}")


def all_symbols() -> tuple[str, ...]:
    return tuple(_BY_SYMBOL)
