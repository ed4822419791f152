# clpoly/parsing.py
"""
Command-line value parsing: rationals ("p/q" or decimal strings, converted
exactly), comma lists of them, and degree lists such as "2..10,20".

Every failure raises ParseError with the 0-based offset of the offending item.
"""

import logging
import re
from fractions import Fraction
from typing import Iterator, List, Tuple

from .errors import ParseError

logger = logging.getLogger(__name__)

_RATIONAL_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?(/\d+)?")
_RANGE_RE = re.compile(r"(\d+)\s*\.\.\s*(\d+)")


def _items(text: str) -> Iterator[Tuple[str, int]]:
    """Comma-separated items with the offset of their first non-blank character."""
    offset = 0
    for raw in text.split(","):
        stripped = raw.lstrip()
        yield stripped.rstrip(), offset + (len(raw) - len(stripped))
        offset += len(raw) + 1


def parse_rational(text: str, position: int = 0) -> Fraction:
    """
    Exact rational from "p/q", an integer or a decimal string ("0.1" is 1/10).
    """
    item = text.strip()
    if not item:
        raise ParseError("empty rational", position)
    if not _RATIONAL_RE.fullmatch(item):
        raise ParseError(f"not a rational number: {item!r}", position)
    try:
        return Fraction(item)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not a rational number: {item!r} ({e})", position) from e


def parse_rational_list(text: str) -> List[Fraction]:
    if not text or not text.strip():
        raise ParseError("expected a comma-separated list of rationals", 0)
    return [parse_rational(item, pos) for item, pos in _items(text)]


def parse_int(text: str, position: int = 0) -> int:
    item = text.strip()
    try:
        return int(item)
    except ValueError as e:
        raise ParseError(f"not an integer: {item!r}", position) from e


def parse_degrees(text: str) -> List[int]:
    """
    Degrees from a comma list of integers and inclusive "a..b" ranges, in
    order of first appearance.
    """
    if not text or not text.strip():
        raise ParseError("expected a degree list such as 2..10,20", 0)
    out: List[int] = []
    for item, pos in _items(text):
        m = _RANGE_RE.fullmatch(item)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise ParseError(f"empty degree range {item!r}", pos)
            out.extend(range(lo, hi + 1))
        else:
            out.append(parse_int(item, pos))
    degrees = list(dict.fromkeys(out))
    logger.debug("Parsed %d degrees from %r.", len(degrees), text)
    return degrees
