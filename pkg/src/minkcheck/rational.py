"""Exact rational literals.

All coordinates and line parameters in this package are `fractions.Fraction`
values.  The textual syntax accepted everywhere (model files, CLI flags,
witness payloads) is ``p/q`` or a plain integer ``n``; event coordinates are
written ``(t,x)``.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"[+-]?\d+(/[1-9]\d*)?\Z")


class LiteralError(ValueError):
    """A rational or event literal does not match the accepted grammar."""


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise LiteralError(f"not a rational literal: {text!r} (expected p/q or n)")
    return Fraction(s)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_coords(text: str) -> tuple[Fraction, Fraction]:
    """Parse an event literal ``(t,x)`` with rational components."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise LiteralError(f"not an event literal: {text!r} (expected (t,x))")
    parts = s[1:-1].split(",")
    if len(parts) != 2:
        raise LiteralError(f"event literal needs exactly two components: {text!r}")
    return parse_rational(parts[0]), parse_rational(parts[1])


def format_coords(t: Fraction, x: Fraction) -> str:
    return f"({format_rational(t)},{format_rational(x)})"


def parse_coord_list(text: str) -> list[tuple[Fraction, Fraction]]:
    """Parse a semicolon-separated list of ``(t,x)`` literals."""
    items = [chunk for chunk in text.split(";") if chunk.strip()]
    if not items:
        raise LiteralError("empty event list")
    return [parse_coords(chunk) for chunk in items]
