"""Exact rational scalars: parsing, formatting, and the infinite length marker.

Every number that crosses a module boundary is a `fractions.Fraction` or the
singleton `INF`.  Floats are rejected on input and never produced on output;
all serialized values use the string forms "p/q", "p", or "inf".
"""

from __future__ import annotations

import re
from fractions import Fraction

_MONOMIAL = re.compile(r"t\^\(?(-?\d+(?:/\d+)?)\)?$")


class Infinity:
    """Marker for an infinite edge length (a persistent node, v(0) = inf)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("tropmoduli.inf")


INF = Infinity()


def parse_rational(value) -> Fraction:
    """Parse an exact rational from an int or a string.

    Accepted string forms: "5", "-3", "5/2", and valuation shorthands for
    monomials in a uniformizer, "t^5" or "t^(5/2)" (meaning 5 and 5/2).
    Floats are rejected: they cannot represent the intended value exactly.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise ValueError(
            f"refusing float {value!r}: pass an exact string like '5/2' instead"
        )
    if isinstance(value, str):
        s = value.strip()
        m = _MONOMIAL.match(s)
        if m:
            s = m.group(1)
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


def parse_length(value) -> Fraction | Infinity:
    """Parse an edge length: a rational as above, or "inf" for infinity."""
    if isinstance(value, Infinity):
        return INF
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity"):
        return INF
    return parse_rational(value)


def format_rational(q) -> str:
    """Render a Fraction (or INF) in the canonical "p/q" / "p" / "inf" form."""
    if isinstance(q, Infinity):
        return "inf"
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
