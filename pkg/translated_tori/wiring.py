"""
Wiring diagrams of real affine line arrangements.

Lines are swept left to right after a shear x' = x + s*y chosen as the first
rational s in the order 0, 1, 1/2, 2, 1/3, 2/3, 3/2, 3, ... that leaves no
line vertical and no two vertices on one vertical. Everything is exact.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

from .errors import UnsupportedError, ValidationError

logger = logging.getLogger(__name__)

SHEAR_SEARCH_LIMIT = 10_000


@dataclass(frozen=True)
class Line:
    """A swept line y = slope * x + intercept."""

    label: str
    slope: Fraction
    intercept: Fraction

    def at(self, x: Fraction) -> Fraction:
        """Height of the line at x."""
        return self.slope * x + self.intercept


@dataclass(frozen=True)
class Event:
    """A crossing point and the wire order just before it."""

    x: Fraction
    y: Fraction
    lines: Tuple[int, ...]
    order_before: Tuple[int, ...]
    position: int

    @property
    def multiplicity(self) -> int:
        """Number of lines through the point."""
        return len(self.lines)


@dataclass(frozen=True)
class WiringDiagram:
    """Lines after a generic shear, with their crossings in sweep order."""

    lines: Tuple[Line, ...]
    shear: Fraction
    initial_order: Tuple[int, ...]
    events: Tuple[Event, ...]

    def census(self) -> Dict[int, int]:
        """Crossing multiplicity -> count."""
        return dict(sorted(Counter(e.multiplicity for e in self.events).items()))

    def relator_count(self) -> int:
        """Relators the presentation will have."""
        return sum(e.multiplicity - 1 for e in self.events)

    def to_json(self) -> dict:
        """Fractions as strings."""
        return {
            "shear": str(self.shear),
            "lines": [{"label": L.label, "slope": str(L.slope), "intercept": str(L.intercept)} for L in self.lines],
            "initial_order": list(self.initial_order),
            "events": [
                {"x": str(e.x), "y": str(e.y), "lines": list(e.lines), "order_before": list(e.order_before)}
                for e in self.events
            ],
        }


def _rational_rows(A) -> List[Tuple[Fraction, Fraction, Fraction]]:
    if A.ambient_dim != 2:
        raise ValidationError(f"wiring diagrams need lines in the plane, {A.name} lives in dimension {A.ambient_dim}")
    rows = []
    for H in A:
        coeffs = H.normal + (H.constant,)
        if not all(c.is_rational() for c in coeffs):
            raise UnsupportedError(f"{H.label} of {A.name} has non-rational coefficients; only rational lines are swept")
        rows.append(tuple(c.rational_value() for c in coeffs))
    return rows


def _vertices(rows) -> Dict[Tuple[Fraction, Fraction], Tuple[int, ...]]:
    points: Dict[Tuple[Fraction, Fraction], set] = {}
    for i in range(len(rows)):
        ai, bi, ci = rows[i]
        for j in range(i + 1, len(rows)):
            aj, bj, cj = rows[j]
            det = ai * bj - aj * bi
            if det == 0:
                continue
            x = (bi * cj - bj * ci) / det
            y = (aj * ci - ai * cj) / det
            points.setdefault((x, y), set()).update((i, j))
    return {p: tuple(sorted(s)) for p, s in points.items()}


def shear_candidates() -> Iterator[Fraction]:
    """0, then positive rationals by increasing height."""
    yield Fraction(0)
    height = 1
    while True:
        row = sorted(
            {Fraction(p, q) for p in range(1, height + 1) for q in range(1, height + 1) if max(p, q) == height and math.gcd(p, q) == 1}
        )
        yield from row
        height += 1


def _shear_ok(rows, vertices, s: Fraction) -> bool:
    if any(b - a * s == 0 for a, b, _ in rows):
        return False
    xs = [x + s * y for x, y in vertices]
    return len(set(xs)) == len(xs)


def wiring_diagram(A) -> WiringDiagram:
    """Sweep a real line arrangement left to right."""
    rows = _rational_rows(A)
    vertices = _vertices(rows)
    for count, s in enumerate(shear_candidates()):
        if count > SHEAR_SEARCH_LIMIT:
            raise RuntimeError("no generic shear found")
        if _shear_ok(rows, vertices, s):
            break
    logger.debug(f"wiring {A.name} with shear {s}")
    lines = []
    for H, (a, b, c) in zip(A, rows):
        # a(x' - s y) + b y + c = 0
        denom = b - a * s
        lines.append(Line(H.label, -a / denom, -c / denom))
    # increasing y as x' -> -infinity: steeper slopes sit lower
    order = sorted(range(len(lines)), key=lambda i: (-lines[i].slope, lines[i].intercept))
    initial = tuple(order)
    events = []
    for (x, y), members in sorted(vertices.items(), key=lambda kv: kv[0][0] + s * kv[0][1]):
        xs = x + s * y
        slots = sorted(order.index(i) for i in members)
        if slots[-1] - slots[0] != len(slots) - 1:
            raise RuntimeError(f"lines {members} are not adjacent at x = {xs}")
        lo, hi = slots[0], slots[-1] + 1
        events.append(Event(xs, y, members, tuple(order[lo:hi]), lo))
        order[lo:hi] = reversed(order[lo:hi])
    return WiringDiagram(tuple(lines), s, initial, tuple(events))
