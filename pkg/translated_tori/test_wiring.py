"""
Tests for wiring diagrams of real line arrangements.

Run with: python -m pytest translated_tori/test_wiring.py -v
"""
from fractions import Fraction
from itertools import islice

import pytest

from translated_tori.arrangement import boolean_arrangement, decone, monomial_arrangement
from translated_tori.errors import UnsupportedError, ValidationError
from translated_tori.parsing import parse_defining_polynomial
from translated_tori.wiring import shear_candidates, wiring_diagram


@pytest.fixture
def dD2():
    return decone(monomial_arrangement(2, full=False), "H1")


class TestShear:
    """Shear candidates."""

    def test_order(self):
        """Small heights first."""
        got = list(islice(shear_candidates(), 8))
        expected = [0, 1, Fraction(1, 2), 2, Fraction(1, 3), Fraction(2, 3), Fraction(3, 2), 3]
        assert got == [Fraction(x) for x in expected]

    def test_no_vertical_lines(self, dD2):
        """The chosen shear leaves every line with a finite slope."""
        wd = wiring_diagram(dD2)
        xs = [e.x for e in wd.events]
        assert xs == sorted(xs)
        assert len(set(xs)) == len(xs)


class TestEvents:
    """Sweep events."""

    def test_decone_census(self, dD2):
        """Two double points and five triple points."""
        wd = wiring_diagram(dD2)
        assert wd.census() == {2: 2, 3: 5}
        assert wd.relator_count() == dD2.poset.poincare()[2] == 12

    def test_events_match_poset(self, dD2):
        """Event line sets are exactly the rank-2 flats."""
        wd = wiring_diagram(dD2)
        assert sorted(e.lines for e in wd.events) == sorted(F.indices for F in dD2.poset.by_rank(2))

    def test_local_segments_adjacent(self, dD2):
        """The lines at a vertex occupy consecutive positions."""
        wd = wiring_diagram(dD2)
        for e in wd.events:
            assert sorted(e.order_before) == list(e.lines)

    def test_pencil(self):
        """Three concurrent lines give one event."""
        wd = wiring_diagram(parse_defining_polynomial("x1*x2*(x1-x2)"))
        assert wd.census() == {3: 1}
        assert len(wd.initial_order) == 3

    def test_parallel_lines_never_cross(self):
        """Parallel lines produce no event."""
        wd = wiring_diagram(parse_defining_polynomial("x1*(x1-1)*x2", dim=2))
        assert wd.census() == {2: 2}

    def test_json(self, dD2):
        """JSON keeps exact coordinates as strings."""
        data = wiring_diagram(dD2).to_json()
        assert len(data["lines"]) == 7
        assert all(isinstance(e["x"], str) for e in data["events"])


class TestUnsupported:
    """Inputs the sweep cannot handle."""

    def test_non_rational(self):
        """Lines with zeta_3 coefficients are not swept."""
        with pytest.raises(UnsupportedError):
            wiring_diagram(decone(monomial_arrangement(3, full=False), "H1"))

    def test_not_planar(self):
        """Only line arrangements."""
        with pytest.raises(ValidationError):
            wiring_diagram(boolean_arrangement(3))
