"""
Tests for the degree-two Orlik-Solomon algebra and the Aomoto complex.

Run with: python -m pytest translated_tori/test_os_algebra.py -v
"""
from fractions import Fraction

import numpy as np
import pytest

from translated_tori.arrangement import braid_arrangement, monomial_arrangement
from translated_tori.errors import ValidationError
from translated_tori.os_algebra import (
    aomoto_h1_dim,
    local_components,
    os_degree_two,
    resonance_membership,
    wedge,
    wedge_matrix,
    weight_from_json,
    weight_to_json,
)
from translated_tori.ratfunc import RatFunc


@pytest.fixture
def D2():
    return monomial_arrangement(2, full=False)


@pytest.fixture
def braid3():
    return braid_arrangement(3)


class TestDegreeTwo:
    """nbc basis and products."""

    def test_dimension_is_second_betti(self, D2):
        """dim A^2 equals b_2."""
        assert os_degree_two(D2).dimension == D2.poset.poincare()[2]
        B = braid_arrangement(4)
        assert os_degree_two(B).dimension == B.poset.poincare()[2]

    def test_antisymmetry(self, D2):
        """e_i e_j = -e_j e_i and e_i e_i = 0."""
        os2 = os_degree_two(D2)
        for i in range(len(D2)):
            assert os2.product(i, i) == {}
            for j in range(i + 1, len(D2)):
                forward = os2.product(i, j)
                backward = os2.product(j, i)
                assert forward == {k: -s for k, s in backward.items()}

    def test_wedge_with_itself(self, D2):
        """a ^ a = 0."""
        lam = [1, 2, -1, 3, 0, 5, -2, 7]
        assert wedge(D2, lam, lam) == {}

    def test_matrix_shape(self, D2):
        """Rows index the nbc basis, columns the hyperplanes."""
        M = wedge_matrix(D2, [1] * len(D2))
        assert (M.nrows, M.ncols) == (19, 8)


class TestAomoto:
    """H^1 of the Aomoto complex."""

    def test_zero_weight(self, D2):
        """At lambda = 0 the cohomology is A^1."""
        assert aomoto_h1_dim(D2, [0] * len(D2)) == len(D2)

    def test_triple_point(self, braid3):
        """Weights summing to zero on a triple point resonate."""
        assert aomoto_h1_dim(braid3, [1, 1, -2]) == 1
        assert aomoto_h1_dim(braid3, [1, 1, 1]) == 0

    def test_symbolic_weight(self, braid3):
        """The whole local component at once, over Q(u, v)."""
        u, v = RatFunc.u(), RatFunc.v()
        assert resonance_membership(braid3, [u, v, -u - v])
        assert not resonance_membership(braid3, [u, v, u + v])

    def test_quadruple_point_depth(self, D2):
        """A generic weight on a quadruple point has H^1 of dimension at least 2."""
        lam = [1, 2, 4, -7, 0, 0, 0, 0]
        assert resonance_membership(D2, lam, m=2)

    def test_generic_weights_do_not_resonate(self, D2):
        """Random integer weights are off every component."""
        rng = np.random.default_rng(20011)
        for _ in range(5):
            lam = [int(x) for x in rng.integers(-50, 51, size=len(D2))]
            assert aomoto_h1_dim(D2, lam) == 0

    def test_projective_invariance(self, D2, braid3):
        """Scaling the weight by a nonzero constant or function keeps H^1."""
        u = RatFunc.u()
        for A, lam in ((D2, [1, 2, 4, -7, 0, 0, 0, 0]), (D2, [3, -1, 4, 1, -5, 9, 2, -6]), (braid3, [1, 1, -2])):
            base = aomoto_h1_dim(A, lam)
            for c in (2, -3, Fraction(1, 5), u + 1):
                assert aomoto_h1_dim(A, [c * x for x in lam]) == base

    def test_depth_must_be_positive(self, D2):
        """m starts at 1."""
        with pytest.raises(ValidationError):
            resonance_membership(D2, [0] * len(D2), m=0)

    def test_length_mismatch(self, D2):
        """One weight per hyperplane."""
        with pytest.raises(ValidationError):
            aomoto_h1_dim(D2, [1, 2])

    def test_weight_json(self):
        """Weights read back from JSON, strings allowed."""
        assert weight_from_json({"lambda": ["1", "-1", "u"]}) == [1, -1, RatFunc.u()]
        assert weight_from_json(weight_to_json([2, 3])) == [2, 3]


class TestLocalComponents:
    """Local resonance components at multiple points."""

    def test_d2_components(self, D2):
        """Seven multiple points, none essential."""
        comps = local_components(D2)
        assert len(comps) == 7
        assert not any(c.essential for c in comps)
        assert sorted(c.dimension for c in comps) == [2] * 6 + [3]

    def test_braid3_essential(self, braid3):
        """The only point of Br(3) carries every hyperplane."""
        (comp,) = local_components(braid3)
        assert comp.essential
        assert comp.contains([1, 1, -2])
        assert not comp.contains([1, 1, 1])
