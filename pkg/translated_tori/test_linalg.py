"""
Tests for exact linear algebra.

Run with: python -m pytest translated_tori/test_linalg.py -v
"""
from fractions import Fraction

import numpy as np
import pytest

from translated_tori.cyclotomic import Cyclotomic
from translated_tori.errors import ValidationError
from translated_tori.linalg import (
    ExactMatrix,
    field_rank,
    independent_rows,
    rank_ff,
    reduce_row,
    rref,
    specialization_oracle,
)
from translated_tori.ratfunc import RatFunc

u = RatFunc.u()
v = RatFunc.v()


def fractions(rows):
    return [[Fraction(int(x)) for x in row] for row in rows]


class TestFieldElimination:
    """rref over Q and Q(zeta)."""

    def test_rank_deficient(self):
        """Proportional rows have rank 1."""
        assert field_rank(fractions([[1, 2], [2, 4]])) == 1

    def test_rref_pivots(self):
        """Pivot columns skip dependent columns."""
        basis, pivots = rref(fractions([[0, 1, 2], [0, 2, 5]]))
        assert pivots == [1, 2]
        assert basis == fractions([[0, 1, 0], [0, 0, 1]])

    def test_reduce_row_membership(self):
        """A row in the span reduces to zero."""
        basis, pivots = rref(fractions([[1, 0, 1], [0, 1, 1]]))
        assert all(x == 0 for x in reduce_row(basis, pivots, fractions([[2, 3, 5]])[0]))
        assert any(x != 0 for x in reduce_row(basis, pivots, fractions([[2, 3, 4]])[0]))

    def test_matches_numpy_on_low_rank_products(self):
        """Exact rank agrees with numpy on small integer products."""
        rng = np.random.default_rng(20011)
        for k in (1, 2, 3):
            B = rng.integers(-3, 4, size=(5, k))
            C = rng.integers(-3, 4, size=(k, 4))
            M = B @ C
            assert field_rank(fractions(M)) == np.linalg.matrix_rank(M)

    def test_cyclotomic_entries(self):
        """rref works over Q(zeta_3)."""
        z = Cyclotomic.zeta(3)
        rows = [[Cyclotomic.one(), z], [z * z, Cyclotomic.one()]]
        assert field_rank(rows) == 1


class TestFractionFree:
    """Fraction-free rank over K(u, v)."""

    def test_generic_full_rank(self):
        """[[u, 1], [1, v]] has rank 2."""
        assert rank_ff(ExactMatrix([[u, 1], [1, v]])) == 2

    def test_polynomial_dependency(self):
        """Second row u times the first."""
        assert rank_ff(ExactMatrix([[u, v], [u ** 2, u * v]])) == 1

    def test_rational_entries(self):
        """Denominators are cleared before elimination."""
        M = ExactMatrix([[1 / (u - 1), 1], [1, u - 1]])
        assert rank_ff(M) == 1

    def test_pivot_rows_reported(self):
        """Pivot rows index the original matrix."""
        M = ExactMatrix([[0, 0], [u, 1], [2 * u, 2]])
        assert independent_rows(M) == [1]
        assert rank_ff(M) == 1

    def test_empty(self):
        """An empty matrix has rank 0."""
        assert rank_ff(ExactMatrix([], 3)) == 0

    def test_ragged_rejected(self):
        """Rows must share a width."""
        with pytest.raises(ValidationError):
            ExactMatrix([[1, 2], [3]])

    def test_cyclotomic_coefficients(self):
        """Second row zeta_3^2 times the first."""
        z = Cyclotomic.zeta(3)
        M = ExactMatrix([[u, z], [z * z * u, 1]])
        assert rank_ff(M) == 1
        assert rank_ff(ExactMatrix([[u, z], [u, 1]])) == 2

    def test_permutation_invariance(self):
        """Reordering rows and columns keeps the rank."""
        M = ExactMatrix([[u, v, 1], [u * v, v ** 2, v], [1, u + v, u - 1], [0, 1, v]])
        rank = rank_ff(M)
        assert rank == 3
        rng = np.random.default_rng(31)
        for _ in range(4):
            rows = [int(i) for i in rng.permutation(M.nrows)]
            cols = [int(j) for j in rng.permutation(M.ncols)]
            assert rank_ff(M.permuted(rows, cols)) == rank

    def test_row_scaling_invariance(self):
        """Multiplying a row by a nonzero function keeps the rank."""
        M = ExactMatrix([[u, v, 1], [u * v, v ** 2, v], [1, u + v, u - 1]])
        assert rank_ff(M) == 2
        factor = (u + 1) / (v - 2)
        for i in range(M.nrows):
            assert rank_ff(M.scale_row(i, factor)) == 2


class TestSpecializedRank:
    """Rank over Q(zeta_N) for specialized matrices."""

    def test_singular(self):
        """det(1, z; z^2, 1) = 0 for z = zeta_3."""
        z = Cyclotomic.zeta(3)
        assert field_rank([[Cyclotomic.one(), z], [z * z, Cyclotomic.one()]]) == 1

    def test_nonsingular(self):
        """det(1, i; i, 1) = 2."""
        i = Cyclotomic.zeta(4)
        assert field_rank([[Cyclotomic.one(), i], [i, Cyclotomic.one()]]) == 2

    def test_mixed_conductors(self):
        """Entries from different fields are lifted together."""
        rows = [[Cyclotomic.zeta(3), Cyclotomic.zeta(4)], [Cyclotomic.zeta(3, 2), Cyclotomic.zeta(12, 7)]]
        # second row = zeta_3 * first row
        assert field_rank(rows) == 1


class TestSpecializationOracle:
    """Random root-of-unity specializations."""

    def test_consistent_on_generic_matrix(self):
        """Specialized ranks never exceed the symbolic rank and reach it."""
        M = ExactMatrix([[u, 1, v], [1, v, u], [u * v, 1, 1]])
        report = specialization_oracle(M, count=20, seed=20011)
        assert report.symbolic_rank == rank_ff(M)
        assert len(report.ranks) == 20
        assert report.consistent

    def test_deterministic(self):
        """Same seed, same points."""
        M = ExactMatrix([[u, 1], [1, v]])
        a = specialization_oracle(M, count=5, seed=7)
        b = specialization_oracle(M, count=5, seed=7)
        assert a.points == b.points
        assert a.to_json() == b.to_json()

    def test_pole_raises_on_direct_specialize(self):
        """Specializing at a pole raises."""
        M = ExactMatrix([[1 / (u - 1)]])
        with pytest.raises(ZeroDivisionError):
            M.specialize(u=1)
