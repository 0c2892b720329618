"""
Tests for the intersection poset, Moebius function and Poincare polynomial.

Run with: python -m pytest translated_tori/test_lattice.py -v
"""
from itertools import combinations

import pytest

from translated_tori.arrangement import boolean_arrangement, braid_arrangement, decone, monomial_arrangement, triple
from translated_tori.lattice import betti_numbers, euler_characteristic, format_polynomial, poincare_polynomial
from translated_tori.linalg import field_rank
from translated_tori.parsing import parse_defining_polynomial


def polymul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return tuple(out)


def polyadd(p, q):
    size = max(len(p), len(q))
    p, q = list(p) + [0] * (size - len(p)), list(q) + [0] * (size - len(q))
    return tuple(a + b for a, b in zip(p, q))


def expand(*exponents):
    """Coefficients of the product of 1 + a t over the exponents a."""
    out = (1,)
    for a in exponents:
        out = polymul(out, (1, a))
    return out


def whitney_poincare(A):
    """Sum over subsets B with nonempty intersection of (-1)^|B| (-t)^rank(B)."""
    rows = [list(H.normal) for H in A]
    augmented = [list(H.normal) + [H.constant] for H in A]
    coeffs = [0] * (A.ambient_dim + 1)
    for size in range(len(A) + 1):
        for B in combinations(range(len(A)), size):
            if not B:
                coeffs[0] += 1
                continue
            k = field_rank([rows[i] for i in B])
            if field_rank([augmented[i] for i in B]) != k:
                continue
            coeffs[k] += (-1) ** size * (-1) ** k
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class TestPoincare:
    """Poincare polynomials of known arrangements."""

    def test_boolean(self):
        """Boolean arrangements give (1 + t)^ell."""
        assert boolean_arrangement(2).poset.poincare() == (1, 2, 1)
        assert boolean_arrangement(3).poset.poincare() == (1, 3, 3, 1)

    def test_braid(self):
        """Br(4) has exponents 1, 2, 3 (with the trivial factor from the center)."""
        assert braid_arrangement(4).poset.poincare() == expand(1, 2, 3)

    @pytest.mark.parametrize("r", range(2, 6))
    def test_monomial_full(self, r):
        """A(r) factors with exponents 1, r + 1, 2r + 1."""
        assert monomial_arrangement(r).poset.poincare() == expand(1, r + 1, 2 * r + 1)

    @pytest.mark.parametrize("r", range(2, 6))
    def test_monomial_deletion(self, r):
        """D(r) factors with exponents 1, r + 1, 2r."""
        assert monomial_arrangement(r, full=False).poset.poincare() == expand(1, r + 1, 2 * r)

    def test_module_functions(self):
        """Module-level helpers agree with the poset."""
        A = monomial_arrangement(2)
        assert poincare_polynomial(A) == betti_numbers(A) == (1, 9, 23, 15)
        assert euler_characteristic(A) == 1 - 9 + 23 - 15

    def test_generic_lines(self):
        """Three generic affine lines: only double points."""
        A = parse_defining_polynomial("x1*x2*(x1+x2-1)")
        assert A.poset.poincare() == (1, 3, 3)
        assert A.poset.multiple_points() == []

    def test_parallel_lines(self):
        """Parallel lines do not meet."""
        A = parse_defining_polynomial("x1*(x1-1)", dim=2)
        assert A.poset.poincare() == (1, 2)
        assert A.poset.euler_characteristic() == -1

    def test_decone_factor(self):
        """pi(A) = (1 + t) pi(dA) for a central arrangement."""
        D = monomial_arrangement(2, full=False)
        B = decone(D, "H1")
        assert B.poset.poincare() == (1, 7, 12)
        assert D.poset.poincare() == polymul((1, 1), B.poset.poincare())

    @pytest.mark.parametrize(
        "A",
        [
            monomial_arrangement(2, full=False),
            decone(monomial_arrangement(2, full=False), "H1"),
            braid_arrangement(4),
            parse_defining_polynomial("x1*x2*(x1+x2-1)*(x1-x2)*(x1-1)"),
        ],
        ids=["D2", "dD2", "Br4", "affine5"],
    )
    def test_whitney_formula(self, A):
        """Moebius computation matches the subset sum."""
        assert A.poset.poincare() == whitney_poincare(A)


class TestFlats:
    """Flat census and Moebius values."""

    def test_d2_census(self):
        """D(2): four double points, six triple points, one quadruple point."""
        P = monomial_arrangement(2, full=False).poset
        assert P.census()[2] == {2: 4, 3: 6, 4: 1}
        assert P.census()[3] == {8: 1}

    def test_mobius_of_multiple_point(self):
        """A point of multiplicity k has Moebius value k - 1."""
        P = monomial_arrangement(2, full=False).poset
        for F in P.by_rank(2):
            assert P.mobius_of(F) == len(F) - 1

    def test_flat_of_pair(self):
        """Every meeting pair lies on exactly one rank-2 flat."""
        A = monomial_arrangement(3, full=False)
        pairs = A.poset.flat_of_pair()
        n = len(A)
        assert len(pairs) == n * (n - 1) // 2
        for (i, j), F in pairs.items():
            assert i in F and j in F

    def test_json_labels(self):
        """JSON lists flats by label."""
        A = braid_arrangement(3)
        data = A.poset.to_json(A.labels)
        assert data["poincare"] == [1, 3, 2]
        assert {"rank": 2, "hyperplanes": ["H12", "H13", "H23"], "mobius": 2} in data["flats"]


class TestDeletionRestriction:
    """pi(A) = pi(A') + t pi(A'') and chi(M) = chi(M') - chi(M'')."""

    @pytest.mark.parametrize("r", range(2, 6))
    def test_monomial_at_h3(self, r):
        """The identity at H3 for A(r)."""
        tr = triple(monomial_arrangement(r), "H3")
        shifted = (0,) + tr.restricted.poset.poincare()
        assert tr.full.poset.poincare() == polyadd(tr.deleted.poset.poincare(), shifted)
        assert tr.restricted.poset.poincare() == expand(1, r + 1)
        chi = tr.full.poset.euler_characteristic()
        assert chi == tr.deleted.poset.euler_characteristic() - tr.restricted.poset.euler_characteristic()

    @pytest.mark.parametrize(
        "A",
        [monomial_arrangement(2), monomial_arrangement(2, full=False), monomial_arrangement(3), braid_arrangement(4)],
        ids=lambda A: A.name,
    )
    def test_every_pivot(self, A):
        """The identity holds whichever hyperplane is deleted."""
        full = A.poset.poincare()
        for pivot in range(len(A)):
            tr = triple(A, pivot)
            shifted = (0,) + tr.restricted.poset.poincare()
            assert full == polyadd(tr.deleted.poset.poincare(), shifted), A[pivot].label

    def test_affine_triple(self):
        """The identity also holds for an affine pivot."""
        A = parse_defining_polynomial("x1*x2*(x1+x2-1)*(x1-1)")
        tr = triple(A, "L1")
        shifted = (0,) + tr.restricted.poset.poincare()
        assert tr.full.poset.poincare() == polyadd(tr.deleted.poset.poincare(), shifted)
        assert tr.full.poset.poincare() == (1, 4, 4)


class TestFormat:
    """Polynomial formatting."""

    def test_format(self):
        """Coefficients print lowest degree first."""
        assert format_polynomial((1, 9, 23, 15)) == "1 + 9t + 23t^2 + 15t^3"
