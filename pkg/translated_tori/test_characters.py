"""
Tests for rank-one characters, the explicit subtori and the triple maps.

Run with: python -m pytest translated_tori/test_characters.py -v
"""
import math

import pytest

from translated_tori.arrangement import decone, monomial_arrangement, triple
from translated_tori.characters import (
    Character,
    component_C,
    component_Cq,
    decone_character,
    delete_coordinate,
    extend_character,
    is_essential,
    local_system_triple,
    restrict_character,
    tau,
    torus_T,
    translated_tori,
    translation_order,
    trivial_character,
)
from translated_tori.cyclotomic import Cyclotomic
from translated_tori.errors import ValidationError
from translated_tori.ratfunc import RatFunc

RQ = [(r, q) for r in range(2, 7) for q in range(1, r)]


class TestCharacter:
    """Construction and group operations."""

    def test_length_checked(self):
        """One coordinate per hyperplane."""
        with pytest.raises(ValidationError):
            Character(monomial_arrangement(2), (1, 2))

    def test_zero_coordinate_rejected(self):
        """Coordinates live in C^*."""
        A = monomial_arrangement(2, full=False)
        with pytest.raises(ValidationError):
            Character(A, (0,) + (1,) * (len(A) - 1))

    def test_inverse(self):
        """t * t^-1 is trivial."""
        t = component_Cq(3, 1).point
        assert (t * t.inverse()).is_trivial()

    def test_trivial(self):
        """The trivial character has product 1."""
        t = trivial_character(monomial_arrangement(2))
        assert t.is_trivial()
        assert t.coordinate_product().is_one()

    def test_json(self):
        """JSON is keyed by label and tied to the host."""
        t = component_Cq(2, 1).point
        data = t.to_json()
        assert set(data["coords"]) == set(t.host.labels)
        assert Character.from_json(data, t.host) == t
        with pytest.raises(ValidationError):
            Character.from_json(data, monomial_arrangement(3, full=False))

    def test_json_from_strings(self):
        """Coordinates may be given as expressions."""
        A = monomial_arrangement(2, full=False)
        coords = {label: "1" for label in A.labels}
        coords["H1"] = "u^2"
        t = Character.from_json({"coords": coords}, A)
        assert t[0] == RatFunc.u() ** 2


class TestSubtori:
    """C, C_q, T and tau_q."""

    @pytest.mark.parametrize("r", range(2, 7))
    def test_component_c_product(self, r):
        """C lies in the subtorus of coordinate product 1."""
        assert component_C(r).coordinate_product().is_one()

    @pytest.mark.parametrize("r,q", RQ)
    def test_decomposition(self, r, q):
        """C_q = tau_q * T as identical vectors of rational functions."""
        S = component_Cq(r, q)
        assert S.decomposition_holds()
        assert S.product_form().coords == S.point.coords
        assert S.translation == tau(r, q)

    @pytest.mark.parametrize("r,q", RQ)
    def test_translation_order(self, r, q):
        """The translation has order r / gcd(q, r) modulo T."""
        assert translation_order(component_Cq(r, q)) == r // math.gcd(q, r)

    @pytest.mark.parametrize("r", [2, 3, 5])
    def test_order_r_for_units(self, r):
        """Every q prime to r gives order exactly r."""
        for q in range(1, r):
            if math.gcd(q, r) == 1:
                assert translation_order(component_Cq(r, q)) == r

    def test_order_of_untranslated(self):
        """T itself has order 1."""
        assert translation_order(torus_T(4)) == 1

    @pytest.mark.parametrize("r,q", RQ)
    def test_essential_and_positive_dimensional(self, r, q):
        """C_q meets no coordinate subtorus z_j = 1 and is a curve."""
        S = component_Cq(r, q)
        assert is_essential(S)
        assert S.dimension == 1
        assert S.point.coordinate_product().is_one()

    def test_torus_not_essential(self):
        """T has coordinates identically 1."""
        assert not is_essential(torus_T(3))

    def test_q_range(self):
        """q runs over 1..r-1."""
        with pytest.raises(ValidationError):
            tau(3, 0)
        with pytest.raises(ValidationError):
            component_Cq(3, 3)

    def test_translated_tori(self):
        """n translated tori for D(n+1)."""
        tori = translated_tori(4)
        assert [S.name for S in tori] == ["C(5,1)", "C(5,2)", "C(5,3)", "C(5,4)"]
        assert all(is_essential(S) for S in tori)

    def test_specialize(self):
        """at(u0) gives a constant character."""
        assert component_Cq(3, 2).at(Cyclotomic.zeta(7)).is_constant()


class TestTripleMaps:
    """Extension, deletion and restriction of characters."""

    @pytest.mark.parametrize("r,q", RQ)
    def test_restriction_formula(self, r, q):
        """The restriction of C_q is (1, 1, zeta^q, ..., zeta^q)."""
        tr = triple(monomial_arrangement(r), "H3")
        t2 = restrict_character(component_Cq(r, q).point, tr)
        z = Cyclotomic.zeta(r, q)
        assert t2.coords == (RatFunc.one(), RatFunc.one()) + (RatFunc.constant(z),) * r
        assert not t2.is_trivial()

    @pytest.mark.parametrize("r,q", [(2, 1), (3, 2), (4, 3)])
    def test_extension_lands_on_c(self, r, q):
        """Extending C_q by 1 at H3 is C at w = zeta^q."""
        tr = triple(monomial_arrangement(r), "H3")
        t = extend_character(component_Cq(r, q).point, tr)
        u = RatFunc.u()
        v = (RatFunc.constant(Cyclotomic.zeta(r, q)) * u).inverse()
        assert component_C(r).evaluate(v=v) == t
        assert t[2].is_one()

    def test_delete_undoes_extend(self):
        """Deleting the pivot coordinate recovers the character."""
        tr = triple(monomial_arrangement(3), "H3")
        t = component_Cq(3, 1).point
        assert delete_coordinate(extend_character(t, tr), tr).coords == t.coords

    def test_local_system_triple(self):
        """The three characters live on the three arrangements."""
        tr = triple(monomial_arrangement(2), "H3")
        lst = local_system_triple(component_Cq(2, 1).point, tr)
        assert lst.full.host == tr.full
        assert lst.restricted.host == tr.restricted
        assert len(lst.restricted) == 4

    @pytest.mark.parametrize("r", [2, 3, 4])
    def test_restriction_is_multiplicative(self, r):
        """Restriction is a homomorphism of character groups."""
        tr = triple(monomial_arrangement(r), "H3")
        s = component_Cq(r, 1).point
        t = Character(s.host, tuple(RatFunc.monomial(k + 2, k % 3 - 1, 1) for k in range(len(s))))
        assert restrict_character(s * t, tr) == restrict_character(s, tr) * restrict_character(t, tr)
        assert restrict_character(t.inverse(), tr) == restrict_character(t, tr).inverse()
        assert restrict_character(trivial_character(s.host), tr).is_trivial()

    def test_wrong_host(self):
        """Characters must live on the deleted arrangement."""
        tr = triple(monomial_arrangement(2), "H3")
        with pytest.raises(ValidationError):
            restrict_character(component_C(2), tr)


class TestDecone:
    """Characters on the decone."""

    def test_drops_pivot(self):
        """The pivot coordinate is dropped."""
        D = monomial_arrangement(2, full=False)
        B = decone(D, "H1")
        s = decone_character(component_Cq(2, 1).point, "H1", B)
        assert len(s) == len(D) - 1
        assert s.coords == component_Cq(2, 1).point.coords[1:]

    def test_needs_product_one(self):
        """Only characters of product 1 descend."""
        D = monomial_arrangement(2, full=False)
        B = decone(D, "H1")
        t = Character(D, (2,) + (1,) * (len(D) - 1))
        with pytest.raises(ValidationError):
            decone_character(t, "H1", B)
