"""
Tests for the neighborly partition search and the essential-resonance verdict.

Run with: python -m pytest translated_tori/test_partitions.py -v
"""
import numpy as np
import pytest
from sympy.utilities.iterables import multiset_partitions

from translated_tori import partitions
from translated_tori.arrangement import boolean_arrangement, braid_arrangement, decone, monomial_arrangement
from translated_tori.config import Settings
from translated_tori.errors import SizeBoundError, ValidationError
from translated_tori.parsing import parse_defining_polynomial
from translated_tori.partitions import (
    Partition,
    PartitionSearch,
    essential_resonance_exists,
    is_neighborly,
    multinet_weight,
    neighborly_partitions,
    search_neighborly_partitions,
)


def brute_force(A):
    """Every non-trivial neighborly partition, by enumerating all set partitions."""
    flats = A.poset.by_rank(2)
    found = set()
    for blocks in multiset_partitions(list(range(len(A)))):
        p = Partition(tuple(sorted(tuple(sorted(b)) for b in blocks)))
        if not p.is_trivial() and is_neighborly(p, flats):
            found.add(p)
    return found


SMALL = {
    "boolean3": boolean_arrangement(3),
    "generic3": parse_defining_polynomial("x1*x2*(x1+x2-1)"),
    "braid4": braid_arrangement(4),
    "dD2": decone(monomial_arrangement(2, full=False), "H1"),
    "D2": monomial_arrangement(2, full=False),
    "A2": monomial_arrangement(2),
}


class TestNeighborlyCondition:
    """The condition on a single partition."""

    def test_one_block_always_neighborly(self):
        """The one-block partition satisfies the condition."""
        for A in SMALL.values():
            assert is_neighborly(Partition((tuple(range(len(A))),)), A.poset.by_rank(2))

    def test_singletons_need_no_double_points(self):
        """All-singletons is neighborly exactly when there are no double points."""
        for A in SMALL.values():
            singletons = Partition(tuple((i,) for i in range(len(A))))
            has_double = any(len(X) == 2 for X in A.poset.by_rank(2))
            assert is_neighborly(singletons, A.poset.by_rank(2)) == (not has_double)

    def test_from_assignment(self):
        """Restricted growth strings become sorted blocks."""
        assert Partition.from_assignment([0, 1, 0, 2]).blocks == ((0, 2), (1,), (3,))


class TestSearch:
    """Exhaustive and pruned search."""

    @pytest.mark.parametrize("name", sorted(SMALL))
    def test_matches_brute_force(self, name):
        """The pruned tree finds exactly the brute-force answer."""
        A = SMALL[name]
        assert set(neighborly_partitions(A)) == brute_force(A)

    def test_braid4_partition(self):
        """Br(4) has the partition {12,34}, {13,24}, {14,23}."""
        A = braid_arrangement(4)
        (p,) = neighborly_partitions(A)
        assert sorted(sorted(b) for b in p.to_json(A.labels)) == [["H12", "H34"], ["H13", "H24"], ["H14", "H23"]]

    def test_a2_partition(self):
        """A(2) groups each coordinate hyperplane with the opposite pairs."""
        A = monomial_arrangement(2)
        (p,) = neighborly_partitions(A)
        assert p.to_json(A.labels) == [["H1", "H23:1", "H23:2"], ["H2", "H13:1", "H13:2"], ["H3", "H12:1", "H12:2"]]

    @pytest.mark.parametrize("name", ["braid4", "A2", "D2"])
    def test_relabeling(self, name):
        """Reordering the hyperplanes permutes the partitions found."""
        A = SMALL[name]
        expected = set(neighborly_partitions(A))
        rng = np.random.default_rng(37)
        for _ in range(3):
            order = [int(i) for i in rng.permutation(len(A))]
            found = neighborly_partitions(A.permuted(order))
            back = {Partition(tuple(sorted(tuple(sorted(order[i] for i in b)) for b in p.blocks))) for p in found}
            assert back == expected
            assert essential_resonance_exists(A.permuted(order)).exists == essential_resonance_exists(A).exists

    @pytest.mark.parametrize("r", [2, 3])
    def test_deleted_monomial_has_none(self, r):
        """D(2) and D(3) admit no non-trivial neighborly partition."""
        result = search_neighborly_partitions(monomial_arrangement(r, full=False))
        assert result.exhaustive
        assert result.partitions == []

    def test_d4_pruned(self):
        """D(4) in pruned mode finds nothing."""
        result = search_neighborly_partitions(monomial_arrangement(4, full=False), mode="pruned")
        assert result.partitions == []

    def test_size_bound(self):
        """Exhaustive search refuses arrangements above the bound."""
        with pytest.raises(SizeBoundError):
            search_neighborly_partitions(monomial_arrangement(2), settings=Settings(max_partition_size=8))

    def test_budget_marks_incomplete(self):
        """Running out of nodes is reported."""
        result = search_neighborly_partitions(
            braid_arrangement(4), mode="pruned", settings=Settings(partition_node_budget=3)
        )
        assert not result.exhaustive
        assert result.nodes == 3

    def test_unknown_mode(self):
        """Only the two modes exist."""
        with pytest.raises(ValidationError):
            search_neighborly_partitions(braid_arrangement(3), mode="greedy")


class TestVerdict:
    """Essential components of R_1."""

    def test_deleted_monomial(self):
        """D(2) has no essential resonance component."""
        verdict = essential_resonance_exists(monomial_arrangement(2, full=False))
        assert not verdict.exists
        assert verdict.rule == "NO_NEIGHBORLY_PARTITION"
        assert verdict.exhaustive
        assert len(verdict.local) == 7

    def test_full_monomial(self):
        """A(2) has one, confirmed by a resonant weight on its multinet partition."""
        A = monomial_arrangement(2)
        verdict = essential_resonance_exists(A)
        assert verdict.exists is True
        assert verdict.rule == "NEIGHBORLY_PARTITION_CONFIRMED"
        assert all(x != 0 for x in verdict.witness)
        assert sum(verdict.witness) == 0
        assert verdict.to_json(A.labels)["witness"] == [str(x) for x in verdict.witness]

    def test_multinet_weight_on_full_monomial(self):
        """Coordinate lines carry twice the weight of the other lines in their block."""
        A = monomial_arrangement(2)
        classes = (("H1", "H23:1", "H23:2"), ("H2", "H13:1", "H13:2"), ("H3", "H12:1", "H12:2"))
        blocks = tuple(sorted(tuple(sorted(A.labels.index(h) for h in c)) for c in classes))
        weight = multinet_weight(A, Partition(blocks))
        assert weight is not None
        w = dict(zip(A.labels, weight))
        for coordinate, first, second in classes:
            assert w[first] == w[second] != 0
            assert w[coordinate] == 2 * w[first]
        assert sum(weight) == 0

    def test_unbalanced_partition_has_no_weight(self):
        """Singleton blocks of B(3) have no rank-2 flat meeting all three."""
        assert multinet_weight(boolean_arrangement(3), Partition(((0,), (1,), (2,)))) is None

    def test_unconfirmed_partition(self, monkeypatch):
        """A neighborly partition without a resonant weight leaves the question open."""
        found = PartitionSearch([Partition(((0,), (1,), (2,)))])
        monkeypatch.setattr(partitions, "search_neighborly_partitions", lambda *a, **k: found)
        verdict = essential_resonance_exists(boolean_arrangement(3))
        assert verdict.exists is None
        assert verdict.rule == "NEIGHBORLY_PARTITION_UNCONFIRMED"
        assert not verdict.excluded

    def test_pencil(self):
        """A pencil is its own essential local component."""
        verdict = essential_resonance_exists(braid_arrangement(3))
        assert verdict.exists
        assert verdict.rule == "ESSENTIAL_LOCAL_COMPONENT"

    def test_generic_lines(self):
        """Three generic lines: nothing at all."""
        A = SMALL["generic3"]
        verdict = essential_resonance_exists(A)
        data = verdict.to_json(A.labels)
        assert data["essential_component_exists"] is False
        assert data["neighborly_partitions"] == []
        assert data["local_components"] == []
