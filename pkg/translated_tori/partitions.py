"""
Neighborly partitions and the essential-resonance verdict.

A partition P of the hyperplanes is neighborly when, for every rank-2 flat
X and every block B, |X minus B| <= 1 forces X inside B. Every essential
resonance component induces a non-trivial neighborly partition, so their
absence rules such components out. A partition that is found only counts once
a full-support weight built from it is resonant.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .config import Settings, get_settings
from .errors import SizeBoundError, ValidationError
from .lattice import Flat
from .os_algebra import LocalComponent, local_components, resonance_membership

logger = logging.getLogger(__name__)

MODES = ("exhaustive", "pruned")


@dataclass(frozen=True)
class Partition:
    blocks: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_assignment(cls, assignment: Sequence[int]) -> "Partition":
        blocks: Dict[int, List[int]] = {}
        for i, b in enumerate(assignment):
            blocks.setdefault(b, []).append(i)
        return cls(tuple(sorted(tuple(v) for v in blocks.values())))

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def is_trivial(self) -> bool:
        return len(self.blocks) in (1, self.size)

    def to_json(self, labels: Optional[Sequence[str]] = None) -> List[List]:
        if labels is None:
            return [list(b) for b in self.blocks]
        return [[labels[i] for i in b] for b in self.blocks]


def is_neighborly(partition: Partition, flats: Sequence[Flat]) -> bool:
    """Check the neighborly condition over the given rank-2 flats."""
    for X in flats:
        members = set(X.indices)
        for block in partition.blocks:
            outside = members - set(block)
            if len(outside) == 1:
                return False
    return True


@dataclass
class PartitionSearch:
    partitions: List[Partition] = field(default_factory=list)
    exhaustive: bool = True
    nodes: int = 0


class _Search:
    """Restricted growth strings with per-flat block counts for pruning."""

    def __init__(self, n: int, flats: Sequence[Flat], budget: Optional[int]):
        self.n = n
        self.flats = list(flats)
        self.sizes = [len(X) for X in self.flats]
        self.flats_of: List[List[int]] = [[] for _ in range(n)]
        for f, X in enumerate(self.flats):
            for i in X.indices:
                self.flats_of[i].append(f)
        self.counts: List[Dict[int, int]] = [{} for _ in self.flats]
        self.assignment: List[int] = []
        self.budget = budget
        self.result = PartitionSearch()

    def _violates(self, f: int) -> bool:
        # once two blocks meet X, any block holding all but one of X breaks the condition
        counts = self.counts[f]
        return len(counts) >= 2 and max(counts.values()) >= self.sizes[f] - 1

    def _place(self, i: int, b: int) -> bool:
        ok = True
        for f in self.flats_of[i]:
            c = self.counts[f]
            c[b] = c.get(b, 0) + 1
            if self._violates(f):
                ok = False
        self.assignment.append(b)
        return ok

    def _unplace(self, i: int) -> None:
        b = self.assignment.pop()
        for f in self.flats_of[i]:
            c = self.counts[f]
            c[b] -= 1
            if not c[b]:
                del c[b]

    def run(self) -> PartitionSearch:
        self._descend(0, 0)
        return self.result

    def _descend(self, i: int, blocks: int) -> bool:
        if self.budget is not None and self.result.nodes >= self.budget:
            self.result.exhaustive = False
            return False
        self.result.nodes += 1
        if i == self.n:
            if 1 < blocks < self.n:
                self.result.partitions.append(Partition.from_assignment(self.assignment))
            return True
        for b in range(blocks + 1):
            if self._place(i, b):
                if not self._descend(i + 1, max(blocks, b + 1)):
                    self._unplace(i)
                    return False
            self._unplace(i)
        return True


def search_neighborly_partitions(A, mode: str = "exhaustive", settings: Optional[Settings] = None) -> PartitionSearch:
    settings = settings or get_settings()
    if mode not in MODES:
        raise ValidationError(f"unknown search mode {mode!r}; expected one of {', '.join(MODES)}")
    n = len(A)
    budget = None
    if mode == "exhaustive":
        if n > settings.max_partition_size:
            raise SizeBoundError(
                f"{A.name} has {n} hyperplanes, above the exhaustive partition bound {settings.max_partition_size}"
            )
    else:
        budget = settings.partition_node_budget
    flats = A.poset.by_rank(2)
    result = _Search(n, flats, budget).run()
    logger.info(
        f"partition search on {A.name}: {len(result.partitions)} found, {result.nodes} nodes, exhaustive={result.exhaustive}"
    )
    return result


def neighborly_partitions(A, mode: str = "exhaustive", settings: Optional[Settings] = None) -> List[Partition]:
    """Non-trivial neighborly partitions of A."""
    return search_neighborly_partitions(A, mode, settings).partitions


def _oriented(row: List[Fraction]) -> List[Fraction]:
    lead = next((x for x in row if x), Fraction(0))
    return [-x for x in row] if lead < 0 else row


def multinet_weight(A, partition: Partition) -> Optional[List[Fraction]]:
    """
    Weight supported by a partition read as a multinet, or None.

    Every rank-2 flat meeting two blocks must meet all of them, with equal
    multiplicity sums per block. The multiplicities come from the nullspace
    of those balance equations; the weight is sum_i c_i u_i over the blocks
    with c = (1, 2, ..., k - 1, -k(k - 1)/2), so it has full support.
    """
    n, k = len(A), len(partition.blocks)
    block_of = {h: b for b, block in enumerate(partition.blocks) for h in block}
    equations = []
    for X in A.poset.by_rank(2):
        met = {block_of[h] for h in X.indices}
        if len(met) == 1:
            continue
        if len(met) < k:
            return None
        for b in range(1, k):
            row = [0] * n
            for h in X.indices:
                if block_of[h] == 0:
                    row[h] += 1
                elif block_of[h] == b:
                    row[h] -= 1
            equations.append(row)
    if equations:
        basis = DomainMatrix([[QQ(x) for x in row] for row in equations], (len(equations), n), QQ).nullspace()
        rows = [_oriented([Fraction(int(x.numerator), int(x.denominator)) for x in row]) for row in basis.to_list()]
        if not rows:
            return None
        candidates = rows + [[sum(col, Fraction(0)) for col in zip(*rows)]]
        multiplicity = next((m for m in candidates if all(x > 0 for x in m)), None)
        if multiplicity is None:
            return None
    else:
        multiplicity = [Fraction(1)] * n
    coeffs = list(range(1, k)) + [-(k - 1) * k // 2]
    return [coeffs[block_of[h]] * multiplicity[h] for h in range(n)]


@dataclass
class ResonanceVerdict:
    """exists is None when a neighborly partition was found but not confirmed."""

    exists: Optional[bool]
    rule: str
    exhaustive: bool
    partitions: List[Partition] = field(default_factory=list)
    local: List[LocalComponent] = field(default_factory=list)
    witness: Optional[List[Fraction]] = None

    @property
    def excluded(self) -> bool:
        return self.exists is False

    def to_json(self, labels: Sequence[str]) -> dict:
        return {
            "essential_component_exists": self.exists,
            "rule": self.rule,
            "exhaustive": self.exhaustive,
            "neighborly_partitions": [p.to_json(labels) for p in self.partitions],
            "local_components": [
                {"flat": [labels[i] for i in c.flat.indices], "dimension": c.dimension, "essential": c.essential}
                for c in self.local
            ],
            "witness": None if self.witness is None else [str(x) for x in self.witness],
        }


def essential_resonance_exists(A, mode: str = "exhaustive", settings: Optional[Settings] = None) -> ResonanceVerdict:
    """Decide whether R^1(A) has an essential component."""
    local = local_components(A)
    if any(c.essential for c in local):
        return ResonanceVerdict(True, "ESSENTIAL_LOCAL_COMPONENT", True, local=local)
    search = search_neighborly_partitions(A, mode, settings)
    if not search.partitions:
        return ResonanceVerdict(False, "NO_NEIGHBORLY_PARTITION", search.exhaustive, [], local)
    for p in search.partitions:
        weight = multinet_weight(A, p)
        if weight is not None and resonance_membership(A, weight):
            logger.info(f"{A.name}: partition {p.to_json(A.labels)} carries a resonant weight")
            return ResonanceVerdict(True, "NEIGHBORLY_PARTITION_CONFIRMED", search.exhaustive, search.partitions, local, weight)
    logger.warning(f"{A.name}: {len(search.partitions)} neighborly partitions, none confirmed by a resonant weight")
    return ResonanceVerdict(None, "NEIGHBORLY_PARTITION_UNCONFIRMED", search.exhaustive, search.partitions, local)
