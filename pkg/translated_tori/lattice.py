"""
Intersection poset of an arrangement.

Flats are identified with the set of hyperplanes containing them. Affine
arrangements are handled by eliminating on the augmented rows
(normal | constant): a candidate intersection is empty exactly when the
constant column acquires a pivot.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .linalg import reduce_row, rref


@dataclass(frozen=True)
class Flat:
    indices: Tuple[int, ...]
    rank: int

    def __contains__(self, i: int) -> bool:
        return i in self.indices

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class IntersectionPoset:
    n: int
    flats: Tuple[Flat, ...]
    mobius: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return max((F.rank for F in self.flats), default=0)

    def by_rank(self, k: int) -> List[Flat]:
        return [F for F in self.flats if F.rank == k]

    def mobius_of(self, F: Flat) -> int:
        return self.mobius[self.flats.index(F)]

    def census(self) -> Dict[int, Dict[int, int]]:
        """rank -> {number of hyperplanes through the flat -> count}."""
        out: Dict[int, Counter] = {}
        for F in self.flats:
            out.setdefault(F.rank, Counter())[len(F)] += 1
        return {k: dict(sorted(c.items())) for k, c in sorted(out.items())}

    def poincare(self) -> Tuple[int, ...]:
        coeffs = [1] + [0] * self.rank
        for F, mu in zip(self.flats, self.mobius):
            coeffs[F.rank] += mu * (-1) ** F.rank
        return tuple(coeffs)

    def betti_numbers(self) -> Tuple[int, ...]:
        return self.poincare()

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.poincare()))

    def multiple_points(self) -> List[Flat]:
        return [F for F in self.by_rank(2) if len(F) >= 3]

    def flat_of_pair(self) -> Dict[Tuple[int, int], Flat]:
        """Rank-2 flat through each pair of meeting hyperplanes."""
        out = {}
        for F in self.by_rank(2):
            for a in F.indices:
                for b in F.indices:
                    if a < b:
                        out[(a, b)] = F
        return out

    def to_json(self, labels: Sequence[str]) -> dict:
        return {
            "rank": self.rank,
            "census": {str(k): {str(s): c for s, c in v.items()} for k, v in self.census().items()},
            "poincare": list(self.poincare()),
            "flats": [
                {"rank": F.rank, "hyperplanes": [labels[i] for i in F.indices], "mobius": mu}
                for F, mu in zip(self.flats, self.mobius)
            ],
        }


def intersection_poset(A) -> IntersectionPoset:
    ell = A.ambient_dim
    n = len(A)
    rows = [list(H.normal) + [H.constant] for H in A]
    level = [Flat((i,), 1) for i in range(n)]
    flats: List[Flat] = list(level)
    while level:
        found: Dict[Tuple[int, ...], Flat] = {}
        for F in level:
            basis, pivots = rref([rows[i] for i in F.indices])
            covered = set(F.indices)
            for h in range(n):
                if h in covered:
                    continue
                grown, grown_pivots = rref(basis + [reduce_row(basis, pivots, rows[h])])
                if grown_pivots[-1] == ell:
                    continue  # empty intersection
                members = tuple(
                    k for k in range(n) if all(x == 0 for x in reduce_row(grown, grown_pivots, rows[k]))
                )
                covered.update(members)
                found.setdefault(members, Flat(members, F.rank + 1))
        level = sorted(found.values(), key=lambda f: f.indices)
        flats.extend(level)
    return IntersectionPoset(n=n, flats=tuple(flats), mobius=_mobius(flats))


def _mobius(flats: Sequence[Flat]) -> Tuple[int, ...]:
    values: List[int] = []
    sets = [frozenset(F.indices) for F in flats]
    for i, F in enumerate(flats):
        below = sum(values[j] for j in range(i) if flats[j].rank < F.rank and sets[j] < sets[i])
        values.append(-1 - below)
    return tuple(values)


def poincare_polynomial(A) -> Tuple[int, ...]:
    """Coefficients of pi(A, t); the t^k coefficient is the k-th Betti number of the complement."""
    return A.poset.poincare()


def betti_numbers(A) -> Tuple[int, ...]:
    return A.poset.betti_numbers()


def euler_characteristic(A) -> int:
    return A.poset.euler_characteristic()


def format_polynomial(coeffs: Sequence[int], var: str = "t") -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}{mono}")
    return " + ".join(parts) if parts else "0"
