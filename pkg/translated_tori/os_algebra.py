"""
Orlik-Solomon algebra in degrees <= 2 and the Aomoto complex.

Degree 2 splits over rank-2 flats X; an nbc basis of the X summand is
e_{min X} e_j for the other j in X. Products of hyperplanes that do not
meet (affine parallels) vanish.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .errors import ValidationError
from .lattice import Flat
from .linalg import ExactMatrix, rank_ff
from .ratfunc import RatFunc, as_ratfunc

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class OSDegreeTwo:
    n: int
    basis: Tuple[Pair, ...]
    flat_of_pair: Dict[Pair, Flat]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def position(self, pair: Pair) -> int:
        return self.basis.index(pair)

    def product(self, i: int, j: int) -> Dict[Pair, int]:
        """e_i e_j in nbc coordinates."""
        if i == j:
            return {}
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        X = self.flat_of_pair.get((i, j))
        if X is None:
            return {}
        m = X.indices[0]
        if i == m:
            return {(m, j): sign}
        # e_i e_j = e_m e_j - e_m e_i from the boundary of e_m e_i e_j
        return {(m, j): sign, (m, i): -sign}


def os_degree_two(A) -> OSDegreeTwo:
    pairs = A.poset.flat_of_pair()
    basis = []
    for X in A.poset.by_rank(2):
        m = X.indices[0]
        basis.extend((m, j) for j in X.indices[1:])
    return OSDegreeTwo(n=len(A), basis=tuple(basis), flat_of_pair=pairs)


def _weights(A, lam: Sequence) -> List[RatFunc]:
    if len(lam) != len(A):
        raise ValidationError(f"weight has {len(lam)} entries, {A.name} has {len(A)} hyperplanes")
    return [as_ratfunc(x) for x in lam]


def weight_to_json(lam: Sequence) -> dict:
    return {"lambda": [as_ratfunc(x).to_json() for x in lam]}


def weight_from_json(data: dict) -> List[RatFunc]:
    from .parsing import parse_ratfunc

    try:
        raw = data["lambda"]
    except (KeyError, TypeError):
        raise ValidationError("weight JSON needs a 'lambda' list")
    return [parse_ratfunc(x) if isinstance(x, str) else RatFunc.from_json(x) for x in raw]


def wedge_matrix(A, lam: Sequence) -> ExactMatrix:
    """Matrix of a -> a_lam ^ a from A^1 (columns) to A^2 (rows)."""
    lam = _weights(A, lam)
    os2 = os_degree_two(A)
    rows = [[RatFunc.zero() for _ in range(os2.n)] for _ in range(os2.dimension)]
    for c in range(os2.n):
        for i in range(os2.n):
            if i == c or lam[i].is_zero():
                continue
            for pair, s in os2.product(i, c).items():
                r = os2.position(pair)
                rows[r][c] = rows[r][c] + lam[i] * s
    return ExactMatrix(rows, os2.n)


def wedge(A, lam: Sequence, a: Sequence) -> Dict[Pair, RatFunc]:
    """a_lam ^ a in nbc coordinates, zero entries omitted."""
    lam, a = _weights(A, lam), _weights(A, a)
    os2 = os_degree_two(A)
    out: Dict[Pair, RatFunc] = {}
    for i in range(os2.n):
        for j in range(os2.n):
            if lam[i].is_zero() or a[j].is_zero():
                continue
            for pair, s in os2.product(i, j).items():
                out[pair] = out.get(pair, RatFunc.zero()) + lam[i] * a[j] * s
    return {p: x for p, x in out.items() if not x.is_zero()}


def aomoto_h1_dim(A, lam: Sequence) -> int:
    lam = _weights(A, lam)
    n = len(A)
    if all(x.is_zero() for x in lam):
        return n
    M = wedge_matrix(A, lam)
    rank = rank_ff(M) if M.nrows else 0
    logger.debug(f"Aomoto matrix of {A.name}: {M.nrows}x{M.ncols}, rank {rank}")
    return n - rank - 1


def resonance_membership(A, lam: Sequence, m: int = 1) -> bool:
    """Whether lam lies in R^1_m(A), i.e. H^1(A, a_lam) has dimension >= m."""
    if m < 1:
        raise ValidationError(f"depth must be at least 1, got {m}")
    return aomoto_h1_dim(A, lam) >= m


@dataclass(frozen=True)
class LocalComponent:
    """Local resonance component of a multiple point: weights supported on X summing to 0."""

    flat: Flat
    dimension: int
    essential: bool

    def contains(self, lam: Sequence) -> bool:
        lam = [as_ratfunc(x) for x in lam]
        total = RatFunc.zero()
        for i, x in enumerate(lam):
            if i not in self.flat and not x.is_zero():
                return False
            total = total + x
        return total.is_zero()


def local_components(A) -> List[LocalComponent]:
    n = len(A)
    return [LocalComponent(flat=X, dimension=len(X) - 1, essential=len(X) == n) for X in A.poset.multiple_points()]
