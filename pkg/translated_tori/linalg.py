"""
Exact linear algebra over cyclotomic fields and over K(u, v).

Both sides run on sympy DomainMatrix. Over Q(zeta_N) entries are carried
into coefficient_field(N); over K(u, v) each row is cleared of denominators
and the matrix is eliminated fraction-free over K[u, v] with rref_den, so no
rational function is normalized inside the elimination loop.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.polys.matrices import DomainMatrix

from .cyclotomic import Cyclotomic, as_cyclotomic, coefficient_field, from_domain, to_domain
from .errors import ValidationError
from .ratfunc import RatFunc, as_ratfunc, poly_lcm, polynomial_domain

logger = logging.getLogger(__name__)


class ExactMatrix:
    """Dense matrix of RatFunc entries."""

    def __init__(self, rows: Sequence[Sequence], ncols: Optional[int] = None):
        self.rows: Tuple[Tuple[RatFunc, ...], ...] = tuple(tuple(as_ratfunc(x) for x in row) for row in rows)
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValidationError(f"ragged matrix with row widths {sorted(widths)}")
        self.nrows = len(self.rows)
        self.ncols = widths.pop() if widths else (ncols or 0)

    def __getitem__(self, ij: Tuple[int, int]) -> RatFunc:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Tuple[RatFunc, ...]:
        return tuple(row[j] for row in self.rows)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "ExactMatrix":
        """Rows and columns reordered; row_perm[i] is the source of row i."""
        return ExactMatrix([[self.rows[i][j] for j in col_perm] for i in row_perm], self.ncols)

    def scale_row(self, i: int, factor) -> "ExactMatrix":
        """Row i multiplied by factor."""
        factor = as_ratfunc(factor)
        return ExactMatrix([[x * factor for x in row] if k == i else row for k, row in enumerate(self.rows)], self.ncols)

    @property
    def conductor(self) -> int:
        return math.lcm(1, *(x.conductor for row in self.rows for x in row))

    def specialize(self, u=None, v=None, rows: Optional[Sequence[int]] = None) -> List[List[Cyclotomic]]:
        """Evaluate every entry at (u, v); raises ZeroDivisionError on a pole."""
        picked = self.rows if rows is None else [self.rows[i] for i in rows]
        return [[x.evaluate(u, v).constant_value() for x in row] for row in picked]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows and self.ncols == other.ncols

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols})"

    def to_json(self) -> dict:
        return {
            "nrows": self.nrows,
            "ncols": self.ncols,
            "rows": [[x.to_json() for x in row] for row in self.rows],
        }


# -- elimination over Q(zeta_N) --------------------------------------------


def _field_matrix(rows: Sequence[Sequence]) -> Tuple[DomainMatrix, int]:
    entries = [[as_cyclotomic(x) for x in row] for row in rows]
    N = math.lcm(1, *(x.conductor for row in entries for x in row))
    K = coefficient_field(N)
    shape = (len(entries), len(entries[0]) if entries else 0)
    return DomainMatrix([[to_domain(x, N) for x in row] for row in entries], shape, K), N


def rref(rows: Sequence[Sequence]) -> Tuple[List[List[Cyclotomic]], List[int]]:
    """Reduced row echelon form over Q(zeta_N); returns (nonzero rows, pivot columns)."""
    if not rows:
        return [], []
    M, N = _field_matrix(rows)
    reduced, pivots = M.rref()
    table = reduced.to_list()
    return [[from_domain(x, N) for x in table[i]] for i in range(len(pivots))], list(pivots)


def reduce_row(basis: Sequence[Sequence], pivots: Sequence[int], row: Sequence) -> list:
    """Reduce row against an RREF basis; the result is zero iff row lies in its span."""
    out = list(row)
    for b, c in zip(basis, pivots):
        f = out[c]
        if f != 0:
            out = [a - f * x for a, x in zip(out, b)]
    return out


def field_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix of int, Fraction or Cyclotomic entries, over Q(zeta_N)."""
    if not rows or not rows[0]:
        return 0
    return _field_matrix(rows)[0].rank()


# -- fraction-free elimination over K[u, v] --------------------------------


def _cleared_rows(M: ExactMatrix, N: int) -> list:
    out = []
    for row in M.rows:
        lifted = [x.lift(N) for x in row]
        common = polynomial_domain(N).ring.one
        for x in lifted:
            if not x.is_zero():
                common = poly_lcm(common, x.den)
        out.append([x.num * common.exquo(x.den) for x in lifted])
    return out


def independent_rows(M: ExactMatrix) -> List[int]:
    """Indices of the first maximal set of rows independent over K(u, v)."""
    if M.nrows == 0 or M.ncols == 0:
        return []
    N = M.conductor
    cleared = DomainMatrix(_cleared_rows(M, N), (M.nrows, M.ncols), polynomial_domain(N))
    # pivot columns of the transpose are the independent rows
    _, _, pivots = cleared.transpose().rref_den(method="FF")
    return list(pivots)


def rank_ff(M: ExactMatrix) -> int:
    """Rank over K(u, v)."""
    rank = len(independent_rows(M))
    logger.debug(f"rank of {M!r} over K(u, v): {rank}")
    return rank


# -- specialization oracle ------------------------------------------------


@dataclass
class SpecializationReport:
    symbolic_rank: int
    ranks: List[int] = field(default_factory=list)
    points: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def max_rank(self) -> int:
        return max(self.ranks, default=0)

    @property
    def consistent(self) -> bool:
        return self.max_rank == self.symbolic_rank and all(k <= self.symbolic_rank for k in self.ranks)

    def to_json(self) -> dict:
        return {
            "symbolic_rank": self.symbolic_rank,
            "specialized_ranks": self.ranks,
            "max_rank": self.max_rank,
            "consistent": self.consistent,
            "points": [{"order": n, "u_power": a, "v_power": b} for n, a, b in self.points],
        }


def _low_degree_orders(lower: int, base: int, cap: int, keep: int = 4) -> List[int]:
    upper = min(2 * lower, cap)
    if upper <= lower:
        logger.warning(f"conductor cap {cap} forces specialization orders below {lower}")
        lower, upper = max(1, cap // 2), cap
    candidates = [n for n in range(lower + 1, upper + 1) if math.lcm(n, base) <= cap]
    if not candidates:
        candidates = [n for n in range(lower + 1, upper + 1) if n % base == 0] or [base]
    candidates.sort(key=lambda n: (int(sympy.totient(math.lcm(n, base))), n))
    return candidates[:keep]


def _random_unit(rng: np.random.Generator, n: int) -> int:
    while True:
        k = int(rng.integers(1, n)) if n > 1 else 0
        if math.gcd(k, n) == 1:
            return k


def specialization_oracle(M: ExactMatrix, count: int, seed: int, cap: int = 1024) -> SpecializationReport:
    """
    Ranks of M at `count` random points u = zeta_n^a, v = zeta_n^b, n above ten
    times the matrix size. Only the symbolic pivot rows are specialized unless
    they lose rank, in which case the full matrix is used.
    """
    basis = independent_rows(M)
    report = SpecializationReport(symbolic_rank=len(basis))
    if M.nrows == 0 or M.ncols == 0:
        return report
    rng = np.random.default_rng(seed)
    orders = _low_degree_orders(10 * max(M.nrows, M.ncols), M.conductor, cap)
    attempts = 0
    while len(report.ranks) < count and attempts < 10 * count:
        attempts += 1
        n = int(orders[int(rng.integers(0, len(orders)))])
        a, b = _random_unit(rng, n), _random_unit(rng, n)
        u, v = Cyclotomic.zeta(n, a), Cyclotomic.zeta(n, b)
        try:
            sub = M.specialize(u, v, rows=basis)
            rank = field_rank(sub) if sub else 0
            if rank < report.symbolic_rank:
                rank = field_rank(M.specialize(u, v))
        except ZeroDivisionError:
            logger.debug(f"skipping pole at order {n}")
            continue
        report.ranks.append(rank)
        report.points.append((n, a, b))
    return report
