"""
Fundamental-group presentations from wiring diagrams, Fox calculus, and the
first twisted Betti number at a rank-one character.

Words are tuples of nonzero ints: k stands for generator k (1-based), -k
for its inverse.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .arrangement import decone
from .characters import Character, decone_character
from .errors import ValidationError
from .lattice import betti_numbers
from .linalg import ExactMatrix, field_rank, rank_ff
from .ratfunc import RatFunc, as_ratfunc
from .wiring import WiringDiagram, wiring_diagram

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

DUALITY_CONVENTION = (
    "dimensions are first homology of the presentation complex at t; H^1 of L_t has the "
    "dimension found at the inverse character, and C_q, T and tau_q are closed under "
    "inversion up to q -> r - q"
)


def free_reduce(word: Sequence[int]) -> Word:
    out: List[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def conjugate(word: Sequence[int], by: Sequence[int]) -> Word:
    return free_reduce(tuple(by) + tuple(word) + invert(by))


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relators: Tuple[Word, ...]
    relator_source: Tuple[int, ...] = ()

    def __post_init__(self):
        n = len(self.generators)
        for w in self.relators:
            if any(x == 0 or abs(x) > n for x in w):
                raise ValidationError(f"relator {list(w)} uses a letter outside 1..{n}")
        if not self.relator_source:
            object.__setattr__(self, "relator_source", tuple(-1 for _ in self.relators))

    @property
    def n(self) -> int:
        return len(self.generators)

    def exponent_sums(self) -> List[List[Fraction]]:
        rows = []
        for w in self.relators:
            row = [Fraction(0)] * self.n
            for x in w:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return rows

    def abelianization_rank(self) -> int:
        rows = self.exponent_sums()
        return self.n - (field_rank(rows) if rows else 0)

    def euler_characteristic(self) -> int:
        return 1 - self.n + len(self.relators)

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relators": [list(w) for w in self.relators]}

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        try:
            generators = tuple(str(g) for g in data["generators"])
            relators = tuple(tuple(int(x) for x in w) for w in data["relators"])
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"malformed presentation: {e}")
        return cls(generators, relators)


def presentation(wd: WiringDiagram) -> Presentation:
    """
    Sweep presentation: each line carries its current word, starting with
    its own generator. At a vertex with local words g_1..g_k (increasing y)
    every cyclic rotation of g_1...g_k is set equal to the product; past the
    vertex the j-th strand carries P g_j P^-1 with P = g_1...g_{j-1}.
    """
    words: Dict[int, Word] = {i: (i + 1,) for i in range(len(wd.lines))}
    relators: List[Word] = []
    sources: List[int] = []
    for idx, event in enumerate(wd.events):
        local = [words[i] for i in event.order_before]
        total_inv = invert(sum(local, ()))
        for s in range(1, len(local)):
            rotated = sum(local[s:] + local[:s], ())
            relators.append(free_reduce(rotated + total_inv))
            sources.append(idx)
        prefix: Word = ()
        for i, w in zip(event.order_before, local):
            words[i] = conjugate(w, prefix)
            prefix = free_reduce(prefix + w)
    return Presentation(tuple(L.label for L in wd.lines), tuple(relators), tuple(sources))


# -- Fox calculus --------------------------------------------------------------


def _coords(P: Presentation, t: Union[Character, Sequence]) -> List[RatFunc]:
    coords = list(t.coords) if isinstance(t, Character) else [as_ratfunc(x) for x in t]
    if len(coords) != P.n:
        raise ValidationError(f"character has {len(coords)} coordinates, presentation has {P.n} generators")
    return coords


def fox_row(word: Sequence[int], coords: Sequence[RatFunc], inverses: Sequence[RatFunc]) -> List[RatFunc]:
    """Fox derivatives of word with respect to every generator, evaluated at coords."""
    row = [RatFunc.zero() for _ in coords]
    prefix = RatFunc.one()
    for letter in word:
        j = abs(letter) - 1
        if letter > 0:
            row[j] = row[j] + prefix
            prefix = prefix * coords[j]
        else:
            prefix = prefix * inverses[j]
            row[j] = row[j] - prefix
    return row


@dataclass(frozen=True)
class FoxMatrix:
    presentation: Presentation
    coords: Tuple[RatFunc, ...]
    matrix: ExactMatrix

    def identity_holds(self) -> bool:
        """sum_j (dR/dg_j)(t) * (t_j - 1) == 0 on every row."""
        for row in self.matrix.rows:
            total = RatFunc.zero()
            for x, t in zip(row, self.coords):
                total = total + x * (t - 1)
            if not total.is_zero():
                return False
        return True


def fox_matrix(P: Presentation, t: Union[Character, Sequence]) -> FoxMatrix:
    coords = _coords(P, t)
    inverses = [c.inverse() for c in coords]
    rows = [fox_row(w, coords, inverses) for w in P.relators]
    return FoxMatrix(P, tuple(coords), ExactMatrix(rows, P.n))


def h1_dim(P: Presentation, t: Union[Character, Sequence]) -> int:
    coords = _coords(P, t)
    if all(c.is_one() for c in coords):
        return P.n
    F = fox_matrix(P, coords)
    return P.n - 1 - rank_ff(F.matrix)


# -- membership in the first characteristic variety ---------------------------


@dataclass(frozen=True)
class MembershipResult:
    """Verdict of sigma1_test; betti is set at the trivial character."""

    member: bool
    h1: int
    reason: str
    betti: Optional[Tuple[int, ...]] = None

    def to_json(self) -> dict:
        data = {"member": self.member, "h1_dim": self.h1, "reason": self.reason, "convention": DUALITY_CONVENTION}
        if self.betti is not None:
            data["betti_numbers"] = list(self.betti)
        return data


def sigma1_test(A, t: Character, m: int = 1, pivot=0) -> MembershipResult:
    """dim H^1 at t for a central arrangement whose decone is a real line arrangement."""
    if m < 1:
        raise ValidationError(f"depth must be at least 1, got {m}")
    if not A.is_central:
        raise ValidationError(f"{A.name} is not central")
    if not t.host.same_hyperplanes(A):
        raise ValidationError("character does not live on this arrangement")
    if t.is_trivial():
        betti = betti_numbers(A)
        h = betti[1] if len(betti) > 1 else 0
        return MembershipResult(h >= m, h, "trivial character: first Betti number of the complement", betti)
    if not (t.coordinate_product() == 1):
        return MembershipResult(False, 0, "coordinate product is not 1, so all twisted cohomology vanishes")
    B = decone(A, pivot)
    P = presentation(wiring_diagram(B))
    s = decone_character(t, pivot, B)
    h = h1_dim(P, s)
    logger.info(f"h1 on {B.name} = {h}")
    return MembershipResult(h >= m, h, f"Alexander matrix rank on {B.name}")


def sigma1_membership(A, t: Character, m: int = 1, pivot=0) -> bool:
    return sigma1_test(A, t, m, pivot).member
