"""
Rank-one local systems on arrangement complements and the explicit
one-parameter (translated) subtori of the monomial families.

A character is a point of the character torus (C^*)^n, one coordinate per
hyperplane in the host's order. Coordinates are RatFunc so a single value
can stand for the generic point of a parametrized family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from .arrangement import Arrangement, Triple, decone_coordinates, monomial_arrangement
from .cyclotomic import Cyclotomic, char_order
from .errors import ValidationError
from .ratfunc import RatFunc, as_ratfunc, product


@dataclass(frozen=True)
class Character:
    host: Arrangement
    coords: Tuple[RatFunc, ...]

    def __post_init__(self):
        coords = tuple(as_ratfunc(x) for x in self.coords)
        if len(coords) != len(self.host):
            raise ValidationError(
                f"character has {len(coords)} coordinates, {self.host.name} has {len(self.host)} hyperplanes"
            )
        if any(x.is_zero() for x in coords):
            raise ValidationError("character coordinates must be nonzero")
        object.__setattr__(self, "coords", coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> RatFunc:
        return self.coords[i]

    def is_trivial(self) -> bool:
        return all(x.is_one() for x in self.coords)

    def is_constant(self) -> bool:
        return all(x.is_constant() for x in self.coords)

    def coordinate_product(self) -> RatFunc:
        return product(self.coords)

    def __mul__(self, other: "Character") -> "Character":
        if not other.host.same_hyperplanes(self.host):
            raise ValidationError("characters live on different arrangements")
        return Character(self.host, tuple(a * b for a, b in zip(self.coords, other.coords)))

    def inverse(self) -> "Character":
        return Character(self.host, tuple(x.inverse() for x in self.coords))

    def evaluate(self, u=None, v=None) -> "Character":
        return Character(self.host, tuple(x.evaluate(u, v) for x in self.coords))

    def to_json(self) -> dict:
        return {
            "host": self.host.name,
            "host_fingerprint": self.host.fingerprint(),
            "coords": {H.label: x.to_json() for H, x in zip(self.host, self.coords)},
        }

    def to_text(self) -> dict:
        return {H.label: str(x) for H, x in zip(self.host, self.coords)}

    @classmethod
    def from_json(cls, data: dict, host: Arrangement) -> "Character":
        if data.get("host_fingerprint") not in (None, host.fingerprint()):
            raise ValidationError(f"character was recorded on a different arrangement than {host.name}")
        try:
            coords = data["coords"]
            values = [coords[label] for label in host.labels] if isinstance(coords, dict) else list(coords)
        except (KeyError, TypeError) as e:
            raise ValidationError(f"malformed character: missing {e}")
        from .parsing import parse_ratfunc

        return cls(host, tuple(parse_ratfunc(x) if isinstance(x, str) else RatFunc.from_json(x) for x in values))


def trivial_character(host: Arrangement) -> Character:
    return Character(host, tuple(RatFunc.one() for _ in host))


@dataclass(frozen=True)
class ParamSubtorus:
    """
    One-parameter subtorus point(u) = translation * u^exponents.

    `point` is the generic point as built from its own defining formula,
    so agreement with translation * u^exponents is a checked fact.
    """

    name: str
    host: Arrangement
    translation: Character
    exponents: Tuple[int, ...]
    point: Character

    @property
    def dimension(self) -> int:
        return 1 if any(self.exponents) else 0

    def product_form(self) -> Character:
        u = RatFunc.u()
        return Character(self.host, tuple(t * u ** e for t, e in zip(self.translation.coords, self.exponents)))

    def decomposition_holds(self) -> bool:
        return self.product_form() == self.point

    def at(self, value) -> Character:
        return self.point.evaluate(u=value)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "host": self.host.name,
            "dimension": self.dimension,
            "translation": self.translation.to_text(),
            "exponents": dict(zip(self.host.labels, self.exponents)),
            "generic_point": self.point.to_text(),
        }


def _block(value: RatFunc, r: int) -> List[RatFunc]:
    return [value] * r


def component_C(r: int) -> Character:
    """Generic point of the two-parameter component of A(r): w = 1/(uv)."""
    host = monomial_arrangement(r, full=True)
    u, v = RatFunc.u(), RatFunc.v()
    w = (u * v).inverse()
    coords = [u ** r, v ** r, w ** r] + _block(w, r) + _block(v, r) + _block(u, r)
    return Character(host, tuple(coords))


def _check_q(r: int, q: int) -> None:
    if r < 2:
        raise ValidationError(f"r must be at least 2, got {r}")
    if not 1 <= q <= r - 1:
        raise ValidationError(f"q must lie in 1..{r - 1}, got {q}")


def torus_T(r: int) -> ParamSubtorus:
    """The subtorus through 1 whose translates give the C_q."""
    if r < 2:
        raise ValidationError(f"r must be at least 2, got {r}")
    host = monomial_arrangement(r, full=False)
    exponents = (r, -r) + (0,) * r + (-1,) * r + (1,) * r
    one = trivial_character(host)
    u = RatFunc.u()
    point = Character(host, tuple(u ** e for e in exponents))
    return ParamSubtorus(f"T({r})", host, one, exponents, point)


def tau(r: int, q: int) -> Character:
    _check_q(r, q)
    host = monomial_arrangement(r, full=False)
    z = RatFunc.constant(Cyclotomic.zeta(r, q))
    coords = [RatFunc.one(), RatFunc.one()] + _block(z, r) + _block(z.inverse(), r) + _block(RatFunc.one(), r)
    return Character(host, tuple(coords))


def component_Cq(r: int, q: int) -> ParamSubtorus:
    """Slice of C(r) on the hypersurface w = zeta^q, as a subtorus of D(r)'s torus."""
    _check_q(r, q)
    host = monomial_arrangement(r, full=False)
    u = RatFunc.u()
    zq = RatFunc.constant(Cyclotomic.zeta(r, q))
    v = (zq * u).inverse()
    point = Character(host, tuple([u ** r, v ** r] + _block(zq, r) + _block(v, r) + _block(u, r)))
    T = torus_T(r)
    return ParamSubtorus(f"C({r},{q})", host, tau(r, q), T.exponents, point)


def translated_tori(n: int) -> List[ParamSubtorus]:
    """The n translated components C(n+1, q), q = 1..n."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    return [component_Cq(n + 1, q) for q in range(1, n + 1)]


def is_essential(x) -> bool:
    """No coordinate of the character (or generic point) is identically 1."""
    point = x.point if isinstance(x, ParamSubtorus) else x
    return not any(c.is_one() for c in point.coords)


def translation_order(S: ParamSubtorus) -> int:
    """Least k >= 1 with translation^k on the subtorus through 1 with the same exponents."""
    consts = []
    for t in S.translation.coords:
        if not t.is_constant():
            raise ValidationError(f"{S.name} has a non-constant translation")
        consts.append(t.constant_value())
    orders = [char_order(c) for c in consts]
    if any(o is None for o in orders):
        raise ValidationError(f"{S.name} is not translated by a torsion point")
    L = math.lcm(*orders)
    nonzero = [abs(e) for e in S.exponents if e]
    M = L * (math.gcd(*nonzero) if nonzero else 1)
    for k in range(1, L + 1):
        powers = [c ** k for c in consts]
        if not nonzero:
            if all(p.is_one() for p in powers):
                return k
            continue
        # translation^k = u0^exponents for some root of unity u0 of order dividing M
        for i in range(M):
            if all(p == Cyclotomic.zeta(M, i * e) for p, e in zip(powers, S.exponents)):
                return k
    return L


# -- deletion / restriction maps --------------------------------------------


def extend_character(t: Character, tr: Triple) -> Character:
    """Character on A with coordinate 1 on the pivot, from one on A'."""
    if not t.host.same_hyperplanes(tr.deleted):
        raise ValidationError("character does not live on the deleted arrangement of this triple")
    coords = list(t.coords)
    coords.insert(tr.pivot, RatFunc.one())
    return Character(tr.full, tuple(coords))


def delete_coordinate(t: Character, tr: Triple) -> Character:
    if not t.host.same_hyperplanes(tr.full):
        raise ValidationError("character does not live on the full arrangement of this triple")
    return Character(tr.deleted, tuple(x for i, x in enumerate(t.coords) if i != tr.pivot))


def restrict_character(t: Character, tr: Triple) -> Character:
    """Coordinate on each restricted hyperplane is the product over its trace."""
    if not t.host.same_hyperplanes(tr.deleted):
        raise ValidationError("character does not live on the deleted arrangement of this triple")
    return Character(tr.restricted, tuple(product(t.coords[i] for i in trace) for trace in tr.trace))


@dataclass(frozen=True)
class LocalSystemTriple:
    full: Character
    deleted: Character
    restricted: Character


def local_system_triple(t: Character, tr: Triple) -> LocalSystemTriple:
    return LocalSystemTriple(extend_character(t, tr), t, restrict_character(t, tr))


def decone_character(t: Character, pivot, deconed: Arrangement) -> Character:
    i = t.host.index(pivot)
    coords = decone_coordinates(t.coords, i)
    return Character(deconed, coords)

