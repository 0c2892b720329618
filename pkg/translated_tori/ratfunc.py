"""
Rational functions in u, v with cyclotomic coefficients.

Numerator and denominator are sympy PolyElements over K = Q(zeta_N), kept
coprime with the denominator monic in its lex-leading term (u before v).
Mixed arithmetic lifts to the lcm conductor; a gcd does not change under
field extension, so the lifted normal form is again normal and structural
equality is mathematical equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Tuple, Union

from sympy import symbols
from sympy.polys.orderings import lex

from .cyclotomic import Cyclotomic, as_cyclotomic, coefficient_field, from_domain, to_domain
from .errors import ValidationError

Scalar = Union[int, Fraction, Cyclotomic]

GENERATORS = symbols("u v")


@lru_cache(maxsize=None)
def polynomial_domain(N: int):
    """K[u, v] for K = Q(zeta_N), as a sympy domain."""
    return coefficient_field(N).poly_ring(*GENERATORS, order=lex)


def polynomial_ring(N: int):
    """The PolyRing behind polynomial_domain(N)."""
    return polynomial_domain(N).ring


def lift_poly(p, N: int, M: int):
    """Image of p in K_M[u, v]; N must divide M."""
    if N == M:
        return p
    return polynomial_ring(M).from_dict({m: to_domain(from_domain(c, N), M) for m, c in p.items()})


def _min_exponents(p) -> Tuple[int, int]:
    return min(m[0] for m in p), min(m[1] for m in p)


def _shift_down(p, a: int, b: int):
    return p.ring.from_dict({(m[0] - a, m[1] - b): c for m, c in p.items()})


def _is_ground(p) -> bool:
    return all(m == (0, 0) for m in p)


def _cancel(num, den):
    # a single term only shares monomial factors
    if len(num) == 1 or len(den) == 1:
        (nu, nv), (du, dv) = _min_exponents(num), _min_exponents(den)
        a, b = min(nu, du), min(nv, dv)
        if a or b:
            return _shift_down(num, a, b), _shift_down(den, a, b)
        return num, den
    _, p, q = num.cofactors(den)
    return p, q


def poly_lcm(p, q):
    """Least common multiple of two PolyElements over one ring."""
    if len(p) == 1 and len(q) == 1:
        (a, b), (c, d) = next(iter(p)), next(iter(q))
        return p.ring.from_dict({(max(a, c), max(b, d)): p.ring.domain.one})
    return p.lcm(q)


def _poly_str(p, N: int) -> str:
    if not p:
        return "0"
    parts = []
    for (eu, ev), c in sorted(p.items(), key=lambda t: t[0], reverse=True):
        mono = "*".join(f"{name}^{e}" if e != 1 else name for name, e in (("u", eu), ("v", ev)) if e)
        coeff = from_domain(c, N)
        if not mono:
            parts.append(str(coeff))
        elif coeff.is_one():
            parts.append(mono)
        elif coeff == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"({coeff})*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def _poly_json(p, N: int) -> list:
    return [
        {"coeff": from_domain(c, N).to_json(), "u": m[0], "v": m[1]}
        for m, c in sorted(p.items(), key=lambda t: t[0], reverse=True)
    ]


class RatFunc:
    """Immutable element of K(u, v), K a cyclotomic field."""

    __slots__ = ("conductor", "num", "den")

    def __init__(self, num, den=None, *, conductor: int = 1, reduced: bool = False):
        R = polynomial_ring(conductor)
        num = R(num)
        den = R.one if den is None else R(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            num, den = R.zero, R.one
        elif not reduced:
            num, den = _cancel(num, den)
        lc = den.LC
        if lc != R.domain.one:
            num, den = num.quo_ground(lc), den.quo_ground(lc)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc values are immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c: Scalar) -> "RatFunc":
        """The constant function c."""
        c = as_cyclotomic(c)
        R = polynomial_ring(c.conductor)
        return cls(R.ground_new(to_domain(c, c.conductor)), conductor=c.conductor, reduced=True)

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls(0, reduced=True)

    @classmethod
    def one(cls) -> "RatFunc":
        return cls(1, reduced=True)

    @classmethod
    def monomial(cls, c: Scalar, eu: int = 0, ev: int = 0) -> "RatFunc":
        """c * u^eu * v^ev with integer (possibly negative) exponents."""
        c = as_cyclotomic(c)
        N = c.conductor
        R = polynomial_ring(N)
        num = R.from_dict({(max(eu, 0), max(ev, 0)): to_domain(c, N)})
        den = R.from_dict({(max(-eu, 0), max(-ev, 0)): R.domain.one})
        return cls(num, den, conductor=N, reduced=True)

    @classmethod
    def u(cls) -> "RatFunc":
        """The first coordinate."""
        return cls.monomial(1, 1, 0)

    @classmethod
    def v(cls) -> "RatFunc":
        """The second coordinate."""
        return cls.monomial(1, 0, 1)

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        """True when neither u nor v appears."""
        return _is_ground(self.num) and _is_ground(self.den)

    def is_one(self) -> bool:
        return self.is_constant() and self.num == self.num.ring.one

    def constant_value(self) -> Cyclotomic:
        """The value of a constant function, as a Cyclotomic."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.is_zero():
            return Cyclotomic.zero(self.conductor)
        return from_domain(self.num[(0, 0)], self.conductor)

    def is_laurent_monomial(self) -> bool:
        """True for c * u^a * v^b with integer a, b."""
        return len(self.num) == 1 and len(self.den) == 1

    def laurent_exponents(self) -> Tuple[Cyclotomic, int, int]:
        """(c, a, b) with self == c * u^a * v^b."""
        if not self.is_laurent_monomial():
            raise ValueError(f"{self} is not a Laurent monomial")
        (nu, nv), c = next(iter(self.num.items()))
        du, dv = next(iter(self.den))
        return from_domain(c, self.conductor), nu - du, nv - dv

    # -- conductors ---------------------------------------------------

    def lift(self, M: int) -> "RatFunc":
        """The same function over Q(zeta_M); the conductor must divide M."""
        N = self.conductor
        if M == N:
            return self
        if M % N:
            raise ValidationError(f"cannot lift conductor {N} to {M}")
        return RatFunc(lift_poly(self.num, N, M), lift_poly(self.den, N, M), conductor=M, reduced=True)

    def _common(self, other: "RatFunc") -> Tuple["RatFunc", "RatFunc"]:
        if self.conductor == other.conductor:
            return self, other
        M = math.lcm(self.conductor, other.conductor)
        return self.lift(M), other.lift(M)

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["RatFunc"]:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return RatFunc.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        if a.den == b.den:
            return RatFunc(a.num + b.num, a.den, conductor=a.conductor)
        den = poly_lcm(a.den, b.den)
        num = a.num * den.exquo(a.den) + b.num * den.exquo(b.den)
        return RatFunc(num, den, conductor=a.conductor)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, conductor=self.conductor, reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        if a.is_zero() or b.is_zero():
            return RatFunc.zero()
        if a.is_constant():
            a, b = b, a
        if b.is_constant():
            return RatFunc(a.num.mul_ground(b.num[(0, 0)]), a.den, conductor=a.conductor, reduced=True)
        return RatFunc(a.num * b.num, a.den * b.den, conductor=a.conductor)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        """1 / self; raises ZeroDivisionError on zero."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, conductor=self.conductor, reduced=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, conductor=self.conductor, reduced=True)

    # -- substitution -------------------------------------------------

    def evaluate(self, u=None, v=None) -> "RatFunc":
        """Substitute for u and/or v; raises ZeroDivisionError if the denominator vanishes."""
        values = [x.constant_value() if isinstance(x, RatFunc) and x.is_constant() else x for x in (u, v)]
        if all(x is None or isinstance(x, (int, Fraction, Cyclotomic)) for x in values):
            return self._evaluate_scalars(values)
        U = RatFunc.u() if u is None else as_ratfunc(u)
        V = RatFunc.v() if v is None else as_ratfunc(v)
        num = _substitute(self.num, self.conductor, U, V)
        den = _substitute(self.den, self.conductor, U, V)
        if den.is_zero():
            raise ZeroDivisionError(f"denominator of {self} vanishes")
        return num / den

    def _evaluate_scalars(self, values) -> "RatFunc":
        scalars = {i: as_cyclotomic(x) for i, x in enumerate(values) if x is not None}
        M = math.lcm(self.conductor, *(c.conductor for c in scalars.values()))
        lifted = self.lift(M)
        R = polynomial_ring(M)
        num, den = lifted.num, lifted.den
        for i, c in scalars.items():
            value = to_domain(c, M)
            num, den = num.subs(R.gens[i], value), den.subs(R.gens[i], value)
        if not den:
            raise ZeroDivisionError(f"denominator of {self} vanishes")
        return RatFunc(num, den, conductor=M)

    # -- comparison, text and json ------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        lead = from_domain(self.num.LC, self.conductor) if self.num else 0
        return hash((frozenset(self.num), frozenset(self.den), hash(lead)))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        num = _poly_str(self.num, self.conductor)
        if _is_ground(self.den):
            return num
        return f"({num})/({_poly_str(self.den, self.conductor)})"

    def to_json(self) -> dict:
        """Numerator and denominator as term lists."""
        return {"num": _poly_json(self.num, self.conductor), "den": _poly_json(self.den, self.conductor)}

    @classmethod
    def from_json(cls, data: dict) -> "RatFunc":
        """Inverse of to_json; malformed input raises ValidationError."""
        try:
            num = _from_terms(data["num"])
            den = _from_terms(data["den"])
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"malformed rational function {data!r}: {e}")
        return num / den


def _from_terms(terms: list) -> RatFunc:
    total = RatFunc.zero()
    for t in terms:
        eu, ev = int(t["u"]), int(t["v"])
        if eu < 0 or ev < 0:
            raise ValidationError(f"negative exponent {(eu, ev)} in polynomial")
        total = total + RatFunc.monomial(Cyclotomic.from_json(t["coeff"]), eu, ev)
    return total


def _substitute(p, N: int, U: RatFunc, V: RatFunc) -> RatFunc:
    total = RatFunc.zero()
    for (a, b), c in p.items():
        total = total + RatFunc.constant(from_domain(c, N)) * U ** a * V ** b
    return total


def as_ratfunc(value) -> RatFunc:
    """Coerce an int, Fraction, Cyclotomic or RatFunc."""
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, (int, Fraction, Cyclotomic)):
        return RatFunc.constant(value)
    raise ValidationError(f"cannot interpret {value!r} as a rational function")


def product(values: Iterable) -> RatFunc:
    """Product of RatFunc-coercible values; 1 for an empty iterable."""
    out = RatFunc.one()
    for x in values:
        out = out * x
    return out
