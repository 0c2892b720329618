"""
Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored on the power basis 1, z, ..., z^(phi(N)-1) of
Q[z]/Phi_N(z) as integer numerators over one positive common denominator.
Mixed arithmetic lifts both operands to the lcm conductor, so equality and
hashing never depend on the conductor an element happens to carry.

coefficient_field, to_domain and from_domain carry values to and from the
sympy domain used for polynomial and matrix work.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly, Symbol, cyclotomic_poly

from .config import get_settings
from .errors import ConductorError, ValidationError

Rational = Union[int, Fraction]

_Z = Symbol("z")


@lru_cache(maxsize=None)
def cyclotomic_coeffs(N: int) -> Tuple[int, ...]:
    """Coefficients of Phi_N, lowest degree first."""
    high_first = cyclotomic_poly(N, _Z, polys=True).all_coeffs()
    return tuple(int(c) for c in reversed(high_first))


@lru_cache(maxsize=None)
def _mobius(m: int) -> int:
    factors = sympy.factorint(m)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


@lru_cache(maxsize=None)
def _trace_weights(N: int) -> Tuple[Fraction, ...]:
    # normalized trace of z^k is mu(m)/phi(m), m = N/gcd(N, k)
    weights = []
    for k in range(len(cyclotomic_coeffs(N)) - 1):
        m = N // math.gcd(N, k)
        weights.append(Fraction(_mobius(m), int(sympy.totient(m))))
    return tuple(weights)


def _check_conductor(N: int) -> None:
    if N < 1:
        raise ValidationError(f"conductor must be positive, got {N}")
    cap = get_settings().conductor_cap
    if N > cap:
        raise ConductorError(f"conductor {N} exceeds the cap of {cap}")


def reduce_mod_cyclotomic(raw: Sequence[int], N: int) -> Tuple[int, ...]:
    """Reduce an integer coefficient vector (lowest degree first) modulo Phi_N."""
    phi = cyclotomic_coeffs(N)
    d = len(phi) - 1
    c = list(raw) + [0] * max(0, d - len(raw))
    for i in range(len(c) - 1, d - 1, -1):
        coef = c[i]
        if coef:
            base = i - d
            for j in range(d + 1):
                c[base + j] -= coef * phi[j]
    return tuple(c[:d])


def convolve_reduce(a: Sequence[int], b: Sequence[int], N: int) -> Tuple[int, ...]:
    """Product of two integer vectors in Z[z]/Phi_N."""
    if not any(a) or not any(b):
        return (0,) * (len(cyclotomic_coeffs(N)) - 1)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return reduce_mod_cyclotomic(out, N)


def _normalize(nums: Sequence[int], den: int) -> Tuple[Tuple[int, ...], int]:
    if den < 0:
        nums, den = [-x for x in nums], -den
    if not any(nums):
        return tuple(0 for _ in nums), 1
    g = math.gcd(den, *nums)
    return tuple(x // g for x in nums), den // g


class Cyclotomic:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("conductor", "nums", "den")

    def __init__(self, conductor: int, nums: Sequence[int], den: int = 1):
        _check_conductor(conductor)
        if len(nums) != len(cyclotomic_coeffs(conductor)) - 1:
            raise ValidationError(
                f"conductor {conductor} needs {len(cyclotomic_coeffs(conductor)) - 1} coefficients, got {len(nums)}"
            )
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        n, d = _normalize(nums, den)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "nums", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, value: Rational, N: int = 1) -> "Cyclotomic":
        q = Fraction(value)
        width = len(cyclotomic_coeffs(N)) - 1
        return cls(N, (q.numerator,) + (0,) * (width - 1), q.denominator)

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> "Cyclotomic":
        """zeta_N ** k for any integer k."""
        _check_conductor(N)
        k %= N
        raw = [0] * (k + 1)
        raw[k] = 1
        return cls(N, reduce_mod_cyclotomic(raw, N))

    @classmethod
    def zero(cls, N: int = 1) -> "Cyclotomic":
        return cls.from_rational(0, N)

    @classmethod
    def one(cls, N: int = 1) -> "Cyclotomic":
        return cls.from_rational(1, N)

    # -- views --------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.nums)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_one(self) -> bool:
        return self.den == 1 and self.nums[0] == 1 and not any(self.nums[1:])

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def normalized_trace(self) -> Fraction:
        """Tr(a)/phi(N); independent of the conductor used to represent a."""
        return sum((w * x for w, x in zip(_trace_weights(self.conductor), self.nums)), Fraction(0)) / self.den

    def lift(self, N: int) -> "Cyclotomic":
        if N == self.conductor:
            return self
        if N % self.conductor:
            raise ValidationError(f"cannot lift conductor {self.conductor} to {N}")
        step = N // self.conductor
        raw = [0] * (step * max(1, self.degree) + 1)
        for i, x in enumerate(self.nums):
            raw[i * step] = x
        return Cyclotomic(N, reduce_mod_cyclotomic(raw, N), self.den)

    def conjugate(self) -> "Cyclotomic":
        """Image under zeta -> zeta^-1 (complex conjugation)."""
        N = self.conductor
        raw = [0] * N
        for i, x in enumerate(self.nums):
            raw[(-i) % N] += x
        return Cyclotomic(N, reduce_mod_cyclotomic(raw, N), self.den)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> Optional["Cyclotomic"]:
        if isinstance(other, Cyclotomic):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(other, self.conductor)
        return None

    def _common(self, other: "Cyclotomic") -> Tuple["Cyclotomic", "Cyclotomic"]:
        if self.conductor == other.conductor:
            return self, other
        N = math.lcm(self.conductor, other.conductor)
        return self.lift(N), other.lift(N)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        nums = [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)]
        return Cyclotomic(a.conductor, nums, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, [-x for x in self.nums], self.den)

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
        if a.conductor <= 2:
            return Cyclotomic(a.conductor, (a.nums[0] * b.nums[0],), a.den * b.den)
        return Cyclotomic(a.conductor, convolve_reduce(a.nums, b.nums, a.conductor), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        N = self.conductor
        if self.is_rational():
            return Cyclotomic.from_rational(1 / self.rational_value(), N)
        f = Poly(list(reversed(self.nums)), _Z, domain=QQ)
        g = Poly(list(reversed(cyclotomic_coeffs(N))), _Z, domain=QQ)
        inv = f.invert(g)
        coeffs = [Fraction(str(c)) for c in reversed(inv.all_coeffs())]
        den = math.lcm(*(c.denominator for c in coeffs))
        nums = [int(c * den) for c in coeffs]
        nums += [0] * (self.degree - len(nums))
        # self = nums/self.den, so the inverse carries the factor self.den
        return Cyclotomic(N, [x * self.den for x in nums], den)

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
        result = Cyclotomic.one(self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return a.nums == b.nums and a.den == b.den

    def __hash__(self):
        return hash(self.normalized_trace())

    def __bool__(self):
        return not self.is_zero()

    # -- text and json ------------------------------------------------

    def __repr__(self):
        return f"Cyclotomic({self.conductor}, {self.nums}, {self.den})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                power = f"zeta({self.conductor})" + (f"^{i}" if i > 1 else "")
                parts.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Cyclotomic":
        try:
            N = int(data["conductor"])
            coeffs = [Fraction(str(c)) for c in data["coeffs"]]
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"malformed cyclotomic value {data!r}: {e}")
        return cyclo_normalize(coeffs, N)


def cyclo_normalize(raw: Iterable[Rational], N: int) -> Cyclotomic:
    """Canonical element for sum(raw[k] * zeta_N^k); raw may have any length."""
    _check_conductor(N)
    coeffs = [Fraction(c) for c in raw]
    if not coeffs:
        return Cyclotomic.zero(N)
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    return Cyclotomic(N, reduce_mod_cyclotomic(ints, N), den)


def as_cyclotomic(value, N: int = 1) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclotomic.from_rational(value, N)
    raise ValidationError(f"cannot interpret {value!r} as a cyclotomic number")


def char_order(a: Cyclotomic) -> Optional[int]:
    """Least k >= 1 with a**k == 1, or None when a is not a root of unity."""
    a = as_cyclotomic(a)
    if a.is_zero():
        raise ValidationError("char_order of zero")
    # roots of unity in Q(zeta_N) have order dividing lcm(2, N)
    M = math.lcm(2, a.conductor)
    for d in sympy.divisors(M):
        if (a ** d).is_one():
            return d
    return None


# -- sympy domains ----------------------------------------------------


@lru_cache(maxsize=None)
def _field(N: int):
    if N <= 2:
        return QQ
    return QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / N))


def coefficient_field(N: int):
    """Q(zeta_N) as a sympy domain; its generator has minimal polynomial Phi_N."""
    _check_conductor(N)
    return _field(N)


def to_domain(a, N: int):
    """Image of a in coefficient_field(N); the conductor of a must divide N."""
    a = as_cyclotomic(a).lift(N)
    K = coefficient_field(N)
    if N <= 2:
        return QQ(a.nums[0], a.den)
    return K([QQ(x, a.den) for x in reversed(a.nums)])


def from_domain(x, N: int) -> Cyclotomic:
    """Inverse of to_domain."""
    if N <= 2:
        return Cyclotomic.from_rational(Fraction(int(x.numerator), int(x.denominator)), N)
    coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(x.to_list())]
    return cyclo_normalize(coeffs, N)
