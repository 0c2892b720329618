"""
Text input: defining polynomials and scalar/character expressions.

Defining polynomials are products of factors, each one of
  x3                       a coordinate hyperplane, labelled H3
  (x1^r - x2^r)            expanded into x1 - zeta_r^k x2, labelled H12:k
  (x1 - x2)                labelled H12
  (2*x1 - 1/3*x2 + 5)      any other linear form, labelled L<n>

Expressions (character coordinates, weights, scalars) use + - * / ^,
parentheses, rationals, zeta(N) and the variables u and v.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .arrangement import Arrangement, Hyperplane
from .cyclotomic import Cyclotomic
from .errors import ParseError
from .ratfunc import RatFunc

_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_POWER_DIFF = re.compile(r"^x(\d+)\^(\d+)-x(\d+)\^(\d+)$")
_LINEAR_TERM = re.compile(r"([+-])((?:\d+(?:/\d+)?)?)\*?(x\d+)?")


def _split_factors(text: str) -> List[str]:
    factors, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced ')' at position {i}")
        elif ch == "*" and depth == 0:
            factors.append(text[start:i])
            start = i + 1
    if depth:
        raise ParseError("unbalanced '('")
    factors.append(text[start:])
    if any(not f for f in factors):
        raise ParseError("empty factor in defining polynomial")
    return factors


def _strip_parens(f: str) -> str:
    while f.startswith("(") and f.endswith(")") and _split_factors(f[1:-1]) == [f[1:-1]]:
        f = f[1:-1]
    return f


def _parse_linear(body: str) -> Tuple[Dict[int, Fraction], Fraction]:
    if "^" in body:
        raise ParseError(f"nonlinear factor {body!r}")
    signed = body if body[0] in "+-" else "+" + body
    coeffs: Dict[int, Fraction] = {}
    constant = Fraction(0)
    pos = 0
    while pos < len(signed):
        m = _LINEAR_TERM.match(signed, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ParseError(f"cannot read linear form {body!r} at {signed[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        value = sign * Fraction(m.group(2) or 1)
        if m.group(3):
            i = int(m.group(3)[1:])
            if i < 1:
                raise ParseError(f"variables are numbered from x1, got {m.group(3)}")
            coeffs[i] = coeffs.get(i, Fraction(0)) + value
        else:
            constant += value
        pos = m.end()
    if not any(coeffs.values()):
        raise ParseError(f"factor {body!r} has no variables")
    return coeffs, constant


def parse_defining_polynomial(text: str, dim: Optional[int] = None, name: str = "A") -> Arrangement:
    """Arrangement from a product of linear and power-difference factors."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ParseError("empty defining polynomial")
    pieces: List[Tuple[str, Dict[int, object], object]] = []
    conductor = 1
    generic = 0
    for raw in _split_factors(compact):
        f = _strip_parens(raw)
        m = _VAR.match(f)
        if m:
            i = int(m.group(1))
            for _ in range(int(m.group(2) or 1)):
                pieces.append((f"H{i}", {i: Fraction(1)}, Fraction(0)))
            continue
        m = _POWER_DIFF.match(f)
        if m:
            i, r, j, s = (int(g) for g in m.groups())
            if r != s or r < 1:
                raise ParseError(f"power difference {f!r} needs equal positive exponents")
            if i == j:
                raise ParseError(f"power difference {f!r} uses one variable twice")
            conductor = math.lcm(conductor, r)
            for k in range(1, r + 1):
                pieces.append((f"H{i}{j}:{k}", {i: Cyclotomic.one(), j: -Cyclotomic.zeta(r, k)}, Fraction(0)))
            continue
        coeffs, constant = _parse_linear(f)
        nonzero = {i: c for i, c in coeffs.items() if c}
        items = sorted(nonzero.items())
        if not constant and len(items) == 2 and items[0][1] == 1 and items[1][1] == -1:
            label = f"H{items[0][0]}{items[1][0]}"
        else:
            generic += 1
            label = f"L{generic}"
        pieces.append((label, nonzero, constant))
    ell = max(i for _, coeffs, _ in pieces for i in coeffs)
    if dim is not None:
        if dim < ell:
            raise ParseError(f"dimension {dim} is smaller than the largest variable x{ell}")
        ell = dim
    hyperplanes = []
    seen: Dict[str, int] = {}
    for label, coeffs, constant in pieces:
        if label in seen:
            # repeated labels only arise from repeated factors
            seen[label] += 1
            label = f"{label}#{seen[label]}"
        else:
            seen[label] = 1
        normal = tuple(Cyclotomic.zero() if i not in coeffs else _cyc(coeffs[i]) for i in range(1, ell + 1))
        hyperplanes.append(Hyperplane(label, normal, _cyc(constant)))
    return Arrangement(name, ell, tuple(hyperplanes), conductor)


def _cyc(x) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.from_rational(x)


# -- expressions -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(zeta)|([uv])|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
        kind = "num" if m.group(1) else "zeta" if m.group(2) else "var" if m.group(3) else "op"
        value = m.group(m.lastindex)
        tokens.append((kind, "^" if value == "**" else value))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


class _ExprParser:
    """expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
    unary := '-' unary | power; power := atom ('^' ['-'] num)?"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[Tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, value: Optional[str] = None) -> Tuple[str, str]:
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or 'a token'} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self) -> RatFunc:
        if not self.tokens:
            raise ParseError("empty expression")
        out = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return out

    def expr(self) -> RatFunc:
        out = self.term()
        while self.peek() and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> RatFunc:
        out = self.unary()
        while self.peek() and self.peek()[1] in "*/":
            op = self.take()[1]
            rhs = self.unary()
            if op == "/" and rhs.is_zero():
                raise ParseError(f"division by zero in {self.text!r}")
            out = out * rhs if op == "*" else out / rhs
        return out

    def unary(self) -> RatFunc:
        if self.peek() and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek() and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek() and self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, value = self.take()
            if kind != "num":
                raise ParseError(f"exponents must be integers in {self.text!r}")
            if sign < 0 and base.is_zero():
                raise ParseError(f"negative power of zero in {self.text!r}")
            return base ** (sign * int(value))
        return base

    def atom(self) -> RatFunc:
        kind, value = self.take()
        if kind == "num":
            return RatFunc.constant(int(value))
        if kind == "var":
            return RatFunc.u() if value == "u" else RatFunc.v()
        if kind == "zeta":
            self.take("(")
            k, N = self.take()
            if k != "num" or int(N) < 1:
                raise ParseError(f"zeta needs a positive integer order in {self.text!r}")
            self.take(")")
            return RatFunc.constant(Cyclotomic.zeta(int(N)))
        if value == "(":
            out = self.expr()
            self.take(")")
            return out
        raise ParseError(f"unexpected {value!r} in {self.text!r}")


def parse_ratfunc(text: str) -> RatFunc:
    return _ExprParser(text).parse()


def parse_scalar(text: str) -> Cyclotomic:
    value = parse_ratfunc(text)
    if not value.is_constant():
        raise ParseError(f"{text!r} is not a constant")
    return value.constant_value()


def parse_character_list(text: str) -> List[RatFunc]:
    """Comma-separated coordinates, e.g. "u^2, -1, u^-1"."""
    parts = [p for p in (s.strip() for s in text.split(",")) if p]
    if not parts:
        raise ParseError("empty character")
    return [parse_ratfunc(p) for p in parts]
