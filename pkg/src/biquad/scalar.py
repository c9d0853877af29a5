"""Exact arithmetic in the rational function field Q(p1, ..., pm).

A :class:`Scalar` is a pair of sparse multivariate polynomials with rational
coefficients.  Parameters are identified by name, so scalars built for
different presentations interoperate freely.

Only cheap canonicalization is performed (rational content, common monomial
factor, sign of the denominator, and trial exact division).  Equality is
decided by cross-multiplication, so two equal scalars may still differ in
their stored representation; compare with ``==`` or :func:`is_zero`, never
by inspecting ``num``/``den``.

Example:

    >>> q = Scalar.param("q")
    >>> q / (q - 1) + 1 / (1 - q)
    Scalar('1')
    >>> ((q**2 - 1) / (q + 1)).render()
    'q - 1'
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Mapping, Tuple, Union

__all__ = [
    "Scalar",
    "DivisionByZero",
    "MissingParameter",
    "PoleAtPoint",
    "ScalarSyntaxError",
    "combine",
    "is_zero",
    "eval_at",
    "parse_scalar",
    "IDENTIFIER",
]

IDENTIFIER = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")

# A monomial is a sorted tuple of (parameter name, positive exponent).
Mono = Tuple[Tuple[str, int], ...]
Poly = Dict[Mono, Fraction]

ONE_MONO: Mono = ()


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtPoint(ZeroDivisionError):
    """The denominator vanishes at the requested evaluation point."""


class MissingParameter(KeyError):
    pass


class ScalarSyntaxError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        super().__init__(message if pos is None else f"{message} (at column {pos + 1})")
        self.pos = pos


# ---------------------------------------------------------------------------
# sparse polynomial helpers
# ---------------------------------------------------------------------------

def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _padd(p: Poly, r: Poly, sign: int = 1) -> Poly:
    out = dict(p)
    for m, c in r.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(p: Poly, r: Poly) -> Poly:
    if len(p) == 1 and ONE_MONO in p:
        c = p[ONE_MONO]
        return {m: c * v for m, v in r.items()}
    if len(r) == 1 and ONE_MONO in r:
        c = r[ONE_MONO]
        return {m: c * v for m, v in p.items()}
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in r.items():
            m = _mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _pscale(p: Poly, c: Fraction) -> Poly:
    return {m: c * v for m, v in p.items()}


def _variables(*polys: Poly) -> list[str]:
    names = set()
    for p in polys:
        for m in p:
            names.update(v for v, _ in m)
    return sorted(names)


def _vec(m: Mono, index: Mapping[str, int], width: int) -> tuple:
    out = [0] * width
    for v, e in m:
        out[index[v]] = e
    return tuple(out)


def _unvec(vec: tuple, names: list[str]) -> Mono:
    return tuple((names[i], e) for i, e in enumerate(vec) if e)


def _exact_quotient(num: Poly, den: Poly) -> Poly | None:
    """Return num/den if den divides num exactly, else None (lex division)."""
    names = _variables(num, den)
    index = {v: i for i, v in enumerate(names)}
    w = len(names)
    r = {_vec(m, index, w): c for m, c in num.items()}
    d = {_vec(m, index, w): c for m, c in den.items()}
    ld = max(d)
    lc = d[ld]
    quot: dict = {}
    # a divisor's leading term must divide the dividend's leading term
    while r:
        lr = max(r)
        if any(a < b for a, b in zip(lr, ld)):
            return None
        shift = tuple(a - b for a, b in zip(lr, ld))
        c = r[lr] / lc
        quot[shift] = c
        for m, dc in d.items():
            t = tuple(a + b for a, b in zip(m, shift))
            v = r.get(t, 0) - c * dc
            if v:
                r[t] = v
            else:
                r.pop(t, None)
    return {_unvec(m, names): c for m, c in quot.items()}


def _is_monomial(p: Poly) -> bool:
    return len(p) == 1


def _canonical(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if not num:
        return {}, {ONE_MONO: Fraction(1)}
    if len(den) == 1 and ONE_MONO in den:
        c = den[ONE_MONO]
        if c == 1:
            return num, den
        return _pscale(num, 1 / c), {ONE_MONO: Fraction(1)}

    # common monomial factor
    lows: dict | None = None
    for m in list(num) + list(den):
        e = dict(m)
        if lows is None:
            lows = e
        else:
            lows = {v: min(x, e.get(v, 0)) for v, x in lows.items() if e.get(v, 0)}
        if not lows:
            break
    if lows:
        def strip(p: Poly) -> Poly:
            out = {}
            for m, c in p.items():
                nm = tuple((v, e - lows.get(v, 0)) for v, e in m if e - lows.get(v, 0))
                out[nm] = c
            return out
        num, den = strip(num), strip(den)

    # rational content and sign of the denominator
    lcm_d = 1
    g = 0
    for c in den.values():
        lcm_d = lcm_d * c.denominator // gcd(lcm_d, c.denominator)
    for c in den.values():
        g = gcd(g, (c * lcm_d).numerator)
    content = Fraction(g, lcm_d)
    if den[max(den)] < 0:
        content = -content
    if content != 1:
        num = _pscale(num, 1 / content)
        den = _pscale(den, 1 / content)

    if len(den) == 1 and ONE_MONO in den:
        return num, den
    if not _is_monomial(den):
        q = _exact_quotient(num, den)
        if q is not None:
            return q, {ONE_MONO: Fraction(1)}
        if not _is_monomial(num):
            q = _exact_quotient(den, num)
            if q is not None:
                return _canonical({ONE_MONO: Fraction(1)}, q)
    return num, den


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------

Coercible = Union["Scalar", int, Fraction]


class Scalar:
    """Immutable element of Q(params)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | None = None, den: Poly | None = None, *, _raw: bool = False):
        num = {} if num is None else num
        den = {ONE_MONO: Fraction(1)} if den is None else den
        if not den:
            raise DivisionByZero("denominator is the zero polynomial")
        if not _raw:
            num = {m: Fraction(c) for m, c in num.items() if c}
            den = {m: Fraction(c) for m, c in den.items() if c}
            if not den:
                raise DivisionByZero("denominator is the zero polynomial")
            num, den = _canonical(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, value: int | Fraction | str) -> "Scalar":
        value = Fraction(value)
        if not value:
            return ZERO
        return cls({ONE_MONO: value}, _raw=True)

    @classmethod
    def param(cls, name: str) -> "Scalar":
        if not IDENTIFIER.match(name):
            raise ValueError(f"invalid parameter name {name!r}")
        return cls({((name, 1),): Fraction(1)}, _raw=True)

    @staticmethod
    def coerce(x: Coercible) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar.const(x)
        return NotImplemented

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return all(m == ONE_MONO for m in self.num) and ONE_MONO in self.den and len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return self.num.get(ONE_MONO, Fraction(0)) / self.den[ONE_MONO]

    def parameters(self) -> set[str]:
        return set(_variables(self.num, self.den))

    def __bool__(self) -> bool:
        return bool(self.num)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: Coercible) -> "Scalar":
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return Scalar(_padd(self.num, other.num), self.den)
        return Scalar(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar({m: -c for m, c in self.num.items()}, self.den, _raw=True)

    def __sub__(self, other: Coercible) -> "Scalar":
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Coercible) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other: Coercible) -> "Scalar":
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        return Scalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, other: Coercible) -> "Scalar":
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise DivisionByZero("division by zero scalar")
        if not self.num:
            return ZERO
        return Scalar(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other: Coercible) -> "Scalar":
        return Scalar.coerce(other) / self

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = Scalar.coerce(other) if isinstance(other, (int, Fraction, Scalar)) else None
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return _pmul(self.num, other.den) == _pmul(other.num, self.den)

    __hash__ = None  # representation is not unique

    # evaluation -----------------------------------------------------------
    def eval_at(self, assignment: Mapping[str, int | Fraction]) -> Fraction:
        missing = self.parameters() - set(assignment)
        if missing:
            raise MissingParameter(", ".join(sorted(missing)))
        d = _peval(self.den, assignment)
        if d == 0:
            raise PoleAtPoint(f"denominator of {self} vanishes at {dict(assignment)}")
        return _peval(self.num, assignment) / d

    # rendering ------------------------------------------------------------
    def render(self) -> str:
        """Render in the grammar accepted by :func:`parse_scalar`."""
        n = _render_poly(self.num)
        if len(self.den) == 1 and ONE_MONO in self.den:
            return n
        d = _render_poly(self.den)
        if len(self.num) > 1 or "/" in n:
            n = f"({n})"
        if len(self.den) > 1 or next(iter(self.den.values())) != 1 or len(next(iter(self.den))) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    __str__ = render

    def __repr__(self) -> str:
        return f"Scalar({self.render()!r})"


def _peval(p: Poly, assignment: Mapping[str, int | Fraction]) -> Fraction:
    total = Fraction(0)
    for m, c in p.items():
        t = c
        for v, e in m:
            t *= Fraction(assignment[v]) ** e
        total += t
    return total


def _mono_sort_key(m: Mono):
    return (-sum(e for _, e in m), tuple((v, -e) for v, e in m))


def _render_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for i, m in enumerate(sorted(p, key=_mono_sort_key)):
        c = p[m]
        neg = c < 0
        c = -c if neg else c
        factors = [v if e == 1 else f"{v}^{e}" for v, e in m]
        if c != 1 or not factors:
            coef = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            if factors and c.denominator != 1:
                coef = f"({coef})"
            factors.insert(0, coef)
        term = "*".join(factors)
        if i == 0:
            # unary minus binds tighter than ^ in the grammar, so -q^2 would mean (-q)^2
            if neg and "^" in factors[0]:
                term = f"({term})"
            parts.append(f"-{term}" if neg else term)
        else:
            parts.append(f" - {term}" if neg else f" + {term}")
    return "".join(parts)


ZERO = Scalar({}, {ONE_MONO: Fraction(1)}, _raw=True)
ONE = Scalar({ONE_MONO: Fraction(1)}, {ONE_MONO: Fraction(1)}, _raw=True)


# ---------------------------------------------------------------------------
# functional surface
# ---------------------------------------------------------------------------

def combine(op: str, a: Coercible, b: Coercible) -> Scalar:
    a, b = Scalar.coerce(a), Scalar.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_zero(a: Coercible) -> bool:
    return Scalar.coerce(a).is_zero()


def eval_at(a: Coercible, assignment: Mapping[str, int | Fraction]) -> Fraction:
    return Scalar.coerce(a).eval_at(assignment)


# ---------------------------------------------------------------------------
# grammar
#   expr   := term (("+"|"-") term)*
#   term   := factor (("*"|"/") factor)*
#   factor := atom ("^" integer)?
#   atom   := rational | identifier | "(" expr ")" | "-" atom
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(.))")


class _Parser:
    def __init__(self, text: str, params: Iterable[str] | None):
        self.text = text
        self.params = None if params is None else set(params)
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m.end() == pos or not m.group(0).strip():
                break
            if m.group(1):
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("id", m.group(2), m.start(2)))
            else:
                ch = m.group(3)
                if ch not in "+-*/^()":
                    raise ScalarSyntaxError(f"unexpected character {ch!r}", m.start(3))
                self.tokens.append(("op", ch, m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", len(self.text))

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ScalarSyntaxError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Scalar:
        if not self.tokens:
            raise ScalarSyntaxError("empty expression", 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ScalarSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            pos = self.peek()[2]
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ScalarSyntaxError("division by zero", pos)
                value = value / rhs
        return value

    def factor(self) -> Scalar:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-" and self.peek()[0] == "op":
                self.take()
                sign = -1
            _, digits, pos = self.take("int")
            k = sign * int(digits)
            if k < 0 and base.is_zero():
                raise ScalarSyntaxError("negative power of zero", pos)
            base = base ** k
        return base

    def atom(self) -> Scalar:
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return Scalar.const(int(value))
        if kind == "id":
            self.take()
            if self.params is not None and value not in self.params:
                raise ScalarSyntaxError(f"undeclared parameter {value!r}", pos)
            return Scalar.param(value)
        if kind == "op" and value == "(":
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        if kind == "op" and value == "-":
            self.take()
            return -self.atom()
        raise ScalarSyntaxError(f"unexpected {value or 'end of input'!r}", pos)


def parse_scalar(text: str, params: Iterable[str] | None = None) -> Scalar:
    """Parse ``text`` in the scalar grammar.

    When ``params`` is given, identifiers outside it are rejected.
    """
    return _Parser(text, params).parse()
