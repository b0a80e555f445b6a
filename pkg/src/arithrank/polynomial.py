"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ParseError
from .ideal import MonomialIdeal, SquarefreeMonomial, var_key

# A monomial is a tuple of (variable, exponent) pairs in natural variable order.
Monomial = tuple


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda kv: var_key(kv[0])))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    d = dict(b)
    for v, e in a:
        r = d.get(v, 0) - e
        if r < 0:
            raise ValueError("monomial does not divide")
        if r:
            d[v] = r
        else:
            del d[v]
    return tuple(sorted(d.items(), key=lambda kv: var_key(kv[0])))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        d[v] = max(d.get(v, 0), e)
    return tuple(sorted(d.items(), key=lambda kv: var_key(kv[0])))


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def mono_str(a: Monomial) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in a)


def squarefree_part(m) -> SquarefreeMonomial:
    """Truncate every exponent to one."""
    if isinstance(m, Polynomial):
        if len(m.terms) != 1:
            raise ValueError("squarefree_part expects a monomial")
        m = next(iter(m.terms))
    if isinstance(m, SquarefreeMonomial):
        return m
    return SquarefreeMonomial(v for v, _ in m)


class Polynomial:
    """Immutable map monomial -> non-zero Fraction."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({((name, 1),): 1})

    @classmethod
    def monomial(cls, names: Iterable[str] | SquarefreeMonomial, coeff=1) -> "Polynomial":
        if isinstance(names, SquarefreeMonomial):
            names = names.support
        mono = tuple(sorted(((v, 1) for v in names), key=lambda kv: var_key(kv[0])))
        return cls({mono: coeff})

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return _Parser(text).parse()

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def constant(self):
        return self.terms.get((), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-mono_degree(kv[0]), [(var_key(v), -e) for v, e in kv[0]]))

    # arithmetic
    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = _coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative exponent")
        result = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def div_monomial(self, mono: Monomial) -> "Polynomial":
        """Exact division by a monomial; every term must be divisible."""
        return Polynomial({mono_div(m, mono): c for m, c in self.terms.items()})

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial({m: c / other for m, c in self.terms.items()})
        other = _coerce(other)
        if not other.is_monomial():
            raise ValueError("can only divide by a monomial or a number")
        (mono, c), = other.terms.items()
        return self.div_monomial(mono) * Polynomial.const(1 / Fraction(c))

    def subs(self, mapping: Mapping[str, "Polynomial | int"]) -> "Polynomial":
        """Substitute polynomials for variables (a ring map)."""
        images = {v: _coerce(p) for v, p in mapping.items()}
        out = Polynomial()
        cache: dict = {}
        for m, c in self.terms.items():
            term = Polynomial.const(c)
            rest = []
            for v, e in m:
                if v in images:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = images[v] ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term * Polynomial({tuple(rest): 1})
            out = out + term
        return out

    def vanishes_on(self, variables: Iterable[str]) -> bool:
        """Does setting all of ``variables`` to zero kill the polynomial?"""
        zero = set(variables)
        return all(any(v in zero for v, _ in m) for m in self.terms)

    # comparison and display
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = mono_str(m)
            if not body:
                txt = _fmt_coeff(a)
            elif a == 1:
                txt = body
            else:
                txt = f"{_fmt_coeff(a)}*{body}"
            parts.append((sign, txt))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, txt in parts[1:]:
            out += f" {sign} {txt}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    if isinstance(x, SquarefreeMonomial):
        return Polynomial.monomial(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def member_monomial_ideal(p: Polynomial, I: MonomialIdeal) -> bool:
    """True when every term of p is divisible by a generator of I."""
    gens = I.supports
    for m in p.terms:
        support = {v for v, _ in m}
        if not any(g <= support for g in gens):
            return False
    return True


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    def __init__(self, text: str, line: int | None = None):
        self.text = text
        self.line = line
        self.toks = []
        pos = 0
        while pos < len(text):
            mt = _TOKEN.match(text, pos)
            if mt is None or mt.end() == pos:
                break
            col = mt.start(mt.lastindex) + 1 if mt.lastindex else pos + 1
            if mt.group(1):
                self.toks.append(("num", int(mt.group(1)), col))
            elif mt.group(2):
                self.toks.append(("var", mt.group(2), col))
            elif mt.group(3):
                ch = mt.group(3)
                if ch not in "+-*^()/":
                    raise ParseError(f"unexpected character {ch!r}", line, col)
                self.toks.append((ch, ch, col))
            pos = mt.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", None, len(self.text) + 1)

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}", self.line, tok[2])
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.toks:
            raise ParseError("empty polynomial", self.line, 1)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", self.line, tok[2])
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "eof":
            op = self.take()[0]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.terms or list(q.terms) != [()]:
                    raise ParseError("only division by a number is allowed", self.line, self.peek()[2])
                p = p / q.constant()
        return p

    def unary(self) -> Polynomial:
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("num")
            base = base ** tok[1]
        return base

    def atom(self) -> Polynomial:
        kind, val, col = self.peek()
        if kind == "num":
            self.take()
            return Polynomial.const(val)
        if kind == "var":
            self.take()
            return Polynomial.var(val)
        if kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", self.line, col)


def parse_polynomial(text: str, line: int | None = None) -> Polynomial:
    return _Parser(text, line).parse()
