"""A small budgeted Buchberger engine used as an optional radical oracle.

Radical membership uses the Rabinowitsch trick: m lies in sqrt(J) iff
J + (t*m - 1) is the unit ideal.  Arithmetic is over Q in grevlex order.
"""

from __future__ import annotations

import time
from fractions import Fraction

from .errors import BudgetExhausted
from .ideal import var_key
from .polynomial import Polynomial

YES, NO, TIMEOUT = "yes", "no", "timeout"


def _key(e: tuple):
    return (sum(e), tuple(-x for x in reversed(e)))


class _Ring:
    def __init__(self, names: list[str]):
        self.names = names
        self.index = {v: i for i, v in enumerate(names)}

    def encode(self, p: Polynomial) -> dict:
        out = {}
        n = len(self.names)
        for m, c in p.terms.items():
            e = [0] * n
            for v, k in m:
                e[self.index[v]] = k
            out[tuple(e)] = Fraction(c)
        return out


def _lead(f: dict):
    e = max(f, key=_key)
    return e, f[e]


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_mul(f: dict, g: dict, c: Fraction, shift: tuple) -> dict:
    out = dict(f)
    for e, v in g.items():
        k = tuple(x + y for x, y in zip(e, shift))
        nv = out.get(k, 0) - c * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _reduce(f: dict, basis: list, deadline: float) -> dict:
    rem: dict = {}
    f = dict(f)
    steps = 0
    while f:
        steps += 1
        if steps & 255 == 0 and time.monotonic() > deadline:
            raise BudgetExhausted("Groebner budget exhausted")
        e, c = _lead(f)
        for g, (ge, gc) in basis:
            if _divides(ge, e):
                shift = tuple(x - y for x, y in zip(e, ge))
                f = _sub_mul(f, g, c / gc, shift)
                break
        else:
            rem[e] = c
            del f[e]
    return rem


def _spoly(f, fl, g, gl) -> dict:
    (fe, fc), (ge, gc) = fl, gl
    lcm = tuple(max(x, y) for x, y in zip(fe, ge))
    sf = tuple(x - y for x, y in zip(lcm, fe))
    sg = tuple(x - y for x, y in zip(lcm, ge))
    a = {tuple(x + y for x, y in zip(e, sf)): v / fc for e, v in f.items()}
    return _sub_mul(a, g, 1 / gc, sg)


def groebner_basis(polys: list[Polynomial], budget: float = 10.0, stop_on_unit: bool = True) -> list[Polynomial]:
    """Buchberger's algorithm with the coprime-lead criterion."""
    names = sorted({v for p in polys for v in p.variables}, key=var_key)
    ring = _Ring(names)
    deadline = time.monotonic() + budget
    basis: list = []
    pairs: list = []
    for p in polys:
        f = _reduce(ring.encode(p), basis, deadline)
        if f:
            _add(basis, pairs, f)
    while pairs:
        if time.monotonic() > deadline:
            raise BudgetExhausted("Groebner budget exhausted")
        pairs.sort(key=lambda ij: _pair_degree(basis, ij))
        i, j = pairs.pop(0)
        (fi, li), (fj, lj) = basis[i], basis[j]
        if all(x == 0 or y == 0 for x, y in zip(li[0], lj[0])):
            continue
        s = _reduce(_spoly(fi, li, fj, lj), basis, deadline)
        if s:
            _add(basis, pairs, s)
            if stop_on_unit and _is_const(s):
                break
    return [_decode(ring, f) for f, _ in basis]


def _pair_degree(basis, ij):
    a, b = basis[ij[0]][1][0], basis[ij[1]][1][0]
    return sum(max(x, y) for x, y in zip(a, b))


def _add(basis, pairs, f):
    basis.append((f, _lead(f)))
    n = len(basis) - 1
    pairs.extend((i, n) for i in range(n))


def _is_const(f: dict) -> bool:
    return len(f) == 1 and not any(next(iter(f)))


def _decode(ring: _Ring, f: dict) -> Polynomial:
    terms = {}
    for e, c in f.items():
        terms[tuple((ring.names[i], k) for i, k in enumerate(e) if k)] = c
    return Polynomial(terms)


def groebner_radical_member(m, J: list[Polynomial], budget: float = 10.0) -> str:
    """'yes' if m is in sqrt(J), 'no' if not, 'timeout' if the budget ran out."""
    if not isinstance(m, Polynomial):
        m = Polynomial.monomial(m)
    t = "_t"
    while any(t in p.variables for p in J) or t in m.variables:
        t += "_"
    aux = Polynomial.var(t) * m - 1
    try:
        basis = groebner_basis(list(J) + [aux], budget)
    except BudgetExhausted:
        return TIMEOUT
    for g in basis:
        if g.terms and all(not mono for mono in g.terms):
            return YES
    return NO
