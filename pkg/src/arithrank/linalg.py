"""Exact matrix rank over the rationals and over prime fields.

Matrices are sparse: a list of rows, each a dict column -> int.  Nothing
here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidField


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    characteristic: int  # 0 for the rationals

    @classmethod
    def parse(cls, text: "str | Field") -> "Field":
        if isinstance(text, Field):
            return text
        t = str(text).strip()
        if t.upper() == "Q":
            return cls(0)
        if t.upper().startswith("FP:"):
            num = t[3:]
        elif t.upper().startswith("F"):
            num = t[1:]
        else:
            raise InvalidField(f"unknown field {text!r}")
        try:
            p = int(num)
        except ValueError:
            raise InvalidField(f"unknown field {text!r}") from None
        if not is_prime(p):
            raise InvalidField(f"characteristic {p} is not prime")
        return cls(p)

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


QQ = Field(0)
F2 = Field(2)
F3 = Field(3)


@dataclass
class IntegerMatrix:
    nrows: int
    ncols: int
    rows: list  # list of dict col -> int

    @classmethod
    def from_dense(cls, dense: list[list[int]]) -> "IntegerMatrix":
        ncols = len(dense[0]) if dense else 0
        rows = [{j: v for j, v in enumerate(r) if v} for r in dense]
        return cls(len(dense), ncols, rows)

    def to_dense(self) -> list[list[int]]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def rank(self, field: Field = QQ) -> int:
        return rank(self.rows, field)


def rank(rows: list[dict], field: Field | str = QQ) -> int:
    field = Field.parse(field)
    if field.characteristic == 0:
        return rank_rational(rows)
    if field.characteristic == 2:
        return rank_gf2([sum(1 << c for c, v in r.items() if v & 1) for r in rows])
    return rank_mod_p(rows, field.characteristic)


def rank_gf2(vectors: list[int]) -> int:
    """Rank of bit-packed row vectors over F2 (xor basis)."""
    basis: dict[int, int] = {}
    r = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                r += 1
                break
            v ^= b
    return r


def rank_mod_p(rows: list[dict], p: int) -> int:
    pivots: dict[int, dict] = {}
    r = 0
    for row in rows:
        cur = {c: v % p for c, v in row.items() if v % p}
        while cur:
            col = min(cur)
            piv = pivots.get(col)
            if piv is None:
                inv = pow(cur[col], -1, p)
                pivots[col] = {c: v * inv % p for c, v in cur.items()}
                r += 1
                break
            f = cur[col]
            for c, v in piv.items():
                nv = (cur.get(c, 0) - f * v) % p
                if nv:
                    cur[c] = nv
                else:
                    cur.pop(c, None)
    return r


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def rank_rational(rows: list[dict]) -> int:
    """Rank over Q by fraction-free sparse elimination.

    Each reduction replaces ``cur`` by ``a*cur - b*pivot`` and divides out
    the content, so entries stay integral and small.
    """
    pivots: dict[int, dict] = {}
    r = 0
    for row in rows:
        cur = {c: v for c, v in row.items() if v}
        while cur:
            col = min(cur)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = _primitive(cur)
                r += 1
                break
            a = piv[col]
            b = cur[col]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {c: a * v for c, v in cur.items()}
            for c, v in piv.items():
                nv = new.get(c, 0) - b * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            cur = _primitive(new) if new else new
    return r


def bareiss_rank(dense: list[list[int]]) -> int:
    """Rank over Q by dense one-step fraction-free (Bareiss) elimination."""
    M = [list(r) for r in dense]
    if not M:
        return 0
    n, m = len(M), len(M[0])
    prev = 1
    r = 0
    for c in range(m):
        if r == n:
            break
        p = next((i for i in range(r, n) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, n):
            for j in range(c + 1, m):
                M[i][j] = (M[r][c] * M[i][j] - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = M[r][c]
        r += 1
    return r
