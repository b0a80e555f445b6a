"""Schmitt-Vogel systems and the frame constructions for arithdeg 4.

Frame conventions: slot s in 1..6 carries variables ``x{s}_1..x{s}_{i_s}``
on the edges {1,2},{2,3},{3,4},{1,4},{1,3},{2,4}; singleton u in 2..4
carries ``y{u}_1..y{u}_{j_u}``.  The ideal is the intersection of
P1 = (X1, X4, X5), P2 = (X1, X2, X6, Y2), P3 = (X2, X3, X5, Y3),
P4 = (X3, X4, X6, Y4).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..errors import ConstructionFailed
from ..hypergraph import PARAM_NAMES
from ..ideal import MonomialIdeal, minimalize, var_key
from ..polynomial import Polynomial


@dataclass
class SVSystem:
    """Ordered groups P_0..P_r of squarefree monomials (frozensets of names)."""

    groups: list = field(default_factory=list)

    @classmethod
    def from_groups(cls, groups) -> "SVSystem":
        return cls([frozenset(frozenset(a) for a in g) for g in groups])

    def compacted(self) -> "SVSystem":
        return SVSystem([g for g in self.groups if g])

    @property
    def nonzero_count(self) -> int:
        return sum(1 for g in self.groups if g)

    def elements(self) -> set:
        out = set()
        for g in self.groups:
            out |= g
        return out

    def generators(self) -> list[Polynomial]:
        out = []
        for g in self.compacted().groups:
            p = Polynomial()
            for a in sorted(g, key=lambda s: sorted(map(var_key, s))):
                p = p + Polynomial.monomial(a)
            out.append(p)
        return out

    def to_json(self) -> list:
        return [sorted("*".join(sorted(a, key=var_key)) for a in g) for g in self.groups]


@dataclass
class SVReport:
    ok: bool
    sv1: bool
    sv2: bool
    sv3: bool
    witness: tuple | None = None  # failing (level, a, a'') for SV3, or a note

    def __bool__(self) -> bool:
        return self.ok


def sv_check(sys: SVSystem, I: MonomialIdeal) -> SVReport:
    comp = sys.compacted()
    elems = comp.elements()
    sv1 = bool(elems) and minimalize(elems) == I.restricted()
    sv2 = bool(comp.groups) and len(comp.groups[0]) == 1
    witness = None
    sv3 = True
    earlier: list = []
    for lvl, g in enumerate(comp.groups):
        if lvl > 0 and len(g) > 1:
            members = sorted(g, key=lambda s: sorted(map(var_key, s)))
            for x in range(len(members)):
                for y in range(x + 1, len(members)):
                    union = members[x] | members[y]
                    if not any(a <= union for a in earlier):
                        sv3 = False
                        witness = (lvl, members[x], members[y])
                        break
                if not sv3:
                    break
        if not sv3:
            break
        earlier.extend(g)
    if not sv1 and witness is None:
        witness = ("SV1",)
    elif not sv2 and witness is None:
        witness = ("SV2",)
    return SVReport(sv1 and sv2 and sv3, sv1, sv2, sv3, witness)


def sv_generators(sys: SVSystem, I: MonomialIdeal | None = None) -> list[Polynomial]:
    if I is not None:
        rep = sv_check(sys, I)
        if not rep:
            raise ConstructionFailed(f"SV conditions fail: {rep}")
    return sys.generators()


# -- frame parameters --------------------------------------------------------


@dataclass
class H17Params:
    i: tuple  # i1..i6
    j: dict  # {2: j2, 3: j3, 4: j4}
    pools: dict = field(default_factory=dict)  # ("x", s) or ("y", u) -> list of names

    def __post_init__(self):
        self.i = tuple(self.i)
        if len(self.i) != 6 or any(v < 0 for v in self.i) or any(v < 0 for v in self.j.values()):
            raise ValueError("need six non-negative i and non-negative j")
        for s in range(1, 7):
            key = ("x", s)
            if key not in self.pools:
                self.pools[key] = [f"x{s}_{t}" for t in range(1, self.i[s - 1] + 1)]
            if len(self.pools[key]) != self.i[s - 1]:
                raise ValueError(f"pool for slot {s} has the wrong size")
        for u in (2, 3, 4):
            self.j.setdefault(u, 0)
            key = ("y", u)
            if key not in self.pools:
                self.pools[key] = [f"y{u}_{t}" for t in range(1, self.j[u] + 1)]
            if len(self.pools[key]) != self.j[u]:
                raise ValueError(f"pool for singleton {u} has the wrong size")
        names = [v for pool in self.pools.values() for v in pool]
        if len(set(names)) != len(names):
            raise ValueError("slot pools must be disjoint")

    @classmethod
    def from_dict(cls, params: dict, pools: dict | None = None) -> "H17Params":
        return cls(
            tuple(params.get(f"i{s}", 0) for s in range(1, 7)),
            {u: params.get(f"j{u}", 0) for u in (2, 3, 4)},
            dict(pools or {}),
        )

    def as_dict(self) -> dict:
        d = {f"i{s}": self.i[s - 1] for s in range(1, 7)}
        d.update({f"j{u}": self.j[u] for u in (2, 3, 4)})
        return d

    @property
    def N(self) -> int:
        return sum(self.i) + sum(self.j.values())

    @property
    def r1(self) -> int:
        return self.N - self.j[4] - 3

    @property
    def r2(self) -> int:
        return self.N - self.j[3] - 3

    @property
    def r3(self) -> int:
        return self.N - self.j[2] - 3

    @property
    def r(self) -> int:
        return max(self.r1, self.r2, self.r3)

    def x(self, s: int, t: int) -> str:
        return self.pools[("x", s)][t - 1]

    def y(self, u: int, t: int) -> str:
        return self.pools[("y", u)][t - 1]

    def primes(self) -> list[list[str]]:
        X = {s: self.pools[("x", s)] for s in range(1, 7)}
        Y = {u: self.pools[("y", u)] for u in (2, 3, 4)}
        return [
            X[1] + X[4] + X[5],
            X[1] + X[2] + X[6] + Y[2],
            X[2] + X[3] + X[5] + Y[3],
            X[3] + X[4] + X[6] + Y[4],
        ]

    def ideal(self) -> MonomialIdeal:
        """I = P1 cap P2 cap P3 cap P4 (its generators are minimal transversals)."""
        from ..ideal import minimal_transversals

        primes = self.primes()
        names = sorted({v for p in primes for v in p}, key=var_key)
        idx = {v: k for k, v in enumerate(names)}
        masks = [sum(1 << idx[v] for v in p) for p in primes if p]
        gens = minimal_transversals(masks)
        return minimalize([[names[k] for k in range(len(names)) if g >> k & 1] for g in gens], ambient=names)

    def dual(self) -> MonomialIdeal:
        return minimalize([p for p in self.primes() if p])

    # concatenated pools
    def w1(self, t: int) -> str:
        i4 = self.i[3]
        return self.x(4, t) if t <= i4 else self.x(5, t - i4)

    def w2(self, t: int) -> str:
        i2, i6 = self.i[1], self.i[5]
        if t <= i2:
            return self.x(2, t)
        if t <= i2 + i6:
            return self.x(6, t - i2)
        return self.y(2, t - i2 - i6)

    def w3(self, t: int) -> str:
        i2, i5 = self.i[1], self.i[4]
        if t <= i2:
            return self.x(2, t)
        if t <= i2 + i5:
            return self.x(5, t - i2)
        return self.y(3, t - i2 - i5)

    def w4(self, t: int) -> str:
        i4, i6 = self.i[3], self.i[5]
        if t <= i4:
            return self.x(4, t)
        if t <= i4 + i6:
            return self.x(6, t - i4)
        return self.y(4, t - i4 - i6)


def _rng(lo: int, hi: int):
    return range(lo, hi + 1)


def _place(groups: dict, level: int, names) -> None:
    groups.setdefault(level, set()).add(frozenset(names))


def _to_system(groups: dict) -> SVSystem:
    if not groups:
        return SVSystem([])
    top = max(groups)
    return SVSystem.from_groups([groups.get(l, set()) for l in range(top + 1)])


def h17_families(p: H17Params) -> dict:
    """{(k, level): set of monomials} for the eight families."""
    i1, i2, i3, i4, i5, i6 = p.i
    j2, j3, j4 = p.j[2], p.j[3], p.j[4]
    fam: dict = {}

    def put(k, lvl, names):
        fam.setdefault((k, lvl), set()).add(frozenset(names))

    for l1, l3 in product(_rng(1, i1), _rng(1, i3)):
        put(1, l1 + l3 - 2, (p.x(1, l1), p.x(3, l3)))
    for l1, l3, l4 in product(_rng(1, i1), _rng(1, i2 + i5 + j3), _rng(1, i4 + i6 + j4)):
        put(2, l1 + l3 + l4 + i3 - 3, (p.x(1, l1), p.w3(l3), p.w4(l4)))
    for l3, l1, l2 in product(_rng(1, i3), _rng(1, i4 + i5), _rng(1, i2 + i6 + j2)):
        put(3, l3 + l1 + l2 + i1 - 3, (p.x(3, l3), p.w1(l1), p.w2(l2)))
    for l2, l4 in product(_rng(1, i2), _rng(1, i4)):
        put(4, l2 + l4 + i1 + i3 - 2, (p.x(2, l2), p.x(4, l4)))
    for l4, l2, l3 in product(_rng(1, i4), _rng(i2 + 1, i2 + i6 + j2), _rng(i2 + 1, i2 + i5 + j3)):
        put(5, l4 + (l2 - i2) + (l3 - i2) + i1 + i2 + i3 - 3, (p.x(4, l4), p.w2(l2), p.w3(l3)))
    for l2, l5, l4 in product(_rng(1, i2), _rng(1, i5), _rng(i4 + 1, i4 + i6 + j4)):
        put(6, l2 + l5 + (l4 - i4) + i1 + i3 + i4 - 3, (p.x(2, l2), p.x(5, l5), p.w4(l4)))
    for l5, l6 in product(_rng(1, i5), _rng(1, i6)):
        put(7, l5 + l6 + i1 + i2 + i3 + i4 - 2, (p.x(5, l5), p.x(6, l6)))
    for l5, l2, l4 in product(_rng(1, i5), _rng(1, j2), _rng(1, j4)):
        put(8, l5 + l2 + l4 + i1 + i2 + i3 + i4 + i6 - 3, (p.x(5, l5), p.y(2, l2), p.y(4, l4)))
    return fam


def h17_system(p: H17Params | dict) -> SVSystem:
    """P_l = union of the eight families, for every level any family reaches."""
    if isinstance(p, dict):
        p = H17Params.from_dict(p)
    groups: dict = {}
    for (_k, lvl), mons in h17_families(p).items():
        for a in mons:
            _place(groups, lvl, a)
    return _to_system(groups)


def h14_families(p: H17Params) -> dict:
    i1, i2, i3, i4, i5, i6 = p.i
    if any(p.j.values()):
        raise ConstructionFailed("the H14 construction needs j2 = j3 = j4 = 0")
    fam: dict = {}

    def put(k, lvl, names):
        fam.setdefault((k, lvl), set()).add(frozenset(names))

    for l1, l3 in product(_rng(1, i1), _rng(1, i3)):
        put(1, l1 + l3 - 2, (p.x(1, l1), p.x(3, l3)))
    for l1, l3, l4 in product(_rng(1, i1), _rng(1, i2 + i5), _rng(1, i4 + i6)):
        if l3 <= i2 or l4 <= i4:
            put(2, l1 + l3 + l4 + i3 - 3, (p.x(1, l1), p.w3(l3), p.w4(l4)))
    for l3, l1, l2 in product(_rng(1, i3), _rng(1, i4 + i5), _rng(1, i2 + i6)):
        if l1 <= i4 or l2 <= i2:
            put(3, l3 + l1 + l2 + i1 - 3, (p.x(3, l3), p.w1(l1), p.w2(l2)))
    for l2, l4 in product(_rng(1, i2), _rng(1, i4)):
        put(4, l2 + l4 + i1 + i3 - 2, (p.x(2, l2), p.x(4, l4)))
    for l5, l6 in product(_rng(1, i5), _rng(1, i6)):
        put(5, l5 + l6 + i1 + i2 + i3 + i4 - 3, (p.x(5, l5), p.x(6, l6)))
    return fam


def h14_system(p: H17Params | dict) -> SVSystem:
    if isinstance(p, dict):
        p = H17Params.from_dict(p)
    groups: dict = {}
    for (_k, lvl), mons in h14_families(p).items():
        for a in mons:
            _place(groups, lvl, a)
    return _to_system(groups)


def diagonal_system(xs: list[str], ys: list[str]) -> SVSystem:
    """P_l = {x_a y_b : a + b = l + 2} for the product (xs)(ys)."""
    groups: dict = {}
    for a, b in product(range(1, len(xs) + 1), range(1, len(ys) + 1)):
        _place(groups, a + b - 2, (xs[a - 1], ys[b - 1]))
    return _to_system(groups)


def h1_systems(p: H17Params | dict) -> tuple[SVSystem, SVSystem]:
    if isinstance(p, dict):
        p = H17Params.from_dict(p)
    return (
        diagonal_system(p.pools[("x", 1)], p.pools[("x", 3)]),
        diagonal_system(p.pools[("x", 2)], p.pools[("x", 4)]),
    )


def h1_generators(p: H17Params | dict) -> list[Polynomial]:
    """Concatenate the diagonal systems of (X1)cap(X3) and (X2)cap(X4)."""
    s1, s2 = h1_systems(p)
    return s1.generators() + s2.generators()


__all__ = [
    "PARAM_NAMES",
    "SVSystem",
    "SVReport",
    "sv_check",
    "sv_generators",
    "H17Params",
    "h17_system",
    "h14_system",
    "h1_systems",
    "h1_generators",
    "diagonal_system",
]
