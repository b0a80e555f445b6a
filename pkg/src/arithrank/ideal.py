"""Squarefree monomials, monomial ideals and their basic invariants.

Generators are stored as bitmasks over an interned, ordered ambient tuple of
variable names, so that set operations (divisibility, lcm, gcd) are integer
operations.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import DualUndefined, EmptyIdeal, ParseError

_SPLIT = re.compile(r"(\d+)")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def var_key(name: str):
    """Natural sort key, so that x2 sorts before x10."""
    return tuple(int(t) if t.isdigit() else t for t in _SPLIT.split(name))


def bits(mask: int):
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True, order=True)
class SquarefreeMonomial:
    support: frozenset = field(default_factory=frozenset)

    def __init__(self, support: Iterable[str] = ()):
        object.__setattr__(self, "support", frozenset(support))

    @property
    def degree(self) -> int:
        return len(self.support)

    def divides(self, other: "SquarefreeMonomial") -> bool:
        return self.support <= other.support

    def lcm(self, other: "SquarefreeMonomial") -> "SquarefreeMonomial":
        return SquarefreeMonomial(self.support | other.support)

    def gcd(self, other: "SquarefreeMonomial") -> "SquarefreeMonomial":
        return SquarefreeMonomial(self.support & other.support)

    def sorted_vars(self) -> list[str]:
        return sorted(self.support, key=var_key)

    def __str__(self) -> str:
        if not self.support:
            return "1"
        return "*".join(self.sorted_vars())

    def __repr__(self) -> str:
        return f"SquarefreeMonomial({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "SquarefreeMonomial":
        return cls(_parse_generator(text, 1))


@dataclass(frozen=True)
class Invariants:
    mu: int
    indeg: int
    height: int
    arithdeg: int
    connected: bool

    def as_dict(self) -> dict:
        return {
            "mu": self.mu,
            "indeg": self.indeg,
            "height": self.height,
            "arithdeg": self.arithdeg,
            "connected": self.connected,
        }


@dataclass(frozen=True)
class MonomialIdeal:
    """A squarefree monomial ideal given by its minimal generators.

    ``vars`` is the ambient variable tuple X(I) (possibly widened) and
    ``gens`` are bitmasks over it.  Build instances with :func:`minimalize`
    or :meth:`from_gens`; the raw constructor trusts its input.
    """

    vars: tuple
    gens: tuple

    @classmethod
    def from_gens(cls, gens, ambient=None) -> "MonomialIdeal":
        return minimalize(gens, ambient)

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vars)}

    @property
    def mu(self) -> int:
        return len(self.gens)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def support_mask(self) -> int:
        m = 0
        for g in self.gens:
            m |= g
        return m

    def names(self, mask: int) -> frozenset:
        return frozenset(self.vars[i] for i in bits(mask))

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for v in names:
            m |= 1 << self.index[v]
        return m

    @property
    def generators(self) -> list[SquarefreeMonomial]:
        return [SquarefreeMonomial(self.names(g)) for g in self.gens]

    @property
    def supports(self) -> list[frozenset]:
        return [self.names(g) for g in self.gens]

    def contains_monomial(self, names: Iterable[str]) -> bool:
        s = set(names)
        for g in self.gens:
            if all(self.vars[i] in s for i in bits(g)):
                return True
        return False

    def with_ambient(self, ambient: Iterable[str]) -> "MonomialIdeal":
        return minimalize(self.supports, ambient)

    def restricted(self) -> "MonomialIdeal":
        """The same ideal over X(I) only (drops unused ambient variables)."""
        return minimalize(self.supports)

    def rename(self, mapping: dict) -> "MonomialIdeal":
        return minimalize([[mapping.get(v, v) for v in s] for s in self.supports])

    def __str__(self) -> str:
        return "(" + ", ".join(str(m) for m in self.generators) + ")"

    def __repr__(self) -> str:
        return f"MonomialIdeal{str(self)}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return set(self.supports) == set(other.supports)

    def __hash__(self) -> int:
        return hash(frozenset(self.supports))

    def to_text(self) -> str:
        lines = ["vars: " + " ".join(self.vars)]
        lines += [str(m) for m in self.generators]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "gens": [m.sorted_vars() for m in self.generators],
        }

    @classmethod
    def from_json(cls, obj) -> "MonomialIdeal":
        return minimalize(obj["gens"], ambient=obj.get("vars"))


def _gen_sort_key(mask: int):
    return tuple(bits(mask))


def minimalize(gens, ambient=None) -> MonomialIdeal:
    """Reduce a generating list of squarefree monomials to G(I)."""
    supports = []
    for g in gens:
        if isinstance(g, SquarefreeMonomial):
            supports.append(g.support)
        elif isinstance(g, str):
            supports.append(frozenset(_parse_generator(g, 1)))
        else:
            supports.append(frozenset(g))
    if not supports:
        raise EmptyIdeal("an ideal needs at least one generator")
    if any(not s for s in supports):
        raise EmptyIdeal("the unit ideal is not a squarefree monomial ideal in scope")
    used = set().union(*supports)
    if ambient is None:
        names = sorted(used, key=var_key)
    else:
        names = list(dict.fromkeys(ambient))
        missing = used - set(names)
        if missing:
            raise ValueError(f"variables {sorted(missing)} not in the ambient set")
    idx = {v: i for i, v in enumerate(names)}
    masks = set()
    for s in supports:
        m = 0
        for v in s:
            m |= 1 << idx[v]
        masks.add(m)
    ordered = sorted(masks, key=lambda m: (popcount(m), m))
    kept: list[int] = []
    for m in ordered:
        if not any(k & m == k for k in kept):
            kept.append(m)
    kept.sort(key=_gen_sort_key)
    return MonomialIdeal(tuple(names), tuple(kept))


# -- hitting sets -----------------------------------------------------------


def minimal_transversals(edges: list[int]) -> list[int]:
    """All minimal hitting sets of a family of bitmask edges.

    Branches on the uncovered edge with fewest candidates and prunes any
    partial set in which some chosen element has lost its private edge.
    """
    edges = list(edges)
    found = set()

    def critical(chosen: int) -> bool:
        need = chosen
        for e in edges:
            hit = e & chosen
            if hit and hit & (hit - 1) == 0:
                need &= ~hit
                if not need:
                    return True
        return need == 0

    def rec(chosen: int, forbidden: int, uncovered: list[int]):
        if not uncovered:
            found.add(chosen)
            return
        best = min(uncovered, key=lambda e: popcount(e & ~forbidden))
        cand = best & ~forbidden
        for v in bits(cand):
            bit = 1 << v
            nxt = chosen | bit
            if critical(nxt):
                rec(nxt, forbidden, [e for e in uncovered if not e & bit])
            forbidden |= bit

    rec(0, 0, edges)
    return sorted(found, key=_gen_sort_key)


def min_transversal_size(edges: list[int]) -> int:
    """Size of a smallest hitting set (branch and bound)."""
    edges = sorted(set(edges), key=popcount)
    best = [min(len(edges), popcount(_union(edges)))]

    def rec(size: int, uncovered: list[int]):
        if not uncovered:
            best[0] = min(best[0], size)
            return
        if size + 1 >= best[0]:
            return
        e = min(uncovered, key=popcount)
        for v in bits(e):
            bit = 1 << v
            rec(size + 1, [f for f in uncovered if not f & bit])

    rec(0, edges)
    return best[0]


def _union(masks) -> int:
    m = 0
    for x in masks:
        m |= x
    return m


# -- invariants ---------------------------------------------------------------


@dataclass(frozen=True)
class PrimeDecomposition:
    vars: tuple
    primes: tuple  # bitmasks over vars

    @property
    def sets(self) -> list[frozenset]:
        return [frozenset(self.vars[i] for i in bits(p)) for p in self.primes]

    def __len__(self) -> int:
        return len(self.primes)

    def intersect(self) -> MonomialIdeal:
        """Re-expand the intersection of the primes (minimal transversals)."""
        gens = minimal_transversals(list(self.primes))
        return minimalize(
            [[self.vars[i] for i in bits(g)] for g in gens], ambient=self.vars
        )


def minimal_primes(I: MonomialIdeal) -> PrimeDecomposition:
    return PrimeDecomposition(I.vars, tuple(minimal_transversals(list(I.gens))))


def height(I: MonomialIdeal) -> int:
    return min_transversal_size(list(I.gens))


def indeg(I: MonomialIdeal) -> int:
    return min(popcount(g) for g in I.gens)


def is_connected(I: MonomialIdeal) -> bool:
    return len(_component_masks(I.gens)) == 1


def invariants(I: MonomialIdeal) -> Invariants:
    return Invariants(
        mu=I.mu,
        indeg=indeg(I),
        height=height(I),
        arithdeg=len(minimal_primes(I)),
        connected=is_connected(I),
    )


def _component_masks(gens) -> list[list[int]]:
    groups: list[tuple[int, list[int]]] = []
    for g in gens:
        merged_mask, merged = g, [g]
        rest = []
        for m, members in groups:
            if m & merged_mask:
                merged_mask |= m
                merged.extend(members)
            else:
                rest.append((m, members))
        # a merge can make earlier groups overlap; repeat until stable
        changed = True
        while changed:
            changed = False
            keep = []
            for m, members in rest:
                if m & merged_mask:
                    merged_mask |= m
                    merged.extend(members)
                    changed = True
                else:
                    keep.append((m, members))
            rest = keep
        groups = rest + [(merged_mask, merged)]
    return [members for _, members in groups]


def components(I: MonomialIdeal) -> list[MonomialIdeal]:
    """Split G(I) along the gcd graph; each part lives on its own variables."""
    parts = []
    for members in _component_masks(I.gens):
        parts.append(minimalize([I.names(g) for g in members]))
    parts.sort(key=lambda J: [var_key(v) for v in J.vars])
    return parts


def alexander_dual(I: MonomialIdeal, ambient: Iterable[str] | None = None) -> MonomialIdeal:
    """I* generated by x^P over the minimal primes P of I.

    This equals the facet-complement description of the dual; it needs
    height I >= 2 so that I* lives on the same vertex set.
    """
    if ambient is not None:
        I = I.with_ambient(ambient)
    if height(I) < 2:
        raise DualUndefined("Alexander dual requires height >= 2")
    primes = minimal_primes(I)
    return minimalize(primes.sets, ambient=I.vars)


def is_principal(I: MonomialIdeal) -> bool:
    return I.mu == 1


def gcd_mask_connected(gens) -> bool:
    return len(_component_masks(gens)) <= 1


# -- I/O -------------------------------------------------------------------


def _parse_generator(text: str, lineno: int, col0: int = 1) -> list[str]:
    parts = text.split("*")
    names: list[str] = []
    col = col0
    for part in parts:
        name = part.strip()
        lead = len(part) - len(part.lstrip())
        if not name:
            raise ParseError("empty factor", lineno, col + lead)
        if name == "1" and len(parts) == 1:
            raise ParseError("the unit ideal is rejected", lineno, col + lead)
        if not _IDENT.match(name):
            raise ParseError(f"bad variable name {name!r}", lineno, col + lead)
        if name in names:
            raise ParseError(f"variable {name} repeated; not squarefree", lineno, col + lead)
        names.append(name)
        col += len(part) + 1
    return names


def parse_ideal_text(text: str) -> MonomialIdeal:
    ambient = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("vars:"):
            if ambient is not None or gens:
                raise ParseError("vars header must come first", lineno, 1)
            ambient = stripped[len("vars:"):].split()
            for name in ambient:
                if not _IDENT.match(name):
                    raise ParseError(f"bad variable name {name!r}", lineno, line.find(name) + 1)
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        gens.append(_parse_generator(stripped, lineno, col0))
    if not gens:
        raise EmptyIdeal("no generators found (the zero ideal is rejected)")
    if ambient is not None:
        unknown = {v for g in gens for v in g} - set(ambient)
        if unknown:
            raise ParseError(f"variables {sorted(unknown, key=var_key)} missing from vars header")
    return minimalize(gens, ambient)


def parse_ideal_json(obj) -> MonomialIdeal:
    if isinstance(obj, str):
        obj = json.loads(obj)
    gens = obj.get("gens")
    if not gens:
        raise EmptyIdeal("no generators found (the zero ideal is rejected)")
    for g in gens:
        if not g:
            raise ParseError("the unit ideal is rejected")
    return minimalize(gens, obj.get("vars"))


def load_ideal(path) -> MonomialIdeal:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        return parse_ideal_json(obj)
    return parse_ideal_text(text)


def ordered_generators(text: str) -> list[list[str]]:
    """Generator supports of an .ideal text in file order (no minimalizing)."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped or stripped.startswith("vars:"):
            continue
        out.append(_parse_generator(stripped, lineno, len(line) - len(line.lstrip()) + 1))
    return out
