"""Multigraded Betti numbers, projective dimension and regularity.

The main route reads beta_{i,m}(S/I) off the reduced homology of open
intervals (0, m) of the lcm lattice, computed on the coatom crosscut of
the interval (homotopy equivalent and much smaller).  The full order
complex, after deleting beat points, is available as ``method="order"``.
The Taylor-strand route (subsets of generators dividing m whose lcm is
strictly smaller than m) is kept as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import CharDependence, DualUndefined, PreconditionError
from .hypergraph import Hypergraph, TEMPLATES, Template
from .ideal import MonomialIdeal, alexander_dual, bits, height, popcount
from .linalg import F2, F3, QQ, Field, rank


# -- simplicial homology --------------------------------------------------


def reduced_homology(simplices: list[tuple], field: Field | str = QQ) -> dict[int, int]:
    """Reduced Betti numbers of the complex generated by ``simplices``.

    ``simplices`` must already be closed under taking faces (the empty face
    is implied).  Returns {dimension: rank} for non-zero groups, with the
    empty complex giving {-1: 1}.
    """
    field = Field.parse(field)
    by_dim: dict[int, list[tuple]] = {-1: [()]}
    for s in simplices:
        if s:
            by_dim.setdefault(len(s) - 1, []).append(tuple(s))
    top = max(by_dim)
    index = {d: {s: k for k, s in enumerate(sorted(v))} for d, v in by_dim.items()}
    ranks = {}
    for d in range(0, top + 1):
        rows = []
        lower = index[d - 1]
        for s in index[d]:
            row = {}
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                row[lower[face]] = -1 if k & 1 else 1
            rows.append(row)
        ranks[d] = rank(rows, field)
    out = {}
    for d in range(-1, top + 1):
        h = len(index[d]) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if h:
            out[d] = h
    return out


def _closure_of(faces: list[tuple]) -> list[tuple]:
    seen = set()
    for f in faces:
        for k in range(1, len(f) + 1):
            for sub in combinations(f, k):
                seen.add(sub)
    return list(seen)


# -- lcm lattice ------------------------------------------------------------


@dataclass(frozen=True)
class LcmLattice:
    """Distinct lcms of non-empty generator subsets, plus the bottom 0."""

    atoms: tuple
    elements: frozenset

    @classmethod
    def of(cls, I: MonomialIdeal) -> "LcmLattice":
        atoms = tuple(I.gens)
        elems = set(atoms)
        frontier = set(atoms)
        while frontier:
            new = set()
            for a in frontier:
                for g in atoms:
                    u = a | g
                    if u not in elems:
                        new.add(u)
            elems |= new
            frontier = new
        return cls(atoms, frozenset(elems | {0}))

    def below(self, m: int) -> list[int]:
        """Elements strictly between the bottom and m."""
        return [e for e in self.elements if e and e != m and e & ~m == 0]

    def degree(self, m: int) -> int:
        return popcount(m)


def _remove_beat_points(elems: list[int]) -> list[int]:
    """Strip down/up beat points from a poset ordered by mask inclusion."""
    cur = set(elems)
    changed = True
    while changed:
        changed = False
        for x in sorted(cur, key=popcount):
            lower = [y for y in cur if y != x and y & ~x == 0]
            if lower:
                top = max(lower, key=popcount)
                if all(y & ~top == 0 for y in lower):
                    cur.discard(x)
                    changed = True
                    continue
            upper = [y for y in cur if y != x and x & ~y == 0]
            if upper:
                bot = min(upper, key=popcount)
                if all(bot & ~y == 0 for y in upper):
                    cur.discard(x)
                    changed = True
    return sorted(cur, key=lambda e: (popcount(e), e))


def _order_complex(elems: list[int]) -> list[tuple]:
    n = len(elems)
    ups = [[j for j in range(n) if j != i and elems[i] & ~elems[j] == 0 and elems[i] != elems[j]] for i in range(n)]
    chains: list[tuple] = []

    def grow(chain: tuple):
        chains.append(chain)
        for j in ups[chain[-1]]:
            grow(chain + (j,))

    for i in range(n):
        grow((i,))
    return chains


def interval_homology(L: LcmLattice, m: int, field: Field | str = QQ, reduce: bool = True) -> dict[int, int]:
    """Reduced homology of the order complex of the open interval (0, m)."""
    elems = L.below(m)
    if reduce:
        elems = _remove_beat_points(elems)
    else:
        elems = sorted(elems, key=lambda e: (popcount(e), e))
    return reduced_homology(_order_complex(elems), field)


def crosscut_homology(L: LcmLattice, m: int, field: Field | str = QQ) -> dict[int, int]:
    """Same groups as :func:`interval_homology`, via the coatom crosscut.

    Vertices are the maximal elements of (0, m); a set of them is a face
    when their meet is above the bottom, i.e. some atom lies under all of
    them.  The facets are therefore the coatom sets over each atom.
    """
    elems = L.below(m)
    if not elems:
        return {-1: 1}
    coatoms = [c for c in elems if not any(c != e and c & ~e == 0 for e in elems)]
    coatoms.sort()
    facets = set()
    for g in L.atoms:
        if g != m and g & ~m == 0:
            facets.add(tuple(k for k, c in enumerate(coatoms) if g & ~c == 0))
    maximal = [f for f in facets if not any(f != h and set(f) <= set(h) for h in facets)]
    return reduced_homology(_closure_of(maximal), field)


def taylor_strand_homology(I: MonomialIdeal, m: int, field: Field | str = QQ) -> dict[int, int]:
    atoms = [j for j, g in enumerate(I.gens) if g & ~m == 0]
    faces = []
    for k in range(1, len(atoms) + 1):
        for sub in combinations(atoms, k):
            u = 0
            for j in sub:
                u |= I.gens[j]
            if u != m:
                faces.append(sub)
    return reduced_homology(faces, field)


# -- Betti tables ------------------------------------------------------------


@dataclass
class BettiTable:
    """beta_{i,alpha}(S/I) with alpha a squarefree multidegree (mask)."""

    vars: tuple
    field: Field
    entries: dict = field(default_factory=dict)  # (i, mask) -> beta

    @property
    def pd(self) -> int:
        return max(i for i, _ in self.entries)

    @property
    def reg(self) -> int:
        """Regularity of S/I."""
        return max(popcount(m) - i for i, m in self.entries)

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self.entries.items() if k == i)

    def graded(self) -> dict:
        """{(i, j): beta_{i,j}} with j the total degree."""
        out: dict = {}
        for (i, m), b in self.entries.items():
            key = (i, popcount(m))
            out[key] = out.get(key, 0) + b
        return out

    def to_json(self) -> dict:
        ents = []
        for (i, m), b in sorted(self.entries.items(), key=lambda kv: (kv[0][0], popcount(kv[0][1]), kv[0][1])):
            ents.append({"i": i, "deg": [m >> k & 1 for k in range(len(self.vars))], "beta": b})
        return {"field": str(self.field), "vars": list(self.vars), "entries": ents, "pd": self.pd, "reg": self.reg}

    @classmethod
    def from_json(cls, obj) -> "BettiTable":
        entries = {}
        for e in obj["entries"]:
            mask = sum(1 << k for k, bit in enumerate(e["deg"]) if bit)
            entries[(e["i"], mask)] = e["beta"]
        return cls(tuple(obj["vars"]), Field.parse(obj["field"]), entries)


MAX_MU = 20


def betti_table(I: MonomialIdeal, field: Field | str = QQ, method: str = "lattice") -> BettiTable:
    if I.mu > MAX_MU:
        raise PreconditionError(f"Betti tables need at most {MAX_MU} generators (got {I.mu})")
    field = Field.parse(field)
    table = BettiTable(I.vars, field, {(0, 0): 1})
    L = LcmLattice.of(I)
    for m in L.elements:
        if not m:
            continue
        if method == "lattice":
            h = crosscut_homology(L, m, field)
        elif method == "order":
            h = interval_homology(L, m, field)
        elif method == "taylor":
            h = taylor_strand_homology(I, m, field)
        else:
            raise ValueError(f"unknown method {method!r}")
        for d, b in h.items():
            table.entries[(d + 2, m)] = b
    return table


def pd(I: MonomialIdeal, field: Field | str = QQ, strategy: str = "direct") -> int:
    """Projective dimension of S/I."""
    if strategy == "direct":
        return betti_table(I, field).pd
    if strategy == "dual":
        if height(I) < 2:
            raise DualUndefined("dual strategy requires height >= 2")
        return reg_ideal(alexander_dual(I), field)
    raise ValueError(f"unknown strategy {strategy!r}")


def reg(I: MonomialIdeal, field: Field | str = QQ) -> int:
    """Regularity of S/I."""
    return betti_table(I, field).reg


def reg_ideal(I: MonomialIdeal, field: Field | str = QQ) -> int:
    """Regularity of the ideal I, which is reg(S/I) + 1."""
    return reg(I, field) + 1


def char_independent_pd(I: MonomialIdeal) -> int:
    values = {str(f): pd(I, f) for f in (QQ, F2, F3)}
    if len(set(values.values())) != 1:
        raise CharDependence(f"pd depends on the field: {values}")
    return values["Q"]


# -- combinatorial criteria --------------------------------------------------


def _complement_disconnected(H: Hypergraph, W: list[int]) -> bool:
    """Is the complement of the 1-face graph on W disconnected?"""
    if len(W) < 2:
        return False
    edges = {f for f in H.faces if popcount(f) == 2}
    seen = {W[0]}
    stack = [W[0]]
    while stack:
        v = stack.pop()
        for w in W:
            if w not in seen and (1 << (v - 1) | 1 << (w - 1)) not in edges:
                seen.add(w)
                stack.append(w)
    return len(seen) < len(W)


def pd_criteria(H: Hypergraph) -> str:
    """'EqualsMu', 'EqualsMuMinus1' or 'Neither'."""
    B, W = sorted(H.B), sorted(H.W)
    if not W:
        return "EqualsMu"
    if _complement_disconnected(H, W):
        return "EqualsMuMinus1"
    for i in B:
        if all((1 << (i - 1) | 1 << (j - 1)) in H.faces for j in W):
            return "EqualsMuMinus1"
    return "Neither"


def lyubeznik_length(I: MonomialIdeal, order=None) -> int:
    """Largest admissible subset for the given ordering of G(I).

    ``order`` lists generators (as masks, monomials or indices into G(I));
    T = {i_1 < ... < i_s} is admissible when no m_q with q < i_t divides
    lcm(m_{i_t}, ..., m_{i_s}).
    """
    if order is None:
        gens = list(I.gens)
    else:
        gens = [_as_mask(I, g) for g in order]
        if sorted(gens) != sorted(I.gens):
            raise ValueError("order must be a permutation of the minimal generators")
    n = len(gens)
    best = 0
    # tails lcm(m_{i_t..i_s}) built from the right; DFS over increasing index sets
    def rec(start_tail: list[int], lcm_tail: int, size: int):
        nonlocal best
        best = max(best, size)
        if size + (start_tail[0] if start_tail else n) <= best:
            return
        first = start_tail[0] if start_tail else n
        for i in range(first - 1, -1, -1):
            new = lcm_tail | gens[i]
            if all(gens[q] & ~new for q in range(i)):
                rec([i] + start_tail, new, size + 1)

    rec([], 0, 0)
    return best


def _as_mask(I: MonomialIdeal, g) -> int:
    if isinstance(g, int):
        if g in I.gens:
            return g
        return I.gens[g]
    support = getattr(g, "support", g)
    return I.mask(support)


LEMMA_CASE1 = {11, 17, 20}
LEMMA_CASE2 = {22}
LEMMA_CASE3 = {4, 5, 12, 13, 24}


def pd_formula_arithdeg4(t: Template | int, params: dict) -> int:
    if isinstance(t, int):
        t = TEMPLATES[t]
    t.check_params(params)
    N = sum(params.get(k, 0) for k in ("i1", "i2", "i3", "i4", "i5", "i6", "j2", "j3", "j4"))
    j2, j3, j4 = params.get("j2", 0), params.get("j3", 0), params.get("j4", 0)
    if t.id in LEMMA_CASE1:
        return max(N - j2 - 2, N - j3 - 2, N - j4 - 2)
    if t.id in LEMMA_CASE2:
        return max(N - j2 - 2, N - j3 - 2)
    if t.id in LEMMA_CASE3:
        return max(N - j2 - 2, N - j4 - 2)
    return N - 2
