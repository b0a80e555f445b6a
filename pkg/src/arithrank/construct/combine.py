"""Combining generator lists of variable-disjoint ideals."""

from __future__ import annotations

from ..errors import NotDisjoint
from ..ideal import MonomialIdeal, minimalize, popcount
from ..polynomial import Polynomial


def _variables(polys) -> set:
    out = set()
    for p in polys:
        out |= p.variables
    return out


def _require_disjoint(f, g) -> None:
    shared = _variables(f) & _variables(g)
    if shared:
        raise NotDisjoint(f"inputs share variables: {sorted(shared)}")


def combine_intersection(f: list[Polynomial], g: list[Polynomial]) -> list[Polynomial]:
    """Generators of I1 cap I2 from generators of I1 and I2 on disjoint variables.

    h_l = sum_j f_{l-j} g_j for l = 0..len(f)+len(g)-2.
    """
    if not f or not g:
        raise ValueError("both generator lists must be non-empty")
    _require_disjoint(f, g)
    h = []
    for l in range(len(f) + len(g) - 1):
        acc = Polynomial()
        for j in range(max(0, l - len(f) + 1), min(l, len(g) - 1) + 1):
            acc = acc + f[l - j] * g[j]
        h.append(acc)
    return h


def combine_sum(f: list[Polynomial], g: list[Polynomial]) -> list[Polynomial]:
    """Generators of I1 + I2: plain concatenation."""
    _require_disjoint(f, g)
    return list(f) + list(g)


def strip_indeg_one(I: MonomialIdeal) -> tuple[list[str], MonomialIdeal | None]:
    """Split I = (x_1, ..., x_t) + I' with the degree-one generators removed.

    A minimal generator x never shares its variable with another minimal
    generator, so I' lives on disjoint variables.  Returns the variables and
    I' (None when nothing is left).
    """
    linear = [I.vars[g.bit_length() - 1] for g in I.gens if popcount(g) == 1]
    rest = [I.names(g) for g in I.gens if popcount(g) > 1]
    if not linear:
        return [], I
    return linear, (minimalize(rest) if rest else None)
