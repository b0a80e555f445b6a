"""Reduce an arithdeg <= 4 ideal until the hypergraph of its dual has dim <= 1.

Each pass picks a 2-face F of H(I*), i.e. a variable lying in exactly three
minimal primes, and deletes that variable from those primes.  When F has a
single defining variable the face disappears; otherwise the hypergraph is
unchanged and the multiplicity of F drops by one.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import PreconditionError
from ..ideal import MonomialIdeal, PrimeDecomposition, height, indeg, minimal_primes, var_key


@dataclass(frozen=True)
class Removal:
    variable: str
    primes: tuple  # indices (1-based) of the primes it was removed from
    faces_before: int
    faces_after: int

    def to_json(self) -> dict:
        return {
            "variable": self.variable,
            "primes": list(self.primes),
            "faces_before": self.faces_before,
            "faces_after": self.faces_after,
        }


def _faces(primes: list[frozenset]) -> dict:
    faces: dict = {}
    for v in set().union(*primes):
        pattern = frozenset(k for k, p in enumerate(primes) if v in p)
        faces.setdefault(pattern, []).append(v)
    return faces


def _minimal(primes: list[frozenset]) -> list[frozenset]:
    out = []
    for p in primes:
        if any(q < p for q in primes) or p in out:
            continue
        out.append(p)
    return out


def cone_reduce(I: MonomialIdeal) -> tuple[MonomialIdeal, list[Removal]]:
    if height(I) < 2 or indeg(I) < 2:
        raise PreconditionError("cone reduction needs height >= 2 and indeg >= 2")
    primes = minimal_primes(I).sets
    if len(primes) > 4:
        raise PreconditionError("cone reduction needs arithdeg <= 4")
    log: list[Removal] = []
    while True:
        faces = _faces(primes)
        big = sorted(
            (f for f in faces if len(f) >= 3),
            key=lambda f: (len(f), sorted(f)),
        )
        if not big:
            break
        F = big[0]
        if len(F) > 3:
            raise PreconditionError("a variable lies in every minimal prime")
        x = max(faces[F], key=var_key)
        before = len(faces)
        primes = _minimal([p - {x} if k in F else p for k, p in enumerate(primes)])
        log.append(Removal(x, tuple(sorted(k + 1 for k in F)), before, len(_faces(primes))))
    names = sorted(set().union(*primes), key=var_key)
    idx = {v: k for k, v in enumerate(names)}
    dec = PrimeDecomposition(tuple(names), tuple(sum(1 << idx[v] for v in p) for p in primes))
    return dec.intersect(), log
