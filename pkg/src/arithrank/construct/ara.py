"""Top-level dispatcher: the arithmetical rank of an ideal with mu <= 5 or arithdeg <= 4."""

from __future__ import annotations

from ..errors import ConstructionFailed, NotClassified, OutOfScope, PreconditionError, VerificationFailed
from ..hypergraph import FRAME_EDGES, FRAME_SINGLETONS, face_of, hypergraph_of, match_templates
from ..ideal import (
    MonomialIdeal,
    alexander_dual,
    components,
    height,
    indeg,
    invariants,
    minimal_primes,
    minimalize,
    PrimeDecomposition,
)
from ..polynomial import Polynomial, member_monomial_ideal
from ..resolution import pd
from .combine import combine_intersection, strip_indeg_one
from .cone import cone_reduce
from .result import AraResult, CITED, CONE, INTERSECTION, SUM, SV
from .section7 import specialize_generators
from .sv import H17Params, SVSystem, h1_systems, h14_system, h17_system, sv_check


def in_scope(I: MonomialIdeal) -> bool:
    return I.mu <= 5 or len(minimal_primes(I)) <= 4


def ara(I: MonomialIdeal, check: bool = True) -> AraResult:
    """ara I together with the path that establishes it.

    The returned value always equals pd S/I (checked); generators are
    attached when every step on the path is constructive.
    """
    I = I.restricted()
    if not in_scope(I):
        raise OutOfScope("needs mu <= 5 or arithdeg <= 4")
    res = _dispatch(I)
    if check:
        _check(I, res)
    return res


def _pd(I: MonomialIdeal) -> int:
    if height(I) >= 2 and len(minimal_primes(I)) <= 4:
        return pd(I, strategy="dual")
    return pd(I)


def _check(I: MonomialIdeal, res: AraResult) -> None:
    expected = _pd(I)
    if res.value != expected:
        raise VerificationFailed(f"path value {res.value} differs from pd {expected}")
    if res.generators is not None:
        for k, g in enumerate(res.generators, start=1):
            if not member_monomial_ideal(g, I):
                raise VerificationFailed(f"generator {k} is not in the ideal")


def _dispatch(I: MonomialIdeal) -> AraResult:
    linear, rest = strip_indeg_one(I)
    if linear:
        lin = [Polynomial.var(v) for v in linear]
        if rest is None:
            return AraResult(len(lin), SUM, lin, trace=["degree-one generators"])
        sub = _dispatch(rest)
        gens = lin + sub.generators if sub.generators is not None else None
        return AraResult(len(lin) + sub.value, SUM, gens, trace=["split off degree-one generators"], children=[sub])

    parts = components(I)
    if len(parts) > 1:
        subs = [_dispatch(J) for J in parts]
        gens = None
        if all(s.generators is not None for s in subs):
            gens = [g for s in subs for g in s.generators]
        return AraResult(sum(s.value for s in subs), SUM, gens, trace=["disconnected support"], children=subs)

    if I.mu == 1:
        return AraResult(1, SV, [Polynomial.monomial(I.supports[0])], trace=["principal"])

    h = height(I)
    if h == 1:
        # I = (f) cap J with f the gcd and J = I / f on disjoint variables
        common = frozenset.intersection(*map(frozenset, I.supports))
        J = minimalize([set(s) - common for s in I.supports])
        sub = _dispatch(J)
        gens = None
        if sub.generators is not None:
            gens = combine_intersection([Polynomial.monomial(common)], sub.generators)
        return AraResult(sub.value, INTERSECTION, gens, trace=["height 1: common factor"], children=[sub])

    fallback = None
    if len(minimal_primes(I)) <= 4:
        if I.mu > 5:
            return _arithdeg4(I)
        try:
            fallback = _arithdeg4(I)
        except ConstructionFailed:
            fallback = None
        if fallback is not None and fallback.generators is not None:
            return fallback

    if I.mu <= 5:
        p = pd(I)
        if p == I.mu:
            # one generator per group is an SV system with SV3 vacuous
            return AraResult(p, SV, [Polynomial.monomial(s) for s in I.supports], trace=["pd = mu"])
        if I.mu - h <= 2 or I.mu - p <= 1:
            return AraResult(p, CITED, None, trace=["pd close to mu"])
        if p == 2:
            return AraResult(p, CITED, None, trace=["height 2 Cohen-Macaulay"])
        if I.mu == 5 and h == 2 and p == 3:
            res = specialize_generators(I)
            return res
        if fallback is not None:
            return fallback
        raise ConstructionFailed(f"no mu <= 5 path for mu={I.mu}, height={h}, pd={p}")

    return _arithdeg4(I)


def _arithdeg4(I: MonomialIdeal) -> AraResult:
    primes = minimal_primes(I)
    D = alexander_dual(I)
    dparts = components(D)
    if len(dparts) > 1:
        first = dparts[0]
        second = minimalize([s for J in dparts[1:] for s in J.supports])
        I1, I2 = (_intersection_of(J) for J in (first, second))
        r1, r2 = _dispatch(I1), _dispatch(I2)
        gens = None
        if r1.generators is not None and r2.generators is not None:
            gens = combine_intersection(r1.generators, r2.generators)
        return AraResult(r1.value + r2.value - 1, INTERSECTION, gens, trace=["dual disconnected"], children=[r1, r2])

    H, dm = hypergraph_of(D)
    if H.dim >= 2:
        I2, log = cone_reduce(I)
        sub = _dispatch(I2)
        return AraResult(
            _pd(I), CONE, None, trace=[f"cone reduction, {len(log)} removals"],
            detail={"removed": [r.to_json() for r in log]}, children=[sub],
        )
    if H.W and len(primes) == 4:
        try:
            return sv_construction(I, D)
        except (ConstructionFailed, NotClassified, PreconditionError):
            pass
    inv = invariants(I)
    if inv.arithdeg - inv.indeg <= 1:
        return AraResult(_pd(I), CITED, None, trace=["arithdeg - indeg <= 1"])
    if not H.W:
        return AraResult(_pd(I), CITED, None, trace=["B(H) = V(H)"])
    raise ConstructionFailed("no arithdeg <= 4 path applies")


def _intersection_of(D: MonomialIdeal) -> MonomialIdeal:
    """The ideal whose minimal primes are the generators of D."""
    return PrimeDecomposition(D.vars, tuple(D.gens)).intersect().restricted()


def frame_params_for(D: MonomialIdeal) -> list:
    """(template id, H17Params with defining-variable pools) per frame labeling of H(D)."""
    H, dm = hypergraph_of(D)
    out = []
    for match in match_templates(H, dm.multiplicity):
        inv = {w: v for v, w in match.labeling.items()}
        pools = {}
        for s, (a, b) in enumerate(FRAME_EDGES, start=1):
            pools[("x", s)] = list(dm.by_face.get(face_of((inv[a], inv[b])), ()))
        for u in FRAME_SINGLETONS:
            pools[("y", u)] = list(dm.by_face.get(face_of((inv[u],)), ()))
        out.append((match.template.id, H17Params.from_dict(match.params, pools)))
    return out


def template_system(tid: int, p: H17Params) -> list[SVSystem]:
    if tid == 1:
        return list(h1_systems(p))
    if tid == 14:
        return [h14_system(p)]
    return [h17_system(p)]


def _systems_ok(systems: list[SVSystem], I: MonomialIdeal) -> bool:
    if len(systems) == 1:
        return bool(sv_check(systems[0], I))
    union = [a for s in systems for a in s.elements()]
    if minimalize(union) != I:
        return False
    return all(sv_check(s, minimalize(list(s.elements()))) for s in systems)


def sv_construction(I: MonomialIdeal, D: MonomialIdeal | None = None) -> AraResult:
    """Try every frame labeling of H(I*) and keep the first valid SV system."""
    if D is None:
        D = alexander_dual(I)
    tried = 0
    for tid, p in frame_params_for(D):
        tried += 1
        systems = template_system(tid, p)
        if not _systems_ok(systems, I):
            continue
        gens = [g for s in systems for g in s.generators()]
        return AraResult(
            len(gens), SV, gens, trace=[f"template H{tid}"],
            detail={"template": tid, "params": p.as_dict(), "groups": [s.to_json() for s in systems]},
        )
    raise ConstructionFailed(f"no frame labeling gives a valid SV system ({tried} tried)")
