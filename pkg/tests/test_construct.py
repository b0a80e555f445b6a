import random

import pytest
from hypothesis import given

from arithrank.construct import (
    AraResult,
    H17Params,
    SVSystem,
    ara,
    combine_intersection,
    combine_sum,
    cone_reduce,
    diagonal_system,
    h1_generators,
    h14_system,
    h17_system,
    section7_generators,
    specialize_generators,
    strip_indeg_one,
    sv_check,
    sv_generators,
)
from arithrank.construct.result import CITED, GENERIC, INTERSECTION, SUM, SV
from arithrank.construct.section7 import generic_generators, generic_ideal
from arithrank.errors import ConstructionFailed, NotDisjoint, OutOfScope, PreconditionError
from arithrank.ideal import alexander_dual, minimal_primes, minimalize, parse_ideal_text
from arithrank.polynomial import Polynomial, member_monomial_ideal, parse_polynomial
from arithrank.resolution import pd, pd_formula_arithdeg4

from conftest import ideals

ONES = {k: 1 for k in ("i1", "i2", "i3", "i4", "i5", "i6", "j2", "j3", "j4")}


def I_(*gens):
    return minimalize([g.split("*") for g in gens])


def S(*groups):
    return SVSystem.from_groups([[g.split("*") for g in grp] for grp in groups])


def test_sv_check_examples():
    assert sv_check(S(["a"]), I_("a"))
    prod = I_("x1*y1", "x1*y2", "x2*y1", "x2*y2")
    good = S(["x1*y1"], ["x1*y2", "x2*y1"], ["x2*y2"])
    assert sv_check(good, prod)
    assert diagonal_system(["x1", "x2"], ["y1", "y2"]).groups == good.groups
    # any reordering of these groups still passes: every product is x1x2y1y2
    assert sv_check(S(["x1*y1"], ["x2*y2"], ["x1*y2", "x2*y1"]), prod)
    path = I_("a*b", "b*c", "c*d")
    assert sv_check(S(["b*c"], ["a*b", "c*d"]), path)
    rep = sv_check(S(["a*b"], ["b*c", "c*d"]), path)
    assert not rep and not rep.sv3 and rep.witness[0] == 1


def test_sv_check_sv1_sv2():
    prod = I_("x1*y1", "x1*y2", "x2*y1", "x2*y2")
    assert not sv_check(S(["x1*y1"], ["x1*y2", "x2*y1"]), prod).sv1
    assert not sv_check(S(["x1*y1", "x2*y2"], ["x1*y2", "x2*y1"]), prod).sv2
    assert sv_check(S([], ["x1*y1"], [], ["x1*y2", "x2*y1"], ["x2*y2"]), prod)


def test_sv_generators():
    assert sv_generators(S(["a*b"])) == [parse_polynomial("a*b")]
    prod = I_("x1*y1", "x1*y2", "x2*y1", "x2*y2")
    gens = sv_generators(diagonal_system(["x1", "x2"], ["y1", "y2"]), prod)
    assert gens == [parse_polynomial(t) for t in ("x1*y1", "x1*y2 + x2*y1", "x2*y2")]
    assert len(gens) == pd(prod) == 3
    with pytest.raises(ConstructionFailed):
        sv_generators(S(["x1*y1"]), prod)


def test_h17_all_ones():
    p = H17Params.from_dict(ONES)
    sysm = h17_system(p)
    assert sysm.groups[0] == {frozenset({"x1_1", "x3_1"})}
    assert sysm.nonzero_count == 6 == p.r + 1
    assert sv_check(sysm, p.ideal())
    assert len(sysm.generators()) == pd(p.ideal()) == 6


def test_h14_all_ones():
    p = {**ONES, "j2": 0, "j3": 0, "j4": 0}
    sysm = h14_system(p)
    P = H17Params.from_dict(p)
    assert sysm.nonzero_count == 4 == pd(P.ideal())
    assert sv_check(sysm, P.ideal())
    with pytest.raises(ConstructionFailed):
        h14_system(ONES)


def test_h14_family5_starts_late():
    from arithrank.construct.sv import h14_families

    p = H17Params((2, 1, 1, 2, 1, 1), {})
    levels = [lvl for (k, lvl) in h14_families(p) if k == 5]
    assert min(levels) == sum(p.i[:4]) - 1


def test_h17_table1_pair_resolved():
    """Family 2 and family 4 share a level; their product is covered earlier."""
    from arithrank.construct.sv import h17_families

    p = H17Params((2, 1, 2, 1, 1, 1), {2: 1, 3: 1, 4: 1})
    fam = h17_families(p)
    earlier = set()
    sysm = h17_system(p)
    for lvl, grp in enumerate(sysm.groups):
        for a in fam.get((2, lvl), ()):
            for b in fam.get((4, lvl), ()):
                assert any(c <= a | b for c in earlier)
        earlier |= grp


def test_h1_generators():
    assert h1_generators({"i1": 1, "i2": 1, "i3": 1, "i4": 1}) == [
        parse_polynomial("x1_1*x3_1"),
        parse_polynomial("x2_1*x4_1"),
    ]
    params = {"i1": 2, "i2": 1, "i3": 2, "i4": 1}
    gens = h1_generators(params)
    assert len(gens) == 4 == pd(H17Params.from_dict(params).ideal())


def test_combine_examples():
    a, b = parse_polynomial("a"), parse_polynomial("b")
    assert combine_intersection([a], [b]) == [a * b]
    f = [parse_polynomial("x1"), parse_polynomial("x2")]
    g = [parse_polynomial("y1*y2")]
    assert combine_intersection(f, g) == [f[0] * g[0], f[1] * g[0]]
    f3 = [parse_polynomial(f"x{k}") for k in range(3)]
    g2 = [parse_polynomial(f"y{k}") for k in range(2)]
    assert len(combine_intersection(f3, g2)) == 4
    with pytest.raises(NotDisjoint):
        combine_intersection([a], [a * b])
    assert combine_sum([a], [b]) == [a, b]


def test_combine_intersection_is_sv_product():
    """Convolving two diagonal systems' generators gives the product system."""
    f = diagonal_system(["x1", "x2"], ["x3", "x4"]).generators()
    g = diagonal_system(["y1"], ["y2", "y3"]).generators()
    h = combine_intersection(f, g)
    I = I_("x1*x3", "x1*x4", "x2*x3", "x2*x4")
    J = I_("y1*y2", "y1*y3")
    meet = minimalize([s | t for s in I.supports for t in J.supports])
    assert all(member_monomial_ideal(p, meet) for p in h)
    assert len(h) == pd(meet)


def test_strip_indeg_one():
    lin, rest = strip_indeg_one(I_("x", "y*z", "z*w"))
    assert lin == ["x"] and rest == I_("y*z", "z*w")
    I = I_("y*z", "z*w")
    assert strip_indeg_one(I) == ([], I)
    assert pd(I_("x", "y*z", "z*w")) == 1 + pd(I)


def _from_primes(*primes):
    return alexander_dual(minimalize([p.split() for p in primes]))


def test_cone_reduce_base_case():
    I = _from_primes("a b", "b c", "c d", "d a")
    assert cone_reduce(I) == (I, [])


def test_cone_reduce_single_face():
    I = _from_primes("a b x", "c d x", "e f x", "g h")
    J, log = cone_reduce(I)
    assert len(log) == 1 and log[0].variable == "x"
    assert log[0].faces_after == log[0].faces_before - 1
    assert "x" not in J.vars
    assert sorted(map(sorted, minimal_primes(J).sets)) == [["a", "b"], ["c", "d"], ["e", "f"], ["g", "h"]]


def test_cone_reduce_multiple_defining_variables():
    I = _from_primes("a b x y z", "c d x y z", "e f x y z", "g h")
    J, log = cone_reduce(I)
    assert len(log) == 3
    assert all(r.faces_after == r.faces_before for r in log[:2])
    assert log[2].faces_after == log[2].faces_before - 1
    assert [r.variable for r in log] == ["z", "y", "x"]
    assert len(minimal_primes(J)) == 4


def test_cone_reduce_preconditions():
    with pytest.raises(PreconditionError):
        cone_reduce(I_("x", "y*z"))


def test_section7_formulas():
    m1, m2, m3, m4, m5 = (Polynomial.monomial(m) for m in generic_generators(2))
    g = section7_generators(2)
    assert g[2] == m1 + m2 + m3
    m1, m2, m3, m4, m5 = (Polynomial.monomial(m) for m in generic_generators(1))
    g = section7_generators(1)
    rest = g[1] - m4
    assert all(member_monomial_ideal(Polynomial({t: c}), minimalize([m1.variables])) for t, c in rest.terms.items())
    for k in (1, 2):
        assert len(section7_generators(k)) == 3 == pd(generic_ideal(k))


def test_specialize_identity():
    res = specialize_generators(generic_ideal(2))
    assert res.justification == GENERIC and res.generators == section7_generators(2)


def test_specialize_merged_variables():
    J1 = generic_ideal(1)
    # x1 becomes the product of two fresh variables
    I = minimalize([[v for v in s if v != "x1"] + (["u", "w"] if "x1" in s else []) for s in J1.supports])
    res = specialize_generators(I)
    assert res.value == 3 and res.generators is not None
    assert all(member_monomial_ideal(g, I) for g in res.generators)


def test_specialize_case3_is_value_only():
    res = specialize_generators(generic_ideal(3))
    assert res.value == 3 and res.justification == CITED and res.generators is None


def test_specialize_precondition():
    with pytest.raises(PreconditionError):
        specialize_generators(I_("a*b", "b*c"))


def test_ara_examples():
    assert ara(I_("x1*x2", "x2*x3", "x1*x3")).value == 2
    r = ara(generic_ideal(1))
    assert (r.value, r.justification) == (3, GENERIC) and len(r.generators) == 3
    I = H17Params.from_dict(ONES).ideal()
    r = ara(I)
    assert r.value == 6 and r.justification == SV and len(r.generators) == 6


def test_ara_sum_and_intersection_paths():
    r = ara(I_("x", "y*z", "z*w"))
    assert r.value == 3 and r.justification == SUM
    assert r.children[0].justification == INTERSECTION
    assert sorted(map(str, r.generators)) == ["w*z", "x", "y*z"]
    r = ara(I_("x", "y*z", "w*v"))
    assert r.value == 3 and r.generators[0] == parse_polynomial("x")
    I = _from_primes("a b c", "d e f")
    r = ara(I)
    assert r.value == pd(I) == 5 and r.justification == INTERSECTION
    assert len(r.generators) == 5


def test_ara_out_of_scope():
    with pytest.raises(OutOfScope):
        ara(I_(*(f"a{k}*b{k}" for k in range(1, 7))))


def test_result_validation():
    with pytest.raises(ValueError):
        AraResult(2, "Magic")
    with pytest.raises(ValueError):
        AraResult(2, SV, [parse_polynomial("a")])
    assert AraResult(1, SV, [parse_polynomial("a")]).to_json()["generators"] == ["a"]


@given(ideals(nvars=8))
def test_ara_equals_pd_and_generators_in_ideal(I):
    if I.mu > 5:
        return
    r = ara(I)
    assert r.value == pd(I)
    if r.generators is not None:
        assert all(member_monomial_ideal(g, I) for g in r.generators)
        for P in minimal_primes(I).sets:
            assert all(g.vanishes_on(P) for g in r.generators)


def test_template_draws_three_way():
    from arithrank.hypergraph import TEMPLATES, frame_ideal

    rng = random.Random(9)
    for tid, t in TEMPLATES.items():
        if tid in (1, 14):
            continue
        params = {k: 0 for k in ONES}
        for k in t.free_params:
            params[k] = rng.randint(1, 2)
        p = H17Params.from_dict(params)
        sysm = h17_system(p)
        assert sv_check(sysm, p.ideal())
        assert sysm.nonzero_count == pd_formula_arithdeg4(tid, params) == pd(p.ideal(), strategy="dual")


def test_h17_on_h1_and_h14_params_overshoots():
    for params in ({"i1": 1, "i2": 1, "i3": 1, "i4": 1}, {**ONES, "j2": 0, "j3": 0, "j4": 0}):
        p = H17Params.from_dict(params)
        n = h17_system(p).nonzero_count
        assert n == p.N - 1 > pd(p.ideal())
