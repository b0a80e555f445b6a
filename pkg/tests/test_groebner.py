import random

from arithrank.construct.section7 import section7_generators
from arithrank.groebner import NO, TIMEOUT, YES, groebner_basis, groebner_radical_member
from arithrank.ideal import parse_ideal_text
from arithrank.polynomial import Polynomial, parse_polynomial

P = parse_polynomial


def test_trivial_examples():
    assert groebner_radical_member(P("x1"), [P("x1^2")]) == YES
    assert groebner_radical_member(P("x1"), [P("x2")]) == NO


def test_unit_ideal_basis():
    basis = groebner_basis([P("x1*x2 - 1"), P("x1")])
    assert any(g.degree() == 0 for g in basis)


def test_radical_of_sum_of_monomials():
    J = [P("x1*x2 + x3"), P("x3")]
    assert groebner_radical_member(P("x1*x2"), J) == YES
    assert groebner_radical_member(P("x1"), J) == NO


def test_budget_gives_timeout_not_no():
    J = [P(f"x{i}*x{i+1} + x{i+2}^2 - x{i+3}") for i in range(1, 12)]
    assert groebner_radical_member(P("x1*x5*x9"), J, budget=0.01) in (TIMEOUT, YES)


def _specialize(k, keep, rng):
    """Send all but ``keep`` variables of the Case k triple to 1."""
    gens = section7_generators(k)
    names = sorted(set().union(*(g.variables for g in gens)))
    kept = set(rng.sample(names, keep))
    ones = {v: 1 for v in names if v not in kept}
    return [g.subs(ones) for g in gens], ones


def test_agrees_with_certificate_on_specialized_instances():
    from arithrank.construct.section7 import generic_generators

    rng = random.Random(3)
    answered = 0
    for _ in range(6):
        gens, ones = _specialize(2, 6, rng)
        for m in generic_generators(2):
            mono = Polynomial.monomial(m).subs(ones)
            r = groebner_radical_member(mono, gens, budget=2.0)
            assert r in (YES, TIMEOUT)
            answered += r == YES
    assert answered > 0
