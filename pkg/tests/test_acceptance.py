"""Acceptance criteria 1-7, one summary line each (see the terminal summary)."""

import random
import time

import numpy as np
import pytest

from arithrank.certificate import check_certificate
from arithrank.construct import H17Params, ara, h1_systems, h14_system, h17_system, sv_check
from arithrank.construct.result import GENERIC, SV
from arithrank.construct.section7 import (
    generic_generators,
    generic_ideal,
    load_certificate_for,
    random_generic_instance,
)
from arithrank.construct.sv import SVSystem
from arithrank.enumeration import bruteforce
from arithrank.enumeration.pipeline import (
    enumerate_masks,
    filter_stream,
    generic_set,
    maximal_set,
    poset_maximality_oracle,
)
from arithrank.hypergraph import TEMPLATES, embed, hypergraph
from arithrank.ideal import alexander_dual, height, minimalize
from arithrank.polynomial import member_monomial_ideal
from arithrank.resolution import (
    betti_table,
    lyubeznik_length,
    pd,
    pd_criteria,
    pd_formula_arithdeg4,
    reg_ideal,
)
from arithrank.linalg import F2, F3, QQ

from conftest import CACHE, random_ideal

PARAMS = ("i1", "i2", "i3", "i4", "i5", "i6", "j2", "j3", "j4")


def sig2(x: int) -> str:
    return f"{x:.1e}"


def draw_params(tid: int, rng) -> dict:
    t = TEMPLATES[tid]
    out = {k: 0 for k in PARAMS}
    for k in t.free_params:
        out[k] = rng.randint(1, 3) if k.startswith("i") else rng.randint(1, 2)
    return out


# -- criteria 1 and 2: the generic sets for mu = 5 ---------------------------------


@pytest.fixture(scope="module")
def mu5():
    t0 = time.monotonic()
    ck = CACHE / "mu5-pd3"
    h2 = generic_set(5, 2, 3, checkpoint=ck, resume=True)
    h3 = generic_set(5, 3, 3, checkpoint=ck, resume=True)
    return h2, h3, time.monotonic() - t0


def _isomorphic_to_generic(res):
    pairs = []
    for k, H in enumerate(res.hypergraphs, start=1):
        Jk = hypergraph(generic_ideal(k))
        same = len(H.faces) == len(Jk.faces) and embed(H, Jk) is not None and embed(Jk, H) is not None
        pairs.append(same)
    return pairs


def test_criterion_1_generic_set(mu5, report):
    res, _, seconds = mu5
    faces = [len(H.faces) for H in res.hypergraphs]
    iso = _isomorphic_to_generic(res)
    classes_ok = len(res.maximal) == 3 and faces == [23, 24, 25] and all(iso)
    checks_ok = res.oracle_agrees is True and res.f3_mismatches == 0
    s1, s2 = res.step1_count, res.step2_count
    counts_ok = sig2(s1) == "1.8e+07" and sig2(s2) == "2.3e+06"
    report(
        "1",
        classes_ok and checks_ok and counts_ok,
        f"classes={len(res.maximal)} faces={faces} iso(J1,J2,J3)={iso} oracle={res.oracle_agrees} "
        f"f3_mismatches={res.f3_mismatches}; step1={s1} ({sig2(s1)}, stated 1.8e+07) "
        f"step2={s2} ({sig2(s2)}, stated 2.3e+06); {seconds:.1f}s with checkpoint",
    )
    assert classes_ok and checks_ok


@pytest.mark.xfail(strict=True, reason="exact totals round to 1.7e7 and 2.4e6; see the decisions ledger")
def test_criterion_1_counts_two_significant_figures(mu5):
    res = mu5[0]
    assert sig2(res.step1_count) == "1.8e+07"
    assert sig2(res.step2_count) == "2.3e+06"


def test_criterion_2_height_three(mu5, report):
    _, res, _ = mu5
    ok = len(res.maximal) == 9 and res.oracle_agrees is True
    report("2", ok, f"classes={len(res.maximal)} (expected 9) faces={[len(H.faces) for H in res.hypergraphs]}")
    assert ok


# -- criterion 3: small mu against brute force --------------------------------------


def test_criterion_3_small_mu_oracle(report):
    t0 = time.monotonic()
    problems = []
    counts = {}
    for mu in (2, 3, 4):
        slow_classes = bruteforce.labeled_classes(mu)
        fast = enumerate_masks(mu)
        counts[mu] = len(slow_classes)
        if set(map(int, fast)) != slow_classes:
            problems.append(f"classes mu={mu}")
        for h in range(1, mu + 1):
            for p in range(1, mu + 1):
                levels = filter_stream(fast, mu, h, p)
                quick = {int(m) for arr in levels.values() for m in arr}
                slow = bruteforce.property_classes(mu, h, p, slow_classes)
                if quick != slow:
                    problems.append(f"P2 mu={mu} h={h} p={p}")
                top = set(map(int, maximal_set(levels, mu)))
                direct = set(map(int, poset_maximality_oracle(levels, mu)))
                if not top == direct == bruteforce.maximal_classes(mu, slow):
                    problems.append(f"P3 mu={mu} h={h} p={p}")
    seconds = time.monotonic() - t0
    ok = not problems and seconds < 60
    report("3", ok, f"class counts {counts}, mismatches={problems or 'none'}, {seconds:.1f}s (< 60s)")
    assert ok


# -- criterion 4: homological suite ---------------------------------------------------


def _named_entries(T):
    return {(i, frozenset(T.vars[k] for k in range(len(T.vars)) if m >> k & 1)): b for (i, m), b in T.entries.items()}


def _product_rule_holds(I, J) -> bool:
    IJ = minimalize(list(I.supports) + list(J.supports))
    a, b = _named_entries(betti_table(I)), _named_entries(betti_table(J))
    expected = {}
    for (i, s), x in a.items():
        for (j, t), y in b.items():
            expected[(i + j, s | t)] = expected.get((i + j, s | t), 0) + x * y
    return _named_entries(betti_table(IJ)) == expected


def test_criterion_4_homological_suite(report):
    rng = random.Random(4)
    t0 = time.monotonic()
    field_bad = dual_bad = crit_bad = fired = dual_checked = 0
    for _ in range(200):
        I = random_ideal(rng, mu_max=5, nvars=rng.randint(3, 12))
        values = {pd(I, F) for F in (QQ, F2, F3)}
        field_bad += len(values) != 1
        value = values.pop()
        if height(I) >= 2:
            dual_checked += 1
            dual_bad += value != reg_ideal(alexander_dual(I))
        verdict = pd_criteria(hypergraph(I))
        if verdict != "Neither":
            fired += 1
            crit_bad += value != (I.mu if verdict == "EqualsMu" else I.mu - 1)
    product_bad = 0
    for _ in range(50):
        I = random_ideal(rng, mu_max=3, nvars=5)
        J = random_ideal(rng, mu_max=3, nvars=5)
        J = minimalize([[v.replace("x", "y") for v in s] for s in J.supports])
        product_bad += not _product_rule_holds(I, J)
    seconds = time.monotonic() - t0
    ok = not (field_bad or dual_bad or crit_bad or product_bad) and seconds < 120
    report(
        "4",
        ok,
        f"field disagreements={field_bad}/200, duality failures={dual_bad}/{dual_checked}, "
        f"criteria failures={crit_bad}/{fired} fired, product rule failures={product_bad}/50, {seconds:.1f}s (< 120s)",
    )
    assert ok


# -- criterion 5: SV construction suite -----------------------------------------------


def _three_way(tid, params, systems):
    p = H17Params.from_dict(params)
    I = p.ideal()
    if len(systems) == 1:
        valid = bool(sv_check(systems[0], I))
    else:
        union = minimalize([a for s in systems for a in s.elements()])
        valid = union == I and all(sv_check(s, minimalize(list(s.elements()))) for s in systems)
    count = sum(s.nonzero_count for s in systems)
    return valid and count == pd_formula_arithdeg4(tid, params) == pd(I, strategy="dual")


def test_criterion_5_sv_suite(report):
    rng = random.Random(5)
    t0 = time.monotonic()
    failures = []
    draws = 0
    for tid in sorted(TEMPLATES):
        for _ in range(200):
            params = draw_params(tid, rng)
            p = H17Params.from_dict(params)
            if tid == 1:
                systems = list(h1_systems(p))
            elif tid == 14:
                systems = [h14_system(p)]
            else:
                systems = [h17_system(p)]
            draws += 1
            if not _three_way(tid, params, systems):
                failures.append((tid, params))
    negative_bad = 0
    for tid in (1, 14):
        for _ in range(50):
            p = H17Params.from_dict(draw_params(tid, rng))
            count = h17_system(p).nonzero_count
            negative_bad += not (count == p.N - 1 > pd(p.ideal(), strategy="dual"))
    seconds = time.monotonic() - t0
    ok = not failures and not negative_bad and seconds < 300
    report(
        "5",
        ok,
        f"{draws} draws over H1..H24, failures={len(failures)}; H17 on H1/H14 params gives N-1 > pd "
        f"in {100 - negative_bad}/100; {seconds:.1f}s (< 300s)",
    )
    assert ok, failures[:3]


# -- criterion 6: certificates and the Lyubeznik length --------------------------------


def test_criterion_6_certificates(report):
    t0 = time.monotonic()
    replay = []
    for k in (1, 2):
        try:
            replay.append(check_certificate(load_certificate_for(k), generic_ideal(k)))
        except Exception:
            replay.append(False)
    m1, m2, m3, m4, m5 = generic_generators(3)
    length = lyubeznik_length(generic_ideal(3), [m5, m1, m2, m3, m4])
    seconds = time.monotonic() - t0
    nvars = [generic_ideal(k).nvars for k in (1, 2)]
    ok = all(replay) and length == 3 and seconds < 60
    report("6", ok, f"certificates replay={replay} on {nvars} variables, Lyubeznik length={length}, {seconds:.1f}s (< 60s)")
    assert ok


# -- criterion 7: end-to-end ------------------------------------------------------------


def _sv_groups_pass(res, I) -> bool:
    systems = [
        SVSystem.from_groups([[a.split("*") for a in g] for g in groups]) for groups in res.detail["groups"]
    ]
    if len(systems) == 1:
        return bool(sv_check(systems[0], I))
    return all(sv_check(s, minimalize(list(s.elements()))) for s in systems)


def test_criterion_7_end_to_end(report):
    rng = random.Random(7)
    t0 = time.monotonic()
    generic_bad = 0
    for n in range(100):
        I = random_generic_instance(1 + n % 2, rng)
        res = ara(I)
        good = res.value == 3 and res.justification == GENERIC and res.generators is not None
        good = good and check_certificate(res.certificate, I)
        generic_bad += not good
    template_bad = []
    paths = {}
    for n in range(100):
        tid = rng.choice(sorted(TEMPLATES))
        params = draw_params(tid, rng)
        I = H17Params.from_dict(params).ideal()
        res = ara(I)
        paths[res.justification] = paths.get(res.justification, 0) + 1
        good = res.value == pd_formula_arithdeg4(tid, params) and res.generators is not None
        good = good and all(member_monomial_ideal(g, I) for g in res.generators)
        if res.justification == SV:
            good = good and _sv_groups_pass(res, I)
        else:
            # H1 ideals split into two product ideals whose convolved generators are diagonal SV sums
            p = H17Params.from_dict(params)
            good = good and tid == 1 and all(sv_check(s, minimalize(list(s.elements()))) for s in h1_systems(p))
            good = good and sorted(map(str, res.generators)) == sorted(
                str(g) for s in h1_systems(p) for g in s.generators()
            )
        if not good:
            template_bad.append((tid, params))
    seconds = time.monotonic() - t0
    ok = not generic_bad and not template_bad and seconds < 600
    report(
        "7",
        ok,
        f"specializations failing={generic_bad}/100, template ideals failing={len(template_bad)}/100 "
        f"(paths {paths}), {seconds:.1f}s (< 600s)",
    )
    assert ok, template_bad[:3]
