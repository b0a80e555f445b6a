import itertools
import random

import pytest
from hypothesis import given, strategies as st

from arithrank.construct.section7 import generic_ideal, random_substitution
from arithrank.errors import NotClassified, NotSeparable
from arithrank.hypergraph import (
    TEMPLATES,
    Hypergraph,
    canonical_form,
    corresponding_graph,
    embed,
    frame_ideal,
    hypergraph,
    hypergraph_from_graph,
    hypergraph_of,
    ideal_from,
    isomorphic,
    match_template,
    structure,
)
from arithrank.ideal import parse_ideal_text


def H(mu, *faces):
    return Hypergraph(mu, faces)


def test_hypergraph_of_reads_divisibility():
    I = parse_ideal_text("x1*x2\nx1*x3\n")
    G, dm = hypergraph_of(I)
    assert G.faces == {0b11, 0b01, 0b10}
    assert dm.by_variable["x1"] == 0b11
    assert hypergraph(parse_ideal_text("x1*x2*x3\n")).faces == {1}


def test_generic_face_counts():
    assert [len(hypergraph(generic_ideal(k)).faces) for k in (1, 2, 3)] == [23, 24, 25]


def test_structure_examples():
    s = structure(hypergraph(parse_ideal_text("x1*x2\nx2*x3\nx3*x4\n")))
    assert (s.B, s.W, s.separable, s.connected) == ({1, 3}, {2}, True, True)
    s = structure(hypergraph(parse_ideal_text("x1*x2\nx2*x3\nx1*x3\n")))
    assert s.B == set() and s.W == {1, 2, 3}
    assert not H(2, (1,), (2,)).is_connected()


def test_canonical_form_examples():
    assert canonical_form(H(2, (1,), (2,), (1, 2))) == canonical_form(H(2, (2,), (1,), (1, 2)))
    assert canonical_form(H(2, (1,), (1, 2))) == canonical_form(H(2, (2,), (1, 2)))
    assert canonical_form(H(2, (1,), (1, 2))) != canonical_form(H(2, (1,), (2,)))


def test_embed_examples():
    small, big = H(2, (1,), (2,)), H(2, (1,), (2,), (1, 2))
    assert embed(big, big) is not None
    assert embed(small, big) is not None
    assert embed(big, small) is None


def test_substituted_ideal_embeds_into_source():
    rng = random.Random(7)
    for _ in range(20):
        _, J = random_substitution(1, rng)
        if J is None or J.mu != 5:
            continue
        assert embed(hypergraph(J), hypergraph(generic_ideal(1))) is not None


def test_ideal_from_small():
    I = ideal_from(H(2, (1,), (2,), (1, 2)))
    assert sorted(len(s) for s in I.supports) == [2, 2]
    assert len(set.intersection(*map(set, I.supports))) == 1
    with pytest.raises(NotSeparable):
        ideal_from(H(2, (1, 2)))


def test_reduced_generic_ideals_round_trip():
    J2 = generic_ideal(2)
    I = ideal_from(hypergraph(J2))
    assert isomorphic(hypergraph(I), hypergraph(J2))
    assert I.nvars == J2.nvars


def _random_separable(rng, mu):
    while True:
        faces = [f for f in range(1, 1 << mu) if rng.random() < 0.4]
        if not faces:
            continue
        try:
            G = Hypergraph(mu, faces)
        except ValueError:
            continue
        if G.is_separable():
            return G


def test_ideal_from_round_trip_random():
    rng = random.Random(11)
    for _ in range(100):
        G = _random_separable(rng, rng.randint(2, 5))
        assert canonical_form(hypergraph(ideal_from(G))) == canonical_form(G)


@given(st.integers(0, 2**31 - 1), st.permutations([1, 2, 3, 4, 5]))
def test_canonical_form_is_orbit_invariant(seed, perm):
    G = _random_separable(random.Random(seed), 5)
    assert canonical_form(G) == canonical_form(G.permuted(perm))


def test_corresponding_graph_round_trip():
    rng = random.Random(5)
    for _ in range(30):
        G = _random_separable(rng, 4)
        CG = corresponding_graph(G)
        assert hypergraph_from_graph(CG).faces == G.faces


def test_match_template_examples():
    cycle = H(4, (1, 2), (2, 3), (3, 4), (1, 4))
    assert match_template(cycle).template.id == 1
    full = H(4, (1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (2, 4), (2,), (3,), (4,))
    assert match_template(full).template.id == 17
    params = {k: 1 for k in ("i1", "i2", "i3", "i4", "i5", "i6", "j2", "j3", "j4")}
    D = frame_ideal(params)
    G, dm = hypergraph_of(D)
    m = match_template(G, dm.multiplicity)
    assert m.template.id == 17 and m.N == 9
    with pytest.raises(NotClassified):
        match_template(H(4, (1, 2, 3), (3, 4), (1,), (2,), (4,)))


def _frame_perm_images(t):
    G = t.hypergraph
    return {canonical_form(G.permuted(p)) for p in itertools.permutations([1, 2, 3, 4])}


def test_templates_pairwise_non_isomorphic():
    forms = [canonical_form(t.hypergraph) for t in TEMPLATES.values()]
    assert len(TEMPLATES) == 24 and len(set(forms)) == 24


def test_template_catalogue_is_complete():
    """Every 4-vertex class with the frame conditions appears exactly once."""
    from arithrank.ideal import height

    found = set()
    for packed in range(1, 1 << 15):
        faces = [b + 1 for b in range(15) if packed >> b & 1]
        if any(bin(f).count("1") > 2 for f in faces):
            continue
        try:
            G = Hypergraph(4, faces)
        except ValueError:
            continue
        if not (G.is_connected() and G.is_separable() and G.W and len(G.B) < 4):
            continue
        if height(ideal_from(G)) != 2:
            continue
        found.add(canonical_form(G))
    assert found == {canonical_form(t.hypergraph) for t in TEMPLATES.values()}


def test_template_files_match_catalogue():
    import json

    from arithrank import data

    for k, t in TEMPLATES.items():
        obj = json.loads(data.read_text(f"templates/H{k:02d}.json"))
        assert obj["edges"] == [list(e) for e in t.edges]
        assert obj["filled"] == list(t.b_set)
