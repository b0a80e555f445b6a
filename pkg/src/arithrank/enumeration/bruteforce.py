"""Slow reference path for small mu, sharing no code with the kernels.

Every labeled face set is tried, classes are merged by canonical form,
the property is checked with the exact resolution code, and maximality is
decided by pairwise embedding tests.
"""

from __future__ import annotations

from ..hypergraph import Hypergraph, canonical_packed, embed, ideal_from
from ..ideal import height
from ..resolution import char_independent_pd


def labeled_classes(mu: int) -> set[int]:
    if mu > 4:
        raise ValueError("brute force is meant for mu <= 4")
    nf = (1 << mu) - 1
    classes = set()
    for packed in range(1, 1 << nf):
        faces = [b + 1 for b in range(nf) if packed >> b & 1]
        union = 0
        for f in faces:
            union |= f
        if union != nf:
            continue
        H = Hypergraph(mu, faces)
        if H.is_connected() and H.is_separable():
            classes.add(canonical_packed(H))
    return classes


def property_classes(mu: int, h: int, p: int, classes=None) -> set[int]:
    out = set()
    for packed in classes if classes is not None else labeled_classes(mu):
        I = ideal_from(Hypergraph.from_packed(mu, packed))
        if height(I) == h and char_independent_pd(I) == p:
            out.add(packed)
    return out


def maximal_classes(mu: int, members: set[int]) -> set[int]:
    graphs = {m: Hypergraph.from_packed(mu, m) for m in members}
    out = set()
    for m, H in graphs.items():
        if not any(
            len(G.faces) > len(H.faces) and embed(H, G) is not None
            for n, G in graphs.items()
            if n != m
        ):
            out.add(m)
    return out
