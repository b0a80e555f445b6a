"""Explicit radical generators for the mu = 5, pd = 3 generic ideals.

J1, J2 and J3 are bundled with their generators in the order m1..m5 used by
the constructions below.  Any ideal with mu = 5, height 2, pd 3 and
connected support embeds into one of them, and substituting defining
variables into the triple (and into its certificate) gives generators for
that ideal.
"""

from __future__ import annotations

from functools import lru_cache

from .. import data
from ..certificate import RadicalCertificate, check_certificate, parse_certificate
from ..errors import NotInGenericSet, PreconditionError
from ..hypergraph import embed, hypergraph_of
from ..ideal import MonomialIdeal, height, is_connected, minimalize, ordered_generators, parse_ideal_text
from ..polynomial import Polynomial
from ..resolution import pd
from .result import AraResult, CITED, GENERIC


@lru_cache(maxsize=None)
def generic_ideal(k: int) -> MonomialIdeal:
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    return parse_ideal_text(data.read_text(f"J{k}.ideal"))


def generic_generators(k: int) -> list[frozenset]:
    """m1..m5 of J_k in their defining order."""
    return [frozenset(g) for g in ordered_generators(data.read_text(f"J{k}.ideal"))]


def _mono(names) -> Polynomial:
    return Polynomial.monomial(names)


def section7_generators(k: int) -> list[Polynomial]:
    m1, m2, m3, m4, m5 = generic_generators(k)
    M1, M2, M3, M4, M5 = (_mono(m) for m in (m1, m2, m3, m4, m5))
    if k == 1:
        g13, g23, g45 = _mono(m1 & m3), _mono(m2 & m3), _mono(m4 & m5)
        f1 = g13 + g45 * M2
        f2 = g23 + g45 * M1
        return [_mono(["x16"]) * f1 * f2, M1 * f1 + M4, M2 * f2 + M5]
    if k == 2:
        x13 = _mono(["x13"])
        q = M4 / x13 + M3
        return [x13 * q, M1 * M2 * q + M5, M1 + M2 + M3]
    raise ValueError("explicit triples exist only for k = 1, 2")


@lru_cache(maxsize=None)
def load_certificate_for(k: int) -> RadicalCertificate:
    if k not in (1, 2):
        raise ValueError("certificates are bundled for k = 1, 2")
    return parse_certificate(data.read_text(f"certs/case{k}.cert"))


def certificate_path(k: int):
    return data.path(f"certs/case{k}.cert")


def embedding_into(I: MonomialIdeal, k: int) -> dict | None:
    """Variable substitution realising I as a specialization of J_k, or None.

    Each variable of J_k goes to the product of the defining variables of the
    face of H(I) that the embedding sends onto its face, or to 1.
    """
    H, dm = hypergraph_of(I)
    Hk, dmk = hypergraph_of(generic_ideal(k))
    sigma = embed(H, Hk)
    if sigma is None:
        return None
    inv = {w: v for v, w in sigma.items()}
    mapping: dict = {}
    for face, names in dmk.by_face.items():
        pre = 0
        for b in range(Hk.mu):
            if face >> b & 1:
                pre |= 1 << (inv[b + 1] - 1)
        image = dm.by_face.get(pre, ())
        for n, name in enumerate(names):
            mapping[name] = _mono(image) if n == 0 and image else Polynomial.const(1)
    return mapping


def specialize_generators(I: MonomialIdeal, check: bool = True) -> AraResult:
    I = I.restricted()
    if I.mu != 5 or height(I) != 2 or not is_connected(I) or pd(I) != 3:
        raise PreconditionError("specialization needs mu = 5, height 2, pd 3 and connected support")
    for k in (1, 2):
        mapping = embedding_into(I, k)
        if mapping is None:
            continue
        cert = load_certificate_for(k).subs(mapping)
        if check:
            check_certificate(cert, I)
        return AraResult(
            3, GENERIC, list(cert.generators), certificate=cert,
            trace=[f"specialization of J{k}"], detail={"k": k},
        )
    if embedding_into(I, 3) is not None:
        return AraResult(3, CITED, None, trace=["embeds into J3 only; value from the Lyubeznik length"], detail={"k": 3})
    raise NotInGenericSet("hypergraph embeds into none of J1, J2, J3")


def random_substitution(k: int, rng, p_one: float = 0.3, max_block: int = 3, prefix: str = "z"):
    """Substitute pairwise coprime monomials (possibly 1) into J_k.

    Each variable becomes 1 with probability ``p_one`` and otherwise a
    product of 1..max_block fresh variables.  Returns the mapping and the
    resulting ideal, which need not keep the properties of J_k.
    """
    J = generic_ideal(k)
    mapping: dict = {}
    counter = 0
    for v in J.vars:
        if rng.random() < p_one:
            mapping[v] = ()
        else:
            block = []
            for _ in range(rng.randint(1, max_block)):
                counter += 1
                block.append(f"{prefix}{counter}")
            mapping[v] = tuple(block)
    gens = [[w for v in s for w in mapping[v]] for s in J.supports]
    if any(not g for g in gens):
        return mapping, None
    return mapping, minimalize(gens)


def random_generic_instance(k: int, rng, tries: int = 1000) -> MonomialIdeal:
    """A random substitution of J_k that keeps mu 5, height 2, pd 3, connected."""
    for _ in range(tries):
        _, I = random_substitution(k, rng)
        if I is None or I.mu != 5 or height(I) != 2 or not is_connected(I):
            continue
        if pd(I) == 3:
            return I
    raise RuntimeError("no admissible substitution found")
