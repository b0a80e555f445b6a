"""The hypergraph H(I) of a squarefree monomial ideal and related structures.

Vertices are labelled 1..mu in the public API.  A face is stored as a
bitmask whose bit ``v - 1`` marks vertex ``v``.  A hypergraph's face set can
itself be packed into one integer (bit ``F - 1`` for face mask ``F``); that
packed form is what the canonical form minimises.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable

from .errors import NotClassified, NotSeparable
from .ideal import MonomialIdeal, bits, minimalize, popcount, var_key


def face_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def face_vertices(face: int) -> tuple[int, ...]:
    return tuple(b + 1 for b in bits(face))


@dataclass(frozen=True)
class Hypergraph:
    mu: int
    faces: frozenset  # of int masks

    def __init__(self, mu: int, faces: Iterable):
        fs = set()
        for f in faces:
            m = f if isinstance(f, int) else face_of(f)
            if m <= 0 or m >> mu:
                raise ValueError(f"face {f!r} is not a non-empty subset of [{mu}]")
            fs.add(m)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "faces", frozenset(fs))
        union = 0
        for m in fs:
            union |= m
        if union != (1 << mu) - 1:
            raise ValueError("faces must cover every vertex")

    @classmethod
    def from_packed(cls, mu: int, packed: int) -> "Hypergraph":
        return cls(mu, [b + 1 for b in bits(packed)])

    @property
    def packed(self) -> int:
        p = 0
        for f in self.faces:
            p |= 1 << (f - 1)
        return p

    @property
    def full(self) -> int:
        return (1 << self.mu) - 1

    def sorted_faces(self) -> list[int]:
        return sorted(self.faces, key=lambda f: (popcount(f), face_vertices(f)))

    def __len__(self) -> int:
        return len(self.faces)

    @cached_property
    def b_mask(self) -> int:
        return sum(f for f in self.faces if f & (f - 1) == 0)

    @property
    def B(self) -> frozenset:
        return frozenset(face_vertices(self.b_mask))

    @property
    def W(self) -> frozenset:
        return frozenset(face_vertices(self.full & ~self.b_mask))

    @property
    def dim(self) -> int:
        return max(popcount(f) for f in self.faces) - 1

    def is_separable(self) -> bool:
        for i in range(self.mu):
            for j in range(self.mu):
                if i != j and not any(f >> i & 1 and not f >> j & 1 for f in self.faces):
                    return False
        return True

    def is_connected(self) -> bool:
        seen = 1
        grew = True
        while grew:
            grew = False
            for f in self.faces:
                if f & seen and f & ~seen:
                    seen |= f
                    grew = True
        return seen == self.full

    def restrict(self, U: Iterable[int]) -> frozenset:
        """Faces contained in the vertex set U (the restriction H_U)."""
        u = face_of(U)
        return frozenset(f for f in self.faces if f & ~u == 0)

    def skeleton(self, i: int) -> frozenset:
        """Faces of dimension exactly i (the family H^i)."""
        return frozenset(f for f in self.faces if popcount(f) == i + 1)

    def permuted(self, perm) -> "Hypergraph":
        """Image under the vertex map v -> perm[v - 1] (1-based values)."""
        return Hypergraph(self.mu, [_image(f, perm) for f in self.faces])

    def to_json(self) -> dict:
        return {"mu": self.mu, "faces": [list(face_vertices(f)) for f in self.sorted_faces()]}

    @classmethod
    def from_json(cls, obj) -> "Hypergraph":
        return cls(obj["mu"], [tuple(f) for f in obj["faces"]])

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, face_vertices(f))) + "}" for f in self.sorted_faces())
        return f"Hypergraph(mu={self.mu}, [{inner}])"


def _image(face: int, perm) -> int:
    m = 0
    for b in bits(face):
        m |= 1 << (perm[b] - 1)
    return m


@dataclass(frozen=True)
class Structure:
    B: frozenset
    W: frozenset
    dim: int
    connected: bool
    separable: bool


def structure(H: Hypergraph) -> Structure:
    return Structure(H.B, H.W, H.dim, H.is_connected(), H.is_separable())


@dataclass(frozen=True)
class DefiningMap:
    by_face: dict  # face mask -> tuple of variable names
    by_variable: dict  # name -> face mask

    def multiplicity(self, face: int) -> int:
        return len(self.by_face.get(face, ()))


def hypergraph_of(I: MonomialIdeal) -> tuple[Hypergraph, DefiningMap]:
    by_face: dict[int, list[str]] = {}
    by_var: dict[str, int] = {}
    for x, name in enumerate(I.vars):
        pattern = 0
        for j, g in enumerate(I.gens):
            if g >> x & 1:
                pattern |= 1 << j
        if pattern:
            by_face.setdefault(pattern, []).append(name)
            by_var[name] = pattern
    H = Hypergraph(I.mu, by_face)
    return H, DefiningMap({f: tuple(v) for f, v in by_face.items()}, by_var)


def hypergraph(I: MonomialIdeal) -> Hypergraph:
    return hypergraph_of(I)[0]


# -- isomorphism ------------------------------------------------------------


def _perms(mu: int):
    return [tuple(p + 1 for p in q) for q in itertools.permutations(range(mu))]


def canonical_packed(H: Hypergraph) -> int:
    """Least packed face set over all vertex relabelings."""
    if H.mu > 8:
        raise ValueError("canonical form is only supported for mu <= 8")
    faces = list(H.faces)
    best = None
    for perm in _perms(H.mu):
        p = 0
        for f in faces:
            p |= 1 << (_image(f, perm) - 1)
        if best is None or p < best:
            best = p
    return best


def canonical_form(H: Hypergraph) -> str:
    return format(canonical_packed(H), "x")


def canonical_hypergraph(H: Hypergraph) -> Hypergraph:
    return Hypergraph.from_packed(H.mu, canonical_packed(H))


def embed(H: Hypergraph, H2: Hypergraph) -> dict | None:
    """A vertex bijection sigma with sigma(F) in H2 for every face F of H."""
    if H.mu != H2.mu or len(H.faces) > len(H2.faces):
        return None
    mu = H.mu
    target = H2.faces
    # faces of H whose largest vertex is v are checked once v is placed
    by_last: list[list[int]] = [[] for _ in range(mu)]
    for f in H.faces:
        by_last[f.bit_length() - 1].append(f)
    deg = [sum(1 for f in H.faces if f >> v & 1) for v in range(mu)]
    deg2 = [sum(1 for f in target if f >> v & 1) for v in range(mu)]
    sizes = {}
    for f in H.faces:
        sizes[popcount(f)] = sizes.get(popcount(f), 0) + 1
    for k, c in sizes.items():
        if sum(1 for f in target if popcount(f) == k) < c:
            return None
    assign = [0] * mu

    def rec(v: int, used: int) -> bool:
        if v == mu:
            return True
        for w in range(mu):
            if used >> w & 1 or deg2[w] < deg[v]:
                continue
            assign[v] = w
            ok = True
            for f in by_last[v]:
                img = 0
                for b in bits(f):
                    img |= 1 << assign[b]
                if img not in target:
                    ok = False
                    break
            if ok and rec(v + 1, used | 1 << w):
                return True
        return False

    if rec(0, 0):
        return {v + 1: assign[v] + 1 for v in range(mu)}
    return None


def isomorphic(H: Hypergraph, H2: Hypergraph) -> bool:
    return len(H.faces) == len(H2.faces) and embed(H, H2) is not None


# -- ideals from hypergraphs -------------------------------------------------------


def ideal_from(
    H: Hypergraph,
    weights: int | dict | Callable[[int], int] = 1,
    prefix: str = "x",
) -> MonomialIdeal:
    """m_j = product over faces F containing j of A_F, with fresh A_F.

    Faces are numbered in (size, vertex tuple) order and each receives
    ``weights(F)`` variables named ``{prefix}1, {prefix}2, ...``.
    """
    if not H.is_separable():
        raise NotSeparable("hypergraph is not separable")
    gens: list[list[str]] = [[] for _ in range(H.mu)]
    counter = 0
    names: list[str] = []
    for f in H.sorted_faces():
        if callable(weights):
            w = weights(f)
        elif isinstance(weights, dict):
            w = weights.get(f, 1)
        else:
            w = weights
        if w < 1:
            raise ValueError("face weights must be positive")
        for _ in range(w):
            counter += 1
            name = f"{prefix}{counter}"
            names.append(name)
            for b in bits(f):
                gens[b].append(name)
    return minimalize(gens, ambient=names)


def reduced_ideal(H: Hypergraph) -> MonomialIdeal:
    return ideal_from(H, 1)


# -- corresponding graphs -------------------------------------------------------


@dataclass(frozen=True)
class CorrespondingGraph:
    """Bipartite graph between face vertices X and generator vertices Y."""

    nx: int
    ny: int
    edges: frozenset  # of (x, y) pairs, both 1-based

    def neighbours_y(self, y: int) -> frozenset:
        return frozenset(x for x, yy in self.edges if yy == y)

    def neighbours_x(self, x: int) -> frozenset:
        return frozenset(y for xx, y in self.edges if xx == x)

    def is_valid(self) -> bool:
        return self.is_connected() and self.condition_x() and self.condition_y()

    def condition_y(self) -> bool:
        ns = [self.neighbours_y(y) for y in range(1, self.ny + 1)]
        return all(not ns[i] <= ns[j] for i in range(self.ny) for j in range(self.ny) if i != j)

    def condition_x(self) -> bool:
        ns = [self.neighbours_x(x) for x in range(1, self.nx + 1)]
        return len(set(ns)) == len(ns) and all(ns)

    def is_connected(self) -> bool:
        if not self.edges:
            return self.nx + self.ny <= 1
        adj: dict = {}
        for x, y in self.edges:
            adj.setdefault(("x", x), set()).add(("y", y))
            adj.setdefault(("y", y), set()).add(("x", x))
        if len(adj) != self.nx + self.ny:
            return False
        start = next(iter(adj))
        seen = {start}
        stack = [start]
        while stack:
            for n in adj[stack.pop()]:
                if n not in seen:
                    seen.add(n)
                    stack.append(n)
        return len(seen) == len(adj)


def corresponding_graph(H: Hypergraph) -> CorrespondingGraph:
    faces = H.sorted_faces()
    edges = {(i + 1, v) for i, f in enumerate(faces) for v in face_vertices(f)}
    return CorrespondingGraph(len(faces), H.mu, frozenset(edges))


def hypergraph_from_graph(G: CorrespondingGraph) -> Hypergraph:
    return Hypergraph(G.ny, [G.neighbours_x(x) for x in range(1, G.nx + 1)])


# -- the template catalogue ---------------------------------------------------------

# Frame slots: i1..i6 sit on the edges below, j2..j4 on the singletons.
FRAME_EDGES = ((1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (2, 4))
FRAME_SINGLETONS = (2, 3, 4)

_CYCLE = ((1, 2), (2, 3), (3, 4), (1, 4))
_C13 = _CYCLE + ((1, 3),)
_C24 = _CYCLE + ((2, 4),)
_C1324 = _CYCLE + ((1, 3), (2, 4))
_T18 = ((1, 4), (1, 2), (3, 4), (1, 3))
_T21 = ((2, 3), (1, 2), (3, 4), (1, 3))
_T23 = ((1, 4), (1, 2), (3, 4))

_CATALOGUE = {
    1: (_CYCLE, ()),
    2: (_CYCLE, (4,)),
    3: (_CYCLE, (3, 4)),
    4: (_CYCLE, (2, 4)),
    5: (_CYCLE, (2, 3, 4)),
    6: (_C13, ()),
    7: (_C13, (4,)),
    8: (_C13, (3,)),
    9: (_C13, (3, 4)),
    10: (_C13, (2, 4)),
    11: (_C13, (2, 3, 4)),
    12: (_C24, (2, 4)),
    13: (_C24, (2, 3, 4)),
    14: (_C1324, ()),
    15: (_C1324, (4,)),
    16: (_C1324, (3, 4)),
    17: (_C1324, (2, 3, 4)),
    18: (_T18, (2,)),
    19: (_T18, (2, 3)),
    20: (_T18, (2, 3, 4)),
    21: (_T21, (3, 4)),
    22: (_T21, (2, 3, 4)),
    23: (_T23, (2, 3)),
    24: (_T23, (2, 3, 4)),
}

PARAM_NAMES = ("i1", "i2", "i3", "i4", "i5", "i6", "j2", "j3", "j4")


@dataclass(frozen=True)
class Template:
    id: int
    edges: tuple
    b_set: tuple

    @property
    def name(self) -> str:
        return f"H{self.id}"

    @property
    def hypergraph(self) -> Hypergraph:
        return Hypergraph(4, list(self.edges) + [(b,) for b in self.b_set])

    @property
    def free_params(self) -> tuple[str, ...]:
        """Frame parameters that are positive for this template."""
        out = []
        edge_set = {tuple(sorted(e)) for e in self.edges}
        for name, e in zip(PARAM_NAMES[:6], FRAME_EDGES):
            if e in edge_set:
                out.append(name)
        for name, u in zip(PARAM_NAMES[6:], FRAME_SINGLETONS):
            if u in self.b_set:
                out.append(name)
        return tuple(out)

    @property
    def forced_zero(self) -> tuple[str, ...]:
        free = set(self.free_params)
        return tuple(p for p in PARAM_NAMES if p not in free)

    def check_params(self, params: dict) -> None:
        from .errors import InconsistentParams

        for p in PARAM_NAMES:
            v = params.get(p, 0)
            if v < 0:
                raise InconsistentParams(f"{p} must be non-negative")
            if p in self.forced_zero and v:
                raise InconsistentParams(f"{p} is forced to zero for {self.name}")
            if p in self.free_params and v == 0:
                raise InconsistentParams(f"{p} must be positive for {self.name}")

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "edges": [list(e) for e in self.edges],
            "filled": list(self.b_set),
            "forced_zero": list(self.forced_zero),
        }


TEMPLATES = {k: Template(k, tuple(tuple(e) for e in v[0]), tuple(v[1])) for k, v in _CATALOGUE.items()}


def template(k: int) -> Template:
    return TEMPLATES[k]


@dataclass(frozen=True)
class TemplateMatch:
    template: Template
    labeling: dict  # vertex of H -> frame vertex
    params: dict  # i1..i6, j2..j4

    @property
    def N(self) -> int:
        return sum(self.params.values())


def frame_params(H: Hypergraph, labeling: dict, multiplicity: Callable[[int], int]) -> dict:
    params = {}
    inv = {w: v for v, w in labeling.items()}
    for name, (a, b) in zip(PARAM_NAMES[:6], FRAME_EDGES):
        f = face_of((inv[a], inv[b]))
        params[name] = multiplicity(f) if f in H.faces else 0
    for name, u in zip(PARAM_NAMES[6:], FRAME_SINGLETONS):
        f = face_of((inv[u],))
        params[name] = multiplicity(f) if f in H.faces else 0
    return params


def match_templates(H: Hypergraph, multiplicity: Callable[[int], int] | dict | None = None) -> list[TemplateMatch]:
    """Every (template, labeling) reproducing H, ordered by id then labeling."""
    if H.mu != 4 or H.dim > 1 or not H.is_connected() or not H.W:
        raise NotClassified("template matching needs mu = 4, dim <= 1, connected, W nonempty")
    if multiplicity is None:
        mult = lambda f: 1  # noqa: E731
    elif isinstance(multiplicity, dict):
        mult = lambda f: multiplicity[f]  # noqa: E731
    else:
        mult = multiplicity
    out = []
    for k in sorted(TEMPLATES):
        t = TEMPLATES[k]
        tfaces = t.hypergraph.faces
        if len(tfaces) != len(H.faces):
            continue
        for perm in _perms(4):
            if all(_image(f, perm) in tfaces for f in H.faces):
                labeling = {v + 1: perm[v] for v in range(4)}
                out.append(TemplateMatch(t, labeling, frame_params(H, labeling, mult)))
    return out


def match_template(H: Hypergraph, multiplicity=None) -> TemplateMatch:
    found = match_templates(H, multiplicity)
    if not found:
        raise NotClassified("hypergraph matches none of the 24 templates")
    return found[0]


def frame_ideal(params: dict, prefix_x: str = "x", prefix_y: str = "y") -> MonomialIdeal:
    """The dual-side frame ideal (X1X4X5, X1X2X6Y2, X2X3X5Y3, X3X4X6Y4).

    Slot s contributes variables x{s}_1..x{s}_{i_s} and singleton u
    contributes y{u}_1..y{u}_{j_u}.  Returned generators are in frame order.
    """
    X = {s: [f"{prefix_x}{s}_{t}" for t in range(1, params.get(f"i{s}", 0) + 1)] for s in range(1, 7)}
    Y = {u: [f"{prefix_y}{u}_{t}" for t in range(1, params.get(f"j{u}", 0) + 1)] for u in (2, 3, 4)}
    gens = [
        X[1] + X[4] + X[5],
        X[1] + X[2] + X[6] + Y[2],
        X[2] + X[3] + X[5] + Y[3],
        X[3] + X[4] + X[6] + Y[4],
    ]
    names = [v for s in range(1, 7) for v in X[s]] + [v for u in (2, 3, 4) for v in Y[u]]
    return minimalize(gens, ambient=names)


def sort_names(names: Iterable[str]) -> list[str]:
    return sorted(names, key=var_key)
