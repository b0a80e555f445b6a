"""Compiled scan kernels over packed face sets.

A hypergraph on [mu] is packed into one integer with bit F-1 set for each
face mask F, so mu = 5 needs 31 bits.  Permutations act through lookup
tables indexed by the four bytes of a packed mask.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numba import njit


@dataclass(frozen=True)
class Tables:
    mu: int
    perm_tables: np.ndarray  # (mu! - 1, 4, 256) uint32, identity excluded
    all_tables: np.ndarray  # (mu!, 4, 256) uint32, identity first
    stars: np.ndarray  # (mu,) packed set of faces containing vertex v
    supersets: np.ndarray  # (2^mu,) packed set of faces containing a given face

    @property
    def nfaces(self) -> int:
        return (1 << self.mu) - 1

    @property
    def space(self) -> int:
        return 1 << self.nfaces


def _image(perm, face: int) -> int:
    g = 0
    for v, w in enumerate(perm):
        if face >> v & 1:
            g |= 1 << w
    return g


@lru_cache(maxsize=None)
def tables(mu: int) -> Tables:
    if not 1 <= mu <= 5:
        raise ValueError("packed kernels support 1 <= mu <= 5")
    nf = (1 << mu) - 1
    perms = list(itertools.permutations(range(mu)))
    # identity first, then by number of moved points so transpositions reject early
    perms.sort(key=lambda p: sum(1 for i in range(mu) if p[i] != i))
    table = np.zeros((len(perms), 4, 256), dtype=np.uint32)
    for pi, p in enumerate(perms):
        for c in range(4):
            for byte in range(256):
                m = 0
                for b in range(8):
                    f = 8 * c + b + 1
                    if byte >> b & 1 and f <= nf:
                        m |= 1 << (_image(p, f) - 1)
                table[pi, c, byte] = m
    stars = np.array(
        [sum(1 << (f - 1) for f in range(1, nf + 1) if f >> v & 1) for v in range(mu)], dtype=np.uint32
    )
    sup = np.array(
        [sum(1 << (f - 1) for f in range(1, nf + 1) if f & c == c) for c in range(nf + 1)], dtype=np.uint32
    )
    return Tables(mu, table[1:].copy(), table, stars, sup)


@njit(cache=True)
def _apply(T, p, h):
    return T[p, 0, h & 255] | T[p, 1, (h >> 8) & 255] | T[p, 2, (h >> 16) & 255] | T[p, 3, (h >> 24) & 255]


@njit(cache=True)
def is_separable_connected(h, S, mu):
    for i in range(mu):
        if (h & S[i]) == 0:
            return False
    for i in range(mu):
        for j in range(mu):
            if i != j and (h & S[i] & ~S[j]) == 0:
                return False
    seen = 1
    frontier = 1
    while frontier:
        nf = 0
        for i in range(mu):
            if frontier >> i & 1:
                for j in range(mu):
                    if not (seen >> j & 1) and (h & S[i] & S[j]) != 0:
                        nf |= 1 << j
        seen |= nf
        frontier = nf
    return seen == (1 << mu) - 1


@njit(cache=True)
def is_canonical(h, PT):
    for p in range(PT.shape[0]):
        if _apply(PT, p, h) < h:
            return False
    return True


@njit(cache=True)
def canonical(h, PT):
    best = h
    for p in range(PT.shape[0]):
        im = _apply(PT, p, h)
        if im < best:
            best = im
    return best


@njit(cache=True)
def scan_range(lo, hi, PT, S, mu, out):
    """Canonical connected separable masks in [lo, hi); returns how many."""
    n = 0
    for H in range(lo, hi):
        h = np.uint32(H)
        if not is_separable_connected(h, S, mu):
            continue
        if is_canonical(h, PT):
            out[n] = h
            n += 1
    return n


@njit(cache=True)
def _popc(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def height_of(h, mu, SUP):
    """Least number of faces covering [mu]; exact for connected H with mu <= 5."""
    full = (1 << mu) - 1
    if (h >> (full - 1)) & 1:
        return 1
    for f in range(1, full + 1):
        if (h >> (f - 1)) & 1 and h & SUP[full ^ f]:
            return 2
    for f in range(1, full + 1):
        if (h >> (f - 1)) & 1:
            for g in range(f + 1, full + 1):
                if (h >> (g - 1)) & 1 and h & SUP[full ^ (f | g)]:
                    return 3
    for f in range(1, full + 1):
        if (h >> (f - 1)) & 1:
            for g in range(f + 1, full + 1):
                if (h >> (g - 1)) & 1:
                    for k in range(g + 1, full + 1):
                        if (h >> (k - 1)) & 1 and h & SUP[full ^ (f | g | k)]:
                            return 4
    return mu


@njit(cache=True)
def _rank_mod(mat, nr, nc, p):
    r = 0
    for c in range(nc):
        piv = -1
        for i in range(r, nr):
            if mat[i, c] % p != 0:
                piv = i
                break
        if piv < 0:
            continue
        for k in range(nc):
            t = mat[r, k]
            mat[r, k] = mat[piv, k]
            mat[piv, k] = t
        inv = 1
        a = mat[r, c] % p
        while (a * inv) % p != 1:
            inv += 1
        for k in range(nc):
            mat[r, k] = (mat[r, k] * inv) % p
        for i in range(nr):
            if i != r and mat[i, c] % p != 0:
                f = mat[i, c] % p
                for k in range(nc):
                    mat[i, k] = (mat[i, k] - f * mat[r, k]) % p
        r += 1
        if r == nr:
            break
    return r


@njit(cache=True)
def _boundary_rank(faces_k, nk, faces_km1, nkm1, p):
    """Rank of the boundary map from k-subsets to (k-1)-subsets over F_p."""
    if nk == 0 or nkm1 == 0:
        return 0
    mat = np.zeros((nk, nkm1), dtype=np.int64)
    for a in range(nk):
        t = faces_k[a]
        sign = 1
        for v in range(32):
            if t >> v & 1:
                s = t & ~(1 << v)
                for b in range(nkm1):
                    if faces_km1[b] == s:
                        mat[a, b] = sign % p
                        break
                sign = -sign
    return _rank_mod(mat, nk, nkm1, p)


@njit(cache=True)
def _gf2_boundary_rank(faces_k, nk):
    """Boundary rank over F_2: XOR basis on faces encoded as bits of a uint64."""
    basis = np.zeros(64, dtype=np.uint64)
    r = 0
    for a in range(nk):
        t = faces_k[a]
        v = np.uint64(0)
        for b in range(32):
            if t >> b & 1:
                v |= np.uint64(1) << np.uint64(t & ~(1 << b))
        while v:
            hb = 63
            while not (v >> np.uint64(hb)) & np.uint64(1):
                hb -= 1
            if basis[hb] == 0:
                basis[hb] = v
                r += 1
                break
            v ^= basis[hb]
    return r


@njit(cache=True)
def pd_of(h, S, mu, p):
    """pd S/I_H over F_p from the Taylor strands below each lcm-lattice element."""
    nsub = 1 << mu
    M = np.zeros(nsub, dtype=np.uint32)
    for s in range(nsub):
        m = np.uint32(0)
        for v in range(mu):
            if s >> v & 1:
                m |= S[v]
        M[s] = h & m
    closed = np.zeros(nsub, dtype=np.int64)
    for s in range(nsub):
        c = 0
        for j in range(mu):
            if (h & S[j] & ~M[s]) == 0:
                c |= 1 << j
        closed[s] = c
    pd = 1
    fk = np.zeros(16, dtype=np.int64)
    fkm = np.zeros(16, dtype=np.int64)
    for size in range(mu, 1, -1):
        if size <= pd:
            break
        for A in range(1, nsub):
            if closed[A] != A or _popc(A) != size:
                continue
            # chain groups of Delta_<A by cardinality k, ranks of boundaries
            cnt = np.zeros(mu + 2, dtype=np.int64)
            ranks = np.zeros(mu + 2, dtype=np.int64)
            nprev = 0
            for k in range(0, size + 1):
                n = 0
                for t in range(nsub):
                    if (t & ~A) == 0 and _popc(t) == k and M[t] != M[A]:
                        fk[n] = t
                        n += 1
                cnt[k] = n
                if k >= 1:
                    if p == 2:
                        ranks[k] = _gf2_boundary_rank(fk, n)
                    else:
                        ranks[k] = _boundary_rank(fk, n, fkm, nprev, p)
                for q in range(n):
                    fkm[q] = fk[q]
                nprev = n
            for k in range(size - 1, -1, -1):
                hk = cnt[k] - ranks[k] - ranks[k + 1]
                if hk > 0:
                    if k + 1 > pd:
                        pd = k + 1
                    break
    return pd


@njit(cache=True)
def classify(arr, n, S, mu, SUP, p, heights, pds, min_height):
    """Heights of all members; pd only where height >= min_height (else -1)."""
    for t in range(n):
        heights[t] = height_of(arr[t], mu, SUP)
        if heights[t] >= min_height:
            pds[t] = pd_of(arr[t], S, mu, p)
        else:
            pds[t] = -1


@njit(cache=True)
def deletion_forms(arr, S, mu, PT, out):
    """Canonical forms of the connected separable single-face deletions."""
    n = 0
    for t in range(arr.shape[0]):
        h = arr[t]
        rest = h
        while rest:
            low = rest & (~rest + np.uint32(1))
            rest ^= low
            g = h ^ low
            if is_separable_connected(g, S, mu):
                best = g
                for q in range(PT.shape[0]):
                    im = _apply(PT, q, g)
                    if im < best:
                        best = im
                out[n] = best
                n += 1
    return n


@njit(cache=True)
def embeds_into_any(h, arr, T):
    """Index of the first member g of arr with perm(h) a subset of g, else -1."""
    for t in range(arr.shape[0]):
        g = arr[t]
        if _popc(g) < _popc(h):
            continue
        for q in range(T.shape[0]):
            if (_apply(T, q, h) & ~g) == 0:
                return t
    return -1


def warm_up() -> None:
    """Trigger compilation on a tiny input."""
    T = tables(2)
    out = np.zeros(8, dtype=np.uint32)
    n = scan_range(0, 8, T.perm_tables, T.stars, 2, out)
    hs = np.zeros(n, dtype=np.int64)
    ps = np.zeros(n, dtype=np.int64)
    classify(out, n, T.stars, 2, T.supersets, 2, hs, ps, 1)
