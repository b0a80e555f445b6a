"""Three-step search for minimal reduced generic sets.

Step 1 lists one canonical representative per isomorphism class of
connected separable hypergraphs on [mu] by scanning packed face sets in
shards.  Step 2 keeps the classes whose reduced ideal has the requested
height and projective dimension.  Step 3 walks the face-count levels from
the top and drops every class that is a single-face deletion of a class
one level up.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from dataclasses import dataclass, field
from multiprocessing import get_context
from pathlib import Path

import numpy as np

from ..hypergraph import Hypergraph, ideal_from
from . import kernels

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
SHARD_BITS = 20


@dataclass
class SearchShard:
    mu: int
    lo: int
    hi: int
    count: int = 0
    hist: dict = field(default_factory=dict)  # (height, pd) -> count, height >= 2 only
    survivors: dict = field(default_factory=dict)  # height -> sorted uint32 array (pd == target)
    f3_mismatches: int = 0
    done: bool = False

    def hist_json(self) -> dict:
        return {f"{h},{p}": c for (h, p), c in sorted(self.hist.items())}


@dataclass
class ScanResult:
    mu: int
    pd_target: int | None
    shards: list
    seconds: float = 0.0

    @property
    def step1_count(self) -> int:
        return sum(s.count for s in self.shards)

    @property
    def hist(self) -> dict:
        out: dict = {}
        for s in self.shards:
            for k, c in s.hist.items():
                out[k] = out.get(k, 0) + c
        return dict(sorted(out.items()))

    @property
    def f3_mismatches(self) -> int:
        return sum(s.f3_mismatches for s in self.shards)

    def survivors(self, height: int) -> np.ndarray:
        parts = [s.survivors[height] for s in self.shards if height in s.survivors]
        if not parts:
            return np.zeros(0, dtype=np.uint32)
        return np.sort(np.concatenate(parts))


def shard_bounds(mu: int, shard_bits: int = SHARD_BITS) -> list[tuple[int, int]]:
    space = kernels.tables(mu).space
    step = min(1 << shard_bits, space)
    return [(lo, min(lo + step, space)) for lo in range(0, space, step)]


def process_shard(mu: int, lo: int, hi: int, pd_target: int | None) -> SearchShard:
    T = kernels.tables(mu)
    out = np.zeros(hi - lo, dtype=np.uint32)
    n = kernels.scan_range(lo, hi, T.perm_tables, T.stars, mu, out)
    shard = SearchShard(mu, lo, hi, count=int(n), done=True)
    if pd_target is None or n == 0:
        return shard
    arr = out[:n]
    hs = np.zeros(n, dtype=np.int64)
    ps = np.zeros(n, dtype=np.int64)
    kernels.classify(arr, n, T.stars, mu, T.supersets, 2, hs, ps, 2)
    keep = hs >= 2
    pairs, counts = np.unique(np.stack([hs[keep], ps[keep]], axis=1), axis=0, return_counts=True)
    shard.hist = {(int(h), int(p)): int(c) for (h, p), c in zip(pairs, counts)}
    sel = keep & (ps == pd_target)
    if sel.any():
        chosen = arr[sel].copy()
        # second field as a guard: the same classification over F_3
        hs3 = np.zeros(len(chosen), dtype=np.int64)
        ps3 = np.zeros(len(chosen), dtype=np.int64)
        kernels.classify(chosen, len(chosen), T.stars, mu, T.supersets, 3, hs3, ps3, 2)
        shard.f3_mismatches = int((ps3 != pd_target).sum())
        chosen_h = hs[sel]
        for h in np.unique(chosen_h):
            shard.survivors[int(h)] = np.sort(chosen[chosen_h == h])
    return shard


def _work(args):
    return process_shard(*args)


# -- checkpointing -------------------------------------------------------------


def _config(mu: int, shard_bits: int, pd_target) -> dict:
    return {"mu": mu, "shard_bits": shard_bits, "pd_target": pd_target, "format": FORMAT_VERSION}


def config_hash(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:16]


def _file_hash(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def write_hex(path: Path, masks) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text("".join(f"{int(m):x}\n" for m in masks), encoding="ascii")
    os.replace(tmp, path)


def read_hex(path: Path) -> np.ndarray:
    text = path.read_text(encoding="ascii").split()
    return np.array([int(t, 16) for t in text], dtype=np.uint32)


class Checkpoint:
    """Manifest plus survivor files in one directory."""

    def __init__(self, directory, cfg: dict):
        self.dir = Path(directory)
        self.cfg = cfg
        self.path = self.dir / "manifest.json"
        self.entries: dict = {}

    def load(self) -> int:
        if not self.path.exists():
            return 0
        data = json.loads(self.path.read_text(encoding="utf-8"))
        if data.get("config_hash") != config_hash(self.cfg):
            log.warning("checkpoint configuration differs; starting over")
            return 0
        for e in data.get("shards", []):
            if not e.get("done"):
                continue
            ok = True
            for h, (name, digest) in e.get("survivors", {}).items():
                f = self.dir / name
                if not f.exists() or _file_hash(f) != digest:
                    ok = False
            if ok:
                self.entries[(e["lo"], e["hi"])] = e
        return len(self.entries)

    def shard_from_entry(self, e: dict) -> SearchShard:
        s = SearchShard(self.cfg["mu"], e["lo"], e["hi"], e["count"], done=True)
        s.hist = {tuple(int(x) for x in k.split(",")): v for k, v in e.get("hist", {}).items()}
        s.f3_mismatches = e.get("f3_mismatches", 0)
        for h, (name, _digest) in e.get("survivors", {}).items():
            s.survivors[int(h)] = read_hex(self.dir / name)
        return s

    def record(self, s: SearchShard) -> None:
        files = {}
        if s.survivors:
            (self.dir / "shards").mkdir(parents=True, exist_ok=True)
        for h, arr in sorted(s.survivors.items()):
            name = f"shards/{s.lo:08x}.h{h}.hex"
            write_hex(self.dir / name, arr)
            files[str(h)] = [name, _file_hash(self.dir / name)]
        self.entries[(s.lo, s.hi)] = {
            "lo": s.lo,
            "hi": s.hi,
            "count": s.count,
            "hist": s.hist_json(),
            "f3_mismatches": s.f3_mismatches,
            "survivors": files,
            "done": True,
        }

    def flush(self) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        body = dict(self.cfg)
        body["config_hash"] = config_hash(self.cfg)
        body["filters"] = {
            "step1": ["covering", "separable", "connected", "canonical"],
            "step2": {"height": ">=2 recorded", "pd": self.cfg["pd_target"], "field": "F2, survivors rechecked over F3"},
        }
        body["shards"] = [self.entries[k] for k in sorted(self.entries)]
        tmp = self.path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(body, indent=1, sort_keys=True), encoding="utf-8")
        os.replace(tmp, self.path)


def scan(
    mu: int,
    pd_target: int | None = None,
    jobs: int = 1,
    checkpoint=None,
    resume: bool = False,
    shard_bits: int = SHARD_BITS,
    progress=None,
) -> ScanResult:
    """Steps 1 and (optionally) 2 over every shard; order-independent merge."""
    if not 1 <= mu <= 5:
        raise ValueError("enumeration supports 1 <= mu <= 5")
    t0 = time.monotonic()
    bounds = shard_bounds(mu, shard_bits)
    ck = Checkpoint(checkpoint, _config(mu, shard_bits, pd_target)) if checkpoint else None
    done: dict = {}
    if ck is not None and resume:
        ck.load()
        for key, e in ck.entries.items():
            done[key] = ck.shard_from_entry(e)
    pending = [(mu, lo, hi, pd_target) for lo, hi in bounds if (lo, hi) not in done]
    last_flush = time.monotonic()

    def absorb(s: SearchShard):
        nonlocal last_flush
        done[(s.lo, s.hi)] = s
        if ck is not None:
            ck.record(s)
            if time.monotonic() - last_flush > 10:
                ck.flush()
                last_flush = time.monotonic()
        if progress is not None:
            progress(len(done), len(bounds))

    if jobs > 1 and len(pending) > 1:
        with get_context("spawn").Pool(jobs) as pool:
            for s in pool.imap_unordered(_work, pending):
                absorb(s)
    else:
        for args in pending:
            absorb(_work(args))
    if ck is not None:
        ck.flush()
    shards = [done[b] for b in bounds]
    return ScanResult(mu, pd_target, shards, time.monotonic() - t0)


# -- Step 1 stream -------------------------------------------------------------


def enumerate_masks(mu: int, **kw) -> np.ndarray:
    """All canonical packed masks (small mu only; mu = 5 has about 1.7e7)."""
    T = kernels.tables(mu)
    out = np.zeros(T.space, dtype=np.uint32) if mu <= 4 else None
    if out is None:
        raise ValueError("use scan() for mu = 5; the full stream is too large to hold as objects")
    n = kernels.scan_range(0, T.space, T.perm_tables, T.stars, mu, out)
    return out[:n].copy()


def enumerate_hypergraphs(mu: int):
    """One canonical Hypergraph per class, in increasing packed order."""
    if mu <= 4:
        for m in enumerate_masks(mu):
            yield Hypergraph.from_packed(mu, int(m))
        return
    T = kernels.tables(mu)
    for lo, hi in shard_bounds(mu):
        out = np.zeros(hi - lo, dtype=np.uint32)
        n = kernels.scan_range(lo, hi, T.perm_tables, T.stars, mu, out)
        for m in out[:n]:
            yield Hypergraph.from_packed(mu, int(m))


# -- Step 2 --------------------------------------------------------------------


def popcounts(arr: np.ndarray) -> np.ndarray:
    x = arr.astype(np.uint64)
    c = np.zeros(len(x), dtype=np.int64)
    while x.any():
        c += (x & 1).astype(np.int64)
        x >>= np.uint64(1)
    return c


def level_sets(masks: np.ndarray) -> dict:
    """{face count: sorted masks}."""
    masks = np.sort(np.asarray(masks, dtype=np.uint32))
    pc = popcounts(masks)
    return {int(i): masks[pc == i] for i in np.unique(pc)}


def filter_property(result: ScanResult, height: int) -> dict:
    """P2 as level sets from a scan that recorded survivors for its pd target."""
    return level_sets(result.survivors(height))


def filter_stream(masks, mu: int, height: int, pd_target: int) -> dict:
    """P2 as level sets from an explicit list of canonical masks."""
    T = kernels.tables(mu)
    arr = np.asarray(masks, dtype=np.uint32)
    hs = np.zeros(len(arr), dtype=np.int64)
    ps = np.zeros(len(arr), dtype=np.int64)
    if len(arr):
        kernels.classify(arr, len(arr), T.stars, mu, T.supersets, 2, hs, ps, 1)
    return level_sets(arr[(hs == height) & (ps == pd_target)])


# -- Step 3 --------------------------------------------------------------------


def maximal_set(levels: dict, mu: int) -> np.ndarray:
    """The single-deletion procedure, level by level from the top."""
    T = kernels.tables(mu)
    kept = []
    for i in sorted(levels, reverse=True):
        members = levels[i]
        above = levels.get(i + 1)
        if above is None or len(above) == 0:
            kept.append(members)
            continue
        out = np.zeros(len(above) * (i + 1), dtype=np.uint32)
        n = kernels.deletion_forms(above, T.stars, mu, T.perm_tables, out)
        forms = np.unique(out[:n])
        kept.append(members[~np.isin(members, forms)])
    if not kept:
        return np.zeros(0, dtype=np.uint32)
    return np.sort(np.concatenate(kept))


def poset_maximality_oracle(levels: dict, mu: int, candidates=None) -> np.ndarray:
    """Members not embeddable into any member of a strictly higher level."""
    T = kernels.tables(mu)
    if candidates is None:
        candidates = np.concatenate(list(levels.values())) if levels else np.zeros(0, dtype=np.uint32)
    out = []
    for h in np.sort(np.asarray(candidates, dtype=np.uint32)):
        i = bin(int(h)).count("1")
        higher = [arr for lvl, arr in levels.items() if lvl > i]
        if higher and kernels.embeds_into_any(np.uint32(h), np.concatenate(higher), T.all_tables) >= 0:
            continue
        out.append(h)
    return np.array(out, dtype=np.uint32)


def uncovered(levels: dict, maximal: np.ndarray, mu: int, sample=None) -> list[int]:
    """Members of P2 (or of a sample) that embed into no member of P3."""
    T = kernels.tables(mu)
    pool = np.concatenate(list(levels.values())) if sample is None else np.asarray(sample, dtype=np.uint32)
    top = np.asarray(maximal, dtype=np.uint32)
    return [int(h) for h in pool if kernels.embeds_into_any(np.uint32(h), top, T.all_tables) < 0]


# -- the generic set -----------------------------------------------------------


@dataclass
class GenericSetResult:
    mu: int
    height: int
    pd: int
    step1_count: int
    step2_count: int
    levels: dict
    maximal: np.ndarray
    oracle: np.ndarray | None
    hist: dict
    f3_mismatches: int
    seconds: float

    @property
    def hypergraphs(self) -> list[Hypergraph]:
        hs = [Hypergraph.from_packed(self.mu, int(m)) for m in self.maximal]
        return sorted(hs, key=lambda H: (len(H.faces), H.packed))

    @property
    def ideals(self):
        return [ideal_from(H, 1) for H in self.hypergraphs]

    @property
    def oracle_agrees(self) -> bool | None:
        if self.oracle is None:
            return None
        return sorted(map(int, self.oracle)) == sorted(map(int, self.maximal))

    def manifest(self) -> dict:
        return {
            "mu": self.mu,
            "height": self.height,
            "pd": self.pd,
            "counts": {
                "step1": self.step1_count,
                "step2": self.step2_count,
                "step3": len(self.maximal),
            },
            "height_pd_histogram": {f"{h},{p}": c for (h, p), c in self.hist.items()},
            "f3_mismatches": self.f3_mismatches,
            "levels": {str(k): len(v) for k, v in sorted(self.levels.items())},
            "maximal": [format(int(m), "x") for m in sorted(map(int, self.maximal))],
            "face_counts": [len(H.faces) for H in self.hypergraphs],
            "oracle_agrees": self.oracle_agrees,
        }


def generic_set(
    mu: int,
    height: int,
    pd: int,
    jobs: int = 1,
    checkpoint=None,
    resume: bool = False,
    shard_bits: int = SHARD_BITS,
    oracle: bool = True,
    progress=None,
) -> GenericSetResult:
    t0 = time.monotonic()
    res = scan(mu, pd, jobs=jobs, checkpoint=checkpoint, resume=resume, shard_bits=shard_bits, progress=progress)
    levels = filter_property(res, height)
    top = maximal_set(levels, mu)
    checked = poset_maximality_oracle(levels, mu, candidates=top) if oracle else None
    return GenericSetResult(
        mu=mu,
        height=height,
        pd=pd,
        step1_count=res.step1_count,
        step2_count=sum(len(v) for v in levels.values()),
        levels=levels,
        maximal=top,
        oracle=checked,
        hist=res.hist,
        f3_mismatches=res.f3_mismatches,
        seconds=time.monotonic() - t0,
    )
