"""Command-line front end.

Every flag can also come from an ``ARITHRANK_<FLAG>`` environment variable;
an explicit flag wins.  Exit codes: 0 ok, 1 usage or input error,
2 verification failure, 3 out-of-scope input, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__, data
from .errors import ArithRankError, BudgetExhausted, VerificationFailed

log = logging.getLogger("arithrank")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_SCOPE, EXIT_BUDGET = 0, 1, 2, 3, 4


# -- configuration ---------------------------------------------------------------


def _env(name: str, default=None):
    return os.environ.get(f"ARITHRANK_{name.upper().replace('-', '_')}", default)


def _env_bool(name: str) -> bool:
    return str(_env(name, "")).lower() in ("1", "true", "yes", "on")


def resolve_input(name: str) -> Path:
    """A file path, or ``pkg:NAME`` for a bundled data file."""
    if name.startswith("pkg:"):
        return Path(str(data.path(name[4:])))
    return Path(name)


def _read(name: str) -> str:
    return resolve_input(name).read_text(encoding="utf-8")


def _sha256(name: str) -> str:
    return hashlib.sha256(resolve_input(name).read_bytes()).hexdigest()


@dataclass
class RunManifest:
    command: str
    arguments: dict
    inputs: dict = field(default_factory=dict)  # name -> sha256
    counts: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    version: str = __version__

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "arguments": self.arguments,
            "inputs": self.inputs,
            "counts": self.counts,
            "timings": self.timings,
            "outputs": sorted(self.outputs),
            "version": self.version,
        }

    def write(self, directory: Path) -> Path:
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / "manifest.json"
        self.outputs.append(path.name)
        path.write_text(json.dumps(self.to_json(), indent=1, sort_keys=True) + "\n", encoding="utf-8")
        return path


# -- output helpers --------------------------------------------------------------


def _emit(args, obj, text: str) -> None:
    if args.format == "json":
        print(json.dumps(obj, indent=1, sort_keys=True))
    else:
        print(text)


def _load_ideal(name: str):
    from .ideal import load_ideal

    return load_ideal(resolve_input(name))


# -- subcommands -----------------------------------------------------------------


def cmd_invariants(args) -> int:
    from .ideal import invariants

    inv = invariants(_load_ideal(args.file))
    d = inv.as_dict()
    _emit(args, d, "\n".join(f"{k}: {str(v).lower() if isinstance(v, bool) else v}" for k, v in d.items()))
    return EXIT_OK


def cmd_primes(args) -> int:
    from .ideal import minimal_primes, var_key

    dec = minimal_primes(_load_ideal(args.file))
    primes = sorted((sorted(p, key=var_key) for p in dec.sets), key=lambda p: [var_key(v) for v in p])
    _emit(args, {"primes": primes}, "\n".join("(" + ", ".join(p) + ")" for p in primes))
    return EXIT_OK


def cmd_dual(args) -> int:
    from .ideal import alexander_dual

    D = alexander_dual(_load_ideal(args.file))
    _emit(args, D.to_json(), D.to_text().rstrip("\n"))
    return EXIT_OK


def cmd_hypergraph(args) -> int:
    from .errors import NotClassified
    from .hypergraph import canonical_form, hypergraph_of, match_templates

    I = _load_ideal(args.file)
    H, dm = hypergraph_of(I)
    obj = H.to_json()
    obj.update(
        {
            "B": sorted(H.B),
            "W": sorted(H.W),
            "dim": H.dim,
            "connected": H.is_connected(),
            "separable": H.is_separable(),
            "canonical": canonical_form(H),
            "multiplicity": {"{" + ",".join(str(b + 1) for b in range(H.mu) if f >> b & 1) + "}": len(v)
                             for f, v in sorted(dm.by_face.items())},
        }
    )
    try:
        matches = match_templates(H, dm.multiplicity)
        obj["templates"] = sorted({m.template.id for m in matches})
    except NotClassified:
        obj["templates"] = []
    lines = [repr(H), f"B = {obj['B']}  W = {obj['W']}  dim = {obj['dim']}", f"canonical form: {obj['canonical']}"]
    if obj["templates"]:
        lines.append("templates: " + ", ".join(f"H{t}" for t in obj["templates"]))
    _emit(args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_betti(args) -> int:
    from .linalg import Field
    from .resolution import betti_table

    I = _load_ideal(args.file)
    T = betti_table(I, Field.parse(args.field), method=args.method)
    obj = T.to_json()
    graded = T.graded()
    rows = [
        f"beta_{i},{j} = {b}" for (i, j), b in sorted(graded.items())
    ] + [f"pd: {T.pd}  reg: {T.reg}"]
    _emit(args, obj, "\n".join(rows))
    return EXIT_OK


def cmd_pd(args) -> int:
    from .linalg import Field
    from .resolution import pd

    value = pd(_load_ideal(args.file), Field.parse(args.field), strategy=args.strategy)
    _emit(args, {"pd": value, "field": args.field}, str(value))
    return EXIT_OK


def _ara_result(args):
    from .construct import ara

    return ara(_load_ideal(args.file))


def cmd_ara(args) -> int:
    res = _ara_result(args)
    text = f"{res.value} ({res.justification})"
    if res.generators is not None:
        text += "\n" + "\n".join(f"g{k}: {g}" for k, g in enumerate(res.generators, start=1))
    _emit(args, res.to_json(), text)
    return EXIT_OK


def cmd_generators(args) -> int:
    t0 = time.monotonic()
    res = _ara_result(args)
    out = Path(args.out) if args.out else None
    cert_name = None
    manifest = RunManifest("generators", {"file": args.file}, inputs={args.file: _sha256(args.file)})
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        if res.certificate is not None:
            cert_name = "generators.cert"
            (out / cert_name).write_text(res.certificate.to_text(), encoding="utf-8")
            manifest.outputs.append(cert_name)
        (out / "generators.json").write_text(
            json.dumps(res.to_json(cert_name), indent=1, sort_keys=True) + "\n", encoding="utf-8"
        )
        manifest.outputs.append("generators.json")
        manifest.counts = {"value": res.value, "generators": len(res.generators or [])}
        manifest.timings = {"seconds": round(time.monotonic() - t0, 3)}
        manifest.write(out)
    _emit(args, res.to_json(cert_name), f"{res.value} ({res.justification})" + (f"; written to {out}" if out else ""))
    return EXIT_OK


def _progress(args):
    if args.format == "json":
        return None

    def report(done: int, total: int) -> None:
        if done == total or done % 64 == 0:
            print(f"  shards {done}/{total}", file=sys.stderr, flush=True)

    return report


def cmd_enumerate(args) -> int:
    from .enumeration.pipeline import scan, write_hex

    t0 = time.monotonic()
    res = scan(args.mu, None, jobs=args.jobs, checkpoint=args.checkpoint, resume=args.resume, progress=_progress(args))
    manifest = RunManifest("enumerate", {"mu": args.mu})
    manifest.counts = {"classes": res.step1_count, "shards": len(res.shards)}
    manifest.timings = {"seconds": round(time.monotonic() - t0, 3)}
    if args.out:
        out = Path(args.out)
        if args.mu <= 4:
            from .enumeration.pipeline import enumerate_masks

            out.mkdir(parents=True, exist_ok=True)
            write_hex(out / "classes.hex", enumerate_masks(args.mu))
            manifest.outputs.append("classes.hex")
        manifest.write(out)
    _emit(args, manifest.counts, f"mu={args.mu}: {res.step1_count} classes")
    return EXIT_OK


def cmd_generic_set(args) -> int:
    from .enumeration import generic_set
    from .enumeration.pipeline import write_hex

    t0 = time.monotonic()
    res = generic_set(
        args.mu, args.height, args.pd, jobs=args.jobs, checkpoint=args.checkpoint,
        resume=args.resume, progress=_progress(args),
    )
    body = res.manifest()
    manifest = RunManifest("generic-set", {"mu": args.mu, "height": args.height, "pd": args.pd})
    manifest.counts = body
    manifest.timings = {"seconds": round(time.monotonic() - t0, 3)}
    ideals = res.ideals
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for k, I in enumerate(ideals, start=1):
            name = f"generic{k}.ideal"
            (out / name).write_text(I.to_text(), encoding="utf-8")
            manifest.outputs.append(name)
        write_hex(out / "maximal.hex", sorted(map(int, res.maximal)))
        manifest.outputs.append("maximal.hex")
        manifest.write(out)
    lines = [
        f"step 1: {res.step1_count} classes",
        f"step 2: {res.step2_count} classes with height {args.height} and pd {args.pd}",
        f"step 3: {len(res.maximal)} maximal classes",
    ]
    for k, (H, I) in enumerate(zip(res.hypergraphs, ideals), start=1):
        lines.append(f"  {k}: {len(H.faces)} faces, {I.nvars} variables")
    if res.oracle_agrees is False:
        lines.append("direct maximality check disagrees")
    _emit(args, manifest.counts, "\n".join(lines))
    return EXIT_OK if res.oracle_agrees is not False and res.f3_mismatches == 0 else EXIT_VERIFY


def _parse_params(text: str) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        k, _, v = part.partition("=")
        out[k.strip()] = int(v)
    return out


def cmd_verify_sv(args) -> int:
    from .construct.ara import sv_construction, template_system
    from .construct.sv import H17Params, sv_check
    from .hypergraph import template

    if args.file:
        I = _load_ideal(args.file)
        res = sv_construction(I)
        obj = res.to_json()
        _emit(args, obj, f"valid SV system: {res.value} generators ({res.trace[0]})")
        return EXIT_OK
    if args.template is None:
        raise ArithRankError("give an ideal file or --template with --params")
    t = template(args.template)
    params = {k: 0 for k in t.forced_zero}
    params.update({k: 1 for k in t.free_params})
    params.update(_parse_params(args.params or ""))
    t.check_params(params)
    p = H17Params.from_dict(params)
    systems = template_system(t.id, p)
    I = p.ideal()
    reports = [sv_check(s, I if len(systems) == 1 else _union(s)) for s in systems]
    ok = all(reports)
    obj = {
        "template": t.id,
        "params": params,
        "groups": [s.to_json() for s in systems],
        "ok": ok,
        "count": sum(s.nonzero_count for s in systems),
        "witness": [str(r.witness) for r in reports if not r],
    }
    _emit(args, obj, f"H{t.id} {params}: {'pass' if ok else 'FAIL'}, {obj['count']} groups")
    return EXIT_OK if ok else EXIT_VERIFY


def _union(system):
    from .ideal import minimalize

    return minimalize(list(system.elements()))


def cmd_verify_cert(args) -> int:
    from .certificate import check_certificate, parse_certificate

    cert = parse_certificate(_read(args.cert))
    I = _load_ideal(args.ideal)
    check_certificate(cert, I)
    obj = {"ok": True, "steps": len(cert.steps), "generators": len(cert.generators)}
    _emit(args, obj, f"ok: {len(cert.steps)} steps replayed, {len(cert.generators)} generators in the ideal")
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.which == "enumeration":
        from .enumeration import bruteforce as bf
        from .enumeration.pipeline import enumerate_masks, filter_stream, maximal_set, poset_maximality_oracle

        rows = []
        ok = True
        for mu in args.mu:
            classes = bf.labeled_classes(mu)
            fast = set(map(int, enumerate_masks(mu)))
            same = classes == fast
            ok &= same
            rows.append({"mu": mu, "classes": len(classes), "agree": same})
            for h in range(1, mu + 1):
                for p in range(h, mu + 1):
                    slow = bf.property_classes(mu, h, p, classes)
                    levels = filter_stream(sorted(fast), mu, h, p)
                    quick = {int(x) for v in levels.values() for x in v}
                    if not slow and not quick:
                        continue
                    top_slow = bf.maximal_classes(mu, slow)
                    top = set(map(int, maximal_set(levels, mu)))
                    direct = set(map(int, poset_maximality_oracle(levels, mu)))
                    agree = slow == quick and top_slow == top == direct
                    ok &= agree
                    rows.append({"mu": mu, "height": h, "pd": p, "P2": len(slow), "P3": len(top_slow), "agree": agree})
        text = "\n".join(" ".join(f"{k}={v}" for k, v in r.items()) for r in rows)
        _emit(args, {"rows": rows, "ok": ok}, text)
        return EXIT_OK if ok else EXIT_VERIFY
    # radical membership by Groebner bases, against a certificate's generators
    from .certificate import parse_certificate
    from .groebner import groebner_radical_member

    cert = parse_certificate(_read(args.cert))
    I = _load_ideal(args.ideal)
    answers = {}
    for m in I.generators:
        answers[str(m)] = groebner_radical_member(m, cert.generators, args.budget_seconds)
    text = "\n".join(f"{k}: {v}" for k, v in answers.items())
    _emit(args, answers, text)
    if any(v == "no" for v in answers.values()):
        return EXIT_VERIFY
    if any(v == "timeout" for v in answers.values()):
        return EXIT_BUDGET
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=_env("format", "text"))
    common.add_argument("--field", default=_env("field", "Q"), help="Q, F2, F3 or Fp:<p>")
    common.add_argument("--jobs", type=int, default=int(_env("jobs", "1")))
    common.add_argument("--checkpoint", default=_env("checkpoint"))
    common.add_argument("--resume", action="store_true", default=_env_bool("resume"))
    common.add_argument("--budget-seconds", type=float, default=float(_env("budget_seconds", "30")))
    common.add_argument("--out", default=_env("out"))
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="arithrank", description="Arithmetical rank of squarefree monomial ideals.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    for name, func, help_text in (
        ("invariants", cmd_invariants, "mu, indeg, height, arithdeg, connectivity"),
        ("primes", cmd_primes, "minimal primes"),
        ("dual", cmd_dual, "Alexander dual"),
        ("hypergraph", cmd_hypergraph, "the hypergraph H(I)"),
        ("ara", cmd_ara, "arithmetical rank with its justification"),
        ("generators", cmd_generators, "write radical generators to --out"),
    ):
        add(name, func, help_text).add_argument("file")
    p = add("betti", cmd_betti, "multigraded Betti numbers")
    p.add_argument("file")
    p.add_argument("--method", choices=("lattice", "order", "taylor"), default="lattice")
    p = add("pd", cmd_pd, "projective dimension of S/I")
    p.add_argument("file")
    p.add_argument("--strategy", choices=("direct", "dual"), default="direct")
    p = add("enumerate", cmd_enumerate, "count hypergraph classes on [mu]")
    p.add_argument("--mu", type=int, required=True)
    p = add("generic-set", cmd_generic_set, "minimal reduced generic set")
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--pd", type=int, required=True)
    p = add("verify-sv", cmd_verify_sv, "check an SV system")
    p.add_argument("file", nargs="?")
    p.add_argument("--template", type=int)
    p.add_argument("--params", help="comma list such as i1=2,j3=1")
    p = add("verify-cert", cmd_verify_cert, "replay a radical certificate")
    p.add_argument("cert")
    p.add_argument("ideal")
    p = add("oracle", cmd_oracle, "independent cross-checks")
    osub = p.add_subparsers(dest="which", required=True)
    e = osub.add_parser("enumeration", parents=[common])
    e.add_argument("--mu", type=int, nargs="+", default=[2, 3, 4])
    r = osub.add_parser("radical", parents=[common])
    r.add_argument("cert")
    r.add_argument("ideal")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ArithRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
