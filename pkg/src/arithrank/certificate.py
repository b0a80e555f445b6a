"""Replayable certificates that a monomial ideal lies in a radical.

A certificate lists claimed generators g_1..g_r of J and a chain of steps
``t_s^k = sum c * ref`` where each ref is a generator or the target of an
earlier step.  Since every earlier target is already known to lie in
sqrt(J), each identity shows t_s^k, hence t_s, lies in sqrt(J) too.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from .errors import CertificateError, ParseError
from .ideal import MonomialIdeal
from .polynomial import Polynomial, member_monomial_ideal, parse_polynomial


@dataclass(frozen=True)
class Ref:
    kind: str  # "gen" or "step"
    index: int  # 1-based

    def __str__(self) -> str:
        return f"{self.kind}:{self.index}"


@dataclass
class Step:
    target: Polynomial
    power: int
    terms: list  # list of (cofactor Polynomial, Ref)


@dataclass
class RadicalCertificate:
    generators: list
    steps: list = field(default_factory=list)
    conclusions: list = field(default_factory=list)  # (step index, label)

    # -- construction helpers
    def add_step(self, target: Polynomial, power: int, terms) -> int:
        self.steps.append(Step(target, power, [(c, r) for c, r in terms]))
        return len(self.steps)

    def conclude(self, step: int, label: str) -> None:
        self.conclusions.append((step, label))

    def value(self, ref: Ref) -> Polynomial:
        if ref.kind == "gen":
            return self.generators[ref.index - 1]
        return self.steps[ref.index - 1].target

    def subs(self, mapping: Mapping) -> "RadicalCertificate":
        """Apply a ring map to every polynomial in the certificate."""
        gens = [g.subs(mapping) for g in self.generators]
        steps = [
            Step(s.target.subs(mapping), s.power, [(c.subs(mapping), r) for c, r in s.terms])
            for s in self.steps
        ]
        return RadicalCertificate(gens, steps, list(self.conclusions))

    # -- text format
    def to_text(self) -> str:
        lines = []
        for i, g in enumerate(self.generators, start=1):
            lines.append(f"gen {i}: {g}")
        for s, st in enumerate(self.steps, start=1):
            rhs = " + ".join(f"({c})*{r}" for c, r in st.terms)
            lines.append(f"step {s}: ({st.target})^{st.power} = {rhs}")
        for s, label in self.conclusions:
            lines.append(f"conclude: step {s} proves {label}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "RadicalCertificate":
        return parse_certificate(text)


_GEN = re.compile(r"gen\s+(\d+)\s*:(.*)$")
_STEP = re.compile(r"step\s+(\d+)\s*:(.*)$")
_CONC = re.compile(r"conclude\s*:\s*step\s+(\d+)\s+proves\s+(\S+)\s*$")
_REF = re.compile(r"\s*\*\s*(gen|step)\s*:\s*(\d+)")


def _balanced(text: str, pos: int, lineno: int, col0: int) -> int:
    """Index just past the parenthesis group opening at ``pos``."""
    depth = 0
    for k in range(pos, len(text)):
        if text[k] == "(":
            depth += 1
        elif text[k] == ")":
            depth -= 1
            if depth == 0:
                return k + 1
    raise ParseError("unbalanced parentheses", lineno, col0 + pos)


def _parse_step(body: str, lineno: int, col0: int) -> Step:
    s = body.strip()
    off = col0 + (len(body) - len(body.lstrip()))
    if not s.startswith("("):
        raise ParseError("step target must be parenthesised", lineno, off)
    end = _balanced(s, 0, lineno, off)
    target = parse_polynomial(s[1:end - 1], lineno)
    rest = s[end:]
    mt = re.match(r"\s*\^\s*(\d+)\s*=", rest)
    if not mt:
        raise ParseError("expected '^k =' after the target", lineno, off + end)
    power = int(mt.group(1))
    if power < 1:
        raise ParseError("exponent must be positive", lineno, off + end)
    pos = end + mt.end()
    terms = []
    while True:
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos >= len(s):
            break
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
            while pos < len(s) and s[pos].isspace():
                pos += 1
        if pos >= len(s) or s[pos] != "(":
            raise ParseError("cofactor must be parenthesised", lineno, off + pos)
        close = _balanced(s, pos, lineno, off)
        cof = parse_polynomial(s[pos + 1:close - 1], lineno)
        mr = _REF.match(s, close)
        if not mr:
            raise ParseError("expected '*gen:i' or '*step:t'", lineno, off + close)
        terms.append((cof * sign, Ref(mr.group(1), int(mr.group(2)))))
        pos = mr.end()
    if not terms:
        raise ParseError("step has no right-hand side", lineno, off)
    return Step(target, power, terms)


def parse_certificate(text: str) -> RadicalCertificate:
    gens: dict[int, Polynomial] = {}
    steps: dict[int, Step] = {}
    conclusions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        stripped = line.strip()
        if m := _GEN.match(stripped):
            i = int(m.group(1))
            if i != len(gens) + 1:
                raise ParseError(f"generators must be numbered consecutively (got {i})", lineno, col0)
            gens[i] = parse_polynomial(m.group(2), lineno)
        elif m := _STEP.match(stripped):
            s = int(m.group(1))
            if s != len(steps) + 1:
                raise ParseError(f"steps must be numbered consecutively (got {s})", lineno, col0)
            steps[s] = _parse_step(m.group(2), lineno, col0 + m.start(2))
        elif m := _CONC.match(stripped):
            conclusions.append((int(m.group(1)), m.group(2)))
        else:
            raise ParseError("unrecognised line", lineno, col0)
    return RadicalCertificate(
        [gens[i] for i in sorted(gens)], [steps[s] for s in sorted(steps)], conclusions
    )


def load_certificate(path) -> RadicalCertificate:
    with open(path, encoding="utf-8") as fh:
        return parse_certificate(fh.read())


# -- checking ----------------------------------------------------------------


def replay_steps(cert: RadicalCertificate) -> None:
    """Check every step identity; raise CertificateError on the first failure."""
    for s, st in enumerate(cert.steps, start=1):
        rhs = Polynomial()
        for cof, ref in st.terms:
            if ref.kind == "gen" and not 1 <= ref.index <= len(cert.generators):
                raise CertificateError(f"step {s} cites missing generator {ref.index}", step=s)
            if ref.kind == "step" and not 1 <= ref.index < s:
                raise CertificateError(f"step {s} cites step {ref.index}, which is not earlier", step=s)
            rhs = rhs + cof * cert.value(ref)
        diff = st.target ** st.power - rhs
        if not diff.is_zero():
            raise CertificateError(f"step {s} identity fails; difference {diff}", step=s, difference=diff)


def check_certificate(cert: RadicalCertificate, I: MonomialIdeal) -> bool:
    """Replay the certificate and confirm it proves sqrt(J) = sqrt(I).

    Checks: every step identity holds exactly; every claimed generator lies
    in I; every minimal generator of I is divisible by a concluded target
    that is a monomial.
    """
    replay_steps(cert)
    for i, g in enumerate(cert.generators, start=1):
        if not member_monomial_ideal(g, I):
            raise CertificateError(f"generator {i} is not in the ideal", step=None, difference=g)
    proved = []
    for s, _label in cert.conclusions:
        if not 1 <= s <= len(cert.steps):
            raise CertificateError(f"conclusion cites missing step {s}")
        t = cert.steps[s - 1].target
        if not t.is_monomial():
            raise CertificateError(f"step {s} target is not a monomial", step=s)
        (mono, _c), = t.terms.items()
        proved.append({v for v, _ in mono})
    for m in I.supports:
        if not any(p <= m for p in proved):
            raise CertificateError(f"no conclusion covers generator {'*'.join(sorted(m))}")
    return True


def trivial_certificate(I: MonomialIdeal) -> RadicalCertificate:
    cert = RadicalCertificate([Polynomial.monomial(m) for m in I.generators])
    for i in range(1, I.mu + 1):
        s = cert.add_step(cert.generators[i - 1], 1, [(Polynomial.const(1), Ref("gen", i))])
        cert.conclude(s, f"m_{i}")
    return cert
