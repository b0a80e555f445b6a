"""Write the radical-membership certificates for J1 and J2.

Each step's cofactors are obtained by exact monomial division, so a
divisibility claim that fails raises immediately.  The output files are
replayed independently by ``arithrank verify-cert``.

Usage: python scripts/make_certificates.py [OUTDIR]
"""

import sys
from pathlib import Path

from arithrank import data
from arithrank.certificate import RadicalCertificate, Ref, check_certificate, replay_steps
from arithrank.ideal import ordered_generators, parse_ideal_text
from arithrank.polynomial import Polynomial


def mono(names) -> Polynomial:
    return Polynomial.monomial(names)


def load(k):
    text = data.read_text(f"J{k}.ideal")
    gens = [frozenset(g) for g in ordered_generators(text)]
    return parse_ideal_text(text), gens


def quotient(num: Polynomial, den: Polynomial) -> Polynomial:
    """num / den for monomials, insisting on exact divisibility."""
    return num / den


class Builder:
    def __init__(self, gens):
        self.cert = RadicalCertificate(list(gens))

    def gen(self, i):
        return Ref("gen", i)

    def step(self, target, power, terms):
        s = self.cert.add_step(target, power, terms)
        replay_steps(RadicalCertificate(self.cert.generators, self.cert.steps[:s]))
        return Ref("step", s)

    def target(self, ref):
        return self.cert.value(ref)

    def via_multiple(self, target, known: Ref):
        """target^k is a monomial multiple of a known monomial target."""
        base = self.target(known)
        k = 1
        while True:
            try:
                cof = quotient(target ** k, base)
                return self.step(target, k, [(cof, known)])
            except ValueError:
                k += 1
                if k > 6:
                    raise


def case2():
    I, (m1, m2, m3, m4, m5) = load(2)
    M1, M2, M3, M4, M5 = (mono(m) for m in (m1, m2, m3, m4, m5))
    x13, x18 = mono(["x13"]), mono(["x18"])
    q = M4 / x13 + M3
    g1, g2, g3 = x13 * q, M1 * M2 * q + M5, M1 + M2 + M3
    b = Builder([g1, g2, g3])
    G1, G2, G3 = b.gen(1), b.gen(2), b.gen(3)
    s1 = b.step(x13 * M5, 1, [(x13, G2), (-(M1 * M2), G1)])
    s_m5 = b.via_multiple(M5, s1)
    # x13 x18 m3^2 = x18 m3 g1 - x18 m3 m4, and m5 divides x18 m3 m4
    s3 = b.step(x13 * x18 * M3 ** 2, 1, [(x18 * M3, G1), (-quotient(x18 * M3 * M4, M5), s_m5)])
    s_x18m3 = b.via_multiple(x18 * M3, s3)
    # m3^2 = m3 g3 - m3 m1 - m3 m2, both multiples of x18 m3
    s_m3 = b.step(M3, 2, [(M3, G3), (-(M1 / x18), s_x18m3), (-(M2 / x18), s_x18m3)])
    s_m4 = b.step(M4, 1, [(Polynomial.const(1), G1), (-x13, s_m3)])
    # m1 m2 (m4/x13) = g2 - m1 m2 m3 - m5, and m4/x13 divides m1 m2
    c = quotient(M1 * M2, M4 / x13)
    s_m1m2 = b.step(M1 * M2, 2, [(c, G2), (-(c * M1 * M2), s_m3), (-c, s_m5)])
    s_m1 = b.step(M1, 2, [(M1, G3), (-M1, s_m3), (Polynomial.const(-1), s_m1m2)])
    s_m2 = b.step(M2, 2, [(M2, G3), (-M2, s_m3), (Polynomial.const(-1), s_m1m2)])
    for ref, label in ((s_m1, "m_1"), (s_m2, "m_2"), (s_m3, "m_3"), (s_m4, "m_4"), (s_m5, "m_5")):
        b.cert.conclude(ref.index, label)
    check_certificate(b.cert, I)
    return b.cert


def case1():
    I, (m1, m2, m3, m4, m5) = load(1)
    M1, M2, M3, M4, M5 = (mono(m) for m in (m1, m2, m3, m4, m5))
    G13, G23, G45 = mono(m1 & m3), mono(m2 & m3), mono(m4 & m5)
    x12, x16, x17 = mono(["x12"]), mono(["x16"]), mono(["x17"])
    f1 = G13 + G45 * M2
    f2 = G23 + G45 * M1
    g1, g2, g3 = x16 * f1 * f2, M1 * f1 + M4, M2 * f2 + M5
    b = Builder([g1, g2, g3])
    G1, G2, G3 = b.gen(1), b.gen(2), b.gen(3)
    one = Polynomial.const(1)

    # x16 m4 m5 = x16 (g2 - f1 m1)(g3 - f2 m2)
    t1 = b.step(x16 * M4 * M5, 1, [(x16 * g3 - x16 * f2 * M2, G2), (-(x16 * f1 * M1), G3), (M1 * M2, G1)])
    t2 = b.via_multiple(mono(["x7", "x14", "x15", "x17", "x20"]) * M4, t1)
    t3 = b.via_multiple(mono(["x4", "x11", "x12", "x18", "x19"]) * M5, t1)

    # first half: x17 m4, x17 f1 m1, x16 G23 f1, then m3 and G45 m2
    c = quotient(x17 * M4 * M1, b.target(t2))
    t4 = b.step(x17 * M4, 2, [(x17 * x17 * M4, G2), (-(x17 * f1 * c), t2)])
    t5 = b.step(x17 * f1 * M1, 1, [(x17, G2), (-one, t4)])
    u = x16 * G23 * f1
    t6 = b.step(u, 2, [(x16 * f1 * G23, G1), (-(x16 * f1 * quotient(x16 * G23 * G45, x17)), t5)])
    a, bb = x16 * G23 * G13, x16 * G23 * G45 * M2
    cab = quotient(a * bb, b.target(t4))
    t7 = b.step(a, 2, [(a, t6), (-cab, t4)])
    t8 = b.step(bb, 2, [(bb, t6), (-cab, t4)])
    s_m3 = b.via_multiple(M3, t7)
    s_g45m2 = b.via_multiple(G45 * M2, t8)

    # mirror half through x12 m5
    c = quotient(x12 * M5 * M2, b.target(t3))
    t11 = b.step(x12 * M5, 2, [(x12 * x12 * M5, G3), (-(x12 * f2 * c), t3)])
    t12 = b.step(x12 * f2 * M2, 1, [(x12, G3), (-one, t11)])
    u2 = x16 * G13 * f2
    t13 = b.step(u2, 2, [(x16 * f2 * G13, G1), (-(x16 * f2 * quotient(x16 * G13 * G45, x12)), t12)])
    a2, b2 = x16 * G13 * G23, x16 * G13 * G45 * M1
    cab2 = quotient(a2 * b2, b.target(t11))
    t14 = b.step(b2, 2, [(b2, t13), (-cab2, t11)])
    s_g45m1 = b.via_multiple(G45 * M1, t14)

    # g2 = m1 G13 + m1 G45 m2 + m4 gives m1 and m4
    v = M1 * G13
    t_v = b.step(v, 2, [(v, G2), (-(v * M2), s_g45m1), (-quotient(v * M4, G45 * M1), s_g45m1)])
    s_m1 = b.via_multiple(M1, t_v)
    s_m4 = b.step(M4, 1, [(one, G2), (-G13, s_m1), (-M2, s_g45m1)])
    # g3 = m2 G23 + m2 G45 m1 + m5 gives m2 and m5
    w = M2 * G23
    t_w = b.step(w, 2, [(w, G3), (-(w * M1), s_g45m2), (-quotient(w * M5, G45 * M2), s_g45m2)])
    s_m2 = b.via_multiple(M2, t_w)
    s_m5 = b.step(M5, 1, [(one, G3), (-G23, s_m2), (-M1, s_g45m2)])
    for ref, label in ((s_m1, "m_1"), (s_m2, "m_2"), (s_m3, "m_3"), (s_m4, "m_4"), (s_m5, "m_5")):
        b.cert.conclude(ref.index, label)
    check_certificate(b.cert, I)
    return b.cert


def main(argv):
    out = Path(argv[1]) if len(argv) > 1 else Path(__file__).resolve().parents[1] / "src/arithrank/data/certs"
    out.mkdir(parents=True, exist_ok=True)
    header = "# {name}: radical certificate for J{k}; cofactors from exact division\n"
    for k, build in ((1, case1), (2, case2)):
        cert = build()
        path = out / f"case{k}.cert"
        path.write_text(header.format(name=path.name, k=k) + cert.to_text(), encoding="utf-8")
        print(f"wrote {path} ({len(cert.steps)} steps)")


if __name__ == "__main__":
    main(sys.argv)
