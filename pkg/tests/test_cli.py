import json

import pytest

from arithrank.cli import main
from arithrank.construct.section7 import section7_generators
from arithrank.hypergraph import Hypergraph, hypergraph
from arithrank.ideal import MonomialIdeal, alexander_dual, invariants, load_ideal
from arithrank.polynomial import parse_polynomial
from arithrank.resolution import BettiTable, betti_table
from arithrank import data


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


def triangle():
    return load_ideal(data.path("triangle.ideal"))


def test_pd_of_triangle(capsys):
    assert run(capsys, "pd", "--field", "Q", "pkg:triangle.ideal")[:2] == (0, "2\n")
    assert run(capsys, "pd", "--strategy", "dual", "pkg:triangle.ideal")[1] == "2\n"


def test_json_round_trips(capsys):
    I = triangle()
    assert run_json(capsys, "invariants", "pkg:triangle.ideal") == invariants(I).as_dict()
    assert MonomialIdeal.from_json(run_json(capsys, "dual", "pkg:triangle.ideal")) == alexander_dual(I)
    T = BettiTable.from_json(run_json(capsys, "betti", "pkg:triangle.ideal"))
    assert T.entries == betti_table(I).entries
    H = Hypergraph.from_json(run_json(capsys, "hypergraph", "pkg:J2.ideal"))
    assert H == hypergraph(load_ideal(data.path("J2.ideal")))
    res = run_json(capsys, "ara", "pkg:J1.ideal")
    assert [parse_polynomial(g) for g in res["generators"]] == section7_generators(1)


def test_text_outputs(capsys):
    _, out, _ = run(capsys, "betti", "pkg:triangle.ideal")
    assert "beta_1,2 = 3" in out and "beta_2,3 = 2" in out
    _, out, _ = run(capsys, "primes", "pkg:triangle.ideal")
    assert len(out.splitlines()) == 3
    _, out, _ = run(capsys, "ara", "pkg:triangle.ideal")
    assert out.startswith("2 (")


def test_verify_cert(capsys, tmp_path):
    assert run(capsys, "verify-cert", "pkg:certs/case2.cert", "pkg:J2.ideal")[0] == 0
    text = data.read_text("certs/case2.cert").replace("^2 =", "^3 =", 1)
    bad = tmp_path / "bad.cert"
    bad.write_text(text)
    code, _, err = run(capsys, "verify-cert", str(bad), "pkg:J2.ideal")
    assert code == 2 and "step" in err


def test_parse_error_reports_position(capsys, tmp_path):
    f = tmp_path / "bad.ideal"
    f.write_text("x1*x2\nx1**x3\n")
    code, _, err = run(capsys, "pd", str(f))
    assert code == 1 and "line 2" in err and "column" in err


def test_exit_codes(capsys, tmp_path):
    f = tmp_path / "wide.ideal"
    f.write_text("\n".join(f"a{k}*b{k}" for k in range(1, 7)) + "\n")
    assert run(capsys, "ara", str(f))[0] == 3
    assert run(capsys, "pd", str(tmp_path / "missing.ideal"))[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    code = run(capsys, "oracle", "radical", "pkg:certs/case1.cert", "pkg:J1.ideal", "--budget-seconds", "0.001")[0]
    assert code == 4


def test_env_vars_and_flags(capsys, monkeypatch):
    monkeypatch.setenv("ARITHRANK_FORMAT", "json")
    _, out, _ = run(capsys, "pd", "pkg:triangle.ideal")
    assert json.loads(out) == {"pd": 2, "field": "Q"}
    _, out, _ = run(capsys, "pd", "pkg:triangle.ideal", "--format", "text")
    assert out == "2\n"
    monkeypatch.setenv("ARITHRANK_FIELD", "F2")
    assert json.loads(run(capsys, "pd", "pkg:triangle.ideal")[1])["field"] == "F2"


def test_generators_writes_reproducible_outputs(capsys, tmp_path):
    outs = []
    for name in ("a", "b"):
        d = tmp_path / name
        assert run(capsys, "generators", "pkg:J2.ideal", "--out", str(d))[0] == 0
        assert run(capsys, "verify-cert", str(d / "generators.cert"), "pkg:J2.ideal")[0] == 0
        m = json.loads((d / "manifest.json").read_text())
        m.pop("timings")
        outs.append((m, (d / "generators.json").read_text(), (d / "generators.cert").read_text()))
    assert outs[0] == outs[1]


def test_generic_set_small(capsys, tmp_path):
    code, out, _ = run(capsys, "generic-set", "--mu", "4", "--height", "2", "--pd", "3", "--out", str(tmp_path))
    assert code == 0 and "step 1: 1195 classes" in out
    m = json.loads((tmp_path / "manifest.json").read_text())
    assert m["counts"]["oracle_agrees"] is True
    for k in range(1, m["counts"]["counts"]["step3"] + 1):
        assert (tmp_path / f"generic{k}.ideal").exists()


def test_jobs_do_not_change_output(capsys):
    a = run_json(capsys, "enumerate", "--mu", "4")
    b = run_json(capsys, "enumerate", "--mu", "4", "--jobs", "2")
    assert a == b == {"classes": 1195, "shards": 1}


def test_verify_sv(capsys, tmp_path):
    res = run_json(capsys, "verify-sv", "--template", "17", "--params", "i1=2,j3=1")
    assert res["ok"] and res["count"] == 7
    assert run_json(capsys, "verify-sv", "--template", "1")["count"] == 2
    f = tmp_path / "frame.ideal"
    from arithrank.construct import H17Params

    f.write_text(H17Params.from_dict({k: 1 for k in ("i1", "i2", "i3", "i4", "i5", "i6", "j2", "j3", "j4")}).ideal().to_text())
    assert run(capsys, "verify-sv", str(f))[0] == 0


def test_oracle_enumeration(capsys):
    res = run_json(capsys, "oracle", "enumeration", "--mu", "2", "3")
    assert res["ok"]
