from __future__ import annotations

import json

import pytest

from fusiontori import serialize as S
from fusiontori.cli import main
from fusiontori.fusion import e8_adjoint


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def checks(out):
    d = json.loads(out)
    S.validate(d, S.REPORT_SCHEMA, "report")
    return {c["name"]: c for c in d["checks"]}, d


def test_verify_ring_preset(capsys):
    code, out, _ = run(capsys, "verify-ring", "e8", "--format", "json")
    assert code == 0
    cs, d = checks(out)
    assert all(c["status"] == "pass" for c in cs.values())
    assert list(cs) == sorted(cs)


def test_verify_ring_file_with_violation(capsys, tmp_path):
    obj = S.ring_to_json(e8_adjoint().with_constant("A", "B", "tau", 2))
    p = tmp_path / "r.json"
    p.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify-ring", "--input", str(p), "--format", "json")
    assert code == 1
    cs, _ = checks(out)
    assert cs["axiom.associativity"]["status"] == "fail"


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "dims", "nosuch")[0] == 2
    assert run(capsys, "verify-ring", "--input", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"labels": 3}')
    assert run(capsys, "verify-ring", "--input", str(bad))[0] == 2
    assert run(capsys, "nogo", "psu2:5")[0] == 2
    assert run(capsys, "bogus-command")[0] == 2


def test_nogo_obstructed(capsys):
    code, out, _ = run(capsys, "nogo", "psu2:5", "--n", "2", "--format", "json")
    cs, _ = checks(out)
    assert cs["nogo.divisibility"]["details"]["verdict"] == "obstructed"
    assert code == 1


def test_nogo_unobstructed(capsys):
    code, out, _ = run(capsys, "nogo", "group:Z5", "--n", "3", "--format", "json")
    assert code == 0


def test_theta_psu_reports_pfaffian(capsys):
    code, out, _ = run(capsys, "theta", "psu2_15", "--format", "json")
    cs, _ = checks(out)
    assert cs["theta.pfaffian"]["status"] == "pass"
    assert "pfaffian" in cs["theta.pfaffian"]["details"]
    assert cs["theta.pfaffian_claim"]["details"]["claimed"] == "-[12]_q"
    assert cs["theta.pfaffian_claim"]["status"] == "fail"
    assert code == 1


def test_assumed_iff_flag(capsys):
    code, out, _ = run(capsys, "stationary", "hi:Z3", "--format", "json")
    cs, _ = checks(out)
    assert cs["stationary.unit_multiplicity"]["status"] == "error"
    assert code == 1
    code, out, _ = run(capsys, "stationary", "hi:Z3", "--assume-hi-dual", "--format", "json")
    cs, d = checks(out)
    assert cs["stationary.unit_multiplicity"]["status"] == "assumed"
    assert d["metadata"]["assumptions"] == ["stationary.unit_multiplicity"]
    assert code == 0
    code, out, _ = run(capsys, "stationary", "e8", "--assume-hi-dual", "--format", "json")
    cs, d = checks(out)
    assert all(c["status"] != "assumed" for c in cs.values())


def test_precision_changes_display_only(capsys):
    _, a, _ = run(capsys, "dims", "e8", "--format", "json", "--precision", "20")
    _, b, _ = run(capsys, "dims", "e8", "--format", "json", "--precision", "200")
    ca, _ = checks(a)
    cb, _ = checks(b)
    assert {k: v["status"] for k, v in ca.items()} == {k: v["status"] for k, v in cb.items()}
    da, db = ca["dims.values"]["details"]["dims"]["A"], cb["dims.values"]["details"]["dims"]["A"]
    assert da["coords"] == db["coords"] and len(db["approx"]) > len(da["approx"])


def test_max_degree(capsys):
    code, out, _ = run(capsys, "dims", "e8", "--max-degree", "2", "--format", "json")
    cs, _ = checks(out)
    assert cs["dims.field"]["status"] == "error" and code == 1


def test_match(capsys):
    code, out, _ = run(capsys, "match", "stationary:e8", "torus:e8", "--expect", "isomorphic", "--format", "json")
    assert code == 0
    code, out, _ = run(capsys, "match", "stationary:psu2_15", "torus:psu2_15", "--format", "json")
    cs, _ = checks(out)
    assert cs["match.verdict"]["details"]["verdict"] == "distinct"


def test_match_from_files(capsys, tmp_path):
    p = tmp_path / "theta.json"
    from fusiontori.nctorus import theta_e8
    p.write_text(S.dumps(S.theta_to_json(theta_e8())))
    code, out, _ = run(capsys, "match", "stationary:e8", str(p), "--expect", "isomorphic")
    assert code == 0


def test_atmodel(capsys):
    code, out, _ = run(capsys, "atmodel", "--l", "3", "--weights", "1=1/2,x=1/2", "--K", "9", "--depth", "2",
                       "--eps", "1", "--format", "json")
    assert code == 0
    cs, _ = checks(out)
    assert cs["atmodel.trace_recursion"]["details"]["mu"]["9"] == "7/8"
    assert cs["atmodel.density"]["details"]["dense_within_eps"] is True
    assert run(capsys, "atmodel", "--l", "3", "--weights", "1=abc")[0] == 2


def test_nimrep_command(capsys):
    code, out, _ = run(capsys, "nimrep", "hi_rank2:Z2xZ2", "--format", "json")
    assert code == 0
    code, out, _ = run(capsys, "nimrep", "e8", "--weights", "1,1,1,1", "--format", "json")
    cs, _ = checks(out)
    assert cs["nimrep.class_basis"]["status"] == "pass"


@pytest.mark.parametrize("argv", [["reproduce-paper"], ["theta", "e8"], ["stationary", "psu2_15"]])
def test_byte_stable(capsys, argv):
    a = run(capsys, *argv, "--format", "json")[1]
    b = run(capsys, *argv, "--format", "json")[1]
    assert a == b
    t1 = run(capsys, *argv)[1]
    t2 = run(capsys, *argv)[1]
    assert t1 == t2


def test_reproduce_paper_structure(capsys):
    code, out, _ = run(capsys, "reproduce-paper", "--format", "json")
    cs, d = checks(out)
    assert len(cs) == len(d["checks"])
    assumed = sorted(n for n, c in cs.items() if c["status"] == "assumed")
    assert assumed == [f"hi.{g}.unit_multiplicity" for g in ("Z2", "Z2xZ2", "Z3", "Z4")]
    assert d["metadata"]["assume_hi_dual"] is True
    assert not any(c["status"] == "error" for c in cs.values())
    # the exit code reflects the checks that do not reproduce
    failing = sorted(n for n, c in cs.items() if c["status"] == "fail")
    assert code == (1 if failing else 0)
