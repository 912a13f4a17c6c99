import json

import pytest

from sixforms.cli import main

SIX_STR = "1,0,0; 0,1,0; 0,0,1; 1,1,1; 2,3,5; 7,11,13"
TRIPLE_STR = "1,0,0; 0,1,0; 1,1,0; 0,0,1; 1,2,3; 3,1,4"
CONIC_STR = "1,0,0; 1,1,1; 1,2,4; 1,3,9; 1,4,16; 0,0,1"
PLAN5_STR = "7,-4,9; 7,8,-1; 4,-8,9; 2,0,8; -3,-1,-5; -4,-5,-9"


def test_analyze_section5_system(capsys):
    forms = "1,0,0; 0,1,0; 0,0,1; 1,1,1; 2,3,5; 7,11,13"
    rc = main(["analyze", "--p", "17", "--forms", forms])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert "true_complexity_is_one" in out
    assert out["collinear_triples"] is not None


def test_analyze_conic_witness_printed(capsys):
    rc = main(["analyze", "--p", "101", "--forms", CONIC_STR])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["true_complexity_is_one"] is False
    assert out["conic_witness"] is not None


def test_analyze_malformed_exits_2():
    with pytest.raises(SystemExit) as ei:
        main(["analyze", "--p", "17", "--forms", "1,2; 3,4"])
    assert ei.value.code == 2


def test_certify_single_step_and_file(tmp_path, capsys):
    out = tmp_path / "cert.json"
    rc = main(["certify", "--p", "101", "--forms", TRIPLE_STR, "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert doc["format"] == "cs-game-certificate/1"
    assert len(doc["steps"]) == 1
    assert doc["total_exponent"]["log2_denominator"] == 1


def test_certify_idempotent(tmp_path):
    o1, o2 = tmp_path / "a.json", tmp_path / "b.json"
    main(["certify", "--p", "101", "--forms", SIX_STR, "--out", str(o1)])
    main(["certify", "--p", "101", "--forms", SIX_STR, "--out", str(o2)])
    assert o1.read_text() == o2.read_text()


def test_certify_conic_exit_3():
    rc = main(["certify", "--p", "101", "--forms", CONIC_STR])
    assert rc == 3


def test_verify_roundtrip_and_corruption(tmp_path, capsys):
    out = tmp_path / "cert.json"
    main(["certify", "--p", "5", "--forms", PLAN5_STR, "--out", str(out)])
    capsys.readouterr()
    rc = main(["verify", str(out), "--trials", "5"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["failures"] == 0
    doc = json.loads(out.read_text())
    doc["total_exponent"]["log2_denominator"] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    rc = main(["verify", str(bad), "--trials", "2"])
    assert rc == 5


def test_verify_unreadable_exit_2(tmp_path):
    bad = tmp_path / "missing.json"
    assert main(["verify", str(bad)]) == 2
    bad.write_text("{}")
    assert main(["verify", str(bad)]) == 2


def test_verify_oversized_group_exit_6(tmp_path):
    out = tmp_path / "cert.json"
    main(["certify", "--p", "101", "--forms", TRIPLE_STR, "--out", str(out)])
    rc = main(["verify", str(out), "--group", "5"])
    assert rc == 6


def test_counterexample_report(capsys):
    rc = main(["counterexample", "--grid", "4"])
    assert rc == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["p"] == 39607
    assert rep["det_check"]["ok"]
    assert rep["lambda_lower_bound"] >= 1e-12
