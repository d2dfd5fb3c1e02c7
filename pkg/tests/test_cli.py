import json

import pytest

from rktrace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "--m", "2", "--k", "1")
    assert code == 0
    rep = json.loads(out)
    assert (rep["n"], rep["N"], rep["K"], rep["w1"], rep["w2"]) == (12, 24, 4, 12, 16)
    assert rep["optimal"]
    assert rep["gap_identity"] == {"direct": 2, "closed_form": 2, "holds": True}
    assert rep["distribution"] == [
        {"weight": 0, "frequency": 1},
        {"weight": 12, "frequency": 12},
        {"weight": 16, "frequency": 3},
    ]


def test_info_large_parameters_are_closed_form(capsys):
    code, out, _ = run(capsys, "info", "--m", "6", "--k", "4")
    assert code == 0
    assert json.loads(out)["K"] == 96


def test_info_m1_is_usage_error(capsys):
    code, _, err = run(capsys, "info", "--m", "1", "--k", "1")
    assert code == 2
    assert "m ≥ 2 required" in err


@pytest.mark.parametrize("modulus", ["0x5", "zz"])
def test_bad_modulus(capsys, modulus):
    code, _, err = run(capsys, "verify", "--m", "2", "--k", "1", "--modulus", modulus)
    assert code == 2
    assert err.startswith("error:")


def test_enumeration_guardrail(capsys):
    code, _, err = run(capsys, "verify", "--m", "2", "--k", "4")
    assert code == 2
    assert "exceeds" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--m", "2", "--k", "1", "--threads", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["all_verified"]
    assert len(rep["claims"]) == 8


def test_verify_text(capsys):
    code, out, _ = run(capsys, "verify", "--m", "2", "--k", "1", "--threads", "1", "--format", "text")
    assert code == 0
    assert out.count("PASS") == 8


def test_export_matrix_deterministic(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(["export", "--what", "matrix", "--m", "2", "--k", "1", "--format", "csv", "--out", str(p)]) == 0
    a, b = (p.read_bytes() for p in paths)
    assert a == b
    rows = a.decode().splitlines()
    assert len(rows) == 4
    assert all(len(r.split(",")) == 24 for r in rows)


def test_export_distribution_csv(capsys):
    code, out, _ = run(capsys, "export", "--m", "3", "--k", "1", "--format", "csv", "--threads", "1")
    assert code == 0
    assert out == "0,1\n56,56\n64,7\n"


def test_export_codewords_json(capsys):
    code, out, _ = run(capsys, "export", "--what", "codewords", "--m", "2", "--k", "1")
    assert code == 0
    words = json.loads(out)["codewords"]
    assert len(words) == 16
    assert words[0]["gray"] == "000000"


def test_sss_round_trip(capsys, tmp_path):
    path = tmp_path / "shares.json"
    assert main(["sss", "deal", "--m", "2", "--k", "1", "--secret", "1", "--seed", "7", "--out", str(path)]) == 0
    doc = json.loads(path.read_text())
    assert doc["seed"] == 7 and len(doc["shares"]) == 23
    everyone = ",".join(str(i) for i in range(1, 24))
    code, out, _ = run(capsys, "sss", "reconstruct", "--m", "2", "--k", "1", "--shares", str(path),
                       "--coalition", everyone, "--format", "text")
    assert (code, out) == (0, "1\n")
    code, out, _ = run(capsys, "sss", "reconstruct", "--m", "2", "--k", "1", "--shares", str(path),
                       "--coalition", "1", "--format", "text")
    assert (code, out) == (0, "unauthorized\n")


def test_sss_access(capsys):
    code, out, _ = run(capsys, "sss", "access", "--m", "2", "--k", "1")
    assert code == 0
    assert json.loads(out)["dictators"] == [15]


def test_sss_usage_errors(capsys, tmp_path):
    assert run(capsys, "sss", "deal", "--m", "2", "--k", "1")[0] == 2
    assert run(capsys, "sss", "reconstruct", "--m", "2", "--k", "1")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert run(capsys, "sss", "reconstruct", "--m", "2", "--k", "1", "--shares", str(bad))[0] == 2


def _strip(report):
    report = dict(report)
    report.pop("modulus")
    claims = []
    for c in report["claims"]:
        c = {key: v for key, v in c.items() if key != "elapsed"}
        c["parameters"] = {key: v for key, v in c["parameters"].items() if key != "modulus"}
        c.get("details", {}).pop("weight_2_witness", None)
        claims.append(c)
    report["claims"] = claims
    return report


def test_basis_invariance(capsys):
    reports = []
    for modulus in ("0xb", "0xd"):
        code, out, _ = run(capsys, "verify", "--m", "3", "--k", "1", "--modulus", modulus, "--threads", "1")
        assert code == 0
        reports.append(_strip(json.loads(out)))
    assert reports[0] == reports[1]
