import json
import subprocess
import sys
from importlib import resources

import pytest

from zeroapn import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def records(out):
    return [json.loads(line) for line in out.splitlines()]


def test_analyze_examples(capsys):
    code, out = run(capsys, "--json", "analyze", "7", "21")
    (v,) = records(out)
    assert code == 0 and v["is_zero_apn"] and not v["is_apn"]
    assert v["d_canonical"] == 21 and 2 in v["matched_rows"]
    _, out = run(capsys, "analyze", "6", "27", "--json")
    (v,) = records(out)
    assert v["is_zero_apn"] and not v["is_apn"]
    _, out = run(capsys, "analyze", "5", "1", "--json")
    (v,) = records(out)
    assert not v["is_zero_apn"] and v["uniformity"] == 32


def test_analyze_reports_raw_and_reduced(capsys):
    _, out = run(capsys, "--json", "analyze", "7", str(41 + 127))
    (v,) = records(out)
    assert (v["d_raw"], v["d_reduced"], v["d_canonical"]) == (168, 41, 21)
    _, out = run(capsys, "--json", "analyze", "5", "62")
    (v,) = records(out)
    assert v["d_reduced"] == 31 and v["uniformity"] == 30


def test_analyze_errors(capsys):
    assert cli.main(["analyze", "25", "3"]) == 2
    assert cli.main(["analyze", "5", "0"]) == 2
    assert cli.main(["analyze", "6", "3", "--modulus", "x^6+1"]) == 2


def test_modulus_flag(capsys):
    _, a = run(capsys, "--json", "analyze", "8", "21")
    _, b = run(capsys, "--json", "analyze", "8", "21", "--modulus", "x^8+x^4+x^3+x^2+1")
    assert a == b


def test_scan_examples(capsys):
    _, out = run(capsys, "--json", "scan", "6")
    recs = records(out)
    assert 27 in [r["d_canonical"] for r in recs if r.get("kind") == "zero_apn_not_apn"]
    _, out = run(capsys, "--json", "scan", "3", "--all")
    recs = records(out)
    assert {r["d_canonical"]: r["kind"] for r in recs if "kind" in r} == {1: "neither", 3: "apn"}
    assert recs[-1]["summary"] == {"apn": 1, "zero_apn_not_apn": 0, "neither": 1}
    _, out = run(capsys, "--json", "scan", "7")
    leaders = set()
    for r in records(out):
        leaders.update(r.get("coset_leaders", []))
    assert {7, 19, 21, 31, 47, 55} <= leaders


def test_scan_guard(capsys):
    assert cli.main(["scan", "15"]) == 2


def test_scan_is_thread_independent(capsys, monkeypatch):
    monkeypatch.setenv("ZEROAPN_THREADS", "1")
    _, one = run(capsys, "--json", "scan", "9", "--all")
    monkeypatch.setenv("ZEROAPN_THREADS", "4")
    _, four = run(capsys, "--json", "scan", "9", "--all")
    assert one == four


def test_table1_small_range(capsys):
    code, out = run(capsys, "table1", "1", "5")
    assert code == 0
    assert "row 13: n/a" in out
    assert cli.main(["table1", "6", "13"]) == 2


def test_table1_full_range_flags_row_24(capsys):
    code, out = run(capsys, "--json", "table1", "6", "11")
    recs = records(out)
    bad = [r for r in recs if r.get("ok") is False]
    assert code == 1
    assert [(r["row"], r["n"]) for r in bad] == [(24, 9)]


def _manifest(tmp_path, mutate):
    data = json.loads(resources.files("zeroapn.data").joinpath("table1.json").read_text())
    for row in data["rows"]:
        if row["row"] == 24:
            row["examples"] = [e for e in row["examples"] if e != [21, 9]]
    mutate(data)
    path = tmp_path / "t1.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_table1_corrupted_manifest(capsys, tmp_path):
    clean = _manifest(tmp_path, lambda d: None)
    code, _ = run(capsys, "table1", "6", "11", "--manifest", clean)
    assert code == 0

    def corrupt(data):
        for row in data["rows"]:
            if row["row"] == 14:
                row["examples"].append([23, 7])

    code, out = run(capsys, "table1", "6", "11", "--manifest", _manifest(tmp_path, corrupt))
    assert code == 1
    assert "row 14 n= 7 DIFF" in out


def test_symbolic_examples(capsys):
    code, out = run(capsys, "symbolic", "3.2")
    assert code == 0 and "(x^5+x^2+1) * (x^5+x^3+1)" in out
    code, out = run(capsys, "--json", "symbolic", "3.11", "--cross-check")
    (rec,) = records(out)
    assert code == 0 and rec["ok"]
    assert rec["final_factors"] == "(x)^3 * (x+1)^3 * (x^2+x+1)^9 * (x^3+x+1)^3 * (x^3+x^2+1)^3"


def test_symbolic_all_light(capsys):
    code, out = run(capsys, "--json", "symbolic", "all")
    recs = records(out)
    assert code == 0
    assert [r["theorem"] for r in recs] == ["3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.8", "3.9",
                                           "3.11", "3.12", "3.13", "3.14"]


def test_symbolic_heavy_theorem_1(capsys):
    code, out = run(capsys, "--json", "symbolic", "3.1", "--method", "interp")
    (rec,) = records(out)
    assert rec["final_factors"].startswith("(x)^352 * (x+1)^352 * (x^2+x+1)^162")
    # the appendix Res1/Res2 each differ from the computed resultant by one monomial
    assert code == 1 and rec["mismatches"] == ["Res1", "Res2"]


def test_symbolic_unknown(capsys):
    assert cli.main(["symbolic", "3.99"]) == 2


def test_factor_resultant_ccz(capsys):
    code, out = run(capsys, "factor", "x^6+x^5+x^3+x^2")
    assert code == 0 and out.strip() == "x^6+x^5+x^3+x^2 = (x)^2 * (x+1)^2 * (x^2+x+1)"
    _, out = run(capsys, "--json", "resultant", "y^2+x*y+1", "y^3+x")
    assert records(out)[0]["resultant"] == "x^4+1"
    _, out = run(capsys, "resultant", "x^2+x+1", "x+1", "--var", "x")
    assert out.strip() == "1"
    code, out = run(capsys, "--json", "ccz", "7", "41", "21")
    (rec,) = records(out)
    assert code == 0 and rec["canonical"] == 21 and rec["equivalent_to"]["equivalent"]
    assert cli.main(["ccz", "7", "5", "21"]) == 1


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "zeroapn.cli", "analyze", "7", "21"],
                         capture_output=True, text=True, check=True).stdout
    assert "zero_apn=True" in out and "apn=False" in out
