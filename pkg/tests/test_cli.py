import json
import re
from pathlib import Path

import pytest

from kkw.cli import main
from kkw.coeffs import parse_poly

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,name", [
    (["compute", "--dim", "4", "--case", "aI", "--format", "json"], "compute_dim4_aI.json"),
    (["verify", "--dim", "3", "--format", "json"], "verify_dim3.json"),
    (["compute", "--dim", "6", "--path", "both"], "compute_dim6_both.txt"),
])
def test_golden_output(capsys, monkeypatch, argv, name):
    monkeypatch.delenv("KKW_SEED", raising=False)
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / name).read_text(encoding="utf-8")


@pytest.mark.parametrize("argv", [
    ["compute", "--dim", "5"],
    ["compute", "--dim", "4", "--case", "zz"],
    ["compute", "--dim", "4", "--seed", "-3"],
    ["compute", "--dim", "4", "--seed", str(2 ** 64)],
    ["compute"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert json.loads(err)["error"] == "usage"


def test_verify_exits_zero_despite_mismatches(capsys):
    code, out, _ = run(capsys, "verify", "--dim", "4", "--format", "json")
    assert code == 0
    assert any(e["match"] == "mismatch" for e in json.loads(out)["entries"])


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert {s["suite"] for s in doc["suites"]} == {"trace", "contour", "moments", "partial_fractions", "composition"}


def test_corrupted_pairing_is_caught(capsys):
    code, out, _ = run(capsys, "selftest", "--corrupt-pairing", "--format", "json")
    assert code == 1
    trace = next(s for s in json.loads(out)["suites"] if s["suite"] == "trace")
    assert not trace["passed"]
    assert re.search(r"word \[AUX0=", trace["failures"][0])


def test_same_seed_is_byte_identical(capsys):
    first = run(capsys, "selftest", "--seed", "17", "--format", "json")[1]
    second = run(capsys, "selftest", "--seed", "17", "--format", "json")[1]
    assert first == second
    assert json.loads(first)["meta"]["seed"] == 17


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("KKW_SEED", "99")
    doc = json.loads(run(capsys, "compute", "--dim", "3", "--format", "json")[1])
    assert doc["meta"]["seed"] == 99
    assert json.loads(run(capsys, "compute", "--dim", "3", "--seed", "5", "--format", "json")[1])["meta"]["seed"] == 5


def test_bad_environment_seed(capsys, monkeypatch):
    monkeypatch.setenv("KKW_SEED", "banana")
    code, _, err = run(capsys, "compute", "--dim", "3")
    assert code == 2 and json.loads(err)["error"] == "usage"


def test_text_and_json_agree(capsys):
    doc = json.loads(run(capsys, "compute", "--dim", "4", "--format", "json")[1])
    text = run(capsys, "compute", "--dim", "4")[1]
    for entry in doc["entries"]:
        m = re.search(rf"\] {entry['label']}: (.*)$", text, re.M)
        assert parse_poly(m.group(1)) == parse_poly(entry["phi"])
    m = re.search(r"^  total \[FULL_SYMBOLIC\]: (.*)$", text, re.M)
    assert parse_poly(m.group(1)) == parse_poly(doc["total"])


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "compute", "--dim", "3", "--format", "json", "--out", str(target))
    assert code == 0
    assert target.read_text(encoding="utf-8") == out


def test_symbols_dump(capsys):
    code, out, _ = run(capsys, "symbols", "--format", "json")
    assert code == 0
    assert all({"op", "degree", "expr"} <= set(r) for r in json.loads(out)["symbols"])


def test_jobs_do_not_change_output(capsys):
    one = run(capsys, "compute", "--dim", "6", "--path", "both", "--format", "json")[1]
    many = run(capsys, "compute", "--dim", "6", "--path", "both", "--format", "json", "--jobs", "4")[1]
    assert one == many
