import io
import json
import math
import os
from pathlib import Path

import pytest

from prodforge.cli import main

DATA = Path(__file__).parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def rows(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_coeffs_tsv_and_json():
    code, text = run("coeffs", "--kind", "b", "--max", "12")
    assert code == 0
    assert text.splitlines()[11] == "12\t-1/6"
    code, text = run("coeffs", "--kind", "a_s", "--s", "2", "--max", "4", "--json")
    assert code == 0
    assert [r["value"] for r in rows(text)] == ["1", "-1/4", "-1/9", "0"]


def test_coeffs_bad_input():
    assert run("coeffs", "--kind", "z", "--max", "5")[0] == 3
    with pytest.raises(SystemExit) as info:
        run("coeffs", "--kind", "a")
    assert info.value.code == 3
    with pytest.raises(SystemExit) as info:
        run("coeffs", "--kind", "a", "--max", "5", "--json", "--tsv")
    assert info.value.code == 3


def test_oracle_certifies_and_detects_fault():
    code, text = run("oracle", "--kind", "a", "--max", "300")
    assert code == 0 and text.strip() == "certified: 300/300 equal"
    code, text = run("oracle", "--kind", "b_s", "--s", "3", "--max", "100", "--json")
    assert code == 0 and rows(text)[0]["certified"] is True
    code, text = run("oracle", "--kind", "b", "--max", "100", "--inject-mismatch", "30")
    assert code == 1 and text.startswith("MISMATCH: first at n=30")


def test_verify_single_identity():
    code, text = run("verify", "--id", "SQRT_E")
    assert code == 0 and rows(text)[0]["passed"] is True
    code, text = run("verify", "--id", "EXP_COS_MINUS", "--x", "0.4", "--theta", "1.1", "--K", "100")
    assert code == 0
    code, text = run("verify", "--id", "EXP_MINUS", "--x", "0.7", "--K", "5")
    assert code == 1 and rows(text)[0]["status"] == "tail-dominated"


def test_verify_as_printed_fails():
    code, text = run("verify", "--id", "MIXED_PARITY", "--x", "0.3", "--theta", "1.0", "--K", "60", "--as-printed")
    assert code == 1 and rows(text)[0]["variant"] == "as-printed"


def test_verify_boundary_policy():
    assert run("verify", "--id", "BOUNDARY_TAN", "--theta", "1.0", "--assert")[0] == 2
    code, text = run("verify", "--id", "BOUNDARY_SIN", "--theta", "1.0", "--xs", "0.9,0.99")
    row = rows(text)[0]
    assert code == 0 and row["status"] == "boundary-experimental" and row["tail_bound"] == "inf"
    assert len(row["trace"]) == 2


@pytest.mark.parametrize("extra", [(), ("--profile", "desk")])
def test_verify_all(extra):
    code, text = run("verify", "--all", *extra)
    assert code == 0
    out = rows(text)
    skipped = {r["id"] for r in out if r["status"] == "SKIPPED-EXPERIMENTAL"}
    assert skipped == {"BOUNDARY_SIN", "BOUNDARY_SIN_REFLECT", "BOUNDARY_TAN", "B_SUM_LOG2"}
    assert all(r["passed"] for r in out if r["status"] != "SKIPPED-EXPERIMENTAL")


def test_verify_errors():
    assert run("verify")[0] == 3
    assert run("verify", "--id", "NOPE")[0] == 3
    assert run("verify", "--all", "--profile", "huge")[0] == 3
    assert run("verify", "--id", "EXP_MINUS", "--x", "0.995")[0] == 3


def test_transform_minus():
    code, text = run("transform", str(DATA / "x_over_sin4.json"), "--target", "minus", "--K", "4")
    data = json.loads(text)
    assert code == 0
    assert [e["exponent"] for e in data["entries"]] == ["-1/6", "7/90", "313/5670", "13/4725"]


def test_transform_ratio_routes_odd():
    code, text = run("transform", str(DATA / "odd_x.json"), "--target", "ratio", "--K", "7")
    data = json.loads(text)
    assert code == 0 and [e["k"] for e in data["entries"]] == [1, 3, 5, 7]
    assert run("transform", str(DATA / "x_over_sin4.json"), "--target", "ratio", "--K", "7")[0] == 3


def test_transform_cosine():
    path = str(DATA / "odd_x.json")
    code, text = run("transform", path, "--target", "cos-minus", "--K", "3", "--theta", "0.5")
    assert code == 0
    first = json.loads(text)["entries"][0]["exponent"]
    assert float(first) == pytest.approx(-1 / math.cos(0.5))
    assert run("transform", path, "--target", "cos-minus", "--K", "3", "--theta", str(math.pi / 2))[0] == 3
    assert run("transform", path, "--target", "cos-minus", "--K", "3")[0] == 3
    code, _ = run("transform", path, "--target", "cos-plus", "--K", "3", "--x", "0.5")
    assert code == 0


def test_transform_missing_file(tmp_path):
    assert run("transform", str(tmp_path / "none.json"), "--target", "minus", "--K", "3")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("transform", str(bad), "--target", "minus", "--K", "3")[0] == 3


def test_stirling():
    code, text = run("stirling", "--n", "10")
    assert code == 0 and rows(text)[0]["passed"] is True
    code, text = run("stirling", "--n", "2")
    assert code == 1 and rows(text)[0]["status"] == "tail-dominated"
    assert run("stirling", "--n", "10", "--terms", "20")[0] == 3


def test_zeta():
    code, text = run("zeta", "--kind", "a", "--s", "2", "--N", "10000")
    row = rows(text)[0]
    assert code == 0 and row["diff"] <= row["tol"]
    code, _ = run("zeta", "--kind", "b", "--s", "3", "--N", "10000")
    assert code == 0
    assert run("zeta", "--kind", "c", "--s", "2", "--N", "10")[0] == 3
    assert run("zeta", "--kind", "a", "--s", "1", "--N", "10")[0] == 3


def test_abel():
    code, text = run("abel", "--id", "B_SUM_LOG2", "--xs", "0.9,0.999", "--json")
    out = rows(text)
    assert code == 0 and out[1]["K"] == 41426
    assert abs(out[1]["lhs"] - 0.999) <= 1e-6
    code, text = run("abel", "--id", "BOUNDARY_SIN", "--xs", "0.5", "--theta", "1.0")
    assert code == 0 and text.splitlines()[0] == "x\tK\tlhs\ttarget\tresidual"
    assert run("abel", "--id", "BOUNDARY_SIN", "--xs", "1.0", "--theta", "1.0")[0] == 3


def test_list():
    code, text = run("list")
    lines = text.splitlines()
    assert code == 0 and len(lines) >= 17
    code, text = run("list", "--json")
    assert [r["id"] for r in rows(text)] == [line.split("\t")[0] for line in lines]


def test_sieve_limit_flag(monkeypatch):
    monkeypatch.delenv("PRODFORGE_SIEVE_LIMIT", raising=False)
    assert run("--sieve-limit", "100", "zeta", "--kind", "a", "--s", "2", "--N", "1000")[0] == 3
    assert "PRODFORGE_SIEVE_LIMIT" not in os.environ
    assert run("zeta", "--kind", "a", "--s", "2", "--N", "1000")[0] == 0
