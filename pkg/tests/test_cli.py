import io
import json
import os
import subprocess
import sys

import pytest

from tbl import __version__
from tbl.cache import ResultCache
from tbl.cli import rational, run


def call(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    old = dict(os.environ)
    if env:
        os.environ.update(env)
    try:
        code = run(list(argv), out, err)
    finally:
        os.environ.clear()
        os.environ.update(old)
    return code, out.getvalue(), err.getvalue()


def results(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)["results"]


def test_psi_payload():
    assert results("psi", "1 1 1") == {"i": 0, "q": 1, "nonzero": True}
    assert results("psi", "-1")["nonzero"] is False


def test_sl_and_alpha_input():
    assert results("sl", "aaa") == {"sl": 1}
    assert results("sl", "1", "--strands", "4") == {"sl": -3}
    assert results("--strands", "4", "sl", "1") == {"sl": -3}


def test_report_negative_unknot():
    rep = results("report", "-1")
    assert rep["sl"]["sl"] == -3
    assert rep["cover"]["h1"]["text"] == "0"
    assert rep["d3"]["d3"] == "1/2"
    assert rep["verdict"]["c_invariant"] == "Zero"
    assert rep["verdict"]["fillability"] == "Overtwisted"
    assert "R3" in [r["id"] for r in rep["verdict"]["rules_fired"]]
    assert rep["cover"]["linking_matrix"] == [[0, 1], [1, 0]]


def test_d3_strings_and_constant_flag():
    assert results("d3", "1")["d3"] == "-1/2"
    assert results("d3", "1 1 1")["d3"] == "0/1"
    assert results("d3", "1", "--paper-d3-constant")["d3"] == "0/1"
    assert rational(-0.5) == "-1/2"


def test_kh_table_and_window():
    res = results("kh", "1 1 1", "--reduced")
    assert res["total"] == 3
    assert {(r["i"], r["q"]): r["dim"] for r in res["table"]} == {(0, 1): 1, (2, 5): 1, (3, 7): 1}
    res = results("kh", "1 1 1", "--reduced", "--q-window", "0:5")
    assert res["total"] == 2
    res = results("kh", "1 1 1", "--engine", "cube")
    assert res["total"] == 6
    res = results("kh", "-1 -1 -1", "--reduced", "--q-window", "-9:-5")
    assert res["total"] == 2


def test_cover_payload():
    res = results("cover", "1 1 1")
    assert res["linking_matrix"] == [[-2, 1], [1, -2]]
    assert res["h1"]["torsion"] == [3]
    assert res["sigma_x"] == -2 and res["c1_is_zero"] is True
    assert [c["smooth_framing"] for c in res["components"]] == [-2, -2]


def test_exit_codes():
    assert call("sl", "1 0")[0] == 2
    assert call("sl", "1 q")[0] == 2
    assert call("sl", "3", "--strands", "3")[0] == 2
    assert call("kh", "1", "--q-window", "3:1")[0] == 2
    code, _, err = call("psi", " ".join(["1"] * 30))
    assert code == 3 and "cap" in err
    code, _, err = call("kh", "1 1 1 1 1 1", "--engine", "cube", "--max-crossings", "5")
    assert code == 3
    code, _, err = call("cover", "1 -2 1 -2", "--rule", "chain")
    assert code == 4 and "DeterminantMismatch" in err
    assert call("bm", "--p", "0", "--q", "2", "--r", "3")[0] == 2
    assert call("nonsense")[0] == 2


def test_bm_table():
    res = results("bm", "--p", "2", "--q", "4", "--r", "3")
    assert res["hypothesis_ok"] is True
    assert res["K1"] == "b=3: " + " ".join(["1"] * 5 + ["2"] * 6 + ["1"] * 8 + ["-2"])
    assert all(row["equal"] for row in res["table"])
    names = [row["invariant"] for row in res["table"]]
    assert {"sl", "determinant", "d3", "kh_reduced"} <= set(names)
    assert results("bm", "--p", "2", "--q", "3", "--r", "3")["hypothesis_ok"] is False


def test_byte_identical_with_and_without_cache(tmp_path):
    cache = str(tmp_path / "cache")
    first = call("report", "1 -2 1 -2 1", "--cache-dir", cache)[1]
    second = call("report", "1 -2 1 -2 1", "--cache-dir", cache)[1]
    third = call("report", "1 -2 1 -2 1")[1]
    assert first == second == third
    files = [f for _, _, fs in os.walk(cache) for f in fs]
    assert files and not any(f.endswith(".tmp") for f in files)


def test_timings_flag_reports_cache_hits(tmp_path):
    cache = str(tmp_path / "c")
    a = json.loads(call("sl", "1 1", "--timings", env={"TBL_CACHE_DIR": cache})[1])
    b = json.loads(call("sl", "1 1", "--timings", env={"TBL_CACHE_DIR": cache})[1])
    assert a["cache_hit"] is False and b["cache_hit"] is True
    assert "seconds" in b["timings"]
    plain = json.loads(call("sl", "1 1")[1])
    assert "timings" not in plain and "cache_hit" not in plain


def test_stale_cache_version_ignored(tmp_path):
    root = str(tmp_path)
    old = ResultCache(root, "0.0.0-old")
    old.put("b=2: 1", "sl", {"max_crossings": None, "paper_d3_constant": False}, {"sl": 999})
    new = ResultCache(root, __version__)
    assert new.get("b=2: 1", "sl", {"max_crossings": None, "paper_d3_constant": False}) is None
    assert results("sl", "1", "--cache-dir", root) == {"sl": -1}


def test_tampered_cache_entry_ignored(tmp_path):
    root = str(tmp_path)
    cache = ResultCache(root, __version__)
    opts = {"max_crossings": None, "paper_d3_constant": False}
    cache.put("b=2: 1", "sl", opts, {"sl": -1})
    path = cache._path(cache.key("b=2: 1", "sl", opts))
    with open(path, "w") as fh:
        json.dump({"material": {"word": "other"}, "results": {"sl": 5}}, fh)
    assert cache.get("b=2: 1", "sl", opts) is None


def test_batch_order_errors_and_parallel(tmp_path):
    words = ["1 1 1", "-1", "1 0", "1 -2 1 -2", "aBaB", "", "2 2 -1"]
    path = tmp_path / "words.txt"
    path.write_text("\n".join(words) + "\n")
    code, serial, err = call("batch", "--file", str(path), "--command", "verdict")
    assert code == 1 and "'1 0'" in err
    lines = serial.strip().split("\n")
    assert len(lines) == 6  # blank line skipped
    parsed = [json.loads(x) for x in lines]
    assert parsed[0]["input_word"] == "b=2: 1 1 1"
    assert parsed[2]["error"]["exit_code"] == 2
    assert parsed[3]["input_word"] == "b=3: 1 -2 1 -2"
    code2, parallel, _ = call("batch", "--file", str(path), "--command", "verdict", "--jobs", "3")
    assert parallel == serial and code2 == code


def test_text_format():
    code, out, _ = call("verdict", "1 1 1", "--format", "text")
    assert code == 0
    assert "fillability: SteinFillable" in out
    assert "results:" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tbl", "psi", "1 1 1"], capture_output=True,
                          text=True, check=True)
    assert json.loads(proc.stdout)["results"]["q"] == 1
