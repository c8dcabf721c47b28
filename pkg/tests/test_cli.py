import io
import json
import subprocess
import sys

import pytest

from jantzen.cli import EXIT_GUARD, EXIT_OK, EXIT_USAGE, run_command
from jantzen.report import SCHEMA, envelope, latex_escape, render, render_csv, render_json, render_latex


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_verma_example_sl2():
    code, out, _ = run("verma-jantzen", "--type", "A1", "--lambda", "2", "--depth", "6", "--format", "json")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["schema"] == SCHEMA
    res = rep["result"]
    assert res["lambda"] == [2] and res["lambda_minus_rho"] == [1]
    assert [r["nu"] for r in res["valuation_table"]] == [[], [], [1], [1], [1], [1], [1]]
    assert {m["x"]: m["m"] for m in res["multiplicities"]} == {"e": [0, 1], "s1": [1]}
    assert res["matches_prediction"] is True


def test_whittaker_example_three_rows():
    code, out, _ = run("whittaker-jantzen", "--type", "A2", "--lambda", "1,1", "--eta", "1,0", "--w", "w0",
                       "--depth", "5")
    assert code == EXIT_OK
    res = json.loads(out)["result"]
    assert [r["v"] for r in res["rows"]] == ["s1", "s1 s2", "s1 s2 s1"]
    assert res["column_sums_match_transport"] is True


def test_check_sl2_exit_zero():
    code, out, _ = run("check", "--suite", "sl2")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["result"]["passed"] and all(c["passed"] for c in rep["checks"])


@pytest.mark.parametrize("argv", [
    ["verma-jantzen", "--type", "E8"],
    ["verma-jantzen", "--type", "A2", "--lambda", "1"],
    ["verma-jantzen", "--type", "A2", "--lambda", "x,y"],
    ["whittaker-jantzen", "--type", "A2", "--eta", "1"],
    ["kl", "--type", "A2", "--w", "s7"],
    ["kl", "--type", "A2", "--eta", "1,0", "--x", "e"],
    ["strictness", "--type", "A2", "--v", "s1"],
    ["cache", "warm"],
    ["no-such-command"],
    ["verma-jantzen", "--type", "A2", "--format", "xml"],
])
def test_usage_errors_exit_2(argv, tmp_path):
    if argv[0] == "cache":
        argv = argv + ["--cache-dir", str(tmp_path)]
    code, out, err = run(*argv)
    assert code == EXIT_USAGE and out == ""
    assert err


@pytest.mark.parametrize("argv", [
    ["whittaker-jantzen", "--type", "A2", "--lambda", "1,1", "--eta", "1,0", "--depth", "2"],
    ["whittaker-jantzen", "--type", "A2", "--lambda", "0,1", "--eta", "1,0"],
    ["strictness", "--type", "A2", "--v", "s1", "--w", "s2"],
])
def test_guards_exit_3(argv):
    code, out, err = run(*argv)
    assert code == EXIT_GUARD and "computation guard" in err


def test_reports_echo_lambda_and_shift():
    code, out, _ = run("verma-jantzen", "--type", "B2", "--lambda", "2,1", "--depth", "3")
    req = json.loads(out)["request"]
    assert req["lambda"] == [2, 1] and req["lambda_minus_rho"] == [1, 0]


def test_json_round_trip_and_determinism():
    argv = ("verma-jantzen", "--type", "A2", "--lambda", "1/2,1", "--depth", "3")
    _, a, _ = run(*argv)
    _, b, _ = run(*argv)
    assert a == b
    rep = json.loads(a)
    assert render_json(rep) == a
    assert rep["request"]["lambda"] == ["1/2", 1]


def test_csv_column_order():
    _, out, _ = run("verma-jantzen", "--type", "A2", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "weight,nu_1,nu_2,nu_3"
    assert lines[1] == '"0,0",0,0,0'
    i = lines.index("v,q^0,q^1,q^2,q^3")
    assert lines[i + 1] == "e,0,0,0,1"


def test_latex_one_tabular_per_table_and_escaping():
    _, out, _ = run("verma-jantzen", "--type", "A2", "--format", "latex")
    assert out.count("\\begin{tabular}") == out.count("\\end{tabular}") == 3
    assert "nu\\_1" in out and "q\\textasciicircum{}0" in out
    assert latex_escape("a_b&c%$#{}~^\\") == (
        "a\\_b\\&c\\%\\$\\#\\{\\}\\textasciitilde{}\\textasciicircum{}\\textbackslash{}")


def test_renderers_on_generic_result():
    rep = envelope("x", {}, {}, {"k": [1, 2]}, [{"name": "n", "passed": True}], ["a note"])
    assert json.loads(render(rep, "json")) == rep
    assert render_csv(rep).splitlines()[:2] == ["key,value", 'k,"[1, 2]"']
    assert render_latex(rep).count("tabular}") == 4


def test_roots_weyl_kl_commands():
    code, out, _ = run("roots", "--type", "G2", "--lambda", "1,-1")
    res = json.loads(out)["result"]
    assert len(res["positive_roots"]) == 6 and res["weight"]["regular"] is False
    code, out, _ = run("weyl", "--type", "A2", "--eta", "0,1")
    res = json.loads(out)["result"]
    assert res["order"] == 6 and res["longest_coset_representatives"] == ["s2", "s2 s1", "s1 s2 s1"]
    code, out, _ = run("kl", "--type", "A3", "--x", "s2", "--w", "s2 s1 s3 s2")
    assert json.loads(out)["result"]["polynomials"] == [{"x": "s2", "coeffs": [1, 1], "poly": "1 + q"}]
    code, out, _ = run("kl", "--type", "A2", "--eta", "1,0", "--parabolic", "q")
    res = json.loads(out)
    assert res["result"]["flavor"] == "parabolic:q" and res["conventions"]["parabolic_convention"] == "q"


def test_strictness_command():
    code, out, _ = run("strictness", "--type", "A2", "--v", "s1", "--w", "w0")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["result"]["pairs"][0]["holds"] is True
    code, out, _ = run("strictness", "--type", "A2", "--v", "s1", "--w", "w0", "--shift", "1")
    assert code == 1 and json.loads(out)["checks"][0]["passed"] is False


def test_cache_admin(tmp_path):
    d = str(tmp_path)
    code, out, _ = run("cache", "info", "--cache-dir", d)
    assert json.loads(out)["result"]["info"]["entries"] == 0
    code, out, _ = run("cache", "warm", "--type", "A2", "--cache-dir", d)
    assert json.loads(out)["result"]["info"]["files"][0]["entries"] == 19
    before = sorted(p.stat().st_mtime_ns for p in tmp_path.iterdir())
    code, out, _ = run("kl", "--type", "A2", "--cache-dir", d)
    assert "ordinary KL table source: cache" in json.loads(out)["notes"]
    assert sorted(p.stat().st_mtime_ns for p in tmp_path.iterdir()) == before
    (tmp_path / "kl-B2-ordinary.json").write_text('{"format": "klcache/0", "entries": []}')
    code, out, _ = run("cache", "info", "--cache-dir", d)
    rep = json.loads(out)
    assert rep["result"]["info"]["ignored"][0]["file"] == "kl-B2-ordinary.json" and rep["notes"]
    code, out, _ = run("cache", "clear", "--cache-dir", d)
    assert json.loads(out)["result"]["info"]["entries"] == 0


def test_threads_and_timing_flags():
    code, out, _ = run("roots", "--type", "A1", "--threads", "4", "--timing")
    rep = json.loads(out)
    assert "timing_seconds" in rep and any("threads" in n for n in rep["notes"])
    code, out, _ = run("roots", "--type", "A1")
    assert "timing_seconds" not in json.loads(out)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jantzen.cli", "roots", "--type", "A1", "--format", "csv"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("key,value")
