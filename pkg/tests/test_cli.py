import json
import subprocess
import sys

import numpy as np
import pytest
from scipy.special import airy

from betaens import cli
from betaens.cli import MethodRequest, main, parse_assertion, parse_grid
from betaens.bulk import mp_cdf
from betaens.core import read_csv_curve
from betaens.ensembles import edges_from_grid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def pair(report, a, b):
    (p,) = [p for p in report["metrics"]["pairs"] if (p["a"], p["b"]) == (a, b)]
    return p


def error_line(err):
    lines = err.strip().splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


def test_parse_grid():
    assert parse_grid("0:1:0.25").tolist() == [0, 0.25, 0.5, 0.75, 1.0]
    assert parse_grid("-1.2:1.2:0.005").size == 481
    for bad in ("1:0:0.1", "0:1:0", "a:b", "0:1:2:3"):
        with pytest.raises(cli.UsageError):
            parse_grid(bad)


def test_method_overrides():
    r = MethodRequest.parse("bulk:n=16,beta=4,a=1,seed=3,samples=10")
    assert (r.method, r.overrides["n"], r.overrides["beta"]) == ("bulk", 16, 4.0)
    assert cli._split_methods("bulk:n=8,seed=2;bulk:n=16") == ["bulk:n=8,seed=2", "bulk:n=16"]
    assert cli._split_methods("exact,bulk") == ["exact", "bulk"]
    with pytest.raises(cli.UsageError):
        MethodRequest.parse("bulk:m=3")
    with pytest.raises(cli.UsageError):
        MethodRequest.parse("spline")


def test_assertion_grammar():
    assert parse_assertion("L1 <= 0.03") == ("L1", None, "<=", 0.03)
    assert parse_assertion("peak_count:exact == 7") == ("peak_count", "exact", "==", 7.0)
    with pytest.raises(cli.UsageError):
        parse_assertion("L1 < 0.03")


def test_density_csv_and_json_agree(capsys, tmp_path):
    base = ["density", "--family", "hermite", "--n", "3", "--beta", "4", "--grid", "-1.2:1.2:0.05"]
    code, out, _ = run(capsys, *base)
    assert code == 0 and out.startswith("x,density\n") and "\r" not in out
    x, y = read_csv_curve(out)
    assert main(base + ["--format", "json", "--out", str(tmp_path / "c.json")]) == 0
    d = json.loads((tmp_path / "c.json").read_text())
    assert d["schema"] == 1 and d["spec"]["N"] == 3
    assert np.array_equal(x, d["x"]) and np.array_equal(y, d["density"])
    for v in out.splitlines()[1:]:
        assert all(float(f"{float(t):.12g}") == float(t) for t in v.split(","))


def test_density_fig1_exact_curve(capsys):
    code, out, _ = run(capsys, "density", "--family", "hermite", "--n", "7", "--beta", "6", "--method", "exact",
                       "--grid", "-1.2:1.2:0.005")
    x, y = read_csv_curve(out)
    assert code == 0 and x.size == 481
    # bulk scaling integrates to one
    assert np.trapezoid(y, x) == pytest.approx(1.0, abs=2e-3)


def test_density_laguerre_bulk_default_grid(capsys):
    code, out, _ = run(capsys, "density", "--family", "laguerre", "--n", "4", "--beta", "6", "--a", "1",
                       "--method", "bulk")
    x, y = read_csv_curve(out)
    # the asymptotic series may dip below zero near the band edges at this small N, but keeps its mass
    assert code == 0 and x[0] > 0 and x[-1] < 1
    assert np.trapezoid(y, x) == pytest.approx(mp_cdf(x[-1]) - mp_cdf(x[0]), abs=0.05)


def test_edge_beta2_is_airy_kernel(capsys):
    code, out, _ = run(capsys, "density", "--family", "hermite", "--n", "50", "--beta", "2", "--method", "edge",
                       "--grid", "-6:2:0.25")
    x, y = read_csv_curve(out)
    ai, aip, _, _ = airy(x)
    assert code == 0
    assert np.max(np.abs(y - (aip**2 - x * ai**2))) <= 1e-10


def test_usage_errors_exit_2(capsys):
    cases = [
        ["density", "--family", "hermite", "--n", "3", "--beta", "3", "--method", "exact"],
        ["density", "--family", "hermite", "--n", "0", "--beta", "2"],
        ["density", "--family", "cauchy", "--n", "3", "--beta", "2"],
        ["density", "--n", "3", "--beta", "2"],
        ["compare", "--family", "hermite", "--n", "3", "--beta", "2", "--methods", "exact"],
        ["compare", "--family", "hermite", "--n", "3", "--beta", "2", "--assert", "L1 ~ 2"],
        ["density", "--family", "hermite", "--n", "3", "--beta", "2", "--scaling", "raw"],
        ["frobnicate"],
    ]
    for argv in cases:
        code, _, err = run(capsys, *argv)
        assert code == 2, argv
        e = error_line(err)
        assert e["exit"] == 2 and e["message"]


def test_tolerance_failure_exit_1(capsys):
    argv = ["compare", "--family", "hermite", "--n", "3", "--beta", "2", "--methods", "exact,bulk",
            "--assert", "Linf <= 1e-9", "--assert", "peak_count:exact == 3"]
    code, out, err = run(capsys, *argv)
    assert code == 1
    e = error_line(err)
    assert e["error"] == "tolerance" and "Linf" in e["message"] and "peak_count" not in e["message"]
    report = json.loads(out)
    assert report["pass"] is False and [a["pass"] for a in report["assertions"]] == [False, True]


def test_fig1_compare_report(capsys):
    code, out, _ = run(capsys, "compare", "--family", "hermite", "--n", "7", "--beta", "6", "--methods",
                       "exact,bulk", "--window", "-0.85:0.85", "--assert", "peak_count:exact == 7",
                       "--assert", "Linf <= 0.06", "--assert", "peak_delta <= 0.03")
    report = json.loads(out)
    assert code == 0 and report["schema"] == 1 and report["pass"]
    assert report["metrics"]["peak_count"] == {"exact": 7, "bulk": 7}
    p = pair(report, "exact", "bulk")
    assert set(p) >= {"L1", "Linf", "peak_location_deltas", "peak_delta"}
    assert len(report["grid"]) == len(report["curves"]["exact"]) == len(report["curves"]["bulk"])


def test_metrics_are_recomputable(capsys):
    _, out, _ = run(capsys, "compare", "--family", "laguerre", "--n", "3", "--beta", "2", "--methods", "exact,bulk")
    r = json.loads(out)
    g = np.array(r["grid"])
    w = np.diff(edges_from_grid(g))
    a, b = np.array(r["curves"]["exact"]), np.array(r["curves"]["bulk"])
    p = pair(r, "exact", "bulk")
    # curves are printed to 12 digits, metrics come from the unrounded values
    assert p["Linf"] == pytest.approx(np.max(np.abs(a - b)), rel=1e-9)
    assert p["L1"] == pytest.approx(np.sum(np.abs(a - b) * w), rel=1e-9)


def test_amplitude_exponent(capsys):
    code, out, _ = run(capsys, "compare", "--family", "hermite", "--n", "8", "--beta", "6", "--methods",
                       "bulk:n=8;bulk:n=16", "--assert", "amplitude_exponent_rel_err <= 0.1")
    (p,) = json.loads(out)["metrics"]["pairs"]
    assert code == 0 and p["amplitude_exponent_expected"] == pytest.approx(-1 / 3)
    assert p["amplitude_exponent"] == pytest.approx(-1 / 3, rel=0.1)


def test_mc_compare_laguerre(capsys):
    code, out, _ = run(capsys, "compare", "--family", "laguerre", "--n", "4", "--beta", "6", "--methods",
                       "exact,mc", "--samples", "200000", "--seed", "1", "--assert", "L1 <= 0.03")
    r = json.loads(out)
    assert code == 0 and r["cell_average"] is True and r["curve_meta"]["mc"]["samples"] == 200000


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"family": "hermite", "n": 2, "beta": 2, "grid": "-1:1:0.5"}))
    code, out, _ = run(capsys, "density", "--config", str(cfg))
    x, y = read_csv_curve(out)
    assert code == 0 and x.tolist() == [-1, -0.5, 0, 0.5, 1]
    code, out, _ = run(capsys, "density", "--config", str(cfg), "--n", "3")
    assert code == 0 and read_csv_curve(out)[1][2] != y[2]
    cfg.write_text(json.dumps({"family": "hermite", "nn": 2}))
    code, _, err = run(capsys, "density", "--config", str(cfg))
    assert code == 2 and "nn" in error_line(err)["message"]


def test_kquad_overrides(capsys):
    code, _, err = run(capsys, "density", "--family", "hermite", "--n", "20", "--beta", "4", "--method", "edge",
                       "--grid", "0:0:1", "--kquad", "bogus=1")
    assert code == 2 and error_line(err)["exit"] == 2


def _mc_bytes(capsys, threads, env=None, monkeypatch=None):
    argv = ["density", "--family", "hermite", "--n", "7", "--beta", "6", "--method", "mc", "--samples", "30000",
            "--seed", "11"]
    if threads:
        argv += ["--threads", str(threads)]
    return run(capsys, *argv)[1]


def test_determinism_across_threads(capsys, monkeypatch):
    one = _mc_bytes(capsys, 1)
    assert one == _mc_bytes(capsys, 1) == _mc_bytes(capsys, 4)
    monkeypatch.setenv("BETAENS_THREADS", "3")
    assert _mc_bytes(capsys, None) == one


def test_edge_threads_bit_identical(capsys):
    argv = ["density", "--family", "laguerre", "--n", "30", "--beta", "4", "--method", "edge", "--grid",
            "-3:1:0.5", "--format", "json"]
    a = run(capsys, *argv, "--threads", "1")[1]
    b = run(capsys, *argv, "--threads", "3")[1]
    assert a == b


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "betaens", "density", "--family", "hermite", "--n", "1", "--beta",
                        "2", "--grid", "0:1:0.5"], capture_output=True, text=True, check=False)
    assert p.returncode == 0 and p.stdout.splitlines()[0] == "x,density"
