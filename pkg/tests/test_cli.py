import json
import math

import jsonschema
import pytest

from gft_lab.cli import main, parse_alpha_grid
from gft_lab.reporting import load_schema


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    data = json.loads(out)
    jsonschema.validate(data, load_schema())
    return code, data


def test_expand_starlike_f1(capsys):
    code, data = run_json(capsys, "expand", "--class", "starlike", "--alpha", "1", "--extremal", "1",
                          "--order", "4")
    assert code == 0
    assert data["coefficients"][:3] == [1, 1, 0.75]
    # the recursion gives 17/36 for a_4 (see the decisions ledger)
    assert data["coefficients"][3] == pytest.approx(17 / 36, abs=1e-12)


def test_expand_convex_f5(capsys):
    code, data = run_json(capsys, "expand", "--class", "convex", "--alpha", "1", "--extremal", "5",
                          "--order", "3")
    assert code == 0
    assert data["coefficients"] == pytest.approx([1, 0.5, 0.25], abs=1e-12)


def test_expand_omega_zero(capsys):
    code, data = run_json(capsys, "expand", "--omega", "zero", "--order", "5")
    assert code == 0
    assert data["coefficients"] == [1, 0, 0, 0, 0]


def test_expand_text_output(capsys):
    code, out, _ = run(capsys, "expand", "--extremal", "5", "--class", "convex", "--order", "3")
    assert code == 0
    assert [float(x) for x in out.split()] == [1, 0.5, 0.25]


def test_gamma_and_determinants(capsys):
    code, data = run_json(capsys, "gamma", "--class", "starlike", "--extremal", "1", "--m", "2")
    assert code == 0 and data["abs"] == pytest.approx([0.5, 0.125])
    for cmd in ("hankel", "toeplitz"):
        code, data = run_json(capsys, cmd, "--class", "starlike", "--extremal", "2", "--q", "2", "--n", "1")
        assert code == 0


def test_verify_gamma_example(capsys):
    code, data = run_json(capsys, "verify", "--claim", "gamma", "--class", "starlike", "--alpha", "0.5",
                          "--n", "2")
    assert code == 0
    (rec,) = data["reports"]
    assert rec["witness"] == pytest.approx(0.125, abs=1e-12)
    assert abs(rec["slack"]) < 1e-3
    assert rec["formula"] == "alpha/4"


def test_verify_convex_hankel_example(capsys):
    code, data = run_json(capsys, "verify", "--claim", "hankel21", "--class", "convex", "--alpha", "1")
    (rec,) = data["reports"]
    assert rec["claimed"] == pytest.approx(1 / 144)
    assert rec["witness"] == pytest.approx(1 / 144, abs=1e-10)
    # the search finds values above alpha^2/144 at alpha = 1 (see the decisions ledger)
    assert rec["estimated_sup"] > rec["claimed"] + 1e-6
    assert code == 1


def test_verify_out_writes_json_and_prints_table(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--claim", "gamma", "--n", "1", "--class", "convex",
                       "--budget", "5000", "--out", str(path))
    assert code == 0
    assert "1/1 cells passed" in out
    data = json.loads(path.read_text())
    jsonschema.validate(data, load_schema())


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "toeplitz21", "--budget", "5000", "--format", "csv")
    assert code == 0
    lines = out.split("\n")
    assert "\r" not in out
    assert lines[0].startswith("claim,class,alpha,formula,claimed,estimated_sup")
    assert len([ln for ln in lines if ln]) == 3


def test_json_is_byte_identical(capsys):
    argv = ["verify", "--claim", "hankel21", "--class", "starlike", "--budget", "5000", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_threads_do_not_change_output(capsys, monkeypatch):
    argv = ["verify", "--claim", "gamma", "--alpha-grid", "0.5:1:0.5", "--budget", "2000", "--format", "json"]
    monkeypatch.setenv("GFT_LAB_THREADS", "1")
    _, one, _ = run(capsys, *argv)
    monkeypatch.setenv("GFT_LAB_THREADS", "4")
    _, four, _ = run(capsys, *argv)
    assert one == four
    monkeypatch.setenv("GFT_LAB_THREADS", "zero")
    assert run(capsys, *argv)[0] == 2


def test_alpha_grid_parsing():
    assert parse_alpha_grid("0.25:1:0.25") == [0.25, 0.5, 0.75, 1.0]
    assert parse_alpha_grid("0.1:0.3:0.1") == pytest.approx([0.1, 0.2, 0.3])
    assert parse_alpha_grid("1/4:1/2:1/8") == [0.25, 0.375, 0.5]
    for bad in ("0:1:0.5", "0.5:1", "0.5:1:0", "0.5:1.5:0.5", "1:0.5:0.1"):
        with pytest.raises(ValueError):
            parse_alpha_grid(bad)


@pytest.mark.parametrize("argv", [
    ["expand", "--alpha", "0"],
    ["expand", "--alpha", "1.5"],
    ["expand", "--extremal", "9"],
    ["expand", "--omega", "0.6,0.6"],
    ["expand", "--order", "0"],
    ["verify", "--claim", "gamma", "--n", "5"],
    ["verify"],
    ["verify", "--claim", "gamma", "--budget", "10"],
    ["battery", "--alpha-step", "1/32"],
    ["figures", "--which", "nope"],
    ["nonsense"],
    [],
])
def test_config_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_figures_phi(capsys):
    code, out, _ = run(capsys, "figures", "--which", "phi")
    assert code == 0
    header, first = out.split("\n")[:2]
    assert header == "alpha,phi1,phi2"
    assert [float(x) for x in first.split(",")] == [0, 0.5, 0.25]


def test_figures_spiral(capsys):
    code, out, _ = run(capsys, "figures", "--which", "spiral")
    rows = [[float(x) for x in ln.split(",")] for ln in out.strip().split("\n")[1:]]
    al, th, re, im = next(r for r in rows if r[0] == 1 and r[1] == 0)
    assert (re, im) == pytest.approx((math.e, 0), abs=1e-15)
    assert sorted({r[0] for r in rows}) == [0.25, 0.5, 0.75, 1]


def test_figures_psi1_and_xi(capsys):
    code, out, _ = run(capsys, "figures", "--which", "psi1", "--points", "11")
    rows = [[float(x) for x in ln.split(",")] for ln in out.strip().split("\n")[1:]]
    assert len(rows) == 121
    assert next(r for r in rows if r[0] == 0 and r[1] == 1)[2] == pytest.approx(36)
    code, data = run_json(capsys, "figures", "--which", "xi", "--points", "5")
    assert data["columns"] == ["tau1", "alpha", "value", "printed"]


def test_battery_command(capsys):
    code, out, _ = run(capsys, "battery")
    assert code == 1
    assert "inner(1) = 135" in out
    assert sum(ln.startswith("(") and " PASS " in ln for ln in out.split("\n")) == 8
    code, data = run_json(capsys, "battery")
    assert [c["name"] for c in data["checks"] if not c["passed"]] == ["b"]


def test_lemmas_command(capsys):
    code, data = run_json(capsys, "lemmas", "--samples", "2000", "--psi-samples", "50")
    names = {s["name"]: s for s in data["suites"]}
    assert names["lemma 2.2 (source form)"]["violations"] == 0
    assert not names["lemma 2.2 (source form)"]["counted"]
    assert code == (0 if data["passed"] else 1)
    code, data = run_json(capsys, "lemmas", "--psi", "1,1,1")
    assert code == 0 and data["psi"]["psi"] == 3
