import csv
import json
import subprocess
import sys

import pytest

from eulerbc.cli import main

SOD = ["riemann", "--left", "1,0,1", "--right", "0.125,0,0.1", "--gamma", "1.4"]


def run(tmp_path, *args, name="out"):
    out = tmp_path / name
    code = main(["--out", str(out), *args])
    return code, out


def read_json(path):
    return json.loads(path.read_text())


def test_riemann_sod(tmp_path):
    code, out = run(tmp_path, *SOD)
    assert code == 0
    data = read_json(out / "riemann.json")
    assert data["p_star"] == pytest.approx(0.30313, abs=5e-6)
    header = (out / "riemann_profile.csv").read_text().splitlines()[0]
    assert header == "x,rho,u,p,mach,entropy"
    manifest = read_json(out / "manifest.json")
    assert manifest["command"] == "riemann" and manifest["config"]["left"] == [1.0, 0.0, 1.0]


def test_riemann_equal_states(tmp_path):
    code, out = run(tmp_path, "riemann", "--left", "1,0,1", "--right", "1,0,1")
    assert code == 0
    data = read_json(out / "riemann.json")
    assert all(w["strength"] == 0.0 and w["degenerate"] for w in data["waves"])


def test_riemann_vacuum_exit_code(tmp_path, capsys):
    code, out = run(tmp_path, "riemann", "--left", "1,-10,1", "--right", "1,10,1")
    assert code == 3
    err = read_json(out / "error.json")
    assert err["error"] == "VacuumFormation"
    assert json.loads(capsys.readouterr().out) == err


@pytest.mark.parametrize("args", [
    ["riemann", "--left", "1,0"],
    ["riemann", "--left", "1,0,1"],
    ["nozzle", "--inlet-bc", "nope"],
    ["region", "--burgers", "--w0", "1", "--range=3:-3:0.01"],
    ["region", "--burgers", "--w0", "1", "--range=-3:3:0"],
    ["bogus"],
])
def test_usage_errors(tmp_path, args):
    try:
        code, _ = run(tmp_path, *args)
    except SystemExit as exc:
        code = exc.code
    assert code == 64


def test_nozzle_converged_profiles(tmp_path):
    code, out = run(tmp_path, "nozzle", "--cells", "80", "--cfl", "0.9", "--compare-exact")
    assert code == 0
    report = read_json(out / "report.json")
    assert report["converged"] and report["exit_mach"] > 1.0
    assert report["mach_l1_rel_error"] <= 0.05
    rows = list(csv.DictReader(open(out / "final.csv")))
    assert len(rows) == 80 and float(rows[-1]["mach"]) > 1.0
    assert (out / "exact.csv").exists()


def test_nozzle_extrapolation_outlet_report(tmp_path):
    code, out = run(tmp_path, "nozzle", "--cells", "20", "--outlet-bc", "extrapolation")
    report = read_json(out / "report.json")
    assert code == (0 if report["converged"] else 2)
    assert report["exit_mach"] < 1.0


def test_nozzle_prescribed_flux_inlet_dips_negative(tmp_path):
    code, out = run(tmp_path, "nozzle", "--cells", "20", "--inlet-bc", "prescribed-flux")
    assert code == 0
    assert min(read_json(out / "report.json")["u_left"]) < 0.0


def test_nozzle_not_converged_exit_code(tmp_path):
    code, out = run(tmp_path, "nozzle", "--cells", "20", "--max-steps", "10", "--snapshot-every", "5")
    assert code == 2
    assert read_json(out / "report.json")["steps"] == 10
    assert sorted(p.name for p in out.glob("snapshot_*.csv")) == [
        "snapshot_000000.csv", "snapshot_000005.csv", "snapshot_000010.csv"]


def test_region_burgers_columns_agree(tmp_path):
    code, out = run(tmp_path, "region", "--burgers", "--w0", "1", "--range=-3:3:0.01")
    assert code == 0
    rows = list(csv.DictReader(open(out / "region.csv")))
    assert len(rows) == 601
    assert all(r["closed"] == r["kruzkov"] for r in rows)


def test_region_euler_contains_datum(tmp_path):
    code, out = run(tmp_path, "region", "--euler", "--w0", "0.502,1.299,0.381", "--plane", "u,c")
    assert code == 0
    rows = list(csv.DictReader(open(out / "region.csv")))
    assert set(rows[0]) == {"coord1", "coord2", "member", "pattern"}
    c0 = (1.4 * 0.381 / 0.502) ** 0.5
    datum = [r for r in rows if abs(float(r["coord1"]) - 1.299) < 1e-12
             and abs(float(r["coord2"]) - c0) < 1e-12]
    assert len(datum) == 1 and datum[0]["member"] == "1"


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cells": 12, "max_steps": 7, "flux": "godunov"}))
    code, out = run(tmp_path, "--config", str(cfg), "nozzle", "--max-steps", "9")
    assert code == 2
    config = read_json(out / "manifest.json")["config"]
    assert (config["cells"], config["max_steps"], config["flux"]) == (12, 9, "godunov")


def test_config_triples_accept_lists(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"left": [1, 0, 1], "right": "0.125,0,0.1"}))
    code, out = run(tmp_path, "--config", str(cfg), "riemann")
    assert code == 0
    assert read_json(out / "riemann.json")["p_star"] == pytest.approx(0.30313, abs=5e-6)


def test_unknown_config_key(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"cells": 12, "colour": "red"}))
    with pytest.raises(SystemExit) as info:
        run(tmp_path, "--config", str(cfg), "nozzle")
    assert info.value.code == 64


@pytest.mark.parametrize("args", [SOD, ["nozzle", "--cells", "20", "--compare-exact"],
                                  ["region", "--burgers", "--w0", "-0.3", "--range=-1:1:0.1"]])
def test_outputs_are_deterministic(tmp_path, args):
    _, a = run(tmp_path, *args, name="a")
    _, b = run(tmp_path, *args, name="b")
    for f in sorted(a.iterdir()):
        other = b / f.name
        if f.name == "manifest.json":
            ma, mb = read_json(f), read_json(other)
            ma["config"].pop("out"), mb["config"].pop("out")
            assert ma == mb
        else:
            assert f.read_bytes() == other.read_bytes()


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "eulerbc", "--out", str(tmp_path / "m"), *SOD],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert (tmp_path / "m" / "manifest.json").exists()
