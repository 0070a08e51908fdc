import json
import subprocess
import sys

import pytest

import fanochain as fc
from fanochain.cli import main
from fanochain.serialize import config_to_json, dump_config


def run_cli(*argv):
    return main(list(argv))


def test_preset_fig3_passes_and_writes_artifacts(tmp_path, capsys):
    out = tmp_path / "fig3"
    assert run_cli("preset", "fig3", "--out", str(out)) == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary["schema_version"] == 1
    assert abs(summary["P_s_final"] - 1.0) <= 0.02
    assert summary["P_c_final"] > 0.01
    assert all(a["passed"] for a in summary["assertions"])
    assert (out / "trajectory.csv").exists()
    assert "[PASS]" in capsys.readouterr().out


def test_preset_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_cli("preset", "fig3", "--out", str(a)) == 0
    assert run_cli("preset", "fig3", "--out", str(b)) == 0
    assert (a / "trajectory.csv").read_bytes() == (b / "trajectory.csv").read_bytes()


def test_run_config_reproduces_preset_bytes(tmp_path):
    preset_out = tmp_path / "preset"
    assert run_cli("preset", "fig3", "--out", str(preset_out)) == 0
    cfg_path = tmp_path / "fig3.json"
    dump_config(fc.build_config("fig3"), cfg_path)
    run_out = tmp_path / "run"
    assert run_cli("run", str(cfg_path), "--out", str(run_out)) == 0
    assert (run_out / "trajectory.csv").read_bytes() == \
        (preset_out / "trajectory.csv").read_bytes()
    summary = json.loads((run_out / "summary.json").read_text())
    assert "assertions" not in summary


def test_run_malformed_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert run_cli("run", str(bad)) == 2
    assert "malformed" in capsys.readouterr().err


def test_run_missing_file_exits_2(tmp_path):
    assert run_cli("run", str(tmp_path / "nope.json")) == 2


def test_run_invalid_config_names_invariant(tmp_path, capsys):
    doc = config_to_json(fc.build_config("fig3"))
    doc["chain_length"] = 20  # violates the light-cone guard
    path = tmp_path / "short.json"
    path.write_text(json.dumps(doc))
    assert run_cli("run", str(path)) == 2
    err = capsys.readouterr().err
    assert "chain_length" in err and "light-cone" in err


def test_run_instability_exits_3(tmp_path):
    config = fc.SimConfig(
        continuum=fc.TightBindingChain(1.0, 2.0),
        coupling=fc.Sampled(t_start=0.0, dt=1.0, values=(5.0j,) * 6),
        omega_a=0.0, t_start=0.0, t_end=5.0, dt=1e-4, chain_length=30)
    path = tmp_path / "gain.json"
    dump_config(config, path)
    assert run_cli("run", str(path), "--out", str(tmp_path / "out")) == 3


def test_preset_snapshot_flag(tmp_path):
    out = tmp_path / "snap"
    assert run_cli("preset", "fig3", "--out", str(out),
                   "--snapshots", "20000") == 0
    doc = json.loads((out / "snapshots.json").read_text())
    assert doc["schema_version"] == 1
    assert len(doc["states"][0]) == 301


def test_preset_unknown_name_rejected():
    with pytest.raises(SystemExit) as exc:
        run_cli("preset", "figX")
    assert exc.value.code == 2


def test_preset_failed_assertion_exits_1(tmp_path, capsys):
    # this preset's expected-outcome assertion is deliberately kept at the
    # stated threshold the dynamics contradicts; the exit code must say so
    out = tmp_path / "asym"
    assert run_cli("preset", "spectral_asymmetry", "--out", str(out)) == 1
    assert "[FAIL]" in capsys.readouterr().out
    summary = json.loads((out / "summary.json").read_text())
    assert summary["power_fraction_above"] > 0.99
    assert (out / "spectrum.csv").exists()


def test_sweep_empty_values(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    dump_config(fc.build_config("fig3"), cfg_path)
    out = tmp_path / "sweep"
    assert run_cli("sweep", str(cfg_path), "--param", "omega_a",
                   "--values", "", "--out", str(out)) == 0
    assert (out / "sweep.csv").read_text() == "omega_a,P_s_final,P_c_final\n"


def test_sweep_invalid_path_exits_2(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    dump_config(fc.build_config("fig3"), cfg_path)
    assert run_cli("sweep", str(cfg_path), "--param", "no.such.field",
                   "--values", "1.0") == 2
    assert "no such field" in capsys.readouterr().err


def test_sweep_weak_coupling_markov_deviation_shrinks(tmp_path):
    import numpy as np
    config = fc.build_config("weak_coupling_check")
    cfg_path = tmp_path / "weak.json"
    dump_config(config, cfg_path)
    out = tmp_path / "sweep"
    assert run_cli("sweep", str(cfg_path), "--param", "continuum.kappa1",
                   "--values", "0.1,0.2", "--out", str(out)) == 0
    # oracle: the window-limited golden-rule prediction (same time span as
    # the sweep runs, so the comparison isolates the Markov error itself)
    t = np.linspace(config.t_start, config.t_end, 800001)
    f_r = fc.eval_coupling(config.coupling, t).real
    a_win = np.trapezoid(f_r ** 2, t)
    devs = []
    for row in (out / "sweep.csv").read_text().splitlines()[1:]:
        kappa1, ps_final, _ = (float(x) for x in row.split(","))
        markov = np.exp(-2.0 * kappa1 ** 2 * a_win)
        devs.append(abs(ps_final - markov) / (1.0 - ps_final))
    assert devs[0] < devs[1]


@pytest.mark.slow
def test_sweep_locates_drive_decoupling_amplitude(tmp_path):
    # short driven config; the best trapping amplitude sits near 2.33
    config = fc.build_config("fig5")
    from dataclasses import replace
    config = replace(config, delta_a=fc.Zero(),
                     base=replace(config.base, t_start=0.0, t_end=25.0,
                                  chain_length=70))
    cfg_path = tmp_path / "drive.json"
    dump_config(config, cfg_path)
    out = tmp_path / "scan"
    values = ",".join(f"{v:.2f}" for v in
                      [2.28, 2.30, 2.32, 2.34, 2.36, 2.38, 2.40])
    assert run_cli("sweep", str(cfg_path), "--param", "A0",
                   "--values", values, "--out", str(out)) == 0
    rows = [r.split(",") for r in
            (out / "sweep.csv").read_text().splitlines()[1:]]
    best = max(rows, key=lambda r: float(r[1]))
    assert 2.30 <= float(best[0]) <= 2.38


def test_console_script_help_runs():
    proc = subprocess.run([sys.executable, "-m", "fanochain.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "preset" in proc.stdout
