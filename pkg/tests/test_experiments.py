"""Experiment configs, file outputs, named experiments, and the CLI."""
import math
from pathlib import Path

import numpy as np
import pytest

import diraclab as dl
from diraclab.cli import main
from diraclab.experiments import (BarrierSpec, CheckSpec, ExperimentConfig,
                                  GridSpec, parse_config, serialize_config)


def _small_config(out_dir="out", checks=(), n_steps=120, stride=40):
    return ExperimentConfig(
        grid=GridSpec(-40.0, 40.0, 800),
        packet=dl.PacketSpec("compact_bump", z0=-15.0, width=8.0, k0=1.5, mass=1.0),
        barrier=BarrierSpec(v0=2.0, z_on=0.0, z_off=5.0),
        n_steps=n_steps,
        snapshot_stride=stride,
        out_dir=out_dir,
        checks=tuple(checks),
    )


def test_q_point():
    assert dl.q_point(135.0, 15.0) == -120.0
    assert dl.q_point(0.0, 15.0) == 15.0
    with pytest.raises(ValueError):
        dl.q_point(-1.0, 15.0)


def test_analytic_gaussian_tail():
    assert dl.analytic_gaussian_tail(0.0, 1.0, 0.0) == pytest.approx(0.5)
    assert dl.analytic_gaussian_tail(-120.0, 15.0, -95.0) == pytest.approx(
        0.5 * math.erfc(25.0 / 15.0))


def test_arrival_time():
    cfg = _small_config()
    _, h = dl.run_experiment(cfg)
    t = dl.arrival_time(h, 0.0, 0.01)
    assert t is not None and t > 0.0
    assert dl.arrival_time(h, 0.0, 2.0) is None  # never that much mass


def test_config_roundtrip(tmp_path):
    cfg = _small_config(checks=[
        CheckSpec("lightcone", {}),
        CheckSpec("causal_inequality", {"q": -10.0}),
        CheckSpec("signalling", {"alice_z_min": -38.0, "alice_z_max": -36.0,
                                 "alice_t_min": 0.0, "alice_t_max": 2.0,
                                 "delta_v": 1.0, "bob_z_min": 20.0,
                                 "bob_z_max": 30.0}),
    ])
    text = serialize_config(cfg)
    assert parse_config(text) == cfg
    path = tmp_path / "exp.cfg"
    dl.save_config(cfg, path)
    assert dl.load_config(path) == cfg
    # serialization is deterministic
    assert serialize_config(parse_config(text)) == text


def test_config_parse_errors_and_comments():
    with pytest.raises(ValueError):
        parse_config("grid.z_min 3.0\n")
    cfg = parse_config(
        "# comment\n"
        "grid.z_min = -10.0\n"
        "grid.z_max = 10.0\n"
        "grid.n_cells = 200\n"
        "packet.kind = 'compact_bump'\n"
        "packet.z0 = -4.0\n"
        "packet.width = 2.0\n"
        "packet.k0 = 0.0\n"
        "packet.mass = 1.0\n"
        "packet.k = 0.0\n"
        "packet.p = 0.0\n"
        "barrier.v0 = 0.0\n"
        "barrier.z_on = 0.0\n"
        "barrier.z_off = 1.0\n"
        "barrier.smoothing = 0.0\n"
    )
    assert cfg.grid.n_cells == 200
    assert cfg.n_steps == 0  # defaults apply


def test_run_experiment_scalars_and_checks():
    cfg = _small_config(checks=[CheckSpec("lightcone", {}),
                                CheckSpec("causal_inequality", {"q": -10.0})])
    report, history = dl.run_experiment(cfg)
    assert report.all_passed
    assert report.scalars["norm_drift"] <= 1e-12
    assert report.scalars["final_time"] == pytest.approx(120 * history.grid.dz)
    assert len(history) == 4


def test_report_lines_format():
    cfg = _small_config(checks=[CheckSpec("lightcone", {})])
    report, _ = dl.run_experiment(cfg)
    lines = dl.report_lines(report)
    assert any(l.startswith("PASS lightcone") for l in lines)
    assert any(l.startswith("SCALAR norm_drift=") for l in lines)
    failing = dl.ExperimentReport(cfg, [], {}, error="boom")
    assert not failing.all_passed
    assert dl.report_lines(failing) == ["ERROR boom"]


def test_density_csv_deterministic(tmp_path):
    cfg = _small_config()
    _, h1 = dl.run_experiment(cfg)
    _, h2 = dl.run_experiment(cfg)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    dl.write_density_csv(h1, p1)
    dl.write_density_csv(h2, p2)
    assert p1.read_bytes() == p2.read_bytes()
    lines = p1.read_text().splitlines()
    assert lines[0] == "t,z,j0,jz"
    assert len(lines) == 1 + 4 * 800
    t, z, j0, jz = lines[1].split(",")
    assert float(t) == 0.0 and float(j0) >= 0.0


def test_unknown_check_rejected():
    cfg = _small_config(checks=[CheckSpec("telepathy", {})])
    with pytest.raises(ValueError, match="telepathy"):
        dl.run_experiment(cfg)


def test_run_sweep_captures_errors():
    cfg = _small_config()
    reports = dl.run_sweep(cfg, "mass", [1.0, -3.0])
    assert len(reports) == 2
    assert reports[0].error is None
    assert reports[1].error is not None and not reports[1].all_passed
    assert dl.run_sweep(cfg, "mass", []) == []
    with pytest.raises(ValueError):
        dl.run_sweep(cfg, "temperature", [1.0])


def test_cli_simulate_and_verify(tmp_path):
    cfg = _small_config(out_dir=str(tmp_path / "sim"),
                        checks=[CheckSpec("lightcone", {})])
    cfg_path = tmp_path / "exp.cfg"
    dl.save_config(cfg, cfg_path)
    assert main(["simulate", "--config", str(cfg_path)]) == 0
    out = tmp_path / "sim"
    assert (out / "density.csv").exists()
    assert (out / "report.txt").exists()
    assert (out / "config.cfg").exists()

    out2 = tmp_path / "verify"
    assert main(["verify", "--config", str(cfg_path), "--out", str(out2)]) == 0
    assert "PASS lightcone" in (out2 / "report.txt").read_text()
    # asking for a check the config doesn't define is a usage error
    assert main(["verify", "--config", str(cfg_path), "--check", "nope",
                 "--out", str(out2)]) == 2


def test_cli_fringe_and_characteristics(tmp_path):
    out = tmp_path / "fringe"
    rc = main(["fringe", "--out", str(out), "--n-cells", "4000",
               "--half-extent", "100", "--steps", "200"])
    assert rc == 0
    text = (out / "report.txt").read_text()
    assert "PASS fringe" in text

    out = tmp_path / "chars"
    rc = main(["characteristics", "--out", str(out), "--samples", "2000"])
    assert rc == 0
    assert "PASS characteristic_determinant" in (out / "report.txt").read_text()


def test_cli_stride_override(tmp_path):
    cfg = _small_config(out_dir=str(tmp_path / "o"))
    cfg_path = tmp_path / "exp.cfg"
    dl.save_config(cfg, cfg_path)
    assert main(["simulate", "--config", str(cfg_path), "--stride", "60"]) == 0
    n_lines = len((tmp_path / "o" / "density.csv").read_text().splitlines())
    assert n_lines == 1 + 3 * 800  # t = 0, 60, 120


def test_dumont_scalars_present():
    # small, fast stand-in for the full desk-scale run
    cfg = dl.dumont_config(v0=1.0, n_cells=3000, n_steps=1200,
                           snapshot_stride=200)
    report, history = dl.run_dumont(cfg)
    s = report.scalars
    for key in ("transmitted_final", "t_T", "q", "tail_probability",
                "tail_probability_analytic", "tunnelled_probability"):
        assert key in s, key
    assert s["q"] == pytest.approx(15.0 - s["t_T"])
    assert s["tail_probability"] == pytest.approx(
        s["tail_probability_analytic"], rel=1e-3)
    assert s["tunnelled_probability"] <= s["tail_probability"] + 1e-10
    assert report.checks[-1].name == "causal_inequality"
    assert report.checks[-1].passed
