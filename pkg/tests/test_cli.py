"""CLI subcommands: outputs, exit codes, determinism, config strictness."""

import json
import math

import pytest

from floatconv.cli import main

THETA_MAX_DEG = 345.0


def prototype_config():
    # stiffness back-solved so the spiral slope is 4.982e-3 m/rad
    x_max = 0.02 * math.radians(THETA_MAX_DEG)
    return {
        "spring": {"type": "linear", "k_n_per_m": 124.55, "max_extension_m": x_max},
        "pulley": {
            "circular_radius_m": 0.02,
            "theta_max_deg": THETA_MAX_DEG,
            "samples": 512,
            "r_min_m": 0.010,
            "r_max_m": 0.040,
        },
        "counter": {"type": "weight", "load_n": 10.0},
    }


def untruncated_config():
    cfg = prototype_config()
    del cfg["pulley"]["r_min_m"]
    del cfg["pulley"]["r_max_m"]
    return cfg


def gripper_config(cap=2.0, latch=True):
    return {
        "spring": {"type": "linear", "k_n_per_m": 100.0, "max_extension_m": 0.12043},
        "pulley": {"circular_radius_m": 0.02, "samples": 512},
        "counter": {"type": "weight", "load_n": 10.0},
        "gripper": {
            "stage_travel_m": 0.10,
            "stage_step_m": 0.01,
            "latch": latch,
            "actuator_cap_n": cap,
            "object_position_m": 0.05,
        },
    }


def write_config(tmp_path, cfg, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


# -- synthesize -----------------------------------------------------------------


def test_synthesize_prototype_profile(tmp_path, capsys):
    cfg = write_config(tmp_path, prototype_config())
    out = tmp_path / "profile.csv"
    assert main(["synthesize", "--config", cfg, "--out", str(out)]) == 0
    lines = out.read_text().split("\n")
    assert lines[0] == "theta_deg,r_mm"
    assert lines[1] == "0.000000,10.000000"
    # the ideal spiral reaches a*theta_max = 29.998545 mm at 345 deg; the
    # 40 mm ceiling stays inactive over this stroke
    assert lines[-2] == "345.000000,29.998545"
    stdout = capsys.readouterr().out
    assert "theta_max_deg=345.000000" in stdout
    assert "r_min_mm=10.000000" in stdout


def test_synthesize_untruncated_reports_slope(tmp_path, capsys):
    cfg = write_config(tmp_path, untruncated_config())
    out = tmp_path / "profile.csv"
    assert main(["synthesize", "--config", cfg, "--out", str(out)]) == 0
    assert "a_m_per_rad=0.004982" in capsys.readouterr().out


def test_synthesize_deterministic_bytes(tmp_path):
    cfg = write_config(tmp_path, prototype_config())
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["synthesize", "--config", cfg, "--out", str(a)]) == 0
    assert main(["synthesize", "--config", cfg, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


# -- verify ----------------------------------------------------------------------


def test_synthesize_then_verify_untruncated_passes(tmp_path):
    cfg = write_config(tmp_path, untruncated_config())
    out = tmp_path / "profile.csv"
    assert main(["synthesize", "--config", cfg, "--out", str(out)]) == 0
    assert main(["verify", "--config", cfg, "--profile", str(out)]) == 0


def test_verify_truncated_fails_with_exit_2(tmp_path, capsys):
    cfg = write_config(tmp_path, prototype_config())
    out = tmp_path / "profile.csv"
    assert main(["synthesize", "--config", cfg, "--out", str(out)]) == 0
    assert main(["verify", "--config", cfg, "--profile", str(out)]) == 2
    captured = capsys.readouterr()
    assert captured.err.startswith("ERR:NumericalError:")


# -- sweep ------------------------------------------------------------------------


def ratio_sweep_config(mu=None):
    cfg = {
        "spring": {"type": "linear", "k_n_per_m": 124.55, "max_extension_m": 0.2},
        "pulley": {"circular_radius_m": 0.02, "samples": 512},
        "counter": {"type": "weight", "load_n": 10.0},
    }
    if mu is not None:
        cfg["friction"] = {"mu": mu}
    return cfg


def parse_summary(stdout):
    fields = dict(tok.split("=") for tok in stdout.strip().split())
    return {key: float(val) for key, val in fields.items()}


def test_sweep_gap_override_and_summary(tmp_path, capsys):
    cfg = write_config(tmp_path, ratio_sweep_config())
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--config", cfg, "--gap-mm", "10", "--out", str(out)]) == 0
    summary = parse_summary(capsys.readouterr().out)
    assert summary["op_force_const_n"] == pytest.approx(1.2455, abs=5e-7)
    assert summary["ratio_peak"] == pytest.approx(0.05, abs=5e-7)
    lines = out.read_text().split("\n")
    assert lines[0].startswith("u_mm,spring_force_n,")
    assert lines[1].startswith("10.000000,")


def test_sweep_friction_only_ratio(tmp_path, capsys):
    cfg = write_config(tmp_path, ratio_sweep_config(mu=0.003))
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
    summary = parse_summary(capsys.readouterr().out)
    assert summary["ratio_peak"] <= 0.003 + 1e-6
    assert summary["op_force_const_n"] == pytest.approx(0.0, abs=1e-6)


# -- grasp ------------------------------------------------------------------------


def test_grasp_success(tmp_path, capsys):
    cfg = write_config(tmp_path, gripper_config())
    out = tmp_path / "trace.csv"
    assert main(["grasp", "--config", cfg, "--target-force-n", "10", "--out", str(out)]) == 0
    summary = parse_summary(capsys.readouterr().out)
    assert summary["amplification"] == pytest.approx(10.0, abs=5e-7)
    assert summary["max_actuator_n"] == pytest.approx(1.0, abs=5e-7)
    assert summary["final_grip_n"] == pytest.approx(10.0, abs=5e-7)
    assert out.read_text().startswith("tick,phase,jaw_mm,")


def test_grasp_stall_exit_2(tmp_path, capsys):
    cfg = write_config(tmp_path, gripper_config(cap=0.5))
    out = tmp_path / "trace.csv"
    code = main(["grasp", "--config", cfg, "--target-force-n", "10", "--out", str(out)])
    assert code == 2
    assert capsys.readouterr().err.startswith("ERR:ActuatorStall:")


def test_grasp_backdrive_exit_2(tmp_path, capsys):
    cfg = write_config(tmp_path, gripper_config(latch=False))
    out = tmp_path / "trace.csv"
    code = main(["grasp", "--config", cfg, "--target-force-n", "10", "--out", str(out)])
    assert code == 2
    assert capsys.readouterr().err.startswith("ERR:BackdriveFault:")


def test_grasp_requires_gripper_section(tmp_path, capsys):
    cfg = write_config(tmp_path, untruncated_config())
    code = main(["grasp", "--config", cfg, "--target-force-n", "10", "--out", "x.csv"])
    assert code == 1
    assert "gripper" in capsys.readouterr().err


# -- export-svg --------------------------------------------------------------------


def test_export_svg(tmp_path):
    cfg = write_config(tmp_path, prototype_config())
    profile = tmp_path / "profile.csv"
    svg = tmp_path / "shape.svg"
    assert main(["synthesize", "--config", cfg, "--out", str(profile)]) == 0
    assert main(["export-svg", "--profile", str(profile), "--out", str(svg)]) == 0
    content = svg.read_text()
    assert content.startswith("<?xml")
    assert "<path" in content


# -- config strictness ---------------------------------------------------------------


def test_unknown_key_rejected_by_name(tmp_path, capsys):
    cfg = prototype_config()
    cfg["pulley"]["radius_mm"] = 20.0
    code = main(["synthesize", "--config", write_config(tmp_path, cfg), "--out", "x.csv"])
    assert code == 1
    assert "pulley.radius_mm" in capsys.readouterr().err


def test_missing_key_rejected_by_name(tmp_path, capsys):
    cfg = prototype_config()
    del cfg["spring"]["k_n_per_m"]
    code = main(["synthesize", "--config", write_config(tmp_path, cfg), "--out", "x.csv"])
    assert code == 1
    assert "spring.k_n_per_m" in capsys.readouterr().err


def test_invalid_json_exit_1(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["synthesize", "--config", str(path), "--out", "x.csv"]) == 1
    assert capsys.readouterr().err.startswith("ERR:ValidationError:")


def test_missing_config_file_exit_1(tmp_path, capsys):
    assert main(["synthesize", "--config", str(tmp_path / "no.json"), "--out", "x.csv"]) == 1
    assert capsys.readouterr().err.startswith("ERR:ValidationError:")


def test_spring_counter_config(tmp_path, capsys):
    cfg = {
        "spring": {"type": "linear", "k_n_per_m": 100.0, "max_extension_m": 0.12},
        "pulley": {"circular_radius_m": 0.02, "samples": 513},
        "counter": {"type": "spring", "t0_n": 10.0, "k2_n_per_m": 50.0},
    }
    path = write_config(tmp_path, cfg)
    out = tmp_path / "profile.csv"
    assert main(["synthesize", "--config", path, "--out", str(out)]) == 0
    assert main(["verify", "--config", path, "--profile", str(out)]) == 0


def test_tabulated_spring_config(tmp_path):
    cfg = {
        "spring": {
            "type": "tabulated",
            "points_m_n": [[0.0, 0.0], [0.05, 2.0], [0.12, 10.0]],
        },
        "pulley": {"circular_radius_m": 0.02, "samples": 1024},
        "counter": {"type": "weight", "load_n": 10.0},
    }
    path = write_config(tmp_path, cfg)
    out = tmp_path / "profile.csv"
    assert main(["synthesize", "--config", path, "--out", str(out)]) == 0
    assert main(["verify", "--config", path, "--profile", str(out)]) == 0
