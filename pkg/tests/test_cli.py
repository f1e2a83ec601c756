import csv
import json
import math

import numpy as np
import pytest

from rabiduality.cli import EXIT_CUTOFF, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from rabiduality.config import ConfigError, RunConfig, build_initial, parse_initial
from rabiduality.hilbert import FockSpec


def read_csv(path):
    lines = path.read_text().splitlines()
    assert lines[0] == "# units: hbar=1, dimensionless"
    rows = list(csv.DictReader(lines[1:]))
    return {k: np.array([float(r[k]) for r in rows]) for k in rows[0]}


def test_verify_default(tmp_path, capsys):
    out = tmp_path / "v.csv"
    assert main(["verify", "--out", str(out)]) == EXIT_OK
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert len(rows) >= 30
    assert all(r["passed"] == "true" for r in rows)
    assert "worst residual" in capsys.readouterr().out


def test_verify_tight_tolerance_fails(tmp_path):
    assert main(["verify", "--cutoff", "16", "--tol", "1e-16", "--out", str(tmp_path / "v.csv")]) == EXIT_FAIL


def test_verify_minimal_cutoff(tmp_path):
    assert main(["verify", "--cutoff", "1", "--out", str(tmp_path / "v.csv")]) == EXIT_OK


def test_evolve_bosonic_photon_number(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["evolve", "--model", "bosonic", "--g", "0.3", "--cutoff", "40", "--out", str(out)]) == EXIT_OK
    cols = read_csv(out)
    np.testing.assert_allclose(cols["n"], 4 * 0.09 * np.sin(cols["t"] / 2) ** 2, atol=1e-8)


@pytest.mark.parametrize("model", ["coupling", "coupling-closed"])
def test_evolve_coupling_final_photon_number(tmp_path, model):
    out = tmp_path / "c.csv"
    assert main(["evolve", "--model", model, "--g", "0.2", "--t1", "3", "--steps", "30",
                 "--out", str(out)]) == EXIT_OK
    assert abs(read_csv(out)["n"][-1] - 0.36) <= 1e-8


def test_evolve_effective_fermionic_flat(tmp_path):
    out = tmp_path / "f.csv"
    assert main(["evolve", "--model", "effective-fermionic", "--cutoff", "40", "--out", str(out)]) == EXIT_OK
    cols = read_csv(out)
    assert np.max(np.abs(cols["x"])) <= 1e-10
    np.testing.assert_allclose(cols["sigma_z"], 1.0, atol=1e-10)


@pytest.mark.parametrize("model", ["cat", "bosonic-closed"])
def test_evolve_closed_forms(tmp_path, model):
    out = tmp_path / "k.csv"
    assert main(["evolve", "--model", model, "--cutoff", "40", "--steps", "20", "--out", str(out)]) == EXIT_OK
    cols = read_csv(out)
    np.testing.assert_allclose(cols["n"], 4 * 0.09 * np.sin(cols["t"] / 2) ** 2, atol=1e-8)
    np.testing.assert_allclose(cols["parity"], 1.0, atol=1e-10)


def test_evolve_omega_zero_routes_to_coupling(tmp_path):
    out = tmp_path / "z.csv"
    assert main(["evolve", "--model", "bosonic-closed", "--omega", "0", "--g", "0.2", "--t1", "3",
                 "--steps", "6", "--out", str(out)]) == EXIT_OK
    cols = read_csv(out)
    np.testing.assert_allclose(cols["n"], (0.2 * cols["t"]) ** 2, atol=1e-8)


def test_evolve_states_columns(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"cutoff": 30, "steps": 4, "include_states": True, "models": ["full"]}))
    out = tmp_path / "s.csv"
    assert main(["evolve", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
    header = out.read_text().splitlines()[1].split(",")
    assert "psi61_im" in header


def test_compare_examples(tmp_path, capsys):
    out = tmp_path / "a.csv"
    assert main(["compare", "--model", "full,bosonic", "--omega0", "0", "--cutoff", "30", "--out", str(out)]) == EXIT_OK
    np.testing.assert_allclose(read_csv(out)["fidelity"], 1.0, atol=1e-10)
    assert main(["compare", "--model", "full,transform", "--g", "0", "--cutoff", "30", "--out", str(out)]) == EXIT_OK
    np.testing.assert_allclose(read_csv(out)["fidelity"], 1.0, atol=1e-10)
    assert main(["compare", "--model", "full,coupling", "--cutoff", "40", "--out", str(out)]) == EXIT_OK
    assert read_csv(out)["fidelity"].min() == pytest.approx(0.0558638070769242, abs=1e-10)


def test_compare_needs_two_kinds(capsys):
    assert main(["compare", "--model", "full"]) == EXIT_USAGE
    assert main(["compare", "--model", "full,cat"]) == EXIT_USAGE


def test_spectrum_bosonic(tmp_path, capsys):
    out = tmp_path / "sp.csv"
    assert main(["spectrum", "--model", "bosonic", "--g", "0.4", "--cutoff", "128", "--out", str(out)]) == EXIT_OK
    cols = read_csv(out)
    assert "cross-block norm 0.000e+00" in capsys.readouterr().out
    low = np.sort(cols["energy"])[:20]
    expected = np.repeat(np.arange(10) - 0.16, 2)
    np.testing.assert_allclose(low, expected, atol=1e-8)


def test_spectrum_uncoupled(tmp_path):
    out = tmp_path / "sp.csv"
    assert main(["spectrum", "--model", "full", "--g", "0", "--cutoff", "20", "--out", str(out)]) == EXIT_OK
    cols = read_csv(out)
    n = np.arange(21)
    expected = np.sort(np.concatenate([n + 0.4, n - 0.4]))
    np.testing.assert_allclose(np.sort(cols["energy"]), expected, atol=1e-12)
    # |e,0> has energy +0.4 and sits in the + sector
    plus = cols["energy"][cols["sector"] == 1]
    assert np.min(np.abs(plus - 0.4)) <= 1e-12
    minus = cols["energy"][cols["sector"] == -1]
    assert np.min(np.abs(minus - 0.4)) > 0.5


def test_cutoff_refusal(capsys):
    assert main(["evolve", "--model", "bosonic", "--g", "3", "--cutoff", "64"]) == EXIT_CUTOFF
    assert "required cutoff: 104" in capsys.readouterr().err
    assert main(["compare", "--model", "full,coupling", "--g", "3"]) == EXIT_CUTOFF
    assert main(["spectrum", "--model", "full", "--g", "3"]) == EXIT_CUTOFF
    assert main(["evolve", "--model", "full", "--initial", "coh:e:5", "--cutoff", "64"]) == EXIT_CUTOFF


def test_usage_errors(tmp_path, capsys):
    assert main([]) == EXIT_USAGE
    assert main(["launch"]) == EXIT_USAGE
    assert main(["evolve", "--model", "dicke"]) == EXIT_USAGE
    assert main(["evolve", "--initial", "x9"]) == EXIT_USAGE
    assert main(["evolve", "--cutoff", "0"]) == EXIT_USAGE
    assert main(["evolve", "--steps", "0"]) == EXIT_USAGE
    assert main(["verify", "--config", str(tmp_path / "missing.json")]) == EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"omega": 1.0, "colour": "red"}))
    assert main(["verify", "--config", str(bad)]) == EXIT_USAGE
    assert "colour" in capsys.readouterr().err
    bad.write_text("[1, 2]")
    assert main(["verify", "--config", str(bad)]) == EXIT_USAGE
    assert main(["verify", "--out", str(tmp_path / "no" / "such" / "dir.csv")]) == EXIT_USAGE


def test_help_exits_ok(capsys):
    assert main(["--help"]) == EXIT_OK


def test_print_config_shows_defaults(capsys):
    assert main(["evolve", "--print-config", "--g", "0.25"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["g"] == 0.25
    defaults = RunConfig()
    for key in ("omega", "omega0", "cutoff", "t0", "t1", "steps", "initial", "tolerance",
                "exp_tolerance", "fermionic_factor"):
        assert data[key] == getattr(defaults, key)


def test_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"g": 0.1, "cutoff": 30}))
    assert main(["verify", "--config", str(cfg), "--g", "0.2", "--print-config"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["g"] == 0.2 and data["cutoff"] == 30


def test_config_round_trip():
    cfg = RunConfig(g=0.2, models=["full", "coupling"])
    assert RunConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"bogus": 1})
    with pytest.raises(ConfigError):
        RunConfig.from_json("{not json")


def test_initial_state_language():
    assert parse_initial("e0") == ("e", "fock", 0)
    assert parse_initial("g3") == ("g", "fock", 3)
    assert parse_initial("+0") == ("+", "fock", 0)
    assert parse_initial("coh:e:0.5+0.1i") == ("e", "coherent", 0.5 + 0.1j)
    for bad in ("e", "x1", "coh:e:abc", "coh:q:1"):
        with pytest.raises(ConfigError):
            parse_initial(bad)
    spec = FockSpec(30)
    psi = build_initial("g3", spec)
    assert np.flatnonzero(psi.vec).tolist() == [spec.dim + 3]
    psi = build_initial("coh:e:0.5+0.1i", spec)
    amp = psi.vec[:spec.dim]
    n = np.arange(spec.dim)
    a_mean = np.vdot(amp[:-1], np.sqrt(n[1:]) * amp[1:])
    assert abs(a_mean - (0.5 + 0.1j)) <= 1e-10
    with pytest.raises(ConfigError):
        build_initial("e31", spec)


def test_csv_bytes_stable(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["evolve", "--model", "full", "--cutoff", "30", "--steps", "10"]
    assert main(args + ["--out", str(a)]) == EXIT_OK
    assert main(args + ["--out", str(b)]) == EXIT_OK
    raw = a.read_bytes()
    assert raw == b.read_bytes()
    assert b"\r" not in raw
    value = raw.decode().splitlines()[2].split(",")[0]
    assert value == "0"
    assert math.isclose(float(raw.decode().splitlines()[3].split(",")[0]), 2 * math.pi / 10)
