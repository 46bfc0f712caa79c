import numpy as np
import pytest

from decolab import acceptance, channels, cli
from decolab.channels import Channel, InitialState
from decolab.cli import BadConfigError, RankTooHighError, RunConfig


def _read_rows(path):
    lines = path.read_text().splitlines()
    assert lines[0] == cli.CSV_HEADER
    rows = []
    for line in lines[1:]:
        kt, raw, norm, rank, ppt_min = line.split(",")
        rows.append((float(kt), float(raw), float(norm), int(rank), float(ppt_min)))
    return rows


def test_curve_ghz_z_three_points(tmp_path):
    out = tmp_path / "ghz.csv"
    rc = cli.main([
        "curve", "--state", "ghz", "--channel", "pauli-z",
        "--kt-max", "1", "--points", "3", "--out", str(out),
    ])
    assert rc == 0
    rows = _read_rows(out)
    assert [r[0] for r in rows] == [0.0, 0.5, 1.0]
    expected = [1.0, np.exp(-3.0), np.exp(-6.0)]
    assert np.allclose([r[2] for r in rows], expected, atol=1e-11)
    assert rows[0][3] == 1 and rows[1][3] == 2


def test_curve_w_z_three_points(tmp_path):
    out = tmp_path / "w.csv"
    assert cli.main([
        "curve", "--state", "w", "--channel", "pauli-z",
        "--kt-max", "1", "--points", "3", "--out", str(out),
    ]) == 0
    norms = [r[2] for r in _read_rows(out)]
    assert np.allclose(norms, [1.0, np.exp(-2.0), np.exp(-4.0)], atol=1e-11)


def test_curve_initial_point_is_normalized(tmp_path):
    out = tmp_path / "tiny.csv"
    cli.cmd_curve(RunConfig(
        state=InitialState.W, channel=Channel.DEPOLARIZING,
        kt_max=1e-4, points=2, output_path=str(out),
    ))
    rows = _read_rows(out)
    assert abs(rows[0][2] - 1.0) < 1e-6


def test_curve_is_byte_identical(tmp_path):
    outs = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for out in outs:
        cli.cmd_curve(RunConfig(
            state=InitialState.GHZ, channel=Channel.PAULI_X,
            kt_max=0.8, points=9, seed=4, output_path=str(out),
        ))
    assert outs[0].read_bytes() == outs[1].read_bytes()


def test_curve_numeric_mode(tmp_path):
    out = tmp_path / "num.csv"
    assert cli.main([
        "curve", "--state", "ghz", "--channel", "pauli-z", "--mode", "numeric",
        "--kt-max", "0.2", "--points", "3", "--dt", "1e-3", "--out", str(out),
    ]) == 0
    rows = _read_rows(out)
    assert np.allclose([r[2] for r in rows],
                       [1.0, np.exp(-0.6), np.exp(-1.2)], atol=1e-7)


def test_curve_rejects_bad_points(tmp_path, capsys):
    rc = cli.main([
        "curve", "--state", "ghz", "--channel", "pauli-z",
        "--points", "1", "--out", str(tmp_path / "x.csv"),
    ])
    assert rc == 2
    assert "points" in capsys.readouterr().err


def test_curve_rejects_bad_kt_max(tmp_path, capsys):
    rc = cli.main([
        "curve", "--state", "ghz", "--channel", "pauli-z",
        "--kt-max", "0", "--out", str(tmp_path / "x.csv"),
    ])
    assert rc == 2
    assert "kt_max" in capsys.readouterr().err


def test_curve_numeric_rejects_large_step(tmp_path, capsys):
    rc = cli.main([
        "curve", "--state", "ghz", "--channel", "pauli-z", "--mode", "numeric",
        "--dt", "0.2", "--kt-max", "1", "--points", "3",
        "--out", str(tmp_path / "x.csv"),
    ])
    assert rc == 2
    assert "0.1" in capsys.readouterr().err


def test_curve_unwritable_path(capsys):
    rc = cli.main([
        "curve", "--state", "ghz", "--channel", "pauli-z",
        "--points", "2", "--out", "/nonexistent-dir/x.csv",
    ])
    assert rc == 2


def test_thread_env_is_validated(monkeypatch, tmp_path):
    monkeypatch.setenv("DECOLAB_THREADS", "three")
    with pytest.raises(BadConfigError):
        cli.compute_curve(RunConfig(
            state=InitialState.GHZ, channel=Channel.PAULI_Z,
            kt_max=0.1, points=2, output_path=str(tmp_path / "x.csv"),
        ))


def test_thread_env_serial_matches_parallel(monkeypatch, tmp_path):
    config = RunConfig(
        state=InitialState.W, channel=Channel.PAULI_Z,
        kt_max=0.5, points=6, output_path="unused",
    )
    monkeypatch.setenv("DECOLAB_THREADS", "1")
    serial = cli.format_rows(cli.compute_curve(config))
    monkeypatch.setenv("DECOLAB_THREADS", "4")
    parallel = cli.format_rows(cli.compute_curve(config))
    assert serial == parallel


def test_roof_command_reports_coincidence(capsys):
    rc = cli.main([
        "roof", "--state", "ghz", "--channel", "pauli-z",
        "--kt", "0.2", "--restarts", "4", "--seed", "0",
    ])
    assert rc == 0
    lines = dict(
        line.split(None, 1) for line in capsys.readouterr().out.strip().splitlines()
    )
    diff = float(lines["difference"])
    assert abs(diff) <= 5e-3
    assert lines["converged"] == "True"
    assert lines["restarts_used"] == "4"


def test_roof_rank8_requires_override(capsys):
    rc = cli.main([
        "roof", "--state", "ghz", "--channel", "pauli-y", "--kt", "0.4",
    ])
    assert rc == 2
    assert "rank" in capsys.readouterr().err


def test_roof_rank_gate_direct():
    with pytest.raises(RankTooHighError):
        cli.cmd_roof("w", "depolarizing", 0.3, restarts=1, seed=0)


def test_mutated_coefficients_fail_the_integrator_check(monkeypatch):
    # a sign error in the bit-phase-flip cross coherence must be caught by
    # the RK4-vs-closed-form oracle and reported against ghz/pauli-y
    true_fn = channels.analytic_coefficients

    def broken(initial, channel, kt):
        coeff = dict(true_fn(initial, channel, kt))
        if "beta_cross" in coeff:
            coeff["beta_cross"] = -coeff["beta_cross"]
        return coeff

    monkeypatch.setattr(channels, "analytic_coefficients", broken)
    results = acceptance.run_checks(numbers=[8])
    assert not results[0].passed
    assert "ghz/pauli-y" in results[0].detail


def test_verify_exit_reflects_failures(monkeypatch):
    calls = {}

    def fake_run_checks():
        calls["ran"] = True
        return [
            acceptance.CheckResult(1, "a", True, "ok"),
            acceptance.CheckResult(2, "b", False, "broken"),
        ]

    monkeypatch.setattr(acceptance, "run_checks", fake_run_checks)
    assert cli.main(["verify"]) == 1
    assert calls["ran"]
