import numpy as np
import pytest

from satsync.analysis import (
    certificate_for,
    e_recursion_residual,
    ebar_recursion_residual,
    fit_decay_rate,
    lyapunov_series,
    settling_step,
    sync_metrics,
)
from satsync.dynamics import GainParams, system_matrices
from satsync.errors import ValidationError
from satsync.graph import WeightedDigraph
from satsync.linalg import kron
from satsync.sim import RecordFlags, SimConfig, Trajectory, build_case, run


def synthetic(disagreement, e_norm=None):
    disagreement = np.asarray(disagreement, dtype=np.float64)
    arrays = {
        "disagreement": disagreement,
        "e_norm": disagreement.copy() if e_norm is None else np.asarray(e_norm, dtype=np.float64),
        "state_scale": np.ones_like(disagreement),
    }
    return Trajectory(theta=1, followers=np.array([2]), coupling="full", n=1, arrays=arrays)


def test_settling_step():
    assert settling_step(np.zeros(10), 1e-6) == 0
    assert settling_step(np.array([1.0, 0.5, 1e-7, 1e-8]), 1e-6) == 2
    assert settling_step(np.array([1.0, 1e-7, 1.0, 1e-7]), 1e-6) == 3
    assert settling_step(np.array([1.0, 1e-7, 1.0]), 1e-6) is None


def test_fit_decay_rate():
    k = np.arange(200)
    assert abs(fit_decay_rate(10.0 * 0.5 ** k) - np.log(0.5)) < 1e-9

    # A polynomial factor k^d does not bias the rate.
    steps = np.arange(120)
    for degree in (1, 3, 4):
        assert abs(fit_decay_rate(5.0 * steps**degree * 0.5**steps) - np.log(0.5)) < 1e-9

    # Short segments get a straight-line fit.
    assert abs(fit_decay_rate(0.5 ** np.arange(6)) - np.log(0.5)) < 1e-12

    # The fit starts at the peak and stops at exact zeros.
    norms = np.concatenate([[1.0, 4.0], 8.0 * 0.25 ** np.arange(20), np.zeros(5)])
    assert abs(fit_decay_rate(norms) - np.log(0.25)) < 1e-9

    # A rounding floor proportional to the state scale ends the fit early.
    norms = np.maximum(0.5 ** k, 1e-13)
    assert abs(fit_decay_rate(norms, scale=np.full(200, 10.0)) - np.log(0.5)) < 1e-9

    assert fit_decay_rate(np.zeros(10)) is None
    assert fit_decay_rate(np.array([1.0, 0.0, 0.0])) is None


def test_sync_metrics_synthetic():
    metrics = sync_metrics(synthetic(np.zeros(100)))
    assert metrics.converged
    assert metrics.settling_step == 0
    assert metrics.e_decay_rate is None

    growing = synthetic(np.exp(0.01 * np.arange(500)))
    metrics = sync_metrics(growing)
    assert not metrics.converged
    assert metrics.settling_step is None

    # Settled, but for fewer than dwell steps.
    late = synthetic(np.concatenate([np.ones(80), np.zeros(20)]))
    assert not sync_metrics(late, dwell=50).converged
    assert sync_metrics(late, dwell=20).converged


def test_lyapunov_series_zero():
    g = WeightedDigraph.from_edges(2, [(1, 2, 1.0)])
    cfg = SimConfig(g, GainParams(0.5, 1.0), coupling="full", horizon=5, record=RecordFlags(lyapunov=True))
    cert = certificate_for(cfg)
    zeros = {
        "disagreement": np.zeros(6),
        "state_scale": np.zeros(6),
        "e_norm": np.zeros(6),
        "u": np.zeros((6, 2, 1)),
        "sigma_u": np.zeros((6, 2, 1)),
        "xbar": np.zeros((6, 1, 2)),
        "e": np.zeros((6, 1, 2)),
    }
    series = lyapunov_series(Trajectory(1, np.array([2]), "full", 1, zeros), cert)
    assert np.all(series.v == 0.0)
    assert np.all(series.dv == 0.0)
    assert len(series.dv) == 5


def test_lyapunov_series_rejects():
    cfg = build_case("I", horizon=10)
    traj = run(cfg)
    with pytest.raises(ValidationError):
        lyapunov_series(traj, certificate_for(cfg))

    cfg = build_case("I", coupling="full", horizon=10, record=RecordFlags(inputs=False, e=False))
    with pytest.raises(ValidationError):
        lyapunov_series(run(cfg), certificate_for(cfg))


@pytest.mark.parametrize("seed", range(1, 11))
def test_lyapunov_decrease(seed):
    cfg = build_case("I", coupling="full", seed=seed, record=RecordFlags(lyapunov=True))
    cert = certificate_for(cfg)
    series = lyapunov_series(run(cfg), cert)

    assert np.all(series.v1 >= -1e-12 * max(1.0, series.v1.max()))
    assert np.all(series.dv <= 1e-9 * max(1.0, series.v[0]))
    assert series.v[-1] < 1e-10 * series.v[0]
    assert series.summary()["v1_violations"] == 0


def test_e_closed_form():
    cfg = build_case("I", coupling="full", seed=42, horizon=60)
    traj = run(cfg)
    m = kron(certificate_for(cfg).dbar, system_matrices(1)[0])
    e0 = traj.e[0].reshape(-1)
    for k in range(51):
        expected = np.linalg.matrix_power(m, k) @ e0
        assert np.max(np.abs(traj.e[k].reshape(-1) - expected)) < 1e-8

    residual = e_recursion_residual(traj, certificate_for(cfg).dbar)
    assert np.all(residual < 1e-10 * np.maximum(1.0, traj.state_scale[1:]))


@pytest.mark.parametrize("randomize", [False, True])
def test_partial_recursions(randomize):
    cfg = build_case("II", seed=3, horizon=300, randomize_controllers=randomize)
    traj = run(cfg)
    scale = np.maximum(1.0, traj.state_scale[1:])

    assert np.all(e_recursion_residual(traj, certificate_for(cfg).dbar) < 1e-8 * scale)
    assert np.all(ebar_recursion_residual(traj, cfg.gains.observer_matrix()) < 1e-8 * scale)


def test_decay_rates():
    traj = run(build_case("I", seed=42))
    metrics = sync_metrics(traj)
    assert metrics.converged
    assert np.log(0.5) - 0.1 <= metrics.e_decay_rate <= np.log(0.5) + 0.05
    # Observer error contracts with the spectral radius of A - FC.
    assert np.exp(metrics.ebar_decay_rate) <= 0.55

    metrics = sync_metrics(run(build_case("I", coupling="full", seed=42)))
    assert metrics.converged
    assert metrics.ebar_decay_rate is None
    assert np.log(0.5) - 0.1 <= metrics.e_decay_rate <= np.log(0.5) + 0.05


def test_raw_feed_observer():
    # The observer does not see chi, so e_bar contracts whichever input chi is fed.
    cfg = build_case("I", seed=5, horizon=30, chi_feed="raw", randomize_controllers=True)
    traj = run(cfg)
    scale = np.maximum(1.0, traj.state_scale[1:])
    assert np.all(ebar_recursion_residual(traj, cfg.gains.observer_matrix()) < 1e-8 * scale)
