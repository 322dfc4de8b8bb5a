import pytest

from satsync.analysis import sync_metrics
from satsync.sim import build_case, run


@pytest.mark.slow
@pytest.mark.parametrize("which", ["I", "II", "III"])
def test_cases_converge(which):
    cfg = build_case(which)
    for seed in range(1, 11):
        metrics = sync_metrics(run(cfg.replace(seed=seed)), threshold=1e-6, dwell=50)
        assert metrics.converged, f"case {which}, seed {seed}"
        assert metrics.settling_step + 50 <= cfg.horizon + 1


@pytest.mark.slow
def test_case_three_seed_seven():
    assert sync_metrics(run(build_case("III", seed=7))).converged


@pytest.mark.slow
@pytest.mark.parametrize("which", ["I", "II"])
def test_full_coupling_cases_converge(which):
    cfg = build_case(which, coupling="full")
    for seed in range(1, 4):
        assert sync_metrics(run(cfg.replace(seed=seed))).converged
