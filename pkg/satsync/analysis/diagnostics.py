from typing import NamedTuple, Optional

import numpy as np

from satsync.dynamics.agent import system_matrices
from satsync.errors import ValidationError

# Norms at or below this are treated as exact zeros by the decay fit.
ZERO_FLOOR = 1e-300
# Derived errors (e, e_bar) are differences of absolute states and carry rounding of order
# eps * |x(k)|; the decay fit stops once they reach FLOOR_RTOL * |x(k)|.
FLOOR_RTOL = 1e-12
# Minimum length of the fitted tail.
TAIL_POINTS = 8


class LyapunovSeries(NamedTuple):
    v1: np.ndarray
    v2: np.ndarray
    v: np.ndarray
    dv: np.ndarray

    def summary(self):
        return {
            "v0": float(self.v[0]),
            "v_final": float(self.v[-1]),
            "max_dv": float(np.max(self.dv)) if len(self.dv) else 0.0,
            "v1_violations": int(np.sum(self.v1 < 0.0)),
        }


class SyncMetrics(NamedTuple):
    disagreement: np.ndarray
    settling_step: Optional[int]
    converged: bool
    e_decay_rate: Optional[float]
    ebar_decay_rate: Optional[float] = None

    @property
    def final_disagreement(self):
        return float(self.disagreement[-1])

    def to_dict(self):
        return {
            "converged": self.converged,
            "settling_step": self.settling_step,
            "final_disagreement": self.final_disagreement,
            "e_decay_rate": self.e_decay_rate,
            "ebar_decay_rate": self.ebar_decay_rate,
            "disagreement": [float(d) for d in self.disagreement],
        }


def lyapunov_series(traj, cert, gains=None):
    """
    V1 = (sat(u); x_bar2)^T ([[1, k1], [k1, k1]] (x) I) (sat(u); x_bar2) + 2 sat(u)^T (u - sat(u)),
    V2 = e^T P_D e and V = (1 - h) V1 + h V2 over the followers of a full-state run.
    """
    if traj.coupling != "full":
        raise ValidationError("the Lyapunov series is defined for full-state coupling runs")
    traj.require("u", "sigma_u", "xbar", "e")
    k1 = cert.k1 if gains is None else gains.k1
    n = traj.n
    followers = traj.followers - 1

    u = traj.u[:, followers]
    s = traj.sigma_u[:, followers]
    xbar2 = traj.xbar[:, :, n:]
    v1 = np.sum(s * s + 2.0 * k1 * s * xbar2 + k1 * xbar2 * xbar2, axis=(1, 2))
    v1 = v1 + 2.0 * np.sum(s * (u - s), axis=(1, 2))

    e = traj.e.reshape(traj.num_steps, -1)
    if e.shape[1] != cert.p_d.shape[0]:
        raise ValidationError(f"P_D of size {cert.p_d.shape[0]} does not match errors of size {e.shape[1]}")
    v2 = np.einsum("ki,ij,kj->k", e, cert.p_d, e)

    v = (1.0 - cert.h) * v1 + cert.h * v2
    return LyapunovSeries(v1=v1, v2=v2, v=v, dv=np.diff(v))


def settling_step(disagreement, threshold):
    """
    First k after which the disagreement stays below threshold, None if it never does.
    """
    above = np.flatnonzero(~(disagreement < threshold))
    if not len(above):
        return 0
    if above[-1] == len(disagreement) - 1:
        return None
    return int(above[-1]) + 1


def fit_decay_rate(norms, scale=None):
    """
    Geometric decay rate of ||e(k)|| between its peak and its floor (ZERO_FLOOR, or
    FLOOR_RTOL * scale[k] when scale is given). Segments of at least 2 * TAIL_POINTS samples are
    fitted on their second half against log ||e|| = c + r k + p log k, so the polynomial factor of
    a defective mode is absorbed by p. Shorter segments get a straight-line fit from the peak.
    None with fewer than two points.
    """
    norms = np.asarray(norms, dtype=np.float64)
    floor = np.full(norms.shape, ZERO_FLOOR)
    if scale is not None:
        floor = np.maximum(floor, FLOOR_RTOL * np.asarray(scale, dtype=np.float64))

    peak = int(np.argmax(norms))
    below = np.flatnonzero(norms[peak:] <= floor[peak:])
    stop = peak + (int(below[0]) if len(below) else len(norms) - peak)
    if stop - peak < 2:
        return None
    if stop - peak < 2 * TAIL_POINTS:
        slope, _ = np.polyfit(np.arange(peak, stop), np.log(norms[peak:stop]), 1)
        return float(slope)

    start = (peak + stop) // 2
    steps = np.arange(start, stop, dtype=np.float64)
    center, width = steps.mean(), steps[-1] - steps[0]
    design = np.column_stack([np.ones_like(steps), (steps - center) / width, np.log(steps / center)])
    coef, *_ = np.linalg.lstsq(design, np.log(norms[start:stop]), rcond=None)
    return float(coef[1] / width)


def sync_metrics(traj, threshold=1e-6, dwell=50):
    assert dwell >= 1
    disagreement = traj.disagreement
    settling = settling_step(disagreement, threshold)
    converged = settling is not None and len(disagreement) - settling >= dwell

    ebar_rate = None
    if traj.has("ebar_norm"):
        ebar_rate = fit_decay_rate(traj.ebar_norm, traj.state_scale)
    return SyncMetrics(
        disagreement=disagreement,
        settling_step=settling,
        converged=converged,
        e_decay_rate=fit_decay_rate(traj.e_norm, traj.state_scale),
        ebar_decay_rate=ebar_rate,
    )


def e_recursion_residual(traj, dbar):
    """
    Per-step max |e(k+1) - [(D_bar (x) A) e(k) + (I (x) A) e_bar(k)]|, the e_bar term only for
    partial-state runs.
    """
    traj.require("e")
    a = system_matrices(traj.n)[0]
    e = traj.e
    predicted = np.einsum("ij,kjd->kid", dbar, e[:-1] @ a.T)
    if traj.coupling == "partial":
        traj.require("ebar")
        predicted = predicted + traj.ebar[:-1] @ a.T
    return np.max(np.abs(e[1:] - predicted), axis=(1, 2))


def ebar_recursion_residual(traj, observer_matrix):
    """
    Per-step max |e_bar(k+1) - (I (x) (A - FC)) e_bar(k)|.
    """
    traj.require("ebar")
    ebar = traj.ebar
    return np.max(np.abs(ebar[1:] - ebar[:-1] @ observer_matrix.T), axis=(1, 2))
