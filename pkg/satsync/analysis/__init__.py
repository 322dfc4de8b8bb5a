from .zone import BOUNDARY_PAIR, epsilon_margin, gain_zone_check, zone_grid
from .certificate import (
    RESIDUAL_TOL,
    LyapunovCertificate,
    build_certificate,
    certificate_for,
    phi_matrix,
    weighting,
)
from .diagnostics import (
    LyapunovSeries,
    SyncMetrics,
    e_recursion_residual,
    ebar_recursion_residual,
    fit_decay_rate,
    lyapunov_series,
    settling_step,
    sync_metrics,
)
