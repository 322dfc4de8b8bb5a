import numpy as np

from satsync.analysis.zone import epsilon_margin, gain_zone_check
from satsync.dynamics.agent import system_matrices
from satsync.errors import CertificateError, GainError
from satsync.graph import analyze, dbar, graph_hash
from satsync.linalg import (
    eigvals,
    is_positive_definite,
    is_schur,
    kron,
    lyapunov_residual,
    solve_discrete_lyapunov,
    spectral_norm,
    spectral_radius,
)

RESIDUAL_TOL = 1e-8


class LyapunovCertificate:
    """
    Numerical objects of the weighted Lyapunov argument for one graph, root, bound vector and
    gain pair: D_bar, Psi = D_bar (x) A - I, ||Psi||, epsilon, h, P_D and Phi.
    """

    def __init__(
        self,
        dbar,
        psi,
        psi_norm,
        epsilon,
        h,
        p_d,
        phi,
        k1,
        k2,
        n,
        theta,
        din_bounds,
        graph_digest=None,
        observer_rho=None,
    ):
        self.dbar = dbar
        self.psi = psi
        self.psi_norm = psi_norm
        self.epsilon = epsilon
        self.h = h
        self.p_d = p_d
        self.phi = phi
        self.k1 = k1
        self.k2 = k2
        self.n = n
        self.theta = theta
        self.din_bounds = din_bounds
        self.graph_digest = graph_digest
        self.observer_rho = observer_rho

    @property
    def closed_loop(self):
        """
        D_bar (x) A, the transition matrix of the estimation error e.
        """
        return kron(self.dbar, system_matrices(self.n)[0])

    @property
    def rho(self):
        return spectral_radius(self.closed_loop)

    @property
    def residual(self):
        q = 2.0 * np.eye(self.p_d.shape[0])
        return lyapunov_residual(self.closed_loop, self.p_d, q)

    def verify(self):
        """
        Re-check the certificate independently of its construction.
        """
        m = self.closed_loop
        q = 2.0 * np.eye(m.shape[0])
        checks = {
            "phi_negative_definite": is_positive_definite(-self.phi),
            "lyapunov_residual": lyapunov_residual(m, self.p_d, q) < RESIDUAL_TOL,
            "p_d_positive_definite": is_positive_definite(self.p_d),
            "contraction": spectral_radius(m) < 1.0,
        }
        if self.observer_rho is not None:
            checks["observer_schur"] = self.observer_rho < 1.0
        return checks

    @property
    def is_sound(self):
        return all(self.verify().values())

    def to_record(self):
        return {
            "gains": {"k1": self.k1, "k2": self.k2},
            "graph_hash": self.graph_digest,
            "theta": self.theta,
            "n": self.n,
            "din_bounds": [float(d) for d in self.din_bounds],
            "epsilon": self.epsilon,
            "h": self.h,
            "psi_norm": self.psi_norm,
            "rho": self.rho,
            "lyapunov_residual": self.residual,
            "p_d_shape": list(self.p_d.shape),
            "phi": self.phi.tolist(),
            "phi_eigenvalues": sorted(float(v) for v in np.linalg.eigvalsh(self.phi)),
            "observer_rho": self.observer_rho,
            "checks": self.verify(),
            "sound": self.is_sound,
        }


def weighting(psi_norm, epsilon, k1, k2):
    """
    Midpoint between the threshold h* = B / (epsilon + B), B = ||Psi||^2 (k1^2 + k2^2), and 1.
    """
    b = psi_norm ** 2 * (k1 ** 2 + k2 ** 2)
    h_star = b / (epsilon + b)
    return h_star + (1.0 - h_star) / 2.0


def phi_matrix(psi_norm, h, k1, k2):
    c = 1.0 + k1 - k2
    return np.array(
        [
            [-1.0 + psi_norm ** 2 * (1.0 - h) * (k1 ** 2 + k2 ** 2) / h, c],
            [c, -(1.0 - k1)],
        ]
    )


def build_certificate(g, theta, din_bounds, k1, k2, n=1, observer=None):
    """
    Assemble and check the certificate; observer = (f1, f2) adds the A - FC check of the
    partial-state protocol.
    """
    if not gain_zone_check(k1, k2):
        raise GainError(f"certificates are only built inside the open zone, got ({k1!r}, {k2!r})")
    k1, k2 = float(k1), float(k2)
    analysis = analyze(g)
    d = dbar(analysis, theta, din_bounds)

    a, _, c = system_matrices(n)
    m = kron(d, a)
    psi = m - np.eye(m.shape[0])
    psi_norm = spectral_norm(psi)
    epsilon = epsilon_margin(k1, k2)
    h = weighting(psi_norm, epsilon, k1, k2)
    p_d = solve_discrete_lyapunov(m, 2.0 * np.eye(m.shape[0]))
    phi = phi_matrix(psi_norm, h, k1, k2)

    observer_rho = None
    if observer is not None:
        f = np.kron(np.array([[observer[0]], [observer[1]]]), np.eye(n))
        a_fc = a - f @ c
        observer_rho = spectral_radius(a_fc)
        if not is_schur(a_fc):
            raise GainError(f"A - FC is not Schur (spectral radius {observer_rho!r})")

    bounds = np.array(analysis.in_degrees if din_bounds is None else din_bounds, dtype=np.float64)
    cert = LyapunovCertificate(
        dbar=d,
        psi=psi,
        psi_norm=psi_norm,
        epsilon=epsilon,
        h=h,
        p_d=p_d,
        phi=phi,
        k1=k1,
        k2=k2,
        n=n,
        theta=theta,
        din_bounds=bounds,
        graph_digest=graph_hash(g),
        observer_rho=observer_rho,
    )
    if not is_positive_definite(-phi):
        raise CertificateError(f"Phi is not negative definite: eigenvalues {eigvals(phi).tolist()}")
    failed = [name for name, ok in cert.verify().items() if not ok]
    if failed:
        raise CertificateError(f"certificate checks failed: {failed}")
    return cert


def certificate_for(cfg):
    """
    Certificate for a simulation config (graph, root, bounds and gains of cfg).
    """
    gains = cfg.gains
    observer = (gains.f1, gains.f2) if cfg.coupling == "partial" else None
    return build_certificate(cfg.graph, gains.theta, cfg.din_bounds, gains.k1, gains.k2, cfg.n, observer)
