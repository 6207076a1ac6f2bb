"""Analytic coupling thresholds and convergence-rate bounds.

Every bound is degree-1 in the natural frequencies. Norm-based formulas
use mean-centered omega (adding a constant to every frequency only spins
the reference frame); spread-based formulas are translation-invariant
as written. The K appearing in rate formulas refers to the gain of the
(K/n)-normalized coupling forms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import OscillatorNetwork
from .graphs import DisconnectedGraphError, complete_graph, laplacian, spectrum


def _centered(omega: np.ndarray) -> np.ndarray:
    omega = np.asarray(omega, dtype=float)
    return omega - omega.mean()


def _check_n(omega: np.ndarray, n: int | None) -> int:
    size = int(np.asarray(omega).size)
    if n is not None and int(n) != size:
        raise ValueError(f"n = {n} does not match len(omega) = {size}")
    return size


def k_lower_spectral(n: int, omega: np.ndarray, lambda2: float) -> float:
    """Existence bound 2 sqrt(n) ||omega||_2 / lambda2: at least one locked state above it."""
    if lambda2 <= 0:
        raise DisconnectedGraphError(f"lambda2 must be > 0 (connected graph), got {lambda2}")
    _check_n(omega, n)
    return float(2.0 * np.sqrt(n) * np.linalg.norm(_centered(omega)) / lambda2)


def k_unique(n: int, omega: np.ndarray, lambda2: float, lambda_max: float) -> float:
    """Uniqueness bound (pi^2/4) n lambda_max ||omega||_2 / lambda2^2."""
    if lambda2 <= 0:
        raise DisconnectedGraphError(f"lambda2 must be > 0 (connected graph), got {lambda2}")
    _check_n(omega, n)
    return float((np.pi**2 / 4.0) * n * lambda_max * np.linalg.norm(_centered(omega)) / lambda2**2)


def e_max(n: int) -> tuple[float, float]:
    """Largest coupling-sum capacity of an extremal two-phase split.

    Maximizing E(delta) = 2 sin(delta) + 2(n-2) sin(delta/2) gives the
    quadratic root cos(delta/2) = (-(n-2) + sqrt((n-2)^2 + 32)) / 8.
    Returns (delta_opt, E_max). The (n-2) factor makes n = 2 come out
    right without a special case.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    root = (-(n - 2) + np.sqrt((n - 2) ** 2 + 32.0)) / 8.0
    delta_opt = 2.0 * np.arccos(root)
    value = 2.0 * np.sin(delta_opt) + 2.0 * (n - 2) * np.sin(delta_opt / 2.0)
    return float(delta_opt), float(value)


def k_c_onset(omega: np.ndarray, n: int | None = None) -> float:
    """Necessary onset gain (omega_max - omega_min) n / E_max(n): below it sync is impossible."""
    n = _check_n(omega, n)
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    spread = float(np.max(omega) - np.min(omega))
    _, cap = e_max(n)
    return spread * n / cap


def k_l_classical(omega: np.ndarray, n: int | None = None) -> float:
    """The earlier necessary bound (omega_max - omega_min) n / (2(n-1))."""
    n = _check_n(omega, n)
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    spread = float(np.max(omega) - np.min(omega))
    return spread * n / (2.0 * (n - 1))


def k_inv(omega: np.ndarray, n: int | None = None, epsilon: float = np.pi / 8) -> float:
    """Gain keeping phases inside an arc of width pi/2 - 2 eps once they start there.

    Requires 0 < eps < pi/4 so cos(2 eps) stays positive; the bound
    diverges as eps approaches pi/4.
    """
    if not 0.0 < epsilon < np.pi / 4:
        raise ValueError(f"epsilon must lie in (0, pi/4), got {epsilon}")
    n = _check_n(omega, n)
    spread = float(np.max(omega) - np.min(omega))
    return n * spread / (2.0 * np.cos(2.0 * epsilon))


def rate_identical(K: float, n: int, lambda2: float) -> float:
    """Guaranteed disagreement decay rate (2K / (pi n)) lambda2 for identical frequencies."""
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    if lambda2 <= 0:
        raise DisconnectedGraphError(f"lambda2 must be > 0 (connected graph), got {lambda2}")
    return float((2.0 * K / (np.pi * n)) * lambda2)


def rate_nonidentical(K: float, epsilon: float) -> float:
    """Guaranteed rate sqrt(K sin(2 eps)) once phases live in the invariant arc."""
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    if not 0.0 < epsilon < np.pi / 4:
        raise ValueError(f"epsilon must lie in (0, pi/4), got {epsilon}")
    return float(np.sqrt(K * np.sin(2.0 * epsilon)))


@dataclass(frozen=True)
class ThresholdReport:
    n: int
    omega_norm2: float  # of the mean-centered frequencies
    omega_spread: float
    lambda2: float
    lambda_max: float
    epsilon: float | None
    k_lower_spectral: float
    k_unique: float
    e_max: float
    delta_opt: float
    k_c_onset: float
    k_l_classical: float
    k_inv: float | None
    rate_identical: float
    rate_nonidentical: float | None
    omega_convention: str = "mean_centered_for_norm_bounds"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "omega_norm2": self.omega_norm2,
            "omega_spread": self.omega_spread,
            "lambda2": self.lambda2,
            "lambda_max": self.lambda_max,
            "epsilon": self.epsilon,
            "k_lower_spectral": self.k_lower_spectral,
            "k_unique": self.k_unique,
            "e_max": self.e_max,
            "delta_opt": self.delta_opt,
            "k_c_onset": self.k_c_onset,
            "k_l_classical": self.k_l_classical,
            "k_inv": self.k_inv,
            "rate_identical": self.rate_identical,
            "rate_nonidentical": self.rate_nonidentical,
            "omega_convention": self.omega_convention,
        }


def threshold_report(network: OscillatorNetwork, epsilon: float | None = None) -> ThresholdReport:
    """Evaluate every bound for one network; raises on disconnected graphs."""
    n = network.n
    if n < 2:
        raise ValueError("threshold analysis needs n >= 2")
    graph = network.graph if network.graph is not None else complete_graph(n)
    spec = spectrum(laplacian(graph))
    if not spec.is_connected:
        raise DisconnectedGraphError(f"graph has {spec.zero_multiplicity} components; bounds need a connected graph")
    omega = network.omega
    lam2, lam_max = spec.lambda2, spec.lambda_max
    delta_opt, cap = e_max(n)
    return ThresholdReport(
        n=n,
        omega_norm2=float(np.linalg.norm(_centered(omega))),
        omega_spread=float(np.max(omega) - np.min(omega)),
        lambda2=lam2,
        lambda_max=lam_max,
        epsilon=epsilon,
        k_lower_spectral=k_lower_spectral(n, omega, lam2),
        k_unique=k_unique(n, omega, lam2, lam_max),
        e_max=cap,
        delta_opt=delta_opt,
        k_c_onset=k_c_onset(omega),
        k_l_classical=k_l_classical(omega),
        k_inv=k_inv(omega, epsilon=epsilon) if epsilon is not None else None,
        rate_identical=rate_identical(network.K, n, lam2),
        rate_nonidentical=rate_nonidentical(network.K, epsilon) if epsilon is not None and network.K > 0 else None,
    )
