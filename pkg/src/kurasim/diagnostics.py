"""Synchronization diagnostics: order parameters, cohesion, sync detection,
Lyapunov-style energies, and linearization around a phase configuration."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import SimulationTrace, rhs_weighted
from .graphs import WeightedGraph

TWO_PI = 2.0 * np.pi


def order_parameter(theta: np.ndarray) -> tuple[float, float]:
    """Magnitude r and mean phase psi of (1/n) sum_j exp(i theta_j).

    psi is reported as 0.0 when r < 1e-12 (the centroid angle is
    undefined at the origin).
    """
    z = np.exp(1j * np.asarray(theta, dtype=float)).mean()
    r = float(np.abs(z))
    psi = float(np.angle(z)) if r >= 1e-12 else 0.0
    return r, psi


def order_parameter_graph(theta: np.ndarray) -> float:
    """r via the quadratic-form route r^2 = 1 - (1/n) e* L e, L = I - (1/n) 1 1^T.

    Exact for every theta; the centering projector L makes the identity
    an algebraic one rather than an approximation.
    """
    theta = np.asarray(theta, dtype=float)
    n = theta.size
    e = np.exp(1j * theta)
    quad = np.real(np.vdot(e, e) - np.abs(e.sum()) ** 2 / n)  # e* (I - 11^T/n) e
    r_sq = 1.0 - quad / n
    return float(np.sqrt(max(r_sq, 0.0)))


def wrap_to_pi(x: np.ndarray) -> np.ndarray:
    """Wrap angles into (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(x, dtype=float), TWO_PI)


def minimal_containing_arc(theta: np.ndarray) -> float:
    """Length of the shortest circular arc containing all phases (mod 2 pi)."""
    theta = np.asarray(theta, dtype=float)
    if theta.size <= 1:
        return 0.0
    angles = np.sort(np.mod(theta, TWO_PI))
    gaps = np.diff(angles, append=angles[0] + TWO_PI)
    return float(TWO_PI - gaps.max())


def is_arc_cohesive(theta: np.ndarray, gamma: float) -> bool:
    return minimal_containing_arc(theta) <= gamma


def is_graph_cohesive(theta: np.ndarray, graph: WeightedGraph, gamma: float) -> bool:
    """True when every edge's phase difference (wrapped to [0, pi]) is <= gamma."""
    theta = np.asarray(theta, dtype=float)
    for i, j, _ in graph.edges:
        if abs(wrap_to_pi(theta[i] - theta[j])) > gamma:
            return False
    return True


def sync_frequency(omega: np.ndarray) -> float:
    """Frequency of any phase-locked solution: the mean of omega.

    Symmetric coupling cancels pairwise, so the mean rate is conserved.
    """
    return float(np.mean(omega))


@dataclass(frozen=True)
class SyncReport:
    is_frequency_synced: bool
    t_sync: float | None
    omega_sync: float | None
    max_spread_end: float
    delta_norms: np.ndarray  # per-sample ||theta_dot - mean(theta_dot)||_2
    fitted_decay_rate: float | None
    tol: float
    hold: float


def detect_frequency_sync(trace: SimulationTrace, tol: float = 1e-4, hold: float | None = None) -> SyncReport:
    """Scan a trace for frequency locking.

    Locking = the max-min spread of instantaneous rates stays below tol
    for a contiguous window of duration >= hold (default: 10% of the
    trace's time span). t_sync is the start of the first such window;
    omega_sync averages the rates over it.

    delta_norms tracks ||theta_dot - mean|| per sample and
    fitted_decay_rate is its log-linear decay slope over the leading
    segment (None when the fit has too few usable samples).
    """
    times = trace.times
    span = float(times[-1] - times[0])
    if hold is None:
        hold = 0.1 * span
    spreads = trace.theta_dots.max(axis=1) - trace.theta_dots.min(axis=1)
    mask = spreads < tol

    t_sync = None
    omega_sync = None
    synced = False
    i = 0
    s = len(mask)
    while i < s:
        if not mask[i]:
            i += 1
            continue
        j = i
        while j + 1 < s and mask[j + 1]:
            j += 1
        if times[j] - times[i] >= hold:
            synced = True
            t_sync = float(times[i])
            omega_sync = float(np.mean(trace.theta_dots[i : j + 1]))
            break
        i = j + 1

    per_sample_mean = trace.theta_dots.mean(axis=1, keepdims=True)
    delta_norms = np.linalg.norm(trace.theta_dots - per_sample_mean, axis=1)
    try:
        rate = estimate_decay_rate(times, delta_norms)
    except ValueError:
        rate = None

    return SyncReport(
        is_frequency_synced=synced,
        t_sync=t_sync,
        omega_sync=omega_sync,
        max_spread_end=float(spreads[-1]),
        delta_norms=delta_norms,
        fitted_decay_rate=rate,
        tol=float(tol),
        hold=float(hold),
    )


def estimate_decay_rate(times: np.ndarray, values: np.ndarray, floor: float = 1e-8, min_samples: int = 10) -> float:
    """Exponential decay rate from a log-linear least-squares fit.

    The fit window runs from the start until the first sample at or
    below floor (double-precision noise drowns the signal past that).
    Returns the positive rate lambda for values ~ C exp(-lambda t).
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    end = int(np.argmax(values <= floor)) if np.any(values <= floor) else values.size
    if end < min_samples:
        raise ValueError(f"need at least {min_samples} samples above floor {floor:g}, have {end}")
    window = slice(0, end)
    slope = np.polyfit(times[window], np.log(values[window]), 1)[0]
    return float(-slope)


@dataclass(frozen=True)
class ClusterReport:
    frequencies: np.ndarray  # one windowed-mean rate per oscillator
    clusters: tuple[tuple[int, ...], ...]  # index groups, ascending by frequency
    window_start: float


def frequency_clusters(trace: SimulationTrace, window_frac: float = 0.4, gap: float = 0.1) -> ClusterReport:
    """Group oscillators by long-run frequency.

    Each oscillator's frequency is the mean of theta_dot over the
    trailing window_frac of the trace; instantaneous rates oscillate at
    the beat frequency between clusters, so averaging over several beat
    periods is what makes the branches flat. Oscillators whose sorted
    frequencies differ by more than gap start a new cluster.
    """
    if not 0.0 < window_frac <= 1.0:
        raise ValueError(f"window_frac must lie in (0, 1], got {window_frac}")
    times = trace.times
    t_start = times[-1] - window_frac * (times[-1] - times[0])
    sel = times >= t_start
    freqs = trace.theta_dots[sel].mean(axis=0)
    order = np.argsort(freqs)
    clusters: list[list[int]] = [[int(order[0])]]
    for a, b in zip(order[:-1], order[1:]):
        if freqs[b] - freqs[a] > gap:
            clusters.append([])
        clusters[-1].append(int(b))
    return ClusterReport(
        frequencies=freqs,
        clusters=tuple(tuple(sorted(c)) for c in clusters),
        window_start=float(t_start),
    )


def lyapunov_u1(theta: np.ndarray) -> float:
    """Order-parameter energy U1 = 1 - r^2; zero iff all phases coincide (mod 2 pi)."""
    r, _ = order_parameter(theta)
    return 1.0 - r * r


def lyapunov_u1_edges(theta: np.ndarray) -> float:
    """Same quantity via the pairwise-sine route (4/n^2) sum_{i<j} sin^2((theta_j - theta_i)/2)."""
    theta = np.asarray(theta, dtype=float)
    n = theta.size
    diff = theta[None, :] - theta[:, None]
    total = np.sum(np.sin(diff / 2.0) ** 2) / 2.0  # full matrix counts each pair twice
    return float(4.0 * total / (n * n))


def lyapunov_u2(theta: np.ndarray) -> float:
    """Quadratic disagreement theta^T (n I - 1 1^T) theta = (1/2) sum_ij (theta_i - theta_j)^2."""
    theta = np.asarray(theta, dtype=float)
    n = theta.size
    return float(n * np.dot(theta, theta) - theta.sum() ** 2)


def kinetic_s(theta_dot: np.ndarray) -> float:
    """Rate energy S = (1/2) ||theta_dot||^2; constant exactly at phase lock."""
    theta_dot = np.asarray(theta_dot, dtype=float)
    return float(0.5 * np.dot(theta_dot, theta_dot))


def disagreement_norm(theta: np.ndarray) -> float:
    """||theta - mean(theta) 1||_2, the distance from the consensus line."""
    theta = np.asarray(theta, dtype=float)
    return float(np.linalg.norm(theta - theta.mean()))


@dataclass(frozen=True)
class JacobianInfo:
    matrix: np.ndarray
    eigenvalues: np.ndarray  # ascending, full space
    reduced_eigenvalues: np.ndarray  # ascending, restricted to 1-perp
    classification: str  # "stable" | "unstable" | "marginal"


def _helmert_basis(n: int) -> np.ndarray:
    """Orthonormal basis of the hyperplane orthogonal to the all-ones vector."""
    Q = np.zeros((n, n - 1))
    for k in range(1, n):
        Q[:k, k - 1] = 1.0
        Q[k, k - 1] = -float(k)
        Q[:, k - 1] /= np.sqrt(k * (k + 1))
    return Q


def jacobian(theta: np.ndarray, A: np.ndarray) -> JacobianInfo:
    """Linearization of the adjacency-form dynamics at theta.

    J_ik = A_ik cos(theta_i - theta_k) off-diagonal, rows summing to
    zero, so the all-ones vector is always in the kernel. Stability is
    judged on the complement of that direction: all reduced eigenvalues
    < -tol is "stable", any > tol is "unstable", otherwise "marginal",
    with tol = 1e-8 * max(1, |lambda|_max). At theta = 0 the Jacobian is
    exactly minus the weighted Laplacian.
    """
    theta = np.asarray(theta, dtype=float)
    A = np.asarray(A, dtype=float)
    n = theta.size
    C = A * np.cos(theta[:, None] - theta[None, :])
    J = C - np.diag(C.sum(axis=1))
    eigs = np.linalg.eigvalsh(J)
    if n == 1:
        reduced = np.array([])
        classification = "marginal"
    else:
        Q = _helmert_basis(n)
        reduced = np.linalg.eigvalsh(Q.T @ J @ Q)
        tol = 1e-8 * max(1.0, float(np.max(np.abs(eigs))))
        if np.all(reduced < -tol):
            classification = "stable"
        elif np.any(reduced > tol):
            classification = "unstable"
        else:
            classification = "marginal"
    return JacobianInfo(matrix=J, eigenvalues=eigs, reduced_eigenvalues=reduced, classification=classification)


def jacobian_fd_check(theta: np.ndarray, omega: np.ndarray, A: np.ndarray, h: float = 1e-6) -> float:
    """Max |analytic - central-difference| entry of the Jacobian at theta."""
    theta = np.asarray(theta, dtype=float)
    n = theta.size
    J = jacobian(theta, A).matrix
    J_fd = np.zeros_like(J)
    for k in range(n):
        bump = np.zeros(n)
        bump[k] = h
        J_fd[:, k] = (rhs_weighted(theta + bump, omega, A, check=False) - rhs_weighted(theta - bump, omega, A, check=False)) / (2.0 * h)
    return float(np.max(np.abs(J - J_fd)))
