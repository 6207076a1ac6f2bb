"""Phase-locked equilibria via a pseudoinverse fixed-point map, plus an
empirical critical-coupling search by bisection on simulated runs."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import graphs
from .diagnostics import detect_frequency_sync, jacobian
from .dynamics import IntegratorConfig, OscillatorNetwork, effective_adjacency, integrate, make_rhs
from .graphs import DisconnectedGraphError, build_incidence, laplacian, spectrum
from .rng import make_rng, uniform


def sinc_weights(phi: np.ndarray) -> np.ndarray:
    """Edge reweighting sin(phi)/phi with the removable singularity filled.

    Turns the sine coupling into a linear form: B diag(w(phi)) B^T theta
    equals B sin(B^T theta) identically, which is what lets a linear
    pseudoinverse solve stand in for the nonlinear balance equation.
    """
    # numpy's sinc is the normalized sin(pi x)/(pi x).
    return np.sinc(np.asarray(phi, dtype=float) / np.pi)


@dataclass(frozen=True)
class FixedPointResult:
    theta_star: np.ndarray  # mean-centered
    residual: float  # sup-norm of the (rotating-frame) rate at theta_star
    iterations: int
    converged: bool
    stability: str  # "stable" | "unstable" | "marginal"
    max_abs_phase: float
    max_edge_difference: float

    def to_dict(self) -> dict:
        return {
            "theta_star": [float(x) for x in self.theta_star],
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "stability": self.stability,
            "max_abs_phase": self.max_abs_phase,
            "max_edge_difference": self.max_edge_difference,
        }


def solve_fixed_point(
    network: OscillatorNetwork,
    theta0: np.ndarray | None = None,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> FixedPointResult:
    """Find a phase-locked state by damped Picard iteration.

    The locked state satisfies B diag(c_e sinc(phi)) B^T theta = centered
    omega, where c_e collects the per-edge gains of the network's
    coupling mode. Each sweep solves that linear system at the current
    phi = B^T theta via the pseudoinverse, mean-centers, and damps by 1/2
    whenever the dynamics residual grew. Convergence requires both a
    small iterate step (< tol in sup norm) and a small rotating-frame
    rate (< 10 tol); hitting max_iter returns a non-converged result with
    diagnostics rather than raising.
    """
    if network.K <= 0:
        raise ValueError(f"fixed-point solve needs K > 0, got {network.K}")
    n = network.n
    graph = network.graph if network.graph is not None else graphs.complete_graph(n)
    if not spectrum(laplacian(graph)).is_connected:
        raise DisconnectedGraphError("fixed-point solve needs a connected coupling graph")

    B = build_incidence(graph).matrix
    if network.coupling_mode == "weighted_adjacency":
        gains = network.K * graph.weights()
    else:
        gains = (network.K / n) * graph.weights()

    omega_bar = network.omega - network.omega.mean()
    f = make_rhs(replace(network, omega=omega_bar))

    def residual_of(th: np.ndarray) -> float:
        return float(np.max(np.abs(f(th))))

    theta = np.zeros(n) if theta0 is None else np.array(theta0, dtype=float) - np.mean(theta0)
    res = residual_of(theta)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        phi = B.T @ theta
        L_eff = (B * (gains * sinc_weights(phi))) @ B.T
        # Raw pinv here: intermediate iterates may drive sinc weights to
        # zero or negative, which is not a connectivity failure.
        candidate = np.linalg.pinv(L_eff) @ omega_bar
        candidate -= candidate.mean()
        if not np.isfinite(candidate).all():
            break
        cand_res = residual_of(candidate)
        if cand_res > res:
            candidate = 0.5 * (theta + candidate)
            candidate -= candidate.mean()
            cand_res = residual_of(candidate)
        step = float(np.max(np.abs(candidate - theta)))
        theta, res = candidate, cand_res
        if step < tol and res < 10.0 * tol:
            converged = True
            break

    phi_star = B.T @ theta
    info = jacobian(theta, effective_adjacency(network))
    return FixedPointResult(
        theta_star=theta,
        residual=res,
        iterations=iterations,
        converged=converged,
        stability=info.classification,
        max_abs_phase=float(np.max(np.abs(theta))),
        max_edge_difference=float(np.max(np.abs(phi_star))) if phi_star.size else 0.0,
    )


def _resolve_theta0(policy, n: int) -> np.ndarray:
    """Accepts an explicit vector, "zeros", or ("uniform_random", seed)."""
    if isinstance(policy, str):
        if policy == "zeros":
            return np.zeros(n)
        raise ValueError(f"unknown theta0 policy {policy!r}")
    if isinstance(policy, tuple) and len(policy) == 2 and policy[0] == "uniform_random":
        return uniform(make_rng(int(policy[1])), 0.0, 2.0 * np.pi, n)
    arr = np.asarray(policy, dtype=float)
    if arr.shape != (n,):
        raise ValueError(f"theta0 shape {arr.shape} does not match n = {n}")
    return arr


def empirical_critical_coupling(
    network_template: OscillatorNetwork,
    theta0_policy,
    K_range: tuple[float, float],
    sync_tol: float = 1e-4,
    t_end: float = 200.0,
    h: float = 0.01,
) -> float:
    """Locate the sync onset by bisecting K between a failing and a passing gain.

    A probe at gain K integrates from the policy's initial phases and
    asks detect_frequency_sync (tol = sync_tol, default hold) whether the
    rates locked. The bracket must be valid: sync at K_hi, none at K_lo;
    whichever endpoint fails is named in the error. If K_lo already
    synchronizes (e.g. identical frequencies) it is returned as-is.
    Stops after 20 halvings or when the bracket is below 1e-3 * K_hi.
    """
    K_lo, K_hi = float(K_range[0]), float(K_range[1])
    if not 0 <= K_lo < K_hi:
        raise ValueError(f"need 0 <= K_lo < K_hi, got ({K_lo}, {K_hi})")
    theta0 = _resolve_theta0(theta0_policy, network_template.n)
    config = IntegratorConfig(h=h, t_end=t_end, sample_every=max(1, int(round(0.1 / h))))

    def probe(K: float) -> bool:
        trace = integrate(replace(network_template, K=K), theta0, config)
        return detect_frequency_sync(trace, tol=sync_tol).is_frequency_synced

    if not probe(K_hi):
        raise ValueError(f"bracket invalid: no frequency sync at upper endpoint K_hi = {K_hi}")
    if probe(K_lo):
        return K_lo
    for _ in range(20):
        if K_hi - K_lo < 1e-3 * K_hi:
            break
        mid = 0.5 * (K_lo + K_hi)
        if probe(mid):
            K_hi = mid
        else:
            K_lo = mid
    return 0.5 * (K_lo + K_hi)
