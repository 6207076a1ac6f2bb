"""Oscillator network models and fixed-step integration.

Three coupling modes share one state convention (phases in radians,
stored unwrapped):

  mean_field_complete   theta_i' = omega_i + (K/n) sum_j sin(theta_j - theta_i)
  graph_incidence       theta'   = omega - (K/n) B diag(w) sin(B^T theta)
  weighted_adjacency    theta_i' = omega_i - sum_j A_ij sin(theta_i - theta_j)

In the last form the gain is folded into A = K * (graph weights) with no
1/n factor. All three reduce to the same dynamics on a complete graph
with unit weights.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graphs import OrientedIncidence, WeightedGraph, build_incidence

COUPLING_MODES = ("mean_field_complete", "graph_incidence", "weighted_adjacency")


class IntegrationDivergedError(RuntimeError):
    """State became non-finite during integration."""


@dataclass(frozen=True)
class OscillatorNetwork:
    """Natural frequencies, coupling gain, and (optionally) a coupling graph.

    mean_field_complete needs no graph; the other modes require one whose
    node count matches len(omega). K must be >= 0; K scales the graph
    weights directly in weighted_adjacency mode.
    """

    omega: np.ndarray
    K: float
    coupling_mode: str = "mean_field_complete"
    graph: WeightedGraph | None = None

    def __post_init__(self) -> None:
        om = np.array(self.omega, dtype=float)
        if om.ndim != 1 or om.size < 1:
            raise ValueError(f"omega must be a 1-D array, got shape {om.shape}")
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "K", float(self.K))
        if self.K < 0:
            raise ValueError(f"coupling K must be >= 0, got {self.K}")
        if self.coupling_mode not in COUPLING_MODES:
            raise ValueError(f"coupling_mode must be one of {COUPLING_MODES}, got {self.coupling_mode!r}")
        if self.coupling_mode == "mean_field_complete":
            if self.graph is not None:
                raise ValueError("mean_field_complete takes no graph; use graph_incidence instead")
        else:
            if self.graph is None:
                raise ValueError(f"{self.coupling_mode} requires a graph")
            if self.graph.n != om.size:
                raise ValueError(f"graph has {self.graph.n} nodes but omega has {om.size} entries")

    @property
    def n(self) -> int:
        return int(self.omega.size)


def rhs_classic(theta: np.ndarray, omega: np.ndarray, K: float) -> np.ndarray:
    """Mean-field rate via the explicit pairwise sum (reference route)."""
    diff = theta[None, :] - theta[:, None]  # diff[i, j] = theta_j - theta_i
    return omega + (K / theta.size) * np.sin(diff).sum(axis=1)


def rhs_meanfield_order(theta: np.ndarray, omega: np.ndarray, K: float) -> np.ndarray:
    """Mean-field rate via the order parameter: omega + K r sin(psi - theta).

    Algebraically identical to rhs_classic but O(n) per call.
    """
    z = np.exp(1j * theta).mean()
    r = np.abs(z)
    psi = np.angle(z)
    return omega + K * r * np.sin(psi - theta)


def rhs_graph(
    theta: np.ndarray,
    omega: np.ndarray,
    K: float,
    incidence: OrientedIncidence | np.ndarray,
    weights: np.ndarray,
) -> np.ndarray:
    """Incidence-form rate: omega - (K/n) B diag(w) sin(B^T theta)."""
    B = incidence.matrix if isinstance(incidence, OrientedIncidence) else np.asarray(incidence, float)
    return omega - (K / theta.size) * (B @ (weights * np.sin(B.T @ theta)))


def rhs_weighted(theta: np.ndarray, omega: np.ndarray, A: np.ndarray, check: bool = True) -> np.ndarray:
    """Adjacency-form rate: omega_i - sum_j A_ij sin(theta_i - theta_j).

    check=True validates shape, zero diagonal, and symmetry; hot loops
    validate once up front and pass check=False.
    """
    A = np.asarray(A, dtype=float)
    if check:
        validate_adjacency(A, theta.size)
    diff = theta[:, None] - theta[None, :]
    return omega - (A * np.sin(diff)).sum(axis=1)


def validate_adjacency(A: np.ndarray, n: int) -> None:
    if A.shape != (n, n):
        raise ValueError(f"adjacency shape {A.shape} does not match n = {n}")
    scale = max(1.0, float(np.max(np.abs(A))) if A.size else 1.0)
    if float(np.max(np.abs(A - A.T))) > 1e-10 * scale:
        raise ValueError("adjacency must be symmetric")
    if np.any(np.abs(np.diag(A)) > 1e-12 * scale):
        raise ValueError("adjacency diagonal must be zero")


def make_rhs(network: OscillatorNetwork) -> Callable[[np.ndarray], np.ndarray]:
    """Compile the network into a theta -> theta_dot closure."""
    omega = network.omega
    K = network.K
    if network.coupling_mode == "mean_field_complete":
        return lambda theta: rhs_meanfield_order(theta, omega, K)
    if network.coupling_mode == "graph_incidence":
        B = build_incidence(network.graph).matrix
        w = network.graph.weights()
        n = network.n
        return lambda theta: omega - (K / n) * (B @ (w * np.sin(B.T @ theta)))
    A = K * network.graph.adjacency()
    validate_adjacency(A, network.n)
    return lambda theta: rhs_weighted(theta, omega, A, check=False)


def effective_adjacency(network: OscillatorNetwork) -> np.ndarray:
    """Pairwise coupling gains a_ij such that the rate is omega_i - sum_j a_ij sin(theta_i - theta_j)."""
    n = network.n
    if network.coupling_mode == "mean_field_complete":
        A = np.full((n, n), network.K / n)
        np.fill_diagonal(A, 0.0)
        return A
    if network.coupling_mode == "graph_incidence":
        return (network.K / n) * network.graph.adjacency()
    return network.K * network.graph.adjacency()


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step RK4 settings; samples land every sample_every steps."""

    h: float = 0.01
    t_end: float = 50.0
    sample_every: int = 1
    method: str = "rk4"

    def __post_init__(self) -> None:
        if self.method != "rk4":
            raise ValueError(f"only the rk4 method is implemented, got {self.method!r}")
        if not self.h > 0:
            raise ValueError(f"step size must be > 0, got {self.h}")
        if not self.t_end > 0:
            raise ValueError(f"t_end must be > 0, got {self.t_end}")
        if int(self.sample_every) != self.sample_every or self.sample_every < 1:
            raise ValueError(f"sample_every must be a positive integer, got {self.sample_every}")
        if self.h > self.t_end:
            raise ValueError(f"step size {self.h} exceeds t_end {self.t_end}")

    @property
    def n_steps(self) -> int:
        # t_end is rounded to a whole number of steps.
        return max(1, int(round(self.t_end / self.h)))


@dataclass(frozen=True)
class SimulationTrace:
    """Sampled trajectory: times (s,), thetas (s, n), theta_dots (s, n).

    Phases are unwrapped (no modular reduction); theta_dots holds the
    instantaneous rates at the sample instants.
    """

    times: np.ndarray
    thetas: np.ndarray
    theta_dots: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        t = np.asarray(self.times, dtype=float)
        th = np.asarray(self.thetas, dtype=float)
        td = np.asarray(self.theta_dots, dtype=float)
        if th.ndim != 2 or th.shape != td.shape or t.shape != (th.shape[0],):
            raise ValueError(f"inconsistent trace shapes: times {t.shape}, thetas {th.shape}, theta_dots {td.shape}")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValueError("sample times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "thetas", th)
        object.__setattr__(self, "theta_dots", td)

    @property
    def n(self) -> int:
        return int(self.thetas.shape[1])

    def __len__(self) -> int:
        return int(self.times.size)


def rk4_step(f: Callable[[np.ndarray], np.ndarray], y: np.ndarray, h: float) -> np.ndarray:
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(
    system: OscillatorNetwork | Callable[[np.ndarray], np.ndarray],
    theta0: np.ndarray,
    config: IntegratorConfig,
    metadata: dict | None = None,
) -> SimulationTrace:
    """Integrate with classic RK4 on a fixed grid.

    system may be an OscillatorNetwork or any autonomous rate callable.
    Raises IntegrationDivergedError as soon as the state goes non-finite,
    naming the time reached.
    """
    if isinstance(system, OscillatorNetwork):
        f = make_rhs(system)
        meta = {"system": network_digest(system)}
        if theta0 is not None and np.asarray(theta0).shape != (system.n,):
            raise ValueError(f"theta0 shape {np.asarray(theta0).shape} does not match n = {system.n}")
    else:
        f = system
        meta = {"system": "custom"}
    theta = np.array(theta0, dtype=float)
    h, every, n_steps = config.h, config.sample_every, config.n_steps
    meta.update({"method": config.method, "h": h, "t_end": n_steps * h, "sample_every": every})
    if metadata:
        meta.update(metadata)

    times = [0.0]
    thetas = [theta.copy()]
    dots = [f(theta)]
    for k in range(1, n_steps + 1):
        theta = rk4_step(f, theta, h)
        if not np.isfinite(theta).all():
            raise IntegrationDivergedError(f"state became non-finite at t = {k * h:.6g}")
        if k % every == 0 or k == n_steps:
            times.append(k * h)
            thetas.append(theta.copy())
            dots.append(f(theta))
    return SimulationTrace(np.array(times), np.array(thetas), np.array(dots), metadata=meta)


def rotating_frame(trace: SimulationTrace, Omega: float) -> SimulationTrace:
    """Shift into a frame rotating at rate Omega: theta - Omega t, rates - Omega."""
    thetas = trace.thetas - Omega * trace.times[:, None]
    dots = trace.theta_dots - Omega
    meta = dict(trace.metadata)
    meta["rotating_frame"] = float(Omega)
    return SimulationTrace(trace.times.copy(), thetas, dots, metadata=meta)


def integrate_second_order(
    theta0: np.ndarray,
    velocity0: np.ndarray,
    torque: np.ndarray,
    mass: np.ndarray | float,
    damping: np.ndarray | float,
    coupling: np.ndarray,
    config: IntegratorConfig,
) -> SimulationTrace:
    """Inertial form m theta'' + d theta' = torque - sum_j k_ij sin(theta_i - theta_j).

    Integrates the doubled state (theta, theta'); the returned trace's
    theta_dots column holds the actual angular velocities.
    """
    theta0 = np.asarray(theta0, dtype=float)
    n = theta0.size
    velocity0 = np.asarray(velocity0, dtype=float)
    torque = np.asarray(torque, dtype=float)
    mass = np.broadcast_to(np.asarray(mass, dtype=float), (n,)).copy()
    damping = np.broadcast_to(np.asarray(damping, dtype=float), (n,)).copy()
    if np.any(mass <= 0):
        raise ValueError("mass entries must be > 0")
    if np.any(damping < 0):
        raise ValueError("damping entries must be >= 0")
    validate_adjacency(np.asarray(coupling, dtype=float), n)
    K = np.asarray(coupling, dtype=float)

    def f(y: np.ndarray) -> np.ndarray:
        th, v = y[:n], y[n:]
        diff = th[:, None] - th[None, :]
        accel = (torque - damping * v - (K * np.sin(diff)).sum(axis=1)) / mass
        return np.concatenate([v, accel])

    stacked = integrate(f, np.concatenate([theta0, velocity0]), config, metadata={"second_order": True})
    return SimulationTrace(
        stacked.times,
        stacked.thetas[:, :n],
        stacked.thetas[:, n:],  # velocities, i.e. the true theta'
        metadata=stacked.metadata,
    )


def network_digest(network: OscillatorNetwork) -> str:
    """Stable hex digest identifying a network's exact parameters."""
    h = hashlib.sha256()
    h.update(network.coupling_mode.encode())
    h.update(np.float64(network.K).tobytes())
    h.update(network.omega.astype(np.float64).tobytes())
    if network.graph is not None:
        h.update(np.int64(network.graph.n).tobytes())
        for i, j, w in network.graph.edges:
            h.update(np.int64(i).tobytes())
            h.update(np.int64(j).tobytes())
            h.update(np.float64(w).tobytes())
    return h.hexdigest()[:16]
