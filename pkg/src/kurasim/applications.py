"""Physical instantiations of the same phase dynamics: lossless power
networks, rings of elastically coupled rotors, and planar particle swarms
steered by heading consensus."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .diagnostics import order_parameter
from .dynamics import rhs_weighted, rk4_step, validate_adjacency
from .graphs import DisconnectedGraphError, WeightedGraph, from_adjacency


def admittance_to_coupling(V: np.ndarray, Y_mag: np.ndarray) -> np.ndarray:
    """Maximum power transfer a_ij = |V_i| |V_j| |Y_ij|."""
    V = np.asarray(V, dtype=float)
    Y = np.asarray(Y_mag, dtype=float)
    if np.any(V <= 0):
        raise ValueError("voltage magnitudes must be > 0")
    if Y.shape != (V.size, V.size):
        raise ValueError(f"admittance shape {Y.shape} does not match n = {V.size}")
    return V[:, None] * V[None, :] * Y


@dataclass(frozen=True)
class PowerNetwork:
    """Lossless network: injections P, voltage magnitudes V, admittance magnitudes.

    The derived coupling a_ij = |V_i||V_j||Y_ij| is computed once at
    construction. Nodes with an all-zero admittance row are recorded in
    isolated_nodes; analysis that needs a connected coupling graph goes
    through coupling_graph(), which raises for such networks.
    """

    P: np.ndarray
    V: np.ndarray
    Y_mag: np.ndarray
    a: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        P = np.asarray(self.P, dtype=float)
        V = np.asarray(self.V, dtype=float)
        Y = np.asarray(self.Y_mag, dtype=float)
        if P.ndim != 1 or V.shape != P.shape:
            raise ValueError(f"P and V must be matching 1-D arrays, got {P.shape} and {V.shape}")
        validate_adjacency(Y, P.size)
        if np.any(Y < 0):
            raise ValueError("admittance magnitudes must be >= 0")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "Y_mag", Y)
        object.__setattr__(self, "a", admittance_to_coupling(V, Y))

    @property
    def n(self) -> int:
        return int(self.P.size)

    @property
    def isolated_nodes(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.where(self.a.sum(axis=1) == 0.0)[0])

    def coupling_graph(self) -> WeightedGraph:
        graph = from_adjacency(self.a)
        if not graph.is_connected():
            raise DisconnectedGraphError(
                f"power coupling graph is disconnected (isolated nodes: {list(self.isolated_nodes)})"
            )
        return graph


def power_rhs(theta: np.ndarray, net: PowerNetwork) -> np.ndarray:
    """Rate theta_i' = P_i - sum_j a_ij sin(theta_i - theta_j).

    Exactly the weighted-adjacency oscillator rate with omega := P and
    coupling := a; defers to that implementation rather than restating it.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (net.n,):
        raise ValueError(f"theta shape {theta.shape} does not match n = {net.n}")
    return rhs_weighted(theta, net.P, net.a, check=False)


def load_power_network(path) -> PowerNetwork:
    """Read the plain-text format: `node <id> <P> <V>` and `branch <i> <j> <Y>` records.

    Node ids must cover 0..n-1 exactly once; branches must reference
    declared nodes and repeat no pair. The coupling graph must come out
    connected.
    """
    nodes: dict[int, tuple[float, float]] = {}
    branches: dict[tuple[int, int], float] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            kind = parts[0]
            try:
                if kind == "node":
                    if len(parts) != 4:
                        raise ValueError("expected: node <id> <P> <V>")
                    idx = int(parts[1])
                    if idx in nodes:
                        raise ValueError(f"duplicate node id {idx}")
                    nodes[idx] = (float(parts[2]), float(parts[3]))
                elif kind == "branch":
                    if len(parts) != 4:
                        raise ValueError("expected: branch <i> <j> <Y>")
                    i, j, y = int(parts[1]), int(parts[2]), float(parts[3])
                    if i == j:
                        raise ValueError(f"branch connects node {i} to itself")
                    key = (min(i, j), max(i, j))
                    if key in branches:
                        raise ValueError(f"duplicate branch {key}")
                    if y <= 0:
                        raise ValueError(f"branch admittance must be > 0, got {y}")
                    branches[key] = y
                else:
                    raise ValueError(f"unknown record type {kind!r}")
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    n = len(nodes)
    if n == 0:
        raise ValueError(f"{path}: no node records")
    if sorted(nodes) != list(range(n)):
        raise ValueError(f"{path}: node ids must be exactly 0..{n - 1}, got {sorted(nodes)}")
    P = np.array([nodes[i][0] for i in range(n)])
    V = np.array([nodes[i][1] for i in range(n)])
    Y = np.zeros((n, n))
    for (i, j), y in branches.items():
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"{path}: branch ({i}, {j}) references an undeclared node")
        Y[i, j] = Y[j, i] = y
    net = PowerNetwork(P=P, V=V, Y_mag=Y)
    net.coupling_graph()  # connectivity is part of the format contract
    return net


@dataclass(frozen=True)
class SpringRing:
    """Rotors with inertia m, damping d, drive torque tau, spring stiffnesses k."""

    m: np.ndarray
    d: np.ndarray
    tau: np.ndarray
    k: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.m, dtype=float)
        d = np.asarray(self.d, dtype=float)
        tau = np.asarray(self.tau, dtype=float)
        k = np.asarray(self.k, dtype=float)
        if not (m.shape == d.shape == tau.shape) or m.ndim != 1:
            raise ValueError("m, d, tau must be matching 1-D arrays")
        if np.any(m <= 0) or np.any(d <= 0):
            raise ValueError("m and d entries must be > 0")
        validate_adjacency(k, m.size)
        if np.any(k < 0):
            raise ValueError("stiffness entries must be >= 0")
        for name, arr in (("m", m), ("d", d), ("tau", tau), ("k", k)):
            object.__setattr__(self, name, arr)

    @property
    def n(self) -> int:
        return int(self.m.size)


def spring_energy(theta_i: float, theta_j: float, k_ij: float) -> float:
    """Stored elastic energy k_ij (1 - cos(theta_i - theta_j))."""
    if k_ij < 0:
        raise ValueError(f"stiffness must be >= 0, got {k_ij}")
    return float(k_ij * (1.0 - np.cos(theta_i - theta_j)))


def spring_torque(theta_i: float, theta_j: float, k_ij: float) -> float:
    """Torque on rotor i from the spring to j: -k_ij sin(theta_i - theta_j).

    Equals -d(spring_energy)/d(theta_i).
    """
    if k_ij < 0:
        raise ValueError(f"stiffness must be >= 0, got {k_ij}")
    return float(-k_ij * np.sin(theta_i - theta_j))


def spring_reduce_overdamped(ring: SpringRing) -> tuple[np.ndarray, np.ndarray]:
    """First-order limit when inertia is negligible against damping.

    Row i of the stiffness matrix is divided by d_i, giving frequencies
    omega = tau / d and coupling A = k / d (rowwise). With unequal
    damping the reduced A is asymmetric, which is fine for stepping
    (each row drives its own rotor) but means the result is not always
    expressible as a symmetric-weight network.
    """
    omega = ring.tau / ring.d
    A = ring.k / ring.d[:, None]
    return omega, A


@dataclass(frozen=True)
class ParticleSwarm:
    """Unit-speed particles in the plane steered by heading consensus.

    K may be negative (heading dispersion); A is the fixed symmetric
    interaction matrix.
    """

    positions: np.ndarray  # (n, 2)
    headings: np.ndarray  # (n,)
    omega0: float
    K: float
    A: np.ndarray

    def __post_init__(self) -> None:
        pos = np.asarray(self.positions, dtype=float)
        head = np.asarray(self.headings, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 2 or head.shape != (pos.shape[0],):
            raise ValueError(f"positions must be (n, 2) with matching headings, got {pos.shape} and {head.shape}")
        if not np.isfinite(head).all() or not np.isfinite(pos).all():
            raise ValueError("positions and headings must be finite")
        validate_adjacency(np.asarray(self.A, dtype=float), head.size)
        if np.any(np.asarray(self.A) < 0):
            raise ValueError("interaction weights must be >= 0")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "headings", head)
        object.__setattr__(self, "omega0", float(self.omega0))
        object.__setattr__(self, "K", float(self.K))
        object.__setattr__(self, "A", np.asarray(self.A, dtype=float))

    @property
    def n(self) -> int:
        return int(self.headings.size)


def _swarm_rate(y: np.ndarray, n: int, omega0: float, K: float, A: np.ndarray) -> np.ndarray:
    theta = y[2 * n :]
    diff = theta[:, None] - theta[None, :]
    dtheta = omega0 - K * (A * np.sin(diff)).sum(axis=1)
    return np.concatenate([np.cos(theta), np.sin(theta), dtheta])


def vicsek_step(swarm: ParticleSwarm, h: float) -> ParticleSwarm:
    """One RK4 step of the coupled motion: r_i' = e^{i theta_i}, heading consensus on theta."""
    if h <= 0:
        raise ValueError(f"step size must be > 0, got {h}")
    n = swarm.n
    y = np.concatenate([swarm.positions[:, 0], swarm.positions[:, 1], swarm.headings])
    y = rk4_step(lambda s: _swarm_rate(s, n, swarm.omega0, swarm.K, swarm.A), y, h)
    return ParticleSwarm(
        positions=np.column_stack([y[:n], y[n : 2 * n]]),
        headings=y[2 * n :],
        omega0=swarm.omega0,
        K=swarm.K,
        A=swarm.A,
    )


@dataclass(frozen=True)
class SwarmTrace:
    times: np.ndarray
    positions: np.ndarray  # (s, n, 2)
    headings: np.ndarray  # (s, n)
    heading_r: np.ndarray  # (s,)


def vicsek_run(swarm: ParticleSwarm, t_end: float, h: float = 0.01, sample_every: int = 1) -> SwarmTrace:
    """Integrate a swarm, sampling positions, headings, and the heading order parameter."""
    n_steps = max(1, int(round(t_end / h)))
    times = [0.0]
    positions = [swarm.positions]
    headings = [swarm.headings]
    r_vals = [order_parameter(swarm.headings)[0]]
    current = swarm
    for k in range(1, n_steps + 1):
        current = vicsek_step(current, h)
        if k % sample_every == 0 or k == n_steps:
            times.append(k * h)
            positions.append(current.positions)
            headings.append(current.headings)
            r_vals.append(order_parameter(current.headings)[0])
    return SwarmTrace(
        times=np.array(times),
        positions=np.array(positions),
        headings=np.array(headings),
        heading_r=np.array(r_vals),
    )


def heading_dispersion_run(swarm: ParticleSwarm, t_end: float, h: float = 0.01) -> tuple[SwarmTrace, float]:
    """Run a dispersion experiment (requires K < 0) and report the final heading r."""
    if swarm.K >= 0:
        raise ValueError(f"dispersion needs K < 0, got K = {swarm.K}")
    trace = vicsek_run(swarm, t_end, h)
    return trace, float(trace.heading_r[-1])
