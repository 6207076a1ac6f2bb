"""Declarative scenario configs (TOML), deterministic runs, sweeps, and
trace/summary serialization.

Config grammar (TOML sections; unknown keys are rejected):

  [network]   topology = "complete" | "cycle" | "path" | "custom"
              n (int, >= 1); K (float, >= 0)
              coupling_mode = "mean_field_complete" | "graph_incidence" | "weighted_adjacency"
              weight (float edge weight for the builders, default 1.0)
              adjacency_file (path, required iff topology = "custom")
  [omega]     kind = "explicit" | "uniform" | "normal"
              values = [...] (explicit); lo/hi (uniform); mu/sigma (normal)
              seed (int, required for random kinds)
              mean_center (bool; default false for explicit, true otherwise)
  [theta0]    kind = "explicit" | "uniform_random"   (uniform on [0, 2 pi))
              values = [...] (explicit); seed (int, required for uniform_random)
  [integrator] h, t_end, sample_every
  [outputs]   trace_csv, summary_json (paths; omit to skip writing)
  [analysis]  epsilon (float, optional); fixed_point (bool, default false)

Random draws use the seeded generator in kurasim.rng, so identical
configs produce byte-identical CSV and JSON outputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # 3.10
    import tomli as tomllib

from .diagnostics import detect_frequency_sync, order_parameter
from .dynamics import COUPLING_MODES, IntegratorConfig, OscillatorNetwork, SimulationTrace, integrate
from .fixed_point import solve_fixed_point
from .graphs import WeightedGraph, complete_graph, cycle_graph, load_adjacency, path_graph
from .rng import make_rng, normal_box_muller, uniform
from .thresholds import threshold_report


class ConfigError(ValueError):
    """Configuration rejected; the message names the offending section/key."""


TOPOLOGIES = ("complete", "cycle", "path", "custom")


@dataclass(frozen=True)
class OmegaSpec:
    kind: str
    values: tuple[float, ...] | None = None
    lo: float | None = None
    hi: float | None = None
    mu: float | None = None
    sigma: float | None = None
    seed: int | None = None
    mean_center: bool = False


@dataclass(frozen=True)
class Theta0Spec:
    kind: str
    values: tuple[float, ...] | None = None
    seed: int | None = None


@dataclass(frozen=True)
class ScenarioConfig:
    topology: str
    n: int
    coupling_mode: str
    K: float
    weight: float
    adjacency_file: str | None
    omega: OmegaSpec
    theta0: Theta0Spec
    integrator: IntegratorConfig
    trace_csv: str | None
    summary_json: str | None
    epsilon: float | None
    fixed_point: bool

    def echo(self) -> dict:
        """Config as a plain dict, defaults filled, for the summary output."""
        return {
            "network": {
                "topology": self.topology,
                "n": self.n,
                "coupling_mode": self.coupling_mode,
                "K": self.K,
                "weight": self.weight,
                "adjacency_file": self.adjacency_file,
            },
            "omega": {
                "kind": self.omega.kind,
                "values": list(self.omega.values) if self.omega.values is not None else None,
                "lo": self.omega.lo,
                "hi": self.omega.hi,
                "mu": self.omega.mu,
                "sigma": self.omega.sigma,
                "seed": self.omega.seed,
                "mean_center": self.omega.mean_center,
            },
            "theta0": {
                "kind": self.theta0.kind,
                "values": list(self.theta0.values) if self.theta0.values is not None else None,
                "seed": self.theta0.seed,
            },
            "integrator": {
                "h": self.integrator.h,
                "t_end": self.integrator.t_end,
                "sample_every": self.integrator.sample_every,
                "method": self.integrator.method,
            },
            "outputs": {"trace_csv": self.trace_csv, "summary_json": self.summary_json},
            "analysis": {"epsilon": self.epsilon, "fixed_point": self.fixed_point},
            "rng": "pcg64+box-muller",
        }


def _section(data: dict, name: str, allowed: set[str]) -> dict:
    sec = data.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"[{name}] must be a table")
    unknown = set(sec) - allowed
    if unknown:
        raise ConfigError(f"[{name}] has unknown keys: {sorted(unknown)}")
    return sec


def _require(sec: dict, section: str, key: str):
    if key not in sec:
        raise ConfigError(f"[{section}].{key} is required")
    return sec[key]


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a scenario; every error names its section and key."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config is not valid TOML: {exc}") from None
    unknown = set(data) - {"network", "omega", "theta0", "integrator", "outputs", "analysis"}
    if unknown:
        raise ConfigError(f"unknown top-level sections: {sorted(unknown)}")

    net = _section(data, "network", {"topology", "n", "coupling_mode", "K", "weight", "adjacency_file"})
    topology = str(_require(net, "network", "topology"))
    if topology not in TOPOLOGIES:
        raise ConfigError(f"[network].topology must be one of {TOPOLOGIES}, got {topology!r}")
    n = _require(net, "network", "n")
    if not isinstance(n, int) or n < 1:
        raise ConfigError(f"[network].n must be a positive integer, got {n!r}")
    coupling_mode = str(net.get("coupling_mode", "mean_field_complete"))
    if coupling_mode not in COUPLING_MODES:
        raise ConfigError(f"[network].coupling_mode must be one of {COUPLING_MODES}, got {coupling_mode!r}")
    K = float(net.get("K", 1.0))
    if K < 0:
        raise ConfigError(f"[network].K must be >= 0, got {K}")
    weight = float(net.get("weight", 1.0))
    if weight <= 0:
        raise ConfigError(f"[network].weight must be > 0, got {weight}")
    adjacency_file = net.get("adjacency_file")
    if topology == "custom" and adjacency_file is None:
        raise ConfigError("[network].adjacency_file is required for custom topology")
    if topology != "custom" and adjacency_file is not None:
        raise ConfigError("[network].adjacency_file only applies to custom topology")
    if coupling_mode == "mean_field_complete" and topology != "complete":
        raise ConfigError("[network].coupling_mode mean_field_complete requires complete topology")

    om = _section(data, "omega", {"kind", "values", "lo", "hi", "mu", "sigma", "seed", "mean_center"})
    om_kind = str(om.get("kind", "normal"))
    if om_kind not in ("explicit", "uniform", "normal"):
        raise ConfigError(f"[omega].kind must be explicit|uniform|normal, got {om_kind!r}")
    om_values = om.get("values")
    if om_kind == "explicit":
        if om_values is None:
            raise ConfigError("[omega].values is required for explicit kind")
        if len(om_values) != n:
            raise ConfigError(f"[omega].values has {len(om_values)} entries but [network].n = {n}")
        om_values = tuple(float(v) for v in om_values)
    elif om_values is not None:
        raise ConfigError(f"[omega].values only applies to explicit kind (kind = {om_kind!r})")
    om_seed = om.get("seed")
    if om_kind != "explicit":
        if om_seed is None:
            raise ConfigError(f"[omega].seed is required for random kind {om_kind!r}")
        om_seed = int(om_seed)
    elif om_seed is not None:
        raise ConfigError("[omega].seed only applies to random kinds")
    mean_center = bool(om.get("mean_center", om_kind != "explicit"))
    omega_spec = OmegaSpec(
        kind=om_kind,
        values=om_values,
        lo=float(om["lo"]) if "lo" in om else (-0.5 if om_kind == "uniform" else None),
        hi=float(om["hi"]) if "hi" in om else (0.5 if om_kind == "uniform" else None),
        mu=float(om.get("mu", 0.0)) if om_kind == "normal" else None,
        sigma=float(om.get("sigma", 1.0)) if om_kind == "normal" else None,
        seed=om_seed,
        mean_center=mean_center,
    )
    if om_kind == "uniform" and omega_spec.hi <= omega_spec.lo:
        raise ConfigError(f"[omega] bounds must satisfy lo < hi, got [{omega_spec.lo}, {omega_spec.hi})")
    if om_kind == "normal" and omega_spec.sigma < 0:
        raise ConfigError(f"[omega].sigma must be >= 0, got {omega_spec.sigma}")

    th = _section(data, "theta0", {"kind", "values", "seed"})
    th_kind = str(th.get("kind", "uniform_random"))
    if th_kind not in ("explicit", "uniform_random"):
        raise ConfigError(f"[theta0].kind must be explicit|uniform_random, got {th_kind!r}")
    th_values = th.get("values")
    th_seed = th.get("seed")
    if th_kind == "explicit":
        if th_values is None:
            raise ConfigError("[theta0].values is required for explicit kind")
        if len(th_values) != n:
            raise ConfigError(f"[theta0].values has {len(th_values)} entries but [network].n = {n}")
        th_values = tuple(float(v) for v in th_values)
        if th_seed is not None:
            raise ConfigError("[theta0].seed only applies to uniform_random kind")
    else:
        if th_values is not None:
            raise ConfigError("[theta0].values only applies to explicit kind")
        if th_seed is None:
            raise ConfigError("[theta0].seed is required for uniform_random kind")
        th_seed = int(th_seed)
    theta0_spec = Theta0Spec(kind=th_kind, values=th_values, seed=th_seed)

    integ = _section(data, "integrator", {"h", "t_end", "sample_every", "method"})
    try:
        integrator = IntegratorConfig(
            h=float(integ.get("h", 0.01)),
            t_end=float(integ.get("t_end", 50.0)),
            sample_every=int(integ.get("sample_every", 10)),
            method=str(integ.get("method", "rk4")),
        )
    except ValueError as exc:
        raise ConfigError(f"[integrator]: {exc}") from None

    outs = _section(data, "outputs", {"trace_csv", "summary_json"})
    ana = _section(data, "analysis", {"epsilon", "fixed_point"})
    epsilon = float(ana["epsilon"]) if "epsilon" in ana else None
    if epsilon is not None and not 0.0 < epsilon < np.pi / 4:
        raise ConfigError(f"[analysis].epsilon must lie in (0, pi/4), got {epsilon}")

    return ScenarioConfig(
        topology=topology,
        n=n,
        coupling_mode=coupling_mode,
        K=K,
        weight=weight,
        adjacency_file=str(adjacency_file) if adjacency_file is not None else None,
        omega=omega_spec,
        theta0=theta0_spec,
        integrator=integrator,
        trace_csv=str(outs["trace_csv"]) if "trace_csv" in outs else None,
        summary_json=str(outs["summary_json"]) if "summary_json" in outs else None,
        epsilon=epsilon,
        fixed_point=bool(ana.get("fixed_point", False)),
    )


def load_config(path) -> ScenarioConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def build_graph(cfg: ScenarioConfig) -> WeightedGraph | None:
    if cfg.coupling_mode == "mean_field_complete":
        return None
    if cfg.topology == "complete":
        return complete_graph(cfg.n, cfg.weight)
    if cfg.topology == "cycle":
        return cycle_graph(cfg.n, cfg.weight)
    if cfg.topology == "path":
        return path_graph(cfg.n, cfg.weight)
    graph = load_adjacency(cfg.adjacency_file)
    if graph.n != cfg.n:
        raise ConfigError(f"[network].adjacency_file has {graph.n} nodes but [network].n = {cfg.n}")
    return graph


def draw_omega(cfg: ScenarioConfig) -> np.ndarray:
    spec = cfg.omega
    if spec.kind == "explicit":
        omega = np.array(spec.values, dtype=float)
    elif spec.kind == "uniform":
        omega = uniform(make_rng(spec.seed), spec.lo, spec.hi, cfg.n)
    else:
        omega = normal_box_muller(make_rng(spec.seed), spec.mu, spec.sigma, cfg.n)
    if spec.mean_center:
        omega = omega - omega.mean()
    return omega


def draw_theta0(cfg: ScenarioConfig) -> np.ndarray:
    spec = cfg.theta0
    if spec.kind == "explicit":
        return np.array(spec.values, dtype=float)
    return uniform(make_rng(spec.seed), 0.0, 2.0 * np.pi, cfg.n)


def build_scenario(cfg: ScenarioConfig) -> tuple[OscillatorNetwork, np.ndarray]:
    network = OscillatorNetwork(omega=draw_omega(cfg), K=cfg.K, coupling_mode=cfg.coupling_mode, graph=build_graph(cfg))
    return network, draw_theta0(cfg)


@dataclass(frozen=True)
class SummaryReport:
    final_r: float
    final_psi: float
    mean_r_last20: float
    is_frequency_synced: bool
    t_sync: float | None
    omega_sync: float | None
    thresholds: dict | None
    fixed_point: dict | None
    config: dict

    def to_dict(self) -> dict:
        return {
            "final_r": self.final_r,
            "final_psi": self.final_psi,
            "mean_r_last20": self.mean_r_last20,
            "is_frequency_synced": self.is_frequency_synced,
            "t_sync": self.t_sync,
            "omega_sync": self.omega_sync,
            "thresholds": self.thresholds,
            "fixed_point": self.fixed_point,
            "config": self.config,
        }

    def to_json(self) -> str:
        # Stable key order and repr-based floats keep reruns byte-identical.
        return json.dumps(self.to_dict(), indent=2) + "\n"


def trace_to_csv(trace: SimulationTrace) -> str:
    """CSV with header t,theta_0..,thetadot_0..,r,psi; shortest round-trip floats."""
    n = trace.n
    header = (
        ["t"]
        + [f"theta_{i}" for i in range(n)]
        + [f"thetadot_{i}" for i in range(n)]
        + ["r", "psi"]
    )
    lines = [",".join(header)]
    for k in range(len(trace)):
        r, psi = order_parameter(trace.thetas[k])
        row = (
            [repr(float(trace.times[k]))]
            + [repr(float(x)) for x in trace.thetas[k]]
            + [repr(float(x)) for x in trace.theta_dots[k]]
            + [repr(r), repr(psi)]
        )
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def summarize(trace: SimulationTrace, network: OscillatorNetwork, cfg: ScenarioConfig) -> SummaryReport:
    r_final, psi_final = order_parameter(trace.thetas[-1])
    t_last = trace.times[-1] - 0.2 * (trace.times[-1] - trace.times[0])
    tail = trace.times >= t_last
    r_tail = [order_parameter(th)[0] for th in trace.thetas[tail]]
    sync = detect_frequency_sync(trace)

    thresholds = None
    if network.n >= 2:
        try:
            thresholds = threshold_report(network, epsilon=cfg.epsilon).to_dict()
        except (ValueError, np.linalg.LinAlgError):
            thresholds = None  # disconnected or degenerate; bounds undefined

    fp = None
    if cfg.fixed_point and network.K > 0:
        try:
            fp = solve_fixed_point(network).to_dict()
        except ValueError:
            fp = None

    return SummaryReport(
        final_r=float(r_final),
        final_psi=float(psi_final),
        mean_r_last20=float(np.mean(r_tail)),
        is_frequency_synced=sync.is_frequency_synced,
        t_sync=sync.t_sync,
        omega_sync=sync.omega_sync,
        thresholds=thresholds,
        fixed_point=fp,
        config=cfg.echo(),
    )


def run_scenario(cfg: ScenarioConfig, out_dir=None) -> tuple[SimulationTrace, SummaryReport]:
    """Build, integrate, summarize, and (if configured) write outputs.

    Output paths resolve relative to out_dir (default: current directory).
    Identical configs yield byte-identical files.
    """
    network, theta0 = build_scenario(cfg)
    trace = integrate(network, theta0, cfg.integrator)
    summary = summarize(trace, network, cfg)
    base = Path(out_dir) if out_dir is not None else Path.cwd()
    if cfg.trace_csv is not None:
        path = base / cfg.trace_csv
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(trace_to_csv(trace), encoding="utf-8")
    if cfg.summary_json is not None:
        path = base / cfg.summary_json
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(summary.to_json(), encoding="utf-8")
    return trace, summary


def _with_parameter(cfg: ScenarioConfig, parameter: str, value) -> ScenarioConfig:
    if parameter == "K":
        return replace(cfg, K=float(value))
    if parameter == "n":
        n = int(value)
        if cfg.omega.kind == "explicit" and len(cfg.omega.values) != n:
            raise ConfigError(f"explicit [omega].values cannot be resized to n = {n}")
        if cfg.theta0.kind == "explicit" and len(cfg.theta0.values) != n:
            raise ConfigError(f"explicit [theta0].values cannot be resized to n = {n}")
        return replace(cfg, n=n)
    raise ValueError(f"sweep parameter must be 'K' or 'n', got {parameter!r}")


def sweep(base_cfg: ScenarioConfig, parameter: str, values, workers: int = 1, out_dir=None) -> list[dict]:
    """Independent seeded runs across parameter values, one summary row each.

    Seeds come from base_cfg unchanged, so a K sweep reuses the exact
    same frequency and phase draws in every row. A failing row reports
    its error without aborting the others. workers > 1 runs rows in a
    thread pool (rows share nothing).
    """
    if parameter not in ("K", "n"):
        raise ValueError(f"sweep parameter must be 'K' or 'n', got {parameter!r}")
    values = list(values)
    if not values:
        raise ValueError("sweep needs at least one value")

    def run_row(value) -> dict:
        try:
            row_cfg = _with_parameter(base_cfg, parameter, value)
            if out_dir is None:
                row_cfg = replace(row_cfg, trace_csv=None, summary_json=None)
            else:
                suffix = f"{parameter}={value:g}" if isinstance(value, float) else f"{parameter}={value}"
                row_cfg = replace(
                    row_cfg,
                    trace_csv=f"trace_{suffix}.csv" if base_cfg.trace_csv else None,
                    summary_json=f"summary_{suffix}.json" if base_cfg.summary_json else None,
                )
            _, summary = run_scenario(row_cfg, out_dir=out_dir)
            return {"parameter": parameter, "value": value, "summary": summary.to_dict()}
        except Exception as exc:  # per-row isolation is the contract
            return {"parameter": parameter, "value": value, "error": f"{type(exc).__name__}: {exc}"}

    if workers <= 1:
        return [run_row(v) for v in values]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_row, values))
