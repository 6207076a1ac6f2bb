"""Streaming simulation sessions over a local TCP socket.

Wire format: newline-delimited JSON both ways.

Server -> client frames:
  {"type": "hello", "protocol": 1, ...session state...}   on connect
  {"type": "thresholds", "t": ..., "report": {...}|null}  on connect and after
                                                          structural changes
  {"type": "frame", "t": ..., "theta": [...], "theta_dot": [...], "r": ..., "psi": ...}
  {"type": "ack", "command": ..., "t": ..., "applied": {...}}
  {"type": "error", "message": ...}

Client -> server commands (single line each):
  {"cmd": "set_K", "value": 3.0}
  {"cmd": "pause"} / {"cmd": "resume"}
  {"cmd": "reset", "theta0_spec": "zeros"|"uniform_random"|[...], "seed": 7}
  {"cmd": "set_topology", "value": "complete"|"cycle"|"path"}
  {"cmd": "set_n", "value": 12}

One writer owns the simulation state: commands are queued by reader
threads and drained between integration steps, so a change never lands
mid-step and every applied command is acknowledged with the sim time at
which it took effect. Frames go out every frame_steps integration steps
(deterministic, replayable); wall-clock pacing only affects when, not
what, gets emitted. A malformed command earns an error frame and the
session carries on.
"""

from __future__ import annotations

import json
import queue
import socket
import threading
import time
from dataclasses import replace

import numpy as np

from .diagnostics import order_parameter
from .dynamics import OscillatorNetwork, make_rhs, rk4_step
from .graphs import complete_graph, cycle_graph, path_graph
from .rng import make_rng, uniform
from .scenario import ScenarioConfig, build_graph, draw_omega, draw_theta0
from .thresholds import threshold_report

PROTOCOL_VERSION = 1


def _encode(obj: dict) -> bytes:
    return (json.dumps(obj) + "\n").encode("utf-8")


class _Client:
    def __init__(self, sock: socket.socket):
        self.sock = sock
        self.lock = threading.Lock()
        self.alive = True

    def send(self, payload: bytes) -> None:
        if not self.alive:
            return
        try:
            with self.lock:
                self.sock.sendall(payload)
        except OSError:
            self.alive = False


class SimulationSession:
    """A live, steerable simulation bound to a localhost TCP port."""

    def __init__(
        self,
        cfg: ScenarioConfig,
        host: str = "127.0.0.1",
        port: int = 0,
        frame_rate: float = 30.0,
        sim_speed: float = 1.0,
        pace: bool = True,
    ):
        self.cfg = cfg
        self.host = host
        self.requested_port = port
        self.pace = pace
        self.h = cfg.integrator.h
        self.frame_steps = max(1, int(round(sim_speed / (frame_rate * self.h))))
        self.frame_interval = self.frame_steps * self.h / sim_speed

        self.topology = cfg.topology
        self.network = OscillatorNetwork(
            omega=draw_omega(cfg), K=cfg.K, coupling_mode=cfg.coupling_mode, graph=build_graph(cfg)
        )
        self.theta = draw_theta0(cfg)
        self._rhs = make_rhs(self.network)
        self.t = 0.0
        self.step_count = 0
        self.paused = False

        self._clients: list[_Client] = []
        self._clients_lock = threading.Lock()
        self._commands: "queue.Queue[tuple[_Client, dict]]" = queue.Queue()
        self._stop = threading.Event()
        self._listener: socket.socket | None = None
        self._threads: list[threading.Thread] = []

    # -- lifecycle ---------------------------------------------------------

    def start(self) -> tuple[str, int]:
        self._listener = socket.create_server((self.host, self.requested_port))
        self._listener.settimeout(0.2)
        port = self._listener.getsockname()[1]
        for target in (self._accept_loop, self._run_loop):
            th = threading.Thread(target=target, daemon=True)
            th.start()
            self._threads.append(th)
        return self.host, port

    def stop(self) -> None:
        self._stop.set()
        for th in self._threads:
            th.join(timeout=2.0)
        if self._listener is not None:
            self._listener.close()
        with self._clients_lock:
            for client in self._clients:
                try:
                    client.sock.close()
                except OSError:
                    pass
            self._clients.clear()

    def wait(self) -> None:
        """Block until stop() is called (e.g. from a signal handler)."""
        try:
            while not self._stop.is_set():
                time.sleep(0.2)
        except KeyboardInterrupt:
            self.stop()

    # -- networking --------------------------------------------------------

    def _accept_loop(self) -> None:
        while not self._stop.is_set():
            try:
                sock, _ = self._listener.accept()
            except socket.timeout:
                continue
            except OSError:
                return
            sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
            client = _Client(sock)
            with self._clients_lock:
                self._clients.append(client)
            client.send(_encode(self._hello()))
            client.send(_encode(self._thresholds_frame()))
            client.send(_encode(self._frame()))
            reader = threading.Thread(target=self._read_loop, args=(client,), daemon=True)
            reader.start()

    def _read_loop(self, client: _Client) -> None:
        buf = b""
        sock = client.sock
        sock.settimeout(0.2)
        while not self._stop.is_set() and client.alive:
            try:
                chunk = sock.recv(4096)
            except socket.timeout:
                continue
            except OSError:
                break
            if not chunk:
                break
            buf += chunk
            while b"\n" in buf:
                line, buf = buf.split(b"\n", 1)
                if not line.strip():
                    continue
                try:
                    payload = json.loads(line)
                    if not isinstance(payload, dict) or "cmd" not in payload:
                        raise ValueError("command must be a JSON object with a 'cmd' field")
                except ValueError as exc:
                    client.send(_encode({"type": "error", "message": f"malformed command: {exc}"}))
                    continue
                self._commands.put((client, payload))
        client.alive = False
        with self._clients_lock:
            if client in self._clients:
                self._clients.remove(client)

    def _broadcast(self, obj: dict) -> None:
        payload = _encode(obj)
        with self._clients_lock:
            clients = list(self._clients)
        for client in clients:
            client.send(payload)

    # -- frames ------------------------------------------------------------

    def _hello(self) -> dict:
        return {
            "type": "hello",
            "protocol": PROTOCOL_VERSION,
            "n": self.network.n,
            "K": self.network.K,
            "topology": self.topology,
            "coupling_mode": self.network.coupling_mode,
            "h": self.h,
            "frame_steps": self.frame_steps,
            "paused": self.paused,
            "t": self.t,
        }

    def _frame(self) -> dict:
        r, psi = order_parameter(self.theta)
        return {
            "type": "frame",
            "t": self.t,
            "theta": [float(x) for x in self.theta],
            "theta_dot": [float(x) for x in self._rhs(self.theta)],
            "r": r,
            "psi": psi,
        }

    def _thresholds_frame(self) -> dict:
        try:
            report = threshold_report(self.network, epsilon=self.cfg.epsilon).to_dict()
        except (ValueError, np.linalg.LinAlgError):
            report = None
        return {"type": "thresholds", "t": self.t, "report": report}

    # -- command application -------------------------------------------------

    def _apply(self, client: _Client, payload: dict) -> None:
        cmd = payload.get("cmd")
        try:
            applied = self._dispatch(cmd, payload)
        except (ValueError, KeyError, TypeError) as exc:
            client.send(_encode({"type": "error", "message": f"{cmd}: {exc}"}))
            return
        self._broadcast({"type": "ack", "command": cmd, "t": self.t, "applied": applied})
        if cmd in ("set_K", "set_topology", "set_n"):
            self._broadcast(self._thresholds_frame())
        if cmd in ("reset", "set_topology", "set_n"):
            self._broadcast(self._frame())

    def _dispatch(self, cmd: str, payload: dict) -> dict:
        if cmd == "set_K":
            value = float(payload["value"])
            if value < 0:
                raise ValueError(f"K must be >= 0, got {value}")
            self.network = replace(self.network, K=value)
            self._rhs = make_rhs(self.network)
            return {"K": value}
        if cmd == "pause":
            self.paused = True
            return {"paused": True}
        if cmd == "resume":
            self.paused = False
            return {"paused": False}
        if cmd == "reset":
            seed = payload.get("seed", self.cfg.theta0.seed)
            spec = payload.get("theta0_spec", self.cfg.theta0.kind)
            self.theta = self._theta0_from(spec, seed)
            self.t = 0.0
            self.step_count = 0
            return {"theta0_spec": spec if isinstance(spec, str) else "explicit", "seed": seed}
        if cmd == "set_topology":
            value = payload["value"]
            if value not in ("complete", "cycle", "path"):
                raise ValueError(f"topology must be complete|cycle|path, got {value!r}")
            self._rebuild(topology=value, n=self.network.n)
            return {"topology": value}
        if cmd == "set_n":
            n = int(payload["value"])
            if n < 1:
                raise ValueError(f"n must be >= 1, got {n}")
            self._rebuild(topology=self.topology, n=n)
            return {"n": n}
        raise ValueError(f"unknown command {cmd!r}")

    def _theta0_from(self, spec, seed) -> np.ndarray:
        n = self.network.n
        if isinstance(spec, list):
            arr = np.array(spec, dtype=float)
            if arr.shape != (n,):
                raise ValueError(f"theta0 list has {arr.size} entries, need {n}")
            return arr
        if spec == "zeros":
            return np.zeros(n)
        if spec == "uniform_random":
            if seed is None:
                raise ValueError("uniform_random reset needs a seed")
            return uniform(make_rng(int(seed)), 0.0, 2.0 * np.pi, n)
        if spec == "explicit":
            return draw_theta0(self.cfg)
        raise ValueError(f"unknown theta0 spec {spec!r}")

    def _rebuild(self, topology: str, n: int) -> None:
        """Swap graph structure (and size) under the current gain.

        Changing n redraws frequencies and phases from the config seeds
        at the new size; changing only the topology keeps both. The
        session clock keeps running either way (reset is the only rewind).
        """
        mode = self.cfg.coupling_mode
        if mode == "mean_field_complete" and topology != "complete":
            mode = "graph_incidence"
        if topology == "complete":
            graph = None if mode == "mean_field_complete" else complete_graph(n, self.cfg.weight)
        elif topology == "cycle":
            graph = cycle_graph(n, self.cfg.weight)
        else:
            graph = path_graph(n, self.cfg.weight)
        if n != self.network.n:
            cfg_n = replace(self.cfg, n=n)
            omega = draw_omega(cfg_n)
            theta = draw_theta0(cfg_n)
        else:
            omega = self.network.omega
            theta = self.theta
        self.network = OscillatorNetwork(omega=omega, K=self.network.K, coupling_mode=mode, graph=graph)
        self.theta = theta
        self.topology = topology
        self._rhs = make_rhs(self.network)

    # -- main loop -----------------------------------------------------------

    def _run_loop(self) -> None:
        next_deadline = time.monotonic() + self.frame_interval
        while not self._stop.is_set():
            while True:
                try:
                    client, payload = self._commands.get_nowait()
                except queue.Empty:
                    break
                self._apply(client, payload)
            if self.paused:
                time.sleep(0.005)
                next_deadline = time.monotonic() + self.frame_interval
                continue
            self.theta = rk4_step(self._rhs, self.theta, self.h)
            self.t += self.h
            self.step_count += 1
            if self.step_count % self.frame_steps == 0:
                self._broadcast(self._frame())
                if self.pace:
                    now = time.monotonic()
                    if next_deadline > now:
                        time.sleep(next_deadline - now)
                    next_deadline = max(next_deadline, now) + self.frame_interval
                else:
                    time.sleep(0)  # let reader threads run


def serve(cfg: ScenarioConfig, port: int = 0, pace: bool = True, announce=None) -> SimulationSession:
    """Start a session and return it; announce (if given) receives (host, port)."""
    session = SimulationSession(cfg, port=port, pace=pace)
    host, bound = session.start()
    if announce is not None:
        announce(host, bound)
    return session
