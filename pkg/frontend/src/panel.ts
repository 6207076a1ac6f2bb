/** Browser dashboard: DOM wiring around a PanelSession.
 *
 * One WebSocket bridge endpoint in, two canvases and a control strip
 * out. All state lives in the session; this file only paints it and
 * forwards user gestures as commands.
 */

import { circleScatter, orderArrow, stripChartPath, thresholdMarkers } from "./render.js";
import { PanelSession } from "./session.js";
import type { Topology } from "./protocol.js";
import { WebSocketTransport } from "./ws.js";

const K_SLIDER_MAX = 10;

interface Dom {
  status: HTMLElement;
  circle: HTMLCanvasElement;
  strip: HTMLCanvasElement;
  kSlider: HTMLInputElement;
  kValue: HTMLElement;
  markerLane: HTMLElement;
  nInput: HTMLInputElement;
  topologySelect: HTMLSelectElement;
  pauseButton: HTMLButtonElement;
  resetButton: HTMLButtonElement;
  reconnectButton: HTMLButtonElement;
}

function grabDom(): Dom {
  const byId = <T extends HTMLElement>(id: string): T => {
    const el = document.getElementById(id);
    if (el === null) {
      throw new Error(`panel markup is missing #${id}`);
    }
    return el as T;
  };
  return {
    status: byId("status"),
    circle: byId<HTMLCanvasElement>("circle"),
    strip: byId<HTMLCanvasElement>("strip"),
    kSlider: byId<HTMLInputElement>("k-slider"),
    kValue: byId("k-value"),
    markerLane: byId("marker-lane"),
    nInput: byId<HTMLInputElement>("n-input"),
    topologySelect: byId<HTMLSelectElement>("topology-select"),
    pauseButton: byId<HTMLButtonElement>("pause-button"),
    resetButton: byId<HTMLButtonElement>("reset-button"),
    reconnectButton: byId<HTMLButtonElement>("reconnect-button"),
  };
}

export async function startPanel(endpoint: string): Promise<PanelSession> {
  const dom = grabDom();
  dom.status.textContent = `connecting to ${endpoint}...`;
  const transport = await WebSocketTransport.connect(endpoint);
  const session = new PanelSession(transport);
  wireControls(dom, session);
  session.onUpdate(() => paint(dom, session));
  paint(dom, session);
  return session;
}

function wireControls(dom: Dom, session: PanelSession): void {
  dom.kSlider.addEventListener("change", () => {
    trySend(dom, session, { cmd: "set_K", value: Number(dom.kSlider.value) });
  });
  dom.nInput.addEventListener("change", () => {
    const n = Number(dom.nInput.value);
    if (Number.isInteger(n) && n >= 2) {
      trySend(dom, session, { cmd: "set_n", value: n });
    }
  });
  dom.topologySelect.addEventListener("change", () => {
    trySend(dom, session, {
      cmd: "set_topology",
      value: dom.topologySelect.value as Topology,
    });
  });
  dom.pauseButton.addEventListener("click", () => {
    const paused = session.controls?.paused ?? false;
    trySend(dom, session, { cmd: paused ? "resume" : "pause" });
  });
  dom.resetButton.addEventListener("click", () => {
    trySend(dom, session, { cmd: "reset", theta0_spec: "uniform_random", seed: Date.now() % 100000 });
  });
  dom.reconnectButton.addEventListener("click", () => {
    window.location.reload();
  });
}

function trySend(
  dom: Dom,
  session: PanelSession,
  command: Parameters<PanelSession["send"]>[0],
): void {
  if (session.controlsDisabled) {
    return; // button should already be disabled; ignore stray events
  }
  try {
    session.send(command);
  } catch (err) {
    dom.status.textContent = String(err);
  }
}

function paint(dom: Dom, session: PanelSession): void {
  paintStatus(dom, session);
  paintControls(dom, session);
  paintMarkers(dom, session);
  paintCircle(dom, session);
  paintStrip(dom, session);
}

function paintStatus(dom: Dom, session: PanelSession): void {
  const bits: string[] = [session.state];
  if (session.latest !== null) {
    bits.push(`t=${session.latest.t.toFixed(2)}`, `r=${session.latest.r.toFixed(3)}`);
  }
  if (session.lastAckT !== null) {
    bits.push(`last ack at t=${session.lastAckT.toFixed(2)}`);
  }
  if (session.pending !== null) {
    bits.push(`awaiting ack for ${session.pending}`);
  }
  if (session.lastError !== null) {
    bits.push(`error: ${session.lastError}`);
  }
  if (session.needsReconnect) {
    bits.push("connection may be lost");
  }
  dom.status.textContent = bits.join(" | ");
  dom.reconnectButton.hidden = !(session.needsReconnect || session.state === "closed" || session.state === "error");
}

function paintControls(dom: Dom, session: PanelSession): void {
  const disabled = session.controlsDisabled;
  dom.kSlider.disabled = disabled;
  dom.nInput.disabled = disabled;
  dom.topologySelect.disabled = disabled;
  dom.pauseButton.disabled = disabled;
  dom.resetButton.disabled = disabled;
  const c = session.controls;
  if (c === null) {
    return;
  }
  // while a command is pending, keep showing the user's input rather
  // than snapping back to the last acknowledged value
  if (session.pending === null) {
    dom.kSlider.value = String(c.K);
    dom.nInput.value = String(c.n);
    dom.topologySelect.value = c.topology;
  }
  dom.kValue.textContent = `K = ${c.K.toFixed(2)}`;
  dom.pauseButton.textContent = c.paused ? "resume" : "pause";
}

function paintMarkers(dom: Dom, session: PanelSession): void {
  dom.markerLane.replaceChildren();
  if (session.thresholds === null) {
    return;
  }
  for (const marker of thresholdMarkers(session.thresholds, K_SLIDER_MAX)) {
    const tick = document.createElement("span");
    tick.className = "marker";
    tick.style.left = `${(marker.position * 100).toFixed(2)}%`;
    tick.title = `${marker.label}: K = ${marker.K.toFixed(3)}`;
    tick.textContent = "▲";
    dom.markerLane.appendChild(tick);
  }
}

function paintCircle(dom: Dom, session: PanelSession): void {
  const ctx = dom.circle.getContext("2d");
  if (ctx === null) {
    return;
  }
  const { width, height } = dom.circle;
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(cx, cy) * 0.9;
  ctx.clearRect(0, 0, width, height);

  ctx.strokeStyle = "#888";
  ctx.beginPath();
  ctx.arc(cx, cy, radius, 0, 2 * Math.PI);
  ctx.stroke();

  const frame = session.latest;
  if (frame === null) {
    return;
  }
  ctx.fillStyle = "#2266cc";
  for (const p of circleScatter(frame.theta)) {
    ctx.beginPath();
    // canvas y grows downward; flip so positive angles go counterclockwise
    ctx.arc(cx + p.x * radius, cy - p.y * radius, 4, 0, 2 * Math.PI);
    ctx.fill();
  }

  const arrow = orderArrow(frame);
  ctx.strokeStyle = "#cc3322";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(cx, cy);
  ctx.lineTo(cx + arrow.tip.x * radius, cy - arrow.tip.y * radius);
  ctx.stroke();
  ctx.lineWidth = 1;
}

function paintStrip(dom: Dom, session: PanelSession): void {
  const ctx = dom.strip.getContext("2d");
  if (ctx === null) {
    return;
  }
  const { width, height } = dom.strip;
  ctx.clearRect(0, 0, width, height);
  ctx.strokeStyle = "#ccc";
  ctx.strokeRect(0, 0, width, height);

  const path = stripChartPath(session.history, { width, height });
  if (path.length < 2) {
    return;
  }
  ctx.strokeStyle = "#2266cc";
  ctx.beginPath();
  ctx.moveTo(path[0]!.x, path[0]!.y);
  for (const p of path.slice(1)) {
    ctx.lineTo(p.x, p.y);
  }
  ctx.stroke();
}
