/** Client session state for the streaming simulation service.
 *
 * The session owns everything the panel renders: connection status,
 * the latest frame, a bounded history of (t, r) samples, the control
 * values echoed by the server, and threshold markers. It never
 * integrates anything itself; every number on screen arrived in a
 * server frame.
 */

import {
  checkHello,
  encodeCommand,
  parseServerLine,
  ProtocolMismatchError,
} from "./protocol.js";
import type {
  AckFrame,
  Command,
  HelloFrame,
  SimFrame,
  ThresholdReport,
} from "./protocol.js";
import type { Transport } from "./transport.js";

export type ConnectionState = "connecting" | "connected" | "closed" | "error";

/** Coupling values marked on the K slider. */
export interface ThresholdMarkers {
  kLClassical: number;
  kCOnset: number;
  kLSpectral: number;
}

/** One sample of the order-parameter strip chart. */
export interface ChartPoint {
  t: number;
  r: number;
}

/** Control values as last announced or acknowledged by the server. */
export interface ControlState {
  K: number;
  n: number;
  topology: string;
  paused: boolean;
}

export interface SessionOptions {
  /** Ack wait before a command is declared lost and reconnect suggested. */
  ackTimeoutMs?: number;
  /** Strip-chart retention; the view keeps this many newest points. */
  historyLimit?: number;
}

const DEFAULT_ACK_TIMEOUT_MS = 5000;
const DEFAULT_HISTORY_LIMIT = 2000;

export class PanelSession {
  state: ConnectionState = "connecting";
  hello: HelloFrame | null = null;
  thresholds: ThresholdReport | null = null;
  markers: ThresholdMarkers | null = null;
  latest: SimFrame | null = null;
  /** Newest-last (t, r) samples, at most `historyLimit` of them. */
  readonly history: ChartPoint[] = [];
  controls: ControlState | null = null;
  /** Command name awaiting its ack; controls stay disabled while set. */
  pending: string | null = null;
  /** Simulation time of the most recent ack, for the status line. */
  lastAckT: number | null = null;
  lastError: string | null = null;
  /** Set when an ack timed out; the panel offers to reconnect. */
  needsReconnect = false;

  private readonly ackTimeoutMs: number;
  private readonly historyLimit: number;
  private ackTimer: ReturnType<typeof setTimeout> | null = null;
  private updateCb: (() => void) | null = null;

  constructor(
    private readonly transport: Transport,
    options: SessionOptions = {},
  ) {
    this.ackTimeoutMs = options.ackTimeoutMs ?? DEFAULT_ACK_TIMEOUT_MS;
    this.historyLimit = options.historyLimit ?? DEFAULT_HISTORY_LIMIT;
    transport.onLine((line) => this.handleLine(line));
    transport.onClose(() => {
      if (this.state !== "error") {
        this.state = "closed";
      }
      this.clearAckTimer();
      this.notify();
    });
  }

  /** Register a callback fired after every state change. */
  onUpdate(cb: () => void): void {
    this.updateCb = cb;
  }

  /** True while a command is in flight or the link is unusable. */
  get controlsDisabled(): boolean {
    return this.pending !== null || this.state !== "connected";
  }

  /**
   * Send one command. At most one may be in flight: the caller must
   * wait for the ack (or the timeout) before sending the next.
   */
  send(command: Command): void {
    if (this.state !== "connected") {
      throw new Error(`cannot send while ${this.state}`);
    }
    if (this.pending !== null) {
      throw new Error(`command ${this.pending} still awaiting ack`);
    }
    this.pending = command.cmd;
    this.transport.send(encodeCommand(command));
    this.ackTimer = setTimeout(() => {
      this.ackTimer = null;
      this.pending = null;
      this.needsReconnect = true;
      this.lastError = `no acknowledgment for ${command.cmd}; connection may be lost`;
      this.notify();
    }, this.ackTimeoutMs);
    this.notify();
  }

  close(): void {
    this.clearAckTimer();
    this.transport.close();
  }

  private handleLine(line: string): void {
    if (this.state === "error") {
      return; // refuse to render anything after a protocol mismatch
    }
    const frame = parseServerLine(line);
    if (frame === null) {
      console.warn(`panel: dropped malformed server line: ${truncate(line)}`);
      return;
    }
    switch (frame.type) {
      case "hello":
        try {
          checkHello(frame);
        } catch (err) {
          if (err instanceof ProtocolMismatchError) {
            this.failProtocol(err.message);
            return;
          }
          throw err;
        }
        this.hello = frame;
        this.state = "connected";
        this.controls = {
          K: frame.K,
          n: frame.n,
          topology: frame.topology,
          paused: frame.paused,
        };
        break;
      case "thresholds":
        if (frame.report !== null) {
          this.thresholds = frame.report;
          this.markers = markersFrom(frame.report);
        } else {
          this.thresholds = null;
          this.markers = null;
        }
        break;
      case "frame":
        this.acceptFrame(frame);
        break;
      case "ack":
        this.acceptAck(frame);
        break;
      case "error":
        this.lastError = frame.message;
        // a rejected command settles the in-flight slot like an ack
        if (this.pending !== null) {
          this.clearAckTimer();
          this.pending = null;
        }
        break;
    }
    this.notify();
  }

  private acceptFrame(frame: SimFrame): void {
    this.latest = frame;
    this.history.push({ t: frame.t, r: frame.r });
    if (this.history.length > this.historyLimit) {
      this.history.splice(0, this.history.length - this.historyLimit);
    }
  }

  private acceptAck(frame: AckFrame): void {
    this.lastAckT = frame.t;
    if (this.pending === frame.command) {
      this.clearAckTimer();
      this.pending = null;
    }
    // acks are broadcast; apply the echoed values even if another
    // client issued the command, so all panels agree on the controls
    if (this.controls !== null) {
      const a = frame.applied;
      if (typeof a["K"] === "number") this.controls.K = a["K"];
      if (typeof a["n"] === "number") this.controls.n = a["n"];
      if (typeof a["topology"] === "string") {
        this.controls.topology = a["topology"];
      }
      if (frame.command === "pause") this.controls.paused = true;
      if (frame.command === "resume") this.controls.paused = false;
    }
  }

  private failProtocol(message: string): void {
    this.state = "error";
    this.lastError = message;
    this.clearAckTimer();
    this.pending = null;
    this.notify();
  }

  private clearAckTimer(): void {
    if (this.ackTimer !== null) {
      clearTimeout(this.ackTimer);
      this.ackTimer = null;
    }
  }

  private notify(): void {
    this.updateCb?.();
  }
}

function markersFrom(report: ThresholdReport): ThresholdMarkers {
  return {
    kLClassical: report.k_l_classical,
    kCOnset: report.k_c_onset,
    kLSpectral: report.k_lower_spectral,
  };
}

function truncate(line: string): string {
  return line.length > 120 ? line.slice(0, 117) + "..." : line;
}
