/** Wire types for the newline-delimited JSON session protocol.
 *
 * The server is the single source of truth: every number rendered by
 * the panel (r, psi, theta, thresholds) arrives in one of these frames
 * and is never recomputed client-side.
 */

export const PROTOCOL_VERSION = 1;

export interface HelloFrame {
  type: "hello";
  protocol: number;
  n: number;
  K: number;
  topology: string;
  coupling_mode: string;
  h: number;
  frame_steps: number;
  paused: boolean;
  t: number;
}

export interface ThresholdReport {
  n: number;
  lambda2: number;
  lambda_max: number;
  k_lower_spectral: number;
  k_unique: number;
  k_c_onset: number;
  k_l_classical: number;
  k_inv: number | null;
  [extra: string]: unknown;
}

export interface ThresholdsFrame {
  type: "thresholds";
  t: number;
  report: ThresholdReport | null;
}

export interface SimFrame {
  type: "frame";
  t: number;
  theta: number[];
  theta_dot: number[];
  r: number;
  psi: number;
}

export interface AckFrame {
  type: "ack";
  command: string;
  t: number;
  applied: Record<string, unknown>;
}

export interface ErrorFrame {
  type: "error";
  message: string;
}

export type ServerFrame = HelloFrame | ThresholdsFrame | SimFrame | AckFrame | ErrorFrame;

export type Topology = "complete" | "cycle" | "path";

export type Command =
  | { cmd: "set_K"; value: number }
  | { cmd: "pause" }
  | { cmd: "resume" }
  | { cmd: "reset"; theta0_spec?: "zeros" | "uniform_random" | "explicit" | number[]; seed?: number }
  | { cmd: "set_topology"; value: Topology }
  | { cmd: "set_n"; value: number };

export class ProtocolMismatchError extends Error {
  constructor(public readonly got: number) {
    super(
      `protocol version mismatch: server speaks v${got}, this panel requires v${PROTOCOL_VERSION}; ` +
        `refusing to render stale semantics`,
    );
    this.name = "ProtocolMismatchError";
  }
}

/** Throws unless the hello frame announces the protocol this panel implements. */
export function checkHello(frame: HelloFrame): void {
  if (frame.protocol !== PROTOCOL_VERSION) {
    throw new ProtocolMismatchError(frame.protocol);
  }
}

const isNum = (x: unknown): x is number => typeof x === "number" && Number.isFinite(x);
const isNumArray = (x: unknown): x is number[] => Array.isArray(x) && x.every(isNum);

/** Parse one wire line into a typed frame; null means malformed (caller drops it). */
export function parseServerLine(line: string): ServerFrame | null {
  let raw: unknown;
  try {
    raw = JSON.parse(line);
  } catch {
    return null;
  }
  if (typeof raw !== "object" || raw === null) return null;
  const obj = raw as Record<string, unknown>;
  switch (obj.type) {
    case "hello":
      if (isNum(obj.protocol) && isNum(obj.n) && isNum(obj.K) && typeof obj.topology === "string") {
        return obj as unknown as HelloFrame;
      }
      return null;
    case "thresholds":
      if (isNum(obj.t) && (obj.report === null || typeof obj.report === "object")) {
        return obj as unknown as ThresholdsFrame;
      }
      return null;
    case "frame":
      if (isNum(obj.t) && isNumArray(obj.theta) && isNumArray(obj.theta_dot) && isNum(obj.r) && isNum(obj.psi)) {
        return obj as unknown as SimFrame;
      }
      return null;
    case "ack":
      if (typeof obj.command === "string" && isNum(obj.t) && typeof obj.applied === "object" && obj.applied !== null) {
        return obj as unknown as AckFrame;
      }
      return null;
    case "error":
      if (typeof obj.message === "string") {
        return obj as unknown as ErrorFrame;
      }
      return null;
    default:
      return null;
  }
}

/** Serialize a command as one wire line (trailing newline included). */
export function encodeCommand(command: Command): string {
  return JSON.stringify(command) + "\n";
}
