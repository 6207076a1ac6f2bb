import { describe, expect, it } from "vitest";

import {
  checkHello,
  encodeCommand,
  parseServerLine,
  PROTOCOL_VERSION,
  ProtocolMismatchError,
} from "../src/protocol.js";
import type { HelloFrame } from "../src/protocol.js";

const HELLO: HelloFrame = {
  type: "hello",
  protocol: 1,
  n: 6,
  K: 1.5,
  topology: "complete",
  coupling_mode: "mean_field_complete",
  h: 0.01,
  frame_steps: 3,
  paused: false,
  t: 0,
};

describe("parseServerLine", () => {
  it("parses each server frame type", () => {
    expect(parseServerLine(JSON.stringify(HELLO))).toEqual(HELLO);

    const thresholds = { type: "thresholds", t: 0.5, report: { n: 6, k_c_onset: 1 } };
    expect(parseServerLine(JSON.stringify(thresholds))).toEqual(thresholds);

    const frame = {
      type: "frame",
      t: 0.03,
      theta: [0, 1, 2],
      theta_dot: [0.1, 0.2, 0.3],
      r: 0.8,
      psi: 1.1,
    };
    expect(parseServerLine(JSON.stringify(frame))).toEqual(frame);

    const ack = { type: "ack", command: "set_K", t: 0.06, applied: { K: 3 } };
    expect(parseServerLine(JSON.stringify(ack))).toEqual(ack);

    const error = { type: "error", message: "set_K: K must be >= 0" };
    expect(parseServerLine(JSON.stringify(error))).toEqual(error);
  });

  it("accepts a null thresholds report", () => {
    const line = JSON.stringify({ type: "thresholds", t: 1, report: null });
    expect(parseServerLine(line)).toEqual({ type: "thresholds", t: 1, report: null });
  });

  it.each([
    ["not json", "{nope"],
    ["not an object", "42"],
    ["null", "null"],
    ["missing type", JSON.stringify({ t: 1 })],
    ["unknown type", JSON.stringify({ type: "warp", t: 1 })],
    ["hello without protocol", JSON.stringify({ type: "hello", n: 6, K: 1, topology: "complete" })],
    ["frame with string theta", JSON.stringify({ type: "frame", t: 1, theta: ["a"], theta_dot: [1], r: 0.5, psi: 0 })],
    ["frame with NaN-ish hole", JSON.stringify({ type: "frame", t: 1, theta: [1, null], theta_dot: [1, 2], r: 0.5, psi: 0 })],
    ["frame missing r", JSON.stringify({ type: "frame", t: 1, theta: [1], theta_dot: [1], psi: 0 })],
    ["ack without applied", JSON.stringify({ type: "ack", command: "pause", t: 1 })],
    ["error without message", JSON.stringify({ type: "error" })],
  ])("rejects %s", (_label, line) => {
    expect(parseServerLine(line)).toBeNull();
  });
});

describe("encodeCommand", () => {
  it("emits one newline-terminated json line", () => {
    const line = encodeCommand({ cmd: "set_K", value: 3 });
    expect(line.endsWith("\n")).toBe(true);
    expect(JSON.parse(line)).toEqual({ cmd: "set_K", value: 3 });
  });

  it("round-trips a reset with explicit angles", () => {
    const line = encodeCommand({ cmd: "reset", theta0_spec: [0, 1, 2], seed: 7 });
    expect(JSON.parse(line)).toEqual({ cmd: "reset", theta0_spec: [0, 1, 2], seed: 7 });
  });
});

describe("checkHello", () => {
  it("accepts the implemented protocol version", () => {
    expect(PROTOCOL_VERSION).toBe(1);
    expect(() => checkHello(HELLO)).not.toThrow();
  });

  it("rejects any other version loudly", () => {
    const stale = { ...HELLO, protocol: 2 };
    expect(() => checkHello(stale)).toThrow(ProtocolMismatchError);
    expect(() => checkHello(stale)).toThrow(/version mismatch/);
  });
});
