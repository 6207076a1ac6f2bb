/** View-model helpers: frames in, drawable geometry out.
 *
 * Everything here is a pure projection of server data. The arrow
 * length is the server's r, its angle the server's psi; the strip
 * chart plots the (t, r) pairs exactly as received. Nothing is
 * smoothed, re-derived, or integrated on this side.
 */

import type { SimFrame, ThresholdReport } from "./protocol.js";
import type { ChartPoint, PanelSession } from "./session.js";

export interface Point {
  x: number;
  y: number;
}

/** Oscillator positions on the unit circle. */
export function circleScatter(theta: readonly number[]): Point[] {
  return theta.map((th) => ({ x: Math.cos(th), y: Math.sin(th) }));
}

/** Centroid arrow for a frame: tip at (r cos psi, r sin psi). */
export function orderArrow(frame: SimFrame): { tip: Point; length: number; angle: number } {
  return {
    tip: { x: frame.r * Math.cos(frame.psi), y: frame.r * Math.sin(frame.psi) },
    length: frame.r,
    angle: frame.psi,
  };
}

/** The r values currently in the strip chart, oldest first. */
export function chartSeries(session: PanelSession): number[] {
  return session.history.map((p) => p.r);
}

export interface StripChartLayout {
  width: number;
  height: number;
}

/**
 * Map chart points into pixel space. Time spans the x axis over the
 * retained window; r is plotted on a fixed [0, 1] y axis so the
 * synchrony level reads the same regardless of zoom.
 */
export function stripChartPath(points: readonly ChartPoint[], layout: StripChartLayout): Point[] {
  if (points.length === 0) {
    return [];
  }
  const first = points[0]!;
  const last = points[points.length - 1]!;
  const span = last.t - first.t;
  return points.map((p) => ({
    x: span > 0 ? ((p.t - first.t) / span) * layout.width : 0,
    y: (1 - p.r) * layout.height,
  }));
}

export interface ThresholdMarker {
  label: string;
  K: number;
  /** Fraction of the slider track, clipped to [0, 1]. */
  position: number;
}

/** Slider annotations for the three coupling thresholds. */
export function thresholdMarkers(report: ThresholdReport, kMax: number): ThresholdMarker[] {
  const entries: Array<[string, number]> = [
    ["K_L classical", report.k_l_classical],
    ["K_c", report.k_c_onset],
    ["K_L spectral", report.k_lower_spectral],
  ];
  return entries.map(([label, K]) => ({
    label,
    K,
    position: Math.min(1, Math.max(0, K / kMax)),
  }));
}
