/**
 * Message types for the bridge WebSocket protocol (version 1).
 * These mirror docs/wire-protocol.md in the parent package; the playground
 * talks to the bridge exclusively through these frames.
 */

export type TouchPhase = "down" | "move" | "up" | "cancel";

export type HintName =
  | "unlock_left"
  | "unlock_right"
  | "unlock_unknown"
  | "lock"
  | "surface"
  | "cradled"
  | "two_thumbs";

export type GripStateName =
  | "left_thumb"
  | "right_thumb"
  | "two_thumbs"
  | "surface"
  | "cradled"
  | "locked"
  | "unknown";

export interface TouchFrame {
  type: "touch";
  seq: number;
  phase: TouchPhase;
  x: number;
  y: number;
  t: number;
  pointer: number;
}

export interface HintFrame {
  type: "hint";
  seq: number;
  hint: HintName;
  t: number;
}

export interface ConfigFrame {
  type: "config";
  seq: number;
  debug: boolean;
}

export type ClientFrame = TouchFrame | HintFrame | ConfigFrame;

export interface DecisionFrame {
  type: "decision";
  seq: number;
  label: "left" | "right" | "ambiguous";
  c: number;
  r2: number;
}

export interface FitDebugFrame {
  type: "fit_debug";
  seq: number;
  a: number;
  b: number;
  c: number;
  r2: number;
  n: number;
}

export interface GripEventFrame {
  type: "grip_event";
  seq: number;
  previous: GripStateName;
  current: GripStateName;
  cause: string;
  at: number;
}

export interface ErrorFrame {
  type: "error";
  seq: number;
  message: string;
  offender_seq?: number;
}

export type ServerFrame = DecisionFrame | FitDebugFrame | GripEventFrame | ErrorFrame;

/** Parse one inbound message, returning null for frames we don't understand. */
export function parseServerFrame(data: string): ServerFrame | null {
  let obj: unknown;
  try {
    obj = JSON.parse(data);
  } catch {
    return null;
  }
  if (typeof obj !== "object" || obj === null) {
    return null;
  }
  const type = (obj as { type?: unknown }).type;
  if (type === "decision" || type === "fit_debug" || type === "grip_event" || type === "error") {
    return obj as ServerFrame;
  }
  return null;
}
