/**
 * Pointer capture: listens for pointer events on the playground surface,
 * renders the in-flight swipe trail, and forwards each event to the bridge
 * as a touch frame with monotonic timestamps. Mouse drags work as touch
 * emulation for desktop development; the caller is told the pointer type
 * so it can flag emulation in the UI.
 */

import { TouchPhase } from "./protocol";

export interface CapturedTouch {
  phase: TouchPhase;
  x: number;
  y: number;
  t: number;
  pointer: number;
}

export interface CaptureOptions {
  onTouch: (touch: CapturedTouch) => void;
  onPointerType?: (pointerType: string) => void;
  /** Trail canvas; drawing is skipped when a 2D context is unavailable. */
  canvas?: HTMLCanvasElement;
  now?: () => number;
}

interface TrailPoint {
  x: number;
  y: number;
}

export class PointerCapture {
  readonly surface: HTMLElement;
  private readonly opts: CaptureOptions;
  private readonly now: () => number;
  private readonly ctx: CanvasRenderingContext2D | null;
  private activePointer: number | null = null;
  private trail: TrailPoint[] = [];
  private lastT = -Infinity;

  constructor(surface: HTMLElement, opts: CaptureOptions) {
    this.surface = surface;
    this.opts = opts;
    this.now = opts.now ?? (() => performance.now());
    this.ctx = getContext2d(opts.canvas);
    surface.addEventListener("pointerdown", (ev) => this.handle("down", ev));
    surface.addEventListener("pointermove", (ev) => this.handle("move", ev));
    surface.addEventListener("pointerup", (ev) => this.handle("up", ev));
    surface.addEventListener("pointercancel", (ev) => this.handle("cancel", ev));
    surface.addEventListener("pointerleave", (ev) => this.handle("cancel", ev));
  }

  get lastTrail(): readonly TrailPoint[] {
    return this.trail;
  }

  clearTrail(): void {
    this.trail = [];
    this.redraw();
  }

  private handle(phase: TouchPhase, ev: PointerEvent): void {
    const pointer = ev.pointerId ?? 0;
    if (phase === "down") {
      this.activePointer = pointer;
      this.trail = [];
      this.opts.onPointerType?.(ev.pointerType || "mouse");
    } else if (this.activePointer === null) {
      return; // stray move/up with no gesture in flight
    }
    const rect = this.surface.getBoundingClientRect();
    const x = ev.clientX - rect.left;
    const y = ev.clientY - rect.top;
    // Timestamps must be monotonic for the bridge's segmenter.
    const t = Math.max(this.now(), this.lastT + 0.001);
    this.lastT = t;
    if (phase === "down" || phase === "move") {
      this.trail.push({ x, y });
      this.redraw();
    }
    if (phase === "up" || phase === "cancel") {
      this.activePointer = null;
    }
    this.opts.onTouch({ phase, x, y, t, pointer });
  }

  private redraw(): void {
    if (this.ctx === null || this.opts.canvas === undefined) {
      return;
    }
    const canvas = this.opts.canvas;
    this.ctx.clearRect(0, 0, canvas.width, canvas.height);
    if (this.trail.length < 2) {
      return;
    }
    this.ctx.beginPath();
    this.ctx.moveTo(this.trail[0].x, this.trail[0].y);
    for (const p of this.trail.slice(1)) {
      this.ctx.lineTo(p.x, p.y);
    }
    this.ctx.lineWidth = 3;
    this.ctx.strokeStyle = "rgba(80, 160, 255, 0.8)";
    this.ctx.lineCap = "round";
    this.ctx.stroke();
  }
}

function getContext2d(canvas: HTMLCanvasElement | undefined): CanvasRenderingContext2D | null {
  if (canvas === undefined) {
    return null;
  }
  try {
    return canvas.getContext("2d");
  } catch {
    return null; // jsdom without a canvas backend
  }
}
