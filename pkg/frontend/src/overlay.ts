/**
 * Debug overlays: the fitted parabola x = a + b*y + c*y^2 drawn over the
 * swipe trail with the decision label, and an optional thumb-reach heatmap
 * for eyeballing whether controls sit in the reachable zone. Both are
 * advisory visualizations; neither affects layout decisions.
 */

import { DecisionFrame, FitDebugFrame } from "./protocol";

const LABEL_COLORS: Record<DecisionFrame["label"], string> = {
  left: "#ff7a59",
  right: "#59c17a",
  ambiguous: "#9aa0a6",
};

export interface ParabolaSample {
  fit: FitDebugFrame;
  label: DecisionFrame["label"];
  yMin: number;
  yMax: number;
}

export class FitOverlay {
  private readonly canvas: HTMLCanvasElement;
  private readonly ctx: CanvasRenderingContext2D | null;
  private enabled = false;
  private last: ParabolaSample | null = null;

  constructor(canvas: HTMLCanvasElement) {
    this.canvas = canvas;
    let ctx: CanvasRenderingContext2D | null = null;
    try {
      ctx = canvas.getContext("2d");
    } catch {
      ctx = null; // jsdom without a canvas backend
    }
    this.ctx = ctx;
  }

  /** Togglable without reconnecting; the last fit redraws on re-enable. */
  setEnabled(enabled: boolean): void {
    this.enabled = enabled;
    this.redraw();
  }

  get isEnabled(): boolean {
    return this.enabled;
  }

  show(sample: ParabolaSample): void {
    this.last = sample;
    this.redraw();
  }

  private redraw(): void {
    if (this.ctx === null) {
      return;
    }
    this.ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    if (!this.enabled || this.last === null) {
      return;
    }
    const { fit, label, yMin, yMax } = this.last;
    this.ctx.beginPath();
    const steps = 64;
    for (let i = 0; i <= steps; i++) {
      const y = yMin + ((yMax - yMin) * i) / steps;
      const x = fit.a + fit.b * y + fit.c * y * y;
      if (i === 0) {
        this.ctx.moveTo(x, y);
      } else {
        this.ctx.lineTo(x, y);
      }
    }
    this.ctx.lineWidth = 2;
    this.ctx.setLineDash([6, 4]);
    this.ctx.strokeStyle = LABEL_COLORS[label];
    this.ctx.stroke();
    this.ctx.setLineDash([]);
    this.ctx.fillStyle = LABEL_COLORS[label];
    this.ctx.font = "12px system-ui, sans-serif";
    const xLabel = fit.a + fit.b * yMin + fit.c * yMin * yMin;
    this.ctx.fillText(`${label}  C=${fit.c.toExponential(2)}  r²=${fit.r2.toFixed(3)}`, xLabel + 8, yMin + 4);
  }
}

/**
 * Thumb-reach heatmap: concentric comfort bands swept about the bottom
 * corner on the active side, sized by a configurable thumb length.
 */
export function drawReachHeatmap(
  canvas: HTMLCanvasElement,
  side: "left" | "right",
  thumbLengthPx: number,
): void {
  let ctx: CanvasRenderingContext2D | null = null;
  try {
    ctx = canvas.getContext("2d");
  } catch {
    return;
  }
  if (ctx === null) {
    return;
  }
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const pivotX = side === "right" ? canvas.width : 0;
  const pivotY = canvas.height;
  const bands: Array<[number, string]> = [
    [1.0, "rgba(255, 80, 80, 0.10)"],
    [0.85, "rgba(255, 200, 60, 0.14)"],
    [0.65, "rgba(90, 220, 120, 0.18)"],
  ];
  for (const [scale, color] of bands) {
    ctx.beginPath();
    ctx.moveTo(pivotX, pivotY);
    ctx.arc(pivotX, pivotY, thumbLengthPx * scale, Math.PI, 2 * Math.PI);
    ctx.closePath();
    ctx.fillStyle = color;
    ctx.fill();
  }
}
