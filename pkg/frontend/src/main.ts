/**
 * Playground entry point: wires pointer capture, the bridge client, the
 * layout controller, and the debug overlays together. Served by
 * `handedness serve --static-dir frontend/dist` on the bridge's port.
 */

import { BridgeClient } from "./client";
import { PointerCapture } from "./capture";
import { LayoutController } from "./layout";
import { FitOverlay, drawReachHeatmap } from "./overlay";
import { DecisionFrame, FitDebugFrame, ServerFrame } from "./protocol";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

const phone = byId<HTMLElement>("phone");
const surface = byId<HTMLElement>("touch-surface");
const trailCanvas = byId<HTMLCanvasElement>("trail-canvas");
const fitCanvas = byId<HTMLCanvasElement>("fit-canvas");
const reachCanvas = byId<HTMLCanvasElement>("reach-canvas");
const banner = byId<HTMLElement>("status-banner");
const log = byId<HTMLPreElement>("event-log");
const debugToggle = byId<HTMLInputElement>("debug-toggle");
const reachToggle = byId<HTMLInputElement>("reach-toggle");
const thumbLength = byId<HTMLInputElement>("thumb-length");
const emulationBadge = byId<HTMLElement>("emulation-badge");

const layout = new LayoutController(phone);
const overlay = new FitOverlay(fitCanvas);

let lastDecision: DecisionFrame["label"] = "ambiguous";
let swipeYMin = 0;
let swipeYMax = fitCanvas.height;

function appendLog(line: string): void {
  log.textContent = `${line}\n${log.textContent ?? ""}`.split("\n").slice(0, 80).join("\n");
}

function redrawReach(): void {
  const ctx = reachCanvas;
  if (!reachToggle.checked || layout.side === "neutral") {
    ctx.getContext("2d")?.clearRect(0, 0, ctx.width, ctx.height);
    return;
  }
  drawReachHeatmap(ctx, layout.side, Number(thumbLength.value));
}

function handleFrame(frame: ServerFrame): void {
  switch (frame.type) {
    case "decision":
      lastDecision = frame.label;
      appendLog(`decision: ${frame.label}  C=${frame.c.toExponential(2)}  r²=${frame.r2.toFixed(3)}`);
      break;
    case "fit_debug":
      showFit(frame);
      break;
    case "grip_event":
      if (layout.apply(frame)) {
        appendLog(`grip: ${frame.previous} → ${frame.current} (${frame.cause})`);
        redrawReach();
      }
      break;
    case "error":
      appendLog(`error: ${frame.message}`);
      break;
  }
}

function showFit(fit: FitDebugFrame): void {
  overlay.show({ fit, label: lastDecision, yMin: swipeYMin, yMax: swipeYMax });
}

const client = new BridgeClient({
  url: `ws://${location.host}/ws`,
  onFrame: handleFrame,
  onStatus: (status) => {
    banner.hidden = status === "open";
  },
  onReset: () => {
    // Fresh bridge session: the server forgot us, so forget the layout too.
    layout.reset();
    redrawReach();
    if (debugToggle.checked) {
      client.send({ type: "config", debug: true });
    }
    appendLog("session started");
  },
});

new PointerCapture(surface, {
  canvas: trailCanvas,
  onPointerType: (type) => {
    emulationBadge.hidden = type !== "mouse";
  },
  onTouch: (touch) => {
    if (touch.phase === "down") {
      swipeYMin = touch.y;
      swipeYMax = touch.y;
    } else {
      swipeYMin = Math.min(swipeYMin, touch.y);
      swipeYMax = Math.max(swipeYMax, touch.y);
    }
    client.send({ type: "touch", ...touch });
  },
});

debugToggle.addEventListener("change", () => {
  client.send({ type: "config", debug: debugToggle.checked });
  overlay.setEnabled(debugToggle.checked);
});
reachToggle.addEventListener("change", redrawReach);
thumbLength.addEventListener("input", redrawReach);

byId<HTMLButtonElement>("hint-lock").addEventListener("click", () => {
  client.send({ type: "hint", hint: "lock", t: performance.now() });
});
byId<HTMLButtonElement>("hint-unlock").addEventListener("click", () => {
  client.send({ type: "hint", hint: "unlock_unknown", t: performance.now() });
});

client.connect();
