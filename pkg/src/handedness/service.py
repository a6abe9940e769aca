"""Local playground bridge: touch events in, decisions and grip events out.

One WebSocket endpoint (/ws) speaks line-per-message JSON frames; the built
playground bundle is served from the same port.  Every connection gets its
own segmenter and grip store, so sessions are fully isolated.  Outbound
messages carry a per-connection strictly increasing seq; when the outbound
queue overflows, fit_debug frames are dropped first and grip events never.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from .geometry import ClassifierConfig, GeometryError, TouchSample, classify_fit, fit_quadratic
from .grip import GripEvent, GripStore, Hint, HintWhileLocked, HysteresisConfig
from .stream import OutOfOrderEvent, Phase, Segmenter, TouchEvent

PROTOCOL_VERSION = 1
DEFAULT_PORT = 7341
MAX_OUTBOUND_QUEUE = 256

_HINTS = {h.value: h for h in Hint}


@dataclass
class Session:
    """Per-connection pipeline state."""

    classifier: ClassifierConfig = ClassifierConfig()
    hysteresis: HysteresisConfig = HysteresisConfig()
    debug: bool = False
    seq_out: int = 0
    segmenter: Segmenter = field(default_factory=Segmenter)
    outbound: deque = field(default_factory=deque)

    def __post_init__(self):
        self.store = GripStore(self.hysteresis)
        self.store.subscribe(self._on_grip_event)

    def _on_grip_event(self, event: GripEvent) -> None:
        self._enqueue({"type": "grip_event", **event.to_dict()})

    def _enqueue(self, msg: dict) -> None:
        self.seq_out += 1
        msg["seq"] = self.seq_out
        self.outbound.append(msg)
        if len(self.outbound) > MAX_OUTBOUND_QUEUE:
            self._shed()

    def _shed(self) -> None:
        # Drop oldest debug frames first; grip events are never shed.
        for priority in ("fit_debug", "decision", "touch_ack", "error"):
            for msg in list(self.outbound):
                if len(self.outbound) <= MAX_OUTBOUND_QUEUE:
                    return
                if msg["type"] == priority:
                    self.outbound.remove(msg)

    def handle(self, raw: str) -> list[dict]:
        """Process one inbound frame; returns the frames to send, in order."""
        try:
            msg = json.loads(raw)
            if not isinstance(msg, dict):
                raise ValueError("frame must be a JSON object")
        except (json.JSONDecodeError, ValueError) as exc:
            self._enqueue({"type": "error", "message": f"malformed JSON: {exc}", "offender_seq": None})
            return self._drain()

        kind = msg.get("type")
        seq = msg.get("seq")
        try:
            if kind == "touch":
                self._handle_touch(msg)
            elif kind == "hint":
                self._handle_hint(msg)
            elif kind == "config":
                self.debug = bool(msg.get("debug", self.debug))
            else:
                self._enqueue({"type": "error", "message": f"unknown type {kind!r}", "offender_seq": seq})
        except (GeometryError, OutOfOrderEvent, HintWhileLocked, KeyError, TypeError, ValueError) as exc:
            self._enqueue({"type": "error", "message": str(exc), "offender_seq": seq})
        return self._drain()

    def _handle_touch(self, msg: dict) -> None:
        event = TouchEvent(
            phase=Phase(msg["phase"]),
            sample=TouchSample(float(msg["x"]), float(msg["y"]), float(msg["t"])),
            pointer_id=int(msg.get("pointer", 0)),
        )
        trace = self.segmenter.push(event)
        if trace is None:
            return
        fit = fit_quadratic(trace)
        decision = classify_fit(fit, self.classifier)
        self._enqueue({
            "type": "decision",
            "label": decision.label.value,
            "c": fit.c,
            "r2": fit.r2,
        })
        if self.debug:
            self._enqueue({
                "type": "fit_debug",
                "a": fit.a,
                "b": fit.b,
                "c": fit.c,
                "r2": fit.r2,
                "n": fit.n,
            })
        # Grip events land on the queue via the store subscription.
        self.store.ingest_decision(decision, at=trace.samples[-1].t)

    def _handle_hint(self, msg: dict) -> None:
        hint = _HINTS.get(msg.get("hint"))
        if hint is None:
            raise ValueError(f"unknown hint {msg.get('hint')!r}")
        self.store.apply_hint(hint, at=float(msg.get("t", 0.0)))

    def _drain(self) -> list[dict]:
        out = list(self.outbound)
        self.outbound.clear()
        return out


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="handedness bridge")

    @app.websocket("/ws")
    async def ws_endpoint(websocket: WebSocket):
        await websocket.accept()
        session = Session()
        try:
            while True:
                raw = await websocket.receive_text()
                for frame in session.handle(raw):
                    await websocket.send_text(json.dumps(frame))
        except WebSocketDisconnect:
            pass

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="playground")
    return app


def run(port: int = DEFAULT_PORT, static_dir: str | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(static_dir), host="127.0.0.1", port=port, log_level="warning")
