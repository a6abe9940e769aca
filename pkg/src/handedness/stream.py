"""Segment raw touch events into candidate vertical swipe traces.

Stands in for a platform gesture recognizer: accumulates Down/Move samples
per pointer, emits a trace on Up if it looks like a vertical swipe, and
filters out taps, flicks and horizontal gestures the classifier must not see.

One segmenter instance expects its events pushed sequentially (single
writer); independent instances are fully isolated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

from .geometry import MIN_DISTINCT_Y, SwipeTrace, TouchSample

log = logging.getLogger(__name__)


class Phase(Enum):
    DOWN = "down"
    MOVE = "move"
    UP = "up"
    CANCEL = "cancel"


@dataclass(frozen=True)
class TouchEvent:
    phase: Phase
    sample: TouchSample
    pointer_id: int = 0


@dataclass(frozen=True)
class SegmenterConfig:
    min_samples: int = 5
    min_vertical_extent: float = 80.0
    vertical_dominance: float = 2.0  # |dy| must be >= this times |dx|
    max_gesture_gap: float = 150.0  # ms between consecutive samples

    def __post_init__(self):
        if min(self.min_samples, self.min_vertical_extent, self.vertical_dominance, self.max_gesture_gap) <= 0:
            raise ValueError("all segmenter thresholds must be strictly positive")


class RejectReason(Enum):
    TOO_FEW_SAMPLES = "TooFewSamples"
    TOO_SHORT = "TooShort"
    NOT_VERTICAL = "NotVertical"
    DEGENERATE_GEOMETRY = "DegenerateGeometry"
    NON_MONOTONIC_TIME = "NonMonotonicTime"


@dataclass(frozen=True)
class ValidationResult:
    accepted: bool
    reason: RejectReason | None = None


ACCEPT = ValidationResult(True)


class StreamError(ValueError):
    pass


class OutOfOrderEvent(StreamError):
    """Timestamp regression within one pointer's event stream."""


def validate_trace(trace: SwipeTrace, cfg: SegmenterConfig = SegmenterConfig()) -> ValidationResult:
    """Accept iff the trace is a fittable, vertically dominant swipe."""
    samples = trace.samples
    if len(samples) < cfg.min_samples:
        return ValidationResult(False, RejectReason.TOO_FEW_SAMPLES)
    if any(b.t <= a.t for a, b in zip(samples, samples[1:])):
        return ValidationResult(False, RejectReason.NON_MONOTONIC_TIME)
    if len({s.y for s in samples}) < MIN_DISTINCT_Y:
        return ValidationResult(False, RejectReason.DEGENERATE_GEOMETRY)
    dy = abs(samples[-1].y - samples[0].y)
    dx = abs(samples[-1].x - samples[0].x)
    if dy < cfg.min_vertical_extent:
        return ValidationResult(False, RejectReason.TOO_SHORT)
    if dy < cfg.vertical_dominance * dx:
        return ValidationResult(False, RejectReason.NOT_VERTICAL)
    return ACCEPT


@dataclass
class _Gesture:
    samples: list[TouchSample] = field(default_factory=list)

    def push(self, s: TouchSample) -> None:
        # Platform streams occasionally repeat a frame; drop exact duplicates.
        if self.samples and (s.x, s.y, s.t) == (
            self.samples[-1].x,
            self.samples[-1].y,
            self.samples[-1].t,
        ):
            return
        self.samples.append(s)


class Segmenter:
    """Per-stream gesture accumulator.

    push() returns a completed SwipeTrace when an Up closes a gesture that
    passes validation, otherwise None.  Only single-pointer gestures are
    classified: a second concurrent Down cancels whatever is in flight.
    """

    def __init__(self, cfg: SegmenterConfig = SegmenterConfig()):
        self.cfg = cfg
        self._active: dict[int, _Gesture] = {}
        self._poisoned: set[int] = set()  # pointers downed during multi-touch

    def push(self, event: TouchEvent) -> SwipeTrace | None:
        pid = event.pointer_id
        sample = event.sample
        phase = event.phase

        if phase is Phase.DOWN:
            if self._active or self._poisoned:
                # Multi-touch: abandon everything until all pointers lift.
                self._poisoned.update(self._active)
                self._poisoned.add(pid)
                self._active.clear()
                return None
            g = _Gesture()
            g.push(sample)
            self._active[pid] = g
            return None

        if pid in self._poisoned:
            if phase in (Phase.UP, Phase.CANCEL):
                self._poisoned.discard(pid)
            return None

        g = self._active.get(pid)
        if g is None:
            log.debug("orphan %s for pointer %d dropped", phase.value, pid)
            return None

        if g.samples and sample.t < g.samples[-1].t:
            self._active.pop(pid)
            raise OutOfOrderEvent(f"timestamp regression for pointer {pid}: {sample.t} after {g.samples[-1].t}")

        if g.samples and sample.t - g.samples[-1].t > self.cfg.max_gesture_gap:
            # Stale gesture; the pointer stream resumed after too long a pause.
            self._active.pop(pid)
            return None

        if phase is Phase.MOVE:
            g.push(sample)
            return None

        if phase is Phase.CANCEL:
            self._active.pop(pid)
            return None

        # Up: close the gesture and emit if it validates.
        g.push(sample)
        self._active.pop(pid)
        trace = SwipeTrace(tuple(g.samples))
        return trace if validate_trace(trace, self.cfg).accepted else None
