"""Grip state machine with hysteresis smoothing and change broadcasts.

Tracks which of the six holding patterns the device is in.  Left/right thumb
states are driven by per-swipe handedness decisions, smoothed so a single
noisy swipe cannot flip the UI; the remaining grips (two thumbs, on-surface,
cradled) have no detectors here and are settable only through external hints,
as are lock/unlock transitions.  Subscribers get every state change exactly
once, in order.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .geometry import Hand, HandednessDecision


class GripState(Enum):
    LEFT_THUMB = "left_thumb"
    RIGHT_THUMB = "right_thumb"
    TWO_THUMBS = "two_thumbs"
    SURFACE = "surface"
    CRADLED = "cradled"
    LOCKED = "locked"
    UNKNOWN = "unknown"


class Cause(Enum):
    SWIPE_EVIDENCE = "swipe_evidence"
    UNLOCK_HINT = "unlock_hint"
    LOCK_HINT = "lock_hint"
    EXTERNAL_HINT = "external_hint"
    TIMEOUT = "timeout"


class Hint(Enum):
    UNLOCK_LEFT = "unlock_left"
    UNLOCK_RIGHT = "unlock_right"
    UNLOCK_UNKNOWN = "unlock_unknown"
    LOCK = "lock"
    SURFACE = "surface"
    CRADLED = "cradled"
    TWO_THUMBS = "two_thumbs"


class AmbiguousPolicy(Enum):
    HOLD = "hold"  # ambiguous swipes leave the flip counter alone
    DECAY = "decay"  # ambiguous swipes reset it


@dataclass(frozen=True)
class HysteresisConfig:
    flip_count: int = 2
    ambiguous_policy: AmbiguousPolicy = AmbiguousPolicy.HOLD
    session_timeout: float = 120_000.0  # ms of inactivity before Unknown

    def __post_init__(self):
        if self.flip_count < 1:
            raise ValueError("flip_count must be >= 1")


@dataclass(frozen=True)
class GripEvent:
    previous: GripState
    current: GripState
    cause: Cause
    at: float  # ms, taken from input data

    def to_dict(self) -> dict:
        return {
            "previous": self.previous.value,
            "current": self.current.value,
            "cause": self.cause.value,
            "at": self.at,
        }


class HintWhileLocked(ValueError):
    """Evidence hints other than unlock are meaningless on a locked device."""


_HINT_TARGETS = {
    Hint.UNLOCK_LEFT: (GripState.LEFT_THUMB, Cause.UNLOCK_HINT),
    Hint.UNLOCK_RIGHT: (GripState.RIGHT_THUMB, Cause.UNLOCK_HINT),
    Hint.UNLOCK_UNKNOWN: (GripState.UNKNOWN, Cause.UNLOCK_HINT),
    Hint.LOCK: (GripState.LOCKED, Cause.LOCK_HINT),
    Hint.SURFACE: (GripState.SURFACE, Cause.EXTERNAL_HINT),
    Hint.CRADLED: (GripState.CRADLED, Cause.EXTERNAL_HINT),
    Hint.TWO_THUMBS: (GripState.TWO_THUMBS, Cause.EXTERNAL_HINT),
}

_UNLOCK_HINTS = {Hint.UNLOCK_LEFT, Hint.UNLOCK_RIGHT, Hint.UNLOCK_UNKNOWN}

_HAND_STATE = {Hand.LEFT: GripState.LEFT_THUMB, Hand.RIGHT: GripState.RIGHT_THUMB}


class GripStore:
    """Shareable handedness flag.

    Reads are lock-free snapshots; mutations are serialized under an internal
    lock.  Subscriber callbacks run outside the critical section and must not
    block for long.
    """

    def __init__(self, cfg: HysteresisConfig = HysteresisConfig()):
        self.cfg = cfg
        self._state = GripState.UNKNOWN
        self._candidate: GripState | None = None
        self._streak = 0
        self._last_at: float | None = None
        self._lock = threading.Lock()
        self._subs: dict[int, Callable[[GripEvent], None]] = {}
        self._sub_ids = itertools.count(1)

    def current_state(self) -> GripState:
        return self._state

    def subscribe(self, sink: Callable[[GripEvent], None]) -> int:
        with self._lock:
            handle = next(self._sub_ids)
            self._subs[handle] = sink
            return handle

    def unsubscribe(self, handle: int) -> None:
        with self._lock:
            self._subs.pop(handle, None)

    def ingest_decision(self, decision: HandednessDecision, at: float = 0.0) -> GripEvent | None:
        """Feed one per-swipe decision; returns a GripEvent iff the flag flips.

        flip_count consecutive agreeing decisions are needed to change state;
        ambiguous decisions hold or decay the streak per config.  Decisions
        arriving while locked are ignored (a locked device has no swipes to
        classify).
        """
        events: list[GripEvent] = []
        with self._lock:
            events += self._check_timeout(at)
            self._last_at = at
            if self._state is GripState.LOCKED:
                pass
            elif decision.label is Hand.AMBIGUOUS:
                if self.cfg.ambiguous_policy is AmbiguousPolicy.DECAY:
                    self._candidate, self._streak = None, 0
            else:
                target = _HAND_STATE[decision.label]
                if target is self._state:
                    self._candidate, self._streak = None, 0
                else:
                    if self._candidate is target:
                        self._streak += 1
                    else:
                        self._candidate, self._streak = target, 1
                    if self._streak >= self.cfg.flip_count:
                        events.append(self._transition(target, Cause.SWIPE_EVIDENCE, at))
            sinks = list(self._subs.values())
        return self._deliver(events, sinks)

    def apply_hint(self, hint: Hint, at: float = 0.0) -> GripEvent | None:
        """Apply an external hint; hints are authoritative and skip hysteresis."""
        events: list[GripEvent] = []
        with self._lock:
            if self._state is GripState.LOCKED and hint not in _UNLOCK_HINTS and hint is not Hint.LOCK:
                raise HintWhileLocked(f"hint {hint.value} rejected while locked")
            events += self._check_timeout(at)
            self._last_at = at
            target, cause = _HINT_TARGETS[hint]
            if target is not self._state:
                events.append(self._transition(target, cause, at))
            sinks = list(self._subs.values())
        return self._deliver(events, sinks)

    # -- internals (call under lock) --

    def _check_timeout(self, at: float) -> list[GripEvent]:
        if (
            self._last_at is not None
            and at - self._last_at > self.cfg.session_timeout
            and self._state not in (GripState.LOCKED, GripState.UNKNOWN)
        ):
            return [self._transition(GripState.UNKNOWN, Cause.TIMEOUT, at)]
        return []

    def _transition(self, target: GripState, cause: Cause, at: float) -> GripEvent:
        event = GripEvent(previous=self._state, current=target, cause=cause, at=at)
        self._state = target
        self._candidate, self._streak = None, 0
        return event

    def _deliver(self, events: list[GripEvent], sinks) -> GripEvent | None:
        for event in events:
            for sink in sinks:
                sink(event)
        return events[-1] if events else None
