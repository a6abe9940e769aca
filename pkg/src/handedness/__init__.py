"""Thumb-handedness detection from swipe curvature.

Fit x = a + b*y + c*y^2 to a vertical swipe; the sign of c says which thumb
drew it.  Includes a stream segmenter, a grip state machine with broadcasts,
a synthetic benchmark, a CLI, and a local WebSocket bridge for the
playground UI.
"""

from .geometry import (
    ClassifierConfig,
    DegenerateTrace,
    GeometryError,
    Hand,
    HandednessDecision,
    NonFiniteInput,
    QuadraticFit,
    SampleOutOfBounds,
    SwipeTrace,
    TouchSample,
    classify_fit,
    classify_trace,
    fit_quadratic,
    mirror_trace,
)
from .grip import (
    AmbiguousPolicy,
    Cause,
    GripEvent,
    GripState,
    GripStore,
    Hint,
    HintWhileLocked,
    HysteresisConfig,
)
from .stream import (
    Phase,
    RejectReason,
    Segmenter,
    SegmenterConfig,
    TouchEvent,
    validate_trace,
)

__all__ = [
    "AmbiguousPolicy",
    "Cause",
    "ClassifierConfig",
    "DegenerateTrace",
    "GeometryError",
    "GripEvent",
    "GripState",
    "GripStore",
    "Hand",
    "HandednessDecision",
    "Hint",
    "HintWhileLocked",
    "HysteresisConfig",
    "NonFiniteInput",
    "Phase",
    "QuadraticFit",
    "RejectReason",
    "SampleOutOfBounds",
    "Segmenter",
    "SegmenterConfig",
    "SwipeTrace",
    "TouchEvent",
    "TouchSample",
    "classify_fit",
    "classify_trace",
    "fit_quadratic",
    "mirror_trace",
    "validate_trace",
]

__version__ = "0.1.0"
