import random

import pytest

from handedness.geometry import SwipeTrace


def quadratic_trace(a, b, c, ys=None, noise=0.0, seed=0, label=None):
    """Samples lying on x = a + b*y + c*y^2, optionally with Gaussian x-noise."""
    if ys is None:
        ys = range(0, 501, 50)
    rng = random.Random(seed)
    points = []
    for i, y in enumerate(ys):
        x = a + b * y + c * y * y
        if noise:
            x += rng.gauss(0.0, noise)
        points.append((x, float(y), float(i * 10)))
    return SwipeTrace.from_points(points, label=label)


def touch_messages(trace, pointer=0, start_seq=1):
    """Turn a trace into the wire-format touch frames (down, moves, up)."""
    msgs = []
    last = len(trace.samples) - 1
    for i, s in enumerate(trace.samples):
        phase = "down" if i == 0 else ("up" if i == last else "move")
        msgs.append({
            "type": "touch",
            "seq": start_seq + i,
            "phase": phase,
            "x": s.x,
            "y": s.y,
            "t": s.t,
            "pointer": pointer,
        })
    return msgs


@pytest.fixture
def exact_left_trace():
    # The fixture parabola from the fit contract: opens left, c = -0.002.
    return quadratic_trace(100.0, 0.5, -0.002)


@pytest.fixture
def vertical_line_trace():
    return SwipeTrace.from_points([(240.0, float(y), float(i * 10)) for i, y in enumerate(range(0, 401, 100))])
