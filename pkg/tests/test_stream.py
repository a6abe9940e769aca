import pytest

from handedness.geometry import SwipeTrace, TouchSample
from handedness.stream import (
    OutOfOrderEvent,
    Phase,
    RejectReason,
    Segmenter,
    SegmenterConfig,
    TouchEvent,
    validate_trace,
)


def ev(phase, x, y, t, pointer=0):
    return TouchEvent(phase=phase, sample=TouchSample(x, y, t), pointer_id=pointer)


def swipe_events(points, pointer=0):
    events = [ev(Phase.DOWN, *points[0], pointer=pointer)]
    events += [ev(Phase.MOVE, *p, pointer=pointer) for p in points[1:-1]]
    events.append(ev(Phase.UP, *points[-1], pointer=pointer))
    return events


def vertical_points(n=22, x0=240.0, y0=900.0, y1=300.0, dx=10.0):
    return [
        (x0 + dx * i / (n - 1), y0 + (y1 - y0) * i / (n - 1), i * 10.0)
        for i in range(n)
    ]


class TestValidateTrace:
    def test_accepts_vertical_swipe(self):
        trace = SwipeTrace.from_points(vertical_points(dx=25.0))
        assert validate_trace(trace).accepted

    def test_rejects_short_extent(self):
        trace = SwipeTrace.from_points(vertical_points(y0=500.0, y1=440.0))
        result = validate_trace(trace)
        assert not result.accepted
        assert result.reason is RejectReason.TOO_SHORT

    def test_rejects_horizontal(self):
        points = [(100.0 + 20 * i, 500.0 - 7 * i, i * 10.0) for i in range(16)]
        result = validate_trace(SwipeTrace.from_points(points))
        assert result.reason is RejectReason.NOT_VERTICAL

    def test_rejects_constant_y(self):
        points = [(100.0 + i, 500.0, i * 10.0) for i in range(10)]
        result = validate_trace(SwipeTrace.from_points(points))
        assert result.reason is RejectReason.DEGENERATE_GEOMETRY

    def test_rejects_too_few_samples(self):
        points = vertical_points(n=4)
        result = validate_trace(SwipeTrace.from_points(points))
        assert result.reason is RejectReason.TOO_FEW_SAMPLES

    def test_rejects_non_monotonic_time(self):
        points = vertical_points()
        points[5] = (points[5][0], points[5][1], points[4][2])
        result = validate_trace(SwipeTrace.from_points(points))
        assert result.reason is RejectReason.NON_MONOTONIC_TIME

    def test_thresholds_must_be_positive(self):
        with pytest.raises(ValueError):
            SegmenterConfig(min_vertical_extent=0)


class TestSegmenter:
    def test_emits_well_formed_swipe(self):
        seg = Segmenter()
        points = vertical_points()
        traces = [seg.push(e) for e in swipe_events(points)]
        emitted = [t for t in traces if t is not None]
        assert len(emitted) == 1
        assert len(emitted[0]) == 22
        assert [s.x for s in emitted[0].samples] == [p[0] for p in points]

    def test_below_min_samples_not_emitted(self):
        seg = Segmenter()
        points = [(240.0, 900.0, 0.0), (240.0, 700.0, 10.0), (242.0, 500.0, 20.0), (243.0, 300.0, 30.0)]
        assert all(seg.push(e) is None for e in swipe_events(points))

    def test_horizontal_gesture_not_emitted(self):
        seg = Segmenter()
        points = [(100.0 + 20 * i, 500.0 - 1.25 * i, i * 9.0) for i in range(16)]
        assert all(seg.push(e) is None for e in swipe_events(points))

    def test_cancel_discards(self):
        seg = Segmenter()
        points = vertical_points()
        for e in swipe_events(points)[:-1]:
            seg.push(e)
        assert seg.push(ev(Phase.CANCEL, *points[-1])) is None
        # Segmenter is back to pristine state: a fresh swipe still works.
        emitted = [seg.push(e) for e in swipe_events([(x, y, t + 1000) for x, y, t in points])]
        assert sum(t is not None for t in emitted) == 1

    def test_duplicate_samples_deduplicated(self):
        seg = Segmenter()
        points = vertical_points()
        events = swipe_events(points)
        doubled = events[:5] + [events[4]] + events[5:]  # repeat one move verbatim
        emitted = [t for t in (seg.push(e) for e in doubled) if t is not None]
        assert len(emitted) == 1
        assert len(emitted[0]) == len(points)

    def test_out_of_order_raises(self):
        seg = Segmenter()
        seg.push(ev(Phase.DOWN, 240.0, 900.0, 100.0))
        with pytest.raises(OutOfOrderEvent):
            seg.push(ev(Phase.MOVE, 240.0, 880.0, 50.0))

    def test_orphan_events_dropped(self):
        seg = Segmenter()
        assert seg.push(ev(Phase.MOVE, 240.0, 880.0, 50.0)) is None
        assert seg.push(ev(Phase.UP, 240.0, 870.0, 60.0)) is None

    def test_second_pointer_cancels_gesture(self):
        seg = Segmenter()
        points = vertical_points()
        events = swipe_events(points)
        for e in events[:10]:
            seg.push(e)
        seg.push(ev(Phase.DOWN, 100.0, 500.0, 95.0, pointer=1))
        emitted = [seg.push(e) for e in events[10:]]
        emitted.append(seg.push(ev(Phase.UP, 100.0, 400.0, 400.0, pointer=1)))
        assert all(t is None for t in emitted)

    def test_long_gap_discards_gesture(self):
        seg = Segmenter()
        points = vertical_points()
        events = swipe_events(points)
        for e in events[:10]:
            seg.push(e)
        stale = ev(Phase.MOVE, 240.0, 500.0, events[9].sample.t + 1000.0)
        assert seg.push(stale) is None
        assert all(seg.push(e) is None for e in events[10:])

    def test_emitted_traces_always_validate(self):
        cfg = SegmenterConfig()
        seg = Segmenter(cfg)
        points = vertical_points()
        for e in swipe_events(points)[:-1]:
            seg.push(e)
        trace = seg.push(swipe_events(points)[-1])
        assert trace is not None
        assert validate_trace(trace, cfg).accepted
