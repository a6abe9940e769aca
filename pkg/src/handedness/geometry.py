"""Quadratic swipe fitting and curvature-sign handedness classification.

A vertical thumb swipe, recorded as screen points (x, y), traces a parabola
x = a + b*y + c*y^2.  The sign of c tells the thumb apart: a left thumb pivots
from the left edge and produces a leftward-opening curve (c < 0), a right
thumb a rightward-opening one (c > 0).

Everything here is a pure function over immutable inputs; safe to call from
any thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np


class Hand(Enum):
    LEFT = "left"
    RIGHT = "right"
    AMBIGUOUS = "ambiguous"

    def flipped(self) -> "Hand":
        if self is Hand.LEFT:
            return Hand.RIGHT
        if self is Hand.RIGHT:
            return Hand.LEFT
        return Hand.AMBIGUOUS


class GeometryError(ValueError):
    """Base class for fit/classify input errors."""


class DegenerateTrace(GeometryError):
    """Too few samples or too few distinct y values to fit a quadratic."""


class NonFiniteInput(GeometryError):
    """A coordinate is NaN or infinite."""


class SampleOutOfBounds(GeometryError):
    """A sample lies outside the stated screen bounds."""


@dataclass(frozen=True)
class TouchSample:
    """One touch point: screen pixels (origin top-left, y grows downward),
    timestamp in milliseconds."""

    x: float
    y: float
    t: float


@dataclass(frozen=True)
class SwipeTrace:
    """Ordered finger-down-to-up samples, optionally with a ground-truth label."""

    samples: tuple[TouchSample, ...]
    label: str | None = None

    @staticmethod
    def from_points(points: Sequence[Sequence[float]], label: str | None = None) -> "SwipeTrace":
        return SwipeTrace(tuple(TouchSample(p[0], p[1], p[2]) for p in points), label)

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class QuadraticFit:
    """Least-squares coefficients of x = a + b*y + c*y^2 over one trace.

    a is in pixels, b dimensionless, c in 1/pixels.  r2 is the coefficient of
    determination of x about its mean, clamped to [0, 1].
    """

    a: float
    b: float
    c: float
    r2: float
    n: int


@dataclass(frozen=True)
class ClassifierConfig:
    """Decision thresholds.

    epsilon_c: dead zone around zero curvature (1/px); |c| at or below it is
    not evidence of either thumb.  q_min: minimum r2 for any verdict.
    """

    epsilon_c: float = 1e-5
    q_min: float = 0.5


@dataclass(frozen=True)
class HandednessDecision:
    label: Hand
    fit: QuadraticFit
    curvature_margin: float


MIN_SAMPLES = 5
MIN_DISTINCT_Y = 3


def fit_quadratic(trace: SwipeTrace) -> QuadraticFit:
    """Ordinary least-squares fit of x = a + b*y + c*y^2.

    One vectorized accumulation pass over the samples plus one residual pass;
    the solve itself is a constant-size 3x3 system, so total time is linear
    in n.

    Internally y is centered at its mean and scaled by its half-range before
    solving (raw pixel y^4 moments are badly conditioned); coefficients are
    mapped back to raw coordinates afterwards.  Centering/positive scaling
    cannot change the sign of c.
    """
    samples = trace.samples
    n = len(samples)
    if n < MIN_SAMPLES:
        raise DegenerateTrace(f"need at least {MIN_SAMPLES} samples, got {n}")
    xs = np.fromiter((s.x for s in samples), dtype=np.float64, count=n)
    ys = np.fromiter((s.y for s in samples), dtype=np.float64, count=n)
    ts = np.fromiter((s.t for s in samples), dtype=np.float64, count=n)
    if not (np.isfinite(xs).all() and np.isfinite(ys).all() and np.isfinite(ts).all()):
        raise NonFiniteInput("non-finite coordinate in trace")
    if len(set(ys.tolist())) < MIN_DISTINCT_Y:
        raise DegenerateTrace("fewer than 3 distinct y values; quadratic system is singular")

    y_mu = float(ys.mean())
    y_half = float(ys.max() - ys.min()) / 2.0
    us = (ys - y_mu) / y_half
    u2 = us * us

    su1 = float(us.sum())
    su2 = float(u2.sum())
    su3 = float((u2 * us).sum())
    su4 = float((u2 * u2).sum())
    sx = float(xs.sum())
    sxu = float((xs * us).sum())
    sxu2 = float((xs * u2).sum())

    p0, p1, p2 = _solve3(
        (float(n), su1, su2),
        (su1, su2, su3),
        (su2, su3, su4),
        (sx, sxu, sxu2),
    )

    res = xs - (p0 + us * (p1 + us * p2))
    ss_res = float(res @ res)
    dev = xs - sx / n
    ss_tot = float(dev @ dev)
    if ss_tot <= 0.0:
        r2 = 1.0 if ss_res <= 0.0 else 0.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))

    # Map u = (y - mu)/h back to raw y.
    h = y_half
    c = p2 / (h * h)
    b = p1 / h - 2.0 * p2 * y_mu / (h * h)
    a = p0 - p1 * y_mu / h + p2 * y_mu * y_mu / (h * h)
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(c)):
        raise DegenerateTrace("normal equations produced non-finite coefficients")
    return QuadraticFit(a=a, b=b, c=c, r2=r2, n=n)


def _solve3(r0, r1, r2, v) -> tuple[float, float, float]:
    """Cramer's rule for a symmetric 3x3 system given as rows + rhs."""
    det = _det3(r0, r1, r2)
    if det == 0.0:
        raise DegenerateTrace("singular normal-equations matrix")
    d0 = _det3(_sub(r0, 0, v[0]), _sub(r1, 0, v[1]), _sub(r2, 0, v[2]))
    d1 = _det3(_sub(r0, 1, v[0]), _sub(r1, 1, v[1]), _sub(r2, 1, v[2]))
    d2 = _det3(_sub(r0, 2, v[0]), _sub(r1, 2, v[1]), _sub(r2, 2, v[2]))
    return d0 / det, d1 / det, d2 / det


def _sub(row, i, value):
    out = list(row)
    out[i] = value
    return tuple(out)


def _det3(r0, r1, r2) -> float:
    return (
        r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
        - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
    )


def classify_fit(fit: QuadraticFit, cfg: ClassifierConfig = ClassifierConfig()) -> HandednessDecision:
    """Sign-of-curvature rule with a dead zone and a fit-quality floor.

    c < -epsilon_c opens left -> left thumb; c > +epsilon_c opens right ->
    right thumb; anything else, or a fit with r2 below q_min, is ambiguous.
    """
    margin = abs(fit.c) - cfg.epsilon_c
    if fit.r2 < cfg.q_min or margin <= 0.0:
        label = Hand.AMBIGUOUS
    elif fit.c < 0.0:
        label = Hand.LEFT
    else:
        label = Hand.RIGHT
    return HandednessDecision(label=label, fit=fit, curvature_margin=margin)


def classify_trace(trace: SwipeTrace, cfg: ClassifierConfig = ClassifierConfig()) -> HandednessDecision:
    """Convenience: fit then classify."""
    return classify_fit(fit_quadratic(trace), cfg)


def mirror_trace(trace: SwipeTrace, screen_width: float) -> SwipeTrace:
    """Reflect every x about the vertical screen axis; y and t untouched."""
    for s in trace.samples:
        if not (0.0 <= s.x <= screen_width):
            raise SampleOutOfBounds(f"x={s.x} outside [0, {screen_width}]")
    return SwipeTrace(
        tuple(TouchSample(screen_width - s.x, s.y, s.t) for s in trace.samples),
        trace.label,
    )
