"""Synthetic swipe corpora and detector scoring.

The generator models a thumb as a hinged lever: the fingertip sweeps a
circular arc of radius thumb_length around a pivot near the bottom screen
corner on the gripping side.  Expressed as x(y) such an arc is strictly
convex toward the gripping side, so its quadratic fit has the curvature sign
the detector expects; that gives every generated trace a ground-truth label
by construction.  Index-finger distractors are near-vertical lines.

Everything is deterministic: record i of a corpus seeded with s depends only
on (s, i), so generation order (or parallelism) cannot change the output.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .geometry import (
    ClassifierConfig,
    GeometryError,
    Hand,
    SwipeTrace,
    TouchSample,
    classify_fit,
    fit_quadratic,
)
from .stream import SegmenterConfig, validate_trace

CORPUS_SCHEMA = 1


class Grip(Enum):
    LEFT_THUMB = "left_thumb"
    RIGHT_THUMB = "right_thumb"
    INDEX_FINGER = "index_finger"


_GRIP_HAND = {Grip.LEFT_THUMB: Hand.LEFT, Grip.RIGHT_THUMB: Hand.RIGHT}


class GeometryInfeasible(ValueError):
    """The thumb arc does not stay on-screen for the given anchor/length."""


class CorpusError(ValueError):
    pass


class UnlabeledRecord(CorpusError):
    pass


class MalformedRecord(CorpusError):
    pass


@dataclass(frozen=True)
class GeneratorParams:
    grip: Grip = Grip.RIGHT_THUMB
    screen_w: float = 480.0
    screen_h: float = 960.0
    px_per_inch: float = 160.0
    thumb_length_in: tuple[float, float] = (2.4, 2.9)
    anchor_jitter: float = 24.0  # px around the bottom corner pivot
    arc_span: float = 0.5  # radians swept by one swipe
    noise_sigma: float = 2.0  # px of isotropic jitter per sample
    samples_per_swipe: tuple[int, int] = (15, 45)
    seed: int = 0

    def __post_init__(self):
        if min(self.screen_w, self.screen_h, self.px_per_inch, self.arc_span) <= 0:
            raise ValueError("dimensions must be positive")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")


@dataclass(frozen=True)
class TraceRecord:
    trace: SwipeTrace
    label: Grip | None
    params_digest: str
    id: str
    extra: dict = field(default_factory=dict)


def _record_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def _params_digest(params: GeneratorParams, index: int) -> str:
    blob = json.dumps(
        {**{k: (v.value if isinstance(v, Enum) else v) for k, v in vars(params).items()}, "index": index},
        sort_keys=True,
        default=list,
    )
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def generate_swipe(params: GeneratorParams, index: int = 0) -> TraceRecord:
    """Generate one labeled synthetic swipe.

    Thumb swipes are built in right-hand geometry (pivot at the bottom-right
    corner) and reflected about the vertical screen axis for the left grip,
    so left/right pairs with the same seed are exact mirrors.
    """
    rng = _record_rng(params.seed, index)
    w, h = params.screen_w, params.screen_h

    length = rng.uniform(*params.thumb_length_in) * params.px_per_inch
    ax = w + 30.0 + rng.uniform(-params.anchor_jitter, params.anchor_jitter)
    ay = h + rng.uniform(-params.anchor_jitter, params.anchor_jitter)
    # Swipes sweep the low-elevation part of the arc, where the chord is
    # steep enough on screen to pass the vertical-dominance filter.
    alpha0 = rng.uniform(0.10, 0.16)  # radians above horizontal at swipe start
    n = rng.randint(*params.samples_per_swipe)
    dt = rng.uniform(6.0, 12.0)

    points: list[tuple[float, float, float]] = []
    if params.grip is Grip.INDEX_FINGER:
        x0 = rng.uniform(0.25 * w, 0.75 * w)
        slope = rng.uniform(-0.01, 0.01)
        y_top, y_bot = 0.3 * h, 0.8 * h
        for i in range(n):
            y = y_bot + (y_top - y_bot) * i / (n - 1)
            x = x0 + slope * (y - y_bot)
            points.append((x, y, i * dt))
    else:
        for i in range(n):
            alpha = alpha0 + params.arc_span * i / (n - 1)
            x = ax - length * math.cos(alpha)
            y = ay - length * math.sin(alpha)
            points.append((x, y, i * dt))

    for x, y, _ in points:
        if not (0.0 <= x <= w and 0.0 <= y <= h):
            raise GeometryInfeasible(
                f"sample ({x:.1f}, {y:.1f}) off a {w:.0f}x{h:.0f} screen "
                f"(anchor ({ax:.1f}, {ay:.1f}), length {length:.1f})"
            )

    noisy = []
    for x, y, t in points:
        if params.noise_sigma > 0:
            # Jitter clipped at the screen edge, like a real digitizer.
            x = min(max(x + rng.gauss(0.0, params.noise_sigma), 0.0), w)
            y = min(max(y + rng.gauss(0.0, params.noise_sigma), 0.0), h)
        noisy.append((x, y, t))

    if params.grip is Grip.LEFT_THUMB:
        noisy = [(w - x, y, t) for x, y, t in noisy]

    trace = SwipeTrace.from_points(noisy, label=params.grip.value)
    return TraceRecord(
        trace=trace,
        label=params.grip,
        params_digest=_params_digest(params, index),
        id=f"{params.grip.value}-{params.seed}-{index}",
    )


def allocate_labels(mix: dict[Grip, float], count: int, seed: int) -> list[Grip]:
    """Exact largest-remainder allocation of `count` records to grips,
    deterministically shuffled."""
    total = sum(mix.values())
    if total <= 0:
        raise ValueError("grip mix weights must sum to a positive value")
    quotas = {g: count * wgt / total for g, wgt in mix.items()}
    counts = {g: int(q) for g, q in quotas.items()}
    leftover = count - sum(counts.values())
    by_remainder = sorted(quotas, key=lambda g: (quotas[g] - counts[g], g.value), reverse=True)
    for g in by_remainder[:leftover]:
        counts[g] += 1
    labels = [g for g in sorted(counts, key=lambda g: g.value) for _ in range(counts[g])]
    random.Random(f"{seed}:labels").shuffle(labels)
    return labels


def generate_corpus(
    base: GeneratorParams,
    mix: dict[Grip, float],
    count: int,
    seed: int,
) -> list[TraceRecord]:
    if count < 1:
        raise ValueError("count must be >= 1")
    labels = allocate_labels(mix, count, seed)
    return [
        generate_swipe(replace(base, grip=grip, seed=seed), index=i)
        for i, grip in enumerate(labels)
    ]


# -- corpus JSONL --


def record_to_json(rec: TraceRecord) -> dict:
    out = {
        "schema": CORPUS_SCHEMA,
        "id": rec.id,
        "label": rec.label.value if rec.label else None,
        "params_digest": rec.params_digest,
        "samples": [[s.x, s.y, s.t] for s in rec.trace.samples],
    }
    out.update(rec.extra)
    return out


_KNOWN_FIELDS = {"schema", "id", "label", "params_digest", "samples"}


def record_from_json(obj: dict) -> TraceRecord:
    try:
        samples = obj["samples"]
        label = obj.get("label")
        return TraceRecord(
            trace=SwipeTrace.from_points(samples, label=label),
            label=Grip(label) if label else None,
            params_digest=obj.get("params_digest", ""),
            id=obj.get("id", ""),
            extra={k: v for k, v in obj.items() if k not in _KNOWN_FIELDS},
        )
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise MalformedRecord(f"record {obj.get('id', '?')}: {exc}") from exc


def write_corpus(records: Iterable[TraceRecord], path: str | Path) -> None:
    path = Path(path)
    try:
        with path.open("w") as fh:
            for rec in records:
                fh.write(json.dumps(record_to_json(rec)) + "\n")
    except OSError as exc:
        raise CorpusError(f"cannot write corpus {path}: {exc}") from exc


def read_corpus(path: str | Path) -> list[TraceRecord]:
    path = Path(path)
    records = []
    try:
        with path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    records.append(record_from_json(obj))
                except json.JSONDecodeError as exc:
                    raise MalformedRecord(f"{path}:{lineno}: invalid JSON: {exc}") from exc
                except MalformedRecord as exc:
                    raise MalformedRecord(f"{path}:{lineno}: {exc}") from exc
    except OSError as exc:
        raise CorpusError(f"cannot read corpus {path}: {exc}") from exc
    return records


# -- evaluation --


@dataclass(frozen=True)
class EvalReport:
    total: int
    correct: int
    ambiguous: int
    misclassified: int
    malformed: int
    accuracy: float  # headline figure: ambiguous excluded from denominator
    accuracy_strict: float  # ambiguous counted as wrong
    sign_consistency: float
    confusion: dict[str, dict[str, int]]  # label -> decision -> count
    mean_r2: float

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "correct": self.correct,
            "ambiguous": self.ambiguous,
            "misclassified": self.misclassified,
            "malformed": self.malformed,
            "accuracy": self.accuracy,
            "accuracy_strict": self.accuracy_strict,
            "sign_consistency": self.sign_consistency,
            "confusion": self.confusion,
            "mean_r2": self.mean_r2,
        }

    def to_table(self) -> str:
        lines = [
            f"{'total':<18}{self.total}",
            f"{'correct':<18}{self.correct}",
            f"{'ambiguous':<18}{self.ambiguous}",
            f"{'misclassified':<18}{self.misclassified}",
            f"{'malformed':<18}{self.malformed}",
            f"{'accuracy':<18}{self.accuracy:.4f}",
            f"{'accuracy_strict':<18}{self.accuracy_strict:.4f}",
            f"{'sign_consistency':<18}{self.sign_consistency:.4f}",
            f"{'mean_r2':<18}{self.mean_r2:.4f}",
            "",
            "label / decision".ljust(16) + "".join(f"{d:>12}" for d in _DECISIONS),
        ]
        for label in _LABELS:
            row = self.confusion.get(label, {})
            lines.append(f"{label:<16}" + "".join(f"{row.get(d, 0):>12}" for d in _DECISIONS))
        return "\n".join(lines)


_LABELS = [g.value for g in (Grip.LEFT_THUMB, Grip.RIGHT_THUMB, Grip.INDEX_FINGER)]
_DECISIONS = [h.value for h in (Hand.LEFT, Hand.RIGHT, Hand.AMBIGUOUS)]


def evaluate(
    records: Sequence[TraceRecord],
    classifier: ClassifierConfig = ClassifierConfig(),
    segmenter: SegmenterConfig = SegmenterConfig(),
) -> EvalReport:
    """Score the full pipeline (validation, fit, classification) against labels.

    Thumb-labeled traces are correct when the decision matches the side and
    ambiguous ones are withheld from the headline accuracy; an
    index-finger trace is correct exactly when the detector abstains.
    """
    correct = ambiguous = misclassified = malformed = 0
    signs_ok = signs_total = 0
    r2s: list[float] = []
    confusion = {lab: {d: 0 for d in _DECISIONS} for lab in _LABELS}

    for rec in records:
        if rec.label is None:
            raise UnlabeledRecord(f"record {rec.id!r} has no ground-truth label")
        try:
            if validate_trace(rec.trace, segmenter).accepted:
                fit = fit_quadratic(rec.trace)
                decision = classify_fit(fit, classifier)
                r2s.append(fit.r2)
            else:
                fit = None
                decision = None
        except GeometryError:
            malformed += 1
            continue

        verdict = decision.label if decision else Hand.AMBIGUOUS
        confusion[rec.label.value][verdict.value] += 1

        expected = _GRIP_HAND.get(rec.label)
        if expected is None:  # index finger: abstention is the right answer
            if verdict is Hand.AMBIGUOUS:
                correct += 1
            else:
                misclassified += 1
        elif verdict is Hand.AMBIGUOUS:
            ambiguous += 1
        elif verdict is expected:
            correct += 1
        else:
            misclassified += 1

        if expected is not None and fit is not None and verdict is not Hand.AMBIGUOUS:
            signs_total += 1
            if (fit.c < 0) == (expected is Hand.LEFT):
                signs_ok += 1

    total = correct + ambiguous + misclassified
    decided = total - ambiguous
    return EvalReport(
        total=total,
        correct=correct,
        ambiguous=ambiguous,
        misclassified=misclassified,
        malformed=malformed,
        accuracy=correct / decided if decided else 0.0,
        accuracy_strict=correct / total if total else 0.0,
        sign_consistency=signs_ok / signs_total if signs_total else 0.0,
        confusion=confusion,
        mean_r2=math.fsum(r2s) / len(r2s) if r2s else 0.0,
    )
