"""Command-line entry point: fit, classify, generate, eval, serve.

All output is machine-parseable JSON unless --table is asked for, and all
timestamps come from the input data, so identical invocations on identical
inputs produce byte-identical output.

Exit codes: 0 success, 1 usage/input error, 2 validation rejection.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench
from .bench import GeneratorParams, Grip
from .geometry import ClassifierConfig, GeometryError, SwipeTrace, classify_fit, fit_quadratic
from .grip import GripStore, Hint, HysteresisConfig
from .stream import Phase, Segmenter, SegmenterConfig, TouchEvent, validate_trace
from .geometry import TouchSample

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REJECTED = 2


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_ERROR):
        super().__init__(message)
        self.code = code


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="handedness", description=__doc__)
    parser.add_argument("--config", help="optional JSON config file; flags override its keys")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit one trace file and print the quadratic + decision")
    p_fit.add_argument("trace_file")
    _classifier_flags(p_fit)

    p_gen = sub.add_parser("generate", help="write a labeled synthetic swipe corpus (JSONL)")
    p_gen.add_argument("--count", type=int)
    p_gen.add_argument("--grip-mix", help="e.g. left=0.45,right=0.45,index=0.1")
    p_gen.add_argument("--noise", type=float, help="per-sample jitter sigma in px")
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--out")
    p_gen.add_argument("--screen-w", type=float)
    p_gen.add_argument("--screen-h", type=float)

    p_eval = sub.add_parser("eval", help="score a labeled corpus against the detector")
    p_eval.add_argument("--corpus")
    _classifier_flags(p_eval)
    fmt = p_eval.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=None)
    fmt.add_argument("--table", action="store_true", default=None)

    p_cls = sub.add_parser("classify", help="run the live pipeline over touch-event JSONL on stdin")
    p_cls.add_argument("--stream", action="store_true", default=None,
                       help="read touch events from stdin until EOF")
    _classifier_flags(p_cls)
    p_cls.add_argument("--flip-count", type=int)

    p_srv = sub.add_parser("serve", help="run the local playground bridge")
    p_srv.add_argument("--port", type=int)
    p_srv.add_argument("--static-dir")
    return parser


def _classifier_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon-c", type=float, help="curvature dead zone in 1/px")
    p.add_argument("--q-min", type=float, help="minimum r2 for a verdict")


_DEFAULTS = {
    "count": 196,
    "grip_mix": "left=0.5,right=0.5",
    "noise": 2.0,
    "seed": 0,
    "out": "corpus.jsonl",
    "screen_w": 480.0,
    "screen_h": 960.0,
    "epsilon_c": 1e-5,
    "q_min": 0.5,
    "flip_count": 2,
    "port": 7341,
    "static_dir": None,
    "json": True,
    "table": False,
    "stream": True,
    "corpus": None,
}


def _resolve(args: argparse.Namespace) -> dict:
    """Layer flag values over config-file values over defaults."""
    merged = dict(_DEFAULTS)
    if args.config:
        try:
            file_cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read config {args.config}: {exc}")
        unknown = set(file_cfg) - set(_DEFAULTS)
        if unknown:
            raise CliError(f"unknown config keys: {', '.join(sorted(unknown))}")
        merged.update(file_cfg)
    for key, value in vars(args).items():
        if key in ("config", "command") or value is None:
            continue
        merged[key] = value
    return merged


def _parse_grip_mix(text: str) -> dict[Grip, float]:
    names = {"left": Grip.LEFT_THUMB, "right": Grip.RIGHT_THUMB, "index": Grip.INDEX_FINGER}
    mix = {}
    try:
        for part in text.split(","):
            name, _, weight = part.partition("=")
            mix[names[name.strip()]] = float(weight)
    except (KeyError, ValueError) as exc:
        raise CliError(f"bad --grip-mix {text!r}: {exc}")
    return mix


def _load_trace(path: str) -> SwipeTrace:
    """A trace file is either one corpus JSONL record or a raw [[x,y,t],...] array."""
    try:
        text = Path(path).read_text().strip()
        obj = json.loads(text.splitlines()[0]) if text else None
    except (OSError, json.JSONDecodeError, IndexError) as exc:
        raise CliError(f"cannot read trace {path}: {exc}")
    if obj is None:
        raise CliError(f"empty trace file {path}")
    try:
        if isinstance(obj, list):
            return SwipeTrace.from_points(obj)
        return bench.record_from_json(obj).trace
    except (bench.MalformedRecord, TypeError, IndexError) as exc:
        raise CliError(f"malformed trace {path}: {exc}")


def cmd_fit(cfg: dict) -> int:
    trace = _load_trace(cfg["trace_file"])
    verdict = validate_trace(trace)
    if not verdict.accepted:
        _emit({"rejected": verdict.reason.value})
        return EXIT_REJECTED
    fit = fit_quadratic(trace)
    decision = classify_fit(fit, ClassifierConfig(cfg["epsilon_c"], cfg["q_min"]))
    _emit({
        "a": fit.a,
        "b": fit.b,
        "c": fit.c,
        "r2": fit.r2,
        "n": fit.n,
        "label": decision.label.value,
        "curvature_margin": decision.curvature_margin,
    })
    return EXIT_OK


def cmd_generate(cfg: dict) -> int:
    params = GeneratorParams(
        screen_w=cfg["screen_w"],
        screen_h=cfg["screen_h"],
        noise_sigma=cfg["noise"],
        seed=cfg["seed"],
    )
    records = bench.generate_corpus(params, _parse_grip_mix(cfg["grip_mix"]), cfg["count"], cfg["seed"])
    bench.write_corpus(records, cfg["out"])
    _emit({"written": len(records), "out": cfg["out"]})
    return EXIT_OK


def cmd_eval(cfg: dict) -> int:
    if not cfg["corpus"]:
        raise CliError("--corpus is required")
    records = bench.read_corpus(cfg["corpus"])
    if not records:
        raise CliError("empty corpus")
    report = bench.evaluate(records, ClassifierConfig(cfg["epsilon_c"], cfg["q_min"]))
    if cfg["table"]:
        sys.stdout.write(report.to_table() + "\n")
    else:
        _emit(report.to_dict())
    return EXIT_OK


_HINTS = {h.value: h for h in Hint}


def cmd_classify(cfg: dict, stdin=None) -> int:
    """Touch-event JSONL on stdin -> decision and grip_event JSONL on stdout."""
    stdin = stdin if stdin is not None else sys.stdin
    segmenter = Segmenter()
    store = GripStore(HysteresisConfig(flip_count=cfg["flip_count"]))
    classifier = ClassifierConfig(cfg["epsilon_c"], cfg["q_min"])
    store.subscribe(lambda ev: _emit({"type": "grip_event", **ev.to_dict()}))

    for lineno, line in enumerate(stdin, 1):
        if not line.strip():
            continue
        try:
            msg = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CliError(f"stdin:{lineno}: invalid JSON: {exc}")
        kind = msg.get("type", "touch")
        if kind == "hint":
            hint = _HINTS.get(msg.get("hint"))
            if hint is None:
                raise CliError(f"stdin:{lineno}: unknown hint {msg.get('hint')!r}")
            store.apply_hint(hint, at=float(msg.get("t", 0.0)))
            continue
        if kind != "touch":
            raise CliError(f"stdin:{lineno}: unknown message type {kind!r}")
        try:
            event = TouchEvent(
                phase=Phase(msg["phase"]),
                sample=TouchSample(float(msg["x"]), float(msg["y"]), float(msg["t"])),
                pointer_id=int(msg.get("pointer", 0)),
            )
        except (KeyError, ValueError) as exc:
            raise CliError(f"stdin:{lineno}: malformed touch event: {exc}")
        trace = segmenter.push(event)
        if trace is None:
            continue
        try:
            fit = fit_quadratic(trace)
        except GeometryError:
            continue
        decision = classify_fit(fit, classifier)
        _emit({
            "type": "decision",
            "label": decision.label.value,
            "c": fit.c,
            "r2": fit.r2,
            "n": fit.n,
        })
        store.ingest_decision(decision, at=trace.samples[-1].t)
    return EXIT_OK


def cmd_serve(cfg: dict) -> int:
    from .service import run  # uvicorn import deferred; not needed elsewhere

    run(port=cfg["port"], static_dir=cfg["static_dir"])
    return EXIT_OK


_COMMANDS = {
    "fit": cmd_fit,
    "generate": cmd_generate,
    "eval": cmd_eval,
    "classify": cmd_classify,
    "serve": cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve(args)
        return _COMMANDS[args.command](cfg)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except (GeometryError, bench.CorpusError, ValueError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
