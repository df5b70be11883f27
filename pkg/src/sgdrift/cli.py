"""Command-line front end: generate, detect, eval.

Every run writes a manifest next to its outputs with the resolved
arguments, seed, and tool version, sufficient to re-run the command
bit-identically (timing fields excepted). Signals are serialized as JSON
lines so downstream consumers can tail them live.

Exit codes: 0 success, 1 usage error, 2 data error. Defaults honour
environment variable overrides (SGDRIFT_SEED, SGDRIFT_F_SCHEDULE,
SGDRIFT_X, SGDRIFT_SIGMA, SGDRIFT_VARIANT, SGDRIFT_SPRIME).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .genstream import (DriftSchedule, GeneratorConfig, PATTERNS,
                        generate_to_files, read_ground_truth)
from .harness import DeterminismError, distances, repeated_timing
from .sgdd import SgddConfig, SgddState, sgdd_step
from .sgdp import DEFAULT_F_SCHEDULE, FULL_F_SCHEDULE, SgdpConfig, SgdpState, sgdp_step
from .signals import DriftSignal, now_ms
from .stream_model import SgrParseError, parse_sgr


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env(name: str, fallback):
    return os.environ.get(f"SGDRIFT_{name}", fallback)


def _parse_f_schedule(text: str) -> tuple[float, ...]:
    if text == "full":
        return FULL_F_SCHEDULE
    if text == "default":
        return DEFAULT_F_SCHEDULE
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UsageError(f"bad f schedule: {text!r}") from None
    if not values:
        raise UsageError("f schedule is empty")
    return values


def _write_manifest(directory: Path, subcommand: str, args: dict) -> None:
    manifest = {
        "tool": "sgdrift",
        "version": __version__,
        "subcommand": subcommand,
        "args": args,
        "written_at_ms": now_ms(),
    }
    path = directory / f"manifest_{subcommand}.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def build_parser() -> _Parser:
    parser = _Parser(prog="sgdrift",
                     description="Concept-drift prediction and detection "
                                 "for streaming bipartite graphs")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="synthesize a drifting stream")
    gen.add_argument("--pattern", choices=PATTERNS, required=True)
    gen.add_argument("--delta", type=int, required=True, help="drift interval in records")
    gen.add_argument("--n", type=int, required=True, help="total records")
    gen.add_argument("--seed", type=int, default=int(_env("SEED", 0)))
    gen.add_argument("--prefix-len", type=int, default=1000)
    gen.add_argument("--rho", type=float, default=0.3, help="regime-0 connection probability")
    gen.add_argument("--lmin", type=int, default=1)
    gen.add_argument("--lmax", type=int, default=2)
    gen.add_argument("--beta", type=int, default=5)
    gen.add_argument("--m", type=int, default=10)
    gen.add_argument("--out", type=Path, default=Path("."), help="output directory")
    gen.add_argument("--name", default=None, help="basename for stream/truth files")
    gen.add_argument("--batch", action="store_true",
                     help="emit the full R/G stream family instead of one stream")

    det = sub.add_parser("detect", help="run detectors over a stream")
    det.add_argument("--mode", choices=("sgdp", "sgdd", "both"), required=True)
    det.add_argument("--input", required=True, help="stream file, or - for stdin")
    det.add_argument("--out", default="-", help="signal file (JSON lines), or - for stdout")
    det.add_argument("--delimiter", default=",")
    det.add_argument("--f-schedule", default=_env("F_SCHEDULE", "default"),
                     help="'default' (0.3), 'full', or comma-separated factors")
    det.add_argument("--x", type=float, default=float(_env("X", 0.25)))
    det.add_argument("--sigma", type=float, default=float(_env("SIGMA", 1.0)))
    det.add_argument("--seed", type=int, default=int(_env("SEED", 0)))
    det.add_argument("--variant", choices=("default", "appendix"),
                     default=_env("VARIANT", "default"))
    det.add_argument("--sprime", choices=("decreasing", "literal"),
                     default=_env("SPRIME", "decreasing"))
    det.add_argument("--on-error", choices=("abort", "skip"), default="abort")

    ev = sub.add_parser("eval", help="score signals against ground truth")
    ev.add_argument("--signals", help="signal file from detect")
    ev.add_argument("--truth", required=True, help="ground-truth file from generate")
    ev.add_argument("--delta", type=int, default=None,
                    help="drift interval for false-positive attribution")
    ev.add_argument("--out", type=Path, default=Path("."), help="output directory")
    ev.add_argument("--repeat", type=int, default=None,
                    help="run the timing protocol with this many executions")
    ev.add_argument("--batches", type=int, default=10)
    ev.add_argument("--input", help="stream file (timing protocol)")
    ev.add_argument("--mode", choices=("sgdp", "sgdd"), default="sgdp")
    ev.add_argument("--delimiter", default=",")
    ev.add_argument("--seed", type=int, default=int(_env("SEED", 0)))
    return parser


def _cmd_generate(args) -> int:
    out_dir: Path = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    schedule_args = []
    if args.batch:
        for pattern, letter in (("recurring", "R"), ("gradual", "G")):
            for a, delta in ((1, args.delta), (2, 2 * args.delta)):
                for b in range(1, 6):
                    name = f"{letter}_{a}{b}"
                    seed = args.seed * 1000 + (0 if letter == "R" else 500) + a * 10 + b
                    schedule_args.append((pattern, delta, name, seed))
    else:
        name = args.name or f"{args.pattern[0].upper()}_{args.delta}_{args.seed}"
        schedule_args.append((args.pattern, args.delta, name, args.seed))
    for pattern, delta, name, seed in schedule_args:
        config = GeneratorConfig(rho=args.rho, l_min=args.lmin, l_max=args.lmax,
                                 beta=args.beta, m=args.m, seed=seed,
                                 prefix_len=args.prefix_len)
        schedule = DriftSchedule.make(pattern, delta)
        stream_path = out_dir / f"{name}.stream"
        truth_path = out_dir / f"{name}.truth"
        truth = generate_to_files(config, schedule, args.n, stream_path, truth_path)
        print(f"{name}: {args.n} records, drifts at {list(truth.cd_indices)}",
              file=sys.stderr)
    _write_manifest(out_dir, "generate", {
        "pattern": None if args.batch else args.pattern, "batch": args.batch,
        "delta": args.delta, "n": args.n, "seed": args.seed,
        "prefix_len": args.prefix_len, "rho": args.rho,
        "lmin": args.lmin, "lmax": args.lmax, "beta": args.beta, "m": args.m,
        "names": [name for _, _, name, _ in schedule_args],
    })
    return 0


def _detect_stream(lines, args, emit) -> None:
    sgdp_state = None
    sgdd_state = None
    if args.mode in ("sgdp", "both"):
        sgdp_state = SgdpState(config=SgdpConfig(
            f_schedule=_parse_f_schedule(args.f_schedule), variant=args.variant))
    if args.mode in ("sgdd", "both"):
        sgdd_state = SgddState(config=SgddConfig(
            x=args.x, sigma=args.sigma, seed=args.seed,
            variant=args.variant, sprime_strategy=args.sprime))
    t = 0
    for lineno, line in enumerate(lines, start=1):
        try:
            record = parse_sgr(line, t + 1, args.delimiter)
        except SgrParseError as exc:
            if args.on_error == "skip":
                continue
            raise DataError(f"line {lineno}: {exc}") from None
        if record is None:
            continue
        t += 1
        if sgdp_state is not None:
            for signal in sgdp_step(sgdp_state, record.tau):
                emit(signal)
        if sgdd_state is not None:
            signal = sgdd_step(sgdd_state, record)
            if signal is not None:
                emit(signal)


def _cmd_detect(args) -> int:
    sink = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8")
    try:
        emit = lambda signal: print(signal.to_json(), file=sink, flush=sink is sys.stdout)
        if args.input == "-":
            _detect_stream(sys.stdin, args, emit)
        else:
            with open(args.input, encoding="utf-8") as handle:
                _detect_stream(handle, args, emit)
    finally:
        if sink is not sys.stdout:
            sink.close()
    if args.out != "-":
        out_path = Path(args.out)
        _write_manifest(out_path.parent, "detect", {
                            "mode": args.mode, "input": args.input, "out": args.out,
                            "delimiter": args.delimiter, "on_error": args.on_error,
                            "f_schedule": args.f_schedule, "x": args.x,
                            "sigma": args.sigma, "seed": args.seed,
                            "variant": args.variant, "sprime": args.sprime,
                        })
    return 0


def _read_signals(path: str) -> list[DriftSignal]:
    signals = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                signals.append(DriftSignal.from_json(line))
    return signals


def _timing_runner(args, truth):
    slot = {c: k for k, c in enumerate(truth.cd_indices)}

    def run():
        signals = []
        cd_wall = [None] * len(slot)
        with open(args.input, encoding="utf-8") as handle:
            sgdp_state = SgdpState() if args.mode == "sgdp" else None
            sgdd_state = (SgddState(config=SgddConfig(seed=args.seed))
                          if args.mode == "sgdd" else None)
            t = 0
            for line in handle:
                record = parse_sgr(line, t + 1, args.delimiter)
                if record is None:
                    continue
                t += 1
                if sgdp_state is not None:
                    signals.extend(sgdp_step(sgdp_state, record.tau))
                else:
                    signal = sgdd_step(sgdd_state, record)
                    if signal is not None:
                        signals.append(signal)
                if record.t in slot:
                    cd_wall[slot[record.t]] = time.time() * 1000.0
        return signals, cd_wall

    return run


def _cmd_eval(args) -> int:
    truth = read_ground_truth(args.truth, args.delimiter)
    if not truth.cd_indices:
        raise DataError("ground-truth file is empty, nothing to score")
    if args.repeat is not None:
        if not args.input:
            raise UsageError("--repeat needs --input (stream to re-run)")
        runner = _timing_runner(args, truth)
        try:
            report = repeated_timing(runner, truth, runs=args.repeat,
                                     batches=args.batches,
                                     drift_interval=args.delta)
        except DeterminismError as exc:
            raise DataError(str(exc)) from None
    else:
        if not args.signals:
            raise UsageError("offline eval needs --signals")
        signals = _read_signals(args.signals)
        report = distances(signals, truth, args.delta)
    out_dir: Path = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(
        json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    (out_dir / "report.tsv").write_text(report.to_table(), encoding="utf-8")
    print(report.to_table(), end="")
    _write_manifest(out_dir, "eval", {
        "signals": args.signals, "truth": args.truth, "delta": args.delta,
        "repeat": args.repeat, "batches": args.batches, "delimiter": args.delimiter,
        "input": args.input, "mode": args.mode, "seed": args.seed,
    })
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "detect":
            return _cmd_detect(args)
        if args.command == "eval":
            return _cmd_eval(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
