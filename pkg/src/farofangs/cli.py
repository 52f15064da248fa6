"""Command-line interface.

Exit codes: 0 success, 1 usage error (bad flags, missing files, invalid
penalty), 2 data error (malformed or inconsistent input).
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import __version__
from .baselines import draws_method, sifa_estimate
from .fangs import ConfigError, SearchConfig, fangs
from .faro import expected_loss, faro_loss
from .formats import (
    FazError,
    emit_result,
    read_csv_allocation,
    read_samples,
    result_document,
    write_samples,
)
from .hamming import LossParams
from .lap import bench_alignment, format_bench
from .matrix import DimensionError, SampleSet
from .synthetic import perturbed_samples

THREADS_ENV = "FAROFANGS_THREADS"

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _penalty(text: str) -> float:
    try:
        a = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid penalty {text!r}") from None
    if not 0.0 < a < 2.0:
        raise argparse.ArgumentTypeError(f"penalty a must lie in (0, 2), got {text}")
    return a


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "0")
    try:
        return max(0, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV}={raw!r} is not an integer") from None


def _existing(path: str) -> str:
    if not os.path.isfile(path):
        raise UsageError(f"no such file: {path}")
    return path


def _load_samples(path: str, csv: bool) -> SampleSet:
    _existing(path)
    if csv:
        return SampleSet([read_csv_allocation(path)])
    return read_samples(path)


def _load_single(path: str, csv: bool):
    samples = _load_samples(path, csv)
    if len(samples) != 1:
        raise DataError(f"{path}: expected exactly one matrix, found {len(samples)}")
    return samples[0]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="farofangs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def penalty(p):
        p.add_argument("--a", type=_penalty, default=1.0, help="penalty a in (0, 2); b = 2 - a")

    def csv_flag(p):
        p.add_argument("--csv", action="store_true", help="read inputs as one-matrix CSV files")

    p = sub.add_parser("loss", help="FARO loss and alignment between two matrices")
    p.add_argument("x")
    p.add_argument("y")
    penalty(p)
    csv_flag(p)

    p = sub.add_parser("expected-loss", help="Monte Carlo expected FARO loss of a candidate")
    p.add_argument("candidate")
    p.add_argument("samples")
    penalty(p)
    csv_flag(p)

    p = sub.add_parser("estimate", help="FANGS point estimate")
    p.add_argument("samples")
    penalty(p)
    csv_flag(p)
    p.add_argument("--n-init", type=int, default=16)
    p.add_argument("--n-sweet", type=int, default=4)
    p.add_argument("--n-iter", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None, help=f"0 = all cores; default ${THREADS_ENV}")
    p.add_argument("--out", default=None, help="write the JSON result here instead of stdout")
    p.add_argument("--no-trace", action="store_true", help="omit the sweetening trace")

    for name, helptext in (("draws", "draws-method estimate"), ("sifa", "SIFA estimate")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("samples")
        penalty(p)
        csv_flag(p)
        p.add_argument("--out", default=None)
        if name == "draws":
            p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("bench", help="time exhaustive versus LAP alignment")
    p.add_argument("--k", type=_int_list, default=[4, 6, 8, 10])
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("gen-synthetic", help="perturbed copies of a truth matrix")
    p.add_argument("--truth", required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--flip-prob", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-extra", type=int, default=0, help="up to this many spurious columns per sample")
    p.add_argument("--out", required=True)
    csv_flag(p)
    return parser


def _threads(args) -> int:
    threads = args.threads if args.threads is not None else _default_threads()
    if threads < 0:
        raise UsageError("--threads must be nonnegative")
    return threads


def _run(args) -> int:
    cmd = args.command
    if cmd == "loss":
        x = _load_single(args.x, args.csv)
        y = _load_single(args.y, args.csv)
        res = faro_loss(x, y, LossParams(args.a))
        print(f"loss: {res.loss!r}")
        print(f"k_aligned: {res.k_aligned}")
        print("alignment: " + " ".join(f"{i}->{j}" for i, j in enumerate(res.alignment.perm)))
        return EXIT_OK

    if cmd == "expected-loss":
        cand = _load_single(args.candidate, args.csv)
        samples = _load_samples(args.samples, args.csv)
        print(repr(expected_loss(cand, samples, LossParams(args.a))))
        return EXIT_OK

    if cmd == "estimate":
        samples = _load_samples(args.samples, args.csv)
        try:
            cfg = SearchConfig(
                n_init=args.n_init,
                n_sweet=args.n_sweet,
                n_iter=args.n_iter,
                a=args.a,
                seed=args.seed,
                threads=_threads(args),
            )
        except ConfigError as exc:
            raise UsageError(str(exc)) from None
        res = fangs(samples, cfg)
        doc = result_document(
            "estimate",
            res.estimate,
            res.expected_loss,
            config={"a": cfg.a, "n_init": cfg.n_init, "n_sweet": cfg.n_sweet, "n_iter": cfg.n_iter, "seed": cfg.seed},
            runtime={"wall_seconds": res.seconds, "threads": cfg.threads},
            baseline_losses=res.baseline_losses,
            baseline_indices=res.baseline_indices,
            n_accepted_flips=res.n_accepted_flips,
            trace=None if args.no_trace else [[list(t) for t in chain] for chain in res.trace],
        )
        emit_result(doc, args.out)
        return EXIT_OK

    if cmd in ("draws", "sifa"):
        samples = _load_samples(args.samples, args.csv)
        p = LossParams(args.a)
        start = time.perf_counter()
        extra = {}
        if cmd == "draws":
            threads = _threads(args) or os.cpu_count() or 1
            est, loss, idx = draws_method(samples, p, threads=threads)
            extra["index"] = idx
        else:
            est = sifa_estimate(samples, p)
            loss = expected_loss(est, samples, p)
        doc = result_document(
            cmd,
            est,
            loss,
            config={"a": p.a},
            runtime={"wall_seconds": time.perf_counter() - start},
            **extra,
        )
        emit_result(doc, args.out)
        return EXIT_OK

    if cmd == "bench":
        if any(k < 1 for k in args.k):
            raise UsageError("--k values must be positive")
        try:
            rows = bench_alignment(args.k, n=args.n, reps=args.reps, seed=args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print(format_bench(rows))
        return EXIT_OK

    if cmd == "gen-synthetic":
        truth = _load_single(args.truth, args.csv)
        if args.b < 1 or not 0.0 <= args.flip_prob <= 1.0 or args.max_extra < 0:
            raise UsageError("--b must be positive, --flip-prob in [0, 1], --max-extra nonnegative")
        samples = perturbed_samples(truth, args.b, args.flip_prob, args.seed, max_extra=args.max_extra)
        write_samples(samples, args.out)
        return EXIT_OK

    raise UsageError("a subcommand is required (try --help)")


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigError, FazError, DimensionError, DataError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA

