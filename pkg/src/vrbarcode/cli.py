"""Command-line front end.

    vrbarcode [run] [FILE] [--format F] [--dim K] [--threshold T|auto]
              [--modulus P] [--stats] [--output text|csv]
    vrbarcode verify [FILE] [same options] [--cap N]

Exit codes: 0 success or match, 1 usage or input error, 2 verification
mismatch.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from dataclasses import dataclass

from .distances import FORMATS, DenseDistanceMatrix, parse_input
from .engine import Barcode, PersistenceResult, rips_barcodes
from .field import PrimeField

DEFAULT_CAP = 200_000

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage, which is reserved for mismatches here
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    path: str | None = None
    format: str = "lower-distance"
    max_dim: int = 1
    threshold: float | None = None  # None means the enclosing radius
    modulus: int = 2
    stats: bool = False
    output: str = "text"

    def validate(self) -> None:
        if self.max_dim < 0:
            raise ValueError("dimension must be nonnegative")
        if self.threshold is not None and not self.threshold >= 0:
            raise ValueError("threshold must be nonnegative")
        PrimeField(self.modulus)  # raises "modulus must be prime ..."


def format_value(x: float) -> str:
    """Shortest round-trip decimal, with integral values printed bare."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


def format_interval(birth: float, death: float) -> str:
    if math.isinf(death):
        return f" [{format_value(birth)}, )"
    return f" [{format_value(birth)},{format_value(death)})"


def render_text(result: PersistenceResult, max_dim: int) -> list[str]:
    lines = [f"distance matrix with {result.n} points, using threshold {format_value(result.threshold)}"]
    for d, intervals in result.barcode.as_dict(max_dim).items():
        lines.append(f"persistence intervals in dim {d}:")
        lines.extend(format_interval(b, x) for b, x in intervals)
    return lines


def render_csv(barcode: Barcode, max_dim: int, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["dim", "birth", "death"])
    for d, intervals in barcode.as_dict(max_dim).items():
        for b, x in intervals:
            writer.writerow([d, format_value(b), "" if math.isinf(x) else format_value(x)])


def render_stats(result: PersistenceResult, seconds: float) -> list[str]:
    names = ("total", "zero", "shortcut", "apparent", "emergent")
    lines = ["pair statistics by birth dimension:", "dim " + "".join(f"{name:>10}" for name in names)]
    for d in sorted(result.stats):
        counts = result.stats[d]
        lines.append(f"{d:>3} " + "".join(f"{getattr(counts, name):>10}" for name in names))
    lines.append(f"wall-clock time: {seconds:.3f} s")
    return lines


def load(cfg: RunConfig) -> DenseDistanceMatrix:
    if cfg.path is None or cfg.path == "-":
        text = sys.stdin.read()
    else:
        with open(cfg.path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_input(text, cfg.format)


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    cfg.validate()
    m = load(cfg)
    start = time.perf_counter()
    result = rips_barcodes(m, cfg.max_dim, cfg.threshold, cfg.modulus)
    seconds = time.perf_counter() - start
    if cfg.output == "csv":
        render_csv(result.barcode, cfg.max_dim, out)
        if cfg.stats:
            # keep the csv stream machine-readable
            print("\n".join(render_stats(result, seconds)), file=err)
    else:
        print("\n".join(render_text(result, cfg.max_dim)), file=out)
        if cfg.stats:
            print("\n".join(render_stats(result, seconds)), file=out)
    return EXIT_OK


def complex_size(n: int, max_dim: int) -> int:
    """Simplices of dimension at most max_dim + 1 on n vertices."""
    return sum(math.comb(n, k) for k in range(1, max_dim + 3))


def first_discrepancy(engine: Barcode, oracle: Barcode, max_dim: int) -> str | None:
    for d in range(max_dim + 1):
        a, b = engine[d], oracle[d]
        if a == b:
            continue
        for x, y in zip(a, b):
            if x != y:
                return f"dim {d}: engine{format_interval(*x)} vs oracle{format_interval(*y)}"
        longer, name = (a, "engine") if len(a) > len(b) else (b, "oracle")
        extra = longer[min(len(a), len(b))]
        return f"dim {d}: only {name} has{format_interval(*extra)}"
    return None


def verify(cfg: RunConfig, cap: int = DEFAULT_CAP, corrupt: bool = False, out=None) -> int:
    from .oracle import oracle_barcode

    out = out or sys.stdout
    cfg.validate()
    m = load(cfg)
    size = complex_size(m.n, cfg.max_dim)
    if size > cap:
        raise ValueError(f"{size} simplices exceed the oracle cap of {cap}; lower --dim or raise --cap")
    result = rips_barcodes(m, cfg.max_dim, cfg.threshold, cfg.modulus)
    engine = result.barcode
    if corrupt:
        # negative control: shift one interval so the comparison must fail
        engine = Barcode({d: list(v) for d, v in engine.intervals.items()})
        b, x = engine.intervals[0][0]
        engine.intervals[0][0] = (b, x + 1.0 if math.isfinite(x) else 1.0)
    oracle = oracle_barcode(m.rows, cfg.max_dim, result.threshold, cfg.modulus)
    problem = first_discrepancy(engine, oracle, cfg.max_dim)
    if problem is not None:
        print(f"mismatch: {problem}", file=out)
        return EXIT_MISMATCH
    count = sum(len(engine[d]) for d in range(cfg.max_dim + 1))
    print(f"barcodes match: {count} intervals in dims 0..{cfg.max_dim}, {m.n} points", file=out)
    return EXIT_OK


def _threshold(text: str) -> float | None:
    if text == "auto":
        return None
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'auto', got {text!r}") from None


def build_parser(verify_mode: bool) -> argparse.ArgumentParser:
    prog = "vrbarcode verify" if verify_mode else "vrbarcode"
    parser = _Parser(prog=prog, description="Vietoris-Rips persistence barcodes.")
    parser.add_argument("path", nargs="?", help="input file (default: standard input)")
    parser.add_argument("--format", choices=FORMATS, default="lower-distance")
    parser.add_argument("--dim", type=int, default=1, help="maximum homology dimension")
    parser.add_argument("--threshold", type=_threshold, default=None, help="diameter cutoff or 'auto'")
    parser.add_argument("--modulus", type=int, default=2, help="prime coefficient field")
    parser.add_argument("--stats", action="store_true", help="append pair counts and timing")
    parser.add_argument("--output", choices=("text", "csv"), default="text")
    if verify_mode:
        parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest complex the oracle may build")
        parser.add_argument("--corrupt-interval", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    verify_mode = bool(argv) and argv[0] == "verify"
    if argv and argv[0] in ("run", "verify"):
        argv = argv[1:]
    try:
        args = build_parser(verify_mode).parse_args(argv)
        cfg = RunConfig(args.path, args.format, args.dim, args.threshold, args.modulus, args.stats, args.output)
        if verify_mode:
            return verify(cfg, args.cap, args.corrupt_interval)
        return run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
    except (ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
