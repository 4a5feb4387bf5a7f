"""Command-line experiment runner: parse a sweep, run it, emit CSV and/or SVG.

Example (oversampled 4-QAM sweep):

    sefdm --carriers 16 --oversample 16 --alpha 5/6 --alphabet qam4 \\
          --decoder stripe --ebn0 0:12:2 --out results --format both
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .core import CapacityError, get_alphabet
from .harness import BerRecord, SweepSpec, ber_sweep, theoretical_ber

CSV_HEADER = (
    "alpha_num,alpha_den,carriers,samples,alphabet,decoder,iterations,"
    "ebn0_db,bits,errors,ber,ci_low,ci_high,seed,wall_time_s"
)


@dataclass(frozen=True)
class CliConfig:
    spec: SweepSpec
    out: str
    fmt: str


class UsageError(Exception):
    pass


def _parse_alpha(text: str) -> tuple[int, int]:
    try:
        num, den = text.split("/")
        b, c = int(num), int(den)
    except ValueError:
        raise UsageError(f"malformed alpha {text!r}; expected B/C") from None
    if b < 1 or c < 1 or b > c:
        raise UsageError(f"alpha {text!r} must satisfy 1 <= B <= C")
    if math.gcd(b, c) != 1:
        raise UsageError(f"alpha {text!r} must be in lowest terms")
    return b, c


def _parse_ebn0_range(text: str) -> tuple[float, ...]:
    try:
        start, stop, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"malformed --ebn0 {text!r}; expected start:stop:step") from None
    if step <= 0 or stop < start:
        raise UsageError("--ebn0 requires step > 0 and stop >= start")
    points = []
    value = start
    while value <= stop + 1e-9:
        points.append(round(value, 9))
        value += step
    return tuple(points)


def _parse_ebn0_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"malformed --ebn0-list {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sefdm", description="SEFDM Monte Carlo BER sweep runner"
    )
    parser.add_argument("--carriers", type=int, required=True, metavar="N")
    samples = parser.add_mutually_exclusive_group()
    samples.add_argument("--samples", type=int, metavar="M")
    samples.add_argument(
        "--oversample", type=int, metavar="F", help="samples per carrier, M = F*N"
    )
    parser.add_argument(
        "--alpha", action="append", required=True, metavar="B/C",
        help="compression ratio; repeat for one curve per alpha",
    )
    parser.add_argument("--alphabet", choices=("bpsk", "qam4"), default="qam4")
    ebn0 = parser.add_mutually_exclusive_group(required=True)
    ebn0.add_argument("--ebn0", metavar="START:STOP:STEP", help="Eb/N0 grid in dB")
    ebn0.add_argument("--ebn0-list", metavar="V1,V2,...", help="explicit Eb/N0 points in dB")
    parser.add_argument("--decoder", choices=("stripe", "ml", "ofdm"), default="stripe")
    parser.add_argument("--iterations", type=int, default=20, metavar="J")
    parser.add_argument("--min-errors", type=int, default=100, metavar="E")
    parser.add_argument("--max-periods", type=int, default=1_000_000, metavar="P")
    parser.add_argument("--seed", type=int, default=0, metavar="S")
    parser.add_argument("--out", default="sefdm_results", metavar="PATH")
    parser.add_argument("--format", choices=("csv", "svg", "both"), default="csv")
    return parser


def parse_args(argv) -> CliConfig:
    """Parse and validate argv into a CliConfig; raises UsageError or SystemExit."""
    args = _build_parser().parse_args(argv)
    if args.carriers < 1:
        raise UsageError("--carriers must be positive")
    if args.oversample is not None:
        if args.oversample < 1:
            raise UsageError("--oversample must be positive")
        samples = args.oversample * args.carriers
    elif args.samples is not None:
        samples = args.samples
    else:
        samples = args.carriers
    if samples < args.carriers:
        raise UsageError("--samples must be at least --carriers")

    alphas = tuple(_parse_alpha(a) for a in args.alpha)
    ebn0 = _parse_ebn0_range(args.ebn0) if args.ebn0 else _parse_ebn0_list(args.ebn0_list)

    try:
        spec = SweepSpec(
            carriers=args.carriers,
            samples=samples,
            alphas=alphas,
            ebn0_db=ebn0,
            alphabet=args.alphabet,
            decoder=args.decoder,
            iterations=args.iterations,
            min_bit_errors=args.min_errors,
            max_symbol_periods=args.max_periods,
            seed=args.seed,
        )
    except (ValueError, CapacityError) as exc:
        raise UsageError(str(exc)) from None
    return CliConfig(spec=spec, out=args.out, fmt=args.format)


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _sorted_records(records: list[BerRecord]) -> list[BerRecord]:
    return sorted(records, key=lambda r: (r.alpha_num / r.alpha_den, r.ebn0_db))


def emit_csv(records: list[BerRecord], path) -> None:
    """Write records as UTF-8 CSV with the fixed header, sorted by (alpha, Eb/N0)."""
    if not records:
        raise ValueError("no records to write")
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER.split(","))
        for r in _sorted_records(records):
            writer.writerow(
                [
                    r.alpha_num, r.alpha_den, r.carriers, r.samples, r.alphabet,
                    r.decoder, r.iterations, _fmt(r.ebn0_db), r.bits, r.errors,
                    _fmt(r.ber), _fmt(r.ci_low), _fmt(r.ci_high), r.seed,
                    _fmt(r.wall_time_s),
                ]
            )


def read_csv(path) -> list[BerRecord]:
    """Parse a CSV written by emit_csv back into records."""
    with open(path, encoding="utf-8", newline="") as handle:
        rows = list(csv.DictReader(handle))
    return [
        BerRecord(
            alpha_num=int(row["alpha_num"]),
            alpha_den=int(row["alpha_den"]),
            carriers=int(row["carriers"]),
            samples=int(row["samples"]),
            alphabet=row["alphabet"],
            decoder=row["decoder"],
            iterations=int(row["iterations"]),
            ebn0_db=float(row["ebn0_db"]),
            bits=int(row["bits"]),
            errors=int(row["errors"]),
            ber=float(row["ber"]),
            ci_low=float(row["ci_low"]),
            ci_high=float(row["ci_high"]),
            seed=int(row["seed"]),
            wall_time_s=float(row["wall_time_s"]),
        )
        for row in rows
    ]


# --- SVG plotting (self-contained, no external resources) ---

_WIDTH, _HEIGHT = 720, 520
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 20, 20, 50
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


def emit_plot(records: list[BerRecord], path) -> None:
    """Render BER vs Eb/N0 (semilog-y) as a standalone SVG.

    One polyline per (decoder, alpha) curve plus the theoretical reference;
    zero-error points are left out of the polylines and marked with crosses
    on the lower axis.
    """
    if not records:
        raise ValueError("no records to plot")
    records = _sorted_records(records)
    x_vals = [r.ebn0_db for r in records]
    x_min, x_max = min(x_vals), max(x_vals)
    if x_max == x_min:
        x_max = x_min + 1.0
    positive = [r.ber for r in records if r.ber > 0]
    alphabet = get_alphabet(records[0].alphabet)
    theory = [
        (db, theoretical_ber(db, alphabet))
        for db in _linspace(x_min, x_max, 97)
    ]
    positive += [t for _, t in theory if t > 0]
    y_floor = min(positive) if positive else 1e-6
    log_min = math.floor(math.log10(max(y_floor, 1e-12)))
    log_max = 0

    def sx(db: float) -> float:
        frac = (db - x_min) / (x_max - x_min)
        return _MARGIN_L + frac * (_WIDTH - _MARGIN_L - _MARGIN_R)

    def sy(ber: float) -> float:
        logv = min(max(math.log10(ber), log_min), log_max)
        frac = (logv - log_min) / (log_max - log_min)
        return _HEIGHT - _MARGIN_B - frac * (_HEIGHT - _MARGIN_T - _MARGIN_B)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
    ]
    # axes
    x0, y0 = _MARGIN_L, _HEIGHT - _MARGIN_B
    parts.append(
        f'<line x1="{x0}" y1="{y0}" x2="{_WIDTH - _MARGIN_R}" y2="{y0}" stroke="black"/>'
    )
    parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{_MARGIN_T}" stroke="black"/>')
    for tick in _linspace(x_min, x_max, 7):
        px = sx(tick)
        parts.append(f'<line x1="{px:.1f}" y1="{y0}" x2="{px:.1f}" y2="{y0 + 5}" stroke="black"/>')
        parts.append(
            f'<text x="{px:.1f}" y="{y0 + 20}" font-size="11" text-anchor="middle">{tick:g}</text>'
        )
    for decade in range(log_min, log_max + 1):
        py = sy(10.0**decade)
        parts.append(f'<line x1="{x0 - 5}" y1="{py:.1f}" x2="{x0}" y2="{py:.1f}" stroke="black"/>')
        parts.append(
            f'<text x="{x0 - 8}" y="{py + 4:.1f}" font-size="11" text-anchor="end">1e{decade}</text>'
        )
    parts.append(
        f'<text x="{(_WIDTH + _MARGIN_L - _MARGIN_R) / 2:.0f}" y="{_HEIGHT - 12}" '
        f'font-size="13" text-anchor="middle">Eb/N0 (dB)</text>'
    )
    parts.append(
        f'<text x="18" y="{(_HEIGHT - _MARGIN_B + _MARGIN_T) / 2:.0f}" font-size="13" '
        f'text-anchor="middle" transform="rotate(-90 18 {(_HEIGHT - _MARGIN_B + _MARGIN_T) / 2:.0f})">BER</text>'
    )

    # theory reference
    theory_pts = " ".join(f"{sx(db):.2f},{sy(t):.2f}" for db, t in theory if t > 0)
    if theory_pts:
        parts.append(
            f'<polyline points="{theory_pts}" fill="none" stroke="black" '
            f'stroke-dasharray="5,4" stroke-width="1.2"/>'
        )
        parts.append(
            f'<text x="{_WIDTH - _MARGIN_R - 6}" y="{_MARGIN_T + 14}" font-size="11" '
            f'text-anchor="end">theory ({alphabet.name})</text>'
        )

    curves: dict[tuple[str, int, int], list[BerRecord]] = {}
    for r in records:
        curves.setdefault((r.decoder, r.alpha_num, r.alpha_den), []).append(r)
    for index, (key, pts) in enumerate(sorted(curves.items())):
        decoder, b, c = key
        color = _COLORS[index % len(_COLORS)]
        line = " ".join(f"{sx(r.ebn0_db):.2f},{sy(r.ber):.2f}" for r in pts if r.ber > 0)
        if line:
            parts.append(
                f'<polyline points="{line}" fill="none" stroke="{color}" stroke-width="1.6"/>'
            )
        for r in pts:
            if r.ber > 0:
                parts.append(
                    f'<circle cx="{sx(r.ebn0_db):.2f}" cy="{sy(r.ber):.2f}" r="3" fill="{color}"/>'
                )
            else:
                # zero-error point: cross on the lower edge, outside the polyline
                px, py = sx(r.ebn0_db), y0 - 6
                parts.append(
                    f'<path d="M {px - 4:.2f} {py - 4:.2f} L {px + 4:.2f} {py + 4:.2f} '
                    f'M {px - 4:.2f} {py + 4:.2f} L {px + 4:.2f} {py - 4:.2f}" '
                    f'stroke="{color}" stroke-width="1.6"/>'
                )
        parts.append(
            f'<text x="{_MARGIN_L + 8}" y="{_MARGIN_T + 14 + 14 * index}" font-size="11" '
            f'fill="{color}">{decoder} alpha={b}/{c}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts), encoding="utf-8")


def _linspace(lo: float, hi: float, count: int) -> list[float]:
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def main(argv=None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"sefdm: error: {exc}", file=sys.stderr)
        return 2

    try:
        records = ber_sweep(config.spec)
    except Exception as exc:  # a failing point aborts the run
        print(f"sefdm: simulation failed: {exc}", file=sys.stderr)
        return 1

    out = Path(config.out)
    if config.fmt == "csv":
        emit_csv(records, out)
    elif config.fmt == "svg":
        emit_plot(records, out)
    else:
        base = out.with_suffix("") if out.suffix else out
        emit_csv(records, base.with_suffix(".csv"))
        emit_plot(records, base.with_suffix(".svg"))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
