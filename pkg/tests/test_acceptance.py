"""Acceptance suite: end-to-end gates for the modem, one printed line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-gate lines.
The statistical gates use frozen seeds, so every run is reproducible.
"""

import dataclasses
import math

import numpy as np
import pytest

from sefdm import (
    QAM4,
    RandomSource,
    SefdmConfig,
    add_awgn,
    bits_to_symbols,
    db_penalty,
    get_alphabet,
    gravity,
    interference_continuous,
    interference_discrete,
    ml_decode,
    modulate_direct,
    modulate_interleaved,
    slice_symbols,
    stripe_decode,
    symbols_to_bits,
    theoretical_ber,
    truncate,
)
from sefdm.channel import NoiseSpec
from sefdm.cli import CSV_HEADER, emit_csv
from sefdm.harness import SweepSpec, ber_sweep


def _report(number: int, name: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number:2d} [{status}] {name}" + (f" -- {detail}" if detail else ""))
    assert ok, f"criterion {number} ({name}): {detail}"


def test_01_interleaved_equals_direct():
    gen = RandomSource(101).generator()
    alphas = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]
    worst = 0.0
    for _ in range(200):
        n = int(gen.integers(4, 129))
        b, c = alphas[gen.integers(0, len(alphas))]
        n_pad = c * math.ceil(n / c)
        m = n_pad if gen.integers(0, 2) == 0 else 4 * n_pad
        cfg = SefdmConfig(n, m, b, c, QAM4)
        s = bits_to_symbols(gen.integers(0, 2, size=2 * n), QAM4)
        u_direct = modulate_direct(s, cfg)
        u_inter = modulate_interleaved(s, cfg)
        worst = max(worst, float(np.max(np.abs(u_inter - u_direct)) / np.max(np.abs(u_direct))))
    _report(1, "interleaved == direct over 200 random configs", worst <= 1e-9,
            f"worst relative error {worst:.2e}")


@pytest.mark.parametrize("alphabet_name", ["bpsk", "qam4"])
def test_02_awgn_calibration(alphabet_name):
    alphabet = get_alphabet(alphabet_name)
    bits_per_block = 64 * alphabet.bits_per_symbol
    spec = SweepSpec(
        carriers=64, samples=64, alphas=((1, 1),), ebn0_db=(0.0, 4.0, 8.0),
        alphabet=alphabet_name, decoder="ofdm", min_bit_errors=10**9,
        max_symbol_periods=math.ceil(1e6 / bits_per_block), seed=2,
    )
    details = []
    ok = True
    for record in ber_sweep(spec):
        theory = theoretical_ber(record.ebn0_db, alphabet)
        inside = record.ci_low <= theory <= record.ci_high
        ok = ok and inside and record.bits >= 10**6
        details.append(f"{record.ebn0_db:g}dB ber={record.ber:.3e} theory={theory:.3e}")
    _report(2, f"{alphabet_name} ofdm baseline matches Q(sqrt(2 rho))", ok, "; ".join(details))


def test_03_oversampled_stripe_penalty():
    spec = SweepSpec(
        carriers=16, samples=256, alphas=((5, 6),), ebn0_db=(5.0, 6.0, 7.0, 8.0),
        alphabet="qam4", decoder="stripe", iterations=20, min_bit_errors=10**9,
        max_symbol_periods=31250, seed=11,
    )
    penalty = db_penalty(ber_sweep(spec), 1e-3)
    _report(3, "alpha=5/6 M=16N stripe penalty at 1e-3", penalty <= 0.5,
            f"penalty {penalty:.3f} dB (limit 0.5)")


def test_04_critically_sampled_stripe_penalty():
    spec = SweepSpec(
        carriers=16, samples=16, alphas=((5, 6),), ebn0_db=(7.0, 8.0, 9.0, 10.0, 11.0),
        alphabet="qam4", decoder="stripe", iterations=20, min_bit_errors=10**9,
        max_symbol_periods=62500, seed=12,
    )
    penalty = db_penalty(ber_sweep(spec), 1e-4)
    _report(4, "alpha=5/6 M=N stripe penalty at 1e-4", 0.5 <= penalty <= 2.0,
            f"penalty {penalty:.3f} dB (band [0.5, 2.0])")


def test_05_alpha_four_fifths_penalty():
    # KNOWN RED: at N=16, M=N, alpha=4/5 the decoder has a noiseless
    # convergence floor near 1e-4 BER (symbol error rate ~1.4e-4 at J=20,
    # decaying only ~1/J), so the measured curve cannot cross 1e-4 within
    # 2.5 dB of theory. Kept as stated rather than loosened.
    spec = SweepSpec(
        carriers=16, samples=16, alphas=((4, 5),), ebn0_db=(8.0, 9.0, 10.0, 11.0, 12.0, 13.0),
        alphabet="qam4", decoder="stripe", iterations=20, min_bit_errors=10**9,
        max_symbol_periods=62500, seed=13,
    )
    records = ber_sweep(spec)
    try:
        penalty = db_penalty(records, 1e-4)
        detail = f"penalty {penalty:.3f} dB (band [0.5, 2.5])"
        ok = 0.5 <= penalty <= 2.5
    except ValueError:
        floor = min(r.ber for r in records)
        detail = f"curve floors at ber {floor:.2e}, never reaches 1e-4 (band [0.5, 2.5])"
        ok = False
    _report(5, "alpha=4/5 M=N stripe penalty at 1e-4", ok, detail)


def test_06_bpsk_half_alpha_penalty():
    spec = SweepSpec(
        carriers=64, samples=64, alphas=((1, 2),), ebn0_db=(5.0, 6.0, 7.0, 8.0),
        alphabet="bpsk", decoder="stripe", iterations=20, min_bit_errors=10**9,
        max_symbol_periods=15625, seed=14,
    )
    penalty = db_penalty(ber_sweep(spec), 1e-3)
    _report(6, "bpsk alpha=1/2 stripe penalty at 1e-3", penalty <= 0.3,
            f"penalty {penalty:.3f} dB (limit 0.3)")


def test_07_ml_alpha_knee():
    spec = SweepSpec(
        carriers=4, samples=128, alphas=((1, 1), (3, 4), (3, 5)), ebn0_db=(8.0,),
        alphabet="qam4", decoder="ml", min_bit_errors=10**9,
        max_symbol_periods=250000, seed=7,
    )
    by_alpha = {(r.alpha_num, r.alpha_den): r for r in ber_sweep(spec)}
    ref, mid, low = by_alpha[(1, 1)], by_alpha[(3, 4)], by_alpha[(3, 5)]
    overlap = mid.ci_low <= ref.ci_high and ref.ci_low <= mid.ci_high
    separated = low.ci_low > ref.ci_high and low.ci_low > mid.ci_high
    _report(7, "ML knee: alpha=3/4 matches alpha=1, alpha=3/5 is worse",
            overlap and separated,
            f"ber(1)={ref.ber:.2e} ber(3/4)={mid.ber:.2e} ber(3/5)={low.ber:.2e}")


def test_08_ml_dominates_stripe():
    cfg = SefdmConfig(4, 20, 4, 5, QAM4)
    gen = RandomSource(8).generator()
    blocks = 10_000
    bits = gen.integers(0, 2, size=(blocks, 8))
    sent = bits_to_symbols(bits, QAM4)
    received = add_awgn(
        modulate_interleaved(sent, cfg), NoiseSpec.from_config(7.0, cfg), gen
    )
    ml_errors = int((symbols_to_bits(ml_decode(received, cfg), QAM4) != bits).sum())
    stripe_errors = int((symbols_to_bits(stripe_decode(received, cfg), QAM4) != bits).sum())
    bound = stripe_errors + 2 * math.sqrt(stripe_errors)
    _report(8, "ML errors <= stripe errors + 2 sqrt(stripe)", ml_errors <= bound,
            f"ml={ml_errors} stripe={stripe_errors} bound={bound:.1f}")


def test_09a_discrete_interference_converges():
    # KNOWN RED for |n-m| >= 2: the discrete formula's rotation factor
    # (M-1)/M leaves a residual phase of pi*(n-m)*alpha/M, i.e. up to
    # 3.2e-3 relative deviation at M=4096 -- above the 1e-3 gate, which
    # only the magnitude magnification factor satisfies.
    worst = 0.0
    for delta in range(1, 6):
        cont = interference_continuous(delta, 0, 5 / 6)
        disc = interference_discrete(delta, 0, 5 / 6, 4096)
        worst = max(worst, abs(disc - cont) / abs(cont))
    _report(9, "discrete interference within 1e-3 of continuous at M=4096",
            worst <= 1e-3, f"worst relative deviation {worst:.2e}")


def test_09b_discrete_interference_magnified():
    ok = all(
        abs(interference_discrete(delta, 0, 5 / 6, m))
        >= abs(interference_continuous(delta, 0, 5 / 6))
        for m in (16, 64, 256)
        for delta in range(1, 6)
    )
    _report(9, "discrete interference magnitude >= continuous", ok)


def test_10_property_suite(tmp_path):
    # noiseless stripe recovery over 1000 blocks
    cfg = SefdmConfig(12, 12, 5, 6, QAM4)
    gen = RandomSource(10).generator()
    bits = gen.integers(0, 2, size=(1000, 24))
    sent = bits_to_symbols(bits, QAM4)
    recovered = stripe_decode(modulate_interleaved(sent, cfg), cfg)
    noiseless_ok = bool(np.array_equal(recovered, sent))

    # gravity / truncate / slice unit anchors
    units_ok = (
        gravity(0.5 + 0j, get_alphabet("bpsk")) == pytest.approx(0.8 + 0j)
        and gravity(1 + 1j, QAM4) == 1 + 1j
        and truncate(1.3 - 0.4j, QAM4) == pytest.approx(1.0 - 0.4j)
        and slice_symbols(0.2 + 0.9j, QAM4) == 1 + 1j
        and slice_symbols(0j, QAM4) == QAM4.points[0]
    )

    # CSV determinism modulo the timing column
    spec = SweepSpec(
        carriers=8, samples=8, alphas=((1, 2),), ebn0_db=(3.0, 5.0), alphabet="qam4",
        decoder="stripe", min_bit_errors=25, max_symbol_periods=500, seed=77,
    )
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(ber_sweep(spec), p1)
    emit_csv(ber_sweep(spec), p2)
    strip = lambda p: [l.rsplit(",", 1)[0] for l in p.read_text().splitlines()]
    csv_ok = strip(p1) == strip(p2) and p1.read_text().splitlines()[0] == CSV_HEADER

    # parallel-vs-serial bit identity
    serial = [dataclasses.replace(r, wall_time_s=0.0) for r in ber_sweep(spec, workers=1)]
    parallel = [dataclasses.replace(r, wall_time_s=0.0) for r in ber_sweep(spec, workers=2)]
    parallel_ok = serial == parallel

    _report(10, "property suite (noiseless recovery, units, CSV, parallel identity)",
            noiseless_ok and units_ok and csv_ok and parallel_ok,
            f"noiseless={noiseless_ok} units={units_ok} csv={csv_ok} parallel={parallel_ok}")
