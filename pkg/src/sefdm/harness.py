"""Monte Carlo BER measurement with binomial confidence intervals.

A sweep point is one (alpha, Eb/N0) pair. Each point owns a Philox stream
derived from the master seed and the point's grid index, so results are
bit-identical no matter how points are scheduled across workers.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc, erfcinv

from .channel import NoiseSpec, add_awgn
from .core import (
    Alphabet,
    DomainError,
    RandomSource,
    SefdmConfig,
    _as_generator,
    bits_to_symbols,
    get_alphabet,
    symbols_to_bits,
)
from .detect import StripeParams, check_ml_guard, ml_decode, slice_symbols, stripe_decode
from .txmod import modulate_interleaved

DECODERS = ("stripe", "ml", "ofdm")

# Symbol periods simulated per RNG draw; fixed so results do not depend on
# how a point's loop is chunked.
_BATCH_PERIODS = 1024


def _canonical_decoder(decoder: str) -> str:
    name = decoder.lower()
    if name == "ofdm-baseline":
        name = "ofdm"
    if name not in DECODERS:
        raise DomainError(f"unknown decoder {decoder!r}")
    return name


@dataclass(frozen=True)
class SweepSpec:
    """One BER experiment: a config template swept over alphas and Eb/N0 points.

    The stop rule per point is min_bit_errors accumulated or max_symbol_periods
    simulated, whichever comes first.
    """

    carriers: int
    samples: int
    alphas: tuple[tuple[int, int], ...]
    ebn0_db: tuple[float, ...]
    alphabet: str = "qam4"
    decoder: str = "stripe"
    iterations: int = 20
    min_bit_errors: int = 100
    max_symbol_periods: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        if self.min_bit_errors < 1 or self.max_symbol_periods < 1:
            raise ValueError("stop rule must be positive")
        decoder = _canonical_decoder(self.decoder)
        for b, c in self.alphas:
            cfg = self.config(b, c)
            if decoder == "ml":
                check_ml_guard(cfg)

    def config(self, alpha_num: int, alpha_den: int) -> SefdmConfig:
        return SefdmConfig(
            self.carriers, self.samples, alpha_num, alpha_den, get_alphabet(self.alphabet)
        )


@dataclass(frozen=True)
class BerRecord:
    """Result of one sweep point."""

    alpha_num: int
    alpha_den: int
    carriers: int
    samples: int
    alphabet: str
    decoder: str
    iterations: int
    ebn0_db: float
    bits: int
    errors: int
    ber: float
    ci_low: float
    ci_high: float
    seed: int
    wall_time_s: float


def theoretical_ber(ebn0_db: float, alphabet: Alphabet) -> float:
    """Matched-filter OFDM reference, Q(sqrt(2*Eb/N0)).

    Holds for BPSK and for Gray-coded 4-QAM (per-bit error equal at equal
    Eb/N0); other alphabets are rejected.
    """
    if alphabet.name not in ("bpsk", "qam4"):
        raise DomainError(f"no closed-form reference for alphabet {alphabet.name!r}")
    if math.isinf(ebn0_db) and ebn0_db > 0:
        return 0.0
    rho = 10.0 ** (ebn0_db / 10.0)
    return float(0.5 * erfc(math.sqrt(rho)))


def theory_ebn0_db(target_ber: float) -> float:
    """Eb/N0 (dB) at which the theoretical BER equals target_ber."""
    if not 0.0 < target_ber < 0.5:
        raise DomainError("target BER must be in (0, 0.5)")
    rho = float(erfcinv(2.0 * target_ber)) ** 2
    return 10.0 * math.log10(rho)


def confidence_interval(errors: int, bits: int) -> tuple[float, float]:
    """95% binomial interval: normal approximation, rule of three at zero errors."""
    if bits < 1 or not 0 <= errors <= bits:
        raise DomainError("need bits >= 1 and 0 <= errors <= bits")
    if errors == 0:
        return 0.0, min(1.0, 3.0 / bits)
    p = errors / bits
    half = 1.96 * math.sqrt(p * (1.0 - p) / bits)
    return max(0.0, p - half), min(1.0, p + half)


def run_block(cfg: SefdmConfig, ebn0_db: float, decoder: str, rng, blocks: int = 1):
    """Simulate `blocks` symbol periods; returns (bits sent, bit errors).

    Pipeline: random bits -> symbols -> interleaved modulation -> AWGN ->
    decode -> bits; deterministic given the rng stream.
    """
    decoder = _canonical_decoder(decoder)
    gen = _as_generator(rng)
    bps = cfg.alphabet.bits_per_symbol
    bits = gen.integers(0, 2, size=(blocks, cfg.n_carriers * bps))
    symbols = bits_to_symbols(bits, cfg.alphabet)
    received = add_awgn(
        modulate_interleaved(symbols, cfg), NoiseSpec.from_config(ebn0_db, cfg), gen
    )
    if decoder == "stripe":
        decoded = stripe_decode(received, cfg, StripeParams())
    elif decoder == "ml":
        decoded = ml_decode(received, cfg)
    else:
        # ofdm baseline: plain forward-DFT demodulation, valid at alpha = 1.
        spectrum = np.fft.fft(received, axis=-1)[..., : cfg.n_carriers] / cfg.n_samples
        decoded = slice_symbols(spectrum, cfg.alphabet)
    decoded_bits = symbols_to_bits(decoded, cfg.alphabet)
    return bits.size, int((decoded_bits != bits).sum())


def _run_point(spec: SweepSpec, alpha_index: int, ebn0_index: int) -> BerRecord:
    alpha_num, alpha_den = spec.alphas[alpha_index]
    ebn0 = spec.ebn0_db[ebn0_index]
    cfg = spec.config(alpha_num, alpha_den)
    stream = alpha_index * len(spec.ebn0_db) + ebn0_index
    gen = RandomSource(spec.seed, stream).generator()
    decoder = _canonical_decoder(spec.decoder)
    params = StripeParams(spec.iterations)

    start = time.perf_counter()
    bits_total = 0
    errors_total = 0
    periods_done = 0
    while periods_done < spec.max_symbol_periods and errors_total < spec.min_bit_errors:
        batch = min(_BATCH_PERIODS, spec.max_symbol_periods - periods_done)
        if decoder == "stripe":
            bits, errs = _run_block_with_params(cfg, ebn0, gen, batch, params)
        else:
            bits, errs = run_block(cfg, ebn0, decoder, gen, blocks=batch)
        bits_total += bits
        errors_total += errs
        periods_done += batch
    wall = time.perf_counter() - start

    ber = errors_total / bits_total
    ci_low, ci_high = confidence_interval(errors_total, bits_total)
    return BerRecord(
        alpha_num=alpha_num,
        alpha_den=alpha_den,
        carriers=spec.carriers,
        samples=spec.samples,
        alphabet=get_alphabet(spec.alphabet).name,
        decoder=decoder,
        iterations=spec.iterations,
        ebn0_db=ebn0,
        bits=bits_total,
        errors=errors_total,
        ber=ber,
        ci_low=ci_low,
        ci_high=ci_high,
        seed=spec.seed,
        wall_time_s=wall,
    )


def _run_block_with_params(cfg, ebn0, gen, blocks, params: StripeParams):
    bps = cfg.alphabet.bits_per_symbol
    bits = gen.integers(0, 2, size=(blocks, cfg.n_carriers * bps))
    symbols = bits_to_symbols(bits, cfg.alphabet)
    received = add_awgn(
        modulate_interleaved(symbols, cfg), NoiseSpec.from_config(ebn0, cfg), gen
    )
    decoded = stripe_decode(received, cfg, params)
    decoded_bits = symbols_to_bits(decoded, cfg.alphabet)
    return bits.size, int((decoded_bits != bits).sum())


def _run_point_args(args) -> BerRecord:
    return _run_point(*args)


def ber_sweep(spec: SweepSpec, workers: int = 1) -> list[BerRecord]:
    """Run every (alpha, Eb/N0) point of the sweep.

    Records come back in grid order (alphas in spec order, Eb/N0 in spec
    order) and are bit-identical for any worker count.
    """
    grid = [
        (spec, ai, ei)
        for ai in range(len(spec.alphas))
        for ei in range(len(spec.ebn0_db))
    ]
    if workers <= 1:
        return [_run_point_args(args) for args in grid]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_point_args, grid))


def db_penalty(records: list[BerRecord], target_ber: float) -> float:
    """Horizontal gap (dB) between a measured BER curve and the theory curve.

    The measured Eb/N0 at target_ber is found by log-linear interpolation
    between the bracketing sweep points; the theory value comes from
    theory_ebn0_db. Raises if the curve does not bracket the target.
    """
    pts = sorted(
        ((r.ebn0_db, r.ber) for r in records if r.ber > 0), key=lambda t: t[0]
    )
    for (db0, ber0), (db1, ber1) in zip(pts, pts[1:]):
        if ber0 >= target_ber >= ber1 and ber0 > ber1:
            frac = (math.log10(target_ber) - math.log10(ber0)) / (
                math.log10(ber1) - math.log10(ber0)
            )
            measured_db = db0 + frac * (db1 - db0)
            return measured_db - theory_ebn0_db(target_ber)
    raise ValueError(f"measured curve does not bracket BER {target_ber}")
