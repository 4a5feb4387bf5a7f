"""Receivers: per-branch OFDM demodulation, the iterative stripe decoder,
and an exhaustive maximum-likelihood oracle.

The stripe decoder treats the SEFDM signal as c interleaved OFDM systems.
Each sweep cancels the re-modulated estimate of the other c-1 systems,
demodulates the remaining one, truncates the soft estimates to the
constellation bounding box, then anneals the whole estimate vector toward the
constellation with an inverse-square-distance "gravity" pull whose weight
ramps linearly from 1/J to 1 over the J sweeps. The final vector is sliced to
hard symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Alphabet, CapacityError, DimensionError, SefdmConfig
from .txmod import (
    SubsystemSymbols,
    _branch_layout,
    _dims,
    carrier_matrix,
    modulate_interleaved,
    rotation_vector,
)

# Squared-distance threshold under which a soft estimate counts as exactly on
# a constellation point (distance < 1e-12).
_EXACT_HIT_SQ = 1e-24

# Enumeration guard for the exhaustive decoder.
_ML_GUARD = 2**20

# Candidate signal tables are cached only below this entry count.
_ML_CACHE_LIMIT = 2**23


@dataclass(frozen=True)
class StripeParams:
    """Iteration count for the stripe decoder; 20 is a reasonable default."""

    iterations: int = 20

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("need at least one iteration")


def demod_subsystem(signal, k: int, cfg: SefdmConfig) -> SubsystemSymbols:
    """Recover branch-k symbols: derotate by conj(r(k)), forward DFT scaled 1/M.

    Exact inverse of modulate_subsystem on a clean single-branch signal.
    """
    _, m_samp, _, c, length = _dims(cfg)
    if not 0 <= k < c:
        raise DimensionError(f"subsystem index {k} out of range [0, {c})")
    signal = np.asarray(signal, dtype=complex)
    if signal.shape != (m_samp,):
        raise DimensionError(f"expected {m_samp} samples, got {signal.shape}")
    spectrum = np.fft.fft(signal * np.conj(rotation_vector(k, cfg))) / m_samp
    bins, _ = _branch_layout(k, cfg)
    values = np.zeros(length, dtype=complex)
    values[bins] = spectrum[bins]
    return SubsystemSymbols(k, values)


def residual(r, est, k: int, cfg: SefdmConfig) -> np.ndarray:
    """Received signal minus the re-modulated estimate of every branch but k.

    Implemented by zeroing the subsystem-k entries of the estimate and feeding
    the result through the transmitter.
    """
    est = np.asarray(est, dtype=complex)
    others = est.copy()
    others[k :: cfg.alpha_den] = 0
    return np.asarray(r, dtype=complex) - modulate_interleaved(others, cfg)


def gravity(est, alphabet: Alphabet):
    """Inverse-square-distance weighted centroid of the constellation points.

    An estimate within 1e-12 of a point returns that point exactly. Accepts a
    scalar or an array of any shape.
    """
    e = np.asarray(est, dtype=complex)
    points = alphabet.points_array()
    d2 = np.abs(e[..., None] - points) ** 2
    hit = d2 < _EXACT_HIT_SQ
    with np.errstate(divide="ignore"):
        w = 1.0 / d2
    # Exact hits would divide by ~0; replace their weight rows by an indicator.
    w = np.where(hit.any(axis=-1)[..., None], hit.astype(float), w)
    out = (w @ points) / w.sum(axis=-1)
    return complex(out) if np.isscalar(est) or e.ndim == 0 else out


def truncate(est, alphabet: Alphabet):
    """Clamp real and imaginary parts to the constellation bounding box."""
    re_lo, re_hi, im_lo, im_hi = alphabet.bounding_box
    e = np.asarray(est, dtype=complex)
    out = np.clip(e.real, re_lo, re_hi) + 1j * np.clip(e.imag, im_lo, im_hi)
    return complex(out) if np.isscalar(est) or e.ndim == 0 else out


def slice_symbols(est, alphabet: Alphabet):
    """Hard decision to the nearest constellation point.

    Ties break toward the lowest point index (argmin keeps the first minimum).
    """
    e = np.asarray(est, dtype=complex)
    points = alphabet.points_array()
    d2 = np.abs(e[..., None] - points) ** 2
    out = points[d2.argmin(axis=-1)]
    return complex(out) if np.isscalar(est) or e.ndim == 0 else out


def stripe_decode_soft(r, cfg: SefdmConfig, params: StripeParams = StripeParams()) -> np.ndarray:
    """Pre-slice soft symbol estimates after J stripe sweeps (diagnostics)."""
    return _stripe_batch(np.atleast_2d(np.asarray(r, complex)), cfg, params)[0]


def stripe_decode(r, cfg: SefdmConfig, params: StripeParams = StripeParams()) -> np.ndarray:
    """Iterative interference-cancelling decoder; returns hard symbols.

    Accepts a length-M vector or a (..., M) batch.
    """
    r = np.asarray(r, dtype=complex)
    _, m_samp, _, _, _ = _dims(cfg)
    if r.shape[-1] != m_samp:
        raise DimensionError(f"expected {m_samp} samples, got {r.shape[-1]}")
    soft = _stripe_batch(r.reshape(-1, m_samp), cfg, params)
    hard = slice_symbols(soft, cfg.alphabet)
    return hard.reshape(r.shape[:-1] + (cfg.n_carriers,))


def _stripe_batch(r: np.ndarray, cfg: SefdmConfig, params: StripeParams) -> np.ndarray:
    """Run J sweeps over a (B, M) batch; returns (B, N) soft estimates."""
    n_car, m_samp, _, c, _ = _dims(cfg)
    if r.shape[-1] != m_samp:
        raise DimensionError(f"expected {m_samp} samples, got {r.shape[-1]}")
    n_blocks = r.shape[0]
    total_iter = params.iterations

    layouts = [_branch_layout(k, cfg) for k in range(c)]
    rots = [rotation_vector(k, cfg) for k in range(c)]
    re_lo, re_hi, im_lo, im_hi = cfg.alphabet.bounding_box

    s_hat = np.zeros((n_blocks, n_car), dtype=complex)
    branch = [np.zeros((n_blocks, m_samp), dtype=complex) for _ in range(c)]
    total = np.zeros((n_blocks, m_samp), dtype=complex)

    def remodulate(k: int) -> np.ndarray:
        bins, syms = layouts[k]
        spectrum = np.zeros((n_blocks, m_samp), dtype=complex)
        spectrum[:, bins] = s_hat[:, syms]
        return np.fft.ifft(spectrum, axis=1) * m_samp * rots[k]

    for j in range(1, total_iter + 1):
        for k in range(c):
            bins, syms = layouts[k]
            resid = r - (total - branch[k])
            spectrum = np.fft.fft(resid * np.conj(rots[k]), axis=1) / m_samp
            est = spectrum[:, bins]
            est = np.clip(est.real, re_lo, re_hi) + 1j * np.clip(est.imag, im_lo, im_hi)
            s_hat[:, syms] = est
            # The updated branch is visible to the remaining k within this sweep.
            new_branch = remodulate(k)
            total += new_branch - branch[k]
            branch[k] = new_branch
        s_hat = s_hat * (total_iter - j) / total_iter + (j / total_iter) * gravity(
            s_hat, cfg.alphabet
        )
        if j < total_iter:
            for k in range(c):
                new_branch = remodulate(k)
                total += new_branch - branch[k]
                branch[k] = new_branch
    return s_hat


@lru_cache(maxsize=8)
def _ml_table(cfg: SefdmConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(candidate symbols (K, N), candidate signals (K, M), signal energies)."""
    points = cfg.alphabet.points_array()
    n_car = cfg.n_carriers
    size = len(points)
    count = size**n_car
    digits = (np.arange(count)[:, None] // size ** np.arange(n_car - 1, -1, -1)) % size
    candidates = points[digits]
    signals = candidates @ carrier_matrix(cfg)
    return candidates, signals, np.sum(np.abs(signals) ** 2, axis=1)


def ml_capacity(cfg: SefdmConfig) -> int:
    return len(cfg.alphabet.points) ** cfg.n_carriers


def check_ml_guard(cfg: SefdmConfig) -> None:
    count = ml_capacity(cfg)
    if count > _ML_GUARD:
        raise CapacityError(
            f"{len(cfg.alphabet.points)}^{cfg.n_carriers} = {count} candidates "
            f"exceeds the enumeration guard of {_ML_GUARD}"
        )


def ml_decode(r, cfg: SefdmConfig) -> np.ndarray:
    """Exhaustive minimum-distance decoding over every candidate symbol vector.

    Guarded at |alphabet|^N <= 2^20 candidates; ties break toward the earliest
    candidate in odometer order over the constellation indices. Accepts a
    length-M vector or a (..., M) batch.
    """
    check_ml_guard(cfg)
    r = np.asarray(r, dtype=complex)
    _, m_samp, _, _, _ = _dims(cfg)
    if r.shape[-1] != m_samp:
        raise DimensionError(f"expected {m_samp} samples, got {r.shape[-1]}")
    flat = r.reshape(-1, m_samp)

    count = ml_capacity(cfg)
    if count * m_samp <= _ML_CACHE_LIMIT:
        candidates, signals, energies = _ml_table(cfg)
        # ||r - x||^2 up to the common ||r||^2 term.
        metric = energies[None, :] - 2 * np.real(flat @ signals.conj().T)
        best = candidates[metric.argmin(axis=1)]
    else:
        best = _ml_chunked(flat, cfg, count)
    return best.reshape(r.shape[:-1] + (cfg.n_carriers,))


def _ml_chunked(flat: np.ndarray, cfg: SefdmConfig, count: int) -> np.ndarray:
    points = cfg.alphabet.points_array()
    size = len(points)
    n_car = cfg.n_carriers
    matrix = carrier_matrix(cfg)
    powers = size ** np.arange(n_car - 1, -1, -1)
    chunk = max(1, _ML_CACHE_LIMIT // cfg.n_samples)
    best_metric = np.full(flat.shape[0], np.inf)
    best_index = np.zeros(flat.shape[0], dtype=np.int64)
    for start in range(0, count, chunk):
        idx = np.arange(start, min(start + chunk, count))
        candidates = points[(idx[:, None] // powers) % size]
        signals = candidates @ matrix
        energies = np.sum(np.abs(signals) ** 2, axis=1)
        metric = energies[None, :] - 2 * np.real(flat @ signals.conj().T)
        arg = metric.argmin(axis=1)
        val = metric[np.arange(flat.shape[0]), arg]
        better = val < best_metric  # strict: earlier candidates win ties
        best_metric[better] = val[better]
        best_index[better] = idx[arg[better]]
    return points[(best_index[:, None] // powers) % size]
