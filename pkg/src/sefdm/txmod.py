"""SEFDM signal generation.

Two equivalent transmitter paths are provided:

* ``modulate_direct`` -- multiply the symbol vector by the N x M carrier
  matrix c_nm = exp(2*pi*i*n*m*b/(c*M)).
* ``modulate_interleaved`` -- decompose the system into c interleaved OFDM
  branches: each branch is an M-point (unnormalized) inverse DFT of a
  zero-stuffed symbol vector, pointwise rotated by r(k)_m =
  exp(2*pi*i*m*k*b/(c*M)), and the branches are summed.

The two paths agree to floating-point rounding for every M >= N.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import DimensionError, SefdmConfig


@dataclass(frozen=True)
class SubsystemSymbols:
    """Symbols of one interleaved OFDM branch.

    ``values`` has length n_padded*b/c; entry l*b holds original symbol
    S[l*c + k] and every other entry is zero.
    """

    k: int
    values: np.ndarray


@lru_cache(maxsize=64)
def _dims(cfg: SefdmConfig) -> tuple[int, int, int, int, int]:
    """(N, M, b, c, branch length) with the branch-fits-in-M check."""
    n_pad = cfg.n_padded
    length = n_pad * cfg.alpha_num // cfg.alpha_den
    if length > cfg.n_samples:
        raise DimensionError(
            f"branch spectrum length {length} exceeds sample count {cfg.n_samples}"
        )
    return cfg.n_carriers, cfg.n_samples, cfg.alpha_num, cfg.alpha_den, length


@lru_cache(maxsize=64)
def carrier_matrix(cfg: SefdmConfig) -> np.ndarray:
    """The N x M carrier matrix, indices from zero."""
    n = np.arange(cfg.n_carriers)[:, None]
    m = np.arange(cfg.n_samples)[None, :]
    b, c = cfg.alpha_num, cfg.alpha_den
    return np.exp(2j * np.pi * n * m * b / (c * cfg.n_samples))


@lru_cache(maxsize=256)
def rotation_vector(k: int, cfg: SefdmConfig) -> np.ndarray:
    """Diagonal of the M x M rotation matrix R(k) for branch k."""
    if not 0 <= k < cfg.alpha_den:
        raise DimensionError(f"subsystem index {k} out of range [0, {cfg.alpha_den})")
    m = np.arange(cfg.n_samples)
    return np.exp(2j * np.pi * m * k * cfg.alpha_num / (cfg.alpha_den * cfg.n_samples))


@lru_cache(maxsize=256)
def _branch_layout(k: int, cfg: SefdmConfig) -> tuple[np.ndarray, np.ndarray]:
    """(DFT bins, original symbol indices) carrying data on branch k."""
    _, _, b, c, _ = _dims(cfg)
    bins, syms = [], []
    for l in range(cfg.n_padded // c):
        idx = l * c + k
        if idx < cfg.n_carriers:
            bins.append(l * b)
            syms.append(idx)
    return np.asarray(bins, dtype=np.intp), np.asarray(syms, dtype=np.intp)


def _check_symbols(s, cfg: SefdmConfig) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    if s.shape[-1] != cfg.n_carriers:
        raise DimensionError(
            f"expected {cfg.n_carriers} symbols, got {s.shape[-1]}"
        )
    return s


def modulate_direct(s, cfg: SefdmConfig) -> np.ndarray:
    """U_m = sum_k S_k exp(2*pi*i*k*m*b/(c*M)), via the carrier matrix.

    Accepts a length-N vector or a (..., N) batch.
    """
    s = _check_symbols(s, cfg)
    return s @ carrier_matrix(cfg)


def partition_symbols(s, cfg: SefdmConfig) -> list[SubsystemSymbols]:
    """Split a symbol vector into the c interleaved branch vectors S'(k).

    The input is implicitly zero-padded to n_padded carriers; every input
    symbol appears in exactly one output.
    """
    s = _check_symbols(s, cfg)
    if s.ndim != 1:
        raise DimensionError("partition_symbols takes a single symbol vector")
    _, _, _, c, length = _dims(cfg)
    parts = []
    for k in range(c):
        bins, syms = _branch_layout(k, cfg)
        values = np.zeros(length, dtype=complex)
        values[bins] = s[syms]
        parts.append(SubsystemSymbols(k, values))
    return parts


def merge_symbols(parts: list[SubsystemSymbols], cfg: SefdmConfig) -> np.ndarray:
    """Inverse of partition_symbols: S_n = S'(n mod c)[b*(n - n mod c)/c]."""
    _, _, _, c, length = _dims(cfg)
    if len(parts) != c:
        raise DimensionError(f"expected {c} subsystem vectors, got {len(parts)}")
    if any(len(p.values) != length for p in parts):
        raise DimensionError("inconsistent subsystem vector lengths")
    s = np.zeros(cfg.n_carriers, dtype=complex)
    for part in parts:
        bins, syms = _branch_layout(part.k, cfg)
        s[syms] = np.asarray(part.values)[bins]
    return s


def modulate_subsystem(part: SubsystemSymbols, cfg: SefdmConfig) -> np.ndarray:
    """Signal of a single branch: M-point inverse DFT of S'(k), rotated by r(k)."""
    _, m_samp, _, c, length = _dims(cfg)
    if not 0 <= part.k < c:
        raise DimensionError(f"subsystem index {part.k} out of range [0, {c})")
    values = np.asarray(part.values, dtype=complex)
    if values.shape != (length,):
        raise DimensionError(f"expected branch vector of length {length}")
    spectrum = np.zeros(m_samp, dtype=complex)
    spectrum[:length] = values
    return np.fft.ifft(spectrum) * m_samp * rotation_vector(part.k, cfg)


def modulate_interleaved(s, cfg: SefdmConfig) -> np.ndarray:
    """Sum of the c rotated OFDM branches; equals modulate_direct to rounding.

    Accepts a length-N vector or a (..., N) batch.
    """
    s = _check_symbols(s, cfg)
    flat = s.reshape(-1, cfg.n_carriers)
    _, m_samp, _, c, _ = _dims(cfg)
    u = np.zeros((flat.shape[0], m_samp), dtype=complex)
    for k in range(c):
        bins, syms = _branch_layout(k, cfg)
        spectrum = np.zeros_like(u)
        spectrum[:, bins] = flat[:, syms]
        u += np.fft.ifft(spectrum, axis=1) * m_samp * rotation_vector(k, cfg)
    return u.reshape(s.shape[:-1] + (m_samp,))
