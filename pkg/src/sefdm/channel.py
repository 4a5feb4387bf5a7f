"""AWGN channel calibrated to Eb/N0, and inter-carrier interference analytics.

The interference formulas are diagnostics only; they quantify how a sampled
simulation exaggerates the leakage between non-orthogonal carriers and never
enter the modulation path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, SefdmConfig, _as_generator


@dataclass(frozen=True)
class NoiseSpec:
    """Total complex noise variance per sample for a given Eb/N0.

    Eb is the ensemble-average energy per bit, M*Es/bits_per_symbol (the
    cross-carrier terms vanish in expectation for every alpha), so the noise
    level is constant across blocks. ebn0_db = +inf is the exact no-noise
    sentinel (sigma2 = 0).
    """

    ebn0_db: float
    sigma2: float

    @classmethod
    def from_config(cls, ebn0_db: float, cfg: SefdmConfig) -> "NoiseSpec":
        if math.isinf(ebn0_db) and ebn0_db > 0:
            return cls(ebn0_db, 0.0)
        eb = cfg.n_samples * cfg.alphabet.energy / cfg.alphabet.bits_per_symbol
        return cls(ebn0_db, eb / 10.0 ** (ebn0_db / 10.0))


def add_awgn(u, spec: NoiseSpec, rng) -> np.ndarray:
    """Add circularly symmetric complex Gaussian noise, variance sigma2 per sample.

    ``rng`` is a RandomSource or a numpy Generator; the output is deterministic
    given the generator state.
    """
    u = np.asarray(u, dtype=complex)
    if spec.sigma2 == 0.0:
        return u.copy()
    gen = _as_generator(rng)
    scale = math.sqrt(spec.sigma2 / 2.0)
    noise = gen.standard_normal(u.shape) + 1j * gen.standard_normal(u.shape)
    return u + scale * noise


def _sinc(x):
    """sin(pi*x)/x, with the continuous limit pi at x = 0."""
    return np.pi * np.sinc(x)


def interference_continuous(n: int, m: int, alpha: float, s_n: complex = 1.0) -> complex:
    """Leakage from carrier n onto carrier m for the continuous-time signal."""
    if n == m:
        raise DomainError("interference is defined for distinct carriers only")
    x = (n - m) * alpha
    return complex(s_n * (_sinc(x) / np.pi) * np.exp(1j * np.pi * x))


def interference_discrete(
    n: int, m: int, alpha: float, n_samples: int, s_n: complex = 1.0
) -> complex:
    """Leakage from carrier n onto carrier m when sampled M times per period.

    Tends to interference_continuous as M grows; at finite M the magnitude is
    magnified and the phase rotated by the factor (M-1)/M.
    """
    if n == m:
        raise DomainError("interference is defined for distinct carriers only")
    if n_samples < 1:
        raise DomainError("sample count must be positive")
    x = (n - m) * alpha
    magnified = _sinc(x) / _sinc(x / n_samples)
    return complex(s_n * magnified * np.exp(1j * np.pi * x * (n_samples - 1) / n_samples))
