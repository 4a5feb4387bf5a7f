"""Constellation alphabets, system configuration, bit mapping and seeded RNG streams."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class DimensionError(ValueError):
    """Input length does not match the configured dimensions."""


class DomainError(ValueError):
    """Value outside the domain of the operation."""


class CapacityError(RuntimeError):
    """Requested search space exceeds the enumeration guard."""


@dataclass(frozen=True)
class Alphabet:
    """A finite complex constellation with Gray-coded bit labels.

    Points are kept unnormalized (4-QAM uses +/-1 +/- 1j) so that soft-estimate
    truncation can clamp components to the constellation bounding box.
    """

    name: str
    points: tuple[complex, ...]
    labels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.points)
        if n < 2 or (n & (n - 1)) != 0:
            raise ValueError("alphabet size must be a power of two")
        if len(set(self.points)) != n:
            raise ValueError("alphabet points must be distinct")
        bps = n.bit_length() - 1
        if len(self.labels) != n or any(len(l) != bps for l in self.labels):
            raise ValueError("need one label of log2(|points|) bits per point")
        if len(set(self.labels)) != n:
            raise ValueError("labels must be distinct")

    @property
    def bits_per_symbol(self) -> int:
        return len(self.points).bit_length() - 1

    @property
    def bounding_box(self) -> tuple[float, float, float, float]:
        """(re_min, re_max, im_min, im_max) over the constellation points."""
        re = [p.real for p in self.points]
        im = [p.imag for p in self.points]
        return (min(re), max(re), min(im), max(im))

    @property
    def energy(self) -> float:
        """Average symbol energy, mean |point|^2."""
        return float(np.mean([p.real**2 + p.imag**2 for p in self.points]))

    def points_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=complex)


BPSK = Alphabet("bpsk", (1 + 0j, -1 + 0j), ((0,), (1,)))

# Gray ring: neighbours sharing a coordinate differ in exactly one bit.
QAM4 = Alphabet(
    "qam4",
    (1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j),
    ((0, 0), (0, 1), (1, 1), (1, 0)),
)

_ALPHABETS = {"bpsk": BPSK, "qam4": QAM4}


def get_alphabet(name: str) -> Alphabet:
    try:
        return _ALPHABETS[name.lower()]
    except KeyError:
        raise DomainError(f"unknown alphabet {name!r}") from None


@dataclass(frozen=True)
class SefdmConfig:
    """System dimensions: N carriers, M samples per symbol period, alpha = b/c.

    alpha = 1 is plain OFDM. M >= N is required; M need not be a multiple of c
    (the interleaved decomposition holds for any M, the rotation is a pointwise
    phase multiply rather than an integer bin shift).
    """

    n_carriers: int
    n_samples: int
    alpha_num: int
    alpha_den: int
    alphabet: Alphabet

    def __post_init__(self):
        if self.n_carriers < 1 or self.n_samples < 1:
            raise ValueError("carrier and sample counts must be positive")
        b, c = self.alpha_num, self.alpha_den
        if b < 1 or c < 1 or b > c:
            raise ValueError("alpha = b/c requires 1 <= b <= c")
        if math.gcd(b, c) != 1:
            raise ValueError("alpha = b/c must be in lowest terms")
        if self.n_samples < self.n_carriers:
            raise ValueError("need at least as many samples as carriers (M >= N)")

    @property
    def alpha(self) -> float:
        return self.alpha_num / self.alpha_den

    @property
    def n_padded(self) -> int:
        """Carrier count zero-padded up to the next multiple of c."""
        c = self.alpha_den
        return c * math.ceil(self.n_carriers / c)

    @property
    def bits_per_block(self) -> int:
        return self.n_carriers * self.alphabet.bits_per_symbol


@dataclass(frozen=True)
class RandomSource:
    """A reproducible, splittable random stream.

    Identical (seed, stream) pairs yield identical sequences; distinct streams
    are statistically independent (Philox counter-based generator), so Monte
    Carlo points can run in parallel without coordination.
    """

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.Philox(ss))


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RandomSource):
        return rng.generator()
    return rng


def _label_lut(alphabet: Alphabet) -> np.ndarray:
    """Map label-as-integer -> point index."""
    bps = alphabet.bits_per_symbol
    lut = np.empty(2**bps, dtype=np.intp)
    for idx, label in enumerate(alphabet.labels):
        val = 0
        for bit in label:
            val = (val << 1) | bit
        lut[val] = idx
    return lut


def bits_to_symbols(bits, alphabet: Alphabet) -> np.ndarray:
    """Map a bit sequence to constellation symbols, bits_per_symbol bits each.

    Accepts any leading batch shape; the last axis must be a multiple of
    bits_per_symbol. Inverse of symbols_to_bits.
    """
    bits = np.asarray(bits, dtype=np.intp)
    bps = alphabet.bits_per_symbol
    if bits.shape[-1] % bps != 0:
        raise DimensionError(
            f"bit count {bits.shape[-1]} is not a multiple of {bps}"
        )
    groups = bits.reshape(bits.shape[:-1] + (-1, bps))
    weights = 1 << np.arange(bps - 1, -1, -1)
    ints = groups @ weights
    return alphabet.points_array()[_label_lut(alphabet)[ints]]


def symbols_to_bits(symbols, alphabet: Alphabet) -> np.ndarray:
    """Map exact constellation symbols back to their bit labels.

    Raises DomainError for values that are not alphabet points; slice first.
    """
    symbols = np.asarray(symbols, dtype=complex)
    points = alphabet.points_array()
    match = symbols[..., None] == points
    if not match.any(axis=-1).all():
        raise DomainError("symbol vector contains values outside the alphabet")
    idx = match.argmax(axis=-1)
    labels = np.asarray(alphabet.labels, dtype=np.intp)
    return labels[idx].reshape(symbols.shape[:-1] + (-1,))
