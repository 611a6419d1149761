"""Network configuration and Rayleigh block-fading channel sampling.

Randomness is counter-based: every Monte Carlo trial gets its own Philox
stream keyed by (seed, trial), so trial t yields the same channels no
matter which worker draws it or in what order. That is what makes sweep
output byte-identical across --workers settings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class NetworkConfig:
    """Dimensions and power budget of one dual-hop relay network.

    m: antennas at source and destination, n: antennas per relay,
    k: number of relays. p is the total source transmit power, q the
    per-relay transmit power, both linear (not dB). alpha is the
    regularization weight of the mf-rzf beamformer.
    """

    m: int
    n: int
    k: int
    p: float
    q: float
    sigma1_sq: float = 1.0
    sigma2_sq: float = 1.0
    alpha: float = 1.0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.n < self.m:
            raise ValueError(
                f"relay antennas must satisfy n >= m, got n={self.n}, m={self.m}"
            )
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        for field in ("p", "q", "sigma1_sq", "sigma2_sq"):
            value = getattr(self, field)
            if not (value > 0) or not math.isfinite(value):
                raise ValueError(f"{field} must be strictly positive, got {value}")
        if self.alpha < 0 or not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")

    @classmethod
    def from_db(
        cls,
        m: int,
        n: int,
        k: int,
        pnr_db: float,
        qnr_db: float,
        alpha: float = 1.0,
        sigma1_sq: float = 1.0,
        sigma2_sq: float = 1.0,
    ) -> "NetworkConfig":
        """Build a config from PNR = p/sigma1_sq and QNR = q/sigma2_sq in dB."""
        return cls(
            m=m,
            n=n,
            k=k,
            p=sigma1_sq * 10.0 ** (pnr_db / 10.0),
            q=sigma2_sq * 10.0 ** (qnr_db / 10.0),
            sigma1_sq=sigma1_sq,
            sigma2_sq=sigma2_sq,
            alpha=alpha,
        )


@dataclass(frozen=True)
class ChannelRealization:
    """One fading realization: h[k] is the n x m first-hop matrix of relay k,
    g[k] the m x n second-hop matrix. Arrays are stacked (k, rows, cols) and
    frozen read-only after construction."""

    h: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        h, g = self.h, self.g
        if h.ndim != 3 or g.ndim != 3 or h.shape[0] != g.shape[0]:
            raise ValueError(f"bad realization shapes {h.shape} / {g.shape}")
        k, n, m = h.shape
        if g.shape != (k, m, n):
            raise ValueError(f"g shape {g.shape} does not mirror h shape {h.shape}")
        if not (np.all(np.isfinite(h)) and np.all(np.isfinite(g))):
            raise ValueError("realization contains non-finite entries")
        h.flags.writeable = False
        g.flags.writeable = False

    @property
    def relay_count(self) -> int:
        return self.h.shape[0]


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent Philox stream for one (seed, trial) pair."""
    if trial < 0:
        raise ValueError(f"trial index must be >= 0, got {trial}")
    key = np.array([seed & _MASK64, trial & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_gaussian_matrix(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """One rows x cols matrix of i.i.d. CN(0, 1) entries.

    Consumes 2*rows*cols standard normals from rng: real and imaginary
    parts interleaved per entry, entries filled column by column, scaled
    by 1/sqrt(2) for unit variance.
    """
    raw = rng.standard_normal(2 * rows * cols)
    entries = (raw[0::2] + 1j * raw[1::2]) / np.sqrt(2.0)
    return entries.reshape((rows, cols), order="F")


def sample_realization(config: NetworkConfig, rng: np.random.Generator) -> ChannelRealization:
    """Draw all 2k channel matrices from rng in a fixed documented order:
    first-hop matrices for relays 1..k, then second-hop matrices 1..k.

    Consumes the stream exactly as 2k sequential sample_gaussian_matrix
    calls would; the normals are drawn in one batch because numpy's
    Generator produces the identical sequence either way.
    """
    k, n, m = config.k, config.n, config.m
    per = n * m
    raw = rng.standard_normal(4 * k * per)
    entries = (raw[0::2] + 1j * raw[1::2]) / np.sqrt(2.0)
    # column-major fill per matrix == reshape to the transposed shape, then swap
    h = np.ascontiguousarray(entries[: k * per].reshape(k, m, n).transpose(0, 2, 1))
    g = np.ascontiguousarray(entries[k * per :].reshape(k, n, m).transpose(0, 2, 1))
    return ChannelRealization(h=h, g=g)


def realization_for_trial(config: NetworkConfig, seed: int, trial: int) -> ChannelRealization:
    """The fading realization of Monte Carlo trial `trial` under `seed`.

    Pure function of (dimensions, seed, trial): powers and alpha do not
    touch the stream, so all beamforming schemes and the capacity upper
    bound see a common set of random channels.
    """
    return sample_realization(config, trial_rng(seed, trial))
