"""End-to-end link: effective channel, QR-based successive detection,
per-stream SNR, and instantaneous capacity.

The destination QR-decomposes the effective source-destination channel
and detects streams in reverse order, cancelling already-decoded ones.
With perfect cancellation stream m sees only the m-th diagonal of the
triangular factor as signal, plus forwarded relay noise and local
receiver noise. Capacity carries the 1/2 pre-log of the two-slot
half-duplex protocol.

The stacked_* functions evaluate whole batches of Monte Carlo trials at
once (leading axes broadcast); the single-realization API wraps them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beamformers import RelayWeights
from .channel import ChannelRealization, NetworkConfig
from .linalg import QrFactors, logdet_hpd_stack, qr_stack

_LN2 = float(np.log(2.0))


@dataclass(frozen=True)
class LinkMetrics:
    """Everything the Monte Carlo loop needs from one realization under
    one beamforming scheme."""

    effective_channel: np.ndarray
    qr: QrFactors
    snr_per_stream: np.ndarray
    capacity_bits: float

    def __post_init__(self):
        snr = self.snr_per_stream
        if not (np.all(np.isfinite(snr)) and np.all(snr >= 0)):
            raise ValueError("per-stream SNRs must be finite and non-negative")


def stacked_effective_channel(
    h: np.ndarray, g: np.ndarray, f: np.ndarray, rho: np.ndarray
) -> np.ndarray:
    """Source-to-destination cascade summed over relays:
    sum_k rho_k g_k f_k h_k, batched over leading axes."""
    terms = g @ (f @ h)  # (..., k, m, m)
    return np.einsum("...k,...kij->...ij", rho, terms)


def stacked_snr(
    h: np.ndarray,
    g: np.ndarray,
    f: np.ndarray,
    rho: np.ndarray,
    q: np.ndarray,
    r: np.ndarray,
    config: NetworkConfig,
) -> np.ndarray:
    """Post-detection SNR of each stream, batched over leading axes.

    Signal power of stream m is (p/m) r_mm^2. The noise seen by stream m
    is the relay noise forwarded through rho_k g_k f_k, rotated by q^H,
    plus the destination noise:

        sigma1_sq * sum_k rho_k^2 ||row_m(q^H g_k f_k)||^2 + sigma2_sq
    """
    forward = g @ f  # (..., k, m, n)
    qh = np.swapaxes(q, -1, -2).conj()
    rotated = qh[..., np.newaxis, :, :] @ forward  # (..., k, m, n)
    row_power = np.einsum("...mn,...mn->...m", rotated, rotated.conj()).real
    relay_noise = config.sigma1_sq * np.einsum("...km,...k->...m", row_power, rho**2)
    noise = relay_noise + config.sigma2_sq
    diag = np.real(np.diagonal(r, axis1=-2, axis2=-1))
    return (config.p / config.m) * diag**2 / noise


def stacked_capacity_bits(snr: np.ndarray) -> np.ndarray:
    """Half-duplex sum rate in bits: 0.5 * sum_m log2(1 + snr_m)."""
    return 0.5 * np.sum(np.log1p(snr), axis=-1) / _LN2


def stacked_scheme_capacity(
    h: np.ndarray, g: np.ndarray, f: np.ndarray, rho: np.ndarray, config: NetworkConfig
) -> np.ndarray:
    """Capacity of every trial in a batch under one beamforming scheme."""
    h_sd = stacked_effective_channel(h, g, f, rho)
    q, r = qr_stack(h_sd)
    return stacked_capacity_bits(stacked_snr(h, g, f, rho, q, r, config))


def stacked_upper_bound(h: np.ndarray, config: NetworkConfig) -> np.ndarray:
    """Cut-set bound at the source cut, batched over leading axes:

        0.5 * log2 det(I + p/(m sigma1_sq) * sum_k h_k^H h_k)

    Depends only on the first-hop channels, so it is unaffected by the
    relay power budget q and by the beamforming scheme.
    """
    gram = np.einsum("...knm,...knp->...mp", h.conj(), h)  # sum_k h_k^H h_k
    m = config.m
    arg = np.eye(m) + (config.p / (m * config.sigma1_sq)) * gram
    return 0.5 * logdet_hpd_stack(arg) / _LN2


def effective_channel(
    realization: ChannelRealization, weights: RelayWeights
) -> np.ndarray:
    """Effective m x m source-destination channel of one realization."""
    return stacked_effective_channel(
        realization.h, realization.g, weights.f, weights.rho
    )


def per_stream_snr(
    realization: ChannelRealization,
    weights: RelayWeights,
    qr: QrFactors,
    config: NetworkConfig,
) -> np.ndarray:
    """Post-detection SNRs of one realization under one scheme."""
    return stacked_snr(
        realization.h, realization.g, weights.f, weights.rho, qr.q, qr.r, config
    )


def instantaneous_capacity(snr_per_stream: np.ndarray) -> float:
    """Half-duplex sum rate in bits for one vector of stream SNRs."""
    snr = np.asarray(snr_per_stream, dtype=float)
    if np.any(snr < 0) or not np.all(np.isfinite(snr)):
        raise ValueError("SNRs must be finite and non-negative")
    return float(stacked_capacity_bits(snr))


def compute_link_metrics(
    realization: ChannelRealization,
    weights: RelayWeights,
    config: NetworkConfig,
) -> LinkMetrics:
    """Assemble the full chain for one realization under one scheme."""
    h_sd = effective_channel(realization, weights)
    q, r = qr_stack(h_sd)
    qr = QrFactors(q=q, r=r)
    snr = per_stream_snr(realization, weights, qr, config)
    return LinkMetrics(
        effective_channel=h_sd,
        qr=qr,
        snr_per_stream=snr,
        capacity_bits=float(stacked_capacity_bits(snr)),
    )


def upper_bound_capacity(
    realization: ChannelRealization, config: NetworkConfig
) -> float:
    """Cut-set bound of one realization, in bits."""
    return float(stacked_upper_bound(realization.h, config))


def simulate_transmission(
    realization: ChannelRealization,
    weights: RelayWeights,
    qr: QrFactors,
    config: NetworkConfig,
    draws: int,
    rng: np.random.Generator,
    sigma1_sq: float | None = None,
    sigma2_sq: float | None = None,
) -> np.ndarray:
    """Measure per-stream SNR by actually running the signal chain.

    Draws `draws` source vectors with covariance (p/m) I and sends them
    over the effective channel; relay noise is drawn per relay and
    forwarded through its weighted beamformer, destination noise is added
    last. The receiver rotates by q^H and a genie removes the known
    signal contribution exactly (perfect cancellation, like the analytic
    formula assumes). The measured SNR of stream m is its analytic signal
    power (p/m) r_mm^2 over the empirical variance of what remains.

    sigma1_sq / sigma2_sq override the noise variances in the draws only
    (default: the config values); setting both to 0 checks the zero-noise
    limit where the residual must vanish identically.
    """
    if draws < 1:
        raise ValueError(f"draws must be >= 1, got {draws}")
    s1 = config.sigma1_sq if sigma1_sq is None else float(sigma1_sq)
    s2 = config.sigma2_sq if sigma2_sq is None else float(sigma2_sq)
    if s1 < 0 or s2 < 0:
        raise ValueError("noise variances must be >= 0")

    k, n, m = realization.h.shape
    scale_s = np.sqrt(config.p / (2.0 * config.m))
    s = scale_s * (
        rng.standard_normal((m, draws)) + 1j * rng.standard_normal((m, draws))
    )

    h_sd = effective_channel(realization, weights)
    signal_part = h_sd @ s
    y = signal_part.copy()
    scale_n1 = np.sqrt(s1 / 2.0)
    for i in range(k):
        if scale_n1 > 0:
            relay_noise = scale_n1 * (
                rng.standard_normal((n, draws))
                + 1j * rng.standard_normal((n, draws))
            )
            y += weights.rho[i] * (
                realization.g[i] @ (weights.f[i] @ relay_noise)
            )
    if s2 > 0:
        y += np.sqrt(s2 / 2.0) * (
            rng.standard_normal((m, draws)) + 1j * rng.standard_normal((m, draws))
        )

    residual = qr.q.conj().T @ (y - signal_part)
    noise_power = np.mean(np.abs(residual) ** 2, axis=1)
    diag = np.real(np.diagonal(qr.r))
    signal = (config.p / config.m) * diag**2
    zero_noise = np.where(signal > 0, np.inf, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(noise_power > 0, signal / noise_power, zero_noise)
