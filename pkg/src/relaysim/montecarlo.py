"""Ergodic capacity estimation and parameter sweeps.

Every trial is a pure function of (network dimensions, seed, trial
index): workers never share state, and the per-trial capacities are
assembled into one array in trial order before any reduction. Output is
therefore byte-identical for any --workers setting, and all schemes of a
sweep point see common random channels.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .beamformers import Scheme, stacked_beamformers, stacked_power_factors
from .channel import NetworkConfig, realization_for_trial
from .link import stacked_scheme_capacity, stacked_upper_bound

UPPER_BOUND_LABEL = "upper-bound"

# Trials are evaluated in fixed-size batches so the array shapes (and
# therefore every intermediate float) are independent of the worker count.
TRIAL_CHUNK = 1024

AXES = ("relay_count", "pnr_db", "qnr_db", "pnr_equals_qnr_db")


class ConfigError(ValueError):
    """A sweep point or scenario value is invalid."""


@dataclass(frozen=True)
class CapacityEstimate:
    """Monte Carlo mean capacity with its standard error.

    stderr_bits is the sample standard deviation over sqrt(trials); for
    the degenerate single-trial case it is defined as 0.0.
    """

    mean_bits: float
    stderr_bits: float
    trials: int
    scheme: str

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not math.isfinite(self.mean_bits) or self.mean_bits < 0:
            raise ValueError(f"mean_bits must be finite and >= 0, got {self.mean_bits}")
        if not math.isfinite(self.stderr_bits) or self.stderr_bits < 0:
            raise ValueError(f"stderr_bits must be >= 0, got {self.stderr_bits}")


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: an axis, its values, and the base network the axis
    perturbs. base_pnr_db / base_qnr_db mirror base.p / base.q in dB so
    reports can echo the configured values exactly."""

    axis: str
    values: tuple
    base: NetworkConfig
    base_pnr_db: float
    base_qnr_db: float
    schemes: tuple = (Scheme.AF, Scheme.MF, Scheme.MF_RZF)
    include_upper_bound: bool = True
    trials: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigError(f"unknown sweep axis {self.axis!r}, expected one of {AXES}")
        if len(self.values) == 0:
            raise ConfigError("sweep values must be non-empty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigError(f"sweep values must be strictly increasing: {self.values}")
        if len(self.schemes) == 0:
            raise ConfigError("at least one scheme is required")
        if len(set(self.schemes)) != len(self.schemes):
            raise ConfigError(f"duplicate schemes: {self.schemes}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")

    def point(self, value) -> tuple[NetworkConfig, float, float]:
        """Materialize (config, pnr_db, qnr_db) for one axis value."""
        pnr_db, qnr_db, k = self.base_pnr_db, self.base_qnr_db, self.base.k
        if self.axis == "relay_count":
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                raise ConfigError(f"axis point {value!r}: relay count must be an integer")
            k = int(value)
        elif self.axis == "pnr_db":
            pnr_db = float(value)
        elif self.axis == "qnr_db":
            qnr_db = float(value)
        else:  # pnr_equals_qnr_db
            pnr_db = qnr_db = float(value)
        try:
            cfg = NetworkConfig.from_db(
                m=self.base.m,
                n=self.base.n,
                k=k,
                pnr_db=pnr_db,
                qnr_db=qnr_db,
                alpha=self.base.alpha,
                sigma1_sq=self.base.sigma1_sq,
                sigma2_sq=self.base.sigma2_sq,
            )
        except ValueError as exc:
            raise ConfigError(f"axis point {value!r}: {exc}") from exc
        return cfg, pnr_db, qnr_db


@dataclass(frozen=True)
class SweepRow:
    """One (axis value, series) cell of a sweep result table."""

    scheme: str
    axis: str
    axis_value: object
    m: int
    n: int
    k: int
    pnr_db: float
    qnr_db: float
    alpha: float
    trials: int
    seed: int
    capacity_mean_bits: float
    capacity_stderr_bits: float


def _capacity_chunk(args) -> tuple:
    """Per-trial capacities for trials [start, stop) of one sweep point.

    Channels are drawn trial by trial from their keyed streams, then all
    series are evaluated on the stacked batch.
    """
    config, schemes, include_upper, seed, start, stop = args
    realizations = [
        realization_for_trial(config, seed, trial) for trial in range(start, stop)
    ]
    h = np.stack([r.h for r in realizations])
    g = np.stack([r.g for r in realizations])
    columns = []
    for scheme in schemes:
        f = stacked_beamformers(scheme, h, g, config.alpha)
        rho = stacked_power_factors(
            f, h, config.p, config.m, config.sigma1_sq, config.q
        )
        columns.append(stacked_scheme_capacity(h, g, f, rho, config))
    if include_upper:
        columns.append(stacked_upper_bound(h, config))
    return start, np.column_stack(columns)


def _capacity_table(
    config: NetworkConfig,
    schemes: tuple,
    include_upper: bool,
    trials: int,
    seed: int,
    workers: int,
) -> np.ndarray:
    """trials x series matrix of per-trial capacities, in trial order."""
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    jobs = [
        (config, schemes, include_upper, seed, start, min(start + TRIAL_CHUNK, trials))
        for start in range(0, trials, TRIAL_CHUNK)
    ]
    table = np.empty((trials, len(schemes) + int(include_upper)))
    if workers == 1 or len(jobs) == 1:
        for start, block in map(_capacity_chunk, jobs):
            table[start : start + len(block)] = block
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for start, block in pool.map(_capacity_chunk, jobs):
                table[start : start + len(block)] = block
    return table


def _estimate(values: np.ndarray, trials: int, scheme: str) -> CapacityEstimate:
    stderr = float(np.std(values, ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return CapacityEstimate(
        mean_bits=float(np.mean(values)),
        stderr_bits=stderr,
        trials=trials,
        scheme=scheme,
    )


def estimate_ergodic_capacity(
    config: NetworkConfig,
    scheme: Scheme,
    trials: int,
    seed: int,
    workers: int = 1,
) -> CapacityEstimate:
    """Mean instantaneous capacity of one scheme over `trials` channels."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    table = _capacity_table(config, (scheme,), False, trials, seed, workers)
    return _estimate(table[:, 0], trials, scheme.value)


def estimate_upper_bound(
    config: NetworkConfig, trials: int, seed: int, workers: int = 1
) -> CapacityEstimate:
    """Mean cut-set bound over the same channel draws the schemes see."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    table = _capacity_table(config, (), True, trials, seed, workers)
    return _estimate(table[:, 0], trials, UPPER_BOUND_LABEL)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list:
    """Evaluate every series at every axis point.

    Rows are ordered axis-major, series-minor, with the upper bound (if
    requested) last within each point. All series of one point share the
    same per-trial channel realizations.
    """
    rows = []
    labels = [s.value for s in spec.schemes]
    if spec.include_upper_bound:
        labels.append(UPPER_BOUND_LABEL)
    for value in spec.values:
        config, pnr_db, qnr_db = spec.point(value)
        table = _capacity_table(
            config, spec.schemes, spec.include_upper_bound, spec.trials, spec.seed, workers
        )
        for j, label in enumerate(labels):
            est = _estimate(table[:, j], spec.trials, label)
            rows.append(
                SweepRow(
                    scheme=label,
                    axis=spec.axis,
                    axis_value=value,
                    m=config.m,
                    n=config.n,
                    k=config.k,
                    pnr_db=pnr_db,
                    qnr_db=qnr_db,
                    alpha=config.alpha,
                    trials=spec.trials,
                    seed=spec.seed,
                    capacity_mean_bits=est.mean_bits,
                    capacity_stderr_bits=est.stderr_bits,
                )
            )
    return rows
