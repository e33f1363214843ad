"""Relay selection policies.

Each policy maps one channel frame (plus, for time sharing, a uniform coin)
to the index of the relay to activate.  Indices are 0-based.  Scalar
per-frame functions define the semantics; the vectorized ``select_indices``
applies the same rules to whole batches and is what the Monte Carlo engine
uses.  Ties are probability-zero events under the continuous fading model;
the conventions below exist so results are reproducible:

* weighted difference: exact tie selects relay 0;
* Pareto policy: exact tie selects the relay with the larger energy, then
  relay 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import ChannelFrame

__all__ = [
    "Metric",
    "TimeSharing",
    "ThresholdChecking",
    "WeightedDifference",
    "ParetoOptimal",
    "SchemeParam",
    "validate_scheme",
    "argmax_snr",
    "argmax_energy",
    "select_time_sharing",
    "select_threshold",
    "select_weighted_difference",
    "select_pareto",
    "select",
    "select_indices",
]


class Metric(enum.Enum):
    """Per-frame performance metric maximized by the Pareto policy."""

    CAPACITY = "capacity"
    OUTAGE_INDICATOR = "outage-indicator"


@dataclass(frozen=True)
class TimeSharing:
    """Pick the best-SNR relay with probability mu, else the best-energy relay."""

    mu: float

    def __post_init__(self):
        if not (0.0 <= self.mu <= 1.0):
            raise ValueError(f"mu must be in [0, 1], got {self.mu!r}")


@dataclass(frozen=True)
class ThresholdChecking:
    """Pick the best-SNR relay when its SNR clears tau, else the best-energy relay.

    tau may be math.inf, which degenerates to always picking the
    best-energy relay.
    """

    tau: float

    def __post_init__(self):
        if math.isnan(self.tau) or self.tau < 0.0:
            raise ValueError(f"tau must be >= 0, got {self.tau!r}")


@dataclass(frozen=True)
class WeightedDifference:
    """Two-relay rule: relay 0 wins iff snr0 - snr1 > nu * (energy1 - energy0).

    ``energy_only=True`` is the nu -> infinity limit (pure best-energy
    selection); the finite parameter is ignored in that case.
    """

    nu: float
    energy_only: bool = False

    def __post_init__(self):
        if not self.energy_only and (math.isnan(self.nu) or self.nu < 0.0):
            raise ValueError(f"nu must be >= 0, got {self.nu!r}")


@dataclass(frozen=True)
class ParetoOptimal:
    """Two-relay rule: relay 0 wins iff F(snr0) - F(snr1) > zeta * (energy1 - energy0).

    F is the instantaneous capacity or the no-outage indicator, per
    ``metric``.  ``energy_only=True`` is the zeta -> infinity limit.
    """

    zeta: float
    metric: Metric = Metric.CAPACITY
    energy_only: bool = False

    def __post_init__(self):
        if not isinstance(self.metric, Metric):
            raise ValueError(f"metric must be a Metric, got {self.metric!r}")
        if not self.energy_only and (math.isnan(self.zeta) or self.zeta < 0.0):
            raise ValueError(f"zeta must be >= 0, got {self.zeta!r}")


SchemeParam = TimeSharing | ThresholdChecking | WeightedDifference | ParetoOptimal


def validate_scheme(scheme: SchemeParam, n_relays: int) -> None:
    """Reject scheme/relay-count combinations the policies do not support."""
    if isinstance(scheme, (WeightedDifference, ParetoOptimal)) and n_relays != 2:
        raise ValueError(
            f"{type(scheme).__name__} requires exactly 2 relays, got n_relays={n_relays}"
        )
    if not isinstance(scheme, (TimeSharing, ThresholdChecking, WeightedDifference, ParetoOptimal)):
        raise ValueError(f"unknown scheme {scheme!r}")


def argmax_snr(frame: ChannelFrame) -> int:
    """Index of the relay with the largest end-to-end SNR (lowest index on ties)."""
    return int(np.argmax(frame.snr))


def argmax_energy(frame: ChannelFrame) -> int:
    """Index of the relay with the largest harvestable energy (lowest index on ties)."""
    return int(np.argmax(frame.energy))


def select_time_sharing(frame: ChannelFrame, mu: float, coin: float) -> int:
    """Best-SNR relay if coin < mu, else best-energy relay."""
    return argmax_snr(frame) if coin < mu else argmax_energy(frame)


def select_threshold(frame: ChannelFrame, tau: float) -> int:
    """Best-SNR relay if its SNR is >= tau, else best-energy relay."""
    kappa = argmax_snr(frame)
    return kappa if frame.snr[kappa] >= tau else argmax_energy(frame)


def select_weighted_difference(frame: ChannelFrame, nu: float) -> int:
    """Weighted-difference rule for two relays; ties go to relay 0."""
    if frame.n_relays != 2:
        raise ValueError("weighted difference selection requires exactly 2 relays")
    lhs = frame.snr[0] - frame.snr[1]
    rhs = nu * (frame.energy[1] - frame.energy[0])
    return 1 if lhs < rhs else 0


def _metric_values(snr, metric: Metric, threshold: float):
    if metric is Metric.CAPACITY:
        return 0.5 * np.log2(1.0 + np.asarray(snr, dtype=float))
    return (np.asarray(snr, dtype=float) > threshold).astype(float)


def select_pareto(frame: ChannelFrame, zeta: float, metric: Metric, threshold: float) -> int:
    """Pareto rule for two relays; ties go to the larger energy, then relay 0."""
    if frame.n_relays != 2:
        raise ValueError("Pareto selection requires exactly 2 relays")
    f = _metric_values(frame.snr, metric, threshold)
    lhs = f[0] - f[1]
    rhs = zeta * (frame.energy[1] - frame.energy[0])
    if lhs > rhs:
        return 0
    if lhs < rhs:
        return 1
    return 1 if frame.energy[1] > frame.energy[0] else 0


def select(frame: ChannelFrame, scheme: SchemeParam, coin: float = 0.0,
           outage_threshold: float = 1.0) -> int:
    """Apply any scheme to a single frame."""
    validate_scheme(scheme, frame.n_relays)
    if isinstance(scheme, TimeSharing):
        return select_time_sharing(frame, scheme.mu, coin)
    if isinstance(scheme, ThresholdChecking):
        return select_threshold(frame, scheme.tau)
    if isinstance(scheme, WeightedDifference):
        return argmax_energy(frame) if scheme.energy_only else \
            select_weighted_difference(frame, scheme.nu)
    if scheme.energy_only:
        return argmax_energy(frame)
    return select_pareto(frame, scheme.zeta, scheme.metric, outage_threshold)


def select_indices(
    scheme: SchemeParam,
    snr: np.ndarray,
    energy: np.ndarray,
    coins: np.ndarray | None = None,
    outage_threshold: float = 1.0,
) -> np.ndarray:
    """Vectorized selection over a batch of frames.

    Args:
        snr, energy: arrays of shape (m, N).
        coins: per-frame uniforms in [0, 1); required for time sharing.

    Returns:
        int array of shape (m,) with the selected relay index per frame,
        identical frame by frame to the scalar selection functions.
    """
    snr = np.asarray(snr, dtype=float)
    energy = np.asarray(energy, dtype=float)
    n_relays = snr.shape[1]
    validate_scheme(scheme, n_relays)
    kappa = np.argmax(snr, axis=1)
    lam = np.argmax(energy, axis=1)

    if isinstance(scheme, TimeSharing):
        if coins is None:
            raise ValueError("time sharing needs per-frame coins")
        return np.where(np.asarray(coins) < scheme.mu, kappa, lam)
    if isinstance(scheme, ThresholdChecking):
        rows = np.arange(snr.shape[0])
        return np.where(snr[rows, kappa] >= scheme.tau, kappa, lam)
    if isinstance(scheme, WeightedDifference):
        if scheme.energy_only:
            return lam
        lhs = snr[:, 0] - snr[:, 1]
        rhs = scheme.nu * (energy[:, 1] - energy[:, 0])
        return (lhs < rhs).astype(np.intp)
    if scheme.energy_only:
        return lam
    f = _metric_values(snr, scheme.metric, outage_threshold)
    lhs = f[:, 0] - f[:, 1]
    rhs = scheme.zeta * (energy[:, 1] - energy[:, 0])
    tie = (energy[:, 1] > energy[:, 0]).astype(np.intp)
    return np.where(lhs > rhs, 0, np.where(lhs < rhs, 1, tie)).astype(np.intp)
