"""Deterministic Monte Carlo engine for any (config, scheme) pair.

Frame k's uniforms live at a fixed counter offset of a Philox stream keyed
by the seed, so a frame's content depends only on (seed, k).  Accumulation
happens over fixed-size statistics blocks that are reduced in block order.
Together these make the result bit-identical for a given
(config, scheme, seed, n_frames) no matter how frames are chunked or how
many workers evaluate the chunks.

``batch_size`` and ``n_workers`` are therefore pure throughput knobs.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import SystemConfig, frames_from_uniforms, uniforms_per_frame
from .schemes import SchemeParam, select_indices, validate_scheme

__all__ = [
    "MonteCarloConfig",
    "Estimate",
    "SimulationResult",
    "frame_uniforms",
    "run",
]

# Frames per statistics block; fixed so that sums are invariant to chunking.
_STAT_BLOCK = 10_000

# Minimum expected outage events before the estimate is trusted.
_MIN_OUTAGE_EVENTS = 100


@dataclass(frozen=True)
class MonteCarloConfig:
    """Sampling plan: frame budget, seed, and throughput knobs."""

    n_frames: int
    seed: int = 0
    batch_size: int = _STAT_BLOCK
    n_workers: int = 1

    def __post_init__(self):
        if self.n_frames < 1:
            raise ValueError(f"n_frames must be >= 1, got {self.n_frames}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.n_frames < self.batch_size:
            raise ValueError("n_frames must be >= batch_size")
        if self.n_workers < 1:
            raise ValueError(f"n_workers must be >= 1, got {self.n_workers}")
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class Estimate:
    """Sample mean with its standard error and the sample count."""

    mean: float
    std_error: float
    n: int


@dataclass(frozen=True)
class SimulationResult:
    """Estimates plus per-relay selection counts for one simulation run."""

    capacity: Estimate
    energy: Estimate
    outage: Estimate
    selection_counts: tuple[int, ...]
    low_confidence: bool


def _padded_words(n_relays: int) -> int:
    """Per-frame uniform count rounded up to whole 256-bit Philox blocks."""
    raw = uniforms_per_frame(n_relays)
    return 4 * ((raw + 3) // 4)


def frame_uniforms(seed: int, n_relays: int, start: int, count: int) -> np.ndarray:
    """Uniform draws for frames [start, start+count), shape (count, words).

    Frame k always begins at Philox block k * words/4 of the stream keyed by
    the seed, so any partition of the frame range yields identical rows.
    """
    words = _padded_words(n_relays)
    bitgen = np.random.Philox(key=int(seed), counter=start * (words // 4))
    gen = np.random.Generator(bitgen)
    return gen.random(count * words).reshape(count, words)


def _chunk_stats(config, scheme, seed, start, count, threshold):
    """Per-statistics-block sums for frames [start, start+count).

    Returns (capacity sums, energy sums, outage sums, selection counts).
    ``start`` must be a multiple of the statistics block size.
    """
    u = frame_uniforms(seed, config.n_relays, start, count)
    snr, energy, coins = frames_from_uniforms(config, u)
    sel = select_indices(scheme, snr, energy, coins, threshold)
    rows = np.arange(count)
    snr_sel = snr[rows, sel]
    energy_sel = energy[rows, sel]
    cap = 0.5 * np.log2(1.0 + snr_sel)
    out = (snr_sel < threshold).astype(float)
    counts = np.bincount(sel, minlength=config.n_relays).astype(np.int64)

    block_sums = []
    for k0 in range(0, count, _STAT_BLOCK):
        k1 = min(k0 + _STAT_BLOCK, count)
        block_sums.append(
            (
                float(np.sum(cap[k0:k1])),
                float(np.sum(cap[k0:k1] ** 2)),
                float(np.sum(energy_sel[k0:k1])),
                float(np.sum(energy_sel[k0:k1] ** 2)),
                float(np.sum(out[k0:k1])),
            )
        )
    return block_sums, counts


def _estimate(total: float, total_sq: float, n: int) -> Estimate:
    mean = total / n
    if n > 1:
        var = max(total_sq - total * total / n, 0.0) / (n - 1)
        std_error = math.sqrt(var / n)
    else:
        std_error = 0.0
    return Estimate(mean=mean, std_error=std_error, n=n)


def run(config: SystemConfig, scheme: SchemeParam, mc: MonteCarloConfig) -> SimulationResult:
    """Estimate ergodic capacity, average energy, and outage for a scheme.

    Per frame: draw the channel realization from the seed-derived substream,
    apply the scheme (time sharing consumes the frame's coin), and
    accumulate the selected relay's capacity, energy and outage indicator.
    """
    validate_scheme(scheme, config.n_relays)
    threshold = config.outage_threshold
    n = mc.n_frames

    # Chunks are whole numbers of statistics blocks so block boundaries are
    # global, independent of batch_size.
    blocks_per_chunk = max(1, -(-mc.batch_size // _STAT_BLOCK))
    chunk = blocks_per_chunk * _STAT_BLOCK
    starts = list(range(0, n, chunk))
    jobs = [(s, min(chunk, n - s)) for s in starts]

    if mc.n_workers == 1:
        results = [_chunk_stats(config, scheme, mc.seed, s, c, threshold) for s, c in jobs]
    else:
        with ThreadPoolExecutor(max_workers=mc.n_workers) as pool:
            futures = [
                pool.submit(_chunk_stats, config, scheme, mc.seed, s, c, threshold)
                for s, c in jobs
            ]
            results = [f.result() for f in futures]

    cap_sum = cap_sq = en_sum = en_sq = out_sum = 0.0
    counts = np.zeros(config.n_relays, dtype=np.int64)
    for block_sums, chunk_counts in results:  # fixed chunk order
        counts += chunk_counts
        for bc, bc2, be, be2, bo in block_sums:
            cap_sum += bc
            cap_sq += bc2
            en_sum += be
            en_sq += be2
            out_sum += bo

    outage_mean = out_sum / n
    # Bernoulli sums: sum of squares equals the sum itself.
    outage = _estimate(out_sum, out_sum, n)
    return SimulationResult(
        capacity=_estimate(cap_sum, cap_sq, n),
        energy=_estimate(en_sum, en_sq, n),
        outage=outage,
        selection_counts=tuple(int(c) for c in counts),
        low_confidence=bool(out_sum < _MIN_OUTAGE_EVENTS),
    )
