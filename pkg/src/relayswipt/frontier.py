"""Pareto frontiers of the (energy, performance) tradeoff for two relays.

The capacity frontier has no closed form.  Each point is the pair of
expectations (average selected energy, average selected capacity) under the
capacity-metric Pareto policy at a given weight zeta.  The expectation over
the two energies given the SNR pair has a closed form (the selection
boundary is linear in the energies), which reduces the computation to a 2-d
integral over the ordered SNR pair.  The outer (smaller-SNR) dimension uses
Gauss-Laguerre; the inner SNR-gap dimension uses composite Gauss-Legendre
panels on a fixed geometric grid, because the policy's switching layer sits
near zero gap at a scale proportional to zeta and uniform nodes cannot
track it.  A node-doubling ladder certifies the requested tolerance.  A
Halton quasi-Monte-Carlo rule is available as an alternative route.

The outage frontier needs no integration: both coordinates have closed
forms, and only the weight solve is numerical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.laguerre import laggauss

from .closedform import (
    TradeoffPoint,
    c_max,
    c_min,
    delta_range_outage,
    energy_from_delta,
    pareto_no_outage,
    pareto_outage_energy,
    pareto_outage_energy_min,
    tradeoff_point,
)
from .model import SystemConfig
from .schemes import Metric

__all__ = [
    "FrontierCurve",
    "ToleranceNotMetError",
    "BracketError",
    "pareto_capacity_point",
    "solve_zeta_for_energy",
    "capacity_frontier",
    "outage_frontier",
]

# Quadrature ladder: (outer Laguerre nodes, inner Legendre nodes per panel).
_GL_LADDER = ((48, 8), (64, 12), (96, 16), (128, 24))
# Geometric panel edges for the inner integral over the scaled SNR gap; the
# policy's switching layer sits near zero at a zeta-dependent scale, and a
# panel per decade keeps it resolved wherever it lands.  Mass beyond the last
# edge is below exp(-60).
_PANEL_EDGES = (0.0, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 1.0, 3.0, 10.0, 25.0, 60.0)
_QMC_POINTS = 1 << 22
_DEFAULT_TOL = 1e-4
_SOLVER_BAND = 1e-4  # |energy(zeta) - target| < band * mean_energy terminates
_MAX_BRACKET = 2.0**60


_LN2 = math.log(2.0)


class ToleranceNotMetError(RuntimeError):
    """The integrator could not certify the requested tolerance."""


class BracketError(RuntimeError):
    """Bracketing failed; the sampled forward map was not monotone."""


@dataclass(frozen=True)
class FrontierCurve:
    """Tradeoff points sorted by energy, with the evaluation method used."""

    points: tuple[TradeoffPoint, ...]
    method: str
    tolerance: float

    def __post_init__(self):
        energies = [p.energy for p in self.points]
        if any(b <= a for a, b in zip(energies, energies[1:])):
            raise ValueError("frontier points must be strictly increasing in energy")
        slack = max(2.0 * self.tolerance, 1e-9)
        values = [p.value for p in self.points]
        if any(b > a + slack for a, b in zip(values, values[1:])):
            raise ValueError("frontier values must be non-increasing along energy")


@lru_cache(maxsize=None)
def _gl_nodes(n: int):
    x, w = laggauss(n)
    return x, w


@lru_cache(maxsize=None)
def _inner_grid(n_per_panel: int):
    """Inner nodes over the panel decomposition with Exp(1) weight folded in."""
    z, w = np.polynomial.legendre.leggauss(n_per_panel)
    nodes = []
    weights = []
    for a, b in zip(_PANEL_EDGES, _PANEL_EDGES[1:]):
        half = 0.5 * (b - a)
        v = a + half * (z + 1.0)
        nodes.append(v)
        weights.append(half * w * np.exp(-v))
    return np.concatenate(nodes), np.concatenate(weights)


def _capacity_policy_integrals(config: SystemConfig, zeta: float,
                               outer_nodes: int, inner_nodes: int):
    """(average energy, average capacity) under the capacity Pareto policy.

    Integrates over the ordered SNR pair (low, high) = ((gbar/2)(y/2),
    (gbar/2)(y/2 + v)) with Exp(1) weights in y and v.  The expectation over
    the two energies given the SNR pair is analytic: with t the capacity gap
    divided by zeta*eps, the selected relay's mean energy is
    eps * (1 + (1+t) e^-t / 2) and the better-SNR relay wins with
    probability 1 - e^-t / 2.  Only the correction terms are integrated
    numerically; the t-independent parts are eps and c_max exactly.
    """
    g = config.mean_snr
    eps = config.mean_energy
    y, wy = _gl_nodes(outer_nodes)
    v, wv = _inner_grid(inner_nodes)
    snr_lo = g * y[:, None] / 4.0
    snr_hi = snr_lo + g * v[None, :] / 2.0
    # capacity gap: 0.5*log2((1 + snr_hi) / (1 + snr_lo)), via log1p for small gaps
    gap = 0.5 / _LN2 * np.log1p((snr_hi - snr_lo) / (1.0 + snr_lo))
    t = gap / (zeta * eps)
    damp = np.exp(-t)
    energy_corr = ((0.5 * (1.0 + t) * damp) * wv[None, :]).sum(axis=1)
    cap_corr = ((gap * 0.5 * damp) * wv[None, :]).sum(axis=1)
    energy = eps * (1.0 + float(wy @ energy_corr))
    capacity = c_max(config) - float(wy @ cap_corr)
    return energy, capacity


def _halton(count: int, base: int) -> np.ndarray:
    """First `count` points of the van der Corput sequence in the given base."""
    idx = np.arange(1, count + 1, dtype=np.int64)
    out = np.zeros(count)
    denom = 1.0
    while idx.any():
        denom /= base
        out += denom * (idx % base)
        idx //= base
    return out


def _capacity_policy_qmc(config: SystemConfig, zeta: float, count: int):
    """Quasi-Monte-Carlo version of the policy expectations (Halton, 2-d)."""
    g = config.mean_snr
    eps = config.mean_energy
    snr1 = -0.5 * g * np.log1p(-_halton(count, 2))
    snr2 = -0.5 * g * np.log1p(-_halton(count, 3))
    f1 = 0.5 * np.log2(1.0 + snr1)
    f2 = 0.5 * np.log2(1.0 + snr2)
    t = (f1 - f2) / (zeta * eps)
    damp = np.exp(-np.abs(t))
    p_first = np.where(t >= 0.0, 1.0 - 0.5 * damp, 0.5 * damp)
    cap = f1 * p_first + f2 * (1.0 - p_first)
    energy = eps * (1.0 + 0.5 * (1.0 + np.abs(t)) * damp)
    return energy, cap


def pareto_capacity_point(
    config: SystemConfig,
    zeta: float,
    *,
    energy_only: bool = False,
    method: str = "quadrature",
    tol: float = _DEFAULT_TOL,
) -> TradeoffPoint:
    """One point of the capacity Pareto frontier at weight zeta.

    zeta = 0 is pure best-SNR selection, (eps, c_max); ``energy_only``
    requests the zeta -> infinity limit (1.5*eps, c_min).  Otherwise the
    policy expectations are integrated to absolute tolerance ``tol`` on both
    coordinates.

    Raises:
        ToleranceNotMetError: if the integrator cannot certify ``tol``.
    """
    if config.n_relays != 2:
        raise ValueError("the capacity frontier is defined for exactly 2 relays")
    if math.isnan(zeta) or zeta < 0.0:
        raise ValueError(f"zeta must be >= 0, got {zeta!r}")
    if energy_only or math.isinf(zeta):
        return tradeoff_point(config, 1.5 * config.mean_energy, c_min(config))
    if zeta == 0.0:
        return tradeoff_point(config, config.mean_energy, c_max(config))

    if method == "quadrature":
        prev = None
        for outer, inner in _GL_LADDER:
            cur = _capacity_policy_integrals(config, zeta, outer, inner)
            if prev is not None:
                err = max(abs(cur[0] - prev[0]), abs(cur[1] - prev[1]))
                if err < tol:
                    return tradeoff_point(config, cur[0], cur[1])
            prev = cur
        raise ToleranceNotMetError(
            f"quadrature ladder (max {_GL_LADDER[-1]} nodes) did not reach tol={tol}"
        )
    if method == "qmc":
        energy, cap = _capacity_policy_qmc(config, zeta, _QMC_POINTS)
        half = _QMC_POINTS // 2
        err = max(
            abs(energy.mean() - energy[:half].mean()),
            abs(cap.mean() - cap[:half].mean()),
        )
        if err >= tol:
            raise ToleranceNotMetError(f"QMC half-sequence error {err:.2e} >= tol={tol}")
        return tradeoff_point(config, float(energy.mean()), float(cap.mean()))
    raise ValueError(f"unknown method {method!r}; expected 'quadrature' or 'qmc'")


def _energy_of_zeta(config: SystemConfig, zeta: float, tol: float) -> float:
    """Average energy under the capacity policy, certified on that coordinate only."""
    if zeta == 0.0:
        return config.mean_energy
    prev = None
    for outer, inner in _GL_LADDER:
        cur = _capacity_policy_integrals(config, zeta, outer, inner)[0]
        if prev is not None and abs(cur - prev) < tol:
            return cur
        prev = cur
    raise ToleranceNotMetError(f"energy integral did not reach tol={tol}")


def solve_zeta_for_energy(
    config: SystemConfig,
    energy_target: float,
    metric: Metric,
    *,
    point_tol: float = 2.5e-5,
) -> float:
    """Invert the monotone map zeta -> average energy by bisection.

    The bracket is grown geometrically from [0, 1]; samples gathered while
    growing it are checked for monotonicity (a violation would indicate an
    integrator bug and raises BracketError).  Terminates when the forward
    map is within 1e-4 * mean_energy of the target.
    """
    if config.n_relays != 2:
        raise ValueError("the Pareto policies are defined for exactly 2 relays")
    eps = config.mean_energy
    if metric is Metric.CAPACITY:
        floor = eps

        def forward(z: float) -> float:
            return _energy_of_zeta(config, z, point_tol)

    elif metric is Metric.OUTAGE_INDICATOR:
        floor = pareto_outage_energy_min(config)

        def forward(z: float) -> float:
            return pareto_outage_energy(config, z)

    else:
        raise ValueError(f"unknown metric {metric!r}")

    band = _SOLVER_BAND * eps
    ceiling = 1.5 * eps
    if math.isnan(energy_target) or energy_target < floor - band or energy_target >= ceiling:
        raise ValueError(
            f"energy target {energy_target!r} outside feasible range [{floor}, {ceiling})"
        )
    if energy_target <= floor + band:
        return 0.0

    mono_slack = max(4.0 * point_tol, 1e-9) * eps
    lo, hi = 0.0, 1.0
    prev = floor
    while True:
        f_hi = forward(hi)
        if f_hi < prev - mono_slack:
            raise BracketError(
                f"energy({hi}) = {f_hi} < energy at smaller zeta {prev}; map not monotone"
            )
        if f_hi >= energy_target:
            break
        prev = f_hi
        lo, hi = hi, hi * 2.0
        if hi > _MAX_BRACKET:
            raise BracketError(f"could not bracket energy target {energy_target}")

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = forward(mid)
        if abs(f_mid - energy_target) < band:
            return mid
        if f_mid < energy_target:
            lo = mid
        else:
            hi = mid
    raise ToleranceNotMetError(f"bisection stalled solving for energy {energy_target}")


def capacity_frontier(
    config: SystemConfig,
    deltas=None,
    *,
    method: str = "quadrature",
    tol: float = _DEFAULT_TOL,
) -> FrontierCurve:
    """Capacity Pareto frontier over a grid of tradeoff factors.

    Defaults to 21 uniform points on [0, 1].  Endpoints are exact; interior
    points solve for the weight matching the energy implied by delta.
    """
    if deltas is None:
        deltas = np.linspace(0.0, 1.0, 21)
    points = []
    worst = 0.0
    for delta in deltas:
        delta = float(delta)
        if delta <= 0.0:
            points.append(pareto_capacity_point(config, 0.0, method=method, tol=tol))
        elif delta >= 1.0:
            points.append(pareto_capacity_point(config, 0.0, energy_only=True))
        else:
            target = energy_from_delta(config, delta)
            zeta = solve_zeta_for_energy(config, target, Metric.CAPACITY, point_tol=tol / 4.0)
            points.append(pareto_capacity_point(config, zeta, method=method, tol=tol))
            worst = max(worst, tol)
    return FrontierCurve(points=tuple(points), method=method, tolerance=worst)


def outage_frontier(config: SystemConfig, deltas=None) -> FrontierCurve:
    """No-outage Pareto frontier over [delta_lo, 1], from closed forms only."""
    if config.n_relays != 2:
        raise ValueError("the outage frontier is defined for exactly 2 relays")
    delta_lo, _ = delta_range_outage(config)
    if deltas is None:
        deltas = np.linspace(delta_lo, 1.0, 21)
    floor = pareto_outage_energy_min(config)
    band = _SOLVER_BAND * config.mean_energy
    points = []
    for delta in deltas:
        delta = float(delta)
        if delta < delta_lo - 1e-12:
            raise ValueError(
                f"delta {delta} below the feasible lower bound {delta_lo} of the outage frontier"
            )
        target = energy_from_delta(config, delta)
        if target <= floor + band:
            zeta = 0.0
        elif delta >= 1.0:
            zeta = math.inf
        else:
            zeta = solve_zeta_for_energy(config, target, Metric.OUTAGE_INDICATOR)
        points.append(
            tradeoff_point(config, pareto_outage_energy(config, zeta),
                           pareto_no_outage(config, zeta))
        )
    return FrontierCurve(points=tuple(points), method="closed-form", tolerance=band)
