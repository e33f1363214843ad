"""Analytic capacity, energy, and outage expressions for the selection schemes.

Conventions used throughout:

* ``config.mean_snr`` is the per-hop mean SNR, so each relay's end-to-end
  SNR is exponential with mean ``mean_snr / 2``.
* The feasible average transferred energy spans ``[mean_energy,
  H_N * mean_energy]`` where H_N is the N-th harmonic number; the tradeoff
  factor ``delta`` is the normalized position inside that interval.
* Every curve-versus-energy function is evaluated by composing the
  parameter inversion (mu, tau or nu from energy) with the
  parameter-form expression.  The direct composite expressions are kept as
  separate ``*_composite`` transcriptions and the test suite checks the two
  routes agree, which catches transcription slips in either.
* ``delta = 1`` (equivalently ``tau = inf`` / ``nu = inf``) degenerates to
  pure best-energy selection and is evaluated through that limit.

Functions raise ValueError when an argument leaves its stated domain, and
for tradeoff curves with a single relay (N = 1), where the energy range
collapses and the tradeoff factor is undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .model import SystemConfig
from .specfun import exp_e1_scaled, harmonic

__all__ = [
    "TradeoffPoint",
    "tradeoff_point",
    "c_min",
    "c_max",
    "energy_bounds",
    "delta_from_energy",
    "energy_from_delta",
    "mu_from_energy",
    "c_ts",
    "c_ts_composite",
    "tau_from_energy",
    "energy_tc_of_tau",
    "c_tc_of_tau",
    "c_tc",
    "c_tc_composite",
    "nu_from_energy",
    "energy_wd_of_nu",
    "c_wd_of_nu",
    "c_wd",
    "c_wd_composite",
    "outage_ts",
    "outage_ts_composite",
    "outage_tc_of_tau",
    "outage_tc",
    "outage_tc_composite",
    "outage_wd_of_nu",
    "outage_wd",
    "outage_wd_composite",
    "asymptotic_outage",
    "array_gain",
    "pareto_outage_energy",
    "pareto_no_outage",
    "pareto_outage_energy_min",
    "delta_range_outage",
]

_LN2 = math.log(2.0)
_REL_SLACK = 1e-9
_SINGULAR_TOL = 1e-8
_PERTURB = 1e-6

SchemeName = Literal["ts", "tc", "wd"]


# ---------------------------------------------------------------------------
#  Tradeoff points and boundaries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TradeoffPoint:
    """One (average energy, performance value) point of a tradeoff curve."""

    energy: float
    value: float
    delta: float


def tradeoff_point(config: SystemConfig, energy: float, value: float) -> TradeoffPoint:
    """Build a TradeoffPoint, validating energy bounds and deriving delta."""
    lo, hi = energy_bounds(config)
    slack = _REL_SLACK * hi
    if not (lo - slack <= energy <= hi + slack):
        raise ValueError(f"energy {energy!r} outside feasible range [{lo}, {hi}]")
    clamped = min(max(energy, lo), hi)
    delta = delta_from_energy(config, clamped) if config.n_relays > 1 else 0.0
    return TradeoffPoint(energy=float(energy), value=float(value), delta=delta)


def c_min(config: SystemConfig) -> float:
    """Smallest achievable ergodic capacity: selection ignores the SNRs."""
    g = config.mean_snr
    return exp_e1_scaled(2.0 / g) / (2.0 * _LN2)


def c_max(config: SystemConfig) -> float:
    """Largest achievable ergodic capacity: always pick the best-SNR relay.

    Alternating order-statistics sum over the N exponential end-to-end SNRs.
    """
    g = config.mean_snr
    n = config.n_relays
    total = 0.0
    for j in range(n):
        coeff = n * (-1.0) ** j * math.comb(n - 1, j) / (2.0 * (j + 1) * _LN2)
        total += coeff * exp_e1_scaled(2.0 * (j + 1) / g)
    return total


def energy_bounds(config: SystemConfig) -> tuple[float, float]:
    """(min, max) feasible average transferred energy: (eps, H_N * eps)."""
    eps = config.mean_energy
    return eps, harmonic(config.n_relays) * eps


def _require_multi_relay(config: SystemConfig) -> None:
    if config.n_relays < 2:
        raise ValueError("tradeoff curves need n_relays >= 2 (energy range is degenerate for N=1)")


def _energy_fraction(config: SystemConfig, energy: float) -> float:
    """Normalized position of energy in the feasible range, clamped to [0, 1]."""
    _require_multi_relay(config)
    lo, hi = energy_bounds(config)
    slack = _REL_SLACK * hi
    if math.isnan(energy) or not (lo - slack <= energy <= hi + slack):
        raise ValueError(f"energy {energy!r} outside feasible range [{lo}, {hi}]")
    frac = (energy - lo) / (hi - lo)
    return min(max(frac, 0.0), 1.0)


def _check_delta(delta: float) -> float:
    delta = float(delta)
    if math.isnan(delta) or not (0.0 <= delta <= 1.0):
        raise ValueError(f"tradeoff factor must be in [0, 1], got {delta!r}")
    return delta


def delta_from_energy(config: SystemConfig, energy: float) -> float:
    """Tradeoff factor delta = (energy/eps - 1) / (H_N - 1), in [0, 1]."""
    return _energy_fraction(config, energy)


def energy_from_delta(config: SystemConfig, delta: float) -> float:
    """Average energy achieving tradeoff factor delta."""
    _require_multi_relay(config)
    delta = _check_delta(delta)
    eps = config.mean_energy
    return (1.0 + delta * (harmonic(config.n_relays) - 1.0)) * eps


# ---------------------------------------------------------------------------
#  Time-sharing scheme
# ---------------------------------------------------------------------------


def mu_from_energy(config: SystemConfig, energy: float) -> float:
    """Selection probability mu achieving the target average energy.

    mu = (H_N*eps - energy) / (eps*(H_N - 1)); equals 1 - delta.
    """
    return 1.0 - _energy_fraction(config, energy)


def c_ts(config: SystemConfig, energy: float) -> float:
    """Time-sharing ergodic capacity at the given average energy."""
    mu = mu_from_energy(config, energy)
    return mu * c_max(config) + (1.0 - mu) * c_min(config)


def c_ts_composite(config: SystemConfig, energy: float) -> float:
    """Direct single-expression form of the time-sharing capacity curve."""
    _energy_fraction(config, energy)  # domain check
    g = config.mean_snr
    eps = config.mean_energy
    hn = harmonic(config.n_relays)
    n = config.n_relays
    ssum = 0.0
    for j in range(n):
        ssum += (
            n * (-1.0) ** j * math.comb(n - 1, j)
            * exp_e1_scaled(2.0 * (j + 1) / g)
            / (2.0 * (j + 1) * _LN2)
        )
    num = (energy - eps) * exp_e1_scaled(2.0 / g) + (eps * hn - energy) * math.log(4.0) * ssum
    return num / (2.0 * eps * (hn - 1.0) * _LN2)


# ---------------------------------------------------------------------------
#  Threshold-checking scheme
# ---------------------------------------------------------------------------


def tau_from_energy(config: SystemConfig, energy: float) -> float:
    """SNR threshold tau achieving the target average energy.

    Returns math.inf at the top of the energy range, where the policy
    degenerates to pure best-energy selection.
    """
    rho = _energy_fraction(config, energy)
    if rho >= 1.0:
        return math.inf
    n = config.n_relays
    return -0.5 * config.mean_snr * math.log1p(-rho ** (1.0 / n))


def energy_tc_of_tau(config: SystemConfig, tau: float) -> float:
    """Average transferred energy of threshold checking with threshold tau."""
    _require_multi_relay(config)
    if math.isnan(tau) or tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau!r}")
    q = -math.expm1(-2.0 * tau / config.mean_snr)  # Pr{one SNR < tau}
    eps = config.mean_energy
    hn = harmonic(config.n_relays)
    return eps * (1.0 + (hn - 1.0) * q ** config.n_relays)


def c_tc_of_tau(config: SystemConfig, tau: float) -> float:
    """Threshold-checking ergodic capacity as a function of tau.

    Conditional split: capacity of the best-SNR relay above tau plus the
    capacity of an SNR-independent relay when every SNR is below tau.
    """
    _require_multi_relay(config)
    if math.isnan(tau) or tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau!r}")
    if math.isinf(tau):
        return c_min(config)
    g = config.mean_snr
    n = config.n_relays
    q = -math.expm1(-2.0 * tau / g)
    log1ptau = math.log1p(tau)
    total = 0.0
    for j in range(n):
        coeff = n * (-1.0) ** j * math.comb(n - 1, j) / (2.0 * (j + 1) * _LN2)
        damp = math.exp(-2.0 * (j + 1) * tau / g)
        total += coeff * damp * (exp_e1_scaled(2.0 * (j + 1) * (1.0 + tau) / g) + log1ptau)
    below = (
        exp_e1_scaled(2.0 / g)
        - math.exp(-2.0 * tau / g) * exp_e1_scaled(2.0 * (1.0 + tau) / g)
        - math.exp(-2.0 * tau / g) * log1ptau
    ) / (2.0 * _LN2)
    return total + below * q ** (n - 1)


def c_tc(config: SystemConfig, energy: float) -> float:
    """Threshold-checking ergodic capacity at the given average energy."""
    return c_tc_of_tau(config, tau_from_energy(config, energy))


def c_tc_composite(config: SystemConfig, energy: float) -> float:
    """Direct single-expression form of the threshold-checking curve."""
    rho = _energy_fraction(config, energy)
    if rho >= 1.0:
        return c_min(config)
    g = config.mean_snr
    n = config.n_relays
    q = 1.0 - rho ** (1.0 / n)
    lnq = math.log(q)
    arg1 = 1.0 - 0.5 * g * lnq  # equals 1 + tau
    first = (
        rho ** ((n - 1.0) / n)
        / (2.0 * _LN2)
        * (
            exp_e1_scaled(2.0 / g)
            - q * exp_e1_scaled(2.0 / g - lnq)
            - q * math.log(arg1)
        )
    )
    second = 0.0
    for j in range(n):
        coeff = n * (-1.0) ** j * math.comb(n - 1, j) * q ** (j + 1) / (2.0 * (j + 1) * _LN2)
        second += coeff * (exp_e1_scaled(2.0 * (j + 1) * arg1 / g) + math.log(arg1))
    return first + second


# ---------------------------------------------------------------------------
#  Weighted-difference scheme (two relays)
# ---------------------------------------------------------------------------


def _require_two_relays(config: SystemConfig) -> None:
    if config.n_relays != 2:
        raise ValueError(f"this expression requires n_relays = 2, got {config.n_relays}")


def nu_from_energy(config: SystemConfig, energy: float) -> float:
    """Weighting coefficient nu achieving the target average energy.

    Returns math.inf at the top of the range (pure best-energy selection).
    """
    _require_two_relays(config)
    rho = _energy_fraction(config, energy)
    if rho >= 1.0:
        return math.inf
    eps = config.mean_energy
    span = 3.0 * eps - 2.0 * energy_from_delta(config, rho)
    return 0.5 * config.mean_snr / eps * (math.sqrt(eps / span) - 1.0)


def energy_wd_of_nu(config: SystemConfig, nu: float) -> float:
    """Average transferred energy of the weighted-difference rule."""
    _require_two_relays(config)
    if math.isnan(nu) or nu < 0.0:
        raise ValueError(f"nu must be >= 0, got {nu!r}")
    eps = config.mean_energy
    if math.isinf(nu):
        return 1.5 * eps
    g = config.mean_snr
    ratio = g / (g + 2.0 * nu * eps)
    return 0.5 * eps * (3.0 - ratio * ratio)


def c_wd_of_nu(config: SystemConfig, nu: float) -> float:
    """Weighted-difference ergodic capacity as a function of nu.

    The expression has a removable 0/0 singularity where
    2 * nu * mean_energy == mean_snr; it is evaluated there by averaging
    two one-sided perturbations of nu.
    """
    _require_two_relays(config)
    if math.isnan(nu) or nu < 0.0:
        raise ValueError(f"nu must be >= 0, got {nu!r}")
    if math.isinf(nu):
        return c_min(config)
    g = config.mean_snr
    eps = config.mean_energy
    if nu > 0.0 and abs(g - 2.0 * nu * eps) < _SINGULAR_TOL * g:
        lo = c_wd_of_nu(config, nu * (1.0 - _PERTURB))
        hi = c_wd_of_nu(config, nu * (1.0 + _PERTURB))
        return 0.5 * (lo + hi)
    u = 2.0 * nu * eps / g
    x2 = exp_e1_scaled(2.0 / g)
    x4 = exp_e1_scaled(4.0 / g)
    cross = u * u * exp_e1_scaled(2.0 / g + 2.0 / (g * u)) if u > 0.0 else 0.0
    return (2.0 * (1.0 - u * u) * x2 + cross - x4) / (2.0 * (1.0 - u * u) * _LN2)


def c_wd(config: SystemConfig, energy: float) -> float:
    """Weighted-difference ergodic capacity at the given average energy."""
    return c_wd_of_nu(config, nu_from_energy(config, energy))


def c_wd_composite(config: SystemConfig, energy: float) -> float:
    """Direct single-expression form of the weighted-difference curve."""
    _require_two_relays(config)
    rho = _energy_fraction(config, energy)
    if rho >= 1.0:
        return c_min(config)
    g = config.mean_snr
    eps = config.mean_energy
    clamped = energy_from_delta(config, rho)
    t = 1.0 - math.sqrt(eps / (3.0 * eps - 2.0 * clamped))  # <= 0
    if abs(1.0 - t * t) < _SINGULAR_TOL:
        lo = _c_wd_from_t(config, t * (1.0 - _PERTURB))
        hi = _c_wd_from_t(config, t * (1.0 + _PERTURB))
        return 0.5 * (lo + hi)
    return _c_wd_from_t(config, t)


def _c_wd_from_t(config: SystemConfig, t: float) -> float:
    g = config.mean_snr
    x2 = exp_e1_scaled(2.0 / g)
    x4 = exp_e1_scaled(4.0 / g)
    if t == 0.0:
        cross = 0.0
    else:
        cross = t * t * exp_e1_scaled(2.0 * (1.0 - 1.0 / t) / g)
    return (2.0 * (1.0 - t * t) * x2 + cross - x4) / (2.0 * (1.0 - t * t) * _LN2)


# ---------------------------------------------------------------------------
#  Outage probabilities
# ---------------------------------------------------------------------------


def _single_outage(config: SystemConfig) -> float:
    """Pr{one relay's end-to-end SNR < threshold} = 1 - exp(-2*th/gbar)."""
    return -math.expm1(-2.0 * config.outage_threshold / config.mean_snr)


def outage_ts(config: SystemConfig, delta: float) -> float:
    """Time-sharing outage probability at tradeoff factor delta."""
    _require_multi_relay(config)
    delta = _check_delta(delta)
    p1 = _single_outage(config)
    return (1.0 - delta) * p1 ** config.n_relays + delta * p1


def outage_ts_composite(config: SystemConfig, energy: float) -> float:
    """Direct energy-parameterized form of the time-sharing outage curve."""
    _energy_fraction(config, energy)  # domain check
    g = config.mean_snr
    gth = config.outage_threshold
    eps = config.mean_energy
    hn = harmonic(config.n_relays)
    ratio = energy / eps
    a = math.exp(-2.0 * gth / g)
    inner = ratio + (hn - ratio) * (1.0 - a) ** config.n_relays - 1.0
    return (a * (1.0 - ratio) + inner) / (hn - 1.0)


def outage_tc_of_tau(config: SystemConfig, tau: float) -> float:
    """Threshold-checking outage probability as a function of tau."""
    _require_multi_relay(config)
    if math.isnan(tau) or tau < 0.0:
        raise ValueError(f"tau must be >= 0, got {tau!r}")
    p1 = _single_outage(config)
    if tau <= config.outage_threshold:
        return p1 ** config.n_relays
    q = -math.expm1(-2.0 * tau / config.mean_snr)
    return p1 * q ** (config.n_relays - 1)


def outage_tc(config: SystemConfig, delta: float) -> float:
    """Threshold-checking outage probability at tradeoff factor delta."""
    _require_multi_relay(config)
    delta = _check_delta(delta)
    n = config.n_relays
    p1 = _single_outage(config)
    if delta <= p1 ** n:
        return p1 ** n
    return p1 * delta ** ((n - 1.0) / n)


def outage_tc_composite(config: SystemConfig, energy: float) -> float:
    """Direct energy-parameterized form of the threshold-checking outage curve."""
    rho = _energy_fraction(config, energy)
    n = config.n_relays
    p1 = _single_outage(config)
    if rho <= p1 ** n:
        return p1 ** n
    return p1 * rho ** ((n - 1.0) / n)


def outage_wd_of_nu(config: SystemConfig, nu: float) -> float:
    """Weighted-difference outage probability as a function of nu.

    Shares the removable singularity of the capacity expression at
    2 * nu * mean_energy == mean_snr and is perturbed there the same way.
    """
    _require_two_relays(config)
    if math.isnan(nu) or nu < 0.0:
        raise ValueError(f"nu must be >= 0, got {nu!r}")
    a = math.exp(-2.0 * config.outage_threshold / config.mean_snr)
    if math.isinf(nu):
        return 1.0 - a
    g = config.mean_snr
    eps = config.mean_energy
    if nu > 0.0 and abs(g - 2.0 * nu * eps) < _SINGULAR_TOL * g:
        lo = outage_wd_of_nu(config, nu * (1.0 - _PERTURB))
        hi = outage_wd_of_nu(config, nu * (1.0 + _PERTURB))
        return 0.5 * (lo + hi)
    u = 2.0 * nu * eps / g
    if u == 0.0:
        return (1.0 - a) ** 2
    flip = a ** (1.0 / u)  # exp(-threshold / (nu * eps))
    return ((1.0 - a) ** 2 + u * u * (a * (2.0 - flip) - 1.0)) / (1.0 - u * u)


def outage_wd(config: SystemConfig, delta: float) -> float:
    """Weighted-difference outage probability at tradeoff factor delta."""
    _require_two_relays(config)
    delta = _check_delta(delta)
    return outage_wd_of_nu(config, nu_from_energy(config, energy_from_delta(config, delta)))


def outage_wd_composite(config: SystemConfig, energy: float) -> float:
    """Direct energy-parameterized form of the weighted-difference outage curve."""
    _require_two_relays(config)
    rho = _energy_fraction(config, energy)
    a = math.exp(-2.0 * config.outage_threshold / config.mean_snr)
    if rho >= 1.0:
        return 1.0 - a
    eps = config.mean_energy
    clamped = energy_from_delta(config, rho)
    w = math.sqrt(eps / (3.0 * eps - 2.0 * clamped))  # >= 1
    if w == 1.0:
        return (1.0 - a) ** 2
    tm = 1.0 - w  # <= 0
    if abs(1.0 - tm * tm) < _SINGULAR_TOL:
        mid = 0.5 * (
            outage_wd_composite(config, clamped - _PERTURB * eps)
            + outage_wd_composite(config, clamped + _PERTURB * eps)
        )
        return mid
    inner = math.exp(2.0 * config.outage_threshold / (config.mean_snr * tm))
    return ((1.0 - a) ** 2 + tm * tm * (a * (2.0 - inner) - 1.0)) / (1.0 - tm * tm)


# ---------------------------------------------------------------------------
#  High-SNR asymptotics
# ---------------------------------------------------------------------------


def _asymptotic_factor(scheme: SchemeName, config: SystemConfig, delta: float) -> float:
    delta = _check_delta(delta)
    if scheme == "ts":
        return delta
    if scheme == "tc":
        n = config.n_relays
        return delta ** ((n - 1.0) / n)
    if scheme == "wd":
        _require_two_relays(config)
        return 1.0 - math.sqrt(1.0 - delta)
    raise ValueError(f"unknown scheme {scheme!r}; expected 'ts', 'tc' or 'wd'")


def asymptotic_outage(scheme: SchemeName, config: SystemConfig, delta: float) -> float:
    """Leading-order high-SNR outage probability of a scheme at factor delta."""
    _require_multi_relay(config)
    factor = _asymptotic_factor(scheme, config, delta)
    return 2.0 * config.outage_threshold / config.mean_snr * factor


def array_gain(scheme: SchemeName, config: SystemConfig, delta: float) -> float:
    """Array gain G_a of the unit-diversity high-SNR outage law.

    Defined through P_out = (G_a * mean_snr / threshold)^(-1); diverges as
    delta -> 0 where the diversity order is recovered instead.
    """
    _require_multi_relay(config)
    factor = _asymptotic_factor(scheme, config, delta)
    if factor == 0.0:
        return math.inf
    return 1.0 / (2.0 * factor)


# ---------------------------------------------------------------------------
#  Pareto-optimal outage policy (two relays)
# ---------------------------------------------------------------------------


def _check_zeta(zeta: float) -> float:
    zeta = float(zeta)
    if math.isnan(zeta) or zeta < 0.0:
        raise ValueError(f"zeta must be >= 0, got {zeta!r}")
    return zeta


def pareto_outage_energy(config: SystemConfig, zeta: float) -> float:
    """Average transferred energy of the outage-metric Pareto policy.

    zeta = 0 and zeta = inf return the respective analytic limits (the
    policy's feasible energy range is [pareto_outage_energy_min, 1.5*eps]).
    """
    _require_two_relays(config)
    zeta = _check_zeta(zeta)
    eps = config.mean_energy
    a = math.exp(-2.0 * config.outage_threshold / config.mean_snr)
    t = 1.0 / (zeta * eps) if zeta > 0.0 else math.inf
    # (1+t) exp(-t) underflows before t overflows; cut off explicitly
    decay = (1.0 + t) * math.exp(-t) if t < 745.0 else 0.0
    return eps * ((a * a - a + 1.5) + a * (1.0 - a) * decay)


def pareto_no_outage(config: SystemConfig, zeta: float) -> float:
    """No-outage probability of the outage-metric Pareto policy."""
    _require_two_relays(config)
    zeta = _check_zeta(zeta)
    a = math.exp(-2.0 * config.outage_threshold / config.mean_snr)
    if zeta == 0.0:
        decay = 0.0
    else:
        decay = math.exp(-1.0 / (zeta * config.mean_energy))
    return a * (2.0 - a) - a * (1.0 - a) * decay


def pareto_outage_energy_min(config: SystemConfig) -> float:
    """Infimum of the Pareto policy's energy range (the zeta -> 0+ limit)."""
    _require_two_relays(config)
    a = math.exp(-2.0 * config.outage_threshold / config.mean_snr)
    return config.mean_energy * (1.5 + a * a - a)


def delta_range_outage(config: SystemConfig) -> tuple[float, float]:
    """Tradeoff-factor interval covered by the outage-metric Pareto policy."""
    _require_two_relays(config)
    a = math.exp(-2.0 * config.outage_threshold / config.mean_snr)
    return 1.0 - 2.0 * (a - a * a), 1.0
