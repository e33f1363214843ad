import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relayswipt.model import ChannelFrame, SystemConfig, frames_from_uniforms
from relayswipt.schemes import (
    Metric,
    ParetoOptimal,
    ThresholdChecking,
    TimeSharing,
    WeightedDifference,
    argmax_energy,
    argmax_snr,
    select,
    select_indices,
    select_pareto,
    select_threshold,
    select_time_sharing,
    select_weighted_difference,
    validate_scheme,
)
from relayswipt.simulate import frame_uniforms


def frame(snr, energy):
    return ChannelFrame(snr=np.asarray(snr, float), energy=np.asarray(energy, float))


def test_param_validation():
    with pytest.raises(ValueError):
        TimeSharing(mu=1.5)
    with pytest.raises(ValueError):
        TimeSharing(mu=-0.1)
    with pytest.raises(ValueError):
        ThresholdChecking(tau=-1.0)
    with pytest.raises(ValueError):
        WeightedDifference(nu=-2.0)
    with pytest.raises(ValueError):
        ParetoOptimal(zeta=-1.0)
    with pytest.raises(ValueError):
        ParetoOptimal(zeta=1.0, metric="capacity")  # must be a Metric
    # boundary parameters are allowed
    TimeSharing(mu=0.0)
    TimeSharing(mu=1.0)
    ThresholdChecking(tau=0.0)
    ThresholdChecking(tau=math.inf)
    WeightedDifference(nu=0.0)
    ParetoOptimal(zeta=0.0, metric=Metric.OUTAGE_INDICATOR)


def test_two_relay_schemes_reject_other_sizes():
    f3 = frame([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        select_weighted_difference(f3, 1.0)
    with pytest.raises(ValueError):
        select_pareto(f3, 1.0, Metric.CAPACITY, 1.0)
    with pytest.raises(ValueError):
        validate_scheme(WeightedDifference(nu=1.0), 3)
    with pytest.raises(ValueError):
        validate_scheme(ParetoOptimal(zeta=1.0), 1)


def test_argmax_examples():
    assert argmax_snr(frame([1.0, 3.0, 2.0], [0.0, 0.0, 0.0])) == 1
    assert argmax_energy(frame([0.0, 0.0], [4.0, 4.0])) == 0  # tie -> lowest index
    assert argmax_snr(frame([7.0], [1.0])) == 0


def test_time_sharing_examples():
    f = frame([1.0, 3.0], [5.0, 2.0])
    assert select_time_sharing(f, mu=0.5, coin=0.0) == 1  # best SNR
    assert select_time_sharing(f, mu=0.5, coin=0.9) == 0  # best energy
    for coin in (0.0, 0.5, 0.999999):
        assert select_time_sharing(f, mu=1.0, coin=coin) == 1


def test_threshold_examples():
    f = frame([1.0, 3.0], [5.0, 2.0])
    assert select_threshold(f, tau=2.0) == 1
    assert select_threshold(f, tau=4.0) == 0
    assert select_threshold(f, tau=0.0) == 1
    assert select_threshold(f, tau=math.inf) == 0


def test_weighted_difference_examples():
    dominant = frame([3.0, 1.0], [5.0, 2.0])
    for nu in (0.0, 1.0, 10.0):
        assert select_weighted_difference(dominant, nu) == 0
    f = frame([1.0, 3.0], [5.0, 2.0])
    assert select_weighted_difference(f, nu=0.0) == 1  # reduces to max-SNR
    assert select_weighted_difference(f, nu=1.0) == 0  # -2 > 1*(-3)
    # exact tie goes to the first relay
    tied = frame([1.0, 3.0], [4.0, 2.0])  # lhs = -2, rhs = nu*(-2)
    assert select_weighted_difference(tied, nu=1.0) == 0


def test_pareto_examples():
    # zero weight with the capacity metric is max-SNR selection
    f = frame([1.0, 3.0], [5.0, 2.0])
    assert select_pareto(f, 0.0, Metric.CAPACITY, 1.0) == argmax_snr(f)
    # both relays above threshold: metric tie broken by energy
    f = frame([2.0, 3.0], [1.0, 4.0])
    assert select_pareto(f, 0.1, Metric.OUTAGE_INDICATOR, 1.0) == 1
    # one relay above threshold and worth its energy deficit
    f = frame([2.0, 0.5], [1.0, 4.0])
    assert select_pareto(f, 0.1, Metric.OUTAGE_INDICATOR, 1.0) == 0
    # exact tie (equal metric, equal energy) goes to the first relay
    f = frame([2.0, 3.0], [2.0, 2.0])
    assert select_pareto(f, 0.5, Metric.OUTAGE_INDICATOR, 1.0) == 0


@given(
    st.lists(st.floats(0.01, 100.0), min_size=2, max_size=6),
    st.floats(1e-3, 1e3),
)
@settings(max_examples=200, deadline=None)
def test_argmax_scale_invariance(values, scale):
    f1 = frame(values, values)
    f2 = frame([v * scale for v in values], values)
    assert argmax_snr(f1) == argmax_snr(f2)


@given(
    st.integers(0, 1),
    st.floats(0.0, 0.999),
    st.floats(0.0, 1.0),
    st.floats(0.0, 100.0),
    st.floats(0.0, 50.0),
)
@settings(max_examples=300, deadline=None)
def test_monotone_dominance(winner, coin, mu, tau, weight):
    """A relay that is strictly best in SNR and energy is always selected."""
    snr = [1.0, 1.0]
    energy = [1.0, 1.0]
    snr[winner] = 2.0
    energy[winner] = 2.0
    f = frame(snr, energy)
    assert select_time_sharing(f, mu, coin) == winner
    assert select_threshold(f, tau) == winner
    assert select_weighted_difference(f, weight) == winner
    assert select_pareto(f, weight, Metric.CAPACITY, 1.5) == winner
    assert select_pareto(f, weight, Metric.OUTAGE_INDICATOR, 1.5) == winner


def _random_batch(seed, count):
    cfg = SystemConfig(2, 10.0, 1.0, 1.0)
    u = frame_uniforms(seed, 2, 0, count)
    return frames_from_uniforms(cfg, u)


def test_zero_weight_policies_reduce_to_max_snr():
    snr, energy, _ = _random_batch(7, 1000)
    kappa = np.argmax(snr, axis=1)
    wd = select_indices(WeightedDifference(nu=0.0), snr, energy)
    po = select_indices(ParetoOptimal(zeta=0.0, metric=Metric.CAPACITY), snr, energy)
    assert np.array_equal(wd, kappa)
    assert np.array_equal(po, kappa)


def test_vectorized_matches_scalar_on_random_frames():
    snr, energy, coins = _random_batch(11, 2000)
    schemes = [
        TimeSharing(mu=0.3),
        ThresholdChecking(tau=4.0),
        WeightedDifference(nu=0.7),
        WeightedDifference(nu=0.0, energy_only=True),
        ParetoOptimal(zeta=0.4, metric=Metric.CAPACITY),
        ParetoOptimal(zeta=0.4, metric=Metric.OUTAGE_INDICATOR),
        ParetoOptimal(zeta=0.0, metric=Metric.CAPACITY, energy_only=True),
    ]
    for scheme in schemes:
        vec = select_indices(scheme, snr, energy, coins, outage_threshold=1.0)
        for k in range(0, 2000, 97):
            f = ChannelFrame(snr=snr[k], energy=energy[k])
            assert vec[k] == select(f, scheme, coin=coins[k], outage_threshold=1.0)


def test_pareto_outage_agrees_with_case_enumeration():
    """The decision rule must match the explicit no-outage case analysis."""
    cfg = SystemConfig(2, 10.0, 1.0, 1.0)
    u = frame_uniforms(99, 2, 0, 1_000_000)
    snr, energy, _ = frames_from_uniforms(cfg, u)
    zeta = 0.4
    th = 1.0
    rule = select_indices(
        ParetoOptimal(zeta=zeta, metric=Metric.OUTAGE_INDICATOR), snr, energy,
        outage_threshold=th,
    )
    above1 = snr[:, 0] > th
    above2 = snr[:, 1] > th
    prefer_energy = (energy[:, 1] > energy[:, 0]).astype(np.intp)
    enumerated = np.where(
        above1 == above2,
        prefer_energy,  # no outage difference: take the larger energy
        np.where(
            above1,
            # relay 0 avoids outage; keep it unless relay 1 pays > 1/zeta more
            (energy[:, 1] > energy[:, 0] + 1.0 / zeta).astype(np.intp),
            1 - (energy[:, 0] > energy[:, 1] + 1.0 / zeta).astype(np.intp),
        ),
    )
    assert np.array_equal(rule, enumerated)
