import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, stats

from qsteg import thermal
from qsteg.rng import stream

n_bars = st.floats(0.05, 8.0)
priors = st.floats(0.05, 0.95)


def rayleigh_poisson_oracle(n_bar, k, lo=0.0, hi=np.inf):
    # independent route: integrate the Poisson pmf against the Rayleigh density
    pdf = lambda r: 2.0 / n_bar * r * math.exp(-r * r / n_bar)
    val, _ = integrate.quad(lambda r: pdf(r) * stats.poisson.pmf(k, r * r), lo, hi, epsabs=1e-14, epsrel=1e-12)
    return val


def test_frozen_radii():
    assert thermal.rayleigh_median(1.0) == pytest.approx(0.8325546111576977, abs=1e-15)
    assert thermal.split_radius(2.0, 0.25) == pytest.approx(1.6651092223153954, abs=1e-15)
    assert thermal.split_radius(3.0, 0.5) == pytest.approx(thermal.rayleigh_median(3.0), abs=1e-15)


@pytest.mark.parametrize("n_bar", [0.3, 1.0, 4.0])
def test_thermal_is_rayleigh_average_of_poisson(n_bar):
    th = thermal.thermal_fock_distribution(thermal.ThermalModel(n_bar, 12, tail_eps=1.0)).probs
    want = [rayleigh_poisson_oracle(n_bar, k) for k in range(12)]
    np.testing.assert_allclose(th, want, atol=1e-12)


@given(n_bars)
def test_thermal_normalized_with_mean_n_bar(n_bar):
    s = thermal.thermal_state(n_bar)
    assert math.fsum(s.probs) == pytest.approx(1.0, abs=1e-11)
    assert s.mean_photon_number() == pytest.approx(n_bar, rel=1e-9, abs=1e-10)


@given(n_bars, st.sampled_from([1e-6, 1e-9, 1e-12]))
def test_thermal_cutoff_is_minimal(n_bar, eps):
    c = thermal.thermal_cutoff(n_bar, eps)
    x = n_bar / (n_bar + 1)
    assert x**c < eps
    assert c == 1 or x ** (c - 1) >= eps


@given(st.floats(0.01, 60.0), st.sampled_from([1e-6, 1e-12]))
def test_poisson_cutoff_is_minimal(lam, eps):
    c = thermal.poisson_cutoff(lam, eps)
    assert stats.poisson.sf(c - 1, lam) < eps
    assert c == 1 or stats.poisson.sf(c - 2, lam) >= eps


def test_state_validation():
    with pytest.raises(thermal.TruncationError):
        thermal.thermal_state(5.0, 10)
    with pytest.raises(ValueError):
        thermal.NumberDiagonalState([0.5, 0.6])
    with pytest.raises(ValueError):
        thermal.NumberDiagonalState([1.2, -0.2])
    with pytest.raises(ValueError):
        thermal.ThermalModel(-1.0)


def test_vacuum_and_fock():
    assert thermal.vacuum(3).probs.tolist() == [1.0, 0.0, 0.0]
    assert thermal.fock_state(2, 4).mean_photon_number() == 2.0
    s = thermal.thermal_state(0.0)
    assert s.probs[0] == 1.0


@given(st.floats(0.0, 6.0))
def test_coherent_is_poisson(r):
    p = thermal.coherent_fock_distribution(r)
    np.testing.assert_allclose(p.probs, stats.poisson.pmf(np.arange(p.cutoff), r * r), atol=1e-14)


@given(n_bars, priors)
def test_split_components_recompose_thermal(n_bar, f):
    th = thermal.thermal_state(n_bar, thermal.thermal_cutoff(n_bar, 1e-14))
    p0 = thermal.split_component_state(n_bar, f, 0, th.cutoff).probs
    p1 = thermal.split_component_state(n_bar, f, 1, th.cutoff).probs
    np.testing.assert_allclose((1 - f) * p0 + f * p1, th.probs, atol=1e-12)


@pytest.mark.parametrize("n_bar,f", [(0.5, 0.5), (2.0, 0.3), (4.0, 0.8)])
def test_split_closed_form_matches_quadrature(n_bar, f):
    for bit in (0, 1):
        closed = thermal.split_component_state(n_bar, f, bit).probs
        quad = thermal.split_component_state(n_bar, f, bit, closed.size, method="quad").probs
        np.testing.assert_allclose(closed, quad, atol=1e-9)


def test_split_closed_form_matches_external_oracle():
    n_bar, f = 1.0, 0.5
    rf = thermal.split_radius(n_bar, f)
    p0 = thermal.split_component_state(n_bar, f, 0).probs[:8]
    p1 = thermal.split_component_state(n_bar, f, 1).probs[:8]
    np.testing.assert_allclose(p0, [rayleigh_poisson_oracle(n_bar, k, 0, rf) / (1 - f) for k in range(8)], atol=1e-12)
    np.testing.assert_allclose(p1, [rayleigh_poisson_oracle(n_bar, k, rf) / f for k in range(8)], atol=1e-12)


@pytest.mark.parametrize("support", ["full", "left", "right", "right_flipped"])
def test_sampler_matches_law(support):
    law = thermal.RadialLaw(2.0, support, 0.3)
    r = thermal.sample_radius(law, stream(11), 20000)
    x = law.sign * r
    F = lambda v: 1.0 - np.exp(-np.square(v) / law.n_bar)
    a = F(law.r_split)
    if support == "full":
        cdf = F
    elif support == "left":
        cdf = lambda v: F(v) / a
    else:
        cdf = lambda v: (F(v) - a) / (1 - a)
    assert stats.kstest(x, cdf).pvalue > 1e-3
    if support == "left":
        assert x.max() < law.r_split
    elif support != "full":
        assert x.min() >= law.r_split


@given(n_bars, priors)
def test_law_expectation_is_normalized(n_bar, f):
    for sup in ("full", "left", "right", "right_flipped"):
        assert thermal.RadialLaw(n_bar, sup, f).expect(lambda r: 1.0) == pytest.approx(1.0, abs=1e-10)


def test_law_mean_full():
    # E[r] = sqrt(pi n_bar) / 2 for the Rayleigh law with scale^2 = n_bar/2
    law = thermal.RadialLaw(3.0)
    assert law.expect(lambda r: r) == pytest.approx(math.sqrt(math.pi * 3.0) / 2, abs=1e-11)


def test_discretized_circle_structure():
    L, cut = 4, 10
    rho = thermal.discretized_circle_matrix([0.4, 1.1], L, cut)
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)
    n = np.arange(cut)
    off = (n[:, None] - n[None, :]) % L != 0
    assert np.max(np.abs(rho[off])) < 1e-15
    assert np.min(np.linalg.eigvalsh(rho)) > -1e-14
    np.testing.assert_allclose(
        np.real(np.diag(rho)), thermal.phase_averaged_mixture([0.4, 1.1], cut, tail_eps=1.0).probs, atol=1e-15
    )


prob_vectors = st.lists(st.floats(0.0, 1.0), min_size=2, max_size=12).filter(lambda v: sum(v) > 1e-3)


@given(prob_vectors, prob_vectors)
def test_fuchs_van_de_graaf(a, b):
    n = min(len(a), len(b))
    p = thermal.NumberDiagonalState(np.array(a[:n]) / sum(a[:n]), tail_eps=1.0) if sum(a[:n]) > 0 else None
    q = thermal.NumberDiagonalState(np.array(b[:n]) / sum(b[:n]), tail_eps=1.0) if sum(b[:n]) > 0 else None
    if p is None or q is None:
        return
    F = thermal.fidelity_diagonal(p, q)
    T = thermal.trace_distance_diagonal(p, q)
    assert 0.0 <= T <= 1.0 + 1e-12
    assert 1 - math.sqrt(F) <= T + 1e-12
    assert T <= math.sqrt(max(0.0, 1 - F)) + 1e-12
    assert thermal.fidelity_diagonal(p, p) == pytest.approx(1.0, abs=1e-12)


def test_metric_cutoff_mismatch():
    with pytest.raises(ValueError):
        thermal.fidelity_diagonal(thermal.vacuum(2), thermal.vacuum(3))


def test_mc_fidelity_deterministic_and_above_bound():
    a = thermal.sqrt_fidelity_ensemble(1.0, 10, 50, seed=3)
    b = thermal.sqrt_fidelity_ensemble(1.0, 10, 50, seed=3)
    assert np.array_equal(a, b)
    mean, se = thermal.mc_fidelity_bound(1.0, 10, 200, seed=3)
    assert mean + 3 * se >= 1 - 1.0 / 20
    assert np.all(a <= 1.0 + 1e-12)


@given(st.floats(0.05, 25.0), priors)
def test_default_split_cutoff_is_accepted(n_bar, f):
    for bit in (0, 1):
        s = thermal.split_component_state(n_bar, f, bit)
        assert s.cutoff == thermal.split_cutoff(n_bar, f)
