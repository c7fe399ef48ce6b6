import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsteg import homodyne as hd
from qsteg import sweeps
from qsteg.rates import binary_entropy
from qsteg.sweeps import Objective, Scheme


@pytest.mark.parametrize("n_bar,f", [(0.5, 0.5), (2.0, 0.3), (4.0, 0.7)])
def test_gauss_rule_matches_adaptive_quadrature(n_bar, f):
    beta = hd.default_beta(n_bar)
    for law in hd.bit_laws(n_bar, f):
        rule = sweeps._gauss_rule(law)
        for rc in (-0.2, 0.3, 0.9):
            m_c = hd.rc_to_mc(rc, n_bar, beta)
            fast = float(sweeps._rule_decide_zero(rule, beta, m_c)[0])
            assert fast == pytest.approx(hd.mixture_decide_zero(law, beta, m_c), abs=1e-10)


def test_distribution_homodyne_is_optimal_threshold():
    n_bar, f, beta = 1.0, 0.5, 100.0
    probs = sweeps.distribution_homodyne_probs(n_bar, f, beta)
    best = hd.mixture_perr(n_bar, f, beta, hd.rc_to_mc(hd.optimal_mixture_rc(n_bar, f, beta), n_bar, beta))
    assert probs.p_err == pytest.approx(best, abs=1e-9)


def test_pairs_are_continuous_in_f():
    a0, a1 = sweeps.sample_pairs(1.0, 0.5, 16, seed=3)
    b0, b1 = sweeps.sample_pairs(1.0, 0.5 + 1e-6, 16, seed=3)
    assert np.max(np.abs(a0 - b0)) < 1e-4 and np.max(np.abs(a1 - b1)) < 1e-4
    assert np.all(a0 >= 0) and np.all(a1 <= 0)


@settings(max_examples=15)
@given(st.floats(0.1, 5.0), st.floats(0.1, 0.9))
def test_reports_respect_bounds(n_bar, f):
    for scheme in (Scheme.DISTRIBUTION_HOMODYNE, Scheme.PAIRWISE_HOMODYNE, Scheme.PAIRWISE_HELSTROM):
        rep = sweeps.scheme_report(scheme, n_bar, f, seed=1)
        assert rep.K >= 0.0
        assert 0.0 <= rep.R <= binary_entropy(f) + 1e-12
        assert 0.0 <= rep.p_err <= 0.5 + 1e-12


@settings(max_examples=10)
@given(st.floats(0.1, 5.0), st.floats(0.1, 0.9))
def test_helstrom_beats_homodyne_pairwise(n_bar, f):
    hel = sweeps.scheme_report(Scheme.PAIRWISE_HELSTROM, n_bar, f, seed=2)
    hom = sweeps.scheme_report(Scheme.PAIRWISE_HOMODYNE, n_bar, f, seed=2)
    assert hel.p_err <= hom.p_err + 1e-12


def test_fixed_schemes():
    fock = sweeps.scheme_report(Scheme.FOCK_CAPACITY, 1.0)
    assert fock.R == 1.0 and fock.K == 0.0
    va = sweeps.scheme_report(Scheme.VERTICAL_ANGLE, 1.0)
    assert va.p_err == pytest.approx(0.5 * (1 - math.sqrt(0.5)), abs=1e-15)
    nk = sweeps.scheme_report("distribution_no_key", 1.0)
    assert nk.K == 0.0


def test_sweep_matched_prior_and_determinism():
    grid = [0.5, 1.0]
    a = sweeps.scheme_sweep(Scheme.PAIRWISE_HELSTROM, grid, "matched", seed=4)
    b = sweeps.scheme_sweep(Scheme.PAIRWISE_HELSTROM, grid, "matched", seed=4)
    assert a == b
    direct = sweeps.scheme_report(Scheme.PAIRWISE_HELSTROM, 1.0, 0.5, seed=4, key=(1,))
    assert a[1] == direct


def test_optimize_f():
    f_star, rep = sweeps.optimize_f(5.0, Objective.RATE, scheme=Scheme.PAIRWISE_HELSTROM, seed=0)
    assert 0.4 < f_star < 0.6
    grid_best = max(sweeps.scheme_report(Scheme.PAIRWISE_HELSTROM, 5.0, f, seed=0).R for f in np.linspace(0.1, 0.9, 9))
    assert rep.R >= grid_best - 1e-12
    f_k, rep_k = sweeps.optimize_f(2.0, "rate_per_key", f_grid=[0.1, 0.3, 0.5], refine=False)
    assert f_k in (0.1, 0.3, 0.5) and rep_k.ratio > 0
