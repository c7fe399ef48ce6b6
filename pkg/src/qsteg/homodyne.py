"""Gaussian model of balanced homodyne detection.

The signal |r> (real amplitude, theta = 0) is mixed with a strong local
oscillator of amplitude beta and the photocount difference m = n_c - n_d is
recorded. For a coherent input m is modelled as Normal(2 beta r, beta**2 + r**2).
Bit-0 amplitudes come from the inner part of the Rayleigh law, bit-1
amplitudes from the outer part mirrored to negative r. The receiver decides 0
iff m >= m_c.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import optimize, special

from .rng import stream
from .thermal import RadialLaw, sample_radius


@dataclass(frozen=True)
class HomodyneModel:
    beta: float
    m_c: float = 0.0

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")


@dataclass(frozen=True)
class SimConfig:
    samples: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


def default_beta(n_bar: float) -> float:
    return 100.0 * math.sqrt(max(n_bar, 1.0))


def bit_laws(n_bar: float, f: float) -> tuple[RadialLaw, RadialLaw]:
    return RadialLaw(n_bar, "left", f), RadialLaw(n_bar, "right_flipped", f)


def outcome_law(r: float, beta: float) -> tuple[float, float]:
    """(mean, variance) of m for the coherent input |r>."""
    if not beta > 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    return 2.0 * beta * r, beta * beta + r * r


def radial_moments(law: RadialLaw) -> tuple[float, float]:
    """(E[r], E[r**2]) under the conditional law."""
    return law.expect(lambda r: r), law.expect(lambda r: r * r)


def ensemble_stats(law: RadialLaw, beta: float) -> tuple[float, float]:
    """Mean and variance of m when r is drawn from ``law``.

    By total variance, Var(m) = 4 beta^2 Var(r) + beta^2 + E[r^2].
    """
    r1, r2 = radial_moments(law)
    return 2.0 * beta * r1, 4.0 * beta * beta * (r2 - r1 * r1) + beta * beta + r2


def prob_decide_zero(r, beta: float, m_c: float):
    """P(m >= m_c) for input |r>."""
    mean, var = 2.0 * beta * np.asarray(r, dtype=float), beta * beta + np.asarray(r, dtype=float) ** 2
    return 0.5 * special.erfc((m_c - mean) / np.sqrt(2.0 * var))


def closed_form_perr_pair(r0: float, r1: float, beta: float, m_c: float) -> float:
    """Equal-prior error probability for the pair r0 > r1 with threshold m_c."""
    if not r0 > r1:
        raise ValueError(f"need r0 > r1, got {r0}, {r1}")
    e0 = special.erf((m_c - 2.0 * beta * r0) / math.sqrt(2.0 * (beta * beta + r0 * r0)))
    e1 = special.erf((m_c - 2.0 * beta * r1) / math.sqrt(2.0 * (beta * beta + r1 * r1)))
    return 0.25 * (2.0 + e0 - e1)


def closed_form_perr_weighted(r0: float, r1: float, beta: float, m_c: float, f: float) -> float:
    """(1 - f) P(m < m_c | r0) + f P(m >= m_c | r1)."""
    return float((1.0 - f) * (1.0 - prob_decide_zero(r0, beta, m_c)) + f * prob_decide_zero(r1, beta, m_c))


def weighted_cutoff(r0: float, r1: float, beta: float, f: float) -> float:
    """Threshold balancing the two weighted Gaussians when beta >> |r|.

    Equating (1 - f) phi0(m) = f phi1(m) for common variance beta**2 gives
    beta (r0 + r1) - beta ln((1 - f)/f) / (2 (r0 - r1)): a rare bit 1
    (small f) pushes the threshold toward the bit-1 mean.
    """
    if r0 == r1:
        raise ValueError("r0 and r1 must differ")
    if not 0.0 < f < 1.0:
        raise ValueError(f"f must lie in (0, 1), got {f}")
    return beta * (r0 + r1) - beta * math.log(1.0 / f - 1.0) / (2.0 * (r0 - r1))


def minimize_on_interval(fn: Callable[[float], float], lo: float, hi: float, grid: int = 65, xtol: float = 1e-9) -> float:
    """Coarse grid scan followed by bounded Brent/golden refinement."""
    xs = np.linspace(lo, hi, grid)
    vals = [fn(x) for x in xs]
    i = int(np.argmin(vals))
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, grid - 1)]
    res = optimize.minimize_scalar(fn, bounds=(a, b), method="bounded", options={"xatol": xtol})
    return float(res.x) if res.fun <= vals[i] else float(xs[i])


def optimal_pair_cutoff(r0: float, r1: float, beta: float, f: float = 0.5) -> float:
    """Threshold minimizing the weighted pair error, searched between the two means."""
    lo, hi = sorted((2.0 * beta * r1, 2.0 * beta * r0))
    pad = 0.5 * (hi - lo) + 4.0 * beta
    return minimize_on_interval(
        lambda m: closed_form_perr_weighted(r0, r1, beta, m, f), lo - pad, hi + pad, xtol=1e-9 * beta
    )


# ---------------------------------------------------------------------------
# moments and Markov-type bounds
# ---------------------------------------------------------------------------


def quadrature_polynomial(k: int, r: float) -> float:
    """<r|(a + a^dagger)^k|r> for a real coherent amplitude r.

        k even: sum_j k! 2^(3j - k/2) / ((2j)! (k/2 - j)!) r^(2j)
        k odd:  sum_j k! 2^(3j - (k-3)/2) / ((2j+1)! ((k-1)/2 - j)!) r^(2j+1)
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    total = 0.0
    if k % 2 == 0:
        h = k // 2
        for j in range(h + 1):
            total += math.factorial(k) * 2.0 ** (3 * j - h) / (math.factorial(2 * j) * math.factorial(h - j)) * r ** (2 * j)
    else:
        h = (k - 1) // 2
        for j in range(h + 1):
            total += (
                math.factorial(k) * 2.0 ** (3 * j - (k - 3) / 2)
                / (math.factorial(2 * j + 1) * math.factorial(h - j)) * r ** (2 * j + 1)
            )
    return total


def moment_m(k: int, beta: float, law: RadialLaw) -> float:
    """Leading-order E[m**k] = beta**k E[F_k(r)] with r drawn from ``law``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return beta**k * law.expect(lambda r: quadrature_polynomial(k, r))


def central_moment(n: int, raw: Sequence[float]) -> float:
    """E[(X - EX)^n] from raw moments raw[k] = E[X^k], raw[0] = 1."""
    mu = raw[1]
    return sum(math.comb(n, k) * (-1) ** (n - k) * raw[k] * mu ** (n - k) for k in range(n + 1))


def markov_bound_perr(n_order: int, n_bar: float, beta: float, m_c: float, f: float = 0.5) -> float:
    """Upper bound on the distribution-scheme error from the n-th central moments.

    Each tail is bounded by P(|X - EX| >= d) <= M_n / d**n with d the
    distance from that bit's mean to m_c; the priors weight the two tails.
    """
    if n_order < 2 or n_order % 2:
        raise ValueError("n_order must be an even integer >= 2")
    law0, law1 = bit_laws(n_bar, f)
    raw0 = [1.0] + [moment_m(k, beta, law0) for k in range(1, n_order + 1)]
    raw1 = [1.0] + [moment_m(k, beta, law1) for k in range(1, n_order + 1)]
    mean0, mean1 = raw0[1], raw1[1]
    if not mean1 < m_c < mean0:
        raise ValueError(f"m_c={m_c} must lie strictly between {mean1} and {mean0}")
    return (1.0 - f) * central_moment(n_order, raw0) / (m_c - mean0) ** n_order + f * central_moment(
        n_order, raw1
    ) / (m_c - mean1) ** n_order


# ---------------------------------------------------------------------------
# the distribution scheme under homodyne detection
# ---------------------------------------------------------------------------


def mixture_decide_zero(law: RadialLaw, beta: float, m_c: float) -> float:
    """P(m >= m_c) averaged over the radial law, by quadrature."""
    return law.expect(lambda r: float(prob_decide_zero(r, beta, m_c)), epsabs=1e-13)


def mixture_probs(n_bar: float, f: float, beta: float, m_c: float) -> tuple[float, float]:
    """(p00, p01) for the distribution scheme at threshold m_c."""
    law0, law1 = bit_laws(n_bar, f)
    return mixture_decide_zero(law0, beta, m_c), mixture_decide_zero(law1, beta, m_c)


def mixture_perr(n_bar: float, f: float, beta: float, m_c: float) -> float:
    p00, p01 = mixture_probs(n_bar, f, beta, m_c)
    return (1.0 - f) * (1.0 - p00) + f * p01


def rc_to_mc(r_c: float, n_bar: float, beta: float) -> float:
    return -2.0 * beta * math.sqrt(n_bar) * r_c


def optimal_mixture_rc(n_bar: float, f: float = 0.5, beta: float | None = None, lo: float = -1.0, hi: float = 2.0) -> float:
    """r_c minimizing the exact distribution-scheme error."""
    beta = default_beta(n_bar) if beta is None else beta
    return minimize_on_interval(lambda rc: mixture_perr(n_bar, f, beta, rc_to_mc(rc, n_bar, beta)), lo, hi, xtol=1e-6)


# ---------------------------------------------------------------------------
# Monte-Carlo transmission
# ---------------------------------------------------------------------------


def _draw_outcomes(n_bar: float, f: float, beta: float, samples: int, rng: np.random.Generator):
    bits = rng.random(samples) < f
    law0, law1 = bit_laws(n_bar, f)
    r = np.empty(samples)
    r[~bits] = sample_radius(law0, rng, int((~bits).sum()))
    r[bits] = sample_radius(law1, rng, int(bits.sum()))
    mean, var = 2.0 * beta * r, beta * beta + r * r
    return bits, mean + np.sqrt(var) * rng.standard_normal(samples)


def _error_rate(bits: np.ndarray, m: np.ndarray, m_c: float) -> tuple[float, float]:
    decide_one = m < m_c
    p = float(np.mean(decide_one != bits))
    return p, math.sqrt(p * (1.0 - p) / bits.size)


def simulate_transmission(n_bar: float, f: float, beta: float, m_c: float, cfg: SimConfig, key: Sequence[int] = ()) -> tuple[float, float]:
    """Empirical error rate and binomial standard error of the distribution scheme."""
    bits, m = _draw_outcomes(n_bar, f, beta, cfg.samples, stream(cfg.seed, *key))
    return _error_rate(bits, m, m_c)


def simulate_pair_transmission(r0: float, r1: float, beta: float, m_c: float, f: float, cfg: SimConfig) -> tuple[float, float]:
    """Empirical error rate when bit b is always sent as the fixed amplitude r_b."""
    rng = stream(cfg.seed)
    bits = rng.random(cfg.samples) < f
    r = np.where(bits, r1, r0)
    m = 2.0 * beta * r + np.sqrt(beta * beta + r * r) * rng.standard_normal(cfg.samples)
    return _error_rate(bits, m, m_c)


def simulate_perr_surface(
    n_bar_grid: Sequence[float],
    r_c_grid: Sequence[float],
    beta: float | None,
    f: float,
    cfg: SimConfig,
    workers: int = 1,
) -> list[dict]:
    """Empirical error over an (n_bar, r_c) grid, with m_c = -2 beta sqrt(n_bar) r_c.

    Each n_bar row draws one batch of transmissions from ``stream(seed, row)``
    and scores every r_c against it, so rows are reproducible on their own
    and the surface is smooth along r_c. ``beta=None`` uses default_beta.
    """
    n_bar_grid = list(n_bar_grid)
    r_c_grid = list(r_c_grid)
    if not n_bar_grid or not r_c_grid:
        raise ValueError("grids must be nonempty")

    def row(i: int) -> list[dict]:
        nb = n_bar_grid[i]
        b = default_beta(nb) if beta is None else beta
        bits, m = _draw_outcomes(nb, f, b, cfg.samples, stream(cfg.seed, i))
        out = []
        for rc in r_c_grid:
            p, se = _error_rate(bits, m, rc_to_mc(rc, nb, b))
            out.append({"n_bar": nb, "r_c": rc, "p_err": p, "std_err": se})
        return out

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(row, range(len(n_bar_grid))))
    else:
        rows = [row(i) for i in range(len(n_bar_grid))]
    return [rec for r in rows for rec in r]


def surface_argmin(records: list[dict]) -> dict[float, float]:
    """Per n_bar, the r_c with the smallest empirical error (first one on ties)."""
    best: dict[float, tuple[float, float]] = {}
    for rec in records:
        cur = best.get(rec["n_bar"])
        if cur is None or rec["p_err"] < cur[0]:
            best[rec["n_bar"]] = (rec["p_err"], rec["r_c"])
    return {nb: rc for nb, (_, rc) in best.items()}
