"""Rate curves for every scheme over a grid of n_bar, and optimization over f."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import legendre

from . import discrimination as disc
from . import homodyne as hd
from .rates import ChannelProbs, RateReport, binary_entropy, report_from_probs
from .rng import stream
from .thermal import RadialLaw, sample_radius

PAIR_DRAWS = 256


class Scheme(str, enum.Enum):
    FOCK_CAPACITY = "fock"
    DISTRIBUTION_NO_KEY = "distribution_no_key"
    VERTICAL_ANGLE = "vertical_angle"
    DISTRIBUTION_HOMODYNE = "distribution_homodyne"
    PAIRWISE_HOMODYNE = "pairwise_homodyne"
    PAIRWISE_HELSTROM = "pairwise_helstrom"


class Objective(str, enum.Enum):
    RATE = "rate"
    RATE_PER_KEY = "rate_per_key"


def thermal_matched_f(n_bar: float) -> float:
    """Bit-1 prior equal to the thermal probability of a nonvacuum mode."""
    return n_bar / (n_bar + 1.0)


# ---------------------------------------------------------------------------
# distribution scheme with homodyne thresholds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _LawRule:
    r: np.ndarray
    w: np.ndarray


def _gauss_rule(law: RadialLaw, order: int = 160) -> _LawRule:
    # fixed-order counterpart of RadialLaw.expect, vectorized over thresholds
    x, w = legendre.leggauss(order)
    t_split = math.sqrt(-math.log(law.f))
    lo, hi = (0.0, t_split) if law.support == "left" else (t_split, t_split + 7.0)
    t = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    wt = 0.5 * (hi - lo) * w * 2.0 * t * np.exp(-t * t) / law.mass
    return _LawRule(law.sign * math.sqrt(law.n_bar) * t, wt)


def _rule_decide_zero(rule: _LawRule, beta: float, m_c) -> np.ndarray:
    m_c = np.atleast_1d(np.asarray(m_c, dtype=float))
    return hd.prob_decide_zero(rule.r[None, :], beta, m_c[:, None]) @ rule.w


def distribution_homodyne_probs(n_bar: float, f: float, beta: float) -> ChannelProbs:
    """Decision probabilities of the distribution scheme at the error-minimizing threshold."""
    if n_bar == 0:
        return ChannelProbs(1.0, 1.0, f) if f <= 0.5 else ChannelProbs(0.0, 0.0, f)
    law0, law1 = hd.bit_laws(n_bar, f)
    rule0, rule1 = _gauss_rule(law0), _gauss_rule(law1)

    def perr(m_c):
        return (1.0 - f) * (1.0 - _rule_decide_zero(rule0, beta, m_c)) + f * _rule_decide_zero(rule1, beta, m_c)

    # scan in r_c units, where the optimum sits well inside [-1, 1 + r_split]
    s = 2.0 * beta * math.sqrt(n_bar)
    rc = np.linspace(-1.5, 2.0 + math.sqrt(-math.log(f)), 257)
    vals = perr(-s * rc)
    i = int(np.argmin(vals))
    lo, hi = rc[max(i - 1, 0)], rc[min(i + 1, rc.size - 1)]
    best = hd.minimize_on_interval(lambda x: float(perr(-s * x)[0]), lo, hi, grid=9, xtol=1e-7)
    m_c = -s * best
    p00 = float(np.clip(_rule_decide_zero(rule0, beta, m_c)[0], 0.0, 1.0))
    p01 = float(np.clip(_rule_decide_zero(rule1, beta, m_c)[0], 0.0, 1.0))
    return ChannelProbs(p00, p01, f)


# ---------------------------------------------------------------------------
# pairwise schemes
# ---------------------------------------------------------------------------


def sample_pairs(n_bar: float, f: float, count: int, seed: int, key: Sequence[int] = ()) -> tuple[np.ndarray, np.ndarray]:
    """``count`` (r0, r1) pairs, r1 mirrored negative.

    The underlying uniforms depend on (seed, key) only, so changing f moves
    each pair continuously.
    """
    law0, law1 = hd.bit_laws(n_bar, f)
    r0 = sample_radius(law0, stream(seed, *key, 0), count)
    r1 = sample_radius(law1, stream(seed, *key, 1), count)
    return np.asarray(r0, dtype=float), np.asarray(r1, dtype=float)


def _average(reports: list[RateReport]) -> RateReport:
    return RateReport.from_rates(
        float(np.mean([r.p_err for r in reports])),
        float(np.mean([r.R for r in reports])),
        float(np.mean([r.K for r in reports])),
    )


def helstrom_pair_probs(r0: float, r1: float, f: float) -> ChannelProbs:
    p00, p01 = disc.helstrom_measurement_probs(disc.PureStatePair.from_real(r0, r1, f))
    return ChannelProbs(min(max(p00, 0.0), 1.0), min(max(p01, 0.0), 1.0), f)


def homodyne_pair_probs(r0: float, r1: float, f: float, beta: float) -> ChannelProbs:
    if r0 == r1:
        return ChannelProbs(1.0, 1.0, f) if f <= 0.5 else ChannelProbs(0.0, 0.0, f)
    m_c = hd.optimal_pair_cutoff(r0, r1, beta, f)
    p00, p01 = hd.prob_decide_zero(np.array([r0, r1]), beta, m_c)
    return ChannelProbs(float(p00), float(p01), f)


def pairwise_report(
    scheme: Scheme, n_bar: float, f: float, beta: float, seed: int, key: Sequence[int] = (), draws: int = PAIR_DRAWS
) -> RateReport:
    r0s, r1s = sample_pairs(n_bar, f, draws, seed, key)
    if scheme == Scheme.PAIRWISE_HELSTROM:
        probs = [helstrom_pair_probs(a, b, f) for a, b in zip(r0s, r1s)]
    elif scheme == Scheme.PAIRWISE_HOMODYNE:
        probs = [homodyne_pair_probs(a, b, f, beta) for a, b in zip(r0s, r1s)]
    else:
        raise ValueError(f"{scheme} is not a pairwise scheme")
    return _average([report_from_probs(p) for p in probs])


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------


def scheme_report(
    scheme: Scheme | str,
    n_bar: float,
    f: float = 0.5,
    beta: float | None = None,
    seed: int = 0,
    key: Sequence[int] = (),
) -> RateReport:
    scheme = Scheme(scheme)
    b = hd.default_beta(n_bar) if beta is None else beta
    if scheme == Scheme.FOCK_CAPACITY:
        return RateReport.from_rates(0.0, binary_entropy(1.0 / (n_bar + 1.0)), 0.0)
    if scheme == Scheme.DISTRIBUTION_NO_KEY:
        return disc.distribution_rate_no_key(n_bar)
    if scheme == Scheme.VERTICAL_ANGLE:
        p = disc.vertical_angle_perr_bound(n_bar)
        return report_from_probs(ChannelProbs(1.0 - p, p, 0.5))
    if scheme == Scheme.DISTRIBUTION_HOMODYNE:
        return report_from_probs(distribution_homodyne_probs(n_bar, f, b))
    return pairwise_report(scheme, n_bar, f, b, seed, key)


def scheme_sweep(
    scheme: Scheme | str,
    n_bar_grid: Sequence[float],
    f: float | str = 0.5,
    beta: float | None = None,
    seed: int = 0,
) -> list[RateReport]:
    """One RateReport per grid point.

    ``f="matched"`` uses thermal_matched_f(n_bar) at each point. Pairwise
    schemes draw their pairs from ``stream(seed, grid_index, ...)``.
    """
    out = []
    for i, nb in enumerate(n_bar_grid):
        fi = thermal_matched_f(nb) if f == "matched" else float(f)
        out.append(scheme_report(scheme, nb, fi, beta, seed, key=(i,)))
    return out


def _score(report: RateReport, objective: Objective) -> float:
    if objective == Objective.RATE:
        return report.R
    return report.ratio if not math.isnan(report.ratio) else 0.0


def optimize_f(
    n_bar: float,
    objective: Objective | str = Objective.RATE_PER_KEY,
    beta: float | None = None,
    scheme: Scheme | str = Scheme.DISTRIBUTION_HOMODYNE,
    seed: int = 0,
    f_grid: Sequence[float] | None = None,
    refine: bool = True,
) -> tuple[float, RateReport]:
    """Grid search over f followed by a golden-section refinement around the best point."""
    objective = Objective(objective)
    scheme = Scheme(scheme)
    grid = np.linspace(0.02, 0.98, 49) if f_grid is None else np.asarray(f_grid, dtype=float)

    def evaluate(f: float) -> RateReport:
        return scheme_report(scheme, n_bar, float(f), beta, seed)

    reports = [evaluate(f) for f in grid]
    scores = [_score(r, objective) for r in reports]
    i = int(np.argmax(scores))
    best_f, best = float(grid[i]), reports[i]
    if refine and math.isfinite(scores[i]) and grid.size > 2:
        lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
        cache: dict[float, RateReport] = {}

        def neg(f):
            cache[f] = evaluate(f)
            return -_score(cache[f], objective)

        x = hd.minimize_on_interval(neg, lo, hi, grid=5, xtol=1e-4)
        cand = cache.get(x) or evaluate(x)
        if _score(cand, objective) > scores[i]:
            best_f, best = x, cand
    return best_f, best
