"""How well the receiver can tell the bit-0 ensemble from the bit-1 ensemble.

Two regimes are covered. With a shared key the receiver knows which pair of
coherent states |alpha0>, |alpha1> is in play, and the optimal (Helstrom)
measurement error follows from the overlap alone. Without a key the receiver
faces the two phase-averaged halves of the thermal state, whose
distinguishability is their trace distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import thermal
from .rates import RateReport, rate_from_perr
from .thermal import CoherentAmplitude


@dataclass(frozen=True)
class PureStatePair:
    alpha0: CoherentAmplitude
    alpha1: CoherentAmplitude
    prior_f: float = 0.5

    def __post_init__(self):
        if not 0.0 < self.prior_f < 1.0:
            raise ValueError(f"prior_f must lie in (0, 1), got {self.prior_f}")

    @classmethod
    def from_real(cls, r0: float, r1: float, f: float = 0.5) -> "PureStatePair":
        """Pair on the real axis; a negative amplitude means phase pi."""
        return cls(CoherentAmplitude.from_signed(r0), CoherentAmplitude.from_signed(r1), f)

    @property
    def overlap(self) -> float:
        return coherent_overlap(self.alpha0, self.alpha1)


@dataclass(frozen=True)
class PoissonLaw:
    lam: float

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"lambda must be >= 0, got {self.lam}")


def coherent_overlap(a0: CoherentAmplitude, a1: CoherentAmplitude) -> float:
    """|<a0|a1>| = exp(-|a0 - a1|**2 / 2)."""
    return math.exp(-abs(a0.value - a1.value) ** 2 / 2.0)


def vertical_angle_perr_bound(n_bar: float) -> float:
    """Helstrom error for |0> against |r_median> at opposite phase, equal priors."""
    if n_bar < 0:
        raise ValueError(f"n_bar must be >= 0, got {n_bar}")
    return 0.5 * (1.0 - math.sqrt(-math.expm1(-n_bar * math.log(2.0))))


def helstrom_matrix(pair: PureStatePair) -> np.ndarray:
    """(1-f)|a0><a0| - f|a1><a1| in the orthonormal basis {|a0>, |a0_perp>}."""
    f = pair.prior_f
    eta = pair.overlap
    s = math.sqrt(max(0.0, 1.0 - eta * eta))
    return np.array([
        [(1.0 - f) - f * eta * eta, -f * eta * s],
        [-f * eta * s, -f * s * s],
    ])


def helstrom_perr_pure(pair: PureStatePair) -> float:
    lam = np.linalg.eigvalsh(helstrom_matrix(pair))
    return 0.5 * (1.0 - float(np.sum(np.abs(lam))))


def helstrom_measurement_probs(pair: PureStatePair) -> tuple[float, float]:
    """(p00, p01): chance of deciding 0 given each state, under the Helstrom projector.

    When the states coincide no measurement helps and the receiver answers
    the likelier bit every time.
    """
    f = pair.prior_f
    eta = pair.overlap
    s = math.sqrt(max(0.0, 1.0 - eta * eta))
    if s < 1e-12:
        return (1.0, 1.0) if f <= 0.5 else (0.0, 0.0)
    w, v = np.linalg.eigh(helstrom_matrix(pair))
    v0 = v[:, int(np.argmax(w))]
    p00 = float(v0[0] ** 2)
    p01 = float((eta * v0[0] + s * v0[1]) ** 2)
    return p00, p01


# ---------------------------------------------------------------------------
# no-key distribution scheme
# ---------------------------------------------------------------------------


def poisson_cdf(law: PoissonLaw, n):
    """P(N <= n) for N ~ Poisson(lam); zero for negative n."""
    n = np.asarray(n)
    out = np.where(n >= 0, special.gammaincc(np.maximum(n, 0) + 1, law.lam), 0.0)
    return float(out) if out.ndim == 0 else out


def poisson_median_index(law: PoissonLaw) -> int:
    """Smallest n with P(N <= n) >= 1/2."""
    n = max(0, int(math.floor(law.lam)) - 2)
    while n > 0 and poisson_cdf(law, n - 1) >= 0.5:
        n -= 1
    while poisson_cdf(law, n) < 0.5:
        n += 1
    return n


def distribution_trace_distance_direct(n_bar: float, f: float = 0.5, cutoff: int | None = None) -> float:
    """Trace distance between the two split halves, summed term by term."""
    if cutoff is None:
        cutoff = thermal.split_cutoff(n_bar, f)
    p0 = thermal.split_component_state(n_bar, f, 0, cutoff)
    p1 = thermal.split_component_state(n_bar, f, 1, cutoff)
    return thermal.trace_distance_diagonal(p0, p1)


def distribution_trace_distance_closed(n_bar: float, index_shift: int = 0) -> float:
    """Poisson-CDF closed form for the equal-split trace distance.

        2 * (1 + (2 Q_N - 1) x**(N + 1) - Qt_N),   x = n_bar / (n_bar + 1)

    Q is the Poisson CDF at lam = (n_bar + 1) ln 2 and Qt the one at
    lam = n_bar ln 2. With ``index_shift=0``, N is the smallest n with
    Q_n >= 1/2. The sum over n < N of the positive terms is what the
    expression actually evaluates at N - 1, so ``index_shift=1`` gives the
    exact value and the default slightly undershoots it.
    """
    if n_bar <= 0:
        return 0.0
    q = PoissonLaw((n_bar + 1.0) * math.log(2.0))
    qt = PoissonLaw(n_bar * math.log(2.0))
    N = poisson_median_index(q) - index_shift
    x = n_bar / (n_bar + 1.0)
    return 2.0 * (1.0 + (2.0 * poisson_cdf(q, N) - 1.0) * x ** (N + 1) - poisson_cdf(qt, N))


def distribution_rate_no_key(n_bar: float) -> RateReport:
    """Rate of the equal-split scheme decoded without key.

    The equiprobable halves recombine into the thermal state, so no key is
    spent (K = 0).
    """
    p_err = 0.5 * (1.0 - distribution_trace_distance_direct(n_bar))
    p_err = min(0.5, max(0.0, p_err))
    return RateReport.from_rates(p_err, rate_from_perr(p_err), 0.0)
