"""Thermal and coherent states in a truncated Fock basis.

Everything here is diagonal in the number basis once the phase is averaged
out, so states are plain probability vectors over n = 0..cutoff-1. The
thermal state of mean photon number ``n_bar`` is the geometric law

    p_n = (1 / (n_bar + 1)) * (n_bar / (n_bar + 1))**n

and its Glauber P-function, integrated over phase, is a Rayleigh law on the
coherent amplitude r with density (2 / n_bar) r exp(-r**2 / n_bar). Splitting
that radial law at a radius r_f with right-tail mass f produces the two
ensembles that carry bit 0 (inner) and bit 1 (outer).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

import numpy as np
from scipy import integrate, special, stats

from .rng import stream

TAIL_EPS = 1e-12

Support = Literal["full", "left", "right", "right_flipped"]
_SUPPORTS = ("full", "left", "right", "right_flipped")
# accumulated rounding / quadrature error tolerated above unit mass
_OVERSHOOT = 1e-10


class TruncationError(ValueError):
    """The Fock cutoff leaves more probability mass in the tail than allowed."""


# ---------------------------------------------------------------------------
# cutoffs
# ---------------------------------------------------------------------------


def thermal_cutoff(n_bar: float, tail_eps: float = TAIL_EPS) -> int:
    """Smallest cutoff c with thermal tail mass (n_bar/(n_bar+1))**c below tail_eps."""
    if n_bar < 0:
        raise ValueError(f"n_bar must be >= 0, got {n_bar}")
    if n_bar == 0:
        return 1
    x = n_bar / (n_bar + 1.0)
    c = max(1, math.floor(math.log(tail_eps) / math.log(x)) + 1)
    while x**c >= tail_eps:
        c += 1
    return c


def poisson_cutoff(lam: float, tail_eps: float = TAIL_EPS) -> int:
    """Smallest cutoff c with P(Poisson(lam) >= c) below tail_eps."""
    if lam < 0:
        raise ValueError(f"lam must be >= 0, got {lam}")
    if lam == 0:
        return 1
    c = max(1, int(stats.poisson.isf(tail_eps, lam)))
    # P(N >= c) is the regularized lower incomplete gamma P(c, lam)
    while c > 1 and special.gammainc(c - 1, lam) < tail_eps:
        c -= 1
    while special.gammainc(c, lam) >= tail_eps:
        c += 1
    return c


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThermalModel:
    n_bar: float
    cutoff: int | None = None
    tail_eps: float = TAIL_EPS

    def __post_init__(self):
        if self.n_bar < 0:
            raise ValueError(f"n_bar must be >= 0, got {self.n_bar}")
        if self.cutoff is None:
            object.__setattr__(self, "cutoff", thermal_cutoff(self.n_bar, self.tail_eps))
        elif self.cutoff < 1:
            raise ValueError("cutoff must be >= 1")


@dataclass(frozen=True)
class NumberDiagonalState:
    """Probability vector over Fock numbers 0..cutoff-1.

    Construction checks that entries are nonnegative and that the mass lost
    beyond the cutoff is at most ``tail_eps``.
    """

    probs: np.ndarray
    tail_eps: float = field(default=TAIL_EPS, compare=False)

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probs must be a nonempty 1-D vector")
        if np.any(p < -1e-15):
            raise ValueError("probabilities must be nonnegative")
        p = np.clip(p, 0.0, None)
        missing = 1.0 - math.fsum(p)
        if missing > self.tail_eps:
            raise TruncationError(
                f"cutoff {p.size} leaves tail mass {missing:.3e} > {self.tail_eps:.1e}"
            )
        if missing < -_OVERSHOOT:
            raise ValueError(f"probabilities sum to {1 - missing!r} > 1")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def cutoff(self) -> int:
        return self.probs.size

    def mean_photon_number(self) -> float:
        return float(np.dot(np.arange(self.cutoff), self.probs))

    def __len__(self):
        return self.cutoff


def vacuum(cutoff: int = 1) -> NumberDiagonalState:
    return fock_state(0, cutoff)


def fock_state(n: int, cutoff: int) -> NumberDiagonalState:
    if not 0 <= n < cutoff:
        raise ValueError(f"Fock number {n} outside cutoff {cutoff}")
    p = np.zeros(cutoff)
    p[n] = 1.0
    return NumberDiagonalState(p)


@dataclass(frozen=True)
class CoherentAmplitude:
    """alpha = r * exp(i * theta) with r >= 0."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"radial amplitude must be >= 0, got {self.r}")
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))

    @classmethod
    def from_signed(cls, x: float) -> "CoherentAmplitude":
        """Real amplitude on the theta = 0 axis; negative values get theta = pi."""
        return cls(abs(x), math.pi if x < 0 else 0.0)

    @property
    def value(self) -> complex:
        return self.r * complex(math.cos(self.theta), math.sin(self.theta))


def rayleigh_median(n_bar: float) -> float:
    if n_bar < 0:
        raise ValueError(f"n_bar must be >= 0, got {n_bar}")
    return math.sqrt(n_bar * math.log(2.0))


def split_radius(n_bar: float, f: float) -> float:
    """Radius r_f whose Rayleigh right tail holds mass f."""
    if not 0.0 < f < 1.0:
        raise ValueError(f"f must lie in (0, 1), got {f}")
    if n_bar < 0:
        raise ValueError(f"n_bar must be >= 0, got {n_bar}")
    return math.sqrt(n_bar * -math.log(f))


@dataclass(frozen=True)
class RadialLaw:
    """Rayleigh radial law, optionally restricted to one side of split_radius.

    ``left`` is the conditional law on [0, r_f) (mass 1 - f), ``right`` the
    conditional law on [r_f, inf) (mass f), and ``right_flipped`` the right
    law mirrored onto (-inf, -r_f].
    """

    n_bar: float
    support: Support = "full"
    f: float = 0.5

    def __post_init__(self):
        if self.n_bar < 0:
            raise ValueError(f"n_bar must be >= 0, got {self.n_bar}")
        if self.support not in _SUPPORTS:
            raise ValueError(f"unknown support {self.support!r}")
        if not 0.0 < self.f < 1.0:
            raise ValueError(f"f must lie in (0, 1), got {self.f}")

    @property
    def r_split(self) -> float:
        return split_radius(self.n_bar, self.f)

    @property
    def mass(self) -> float:
        """Share of the full Rayleigh law carried by this support."""
        return {"full": 1.0, "left": 1.0 - self.f}.get(self.support, self.f)

    @property
    def sign(self) -> int:
        return -1 if self.support == "right_flipped" else 1

    def pdf(self, r):
        """Conditional density at signed radius r."""
        r = np.asarray(r, dtype=float)
        x = self.sign * r
        base = np.where(x >= 0, 2.0 / self.n_bar * x * np.exp(-x * x / self.n_bar), 0.0)
        if self.support == "left":
            base = np.where(x < self.r_split, base, 0.0)
        elif self.support in ("right", "right_flipped"):
            base = np.where(x >= self.r_split, base, 0.0)
        return base / self.mass

    def expect(self, fn: Callable[[float], float], epsabs: float = 1e-12) -> float:
        """E[fn(r)] over the conditional law by adaptive quadrature.

        Integrates in t = r / sqrt(n_bar), where the weight 2 t exp(-t**2) does
        not depend on n_bar.
        """
        if self.n_bar == 0:
            return float(fn(0.0))
        s = math.sqrt(self.n_bar)
        t_split = math.sqrt(-math.log(self.f))
        lo, hi = {
            "full": (0.0, math.inf),
            "left": (0.0, t_split),
        }.get(self.support, (t_split, math.inf))

        def integrand(t):
            return 2.0 * t * math.exp(-t * t) * fn(self.sign * s * t)

        val, err = integrate.quad(integrand, lo, hi, epsabs=epsabs, epsrel=1e-12, limit=200)
        if not math.isfinite(val) or err > 1e3 * max(epsabs, 1e-12 * abs(val)):
            raise ArithmeticError(f"quadrature did not converge (estimate {val}, error {err})")
        return val / self.mass


def sample_radius(law: RadialLaw, rng: np.random.Generator, size=None):
    """Inverse-CDF draws from ``law``; signed for the flipped support."""
    if law.n_bar == 0:
        return np.zeros(size) if size is not None else 0.0
    nb = law.n_bar
    if law.support == "full":
        r = np.sqrt(nb * rng.standard_exponential(size))
    elif law.support == "left":
        # survival exp(-r^2/n_bar) uniform on (f, 1]
        u = rng.random(size)
        r = np.sqrt(-nb * np.log1p(-(1.0 - law.f) * u))
    else:
        # survival uniform on (0, f]; -log of a uniform is exponential
        r = np.sqrt(nb * (-math.log(law.f) + rng.standard_exponential(size)))
    return law.sign * r


# ---------------------------------------------------------------------------
# diagonal states
# ---------------------------------------------------------------------------


def _poisson_rows(lams: np.ndarray, cutoff: int) -> np.ndarray:
    n = np.arange(cutoff)
    lams = np.asarray(lams, dtype=float)[..., None]
    return np.exp(special.xlogy(n, lams) - lams - special.gammaln(n + 1))


def thermal_fock_distribution(model: ThermalModel) -> NumberDiagonalState:
    nb = model.n_bar
    n = np.arange(model.cutoff)
    if nb == 0:
        p = (n == 0).astype(float)
    else:
        p = np.exp(n * math.log(nb / (nb + 1.0))) / (nb + 1.0)
    return NumberDiagonalState(p, tail_eps=model.tail_eps)


def thermal_state(n_bar: float, cutoff: int | None = None) -> NumberDiagonalState:
    return thermal_fock_distribution(ThermalModel(n_bar, cutoff))


def coherent_fock_distribution(r: float, cutoff: int | None = None) -> NumberDiagonalState:
    if r < 0:
        raise ValueError(f"radial amplitude must be >= 0, got {r}")
    if cutoff is None:
        cutoff = poisson_cutoff(r * r)
    return NumberDiagonalState(_poisson_rows(r * r, cutoff))


def phase_averaged_mixture(
    radii: Sequence[float], cutoff: int | None = None, tail_eps: float = TAIL_EPS
) -> NumberDiagonalState:
    """Uniform mixture of phase-randomized coherent states with the given radii."""
    r = np.abs(np.asarray(radii, dtype=float)).ravel()
    if r.size == 0:
        raise ValueError("need at least one radius")
    if cutoff is None:
        cutoff = poisson_cutoff(float(r.max()) ** 2)
    return NumberDiagonalState(_poisson_rows(r * r, cutoff).mean(axis=0), tail_eps)


def discretized_circle_matrix(radii: Sequence[float], L: int, cutoff: int) -> np.ndarray:
    """Full density matrix of the equal-weight mixture of |r_j exp(2 pi i k / L)>.

    Built explicitly as sum_jk |alpha_jk><alpha_jk| / (M L); only meant for
    small cutoffs.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    r = np.abs(np.asarray(radii, dtype=float)).ravel()
    n = np.arange(cutoff)
    mag = np.exp(-0.5 * r[:, None] ** 2 + special.xlogy(n, r[:, None]) - 0.5 * special.gammaln(n + 1))
    phases = np.exp(2j * np.pi * np.outer(np.arange(L), n) / L)  # (L, cutoff)
    amps = (mag[:, None, :] * phases[None, :, :]).reshape(-1, cutoff)
    return amps.T @ amps.conj() / amps.shape[0]


def discretized_circle_state(
    radii: Sequence[float], L: int, cutoff: int, tail_eps: float = 1.0
) -> NumberDiagonalState:
    """Diagonal of discretized_circle_matrix.

    The explicit matrix is only built at small cutoffs, so by default the
    returned block may be truncated.
    """
    rho = discretized_circle_matrix(radii, L, cutoff)
    return NumberDiagonalState(np.real(np.diag(rho)), tail_eps)


def split_cutoff(n_bar: float, f: float) -> int:
    """Cutoff keeping both split halves' tails under TAIL_EPS.

    A half's tail is at most the thermal tail divided by its prior; the extra
    factor 10 leaves room for rounding in the sum.
    """
    return thermal_cutoff(n_bar, 0.1 * TAIL_EPS * min(f, 1.0 - f))


def split_component_state(
    n_bar: float,
    f: float,
    bit: int,
    cutoff: int | None = None,
    method: Literal["closed", "quad"] = "closed",
) -> NumberDiagonalState:
    """Fock weights of the phase-averaged coherent ensemble that carries ``bit``.

    With c = 1 + 1/n_bar and lam = c * r_f**2 = (n_bar + 1) ln(1/f), the
    radial integral collapses onto an incomplete gamma function:

        bit 0:  p_n = thermal_n * P(n + 1, lam) / (1 - f)
        bit 1:  p_n = thermal_n * Q(n + 1, lam) / f

    where Q(n + 1, lam) is the Poisson CDF at n. ``method="quad"`` integrates
    the Poisson weights against the conditional radial density instead.
    """
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit}")
    if cutoff is None:
        cutoff = split_cutoff(n_bar, f)
    if n_bar == 0:
        return vacuum(cutoff)
    n = np.arange(cutoff)
    if method == "closed":
        lam = (n_bar + 1.0) * -math.log(f)
        th = thermal_state(n_bar, cutoff).probs
        if bit == 0:
            p = th * special.gammainc(n + 1, lam) / (1.0 - f)
        else:
            p = th * special.gammaincc(n + 1, lam) / f
    elif method == "quad":
        law = RadialLaw(n_bar, "left" if bit == 0 else "right", f)
        p = np.array([
            law.expect(lambda r, k=k: math.exp(special.xlogy(k, r * r) - r * r - special.gammaln(k + 1)))
            for k in n
        ])
    else:
        raise ValueError(f"unknown method {method!r}")
    # each quadrature node-sum carries up to ~1e-12 absolute error
    tail = TAIL_EPS if method == "closed" else TAIL_EPS + 1e-12 * cutoff
    return NumberDiagonalState(p, tail)


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------


def _check_pair(p: NumberDiagonalState, q: NumberDiagonalState):
    if p.cutoff != q.cutoff:
        raise ValueError(f"cutoff mismatch: {p.cutoff} vs {q.cutoff}")


def fidelity_diagonal(p: NumberDiagonalState, q: NumberDiagonalState) -> float:
    """Uhlmann fidelity (sum_n sqrt(p_n q_n))**2 of two commuting states."""
    _check_pair(p, q)
    return float(np.sum(np.sqrt(p.probs * q.probs))) ** 2


def trace_distance_diagonal(p: NumberDiagonalState, q: NumberDiagonalState) -> float:
    _check_pair(p, q)
    return 0.5 * float(np.sum(np.abs(p.probs - q.probs)))


# ---------------------------------------------------------------------------
# Monte-Carlo check of the finite-mixture fidelity bound
# ---------------------------------------------------------------------------


def sqrt_fidelity_ensemble(n_bar: float, M: int, ensembles: int, seed: int) -> np.ndarray:
    """sqrt(F) between the thermal state and ``ensembles`` random M-radius mixtures.

    Ensemble i draws its radii from ``stream(seed, i)``.
    """
    if M < 1 or ensembles < 1:
        raise ValueError("M and ensembles must be >= 1")
    law = RadialLaw(n_bar)
    th_cut = thermal_cutoff(n_bar)
    out = np.empty(ensembles)
    for i in range(ensembles):
        radii = sample_radius(law, stream(seed, i), M)
        cutoff = max(th_cut, poisson_cutoff(float(np.max(radii)) ** 2))
        mix = phase_averaged_mixture(radii, cutoff)
        out[i] = math.sqrt(fidelity_diagonal(mix, thermal_state(n_bar, cutoff)))
    return out


def mc_fidelity_bound(n_bar: float, M: int, ensembles: int, seed: int) -> tuple[float, float]:
    """Sample mean and standard error of sqrt(F) over random M-radius mixtures."""
    vals = sqrt_fidelity_ensemble(n_bar, M, ensembles, seed)
    se = float(np.std(vals, ddof=1) / math.sqrt(vals.size)) if vals.size > 1 else 0.0
    return float(vals.mean()), se
