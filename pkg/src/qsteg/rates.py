"""Entropies, communication rates and secret-key rates for binary schemes.

The sender picks bit 1 with prior f. The receiver's decisions are summarised
by p00 = P(decide 0 | sent 0) and p01 = P(decide 0 | sent 1). The
communication rate is the mutual information of that binary channel,

    R = h(q) - [f h(p01) + (1 - f) h(p00)],   q = (1 - f) p00 + f p01,

and the key needed to make the transmitted ensemble look thermal is
K = h(f) - R.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

log = logging.getLogger(__name__)

LN2 = math.log(2.0)


def binary_entropy(p):
    """h(p) in bits, with 0 log 0 = 0. Works elementwise on arrays."""
    arr = np.asarray(p, dtype=float)
    if np.any((arr < 0) | (arr > 1)) or np.any(np.isnan(arr)):
        raise ValueError(f"probability outside [0, 1]: {p}")
    h = (special.entr(arr) + special.entr(1.0 - arr)) / LN2
    return float(h) if h.ndim == 0 else h


def rate_from_perr(p_err: float) -> float:
    """Binary-symmetric-channel rate 1 - h(p_err)."""
    return 1.0 - binary_entropy(p_err)


@dataclass(frozen=True)
class ChannelProbs:
    p00: float
    p01: float
    f: float

    def __post_init__(self):
        for name in ("p00", "p01", "f"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} outside [0, 1]")

    @property
    def p_err(self) -> float:
        return (1.0 - self.f) * (1.0 - self.p00) + self.f * self.p01


@dataclass(frozen=True)
class RateReport:
    """Error probability, rate R, key rate K and ratio R/K.

    ``ratio`` is +inf when K = 0 < R and nan when both vanish.
    """

    p_err: float
    R: float
    K: float
    ratio: float

    @classmethod
    def from_rates(cls, p_err: float, R: float, K: float) -> "RateReport":
        if K > 0:
            ratio = R / K
        else:
            ratio = math.inf if R > 0 else math.nan
        return cls(float(p_err), float(R), float(K), float(ratio))


def mixture_q(probs: ChannelProbs) -> float:
    """Overall probability that the receiver decides 0."""
    return (1.0 - probs.f) * probs.p00 + probs.f * probs.p01


def _clamp(value: float, name: str, probs: ChannelProbs) -> float:
    if value < 0:
        log.info("clamping %s=%.3e to 0 at %s", name, value, probs)
        return 0.0
    return value


def conditional_entropy(probs: ChannelProbs) -> float:
    return probs.f * binary_entropy(probs.p01) + (1.0 - probs.f) * binary_entropy(probs.p00)


def rate_general_raw(probs: ChannelProbs) -> float:
    return binary_entropy(mixture_q(probs)) - conditional_entropy(probs)


def rate_general(probs: ChannelProbs) -> float:
    """Mutual information of the binary decision channel, floored at 0."""
    return _clamp(rate_general_raw(probs), "R", probs)


def key_rate_expanded(probs: ChannelProbs) -> float:
    """K written out term by term: h(f) - h(q) + f h(p01) + (1 - f) h(p00)."""
    return (
        binary_entropy(probs.f)
        - binary_entropy(mixture_q(probs))
        + probs.f * binary_entropy(probs.p01)
        + (1.0 - probs.f) * binary_entropy(probs.p00)
    )


def key_rate_difference(probs: ChannelProbs) -> float:
    """K as h(f) - R, R unclamped."""
    return binary_entropy(probs.f) - rate_general_raw(probs)


def key_rate_distribution(probs: ChannelProbs) -> float:
    """Secret key per channel use.

    Both algebraic forms are evaluated and must agree to 1e-12.
    """
    k1 = key_rate_expanded(probs)
    k2 = key_rate_difference(probs)
    if abs(k1 - k2) > 1e-12:
        raise ArithmeticError(f"key-rate forms disagree: {k1!r} vs {k2!r}")
    return _clamp(k1, "K", probs)


def report_from_probs(probs: ChannelProbs) -> RateReport:
    return RateReport.from_rates(probs.p_err, rate_general(probs), key_rate_distribution(probs))


def pairwise_key_overhead(f: float, M: int) -> float:
    """Extra key bits to name one (bit-0, bit-1) pair out of an M-state set."""
    if not 0.0 < f < 1.0:
        raise ValueError(f"f must lie in (0, 1), got {f}")
    if M < 2:
        raise ValueError("M must be >= 2")
    return math.log2(f * (1.0 - f) * M * M)
