"""Verification suites: each compares an implementation against an independent check.

A suite returns a list of Check records. The CLI prints them and exits
nonzero if any fails.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import codec
from . import discrimination as disc
from . import homodyne as hd
from . import thermal


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}  {self.detail}".rstrip()


def codec_suite() -> list[Check]:
    code = codec.ConstantWeightCode(8, 5)
    brute = sorted(
        int("".join(b), 2)
        for b in itertools.product("01", repeat=8)
        if b.count("1") == 3
    )
    mine = [int(codec.unrank(w, code), 2) for w in range(1, code.size + 1)]
    back = [codec.rank(format(v, "08b"), code) for v in brute]
    stocking = all(codec.hockey_stick_holds(n, k) for n in range(65) for k in range(1, 65))
    msg_code = codec.code_for(0.56, 6)
    roundtrip = all(
        codec.decode_message(codec.encode_message(codec.MessageWord(v, 6), msg_code), msg_code, 6).value == v
        for v in range(64)
    )
    return [
        Check("worked example unrank(41)", codec.unrank(41, code) == "10001100", codec.unrank(41, code)),
        Check("worked example rank(10001100)", codec.rank("10001100", code) == 41),
        Check("bijection vs sorted enumeration", mine == brute and back == list(range(1, 57)), f"{len(brute)} strings"),
        Check("hockey-stick identity n,k <= 64", stocking),
        Check("6-bit round trip", roundtrip, f"code N={msg_code.length} n_z={msg_code.zeros}"),
    ]


def fidelity_suite(ensembles: int = 2000, seed: int = 0) -> list[Check]:
    checks = []
    for n_bar, M in itertools.product((0.5, 1.0, 5.0), (10, 50, 200)):
        mean, se = thermal.mc_fidelity_bound(n_bar, M, ensembles, seed)
        bound = 1.0 - n_bar / (2 * M)
        checks.append(Check(
            f"sqrtF bound n_bar={n_bar} M={M}", mean + 3 * se >= bound,
            f"mean={mean:.6f} se={se:.2e} bound={bound:.6f}",
        ))
    worst = 0.0
    for n_bar, f in itertools.product((0.3, 1.0, 4.0), (0.2, 0.5, 0.8)):
        th = thermal.thermal_state(n_bar, thermal.thermal_cutoff(n_bar, 1e-14))
        p0 = thermal.split_component_state(n_bar, f, 0, th.cutoff)
        p1 = thermal.split_component_state(n_bar, f, 1, th.cutoff)
        worst = max(worst, float(np.max(np.abs((1 - f) * p0.probs + f * p1.probs - th.probs))))
    checks.append(Check("split halves recompose thermal", worst < 1e-9, f"max dev {worst:.1e}"))
    radii = [0.3, 0.9, 1.7]
    a = thermal.discretized_circle_state(radii, 9, 8).probs
    b = thermal.phase_averaged_mixture(radii, 8, tail_eps=1.0).probs
    checks.append(Check("discretized circle diagonal", np.allclose(a, b, atol=1e-14, rtol=0)))
    return checks


def trace_distance_suite() -> list[Check]:
    nbs = np.round(np.arange(0.1, 20.0001, 0.1), 10)
    direct = np.array([disc.distribution_trace_distance_direct(nb) for nb in nbs])
    verbatim = np.array([disc.distribution_trace_distance_closed(nb) for nb in nbs])
    corrected = np.array([disc.distribution_trace_distance_closed(nb, index_shift=1) for nb in nbs])
    ratio = verbatim / direct
    checks = [
        Check("direct distance in [0, 1]", bool(np.all((direct >= 0) & (direct <= 1)))),
        Check("direct distance nondecreasing", bool(np.all(np.diff(direct) >= -1e-12))),
        Check("direct distance approaches 1", direct[-1] > 0.85, f"T(20)={direct[-1]:.6f}"),
        Check(
            "closed form (as printed) / direct", True,
            f"ratio min={ratio.min():.6f} max={ratio.max():.6f} at n_bar=1: {ratio[np.argmin(abs(nbs - 1))]:.6f}",
        ),
        Check("closed form at N-1 matches direct", bool(np.max(np.abs(corrected - direct)) < 1e-12),
              f"max dev {np.max(np.abs(corrected - direct)):.1e}"),
    ]
    return checks


def markov_suite(samples: int = 200_000, seed: int = 0) -> list[Check]:
    n_bar, beta = 1.0, 100.0
    law0, law1 = hd.bit_laws(n_bar, 0.5)
    m0 = hd.moment_m(1, beta, law0)
    m1 = hd.moment_m(1, beta, law1)
    checks = []
    for frac in (0.3, 0.5, 0.7):
        m_c = m1 + frac * (m0 - m1)
        p, se = hd.simulate_transmission(n_bar, 0.5, beta, m_c, hd.SimConfig(samples, seed))
        for n in (2, 4):
            b = hd.markov_bound_perr(n, n_bar, beta, m_c)
            checks.append(Check(f"Markov n={n} m_c at {frac:.1f} of gap", b >= p, f"bound={b:.4f} mc={p:.4f}+-{se:.4f}"))
    return checks


def helstrom_suite() -> list[Check]:
    checks = []
    for nb in (0.1, 0.5, 1.0, 2.0, 5.0):
        pair = disc.PureStatePair(thermal.CoherentAmplitude(0.0), thermal.CoherentAmplitude(thermal.rayleigh_median(nb), math.pi))
        got = disc.helstrom_perr_pure(pair)
        want = disc.vertical_angle_perr_bound(nb)
        checks.append(Check(f"vertical angle n_bar={nb}", abs(got - want) <= 1e-12, f"dev={abs(got - want):.1e}"))
    worst_identity = 0.0
    worst_gap = math.inf
    for r0, r1, f in itertools.product((0.1, 0.6, 1.2), (-0.4, -1.0, -2.0), (0.2, 0.5, 0.7)):
        pair = disc.PureStatePair.from_real(r0, r1, f)
        p00, p01 = disc.helstrom_measurement_probs(pair)
        pe = disc.helstrom_perr_pure(pair)
        worst_identity = max(worst_identity, abs((1 - f) * (1 - p00) + f * p01 - pe))
        beta = 100.0
        m_c = hd.optimal_pair_cutoff(r0, r1, beta, f)
        worst_gap = min(worst_gap, hd.closed_form_perr_weighted(r0, r1, beta, m_c, f) - pe)
    checks.append(Check("measurement probabilities recombine", worst_identity <= 1e-12, f"max dev {worst_identity:.1e}"))
    checks.append(Check("Helstrom <= optimal homodyne", worst_gap >= 0, f"min gap {worst_gap:.3e}"))
    return checks


SUITES: dict[str, Callable[[], list[Check]]] = {
    "codec": codec_suite,
    "fidelity": fidelity_suite,
    "trace_distance": trace_distance_suite,
    "markov": markov_suite,
    "helstrom": helstrom_suite,
}
