"""Data tables behind each figure, plus CSV/JSON writers."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import homodyne as hd
from .rates import binary_entropy
from .sweeps import Objective, Scheme, optimize_f, scheme_report, scheme_sweep, thermal_matched_f

FIGURES = ("fig1", "fig3", "fig4", "fig6", "fig7")


def grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid, rounded to kill accumulated float drift."""
    if step <= 0 or stop < start:
        raise ValueError(f"bad grid {start}:{stop}:{step}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"grid must look like a:b:step, got {text!r}")
    return grid(*(float(p) for p in parts))


DEFAULT_NBAR_GRIDS = {
    "fig1": grid(0.1, 5.0, 0.1),
    "fig3": grid(0.5, 5.0, 0.5),
    "fig4": grid(0.25, 5.0, 0.25),
    "fig6": grid(0.5, 5.0, 0.5),
    "fig7": grid(0.1, 5.0, 0.1),
}


@dataclass
class ExperimentConfig:
    command: str
    n_bar_grid: list[float] = field(default_factory=list)
    f: float | str = 0.5
    beta: float | None = None
    samples: int = 100_000
    seed: int = 0
    output_path: str | None = None
    format: str = "csv"
    r_c_grid: list[float] = field(default_factory=lambda: grid(0.0, 1.0, 0.01))
    f_grid: list[float] = field(default_factory=lambda: grid(0.1, 0.9, 0.1))

    def __post_init__(self):
        if not self.n_bar_grid:
            self.n_bar_grid = list(DEFAULT_NBAR_GRIDS.get(self.command, grid(0.5, 5.0, 0.5)))
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")

    def metadata(self) -> dict:
        return {
            "figure": self.command,
            "seed": self.seed,
            "beta": "default" if self.beta is None else self.beta,
            "samples": self.samples,
            "f": self.f,
            "n_bar_grid": self.n_bar_grid,
        }


def _f_at(cfg: ExperimentConfig, n_bar: float) -> float:
    return thermal_matched_f(n_bar) if cfg.f == "matched" else float(cfg.f)


def fig1(cfg: ExperimentConfig) -> list[dict]:
    """Vertical-angle (key) and distribution (no key) rates."""
    va = scheme_sweep(Scheme.VERTICAL_ANGLE, cfg.n_bar_grid)
    nk = scheme_sweep(Scheme.DISTRIBUTION_NO_KEY, cfg.n_bar_grid)
    return [
        {"n_bar": nb, "p_err_key": a.p_err, "R_key": a.R, "p_err_no_key": b.p_err, "R_no_key": b.R}
        for nb, a, b in zip(cfg.n_bar_grid, va, nk)
    ]


def fig3(cfg: ExperimentConfig) -> list[dict]:
    return hd.simulate_perr_surface(
        cfg.n_bar_grid, cfg.r_c_grid, cfg.beta, 0.5 if cfg.f == "matched" else float(cfg.f),
        hd.SimConfig(cfg.samples, cfg.seed),
    )


def fig4(cfg: ExperimentConfig) -> list[dict]:
    """Distribution scheme under homodyne detection, f optimized per n_bar."""
    rows = []
    for nb in cfg.n_bar_grid:
        for obj in (Objective.RATE_PER_KEY, Objective.RATE):
            f_star, rep = optimize_f(nb, obj, cfg.beta, Scheme.DISTRIBUTION_HOMODYNE, cfg.seed)
            rows.append({"n_bar": nb, "objective": obj.value, "f_star": f_star, "p_err": rep.p_err,
                         "R": rep.R, "K": rep.K, "R_over_K": rep.ratio})
    return rows


def fig6(cfg: ExperimentConfig) -> list[dict]:
    """Pairwise R, K and R/K for homodyne and Helstrom decoding over (n_bar, f)."""
    rows = []
    for i, nb in enumerate(cfg.n_bar_grid):
        for j, f in enumerate(cfg.f_grid):
            for scheme in (Scheme.PAIRWISE_HOMODYNE, Scheme.PAIRWISE_HELSTROM):
                rep = scheme_report(scheme, nb, f, cfg.beta, cfg.seed, key=(i, j))
                rows.append({"n_bar": nb, "f": f, "scheme": scheme.value, "p_err": rep.p_err,
                             "R": rep.R, "K": rep.K, "R_over_K": rep.ratio})
    return rows


def fig7(cfg: ExperimentConfig) -> list[dict]:
    """Fock capacity against pairwise Helstrom and homodyne rates."""
    rows = []
    for i, nb in enumerate(cfg.n_bar_grid):
        f = _f_at(cfg, nb)
        hel = scheme_report(Scheme.PAIRWISE_HELSTROM, nb, f, cfg.beta, cfg.seed, key=(i,))
        hom = scheme_report(Scheme.PAIRWISE_HOMODYNE, nb, f, cfg.beta, cfg.seed, key=(i,))
        rows.append({"n_bar": nb, "f": f, "R_fock": binary_entropy(1.0 / (nb + 1.0)),
                     "R_helstrom": hel.R, "R_homodyne": hom.R})
    return rows


GENERATORS: dict[str, Callable[[ExperimentConfig], list[dict]]] = {
    "fig1": fig1, "fig3": fig3, "fig4": fig4, "fig6": fig6, "fig7": fig7,
}


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def render_table(records: Sequence[dict], metadata: dict, fmt: str = "csv") -> str:
    """CSV: header row, one '# key=value' metadata line, then data rows.

    JSON: {"metadata": {...}, "records": [...]}, records mirroring the CSV rows.
    """
    if fmt == "json":
        return json.dumps({"metadata": _jsonable(metadata), "records": _jsonable(list(records))},
                          indent=1, allow_nan=False) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    columns = list(records[0].keys()) if records else []
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    buf.write("# " + "; ".join(f"{k}={json.dumps(_jsonable(v))}" for k, v in metadata.items()) + "\n")
    for rec in records:
        w.writerow([_fmt(rec[c]) for c in columns])
    return buf.getvalue()


def read_csv_table(text: str) -> list[dict]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))
