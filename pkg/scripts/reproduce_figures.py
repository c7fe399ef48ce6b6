"""Write every figure table to an output directory.

    python3 scripts/reproduce_figures.py --out results --seed 0 --samples 100000
"""

import argparse
import time
from pathlib import Path

from qsteg import figures


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in figures.FIGURES:
        t0 = time.perf_counter()
        f = "matched" if name == "fig7" else 0.5
        cfg = figures.ExperimentConfig(name, f=f, samples=args.samples, seed=args.seed, format=args.format)
        text = figures.render_table(figures.GENERATORS[name](cfg), cfg.metadata(), cfg.format)
        path = out / f"{name}.{args.format}"
        path.write_text(text)
        print(f"{name}: {path} ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
