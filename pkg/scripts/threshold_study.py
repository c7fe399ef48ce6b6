"""Where does the error-minimizing r_c sit?

Compares, per n_bar, the argmin of the simulated surface with the exact
quadrature optimum, for a few local-oscillator amplitudes.

    python3 scripts/threshold_study.py
"""

import numpy as np

from qsteg import figures
from qsteg import homodyne as hd


def main():
    grid_n = figures.grid(0.5, 5.0, 0.5)
    grid_r = figures.grid(0.0, 1.0, 0.01)
    sim = hd.surface_argmin(hd.simulate_perr_surface(grid_n, grid_r, None, 0.5, hd.SimConfig(100_000, 0)))
    print("n_bar  sim_argmin  exact(beta=default)  exact(beta=10)  exact(beta=1e4)")
    for nb in grid_n:
        exact = [hd.optimal_mixture_rc(nb, 0.5, b) for b in (None, 10.0, 1e4)]
        print(f"{nb:5.2f}  {sim[nb]:10.2f}  " + "  ".join(f"{x:14.4f}" for x in exact))
    perr = [hd.mixture_perr(1.0, 0.5, 100.0, hd.rc_to_mc(rc, 1.0, 100.0)) for rc in (0.34, 0.45)]
    print(f"n_bar=1: p_err(r_c=0.34)={perr[0]:.5f}  p_err(r_c=0.45)={perr[1]:.5f}")


if __name__ == "__main__":
    main()
