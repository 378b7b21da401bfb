"""
In this example a deuteron-like particle with an anomalous magnetic moment starts polarized along x.
Its horizontal polarization precesses with the spin frequency and beats with twice the tensor splitting.
"""

from os.path import dirname, join

import numpy as np

from src.dynamics import beat_analysis, evolve, make_initial_state
from src.fw import reduced_hamiltonian
from src.sectors import ParticleParams, make_sector
from src.utils.plots import plot_series

if __name__ == "__main__":
    params = ParticleParams(m=1.0, e=1.0, g=1.714, B=0.01, pz=0.0)
    rh = reduced_hamiltonian(params, make_sector(params, 1), h0_policy="zero")

    beat_period = np.pi / abs(rh.zeta)
    t_grid = np.linspace(0.0, 4.2 * beat_period, 8001)
    records = evolve(rh, make_initial_state("sx:+1"), t_grid)

    beat = beat_analysis(records, rh)
    print("f_high = {:.9g}, f_low = {:.9g}, beat = {:.9g} (2 zeta = {:.9g})".format(
        beat.f_high, beat.f_low, beat.beat, 2 * abs(rh.zeta)))

    fig, axes = plot_series(
        t_grid,
        {"<S_x>": [r.vector[0] for r in records], "P_perp": [r.p_perp for r in records]},
    )
    fig.savefig(join(dirname(__file__), "beating.png"), dpi=120)
