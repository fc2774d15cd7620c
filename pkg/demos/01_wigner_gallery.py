"""Gallery of Wigner functions: oscillator states and a boosted packet.

Builds a few states on the reference grid, transforms them to phase space,
checks the marginals against the densities they must reproduce, and saves
contour plots. Run from the repository root:

    python demos/01_wigner_gallery.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from phasespace import (
    AxisGrid,
    Config,
    GaussianPacketSpec,
    ho_eigenstate,
    marginal_momentum,
    marginal_position,
    minimum_uncertainty_packet,
    negativity_volume,
    wigner_from_wavefunction,
)

out_dir = pathlib.Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

cfg = Config()
grid = AxisGrid(min=-8.0, step=1.0 / 16.0, count=256)

states = {
    "ground": ho_eigenstate(0, grid, cfg),
    "n1": ho_eigenstate(1, grid, cfg),
    "n3": ho_eigenstate(3, grid, cfg),
    "boosted packet": minimum_uncertainty_packet(
        GaussianPacketSpec(center_q=1.0, center_p=1.5), grid, cfg
    ),
}

fig, axes = plt.subplots(2, 2, figsize=(10, 9), constrained_layout=True)
for ax, (name, psi) in zip(axes.flat, states.items()):
    w = wigner_from_wavefunction(psi, cfg)
    q = w.grid.q_axis.points
    p = w.grid.p_axis.points
    lim = np.abs(w.values).max()
    im = ax.pcolormesh(q, p, w.values.T, cmap="RdBu_r", vmin=-lim, vmax=lim)
    ax.set(xlim=(-5, 5), ylim=(-5, 5), xlabel="q", ylabel="p", title=name)
    fig.colorbar(im, ax=ax, shrink=0.8)

    mq = marginal_position(w)
    mp = marginal_momentum(w)
    print(f"{name:15s} min W = {w.values.min():+.6f}   "
          f"negativity volume = {negativity_volume(w):.6f}")
    print(f"{'':15s} marginal checks: "
          f"|q-marginal - |psi|^2| = {np.abs(mq - np.abs(psi.amplitudes) ** 2).max():.2e}, "
          f"sum p-marginal dp = {mp.sum() * w.grid.p_axis.step:.12f}")

fig.savefig(out_dir / "wigner_gallery.png", dpi=150)
print(f"\nwrote {out_dir / 'wigner_gallery.png'}")
