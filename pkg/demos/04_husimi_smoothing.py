"""Raw Wigner function versus its Gaussian-smoothed (Husimi) counterpart.

The n = 2 oscillator state has deep negative rings in phase space; smearing
with a minimum-uncertainty Gaussian removes every negative value while
keeping the distribution normalised.
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
    husimi_smooth,
    positivity_report,
    wigner_from_wavefunction,
)

out_dir = pathlib.Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

cfg = Config()
grid = AxisGrid(min=-8.0, step=1.0 / 16.0, count=256)
w = wigner_from_wavefunction(ho_eigenstate(2, grid, cfg), cfg)
smoothed = husimi_smooth(w, GaussianPacketSpec(width_b=np.sqrt(cfg.hbar / 2)), cfg)

raw_rep = positivity_report(w.values)
smooth_rep = positivity_report(smoothed)
print(f"raw Wigner:  min = {raw_rep.min_value:+.6f}, "
      f"negative fraction = {raw_rep.negative_fraction:.4f}")
print(f"smoothed:    min = {smooth_rep.min_value:+.3e}, "
      f"negative fraction = {smooth_rep.negative_fraction:.4f}")
print(f"smoothed integral = {smoothed.sum() * w.cell:.12f}")

q = w.grid.q_axis.points
p = w.grid.p_axis.points
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.5), constrained_layout=True)
lim = np.abs(w.values).max()
im1 = ax1.pcolormesh(q, p, w.values.T, cmap="RdBu_r", vmin=-lim, vmax=lim)
ax1.set(xlim=(-5, 5), ylim=(-5, 5), xlabel="q", ylabel="p", title="Wigner, n = 2")
fig.colorbar(im1, ax=ax1)
im2 = ax2.pcolormesh(q, p, smoothed.T, cmap="magma")
ax2.set(xlim=(-5, 5), ylim=(-5, 5), xlabel="q", ylabel="p", title="Gaussian-smoothed")
fig.colorbar(im2, ax=ax2)
fig.savefig(out_dir / "husimi_smoothing.png", dpi=150)
print(f"wrote {out_dir / 'husimi_smoothing.png'}")
