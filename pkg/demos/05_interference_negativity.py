"""Why no always-positive phase-space distribution can exist.

Superpose two wavefunctions confined to disjoint intervals.  Any bilinear
distribution reproducing the position density would have to vanish between
the intervals for every relative phase, forcing the cross term to vanish —
but the cross term is plainly nonzero there, the minimum of W depends on
the phase, and the momentum representations of the two pieces overlap
everywhere.  The demo prints all three contradiction numbers and plots the
interference fringes living in the empty gap.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from phasespace import (
    AxisGrid,
    Config,
    impossibility_demo,
    two_interval_state,
    wigner_from_wavefunction,
)

out_dir = pathlib.Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

cfg = Config()
grid = AxisGrid(min=-8.0, step=1.0 / 16.0, count=256)
gap, width = 2.0, 1.0

report = impossibility_demo(gap, width, grid, cfg)
print(f"max |cross term| inside the gap : {report.max_cross_in_gap:.6f}")
for phi, mn in report.phase_minima:
    print(f"   relative phase {phi:4.2f}: min W = {mn:+.6f}")
print(f"phase spread of the minima      : {report.phase_spread_of_min:.6f}")
print(f"max |phi1(p) conj(phi2(p))|     : {report.max_momentum_product:.6f}")
print("contradiction established:", report.contradicts_positivity)

psi = two_interval_state(1 / np.sqrt(2), 1 / np.sqrt(2), gap, width, grid, cfg)
w = wigner_from_wavefunction(psi, cfg)
q = w.grid.q_axis.points
p = w.grid.p_axis.points
fig, ax = plt.subplots(figsize=(7, 5), constrained_layout=True)
lim = np.abs(w.values).max()
im = ax.pcolormesh(q, p, w.values.T, cmap="RdBu_r", vmin=-lim, vmax=lim)
ax.axvline(-gap / 2, color="k", ls="--", lw=0.8)
ax.axvline(gap / 2, color="k", ls="--", lw=0.8)
ax.set(xlim=(-4, 4), ylim=(-12, 12), xlabel="q", ylabel="p",
       title="two-interval superposition: fringes fill the empty gap")
fig.colorbar(im, ax=ax)
fig.savefig(out_dir / "interference_negativity.png", dpi=150)
print(f"wrote {out_dir / 'interference_negativity.png'}")
