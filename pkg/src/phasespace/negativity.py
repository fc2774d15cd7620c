"""Wigner negativity measures and the two-interval interference demonstration.

No everywhere-positive phase-space distribution can both be bilinear in the
state and reproduce the marginals: superpose two wavefunctions confined to
disjoint intervals and the distribution would have to be independent of
their relative phase, forcing the product of their momentum representations
to vanish — impossible for Fourier transforms of compactly supported
functions.  :func:`impossibility_demo` turns that argument into concrete
lattice numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .grids import AxisGrid, Config, WaveFunction, WignerFunction, normalize
from .transforms import cross_wigner, wavefunction_to_momentum, wigner_from_wavefunction

__all__ = [
    "negativity_volume",
    "two_interval_state",
    "impossibility_demo",
    "ImpossibilityReport",
]


def negativity_volume(w: WignerFunction) -> float:
    """Integral of the negative part, ``sum (|W| - W)/2 * dq * dp``; >= 0.

    Zero exactly when W is nonnegative on the lattice.
    """
    v = w.values
    return float(np.sum((np.abs(v) - v) / 2) * w.cell)


def _raised_cosine_bump(center: float, width: float, grid: AxisGrid) -> WaveFunction:
    """Normalised raised-cosine bump supported on (center - width/2, center + width/2)."""
    t = (grid.points - center) / width
    amp = np.zeros(grid.count)
    inside = np.abs(t) < 0.5
    amp[inside] = 0.5 * (1 + np.cos(2 * np.pi * t[inside]))
    if not inside.any():
        raise ValueError("bump support contains no grid points")
    return normalize(WaveFunction(grid=grid, amplitudes=amp.astype(complex)))


def two_interval_state(
    a: complex,
    b: complex,
    gap: float,
    width: float,
    grid: AxisGrid,
    config: Config,
) -> WaveFunction:
    """Superposition ``a psi_1 + b psi_2`` of bumps on disjoint intervals.

    The bumps are raised cosines of the given ``width``, mirror-placed with
    ``gap`` between their supports, centered on the grid midpoint.  Requires
    ``|a|^2 + |b|^2 = 1`` within 1e-10 and the intervals to be disjoint and
    inside the grid.
    """
    if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > 1e-10:
        raise ValueError("|a|^2 + |b|^2 must equal 1")
    if gap <= 0:
        raise ValueError(f"intervals overlap: gap must be positive, got {gap}")
    if width <= 0:
        raise ValueError(f"width must be positive, got {width}")
    mid = grid.min + grid.step * (grid.count // 2)
    c1, c2 = mid - (gap + width) / 2, mid + (gap + width) / 2
    if c1 - width / 2 < grid.min or c2 + width / 2 > grid.max:
        raise ValueError("intervals do not fit inside the grid")
    psi1 = _raised_cosine_bump(c1, width, grid)
    psi2 = _raised_cosine_bump(c2, width, grid)
    return normalize(
        WaveFunction(grid=grid, amplitudes=a * psi1.amplitudes + b * psi2.amplitudes)
    )


@dataclass(frozen=True)
class ImpossibilityReport:
    """Lattice numbers contradicting an always-positive, phase-independent distribution."""

    max_cross_in_gap: float            # max |P12(q, p)| over the gap region
    phase_minima: Tuple[Tuple[float, float], ...]  # (phi, min over lattice of W_ab)
    min_over_sweep: float
    phase_spread_of_min: float         # max - min of the sweep minima
    max_momentum_product: float        # max |phi1(p) conj(phi2(p))|

    @property
    def contradicts_positivity(self) -> bool:
        return (
            self.min_over_sweep < 0
            and self.max_cross_in_gap > 1e-3
            and self.max_momentum_product > 1e-6
        )


def impossibility_demo(
    gap: float, width: float, grid: AxisGrid, config: Config
) -> ImpossibilityReport:
    """Run the two-interval construction and report the contradiction numbers.

    (1) the interference term P12 does not vanish between the intervals,
    (2) the minimum of W depends on the relative phase of the superposition
    (a positive distribution would have to be phase-independent there), and
    (3) the momentum representations of the two pieces overlap.
    """
    mid = grid.min + grid.step * (grid.count // 2)
    c1, c2 = mid - (gap + width) / 2, mid + (gap + width) / 2
    psi1 = _raised_cosine_bump(c1, width, grid)
    psi2 = _raised_cosine_bump(c2, width, grid)

    p12 = cross_wigner(psi1, psi2, config)
    in_gap = np.abs(grid.points - mid) < gap / 2
    max_cross = float(np.abs(p12[in_gap, :]).max())

    theta = np.pi / 4
    minima = []
    for phi in (0.0, np.pi / 2, np.pi, 3 * np.pi / 2):
        a = np.cos(theta)
        b = np.exp(1j * phi) * np.sin(theta)
        psi = normalize(
            WaveFunction(grid=grid, amplitudes=a * psi1.amplitudes + b * psi2.amplitudes)
        )
        w = wigner_from_wavefunction(psi, config)
        minima.append((float(phi), float(w.values.min())))

    mins = [m for _, m in minima]
    phi1 = wavefunction_to_momentum(psi1, config)
    phi2 = wavefunction_to_momentum(psi2, config)
    return ImpossibilityReport(
        max_cross_in_gap=max_cross,
        phase_minima=tuple(minima),
        min_over_sweep=min(mins),
        phase_spread_of_min=max(mins) - min(mins),
        max_momentum_product=float(np.abs(phi1 * np.conj(phi2)).max()),
    )
