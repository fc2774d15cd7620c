"""Minimum-uncertainty packets, Gaussian smoothing and positivity checks.

A raw Wigner function is not directly observable; pairing it with a
minimum-uncertainty test packet smears it into an everywhere-nonnegative
distribution (the Husimi function).  The smoothed array is returned as plain
data, not as a Wigner function: it does not reproduce the marginals, and it
has no dynamics of its own — smooth at measurement time only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .grids import AxisGrid, Config, PhaseGrid, WaveFunction, WignerFunction, normalize

__all__ = [
    "GaussianPacketSpec",
    "PositivityReport",
    "minimum_uncertainty_packet",
    "gaussian_wigner",
    "husimi_smooth",
    "positivity_report",
]

_EDGE_DECAY = 1e-10
_NEGATIVE_CUTOFF = -1e-12


@dataclass(frozen=True)
class GaussianPacketSpec:
    """Minimum-uncertainty Gaussian: width b gives dx = b and dp = hbar/(2b)."""

    center_q: float = 0.0
    center_p: float = 0.0
    width_b: float = np.sqrt(0.5)

    def __post_init__(self):
        if not self.width_b > 0:
            raise ValueError(f"width_b must be positive, got {self.width_b}")


@dataclass(frozen=True)
class PositivityReport:
    min_value: float
    min_location: Tuple[int, ...]
    negative_fraction: float


def minimum_uncertainty_packet(
    spec: GaussianPacketSpec, grid: AxisGrid, config: Config
) -> WaveFunction:
    """The unique minimum-uncertainty packet with given centers and width.

    ``psi(x) = C exp(-(x - <x>)^2 / 4 b^2 + i <p> x / hbar)`` with C fixed by
    discrete normalisation.  The grid must support the packet (edge decay
    below 1e-10).
    """
    x = grid.points
    raw = np.exp(
        -((x - spec.center_q) ** 2) / (4 * spec.width_b**2)
        + 1j * spec.center_p * x / config.hbar
    )
    psi = normalize(WaveFunction(grid=grid, amplitudes=raw))
    edge = max(abs(psi.amplitudes[0]), abs(psi.amplitudes[-1]))
    if edge > _EDGE_DECAY:
        raise ValueError(
            f"grid does not support the packet: edge magnitude {edge:.3e} exceeds 1e-10"
        )
    return psi


def gaussian_wigner(spec: GaussianPacketSpec, grid: PhaseGrid, config: Config) -> WignerFunction:
    """Closed-form Wigner function of the minimum-uncertainty packet.

    ``W0(q, p) = (1/pi hbar) exp(-(q - <q>)^2 / 2b^2 - 2 b^2 (p - <p>)^2 / hbar^2)``;
    the prefactor is fixed by normalisation.
    """
    b2 = spec.width_b**2
    hbar = config.hbar
    q = grid.q_axis.points - spec.center_q
    p = grid.p_axis.points - spec.center_p
    values = (1.0 / (np.pi * hbar)) * np.exp(
        -(q**2)[:, None] / (2 * b2) - (2 * b2 / hbar**2) * (p**2)[None, :]
    )
    try:
        return WignerFunction(grid=grid, values=values, hbar=hbar)
    except ValueError as exc:
        raise ValueError(f"grid does not support the packet: {exc}") from None


def _periodic_gaussian(axis: AxisGrid, variance: float) -> np.ndarray:
    """Unit-sum Gaussian kernel centered on the periodic axis origin bin."""
    span = axis.count * axis.step
    d = axis.step * np.arange(axis.count)
    d = np.minimum(d, span - d)  # periodic distance from bin 0
    k = np.exp(-(d**2) / (2 * variance))
    return k / k.sum()


def husimi_smooth(w: WignerFunction, spec: GaussianPacketSpec, config: Config) -> np.ndarray:
    """Convolve a Wigner function with the minimum-uncertainty Gaussian kernel.

    The kernel is ``exp(-(q'-q)^2/2b^2 - 2 b^2 (p'-p)^2/hbar^2)``, normalised
    numerically; the convolution runs by FFT separately along each axis and
    the result is rescaled to integrate to 1.  At minimum-uncertainty
    pairing the output is nonnegative up to rounding.
    """
    b2 = spec.width_b**2
    hbar = config.hbar
    kq = _periodic_gaussian(w.grid.q_axis, b2)
    kp = _periodic_gaussian(w.grid.p_axis, hbar**2 / (4 * b2))
    out = np.fft.ifft(np.fft.fft(w.values, axis=0) * np.fft.fft(kq)[:, None], axis=0)
    out = np.fft.ifft(np.fft.fft(out, axis=1) * np.fft.fft(kp)[None, :], axis=1).real
    out /= out.sum() * w.cell
    return out


def positivity_report(values: np.ndarray) -> PositivityReport:
    """Scan an array for negativity (cells below -1e-12)."""
    v = np.asarray(values)
    flat_idx = int(np.argmin(v))
    loc = np.unravel_index(flat_idx, v.shape)
    negative = int(np.count_nonzero(v < _NEGATIVE_CUTOFF))
    return PositivityReport(
        min_value=float(v.flat[flat_idx]),
        min_location=tuple(int(i) for i in loc),
        negative_fraction=negative / v.size,
    )
