"""Grids, states and the numerical conventions shared by the whole library.

Conventions
-----------
* ``hbar`` is a runtime value carried by :class:`Config` (default 1.0), not a
  module constant, so the classical limit can be probed by shrinking it.
* Position grids are uniform with an even number of points.  The momentum
  axis of a :class:`PhaseGrid` is always derived from the position axis:

      dp = pi * hbar / (count * dq),   p_min = -(count/2) * dp

  i.e. ``dq * dp * count == pi * hbar``.  This is half the usual ``2*pi*hbar``
  FFT cell because the phase-space transforms step the relative coordinate by
  ``2*dq`` so that both shifted arguments stay on the lattice.
* States are expected to decay below ~1e-10 at the grid edges.  Integrals are
  plain step-weighted Riemann sums, consistent with the FFT quadrature used
  by the transforms.

All containers are frozen dataclasses; every operation returns fresh objects,
so values can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.hermite import hermval

__all__ = [
    "Config",
    "AxisGrid",
    "PhaseGrid",
    "WaveFunction",
    "DensityMatrix",
    "WignerFunction",
    "PhaseSymbol",
    "make_phase_grid",
    "normalize",
    "ho_eigenstate",
]

_HERMITICITY_TOL = 1e-12
_EDGE_DECAY = 1e-10


@dataclass(frozen=True)
class Config:
    """Global numerical conventions.

    Parameters
    ----------
    hbar : float
        Action scale entering every transform and commutator. Must be > 0.
    norm_tolerance : float
        Accepted deviation of discrete norms/traces from 1.
    """

    hbar: float = 1.0
    norm_tolerance: float = 1e-10

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if not self.norm_tolerance > 0:
            raise ValueError(f"norm_tolerance must be positive, got {self.norm_tolerance}")


@dataclass(frozen=True)
class AxisGrid:
    """Uniform sampling lattice ``x_i = min + i*step`` for ``i in [0, count)``.

    ``count`` must be even (and at least 4) so that the half-step substitution
    used by the Wigner transform lands on lattice points.
    """

    min: float
    step: float
    count: int

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        if self.count < 4 or self.count % 2 != 0:
            raise ValueError(f"grid count must be even and >= 4, got {self.count}")

    @property
    def points(self) -> np.ndarray:
        return self.min + self.step * np.arange(self.count)

    @property
    def max(self) -> float:
        """Largest lattice point, ``min + (count-1)*step``."""
        return self.min + self.step * (self.count - 1)


@dataclass(frozen=True)
class PhaseGrid:
    """Position/momentum lattice pair with FFT-conjugate spacing.

    The momentum axis is never user-supplied; use :func:`make_phase_grid`.
    """

    q_axis: AxisGrid
    p_axis: AxisGrid

    def __post_init__(self):
        q, p = self.q_axis, self.p_axis
        if p.count != q.count:
            raise ValueError("q and p axes must have the same count")

    @property
    def count(self) -> int:
        return self.q_axis.count

    def conjugate_step(self, hbar: float) -> float:
        return np.pi * hbar / (self.q_axis.count * self.q_axis.step)


def make_phase_grid(q_axis: AxisGrid, config: Config) -> PhaseGrid:
    """Build the phase-space lattice over ``q_axis`` and its conjugate momentum axis.

    The momentum spacing satisfies ``dq * dp * count == pi * hbar`` exactly,
    and the axis is centered: ``p_min = -(count/2) * dp``.
    """
    n = q_axis.count
    dp = np.pi * config.hbar / (n * q_axis.step)
    p_axis = AxisGrid(min=-(n // 2) * dp, step=dp, count=n)
    return PhaseGrid(q_axis=q_axis, p_axis=p_axis)


@dataclass(frozen=True)
class WaveFunction:
    """Complex amplitudes ``psi(q_i)`` on an :class:`AxisGrid`.

    Normalisation (``sum |psi|^2 * step == 1``) is established by
    :func:`normalize` and required by the transforms; the container itself
    only validates shape and finiteness.
    """

    grid: AxisGrid
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (self.grid.count,):
            raise ValueError(
                f"amplitudes shape {amp.shape} does not match grid count {self.grid.count}"
            )
        if not np.all(np.isfinite(amp.view(float))):
            raise ValueError("amplitudes must be finite")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    def norm(self) -> float:
        """Discrete L2 norm, ``sqrt(sum |psi_i|^2 * step)``."""
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.step))


@dataclass(frozen=True)
class DensityMatrix:
    """Position-kernel density matrix ``rho[a, b] ~ <q_a|rho|q_b>``.

    Uses the kernel normalisation: ``trace * step == 1``.  ``weights`` may
    record the convex mixture the matrix was built from.
    """

    grid: AxisGrid
    elements: np.ndarray
    weights: Optional[Tuple[Tuple[float, WaveFunction], ...]] = None

    def __post_init__(self):
        el = np.asarray(self.elements, dtype=complex)
        n = self.grid.count
        if el.shape != (n, n):
            raise ValueError(f"elements shape {el.shape} does not match grid count {n}")
        herm = np.abs(el - el.conj().T).max()
        if herm > _HERMITICITY_TOL * max(1.0, np.abs(el).max()):
            raise ValueError(f"density matrix is not Hermitian (deviation {herm:.3e})")
        el.setflags(write=False)
        object.__setattr__(self, "elements", el)
        if self.weights is not None:
            w = [float(wi) for wi, _ in self.weights]
            if any(wi < 0 or wi > 1 for wi in w):
                raise ValueError("mixture weights must lie in [0, 1]")
            if abs(sum(w) - 1.0) > 1e-10:
                raise ValueError(f"mixture weights must sum to 1, got {sum(w)}")
            rebuilt = sum(
                wi * np.outer(s.amplitudes, s.amplitudes.conj()) for wi, s in self.weights
            )
            if np.abs(rebuilt - el).max() > 1e-12 * max(1.0, np.abs(el).max()):
                raise ValueError("elements do not match the recorded mixture")

    @classmethod
    def from_mixture(cls, states: Sequence[Tuple[float, WaveFunction]]) -> "DensityMatrix":
        """Assemble ``sum_i w_i |psi_i><psi_i|`` from normalised states."""
        if not states:
            raise ValueError("mixture must contain at least one state")
        grid = states[0][1].grid
        for _, s in states:
            if s.grid != grid:
                raise ValueError("all mixture states must share one grid")
        el = sum(w * np.outer(s.amplitudes, s.amplitudes.conj()) for w, s in states)
        return cls(grid=grid, elements=el, weights=tuple((float(w), s) for w, s in states))

    def trace(self) -> float:
        return float(np.real(np.trace(self.elements)) * self.grid.step)


@dataclass(frozen=True)
class WignerFunction:
    """Real phase-space quasi-distribution on a :class:`PhaseGrid`.

    ``values[i, k]`` is indexed position-first.  Construction checks that the
    values are real, finite and normalised to 1 within 1e-8.
    """

    grid: PhaseGrid
    values: np.ndarray
    hbar: float

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        n = self.grid.count
        if v.shape != (n, n):
            raise ValueError(f"values shape {v.shape} does not match grid count {n}")
        if not np.all(np.isfinite(v)):
            raise ValueError("Wigner values must be finite")
        mass = v.sum() * self.grid.q_axis.step * self.grid.p_axis.step
        if abs(mass - 1.0) > 1e-8:
            raise ValueError(f"Wigner function integrates to {mass!r}, expected 1 within 1e-8")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def cell(self) -> float:
        """Phase-space cell area ``dq * dp``."""
        return self.grid.q_axis.step * self.grid.p_axis.step


@dataclass(frozen=True)
class PhaseSymbol:
    """Complex phase-space function on a :class:`PhaseGrid` (operator symbol)."""

    grid: PhaseGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        n = self.grid.count
        if v.shape != (n, n):
            raise ValueError(f"values shape {v.shape} does not match grid count {n}")
        if not np.all(np.isfinite(v.view(float))):
            raise ValueError("symbol values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def normalize(psi: WaveFunction) -> WaveFunction:
    """Rescale ``psi`` to unit discrete norm.

    Raises ``ValueError`` on a (numerically) zero state.
    """
    nrm = psi.norm()
    if nrm <= 1e-154:
        raise ValueError("cannot normalize a zero wavefunction")
    return WaveFunction(grid=psi.grid, amplitudes=psi.amplitudes / nrm)


def ho_eigenstate(n: int, grid: AxisGrid, config: Config) -> WaveFunction:
    """Harmonic-oscillator eigenstate ``psi_n`` (m = omega = 1) sampled on ``grid``.

    The Hermite-Gaussian is evaluated in the scaled coordinate ``x/sqrt(hbar)``
    and then normalised discretely.  The grid must be wide enough that the
    state has decayed below 1e-10 at both edges.
    """
    if n < 0 or n != int(n):
        raise ValueError(f"quantum number must be a nonnegative integer, got {n}")
    x = grid.points / np.sqrt(config.hbar)
    coeff = np.zeros(int(n) + 1)
    coeff[int(n)] = 1.0
    raw = hermval(x, coeff) * np.exp(-0.5 * x**2)
    raw = raw / np.sqrt(np.sum(np.abs(raw) ** 2) * grid.step)
    edge = max(abs(raw[0]), abs(raw[-1]))
    if edge > _EDGE_DECAY:
        raise ValueError(
            f"grid does not support ho_eigenstate({n}): edge magnitude {edge:.3e} "
            f"exceeds {_EDGE_DECAY:.0e}"
        )
    return WaveFunction(grid=grid, amplitudes=raw.astype(complex))
