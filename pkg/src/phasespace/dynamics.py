"""Time evolution of Wigner functions under H = p^2/2m + V(q).

The kinetic part is exact free advection, applied spectrally.  The potential
part comes in two interchangeable forms:

* :func:`potential_step_exact` — multiply the relative-coordinate (y)
  representation by ``exp(i dt [V(q+y/2) - V(q-y/2)] / hbar)``.  Exact for
  any time step and any time-independent potential; the lattice substitution
  ``y = 2 m dq`` keeps ``q +/- y/2`` on grid points.
* :func:`potential_step_series_rhs` — the odd-derivative series generator
  ``sum_lambda (1/lambda!) (hbar/2i)^(lambda-1) V^(lambda)(q) d^lambda W/dp^lambda``,
  evaluated spectrally; exact once ``lambda_max`` reaches the polynomial
  degree of V.

The same generator can be expressed as a momentum-jump convolution with the
kernel built by :func:`jump_kernel`; all three routes agree to rounding for
polynomial potentials.

:func:`evolve` composes full trajectories.  ``split_exact`` is a Strang
splitting of the two exact sub-steps (splitting error only).  The series
methods integrate with a Lawson (integrating-factor) RK4 in which the
kinetic flow is applied exactly between stages; a plain RK4 on the stiff
spectral right-hand side would be unconditionally unstable at practical time
steps.  The stability limit of the Lawson step is set by the potential term
alone: roughly ``dt * max|V'| * pi/dp < 2.8`` for ``lambda_max = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .grids import AxisGrid, Config, PhaseGrid, PhaseSymbol, WignerFunction, make_phase_grid

__all__ = [
    "Potential",
    "Hamiltonian",
    "JumpKernel",
    "Trajectory",
    "NumericAbortError",
    "kinetic_step",
    "potential_step_exact",
    "potential_step_series_rhs",
    "jump_kernel",
    "apply_jump_rhs",
    "evolve",
]

_MAX_POLY_DEGREE = 12
EVOLVE_METHODS = ("split_exact", "series_euler", "classical")


class NumericAbortError(RuntimeError):
    """Raised when evolution produces non-finite values; carries the step index."""

    def __init__(self, step: int):
        super().__init__(f"non-finite values detected at step {step}")
        self.step = step


@dataclass(frozen=True)
class Potential:
    """Polynomial or tabulated potential V(q).

    Polynomial coefficients are ``c_0 .. c_d`` (degree d <= 12) and can be
    evaluated anywhere; tabulated values live on an :class:`AxisGrid` and are
    looked up with periodic indexing, so they are only usable with states on
    the same grid.
    """

    coeffs: Optional[np.ndarray] = None
    grid: Optional[AxisGrid] = None
    values: Optional[np.ndarray] = None

    def __post_init__(self):
        if (self.coeffs is None) == (self.values is None):
            raise ValueError("potential must be either polynomial or tabulated")
        if self.coeffs is not None:
            c = np.atleast_1d(np.asarray(self.coeffs, dtype=float))
            if c.ndim != 1 or c.size == 0:
                raise ValueError("polynomial coefficients must be a 1-D sequence")
            if c.size - 1 > _MAX_POLY_DEGREE:
                raise ValueError(f"polynomial degree {c.size - 1} exceeds {_MAX_POLY_DEGREE}")
            if not np.all(np.isfinite(c)):
                raise ValueError("polynomial coefficients must be finite")
            c.setflags(write=False)
            object.__setattr__(self, "coeffs", c)
        else:
            if self.grid is None:
                raise ValueError("tabulated potential requires a grid")
            v = np.asarray(self.values, dtype=float)
            if v.shape != (self.grid.count,):
                raise ValueError("tabulated values must match the grid")
            if not np.all(np.isfinite(v)):
                raise ValueError("tabulated values must be finite")
            v.setflags(write=False)
            object.__setattr__(self, "values", v)

    @classmethod
    def polynomial(cls, coeffs) -> "Potential":
        return cls(coeffs=np.asarray(coeffs, dtype=float))

    @classmethod
    def tabulated(cls, grid: AxisGrid, values) -> "Potential":
        return cls(grid=grid, values=np.asarray(values, dtype=float))

    @property
    def is_polynomial(self) -> bool:
        return self.coeffs is not None

    @property
    def degree(self) -> Optional[int]:
        if not self.is_polynomial:
            return None
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[-1]) if nz.size else 0

    def __call__(self, x: np.ndarray) -> np.ndarray:
        if self.is_polynomial:
            return np.polynomial.polynomial.polyval(x, self.coeffs)
        raise ValueError("tabulated potentials are evaluated by lattice index, not position")

    def on_lattice(self, grid: AxisGrid, index: np.ndarray) -> np.ndarray:
        """V at lattice index offsets (periodic wrap for tabulated potentials)."""
        if self.is_polynomial:
            return self(grid.min + grid.step * index)
        if self.grid != grid:
            raise ValueError("tabulated potential is defined on a different grid")
        return self.values[np.mod(index, grid.count)]

    def derivative_on_grid(self, grid: AxisGrid, order: int) -> np.ndarray:
        """d^order V / dq^order sampled on ``grid`` (exact for polynomials, spectral otherwise)."""
        if self.is_polynomial:
            c = self.coeffs
            for _ in range(order):
                c = np.polynomial.polynomial.polyder(c)
            return np.polynomial.polynomial.polyval(grid.points, c)
        if self.grid != grid:
            raise ValueError("tabulated potential is defined on a different grid")
        kappa = 2 * np.pi * np.fft.fftfreq(grid.count, d=grid.step)
        return np.fft.ifft((1j * kappa) ** order * np.fft.fft(self.values)).real


@dataclass(frozen=True)
class Hamiltonian:
    """Kinetic mass plus potential; time-independent."""

    mass: float
    potential: Potential

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError(f"mass must be positive, got {self.mass}")

    def phase_symbol(self, grid: PhaseGrid, config: Config) -> PhaseSymbol:
        """H(q, p) = p^2/2m + V(q) sampled on a phase grid (for expectations)."""
        q = grid.q_axis.points
        p = grid.p_axis.points
        if self.potential.is_polynomial:
            vq = self.potential(q)
        else:
            vq = self.potential.on_lattice(grid.q_axis, np.arange(grid.count))
        values = vq[:, None] + (p**2 / (2 * self.mass))[None, :]
        return PhaseSymbol(grid=grid, values=values.astype(complex))


@dataclass(frozen=True)
class JumpKernel:
    """Momentum-jump kernel J(q, j) on a (q-axis x j-axis) lattice.

    The j axis coincides with the momentum axis of the phase grid.  J is odd
    in j (within rounding), which the constructor verifies.
    """

    grid: PhaseGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        n = self.grid.count
        if v.shape != (n, n):
            raise ValueError("jump kernel shape must match the grid")
        if not np.all(np.isfinite(v)):
            raise ValueError("jump kernel must be finite")
        # oddness: j index l maps to -j at index (N - l) % N on the centered axis
        mirrored = v[:, (n - np.arange(n)) % n]
        odd_resid = np.abs(v + mirrored).max()
        if odd_resid > 1e-10 * max(1.0, np.abs(v).max()):
            raise ValueError(f"jump kernel is not odd in j (residual {odd_resid:.3e})")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class Trajectory:
    """Sampled evolution: ``frames[j]`` at ``times[j]`` (always includes t=0 and the end)."""

    times: np.ndarray
    frames: Tuple[WignerFunction, ...]
    method: str

    def __len__(self) -> int:
        return len(self.frames)

    @property
    def final(self) -> WignerFunction:
        return self.frames[-1]


def _signed_lags(n: int) -> np.ndarray:
    return np.rint(np.fft.fftfreq(n) * n).astype(int)


def _kinetic_phase(w_grid: PhaseGrid, mass: float, dt: float) -> np.ndarray:
    n = w_grid.count
    kq = 2 * np.pi * np.fft.fftfreq(n, d=w_grid.q_axis.step)
    p = w_grid.p_axis.points
    return np.exp(-1j * kq[:, None] * (p[None, :] * dt / mass))


def _apply_kinetic(values: np.ndarray, phase: np.ndarray) -> np.ndarray:
    return np.fft.ifft(np.fft.fft(values, axis=0) * phase, axis=0).real


def _potential_phase(w_grid: PhaseGrid, h: Hamiltonian, dt: float, config: Config) -> np.ndarray:
    """exp(i dt [V(q + m dq) - V(q - m dq)] / hbar) indexed [i, fft-bin m]."""
    n = w_grid.count
    m = _signed_lags(n)
    i = np.arange(n)[:, None]
    vp = h.potential.on_lattice(w_grid.q_axis, i + m[None, :])
    vm = h.potential.on_lattice(w_grid.q_axis, i - m[None, :])
    return np.exp(1j * dt / config.hbar * (vp - vm))


def _apply_potential(values: np.ndarray, phase: np.ndarray) -> np.ndarray:
    return np.fft.ifft(np.fft.fft(values, axis=1) * phase, axis=1).real


def _series_multiplier(
    w_grid: PhaseGrid, h: Hamiltonian, lambda_max: int, config: Config
) -> np.ndarray:
    """y-representation multiplier of the truncated potential series, indexed [i, fft-bin m]."""
    n = w_grid.count
    hbar = config.hbar
    kp = 2j * (_signed_lags(n) * w_grid.q_axis.step) / hbar  # (i k_p) per bin
    total = np.zeros((n, n), dtype=complex)
    for lam in range(1, lambda_max + 1, 2):
        vd = h.potential.derivative_on_grid(w_grid.q_axis, lam)
        if not np.any(vd):
            continue
        total += (
            (1.0 / math.factorial(lam))
            * (hbar / 2j) ** (lam - 1)
            * vd[:, None]
            * (kp**lam)[None, :]
        )
    return total


def kinetic_step(w: WignerFunction, h: Hamiltonian, dt: float) -> WignerFunction:
    """Exact free advection ``W(q, p) -> W(q - p dt/m, p)``, applied spectrally."""
    phase = _kinetic_phase(w.grid, h.mass, dt)
    return WignerFunction(grid=w.grid, values=_apply_kinetic(w.values, phase), hbar=w.hbar)


def potential_step_exact(
    w: WignerFunction, h: Hamiltonian, dt: float, config: Config
) -> WignerFunction:
    """Exact potential flow for time-independent V, any dt.

    Transforms over p to the relative-coordinate representation, applies the
    two-sided potential phase and transforms back.  Tabulated potentials must
    live on the state's position grid (periodic convention).
    """
    phase = _potential_phase(w.grid, h, dt, config)
    return WignerFunction(grid=w.grid, values=_apply_potential(w.values, phase), hbar=w.hbar)


def potential_step_series_rhs(
    w: WignerFunction, h: Hamiltonian, lambda_max: int, config: Config
) -> np.ndarray:
    """Potential part of dW/dt from the odd-derivative series, truncated at ``lambda_max``.

    Exact for polynomial V once ``lambda_max >= degree``; returns a plain
    array (a rate, not a state).
    """
    if lambda_max < 1 or lambda_max % 2 == 0:
        raise ValueError(f"lambda_max must be odd and >= 1, got {lambda_max}")
    mult = _series_multiplier(w.grid, h, lambda_max, config)
    return np.fft.ifft(np.fft.fft(w.values, axis=1) * mult, axis=1).real


def jump_kernel(h: Hamiltonian, grid: PhaseGrid, config: Config) -> JumpKernel:
    """Momentum-jump kernel: sine transform of the two-sided potential difference.

    ``J(q, j) = (1/pi hbar^2) sum_u [V(q+u) - V(q-u)] sin(2 j u / hbar) du``
    on the lattice ``u = m dq``; the j axis is the momentum axis.  Pairing a
    Wigner function with J (:func:`apply_jump_rhs`) reproduces the series
    generator.
    """
    n = grid.count
    hbar = config.hbar
    dq = grid.q_axis.step
    m = _signed_lags(n)
    i = np.arange(n)[:, None]
    dv = h.potential.on_lattice(grid.q_axis, i + m[None, :]) - h.potential.on_lattice(
        grid.q_axis, i - m[None, :]
    )
    u = m * dq
    sin_table = np.sin(2.0 * np.outer(u, grid.p_axis.points) / hbar)
    J = (dq / (np.pi * hbar**2)) * dv @ sin_table
    return JumpKernel(grid=grid, values=J)


def apply_jump_rhs(w: WignerFunction, k: JumpKernel) -> np.ndarray:
    """Potential part of dW/dt as the jump convolution ``int dj W(q, p+j) J(q, j)``.

    Evaluated as a literal lattice convolution (periodic in p), independent of
    the spectral series route.
    """
    if k.grid != w.grid:
        raise ValueError("jump kernel and Wigner function live on different grids")
    n = w.grid.count
    dp = w.grid.p_axis.step
    out = np.zeros_like(w.values)
    for l in range(n):
        shift = l - n // 2  # j_l = (l - N/2) dp
        out += k.values[:, l][:, None] * np.roll(w.values, -shift, axis=1) * dp
    return out


def _check_finite(values: np.ndarray, step: int):
    if not np.all(np.isfinite(values)):
        raise NumericAbortError(step)


def _frame(grid: PhaseGrid, values: np.ndarray, hbar: float, step: int) -> WignerFunction:
    # a frame that fails its own invariants mid-run is numerical blow-up
    try:
        return WignerFunction(grid=grid, values=values.copy(), hbar=hbar)
    except ValueError as exc:
        raise NumericAbortError(step) from exc


def evolve(
    w: WignerFunction,
    h: Hamiltonian,
    dt: float,
    steps: int,
    method: str,
    config: Config,
    stride: int = 1,
    lambda_max: Optional[int] = None,
) -> Trajectory:
    """Propagate a Wigner function and return the sampled trajectory.

    Parameters
    ----------
    method : {"split_exact", "series_euler", "classical"}
        ``split_exact``: Strang composition half-kinetic / full-potential /
        half-kinetic of the two exact sub-steps.  ``series_euler``: Lawson
        (integrating-factor) RK4 on the truncated series generator.
        ``classical``: same integrator with the series forced to
        ``lambda_max = 1``, i.e. the classical Liouville equation.
    stride : int
        Keep every ``stride``-th frame (t=0 and the final frame always).
    lambda_max : int, optional
        Series truncation for ``series_euler``; defaults to the potential's
        polynomial degree (rounded up to odd) or 5 for tabulated potentials.

    Raises
    ------
    NumericAbortError
        If non-finite values appear; carries the 1-based step index.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if method not in EVOLVE_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {EVOLVE_METHODS}")

    times = [0.0]
    frames = [w]
    values = w.values.copy()
    grid, hbar = w.grid, w.hbar

    if method == "split_exact":
        kin_half = _kinetic_phase(grid, h.mass, dt / 2)
        pot_full = _potential_phase(grid, h, dt, config)
        for s in range(1, steps + 1):
            values = _apply_kinetic(values, kin_half)
            values = _apply_potential(values, pot_full)
            values = _apply_kinetic(values, kin_half)
            _check_finite(values, s)
            if s % stride == 0 or s == steps:
                times.append(s * dt)
                frames.append(_frame(grid, values, hbar, s))
    else:
        if method == "classical":
            lmax = 1
        elif lambda_max is not None:
            lmax = lambda_max
        elif h.potential.is_polynomial:
            deg = max(h.potential.degree, 1)
            lmax = deg if deg % 2 == 1 else deg + 1
        else:
            lmax = 5
        if lmax < 1 or lmax % 2 == 0:
            raise ValueError(f"lambda_max must be odd and >= 1, got {lmax}")
        mult = _series_multiplier(grid, h, lmax, config)

        def rhs(v: np.ndarray) -> np.ndarray:
            return np.fft.ifft(np.fft.fft(v, axis=1) * mult, axis=1).real

        kin_half = _kinetic_phase(grid, h.mass, dt / 2)
        kin_full = _kinetic_phase(grid, h.mass, dt)
        for s in range(1, steps + 1):
            # Lawson RK4: exact kinetic flow between stage evaluations
            k1 = rhs(values)
            k2 = rhs(_apply_kinetic(values + (dt / 2) * k1, kin_half))
            k3 = rhs(_apply_kinetic(values, kin_half) + (dt / 2) * k2)
            k4 = rhs(_apply_kinetic(values, kin_full) + dt * _apply_kinetic(k3, kin_half))
            values = _apply_kinetic(values, kin_full) + (dt / 6) * (
                _apply_kinetic(k1, kin_full) + 2 * _apply_kinetic(k2 + k3, kin_half) + k4
            )
            _check_finite(values, s)
            if s % stride == 0 or s == steps:
                times.append(s * dt)
                frames.append(_frame(grid, values, hbar, s))

    return Trajectory(times=np.asarray(times), frames=tuple(frames), method=method)
