"""Independent oracles used to pin expected values in the tests.

Everything here deliberately avoids the library's transform internals:
single-point quadratures use dense trapezoid sums over analytic functions,
the wavefunction propagator acts on psi (not W), and the bidirectional
derivative is expanded by literal operator recursion instead of the binomial
formula.
"""

from __future__ import annotations

import numpy as np

from phasespace.star import PolySymbol


def hermite_psi(n: int):
    """Analytic oscillator eigenfunction (hbar = m = omega = 1) as a callable."""
    from math import factorial, pi, sqrt

    from numpy.polynomial.hermite import hermval

    coeff = np.zeros(n + 1)
    coeff[n] = 1.0
    norm = 1.0 / sqrt(2.0**n * factorial(n) * sqrt(pi))

    def psi(x):
        return norm * hermval(np.asarray(x, dtype=float), coeff) * np.exp(-np.asarray(x) ** 2 / 2)

    return psi


def wigner_point(psi, q: float, p: float, hbar: float = 1.0, y_max: float = 30.0, n_y: int = 20001) -> float:
    """Direct trapezoid quadrature of the Wigner integral at a single point."""
    y = np.linspace(-y_max, y_max, n_y)
    integrand = psi(q - y / 2) * np.conj(psi(q + y / 2)) * np.exp(1j * p * y / hbar)
    val = np.trapezoid(integrand, y) / (2 * np.pi * hbar)
    return float(val.real)


def lambda_power_recursive(a: PolySymbol, b: PolySymbol, k: int) -> PolySymbol:
    """a L^k b by k-fold application of the single bidirectional derivative.

    Maintains a list of (left, right, coefficient) branches; each application
    maps (f, g) -> (df/dp, dg/dq) - (df/dq, dg/dp).  No binomial identities.
    """
    branches = [(a, b, 1.0)]
    for _ in range(k):
        nxt = []
        for f, g, c in branches:
            nxt.append((f.diff(dp=1), g.diff(dq=1), c))
            nxt.append((f.diff(dq=1), g.diff(dp=1), -c))
        branches = nxt
    total = PolySymbol()
    for f, g, c in branches:
        if not (f.is_zero() or g.is_zero()):
            total = total + c * (f * g)
    return total


def schrodinger_split_step(
    psi0: np.ndarray, q: np.ndarray, v: np.ndarray, hbar: float, mass: float, dt: float, steps: int
) -> np.ndarray:
    """Strang split-step propagation of a wavefunction on a periodic grid."""
    n = q.size
    dq = q[1] - q[0]
    k = 2 * np.pi * np.fft.fftfreq(n, d=dq)
    half_v = np.exp(-1j * v * dt / (2 * hbar))
    kin = np.exp(-1j * hbar * k**2 * dt / (2 * mass))
    psi = psi0.astype(complex)
    for _ in range(steps):
        psi = half_v * psi
        psi = np.fft.ifft(kin * np.fft.fft(psi))
        psi = half_v * psi
    return psi


def momentum_rep_fine(psi: np.ndarray, q: np.ndarray, p: np.ndarray, hbar: float) -> np.ndarray:
    """Momentum representation by direct (slow) Riemann summation at each p."""
    dq = q[1] - q[0]
    phases = np.exp(-1j * np.outer(p, q) / hbar)
    return phases @ psi * dq / np.sqrt(2 * np.pi * hbar)


def convolve_point(
    w: np.ndarray,
    q: np.ndarray,
    p: np.ndarray,
    q0: float,
    p0: float,
    b: float,
    hbar: float,
) -> float:
    """Gaussian-smoothed value at one phase-space point by direct double sum."""
    dq, dp = q[1] - q[0], p[1] - p[0]
    kern = np.exp(
        -((q[:, None] - q0) ** 2) / (2 * b * b) - 2 * b * b * (p[None, :] - p0) ** 2 / hbar**2
    )
    norm = kern.sum() * dq * dp
    return float((kern * w).sum() * dq * dp / norm)
