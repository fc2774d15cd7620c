import numpy as np
import pytest
from oracles import hermite_psi, momentum_rep_fine, wigner_point

from phasespace import (
    AxisGrid,
    Config,
    DensityMatrix,
    WaveFunction,
    cross_wigner,
    expectation,
    ho_eigenstate,
    marginal_momentum,
    marginal_position,
    normalize,
    overlap,
    wavefunction_to_momentum,
    wigner_from_density,
    wigner_from_wavefunction,
    wigner_momentum_form,
)
from phasespace.star import PolySymbol


def _gaussian(grid, q0=0.0, p0=0.0, b2=0.5, hbar=1.0):
    x = grid.points
    amp = np.exp(-((x - q0) ** 2) / (4 * b2) + 1j * p0 * x / hbar)
    return normalize(WaveFunction(grid=grid, amplitudes=amp))


def test_ground_state_wigner_closed_form(ref_grid, config):
    psi = _gaussian(ref_grid)
    w = wigner_from_wavefunction(psi, config)
    q = w.grid.q_axis.points
    p = w.grid.p_axis.points
    exact = np.exp(-(q**2)[:, None] - (p**2)[None, :]) / np.pi
    assert np.abs(w.values - exact).max() < 1e-8


def test_ground_state_wigner_closed_form_other_hbar(ref_grid):
    # the action scale enters the width, the height and the momentum lattice
    cfg = Config(hbar=0.5)
    psi = ho_eigenstate(0, ref_grid, cfg)
    w = wigner_from_wavefunction(psi, cfg)
    assert w.grid.p_axis.step == pytest.approx(np.pi * 0.5 / 16.0, rel=1e-14)
    q = w.grid.q_axis.points
    p = w.grid.p_axis.points
    exact = np.exp(-(q**2)[:, None] / 0.5 - (p**2)[None, :] / 0.5) / (np.pi * 0.5)
    assert np.abs(w.values - exact).max() < 1e-10


def test_first_excited_center_value_vs_quadrature(ref_grid, config):
    # independent oracle: direct trapezoid quadrature of the transform at (0, 0)
    oracle = wigner_point(hermite_psi(1), 0.0, 0.0)
    assert oracle == pytest.approx(-1.0 / np.pi, abs=1e-10)
    w = wigner_from_wavefunction(ho_eigenstate(1, ref_grid, config), config)
    assert w.values[128, 128] == pytest.approx(oracle, abs=1e-6)


def test_momentum_boost_shifts_p_axis(ref_grid, config):
    # boosting by one p-step shifts the Wigner function one lattice step in p
    psi = _gaussian(ref_grid)
    w0 = wigner_from_wavefunction(psi, config)
    dp = w0.grid.p_axis.step
    boosted = WaveFunction(
        grid=ref_grid,
        amplitudes=psi.amplitudes * np.exp(1j * dp * ref_grid.points / config.hbar),
    )
    w1 = wigner_from_wavefunction(normalize(boosted), config)
    assert np.abs(w1.values[:, 1:] - w0.values[:, :-1]).max() < 1e-10


def test_density_route_matches_pure_route(ref_grid, config, ho_states):
    rho = DensityMatrix.from_mixture([(1.0, ho_states[0])])
    w_rho = wigner_from_density(rho, config)
    w_psi = wigner_from_wavefunction(ho_states[0], config)
    assert np.abs(w_rho.values - w_psi.values).max() < 1e-12


def test_density_route_is_convex_in_mixtures(ref_grid, config, ho_states):
    rho = DensityMatrix.from_mixture([(0.5, ho_states[0]), (0.5, ho_states[1])])
    w = wigner_from_density(rho, config)
    w0 = wigner_from_wavefunction(ho_states[0], config)
    w1 = wigner_from_wavefunction(ho_states[1], config)
    assert np.abs(w.values - 0.5 * w0.values - 0.5 * w1.values).max() < 1e-12
    # convexity: the mixture dominates the worse of the two branches pointwise
    assert np.all(w.values >= np.minimum(w0.values, w1.values) - 1e-12)


@pytest.mark.parametrize("n", range(4))
def test_momentum_form_equivalence(ref_grid, config, n):
    psi = ho_eigenstate(n, ref_grid, config)
    w1 = wigner_from_wavefunction(psi, config)
    w2 = wigner_momentum_form(psi, config)
    assert np.abs(w1.values - w2.values).max() < 1e-8


def test_momentum_form_equivalence_for_boosted_packet(ref_grid, config):
    # a displaced, boosted packet has genuinely complex structure and pins
    # the conjugation placement of the momentum-side rule; with the
    # conjugate on the wrong shift the routes disagree at O(1)
    psi = _gaussian(ref_grid, q0=0.5, p0=0.75)
    w1 = wigner_from_wavefunction(psi, config)
    w2 = wigner_momentum_form(psi, config)
    assert np.abs(w1.values - w2.values).max() < 1e-8


def test_momentum_form_qp_symmetry(config):
    # transpose comparison needs a self-conjugate lattice: dq = dp = sqrt(pi/N)
    n_pts = 256
    dq = np.sqrt(np.pi / n_pts)
    grid = AxisGrid(min=-(n_pts // 2) * dq, step=dq, count=n_pts)
    for n in (0, 2):
        w = wigner_from_wavefunction(ho_eigenstate(n, grid, config), config)
        assert w.grid.p_axis.step == pytest.approx(dq, rel=1e-12)
        assert np.abs(w.values - w.values.T).max() < 1e-8


def test_reflection_covariance_is_exact(ref_grid, config):
    psi = _gaussian(ref_grid, q0=0.8, p0=0.5)
    w = wigner_from_wavefunction(psi, config)
    reflected = WaveFunction(grid=ref_grid, amplitudes=psi.amplitudes[::-1].copy())
    wr = wigner_from_wavefunction(reflected, config)
    n = ref_grid.count
    expect = w.values[::-1, :][:, (n - np.arange(n)) % n]
    assert np.array_equal(wr.values, expect) or np.abs(wr.values - expect).max() < 1e-15


def test_conjugation_flips_momentum_axis(ref_grid, config):
    psi = _gaussian(ref_grid, q0=0.4, p0=1.1)
    w = wigner_from_wavefunction(psi, config)
    wc = wigner_from_wavefunction(
        WaveFunction(grid=ref_grid, amplitudes=psi.amplitudes.conj()), config
    )
    n = ref_grid.count
    assert np.abs(wc.values - w.values[:, (n - np.arange(n)) % n]).max() < 1e-15


def test_marginals_match_densities(ref_grid, config, ho_states):
    for n, psi in enumerate(ho_states):
        w = wigner_from_wavefunction(psi, config)
        mq = marginal_position(w)
        assert np.abs(mq - np.abs(psi.amplitudes) ** 2).max() < 1e-8
        mp = marginal_momentum(w)
        phi = wavefunction_to_momentum(psi, config)
        assert np.abs(mp - np.abs(phi) ** 2).max() < 1e-8
        assert mq.sum() * ref_grid.step == pytest.approx(1.0, abs=1e-8)
        assert mp.sum() * w.grid.p_axis.step == pytest.approx(1.0, abs=1e-8)


def test_momentum_rep_against_direct_sum(ref_grid, config):
    psi = _gaussian(ref_grid, q0=0.3, p0=2.0)
    phi = wavefunction_to_momentum(psi, config)
    p_axis = np.pi / 16 * (np.arange(256) - 128)
    picks = [64, 128, 140, 170]
    direct = momentum_rep_fine(psi.amplitudes, ref_grid.points, p_axis[picks], config.hbar)
    for k, dv in zip(picks, direct):
        assert phi[k] == pytest.approx(dv, abs=1e-10)


def test_marginal_momentum_mean_shift(ref_grid, config):
    psi = _gaussian(ref_grid, p0=2.0)
    w = wigner_from_wavefunction(psi, config)
    p = w.grid.p_axis.points
    mean = (marginal_momentum(w) * p).sum() * w.grid.p_axis.step
    assert mean == pytest.approx(2.0, abs=1e-8)


def test_ground_state_marginal_closed_form(ref_grid, config):
    w = wigner_from_wavefunction(_gaussian(ref_grid), config)
    q = w.grid.q_axis.points
    assert np.abs(marginal_position(w) - np.pi**-0.5 * np.exp(-(q**2))).max() < 1e-8
    assert marginal_position(w)[128] == pytest.approx(np.pi**-0.5, abs=1e-10)


def test_overlap_of_eigenstates(config, ho_states):
    ws = [wigner_from_wavefunction(s, config) for s in ho_states]
    assert overlap(ws[0], ws[0]) == pytest.approx(1.0, abs=1e-6)
    assert overlap(ws[0], ws[1]) == pytest.approx(0.0, abs=1e-6)
    # an orthogonal-pair zero forces one factor to take negative values
    assert min(w.values.min() for w in (ws[0], ws[1])) < 0


def test_overlap_of_displaced_gaussians(ref_grid, config):
    d = 1.3
    wa = wigner_from_wavefunction(_gaussian(ref_grid), config)
    wb = wigner_from_wavefunction(_gaussian(ref_grid, q0=d), config)
    # oracle: direct inner product of the sampled states
    ip = np.vdot(_gaussian(ref_grid).amplitudes, _gaussian(ref_grid, q0=d).amplitudes)
    ip *= ref_grid.step
    assert abs(ip) ** 2 == pytest.approx(np.exp(-d * d / 2), abs=1e-12)
    assert overlap(wa, wb) == pytest.approx(np.exp(-d * d / 2), abs=1e-6)


def test_overlap_grid_mismatch_rejected(ref_grid, small_grid, config):
    w1 = wigner_from_wavefunction(ho_eigenstate(0, ref_grid, config), config)
    w2 = wigner_from_wavefunction(ho_eigenstate(0, small_grid, config), config)
    with pytest.raises(ValueError):
        overlap(w1, w2)


def test_expectation_oscillator_energies(config, ho_states):
    h = PolySymbol({(2, 0): 0.5, (0, 2): 0.5})
    for n, psi in enumerate(ho_states):
        w = wigner_from_wavefunction(psi, config)
        # oracle: matrix elements of the spectral Hamiltonian acting on psi
        g = psi.grid
        kap = 2 * np.pi * np.fft.fftfreq(g.count, d=g.step)
        hpsi = 0.5 * g.points**2 * psi.amplitudes + 0.5 * np.fft.ifft(
            (config.hbar * kap) ** 2 * np.fft.fft(psi.amplitudes)
        )
        direct = float(np.real(np.vdot(psi.amplitudes, hpsi)) * g.step)
        assert direct == pytest.approx(n + 0.5, abs=1e-9)
        tol = 1e-8 if n == 0 else 1e-6
        assert expectation(w, h.sample(w.grid)) == pytest.approx(direct, abs=tol)


def test_expectation_separable_splits_into_marginals(ref_grid, config):
    psi = _gaussian(ref_grid, q0=0.5, p0=-0.3)
    w = wigner_from_wavefunction(psi, config)
    f = PolySymbol({(2, 0): 1.0, (1, 0): -0.25})   # f(q)
    g = PolySymbol({(0, 2): 0.5, (0, 1): 2.0})     # g(p)
    together = expectation(w, (f + g).sample(w.grid))
    q = w.grid.q_axis.points
    p = w.grid.p_axis.points
    split = (marginal_position(w) * (q**2 - 0.25 * q)).sum() * w.grid.q_axis.step
    split += (marginal_momentum(w) * (0.5 * p**2 + 2 * p)).sum() * w.grid.p_axis.step
    assert together == pytest.approx(split, abs=1e-10)


def test_expectation_rejects_complex_symbol(ref_grid, config):
    w = wigner_from_wavefunction(_gaussian(ref_grid), config)
    bad = PolySymbol({(1, 0): 1j})
    with pytest.raises(ValueError, match="Hermitian"):
        expectation(w, bad.sample(w.grid))


def test_transform_linearity_in_density(ref_grid, config, ho_states):
    r1 = DensityMatrix.from_mixture([(1.0, ho_states[0])])
    r2 = DensityMatrix.from_mixture([(1.0, ho_states[2])])
    mix = DensityMatrix.from_mixture([(0.3, ho_states[0]), (0.7, ho_states[2])])
    w = wigner_from_density(mix, config)
    w1 = wigner_from_density(r1, config)
    w2 = wigner_from_density(r2, config)
    assert np.abs(w.values - 0.3 * w1.values - 0.7 * w2.values).max() < 1e-14


def test_cross_wigner_decomposition(ref_grid, config, ho_states):
    a, b = 0.6, 0.8 * np.exp(1j * 0.7)
    psi = normalize(
        WaveFunction(
            grid=ref_grid,
            amplitudes=a * ho_states[0].amplitudes + b * ho_states[1].amplitudes,
        )
    )
    w = wigner_from_wavefunction(psi, config)
    w0 = wigner_from_wavefunction(ho_states[0], config)
    w1 = wigner_from_wavefunction(ho_states[1], config)
    w01 = cross_wigner(ho_states[0], ho_states[1], config)
    combined = (
        abs(a) ** 2 * w0.values
        + abs(b) ** 2 * w1.values
        + 2 * np.real(a * np.conj(b) * w01)
    )
    assert np.abs(w.values - combined).max() < 1e-10


def test_unnormalized_state_rejected(ref_grid, config):
    psi = WaveFunction(grid=ref_grid, amplitudes=2.0 * ho_eigenstate(0, ref_grid, config).amplitudes)
    with pytest.raises(ValueError, match="norm"):
        wigner_from_wavefunction(psi, config)
