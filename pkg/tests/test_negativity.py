import numpy as np
import pytest

from phasespace import (
    AxisGrid,
    Config,
    GaussianPacketSpec,
    WaveFunction,
    cross_wigner,
    gaussian_wigner,
    ho_eigenstate,
    husimi_smooth,
    impossibility_demo,
    make_phase_grid,
    minimum_uncertainty_packet,
    negativity_volume,
    normalize,
    two_interval_state,
    wigner_from_wavefunction,
)

CFG = Config()


def test_gaussian_has_zero_negativity(ref_grid):
    w = wigner_from_wavefunction(minimum_uncertainty_packet(GaussianPacketSpec(), ref_grid, CFG), CFG)
    assert negativity_volume(w) == pytest.approx(0.0, abs=1e-10)


def test_first_excited_negativity_stable_under_refinement():
    # |W| is kinked along nodal lines, so the lattice sum converges at
    # second order in the step: 128 -> 256 agreement lands near 3e-4,
    # far above the 1e-6 one might hope for from smooth integrands
    vals = []
    for count in (128, 256):
        grid = AxisGrid(min=-8.0, step=16.0 / count, count=count)
        w = wigner_from_wavefunction(ho_eigenstate(1, grid, CFG), CFG)
        vals.append(negativity_volume(w))
    assert vals[1] > 0.1
    assert abs(vals[0] - vals[1]) < 1e-3


def test_far_apart_mixture_is_classical(ref_grid):
    from phasespace import DensityMatrix, wigner_from_density

    grid = AxisGrid(min=-12.0, step=24.0 / 256, count=256)
    a = minimum_uncertainty_packet(GaussianPacketSpec(center_q=-3.0), grid, CFG)
    b = minimum_uncertainty_packet(GaussianPacketSpec(center_q=3.0), grid, CFG)
    rho = DensityMatrix.from_mixture([(0.5, a), (0.5, b)])
    w = wigner_from_density(rho, CFG)
    assert negativity_volume(w) == pytest.approx(0.0, abs=1e-8)


def test_negativity_invariant_under_translation(ref_grid):
    psi = ho_eigenstate(1, ref_grid, CFG)
    w0 = wigner_from_wavefunction(psi, CFG)
    shifted = WaveFunction(grid=ref_grid, amplitudes=np.roll(psi.amplitudes, 16))
    w1 = wigner_from_wavefunction(shifted, CFG)
    assert negativity_volume(w0) == pytest.approx(negativity_volume(w1), abs=1e-8)


def test_two_interval_state_construction(ref_grid):
    psi = two_interval_state(1.0, 0.0, 2.0, 1.0, ref_grid, CFG)
    q = ref_grid.points
    outside = np.abs(q + 1.5) > 0.5  # support is (-2, -1)
    assert np.abs(psi.amplitudes[outside]).max() < 1e-14
    assert psi.norm() == pytest.approx(1.0, abs=1e-10)


def test_two_interval_equal_weights_norm(ref_grid):
    psi = two_interval_state(1 / np.sqrt(2), 1 / np.sqrt(2), 2.0, 1.0, ref_grid, CFG)
    assert psi.norm() == pytest.approx(1.0, abs=1e-10)


def test_two_interval_swap_mirrors_state(ref_grid):
    a, b = 0.6, 0.8
    p1 = two_interval_state(a, b, 2.0, 1.0, ref_grid, CFG)
    p2 = two_interval_state(b, a, 2.0, 1.0, ref_grid, CFG)
    # intervals are mirror images about the box midpoint
    mirrored = p2.amplitudes[::-1]
    # the reversed lattice is offset by one cell relative to the midpoint
    assert np.abs(p1.amplitudes[1:] - mirrored[:-1]).max() < 1e-12


def test_two_interval_validation(ref_grid):
    with pytest.raises(ValueError):
        two_interval_state(1.0, 1.0, 2.0, 1.0, ref_grid, CFG)  # |a|^2+|b|^2 != 1
    with pytest.raises(ValueError, match="gap"):
        two_interval_state(1.0, 0.0, -0.5, 1.0, ref_grid, CFG)
    with pytest.raises(ValueError, match="fit"):
        two_interval_state(1.0, 0.0, 14.0, 4.0, ref_grid, CFG)


def test_superposition_decomposition_pointwise(ref_grid):
    a = 0.8
    b = 0.6 * np.exp(1j * 1.2)
    psi = two_interval_state(a, b, 2.0, 1.0, ref_grid, CFG)
    mid = ref_grid.min + ref_grid.step * (ref_grid.count // 2)
    from phasespace.negativity import _raised_cosine_bump

    psi1 = _raised_cosine_bump(mid - 1.5, 1.0, ref_grid)
    psi2 = _raised_cosine_bump(mid + 1.5, 1.0, ref_grid)
    w = wigner_from_wavefunction(psi, CFG)
    w1 = wigner_from_wavefunction(psi1, CFG)
    w2 = wigner_from_wavefunction(psi2, CFG)
    w12 = cross_wigner(psi1, psi2, CFG)
    combined = abs(a) ** 2 * w1.values + abs(b) ** 2 * w2.values + 2 * np.real(
        a * np.conj(b) * w12
    )
    assert np.abs(w.values - combined).max() < 1e-10


def test_impossibility_demo_default_fixture(ref_grid):
    rep = impossibility_demo(2.0, 1.0, ref_grid, CFG)
    assert rep.min_over_sweep < 0
    assert rep.max_cross_in_gap > 1e-3
    assert rep.max_momentum_product > 1e-6
    assert rep.phase_spread_of_min > 0
    assert rep.contradicts_positivity
    # deterministic across runs
    rep2 = impossibility_demo(2.0, 1.0, ref_grid, CFG)
    assert rep2 == rep


def test_husimi_smoothing_removes_all_negativity(ref_grid):
    from phasespace import WignerFunction

    for psi in (
        ho_eigenstate(1, ref_grid, CFG),
        ho_eigenstate(2, ref_grid, CFG),
        two_interval_state(1 / np.sqrt(2), 1j / np.sqrt(2), 2.0, 1.0, ref_grid, CFG),
    ):
        w = wigner_from_wavefunction(psi, CFG)
        smoothed = husimi_smooth(w, GaussianPacketSpec(width_b=np.sqrt(0.5)), CFG)
        clipped = np.where(np.abs(smoothed) < 1e-15, 0.0, smoothed)
        fake = WignerFunction(grid=w.grid, values=smoothed / (smoothed.sum() * w.cell), hbar=CFG.hbar)
        assert negativity_volume(fake) == pytest.approx(0.0, abs=1e-10)
