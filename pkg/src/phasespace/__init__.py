"""Phase-space quantum mechanics on one-dimensional grids.

Wigner/Weyl transforms, exact Moyal star products on polynomial symbols,
quantum Liouville time evolution, Husimi smoothing and negativity analysis.
"""

from .grids import (
    AxisGrid,
    Config,
    DensityMatrix,
    PhaseGrid,
    PhaseSymbol,
    WaveFunction,
    WignerFunction,
    ho_eigenstate,
    make_phase_grid,
    normalize,
)
from .transforms import (
    cross_wigner,
    expectation,
    marginal_momentum,
    marginal_position,
    operator_from_poly,
    overlap,
    trace_product,
    wavefunction_to_momentum,
    weyl_quantize,
    weyl_symbol,
    wigner_from_density,
    wigner_from_wavefunction,
    wigner_momentum_form,
)
from .star import (
    PolySymbol,
    format_poly,
    lambda_power_apply,
    moyal_bracket_rhs,
    moyal_bracket_sine_series,
    parse_poly,
    star_product,
    star_product_bopp,
)
from .dynamics import (
    Hamiltonian,
    JumpKernel,
    NumericAbortError,
    Potential,
    Trajectory,
    apply_jump_rhs,
    evolve,
    jump_kernel,
    kinetic_step,
    potential_step_exact,
    potential_step_series_rhs,
)
from .husimi import (
    GaussianPacketSpec,
    PositivityReport,
    gaussian_wigner,
    husimi_smooth,
    minimum_uncertainty_packet,
    positivity_report,
)
from .negativity import (
    ImpossibilityReport,
    impossibility_demo,
    negativity_volume,
    two_interval_state,
)

__version__ = "0.1.0"

__all__ = [
    "AxisGrid",
    "Config",
    "DensityMatrix",
    "GaussianPacketSpec",
    "Hamiltonian",
    "ImpossibilityReport",
    "JumpKernel",
    "NumericAbortError",
    "PhaseGrid",
    "PhaseSymbol",
    "PolySymbol",
    "PositivityReport",
    "Potential",
    "Trajectory",
    "WaveFunction",
    "WignerFunction",
    "apply_jump_rhs",
    "cross_wigner",
    "evolve",
    "expectation",
    "format_poly",
    "gaussian_wigner",
    "ho_eigenstate",
    "husimi_smooth",
    "impossibility_demo",
    "jump_kernel",
    "kinetic_step",
    "lambda_power_apply",
    "make_phase_grid",
    "marginal_momentum",
    "marginal_position",
    "minimum_uncertainty_packet",
    "moyal_bracket_rhs",
    "moyal_bracket_sine_series",
    "negativity_volume",
    "normalize",
    "operator_from_poly",
    "overlap",
    "parse_poly",
    "positivity_report",
    "potential_step_exact",
    "potential_step_series_rhs",
    "star_product",
    "star_product_bopp",
    "trace_product",
    "two_interval_state",
    "wavefunction_to_momentum",
    "weyl_quantize",
    "weyl_symbol",
    "wigner_from_density",
    "wigner_from_wavefunction",
    "wigner_momentum_form",
]
