"""Pseudo-Hermitian cavity magnonics: spectra of a gain cavity coupled to two
lossy Kittel modes, exceptional-point location, and coherent-perfect-absorption
output spectra.

All frequencies and rates are nu = omega/2pi in MHz; times are microseconds.
"""

from .errors import (
    BracketFailure,
    CavmagError,
    CouplingBelowMinimum,
    DegenerateSpectrum,
    DivergenceDetected,
    NoPhysicalSolution,
    PoleAtRealFrequency,
    SingularDenominator,
    StepTooLarge,
)
from .model import (
    CavityParams,
    EffectiveHamiltonian,
    MagnonParams,
    PseudoHermitianFamily,
    SystemParams,
    build_effective_hamiltonian,
    check_pseudo_hermitian,
    cubic_coefficients,
    effective_gain,
    g_min,
    realize_family,
)
from .spectrum import (
    EigenTriple,
    Ep3Report,
    SpectrumClass,
    cubic_discriminant,
    eigenvalues,
    ep2_locate,
    ep3_critical,
    eq33_residual,
    k_from_eta,
    solve_cubic,
    symmetric_spectrum,
    track_branches,
    two_mode_spectrum,
)
from .scattering import (
    DriveSpec,
    ScatteringResult,
    cpa_drive,
    cpa_residuals,
    find_cpa_frequencies,
    intracavity_amplitude,
    s1_values,
    s_coefficients,
    scattering_outputs,
    self_energy,
)
from .dynamics import Trajectory, evolve_driven, evolve_free, modal_rates
from .sweeps import (
    SweepConfig,
    SweepGrid,
    asymmetric_figure_family,
    fig2_grid,
    fig3_config,
    fig3_grid,
    fig4_config,
    fig4_grid,
    sweep_eigenvalues,
    sweep_k_vs_eta,
    sweep_spectrum,
    symmetric_figure_family,
)
from .cli import run_cli

__version__ = "0.1.0"
