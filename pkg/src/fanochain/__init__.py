"""Simulation of a discrete state coupled to a continuum through a
time-dependent complex (non-Hermitian) coupling.

The package covers the complex coupling envelopes themselves (pole
expansions, Hilbert-transform pairs, effective Bessel envelopes of a fast
drive), the reservoir's golden-rule constants and weak-coupling decay law,
full integration of the envelope-coupled and driven tight-binding chains,
and a CLI with reproducible experiment presets.
"""

from .continuum import (
    ContinuumSpec,
    MarkovConstants,
    Tabulated,
    TightBindingChain,
    decay_constants,
    markov_amplitude,
    markov_final_population,
    memory_function,
    memory_integral,
    spectral_coupling,
)
from .coupling import (
    BesselEnvelope,
    CouplingSpec,
    EffectiveTime,
    PoleExpansion,
    PoleTerm,
    RealPartOnly,
    Sampled,
    Zero,
    bessel_effective_coupling,
    bessel_j0,
    certify_zero_contour_integral,
    effective_interaction_time,
    eval_coupling,
    hilbert_partner,
)
from .driven import DriveConfig, RwaComparison, compare_rwa, simulate_driven
from .errors import (
    AccuracyWarning,
    ConfigurationError,
    DivergenceError,
    DomainError,
    EdgeTruncationWarning,
    FanoChainError,
    InstabilityError,
    InvalidContourError,
    SingularityError,
    WindowTooSmallError,
)
from .lattice import (
    LatticeState,
    SimConfig,
    Trajectory,
    bloch_spectrum,
    contour_amplitude,
    default_k_grid,
    final_discrete_population,
    simulate,
    spectrum_power_split,
)
from .presets import PRESET_NAMES, build_config, run_preset

__version__ = "0.1.0"

__all__ = [
    "AccuracyWarning", "BesselEnvelope", "ConfigurationError",
    "ContinuumSpec", "CouplingSpec", "DivergenceError", "DomainError",
    "DriveConfig", "EdgeTruncationWarning", "EffectiveTime", "FanoChainError",
    "InstabilityError", "InvalidContourError", "LatticeState",
    "MarkovConstants", "PRESET_NAMES", "PoleExpansion", "PoleTerm",
    "RealPartOnly", "RwaComparison", "Sampled", "SimConfig",
    "SingularityError", "Tabulated", "TightBindingChain", "Trajectory",
    "WindowTooSmallError", "Zero", "bessel_effective_coupling", "bessel_j0",
    "bloch_spectrum", "build_config", "certify_zero_contour_integral",
    "compare_rwa", "contour_amplitude", "decay_constants", "default_k_grid",
    "effective_interaction_time", "eval_coupling", "final_discrete_population",
    "hilbert_partner", "markov_amplitude", "markov_final_population",
    "memory_function", "memory_integral", "run_preset", "simulate",
    "simulate_driven", "spectral_coupling", "spectrum_power_split",
]
