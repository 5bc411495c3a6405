"""Asymptotic secret key rates for the four-state discrete-modulated relay
protocol, with and without zero-photon catalysis.

The library is organized as a pipeline of pure functions: source statistics
(:mod:`~mdicvqkd.modulation`), catalysis of the traveling mode
(:mod:`~mdicvqkd.catalysis`), reduction of the two-fiber relay topology to an
equivalent one-way channel (:mod:`~mdicvqkd.channel`), the key rate itself
(:mod:`~mdicvqkd.keyrate`), and scalar searches over the protocol parameters
(:mod:`~mdicvqkd.optimizer`).  :mod:`~mdicvqkd.fock` re-derives the closed
forms from a truncated photon-number basis for verification, and
:mod:`~mdicvqkd.cli` exposes the sweep commands.
"""

__version__ = "0.1.0"

from .catalysis import CatalysisResult, apply_catalysis, success_probability
from .channel import (
    ChannelScenario,
    EquivalentChannel,
    chi_line,
    equivalent_channel,
    excess_noise_at_gain,
    optimal_gain_sq,
    transmittance_from_distance,
)
from .errors import DomainError, EvaluationError, PhysicalityError, TruncationError
from .keyrate import (
    KeyRateResult,
    TwoModeCovariance,
    conditional_eigenvalue,
    covariance_ab,
    g_function,
    holevo_bound,
    mutual_information,
    plob_bound,
    secret_key_rate,
    symplectic_eigenvalues,
)
from .modulation import (
    ModulationState,
    correlation_z4,
    correlation_zg,
    lambda_coeffs,
    modulation_state,
    variance_x,
)
from .optimizer import (
    OptimizationOutcome,
    max_distance,
    maximize_over_t,
    maximize_over_v,
    noise_threshold,
    strict_t_upper,
)

__all__ = [
    "__version__",
    "ModulationState",
    "lambda_coeffs",
    "variance_x",
    "correlation_z4",
    "correlation_zg",
    "modulation_state",
    "CatalysisResult",
    "success_probability",
    "apply_catalysis",
    "ChannelScenario",
    "EquivalentChannel",
    "transmittance_from_distance",
    "chi_line",
    "optimal_gain_sq",
    "excess_noise_at_gain",
    "equivalent_channel",
    "TwoModeCovariance",
    "KeyRateResult",
    "covariance_ab",
    "mutual_information",
    "g_function",
    "symplectic_eigenvalues",
    "conditional_eigenvalue",
    "holevo_bound",
    "secret_key_rate",
    "plob_bound",
    "OptimizationOutcome",
    "maximize_over_t",
    "maximize_over_v",
    "noise_threshold",
    "max_distance",
    "strict_t_upper",
    "DomainError",
    "PhysicalityError",
    "EvaluationError",
    "TruncationError",
]
