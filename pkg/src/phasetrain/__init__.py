"""phasetrain: measure the integral of a classical field interferometrically.

A single particle spread in equal amplitudes over K = 2**N sites picks up
a site-proportional phase from the field; reading it out in the matched
orthogonal basis estimates the integral on the grid alpha*m with the
multi-slit interference error law.  The package also provides the
equivalent N-qubit register protocol, two classical baselines (an N-bit
Poisson counter and a marker-plus-sequential-bits tally), wrapped-error
statistics, and a phase-encoded string reader, all behind one CLI.
"""

from .backend import backend_name
from .baselines import (
    CounterTrial,
    MarkTape,
    RippleCount,
    click_rate,
    counter_analytic_uncertainty,
    generate_marks,
    ripple_count_marks,
    simulate_counter,
)
from .core import (
    DEFAULT_SIMPSON_PANELS,
    FieldProfile,
    InvalidFieldError,
    ProtocolParams,
    field_from_csv,
    integrate_field,
    make_params,
    wrap_delta,
)
from .register import (
    QubitRegister,
    product_form_error_prob,
    register_outcome_distribution,
    register_phase_for_label,
    register_phases,
    spin_phase,
)
from .stats import (
    MomentReport,
    StrategyComparison,
    asymptotic_quantum_uncertainty,
    compare_strategies,
    exact_moments,
    offset_averaged_moments,
    wrap_error,
)
from .strings import (
    NotInSetError,
    SpecialStringSet,
    decode_string,
    imprint_string,
    special_strings,
    string_gram_matrix,
    strings_from_text,
)
from .train import (
    ErrorDistribution,
    OutcomeSample,
    StateVector,
    closed_form_error_prob,
    imprint_phase,
    measurement_distribution,
    outcome_basis_matrix,
    outcome_basis_state,
    outcome_distribution,
    prepare_uniform_state,
    sample_outcome,
    sample_outcomes,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_SIMPSON_PANELS",
    "CounterTrial",
    "ErrorDistribution",
    "FieldProfile",
    "InvalidFieldError",
    "MarkTape",
    "MomentReport",
    "NotInSetError",
    "OutcomeSample",
    "ProtocolParams",
    "QubitRegister",
    "RippleCount",
    "SpecialStringSet",
    "StateVector",
    "StrategyComparison",
    "asymptotic_quantum_uncertainty",
    "backend_name",
    "click_rate",
    "closed_form_error_prob",
    "compare_strategies",
    "counter_analytic_uncertainty",
    "decode_string",
    "exact_moments",
    "field_from_csv",
    "generate_marks",
    "imprint_phase",
    "imprint_string",
    "integrate_field",
    "make_params",
    "measurement_distribution",
    "offset_averaged_moments",
    "outcome_basis_matrix",
    "outcome_basis_state",
    "outcome_distribution",
    "prepare_uniform_state",
    "product_form_error_prob",
    "register_outcome_distribution",
    "register_phase_for_label",
    "register_phases",
    "ripple_count_marks",
    "sample_outcome",
    "sample_outcomes",
    "simulate_counter",
    "special_strings",
    "spin_phase",
    "string_gram_matrix",
    "strings_from_text",
    "wrap_delta",
    "wrap_error",
]
