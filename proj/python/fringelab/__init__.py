"""Exact and semiclassical multi-photon two-path interference."""

from ._core import (
    InvalidArgument,
    NumericalError,
    TwoModeConfig,
    amplitude,
    amplitude_trace,
    analyze_fringes,
    approx_amplitude,
    casimir,
    classical_envelope_oracle,
    classical_j3,
    classical_support,
    envelope,
    equal_case_predictions,
    fringe_widths_and_j3,
    match_classical_phases,
    ode_residual,
    ode_solve_oracle,
    operators,
    probability_distribution,
    reference_checks,
    verify_weak_identity,
    weak_value_j3,
    weak_value_j3sq,
)

__all__ = [
    "InvalidArgument",
    "NumericalError",
    "TwoModeConfig",
    "amplitude",
    "amplitude_trace",
    "analyze_fringes",
    "approx_amplitude",
    "casimir",
    "classical_envelope_oracle",
    "classical_j3",
    "classical_support",
    "envelope",
    "equal_case_predictions",
    "fringe_widths_and_j3",
    "match_classical_phases",
    "ode_residual",
    "ode_solve_oracle",
    "operators",
    "probability_distribution",
    "reference_checks",
    "verify_weak_identity",
    "weak_value_j3",
    "weak_value_j3sq",
]
