"""Attenuation of monotone video pulses in transmission lines with an ideal
dielectric: the ohmic voltage drop along finite-conductivity electrodes, in
the strong-skin-effect and thin-electrode (resistive) regimes, computed by
closed forms, a second-kind marching solver, and a resolvent quadrature that
cross-validate each other, plus an independent finite-difference oracle.
"""

from ._backend import backend_name
from .abel import (ResolventHorizonError, SolverReport, abel_invert,
                   compute_F, half_integral, resolvent_for_waveform,
                   resolvent_solution, solve_second_kind)
from .analysis import (DeltaUnreachable, MethodComparison, TDeltaQuery,
                       UnsupportedCombination, compare_methods, figure1_data,
                       find_t_delta, sweep_t_delta)
from .closedform import (Resistive, StrongSkin, delta_front, erfcx, f_closed,
                         usigma_resistive, usigma_step_skin)
from .fdtd import (FdtdConfig, FdtdProbe, simulate_step,
                   verify_against_closed_form)
from .params import (Coaxial, ConfigError, ElectrodeMaterial, LineSpec,
                     Regime, Stripline, TimeConstants, derive_constants,
                     diffusion_depth, skin_regime)
from .sampling import SampledCurve, TimeGrid
from .waveform import (MonotoneCheck, Sampled, Step, Trapezoid,
                       UnsupportedWaveform, evaluate, half_integral_exact,
                       load_waveform_csv, validate_monotone)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "SolverReport", "ResolventHorizonError",
    "half_integral", "abel_invert", "solve_second_kind", "compute_F",
    "resolvent_solution", "resolvent_for_waveform",
    "TDeltaQuery", "DeltaUnreachable", "UnsupportedCombination",
    "MethodComparison", "find_t_delta", "sweep_t_delta", "figure1_data",
    "compare_methods",
    "StrongSkin", "Resistive", "erfcx", "f_closed", "usigma_step_skin",
    "usigma_resistive", "delta_front",
    "FdtdConfig", "FdtdProbe", "simulate_step", "verify_against_closed_form",
    "Coaxial", "Stripline", "ElectrodeMaterial", "LineSpec", "TimeConstants",
    "ConfigError", "Regime", "derive_constants", "skin_regime",
    "diffusion_depth",
    "SampledCurve", "TimeGrid",
    "Step", "Trapezoid", "Sampled", "MonotoneCheck", "UnsupportedWaveform",
    "evaluate", "half_integral_exact", "validate_monotone",
    "load_waveform_csv",
]
