"""Entanglement generation and transfer in polarised tree-level Bhabha scattering."""
from .amplitudes import (HelicityAmplitudeTable, amplitude_closed, amplitude_spinor,
                         amplitude_table, measure_kappa)
from .dirac import FourMomentum, DiracSpinor, dirac_adjoint, make_momentum, spinor_u, spinor_v
from .entanglement import (ConcurrenceResult, concurrence, limit_C_AB, limit_C_AC,
                           limit_C_BC, limit_C_REF, pure_state_concurrence, spin_flip)
from .errors import (DegenerateStateError, DomainError, NumericalDegradationError,
                     PoleError, QuadratureError)
from .spectator import cross_term, lambda_norm, rho_C_final, spectator_integrals
from .states import (DensityMatrix, MultiQubitState, ScatteringConfig, partial_trace,
                     reduced_pairs, reference_final, reference_initial, to_density, tripartite_final,
                     tripartite_initial)
from .sweep import (MU_M, SweepPlan, SweepRecord, check_limits, check_mirror,
                    check_spectator, locate_mu_peak, run_sweep, write_csv)

__version__ = "0.1.0"

__all__ = [
    "HelicityAmplitudeTable",
    "amplitude_closed",
    "amplitude_spinor",
    "amplitude_table",
    "measure_kappa",
    "FourMomentum",
    "DiracSpinor",
    "dirac_adjoint",
    "make_momentum",
    "spinor_u",
    "spinor_v",
    "ConcurrenceResult",
    "concurrence",
    "limit_C_AB",
    "limit_C_AC",
    "limit_C_BC",
    "limit_C_REF",
    "pure_state_concurrence",
    "spin_flip",
    "DegenerateStateError",
    "DomainError",
    "NumericalDegradationError",
    "PoleError",
    "QuadratureError",
    "cross_term",
    "lambda_norm",
    "rho_C_final",
    "spectator_integrals",
    "DensityMatrix",
    "MultiQubitState",
    "ScatteringConfig",
    "partial_trace",
    "reduced_pairs",
    "reference_final",
    "reference_initial",
    "to_density",
    "tripartite_final",
    "tripartite_initial",
    "MU_M",
    "SweepPlan",
    "SweepRecord",
    "check_limits",
    "check_mirror",
    "check_spectator",
    "locate_mu_peak",
    "run_sweep",
    "write_csv",
]
