"""Explicit van der Corput d-th derivative bounds for exponential sums."""

from .bounds import (
    BoundBreakdown,
    d2_mean_bound,
    induction_rhs,
    kusmin_landau,
    titchmarsh_bound,
    vdc_dth_bound,
    wvdc_lhs,
    wvdc_rhs,
)
from .constants import ConstantSet, coeff, emit_table, hat_coeff
from .errors import DomainError, HypothesisViolation, InvalidWindowError, ResourceError, VdcError
from .numkernel import (
    DerivativeEnvelope,
    LogPhase,
    Monomial,
    PhaseFunction,
    Polynomial,
    ShiftVector,
    Window,
    brute_T_d,
    diff_function,
    exp_sum,
    mean_exp_sum,
)
from .selection import optimal_d, quince_select, tau0_compute, xi_select
from .zeta import ZetaSumSpec, certificate, zeta_critical_bound

__version__ = "0.1.0"
