"""Zeta-sum certificates and their direct oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import ConstantSet
from .errors import DomainError, HypothesisViolation, ResourceError
from .numkernel import T_CAP, LogPhase, Window, exp_sum, partial_sum_moduli

X_CAP = 1e6
CRITICAL_TAU_MIN = 648.0
# final coefficients of the critical-line bound, tau form and t form
CRIT_LOG_COEF, CRIT_CONST_COEF = 1.89725, 9.89044
CRIT_T_LOG_COEF, CRIT_T_CONST_COEF = 1.39668, 4.71400


@dataclass(frozen=True)
class ZetaSumSpec:
    """A zeta-sum block: X = tau^alpha with tau = t / 2 pi."""

    t: float
    alpha: float
    sigma: float = 0.0

    def __post_init__(self):
        if not self.t > 2 * math.pi:
            raise DomainError(f"t must exceed 2 pi, got {self.t}")
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if self.sigma < 0:
            raise DomainError(f"sigma must be >= 0, got {self.sigma}")

    @property
    def tau(self) -> float:
        return self.t / (2 * math.pi)

    @property
    def X(self) -> float:
        return self.tau**self.alpha


def zeta_S_direct(spec: ZetaSumSpec) -> float:
    """max over X < Z <= 2X of |sum_{X<n<=Z} n^(-sigma) e(f(n))|.

    With sigma = 0 this is S(X, t): the supremum over real Y is attained at
    integer endpoints because the partial sum is a step function.
    """
    X = spec.X
    if X > X_CAP:
        raise ResourceError(f"X = {X:.6g} exceeds the direct-summation cap {X_CAP:g}")
    if spec.t > T_CAP:
        raise ResourceError(f"t = {spec.t:.6g} exceeds the phase-precision cap {T_CAP:g}")
    first, last = math.floor(X) + 1, math.floor(2 * X)
    if last < first:
        return 0.0
    moduli = partial_sum_moduli(LogPhase(spec.t), first, last, spec.sigma or None)
    return float(moduli.max())


def zeta_S_bound(spec: ZetaSumSpec, d: int, consts: ConstantSet = ConstantSet("upward")) -> float:
    """tau^alpha max{A^_d tau^(-2a/D), B^_d tau^((1-ad)/(D-2)), C^_d tau^(-2/D)}."""
    if int(d) != d or d < 2:
        raise DomainError(f"d must be an integer >= 2, got {d}")
    D = 2.0**d
    tau, a = spec.tau, spec.alpha
    lt = math.log(tau)
    if not a * lt * (1.0 - 2.0 / D) >= math.log(d):
        raise HypothesisViolation(f"need X^(1-2/D) >= d (X={spec.X:.6g}, d={d})")
    A_h, B_h, C_h = consts.hat_coeff(d)
    terms = [
        A_h * math.exp((a - 2.0 * a / D) * lt),
        B_h * math.exp((a + (1.0 - a * d) / (D - 2.0)) * lt),
        C_h * math.exp((a - 2.0 / D) * lt),
    ]
    return max(terms)


def zeta_S_d2_bound(spec: ZetaSumSpec, consts: ConstantSet = ConstantSet("upward")) -> float:
    """2A (tau^(1/2) + 2 tau^(alpha - 1/2))."""
    tau = spec.tau
    return 2.0 * consts.A * (math.sqrt(tau) + 2.0 * tau ** (spec.alpha - 0.5))


def partial_sigma_bound(spec: ZetaSumSpec, S_bound: float) -> float:
    """X^(-sigma) S_bound, a bound for the n^(-sigma-it) partial sums."""
    if not spec.sigma > 0:
        raise DomainError(f"sigma must be positive, got {spec.sigma}")
    return spec.X ** (-spec.sigma) * S_bound


def dyadic_blocks(tau: float) -> tuple[int, list[float]]:
    """K with 2^-K tau^(1/2) < tau^(1/3) <= 2^(-K+1) tau^(1/2), and alpha_1..alpha_K.

    Equivalently 2^(K-1) <= tau^(1/6) < 2^K, i.e. K = floor(log2(tau)/6) + 1.
    """
    if not tau > 1:
        raise DomainError(f"tau must exceed 1, got {tau}")
    K = math.floor(math.log2(tau) / 6.0) + 1
    lt = math.log(tau)
    alphas = [0.5 - k * math.log(2.0) / lt for k in range(1, K + 1)]
    return K, alphas


def _critical_tau(t: float) -> float:
    tau = t / (2 * math.pi)
    if not tau >= CRITICAL_TAU_MIN:
        raise HypothesisViolation(f"tau = t/2pi must be >= {CRITICAL_TAU_MIN:g}, got {tau:.6g}")
    return tau


def zeta_critical_bound(t: float, form: str = "tau") -> float:
    """Bound on |sum_{n <= tau^(1/2)} n^(-1/2-it)| valid for tau >= 648."""
    tau = _critical_tau(t)
    if form == "tau":
        r = tau ** (1.0 / 6.0)
        return CRIT_LOG_COEF * r * math.log(tau) + CRIT_CONST_COEF * r
    if form == "t":
        r = t ** (1.0 / 6.0)
        return CRIT_T_LOG_COEF * r * math.log(t) + CRIT_T_CONST_COEF * r
    raise DomainError(f"form must be 'tau' or 't', got {form!r}")


def zeta_critical_structured(t: float, consts: ConstantSet = ConstantSet("upward")) -> dict:
    """The block-by-block form 2 tau^(1/6) + B^_3 K tau^(1/6) and its pieces."""
    tau = _critical_tau(t)
    K, alphas = dyadic_blocks(tau)
    B3 = consts.hat_coeff(3)[1]
    r = tau ** (1.0 / 6.0)
    k_cap = 1.0 + math.log(tau) / (6.0 * math.log(2.0))
    return {
        "tau": tau,
        "K": K,
        "K_cap": k_cap,
        "K_ok": K <= k_cap,
        "alphas": alphas,
        "head": 2.0 * r,
        "blocks": B3 * K * r,
        "value": 2.0 * r + B3 * K * r,
        "closed_form": 2.0 * r + B3 * r * k_cap,
    }


def critical_sum_direct(t: float) -> float:
    """|sum_{n <= tau^(1/2)} n^(-1/2-it)| by direct summation."""
    tau = t / (2 * math.pi)
    n_max = math.isqrt(math.floor(tau))
    if n_max > X_CAP:
        raise ResourceError(f"{n_max} terms exceed the direct-summation cap")
    return abs(exp_sum(LogPhase(t), Window(0.0, float(n_max)), sigma=0.5))


def certificate(t: float, alpha: float, sigma: float = 0.0, d: int | str | None = "auto",
                with_direct: bool = False) -> dict:
    """JSON-ready record {t, tau, alpha, sigma, d, bound, direct, ratio}."""
    from .selection import optimal_d

    spec = ZetaSumSpec(t, alpha, sigma)
    if d in (None, "auto"):
        d = optimal_d(alpha)
    d = int(d)
    bound = zeta_S_bound(spec, d)
    if d == 2:
        bound = min(bound, zeta_S_d2_bound(spec))
    if sigma > 0:
        bound = partial_sigma_bound(spec, bound)
    out = {"t": t, "tau": spec.tau, "alpha": alpha, "sigma": sigma, "d": d, "bound": bound}
    if with_direct:
        direct = zeta_S_direct(spec)
        out["direct"] = direct
        out["ratio"] = direct / bound if bound > 0 else math.inf
    return out
