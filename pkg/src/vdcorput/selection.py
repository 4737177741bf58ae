"""Constructive parameter choices used inside the bound proofs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .constants import hat_coeff
from .errors import DomainError, HypothesisViolation, ResourceError

D_CAP = 24
TAU_PAD = 2.0**-40


@dataclass(frozen=True)
class QuinceResult:
    x: tuple[float, ...]
    branch: str
    N: int | None = None


@dataclass(frozen=True)
class XiChoice:
    xi: float
    branch: str
    h_value: float


def quince_lower(delta: int, xi: float, Y: float) -> list[float]:
    """The guaranteed lower bounds min(xi^(2^n/(2^(delta+1)-2)), Y^(2^n/2^delta))."""
    e = 2.0 ** (delta + 1) - 2.0
    return [min(xi ** (2.0**n / e), Y ** (2.0**n / 2.0**delta)) for n in range(1, delta + 1)]


def quince_select(delta: int, xi: float, Y: float) -> QuinceResult:
    """Positive x_1..x_delta with product xi, each in [lower_n, Y]."""
    if int(delta) != delta or delta < 1:
        raise DomainError(f"delta must be a natural number, got {delta}")
    if not Y > 1:
        raise HypothesisViolation(f"Y must exceed 1, got {Y}")
    delta = int(delta)
    lx, ly = math.log(xi) if xi > 0 else -math.inf, math.log(Y)
    # a few ulps of slack at the upper edge, where xi = Y^delta is often computed
    if not (xi >= 1 and lx <= delta * ly + 1e-15 * (1 + delta * ly)):
        raise HypothesisViolation(f"need 1 <= xi <= Y^delta (xi={xi}, Y={Y}, delta={delta})")
    lx = min(lx, delta * ly)
    if 2.0**delta * lx <= (2.0 ** (delta + 1) - 2.0) * ly:
        e = 2.0 ** (delta + 1) - 2.0
        logs = [2.0**n / e * lx for n in range(1, delta + 1)]
        branch, N = "case_a", None
    else:
        N = next(
            n for n in range(1, delta)
            if 2.0 ** (n + 1) * lx > ((delta - n + 1) * 2.0 ** (n + 1) - 2.0) * ly
        )
        e = 2.0 ** (N + 1) - 2.0
        base = lx + (N - delta) * ly
        logs = [2.0**n / e * base for n in range(1, N + 1)] + [ly] * (delta - N)
        branch = "case_b"
    x = tuple(float(Y) if v >= ly else math.exp(v) for v in logs)
    return QuinceResult(x, branch, N)


def xi_h(xi: float, M: float, N: float, alpha: float, beta: float) -> float:
    return max(xi**-alpha, M * xi**-beta, N * xi**beta)


def xi_rhs(M: float, N: float, Z: float, alpha: float, beta: float) -> float:
    return max(Z**-alpha, M * Z**-beta, math.sqrt(M * N), N ** (alpha / (alpha + beta)))


def xi_select(M: float, N: float, Z: float, alpha: float, beta: float) -> XiChoice:
    """A xi in (0, Z] minimising h(xi) = max(xi^-alpha, M xi^-beta, N xi^beta).

    The minimiser is Z or a crossing of the increasing term with one of
    the decreasing ones, so those candidates suffice.
    """
    for name, v in (("M", M), ("N", N), ("Z", Z), ("alpha", alpha), ("beta", beta)):
        if not v > 0:
            raise DomainError(f"{name} must be positive, got {v}")
    candidates = [("at_Z", Z), ("alpha_cross", N ** (-1.0 / (alpha + beta))),
                  ("beta_cross", (M / N) ** (1.0 / (2.0 * beta)))]
    best = None
    for branch, xi in candidates:
        if not 0 < xi <= Z:
            continue
        h = xi_h(xi, M, N, alpha, beta)
        if best is None or h < best.h_value:
            best = XiChoice(xi, branch, h)
    return best


def breakpoint(d: int) -> Fraction:
    """Upper end 2^(d-2) / (1 + (d-2) 2^(d-2)) of the alpha-interval of d."""
    p = Fraction(2) ** (d - 2)
    return p / (1 + (d - 2) * p)


def exponent(d: int, alpha) -> Fraction:
    """max(-2 alpha/D, (1 - alpha d)/(D - 2), -2/D), exactly."""
    a = Fraction(alpha)
    D = 2**d
    return max(-2 * a / D, (1 - a * d) / (D - 2), Fraction(-2, D))


def optimal_d(alpha: float) -> int:
    """Derivative order minimising the zeta-sum exponent for X = tau^alpha.

    At a breakpoint the two neighbouring orders give the same exponent and
    the smaller d is returned, so the interval of d >= 3 is
    [breakpoint(d+1), breakpoint(d)).
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    a = Fraction(alpha)
    if a >= breakpoint(3):
        return 2
    if a < breakpoint(D_CAP + 1):
        raise DomainError(f"alpha={alpha} needs d > {D_CAP}; below the supported range")
    for d in range(3, D_CAP + 1):
        if a >= breakpoint(d + 1):
            return d
    raise AssertionError("unreachable")


def tau0_exponents(d: int, alpha: float) -> tuple[float, float]:
    D = 2.0**d
    base = (1.0 - alpha * d) / (D - 2.0)
    return 2.0 / D + base, 2.0 * alpha / D + base


def tau0_log(d: int, alpha: float, M: float) -> float:
    """log of the least tau_0 meeting the three threshold inequalities (unpadded)."""
    if int(d) != d or d < 2:
        raise DomainError(f"d must be an integer >= 2, got {d}")
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if not Fraction(alpha) < breakpoint(d):
        raise HypothesisViolation(f"alpha={alpha} must be below {float(breakpoint(d))} for d={d}")
    A_h, B_h, C_h = hat_coeff(d)
    if M < B_h:
        raise HypothesisViolation(f"M={M} must be at least B^_d={B_h}")
    D = 2.0**d
    e_c, e_a = tau0_exponents(d, alpha)
    logs = [D * math.log(d) / (alpha * (D - 2.0))]
    logs.append(math.log(C_h / M) / e_c)
    if A_h > 0:
        logs.append(math.log(A_h / M) / e_a)
    return max(logs)


def tau0_compute(d: int, alpha: float, M: float) -> float:
    """Least tau_0 meeting the three threshold inequalities, padded up by 2^-40."""
    lt = tau0_log(d, alpha, M)
    if lt > 709.0:
        raise ResourceError(f"tau_0 = exp({lt:.6g}) exceeds the double range; use tau0_log")
    return math.exp(lt) * (1.0 + TAU_PAD)


def tau0_conditions(d: int, alpha: float, M: float, tau: float) -> list[bool]:
    A_h, B_h, C_h = hat_coeff(d)
    D = 2.0**d
    e_c, e_a = tau0_exponents(d, alpha)
    lt = math.log(tau)
    return [
        lt >= D * math.log(d) / (alpha * (D - 2.0)),
        e_c * lt >= math.log(C_h / M),
        A_h == 0 or e_a * lt >= math.log(A_h / M),
    ]


def critical_thresholds(d: int = 3) -> tuple[float, float, float]:
    """tau thresholds making every dyadic block of the critical-line sum
    satisfy the tau_0 conditions with M = B^_d.

    Block k has exponent alpha_k = 1/2 - k log 2 / log tau; the binding
    cases are k = K for the first condition (using 2^K <= 2 tau^(1/6)) and
    k = 1 for the other two.  Each condition is linear in log tau.
    """
    A_h, B_h, C_h = hat_coeff(d)
    D = 2.0**d
    ln2 = math.log(2.0)
    # first: ((D-2)/D)(L/2 - K ln2) >= ln d with K ln2 <= ln2 + L/6
    t1 = 3.0 * (D / (D - 2.0) * math.log(d) + ln2)
    # second: [2/D + 1/(D-2) - d/(2(D-2))] L + d ln2/(D-2) >= ln(C^/M)
    a2 = 2.0 / D + 1.0 / (D - 2.0) - d / (2.0 * (D - 2.0))
    t2 = (math.log(C_h / B_h) - d * ln2 / (D - 2.0)) / a2
    # third: [1/(D-2) + (2/D - d/(D-2))/2] L - (2/D - d/(D-2)) ln2 >= ln(A^/M)
    g = 2.0 / D - d / (D - 2.0)
    a3 = 1.0 / (D - 2.0) + g / 2.0
    t3 = (math.log(A_h / B_h) + g * ln2) / a3
    return math.exp(t1), math.exp(t2), math.exp(t3)
