"""Explicit exponential-sum bounds as functions of (envelope, window).

Every evaluator uses upward-rounded constants unless told otherwise, and
hypothesis violations raise instead of degrading to the trivial bound.
Mean-sum bounds above 1 are returned unclamped.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .constants import ConstantSet
from .errors import DomainError, HypothesisViolation
from .numkernel import DerivativeEnvelope

TERMS = ("first", "second", "third")


@dataclass
class BoundBreakdown:
    """The three competing terms of the d-th derivative bound."""

    d: int
    term_first: float
    term_second: float
    term_third: float
    value: float
    active: str
    constants_used: ConstantSet = field(default_factory=lambda: ConstantSet("upward"))

    @property
    def D(self) -> int:
        return 2**self.d

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "D": self.D,
            "term_first": self.term_first,
            "term_second": self.term_second,
            "term_third": self.term_third,
            "value": self.value,
            "active": self.active,
        }


def _breakdown(d: int, terms: Sequence[float], consts: ConstantSet) -> BoundBreakdown:
    value = max(terms)
    active = TERMS[list(terms).index(value)]
    return BoundBreakdown(d, terms[0], terms[1], terms[2], value, active, consts)


def _check_envelope(env: DerivativeEnvelope, order: int | None = None):
    if not (0 < env.lam <= env.Lam):
        raise HypothesisViolation(f"envelope needs 0 < lambda <= Lambda, got ({env.lam}, {env.Lam})")
    if order is not None and env.d != order:
        raise HypothesisViolation(f"bound needs a derivative envelope of order {order}, got d={env.d}")


def kusmin_landau(theta: float) -> float:
    """First-derivative test: |sum e(f(n))| <= cot(pi theta / 2)."""
    if not 0 < theta <= 0.5:
        raise DomainError(f"theta must lie in (0, 1/2], got {theta}")
    return 1.0 / math.tan(math.pi * theta / 2.0)


def second_derivative_bound_additive(env: DerivativeEnvelope, Y: float) -> float:
    """(Lam Y + 2)(1 + 4/sqrt(pi lam)) + 1, a bound on the full sum."""
    _check_envelope(env, 2)
    if not Y > 0:
        raise HypothesisViolation(f"Y must be positive, got {Y}")
    return (env.Lam * Y + 2.0) * (1.0 + 4.0 / math.sqrt(math.pi * env.lam)) + 1.0


def second_derivative_bound_A(env: DerivativeEnvelope, Y: float,
                              consts: ConstantSet = ConstantSet("upward")) -> float:
    """(A / sqrt(lam)) (Lam Y + 2), a bound on the full sum for Y >= 1."""
    _check_envelope(env, 2)
    if not Y >= 1:
        raise HypothesisViolation(f"Y must be >= 1, got {Y}")
    return consts.A / math.sqrt(env.lam) * (env.Lam * Y + 2.0)


def d2_mean_bound(env: DerivativeEnvelope, Y: float,
                  consts: ConstantSet = ConstantSet("upward")) -> BoundBreakdown:
    """max{B_2 (Lam^2/lam)^(1/2), C_2 (lam Y^2)^(-1/2)} for the mean sum."""
    _check_envelope(env, 2)
    if not Y >= 1:
        raise HypothesisViolation(f"Y must be >= 1, got {Y}")
    _, B2, C2 = consts.coeff(2)
    second = B2 * env.Lam / math.sqrt(env.lam)
    third = C2 / (math.sqrt(env.lam) * Y)
    return _breakdown(2, (0.0, second, third), consts)


def vdc_dth_bound(env: DerivativeEnvelope, Y: float,
                  consts: ConstantSet = ConstantSet("upward")) -> BoundBreakdown:
    """The d-th derivative bound on |(1/Y) sum e(f(n))|.

    d = 2 delegates to :func:`d2_mean_bound`; d >= 3 needs floor(Y) > d.
    """
    _check_envelope(env)
    d = env.d
    if d == 2:
        return d2_mean_bound(env, Y, consts)
    if not math.floor(Y) > d:
        raise HypothesisViolation(f"floor(Y) must exceed d (Y={Y}, d={d})")
    D = 2.0**d
    A_d, B_d, C_d = consts.coeff(d)
    lam, Lam = env.lam, env.Lam
    # log space: lam may be tiny and Y**d may overflow
    first = A_d * math.exp(2.0 / D * (math.log(Lam) - math.log(lam) - math.log(Y)))
    second = B_d * math.exp((2.0 * math.log(Lam) - math.log(lam)) / (D - 2.0))
    third = C_d * math.exp(-2.0 / D * (math.log(lam) + d * math.log(Y)))
    return _breakdown(d, (first, second, third), consts)


def titchmarsh_bound(env: DerivativeEnvelope, Y: float,
                     consts: ConstantSet = ConstantSet("upward")) -> float:
    """C_4 max{(Lam/lam)^(4/D) lam^(1/(D-2)), Y^(-4/D) lam^(-1/(D-2))}."""
    _check_envelope(env)
    d = env.d
    if d < 4:
        raise DomainError(f"the Titchmarsh form needs d >= 4, got d={d}")
    if not Y > d:
        raise HypothesisViolation(f"Y must exceed d (Y={Y}, d={d})")
    D = 2.0**d
    lam, Lam = env.lam, env.Lam
    u = math.exp(4.0 / D * (math.log(Lam) - math.log(lam)) + math.log(lam) / (D - 2.0))
    v = math.exp(-4.0 / D * math.log(Y) - math.log(lam) / (D - 2.0))
    return consts.C4() * max(u, v)


def wvdc_lhs(seq: Sequence[complex], Y: float) -> float:
    """|(1/Y) sum seq|^2."""
    return abs(complex(np.sum(np.asarray(seq, dtype=np.complex128)))) ** 2 / (Y * Y)


def _lag_correlations(seq: np.ndarray) -> np.ndarray:
    """c[a] = sum_n seq[n+a] conj(seq[n]) for a = 0..len-1."""
    n = len(seq)
    full = np.correlate(seq, seq, mode="full")
    return full[n - 1:]


def wvdc_rhs(seq: Sequence[complex], H: int, Y: float | None = None) -> float:
    """Right side of the Weyl-van der Corput inequality.

    ``seq`` holds the values at the consecutive integers of (X, X+Y]; Y
    defaults to ``len(seq)``.
    """
    seq = np.asarray(seq, dtype=np.complex128)
    Y = float(len(seq)) if Y is None else float(Y)
    if int(H) != H or not 1 <= H <= Y:
        raise HypothesisViolation(f"H must be a natural number with H <= Y (H={H}, Y={Y})")
    H = int(H)
    inner = 0j
    for a in range(1, min(H, len(seq))):
        inner += (H - a) * np.vdot(seq[:-a], seq[a:])
    return 4.0 / H + 4.0 / (H * Y) * (inner.real / H)


def wvdc_rhs_all(seq: Sequence[complex], Y: float | None = None) -> np.ndarray:
    """wvdc_rhs for every admissible H = 1..floor(Y), from one correlation pass."""
    seq = np.asarray(seq, dtype=np.complex128)
    Y = float(len(seq)) if Y is None else float(Y)
    Hmax = math.floor(Y)
    c = np.zeros(Hmax + 1, dtype=np.complex128)
    corr = _lag_correlations(seq)
    m = min(len(corr), Hmax + 1)
    c[:m] = corr[:m]
    c[0] = 0.0
    a = np.arange(Hmax + 1)
    s1 = np.cumsum(c)       # sum_{a<=k} c_a
    s2 = np.cumsum(a * c)   # sum_{a<=k} a c_a
    H = np.arange(1, Hmax + 1, dtype=np.float64)
    inner = H * s1[:-1] - s2[:-1]  # sum_{a<H} (H - a) c_a
    return 4.0 / H + 4.0 / (H * Y) * (inner.real / H)


def induction_rhs(H: Sequence[int], T: float, B: float | None = None) -> float:
    """B max(H_1^(-1/2), ..., H_d^(-1/2^d), B^(-1/2^d) T^(1/2^d))."""
    H = list(H)
    if not H:
        raise DomainError("H must be non-empty")
    if any(h < 1 for h in H) or T < 0:
        raise DomainError(f"need H_r >= 1 and T >= 0, got H={H}, T={T}")
    B = ConstantSet("upward").B if B is None else B
    d = len(H)
    terms = [h ** (-1.0 / 2**r) for r, h in enumerate(H, start=1)]
    terms.append((T / B) ** (1.0 / 2**d))
    return B * max(terms)


def b_property_check(H, T, B: float | None = None):
    """Truth of 4/H + 4T <= max(B^2/H, B T); vectorises over arrays."""
    B = ConstantSet("upward").B if B is None else B
    H = np.asarray(H, dtype=np.float64)
    T = np.asarray(T, dtype=np.float64)
    ok = 4.0 / H + 4.0 * T <= np.maximum(B * B / H, B * T)
    return bool(ok) if ok.ndim == 0 else ok
