"""Explicit constants of the d-th derivative estimate and its zeta corollaries.

All coefficients are evaluated in log space, which keeps the large powers
2**(D/4) and the factorials (d-1)! harmless for any d.  ``rounding="upward"``
multiplies each returned value by (1 + 2**-40); this is the rigor budget
used when a constant becomes a bound coefficient.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

UP_PAD = 2.0**-40
ROUNDINGS = ("nearest", "upward")

# Rows beyond the printed tables are summarised by the supremum over
# 22 <= d <= LIMIT_D_MAX.
LIMIT_D_MIN = 22
LIMIT_D_MAX = 64


def _round(x: float, rounding: str) -> float:
    if rounding == "nearest":
        return x
    if rounding == "upward":
        return x * (1.0 + UP_PAD) if x > 0 else x
    raise DomainError(f"unknown rounding mode {rounding!r}")


def _check_d(d: int, least: int = 2) -> int:
    if int(d) != d or d < least:
        raise DomainError(f"d must be an integer >= {least}, got {d}")
    return int(d)


def _A() -> float:
    return 2.0 / math.sqrt(math.pi) * (1.0 + math.sqrt(1.0 + 3.0 * math.pi / 8.0))


def _B() -> float:
    return 2.0 + 2.0 * math.sqrt(2.0)


def const_A(rounding: str = "nearest") -> float:
    """Second-derivative constant A = 2/sqrt(pi) (1 + sqrt(1 + 3 pi/8))."""
    return _round(_A(), rounding)


def const_B(rounding: str = "nearest") -> float:
    """Weyl differencing constant B = 2 + 2 sqrt 2."""
    return _round(_B(), rounding)


def _coeff_nearest(d: int) -> tuple[float, float, float]:
    A, B = _A(), _B()
    if d == 2:
        r4 = 2.0**0.25
        return 0.0, r4 * B, 2.0**1.25 * A * B / (r4 * B - A)
    D = 2.0**d
    logA_d = math.log(B) + 0.5 * math.log(2.0) + (2.0 / D) * math.log(d - 2)
    logB_d = math.log(B) + (
        math.log(81.0 / 8.0)
        + 2 * d * math.log(2.0 / 3.0)
        + (D / 4.0) * math.log(2.0)
        + 2.0 * math.log(A / B)
    ) / (D - 2.0)
    logC_d = (
        math.log(B)
        + (4.0 / D) * (math.log(A / B) + d * math.log(2.0))
        + (2.0 * (d - 2) / D) * math.log(d - 2)
    )
    return math.exp(logA_d), math.exp(logB_d), math.exp(logC_d)


def coeff(d: int, rounding: str = "nearest") -> tuple[float, float, float]:
    """(A_d, B_d, C_d); d = 2 gives the two-term second-derivative form."""
    d = _check_d(d)
    return tuple(_round(x, rounding) for x in _coeff_nearest(d))


def coeff_prime_A(d: int, rounding: str = "nearest") -> float:
    """A'_d = B (9/2 (2/3)^d A^2 B^-2 D)^(2/D), the sharper first coefficient."""
    d = _check_d(d, 3)
    A, B = _A(), _B()
    D = 2.0**d
    inner = math.log(4.5) + d * math.log(2.0 / 3.0) + 2.0 * math.log(A / B) + d * math.log(2.0)
    return _round(B * math.exp(2.0 / D * inner), rounding)


def hat_coeff(d: int, rounding: str = "nearest") -> tuple[float, float, float]:
    """Zeta-sum coefficients (A^_d, B^_d, C^_d)."""
    d = _check_d(d)
    A_d, B_d, C_d = _coeff_nearest(d)
    D = 2.0**d
    log_fact = math.log(math.factorial(d - 1))
    log_D = d * math.log(2.0)
    a = 2.0 ** (2.0 * d / D) * A_d
    b = math.exp((log_fact + log_D) / (D - 2.0)) * B_d
    c = math.exp(-2.0 / D * (log_fact - log_D)) * C_d
    return tuple(_round(x, rounding) for x in (a, b, c))


def titchmarsh_C4(rounding: str = "nearest") -> float:
    """C_4 = 2 (2 A B^3)^(1/4), the largest of A_d, B_d, C_d for d >= 4."""
    return _round(2.0 * (2.0 * _A() * _B() ** 3) ** 0.25, rounding)


def sup_coefficients() -> dict:
    """Closed forms of the suprema over d >= 3 and the d >= 2 rounded display."""
    A, B = _A(), _B()
    return {
        "A_sup_d3": B * 2.0**0.625,
        "B_sup_d3": B * 2.0**0.25,
        "C_sup_d3": 2.0 * B * math.sqrt(2.0 * A / B),
        "display_d2": (7.447, 5.742, 10.882),
    }


@dataclass(frozen=True)
class ConstantSet:
    """Every explicit constant, bundled under one rounding mode."""

    rounding: str = "nearest"

    def __post_init__(self):
        if self.rounding not in ROUNDINGS:
            raise DomainError(f"unknown rounding mode {self.rounding!r}")

    @property
    def A(self) -> float:
        return const_A(self.rounding)

    @property
    def B(self) -> float:
        return const_B(self.rounding)

    def coeff(self, d: int):
        return coeff(d, self.rounding)

    def coeff_prime_A(self, d: int) -> float:
        return coeff_prime_A(d, self.rounding)

    def hat_coeff(self, d: int):
        return hat_coeff(d, self.rounding)

    def C4(self) -> float:
        return titchmarsh_C4(self.rounding)


def ceil3(x: float) -> float:
    """Round up at three decimals, exactly (no binary drift at the grid)."""
    q = Fraction(x) * 1000
    n = q.numerator // q.denominator
    if n != q:
        n += 1
    return n / 1000


def emit_table(which: str, d_max: int, rounding: str = "nearest") -> list[dict]:
    """Rows d = 2..d_max plus the '>21' supremum row, each entry rounded up."""
    if which not in ("table1", "table2", "1", "2", 1, 2):
        raise DomainError(f"unknown table {which!r}")
    d_max = _check_d(d_max)
    fn = coeff if str(which) in ("table1", "1") else hat_coeff
    rows = []
    for d in range(2, d_max + 1):
        a, b, c = fn(d, rounding)
        rows.append({"d": d, "A": ceil3(a), "B": ceil3(b), "C": ceil3(c)})
    tail = [tuple(ceil3(x) for x in fn(d, rounding)) for d in range(LIMIT_D_MIN, LIMIT_D_MAX + 1)]
    rows.append({"d": f">{LIMIT_D_MIN - 1}", "A": max(r[0] for r in tail),
                 "B": max(r[1] for r in tail), "C": max(r[2] for r in tail)})
    return rows


def table_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["d", "A", "B", "C"], lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (f"{v:.3f}" if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def table_to_json(rows: list[dict]) -> str:
    return json.dumps(rows)
