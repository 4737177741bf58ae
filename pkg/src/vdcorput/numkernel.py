"""Brute-force exponential sums with controlled rounding.

Phases are evaluated in double-double arithmetic and reduced modulo one
before the complex exponential is taken, so a phase of size 1e9 still
contributes an angle that is accurate to ~1e-16.  Sums of the unit
vectors are formed with :func:`math.fsum` (correctly rounded, independent
of term order), which makes every result reproducible bit for bit.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import dd
from .errors import DomainError, HypothesisViolation, InvalidWindowError

# Largest |t| accepted for the log phase: keeps the reduced phase error
# below 2**-40 per term.
T_CAP = 1e8
ENVELOPE_PAD = 2.0**-40
CHUNK = 1 << 16


@dataclass(frozen=True)
class Window:
    """The half-open summation range (X, X+Y]."""

    X: float
    Y: float

    def __post_init__(self):
        if not self.Y > 0:
            raise InvalidWindowError(f"window length must be positive, got Y={self.Y}")

    @property
    def right(self) -> float:
        return self.X + self.Y

    def first(self) -> int:
        return math.floor(self.X) + 1

    def last(self) -> int:
        return math.floor(self.X + self.Y)

    def integer_count(self) -> int:
        return max(0, self.last() - self.first() + 1)

    def integers(self) -> range:
        return range(self.first(), self.last() + 1)


@dataclass(frozen=True)
class DerivativeEnvelope:
    """Certificate ``lam <= sign * f^(d)(x) <= Lam`` on a window.

    ``sign`` lets a family with negative d-th derivative carry its envelope;
    the bounds only see ``lam`` and ``Lam`` because |E(f)| = |E(-f)|.
    """

    d: int
    lam: float
    Lam: float
    sign: int = 1

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise DomainError(f"derivative order must be an integer >= 2, got {self.d}")
        if not (0 < self.lam <= self.Lam) or not math.isfinite(self.Lam):
            raise DomainError(f"envelope needs 0 < lambda <= Lambda, got ({self.lam}, {self.Lam})")
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")

    @property
    def D(self) -> int:
        return 2**self.d

    def scaled(self, factor: float, order: int) -> "DerivativeEnvelope":
        return DerivativeEnvelope(order, self.lam * factor, self.Lam * factor, self.sign)


@dataclass(frozen=True)
class ShiftVector:
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(self.a)
        if len(a) < 1:
            raise DomainError("shift vector must have at least one entry")
        for x in a:
            if int(x) != x or x < 1:
                raise DomainError(f"shifts must be positive integers, got {a}")
        object.__setattr__(self, "a", tuple(int(x) for x in a))

    @property
    def h(self) -> int:
        return len(self.a)

    @property
    def total(self) -> int:
        return sum(self.a)

    @property
    def product(self) -> int:
        return math.prod(self.a)


def _as_dd(x) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(x, tuple):
        hi, lo = x
        return np.asarray(hi, dtype=np.float64), np.asarray(lo, dtype=np.float64)
    hi = np.asarray(x, dtype=np.float64)
    return hi, np.zeros_like(hi)


class PhaseFunction:
    """A real phase f with double-double evaluation.

    Subclasses implement :meth:`eval_dd` and :meth:`derivative`.  ``domain``
    is the natural domain (left, right] of f; values outside it contribute
    nothing to exponential sums.
    """

    family = "abstract"

    def __init__(self, envelope: DerivativeEnvelope | None = None,
                 domain: tuple[float, float] | None = None,
                 envelope_window: Window | None = None):
        self.envelope = envelope
        self.domain = domain
        self.envelope_window = envelope_window

    def eval_dd(self, hi, lo):
        raise NotImplementedError

    def derivative(self, k: int, x):
        raise NotImplementedError

    def __call__(self, x):
        hi, lo = self.eval_dd(*_as_dd(x))
        return hi + lo

    def phase_mod1(self, x) -> np.ndarray:
        return dd.frac(*self.eval_dd(*_as_dd(x)))

    @property
    def is_empty(self) -> bool:
        return self.domain is not None and self.domain[1] <= self.domain[0]

    def with_envelope(self, envelope: DerivativeEnvelope, window: Window) -> "PhaseFunction":
        self.envelope = envelope
        self.envelope_window = window
        return self

    def describe(self) -> dict:
        return {"family": self.family}


class LogPhase(PhaseFunction):
    """f(x) = (t / 2 pi) log x, the zeta-sum phase."""

    family = "log_phase"

    def __init__(self, t: float, **kw):
        if not 0 < abs(t) <= T_CAP:
            raise DomainError(f"log phase supports 0 < |t| <= {T_CAP:g}, got t={t}")
        super().__init__(**kw)
        self.t = float(t)
        self._tau = dd.div(self.t, 0.0, *dd.TWO_PI)

    @property
    def tau(self) -> float:
        return self._tau[0] + self._tau[1]

    def eval_dd(self, hi, lo):
        lh, ll = dd.log(hi, lo)
        return dd.mul(lh, ll, *self._tau)

    def derivative(self, k, x):
        x = np.asarray(x, dtype=np.float64)
        if k == 0:
            return self.tau * np.log(x)
        return (-1) ** (k + 1) * self.tau * math.factorial(k - 1) / x**k

    def describe(self):
        return {"family": self.family, "t": self.t}


def _falling(g: float, k: int) -> float:
    out = 1.0
    for j in range(k):
        out *= g - j
    return out


class Monomial(PhaseFunction):
    """f(x) = c x**gamma on x > 0."""

    family = "monomial"

    def __init__(self, c: float, gamma: float, **kw):
        super().__init__(**kw)
        self.c = float(c)
        self.gamma = float(gamma)

    def eval_dd(self, hi, lo):
        lh, ll = dd.log(hi, lo)
        ph, pl = dd.exp(*dd.mul_d(lh, ll, self.gamma))
        return dd.mul_d(ph, pl, self.c)

    def derivative(self, k, x):
        x = np.asarray(x, dtype=np.float64)
        return self.c * _falling(self.gamma, k) * x ** (self.gamma - k)

    def describe(self):
        return {"family": self.family, "c": self.c, "gamma": self.gamma}


class Polynomial(PhaseFunction):
    """f(x) = sum coeffs[j] x**j (coefficients lowest degree first)."""

    family = "polynomial"

    def __init__(self, coeffs: Sequence[float], **kw):
        super().__init__(**kw)
        self.coeffs = tuple(float(c) for c in coeffs) or (0.0,)

    def eval_dd(self, hi, lo):
        hi = np.asarray(hi, dtype=np.float64)
        ah = np.full_like(hi, self.coeffs[-1])
        al = np.zeros_like(hi)
        for c in reversed(self.coeffs[:-1]):
            ah, al = dd.mul(ah, al, hi, lo)
            ah, al = dd.add(ah, al, c, 0.0)
        return ah, al

    def derivative(self, k, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros_like(x)
        for j in range(len(self.coeffs) - 1, k - 1, -1):
            out = out * x + self.coeffs[j] * _falling(j, k)
        return out

    def describe(self):
        return {"family": self.family, "coeffs": list(self.coeffs)}


class ShiftedDifference(PhaseFunction):
    """f_a(x) = sum over J of (-1)**(h-|J|) f(x + a_J).

    Stored as a signed list of shifts sorted canonically, so permuting ``a``
    gives an identical object up to evaluation order.
    """

    family = "shifted_difference"

    def __init__(self, parent: PhaseFunction, a: ShiftVector, **kw):
        super().__init__(**kw)
        self.parent = parent
        self.a = a
        terms: dict[int, int] = {}
        h = a.h
        for mask in range(1 << h):
            offset = sum(a.a[j] for j in range(h) if mask >> j & 1)
            sign = -1 if (h - bin(mask).count("1")) % 2 else 1
            terms[offset] = terms.get(offset, 0) + sign
        self.terms = tuple(sorted((o, s) for o, s in terms.items() if s))

    def eval_dd(self, hi, lo):
        hi = np.asarray(hi, dtype=np.float64)
        lo = np.asarray(lo, dtype=np.float64)
        acc_h = np.zeros_like(hi)
        acc_l = np.zeros_like(hi)
        for offset, coeff in self.terms:
            xh, xl = dd.add(hi, lo, float(offset), 0.0)
            vh, vl = self.parent.eval_dd(xh, xl)
            vh, vl = dd.mul_d(vh, vl, float(coeff))
            acc_h, acc_l = dd.add(acc_h, acc_l, vh, vl)
        return acc_h, acc_l

    def derivative(self, k, x):
        x = np.asarray(x, dtype=np.float64)
        return sum(c * self.parent.derivative(k, x + o) for o, c in self.terms)

    def describe(self):
        return {"family": self.family, "a": list(self.a.a), "parent": self.parent.describe()}


def _sum_range(f: PhaseFunction, w: Window) -> tuple[int, int]:
    lo_edge, hi_edge = w.X, w.right
    if f.domain is not None:
        lo_edge = max(lo_edge, f.domain[0])
        hi_edge = min(hi_edge, f.domain[1])
    return math.floor(lo_edge) + 1, math.floor(hi_edge)


def unit_vectors(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """cos(2 pi p), sin(2 pi p) with exact quadrant reduction.

    Multiples of 1/4 map to exact values in {-1, 0, 1}.
    """
    q = np.rint(4.0 * p)
    r = p - 0.25 * q  # exact, |r| <= 1/8
    c, s = np.cos(2.0 * np.pi * r), np.sin(2.0 * np.pi * r)
    q = q.astype(np.int64) % 4
    re = np.select([q == 0, q == 1, q == 2], [c, -s, -c], s)
    im = np.select([q == 0, q == 1, q == 2], [s, c, -s], -c)
    return re, im


def _chunk_terms(f: PhaseFunction, start: int, stop: int, weight_sigma: float | None):
    n = np.arange(start, stop, dtype=np.float64)
    re, im = unit_vectors(f.phase_mod1(n))
    if weight_sigma:
        scale = n**-weight_sigma
        re, im = re * scale, im * scale
    return re, im


def _thread_count(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("VDCORPUT_THREADS", "1") or 1)
    return max(1, workers)


def exp_sum(f: PhaseFunction, w: Window, *, workers: int | None = None,
            chunk: int = CHUNK, sigma: float | None = None) -> complex:
    """Sum of e(f(n)) over integers n in (X, X+Y] (and in f's domain).

    ``sigma`` weights each term by n**-sigma.  Terms are generated in chunks,
    optionally on a thread pool, and summed with one correctly rounded
    ``fsum`` per component, so the result does not depend on ``workers`` or
    ``chunk``.
    """
    if not isinstance(w, Window):
        w = Window(*w)
    first, last = _sum_range(f, w)
    if last < first:
        return 0j
    starts = list(range(first, last + 1, chunk))
    jobs = [(s, min(s + chunk, last + 1)) for s in starts]
    nthreads = _thread_count(workers)
    if nthreads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(nthreads) as ex:
            parts = list(ex.map(lambda j: _chunk_terms(f, j[0], j[1], sigma), jobs))
    else:
        parts = [_chunk_terms(f, a, b, sigma) for a, b in jobs]
    re = math.fsum(itertools.chain.from_iterable(p[0].tolist() for p in parts))
    im = math.fsum(itertools.chain.from_iterable(p[1].tolist() for p in parts))
    return complex(re, im)


def mean_exp_sum(f: PhaseFunction, w: Window, **kw) -> float:
    if not isinstance(w, Window):
        w = Window(*w)
    return abs(exp_sum(f, w, **kw)) / w.Y


def partial_sum_moduli(f: PhaseFunction, first: int, last: int,
                       sigma: float | None = None) -> np.ndarray:
    """|sum_{first <= n <= m} n**-sigma e(f(n))| for every m in [first, last].

    The running sums use Kahan-Babuska (Neumaier) compensation so each
    prefix is accurate, not just the total.
    """
    if last < first:
        return np.zeros(0)
    out = np.empty(last - first + 1)
    sr = cr = si = ci = 0.0
    pos = 0
    for s in range(first, last + 1, CHUNK):
        re, im = _chunk_terms(f, s, min(s + CHUNK, last + 1), sigma)
        for x, y in zip(re.tolist(), im.tolist()):
            t = sr + x
            if abs(sr) >= abs(x):
                cr += (sr - t) + x
            else:
                cr += (x - t) + sr
            sr = t
            t = si + y
            if abs(si) >= abs(y):
                ci += (si - t) + y
            else:
                ci += (y - t) + si
            si = t
            out[pos] = math.hypot(sr + cr, si + ci)
            pos += 1
    return out


def diff_function(f: PhaseFunction, a: ShiftVector | Iterable[int]) -> ShiftedDifference:
    """The iterated difference f_a on I(a) = (X, X + Y - sum a].

    If f carries an envelope of order d > h on its window, f_a carries the
    order-(d - h) envelope scaled by prod(a), from the integral
    representation of f_a.
    """
    if not isinstance(a, ShiftVector):
        a = ShiftVector(tuple(a))
    domain = None
    base = f.envelope_window
    if f.domain is not None:
        domain = (f.domain[0], f.domain[1] - a.total)
    elif base is not None:
        domain = (base.X, base.right - a.total)
    g = ShiftedDifference(f, a, domain=domain)
    env = f.envelope
    if env is not None and base is not None and env.d - a.h >= 2 and base.Y > a.total:
        g.envelope = env.scaled(float(a.product), env.d - a.h)
        g.envelope_window = Window(base.X, base.Y - a.total)
    return g


def _shift_vectors(H: Sequence[int]):
    return itertools.product(*(range(1, h) for h in H))


def brute_T_d(f: PhaseFunction, w: Window, H: Sequence[int]) -> float:
    """(1 / (Y H_1...H_d)) sum over a of |sum_{n in I(a)} e(f_a(n))|."""
    H = [int(h) for h in H]
    if not H or any(h < 1 for h in H):
        raise DomainError(f"H entries must be integers >= 1, got {H}")
    if not isinstance(w, Window):
        w = Window(*w)
    if sum(H) > w.Y:
        raise HypothesisViolation(f"sum(H) = {sum(H)} exceeds Y = {w.Y}")
    base = PhaseFunctionView(f, w)
    total = []
    for a in _shift_vectors(H):
        g = diff_function(base, ShiftVector(a))
        total.append(abs(exp_sum(g, w)))
    return math.fsum(total) / (w.Y * math.prod(H))


class PhaseFunctionView(PhaseFunction):
    """f restricted to a window, so its differences get the right domain."""

    def __init__(self, f: PhaseFunction, w: Window):
        lo, hi = w.X, w.right
        if f.domain is not None:
            lo, hi = max(lo, f.domain[0]), min(hi, f.domain[1])
        super().__init__(envelope=f.envelope, domain=(lo, hi),
                         envelope_window=f.envelope_window)
        self.inner = f
        self.family = f.family

    def eval_dd(self, hi, lo):
        return self.inner.eval_dd(hi, lo)

    def derivative(self, k, x):
        return self.inner.derivative(k, x)

    def describe(self):
        return self.inner.describe()
