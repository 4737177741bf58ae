"""Vectorised double-double arithmetic on numpy arrays.

A double-double number is an unevaluated sum ``hi + lo`` of two float64
values with ``|lo| <= ulp(hi)/2``, giving roughly 106 bits of significand.
Every function here takes and returns ``(hi, lo)`` pairs of arrays (or
scalars, which numpy broadcasts).  The algorithms are the classical
error-free transformations of Dekker and Knuth, following the layout of
the QD library.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def _dd_from_fraction(q: Fraction) -> tuple[float, float]:
    hi = float(q)
    lo = float(q - Fraction(hi))
    return hi, lo


# log(2) and 2*pi to 106+ bits.
LN2 = (0.6931471805599453, 2.3190468138462996e-17)
TWO_PI = (6.283185307179586, 2.4492935982947064e-16)

_EXP_SCALE_BITS = 9
_EXP_TERMS = 12
_INV_FACT = [_dd_from_fraction(Fraction(1, math.factorial(k))) for k in range(_EXP_TERMS + 2)]


def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    err = b - (s - a)
    return s, err


def split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    lo = a - hi
    return hi, lo


def two_prod(a, b):
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    t, f = two_sum(al, bl)
    e = e + t
    s, e = quick_two_sum(s, e)
    e = e + f
    return quick_two_sum(s, e)


def neg(ah, al):
    return -ah, -al


def sub(ah, al, bh, bl):
    return add(ah, al, -bh, -bl)


def mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e = e + (ah * bl + al * bh)
    return quick_two_sum(p, e)


def mul_d(ah, al, b):
    """Multiply a double-double by a plain double."""
    p, e = two_prod(ah, b)
    e = e + al * b
    return quick_two_sum(p, e)


def div(ah, al, bh, bl):
    q1 = ah / bh
    rh, rl = sub(ah, al, *mul_d(bh, bl, q1))
    q2 = rh / bh
    rh, rl = sub(rh, rl, *mul_d(bh, bl, q2))
    q3 = rh / bh
    q1, q2 = quick_two_sum(q1, q2)
    return add(q1, q2, q3, np.zeros_like(q3))


def ldexp(ah, al, k):
    return np.ldexp(ah, k), np.ldexp(al, k)


def exp(ah, al):
    """exp of a double-double; valid for |a| < ~700."""
    ah = np.asarray(ah, dtype=np.float64)
    al = np.asarray(al, dtype=np.float64)
    k = np.rint(ah / LN2[0])
    rh, rl = sub(ah, al, *mul_d(LN2[0], LN2[1], k))
    rh, rl = ldexp(rh, rl, -_EXP_SCALE_BITS)
    # expm1(r) by Horner on the truncated Taylor series
    sh, sl = _INV_FACT[_EXP_TERMS]
    sh = np.full_like(rh, sh)
    sl = np.full_like(rh, sl)
    for j in range(_EXP_TERMS - 1, 0, -1):
        sh, sl = mul(sh, sl, rh, rl)
        sh, sl = add(sh, sl, *_INV_FACT[j])
    sh, sl = mul(sh, sl, rh, rl)
    # expm1(2r) = 2 expm1(r) + expm1(r)**2
    for _ in range(_EXP_SCALE_BITS):
        qh, ql = mul(sh, sl, sh, sl)
        sh, sl = add(2.0 * sh, 2.0 * sl, qh, ql)
    sh, sl = add(sh, sl, 1.0, 0.0)
    return ldexp(sh, sl, k.astype(np.int64))


def log(ah, al):
    """Natural log of a positive double-double (one Newton step on exp)."""
    ah = np.asarray(ah, dtype=np.float64)
    al = np.asarray(al, dtype=np.float64)
    x = np.log(ah)
    eh, el = exp(-x, np.zeros_like(x))
    th, tl = mul(ah, al, eh, el)
    th, tl = add(th, tl, -1.0, 0.0)
    return add(x, np.zeros_like(x), th, tl)


def frac(ah, al):
    """Fractional part in [0, 1) of a double-double, returned as a double."""
    ah = np.asarray(ah, dtype=np.float64)
    r = ah - np.floor(ah)  # exact for |ah| < 2**52
    s = r + al
    s = s - np.floor(s)
    return np.where(s >= 1.0, 0.0, s)


def to_fraction(ah: float, al: float) -> Fraction:
    return Fraction(float(ah)) + Fraction(float(al))
