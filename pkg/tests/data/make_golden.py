"""Regenerate golden_exp_sums.json with a 50-digit mpmath reference.

Each case is evaluated term by term in mpmath, independently of the
double-double kernel.  Run from the repository root:

    python3 tests/data/make_golden.py
"""

import json
import math
from multiprocessing import Pool
from pathlib import Path

import mpmath

DPS = 50
OUT = Path(__file__).with_name("golden_exp_sums.json")

# (name, family, params, X, Y, sigma)
CASES = [
    ("log_t1000_X100_Y50", "log_phase", {"t": 1000.0}, 100.0, 50.0, None),
    ("log_t1e4_X10_Y1000", "log_phase", {"t": 1e4}, 10.0, 1000.0, None),
    ("log_t1e5_X0_Y126", "log_phase", {"t": 1e5}, 0.0, 126.0, None),
    ("log_t1e6_X400_Y400", "log_phase", {"t": 1e6}, 400.0, 400.0, None),
    ("log_t1e7_X1000_Y10000", "log_phase", {"t": 1e7}, 1000.0, 10000.0, None),
    ("log_t1e8_X1e4_Y1e4", "log_phase", {"t": 1e8}, 1e4, 1e4, None),
    ("log_t1e8_X0_Y1e5", "log_phase", {"t": 1e8}, 0.0, 1e5, None),
    ("log_t1e8_X1e6_Y1e6", "log_phase", {"t": 1e8}, 1e6, 1e6, None),
    ("log_t3e7_X2e5_Y1e6", "log_phase", {"t": 3e7}, 2e5, 1e6, None),
    ("log_t12345_fracX_sigma_half", "log_phase", {"t": 12345.678}, 0.5, 44.3, 0.5),
    ("log_t1e6_sigma_quarter", "log_phase", {"t": 1e6}, 0.0, 5000.0, 0.25),
    ("mono_sqrt", "monomial", {"c": 3.7, "gamma": 0.5}, 1.0, 1e5, None),
    ("mono_3halves", "monomial", {"c": 1e-4, "gamma": 1.5}, 10.0, 2e5, None),
    ("mono_pi", "monomial", {"c": 1e-9, "gamma": 3.14159}, 100.0, 1e4, None),
    ("mono_neg", "monomial", {"c": -250.0, "gamma": 0.75}, 7.25, 3e4, None),
    ("poly_quadratic", "polynomial", {"coeffs": [0.1, 0.3, 0.7071067811865476]}, 0.0, 1e5, None),
    ("poly_cubic", "polynomial", {"coeffs": [0.0, 0.5, 1e-3, 1e-9]}, 10.0, 2e4, None),
    ("poly_half", "polynomial", {"coeffs": [0.0, 0.5]}, 0.0, 4.0, None),
    ("poly_zero", "polynomial", {"coeffs": [0.0]}, 0.0, 10.0, None),
    ("poly_irrational_cubic", "polynomial", {"coeffs": [0.25, 1.4142135623730951, 0.0, 1e-15]}, 0.0, 1e6, None),
]


def phase(family, params, n):
    if family == "log_phase":
        return mpmath.mpf(params["t"]) / (2 * mpmath.pi) * mpmath.log(n)
    if family == "monomial":
        return mpmath.mpf(params["c"]) * mpmath.power(n, mpmath.mpf(params["gamma"]))
    acc = mpmath.mpf(0)
    for c in reversed(params["coeffs"]):
        acc = acc * n + mpmath.mpf(c)
    return acc


def reference(case):
    name, family, params, X, Y, sigma = case
    mpmath.mp.dps = DPS
    first, last = math.floor(X) + 1, math.floor(X + Y)
    if family in ("log_phase", "monomial"):
        first = max(first, 1)
    re, im = mpmath.mpf(0), mpmath.mpf(0)
    for n in range(first, last + 1):
        f = phase(family, params, mpmath.mpf(n))
        u = 2 * (f - mpmath.floor(f))
        w = mpmath.power(n, -mpmath.mpf(sigma)) if sigma else 1
        re += w * mpmath.cospi(u)
        im += w * mpmath.sinpi(u)
    return {
        "name": name, "family": family, "params": params, "X": X, "Y": Y, "sigma": sigma,
        "N": max(0, last - first + 1), "re": mpmath.nstr(re, 30), "im": mpmath.nstr(im, 30),
    }


if __name__ == "__main__":
    with Pool() as pool:
        rows = pool.map(reference, CASES, chunksize=1)
    OUT.write_text(json.dumps({"dps": DPS, "cases": rows}, indent=1) + "\n")
    print(f"wrote {len(rows)} cases to {OUT}")
