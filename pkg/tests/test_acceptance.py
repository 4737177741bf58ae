"""Acceptance criteria, one test per criterion.

After a run the terminal summary lists one PASS/FAIL line per criterion.
Standalone: ``python3 tests/test_acceptance.py``.
"""

import math
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from vdcorput import bounds, constants, selection, verify, zeta
from vdcorput.numkernel import LogPhase, Monomial, Polynomial, Window, exp_sum

TABLE1 = {d: v for d, v in verify.TABLE1.items() if isinstance(d, int)}
TABLE2 = {d: v for d, v in verify.TABLE2.items() if isinstance(d, int)}
BREAKPOINTS = [Fraction(4, 9), Fraction(8, 25), Fraction(16, 65), Fraction(32, 161),
               Fraction(64, 385), Fraction(128, 897), Fraction(256, 2049)]


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def detail(record_property, text):
    record_property("detail", text)


@pytest.mark.criterion(1, "Constants reproduction (Tables 1 and 2, exact at 3 decimals)")
def test_c01_constants_reproduction(record_property):
    with Timer() as tm:
        mismatches = []
        for d in range(2, 12):
            for j, (got, entry) in enumerate(zip(constants.coeff(d), TABLE1[d])):
                if constants.ceil3(got) != entry:
                    mismatches.append(("table1", d, "ABC"[j], got, entry))
            for j, (got, entry) in enumerate(zip(constants.hat_coeff(d), TABLE2[d])):
                if constants.ceil3(got) != entry:
                    mismatches.append(("table2", d, "ABC"[j], got, entry))
    assert not mismatches
    assert tuple(constants.ceil3(x) for x in constants.coeff(6)) == (7.131, 5.445, 7.197)
    assert tuple(constants.ceil3(x) for x in constants.hat_coeff(7)) == (7.554, 6.086, 6.098)
    assert tm.elapsed < 1.0
    detail(record_property, f"60 entries exact, {tm.elapsed * 1e3:.1f} ms")


@pytest.mark.criterion(2, "Named constants A, B to 11 digits; C_4 <= 10.016")
def test_c02_named_constants(record_property):
    A, B, C4 = constants.const_A(), constants.const_B(), constants.titchmarsh_C4("upward")
    assert abs(A - 2.79368380731) < 1e-11
    assert abs(B - 4.8284271247) < 1e-10
    assert C4 == pytest.approx(2 * (2 * A * B**3) ** 0.25, rel=1e-11)
    assert C4 <= 10.016
    detail(record_property, f"A={A:.12f} B={B:.11f} C4={C4:.6f}")


@pytest.mark.criterion(3, "B-property on a 10^3 x 10^3 (H, T) grid")
def test_c03_b_property_grid(record_property):
    with Timer() as tm:
        H = np.arange(1, 1001, dtype=float)[:, None]
        T = np.concatenate([[0.0], np.logspace(-6, 3, 999)])[None, :]
        ok = bounds.b_property_check(H, T)
    assert ok.shape == (1000, 1000)
    assert ok.all()
    assert tm.elapsed < 5.0
    detail(record_property, f"10^6 points, {tm.elapsed:.2f} s")


@pytest.mark.criterion(4, "Weyl-van der Corput on 1000 random sequences, all admissible H")
def test_c04_wvdc(record_property):
    with Timer() as tm:
        records = verify.run_suite("wvdc", 1000, seed=4)
    assert len(records) == 1000
    assert all(10 <= r.inputs["n"] <= 501 for r in records)
    assert all(r.passed for r in records)
    assert tm.elapsed < 60.0
    n_pairs = sum(r.inputs["H_count"] for r in records)
    detail(record_property, f"{n_pairs} (sequence, H) pairs, max LHS/RHS {max(r.ratio for r in records):.4f}, {tm.elapsed:.1f} s")


@pytest.mark.criterion(5, "Kusmin-Landau soundness on 200 corpus functions")
def test_c05_kusmin_landau(record_property):
    with Timer() as tm:
        records = verify.run_suite("kusmin_landau", 200, seed=5)
    assert len(records) == 200
    for r in records:
        assert r.direct_value <= r.bound_value + 1e-9, r.to_dict()
    assert tm.elapsed < 30.0
    detail(record_property, f"max ratio {max(r.ratio for r in records):.4f}, {tm.elapsed:.1f} s")


@pytest.mark.criterion(6, "d-th derivative theorem soundness (d=3..5, d=2, Titchmarsh)")
def test_c06_dth_theorem(record_property):
    with Timer() as tm:
        dth = verify.run_suite("dth_theorem", 500, seed=6)
        d2 = verify.run_suite("d2", 500, seed=6)
    main = [r for r in dth if r.bound_name == "vdc_dth_bound"]
    titch = [r for r in dth if r.bound_name == "titchmarsh_bound"]
    case2 = [r for r in d2 if r.bound_name == "d2_mean_bound"]
    assert len(main) == 500 and len(case2) == 500 and len(titch) > 0
    assert {r.inputs["order"] for r in main} == {3, 4, 5}
    assert max(r.window[1] for r in main) <= 1e4
    for r in dth + d2:
        assert r.direct_value <= r.bound_value + 1e-9, r.to_dict()
    assert tm.elapsed < 300.0
    detail(record_property, f"{len(main)} + {len(case2)} + {len(titch)} records, max ratio "
                            f"{max(r.ratio for r in dth + d2):.4f}, {tm.elapsed:.1f} s")


@pytest.mark.criterion(7, "Induction inequality with brute-forced T_d (depth 1 and 2)")
def test_c07_induction(record_property):
    with Timer() as tm:
        records = verify.run_suite("induction", 100, seed=7)
    assert len(records) == 100
    assert {len(r.inputs["H"]) for r in records} == {1, 2}
    for r in records:
        assert r.direct_value <= r.bound_value + 1e-9, r.to_dict()
    assert tm.elapsed < 300.0
    detail(record_property, f"max ratio {max(r.ratio for r in records):.4f}, {tm.elapsed:.1f} s")


@pytest.mark.criterion(8, "Selection lemmas on 10^4 random inputs each")
def test_c08_selection(record_property):
    rng = np.random.default_rng(8)
    with Timer() as tm:
        for _ in range(10_000):
            delta = int(rng.integers(1, 9))
            Y = float(np.exp(rng.uniform(np.log(1.001), np.log(1e4))))
            xi = math.exp(rng.uniform() * delta * math.log(Y))
            q = selection.quince_select(delta, xi, Y)
            assert abs(math.exp(math.fsum(map(math.log, q.x)) - math.log(xi)) - 1) <= 1e-12
            for x, low in zip(q.x, selection.quince_lower(delta, xi, Y)):
                assert low * (1 - 1e-12) <= x <= Y
        for _ in range(10_000):
            M, N, Z = 10 ** rng.uniform(-4, 4, 3)
            al, be = 10 ** rng.uniform(-1.3, 0.7, 2)
            c = selection.xi_select(M, N, Z, al, be)
            assert 0 < c.xi <= Z
            assert c.h_value == selection.xi_h(c.xi, M, N, al, be)
            assert c.h_value <= selection.xi_rhs(M, N, Z, al, be) * (1 + 1e-12)
    assert tm.elapsed < 30.0
    detail(record_property, f"2 x 10^4 cases, {tm.elapsed:.1f} s")


def _argmin_exponent(alpha: Fraction) -> int:
    best_d, best = None, None
    for d in range(2, 25):
        D = 2**d
        e = max(-2 * alpha / D, (1 - alpha * d) / Fraction(D - 2), Fraction(-2, D))
        if best is None or e < best:
            best_d, best = d, e
    return best_d


@pytest.mark.criterion(9, "Optimal d agrees with brute-force argmin (10^4 samples + breakpoints)")
def test_c09_optimal_d(record_property):
    rng = np.random.default_rng(9)
    lo = float(selection.breakpoint(selection.D_CAP + 1))
    with Timer() as tm:
        samples = [float(a) for a in np.exp(rng.uniform(np.log(lo * 1.000001), np.log(4.0), 10_000))]
        for a in samples:
            assert selection.optimal_d(a) == _argmin_exponent(Fraction(a)), a
        for bp in BREAKPOINTS + [Fraction(2, 3)]:
            assert selection.optimal_d(bp) == _argmin_exponent(bp), bp
            assert selection.optimal_d(float(bp)) == _argmin_exponent(Fraction(float(bp))), bp
    assert tm.elapsed < 5.0
    detail(record_property, f"10^4 samples + {len(BREAKPOINTS) + 1} breakpoints, {tm.elapsed:.2f} s")


@pytest.mark.criterion(10, "Critical-line zeta bound at tau in {648, 2000, 1e4, 1e5}")
def test_c10_zeta_critical(record_property):
    B3 = constants.hat_coeff(3)[1]
    assert B3 / (6 * math.log(2)) <= 1.89725
    assert 2 + B3 <= 9.89044
    ratios = []
    with Timer() as tm:
        for tau in (648.0, 2000.0, 1e4, 1e5):
            t = 2 * math.pi * tau
            direct = zeta.critical_sum_direct(t)
            bound = 1.89725 * tau ** (1 / 6) * math.log(tau) + 9.89044 * tau ** (1 / 6)
            assert zeta.zeta_critical_bound(t) == pytest.approx(bound, rel=1e-12)
            assert direct <= bound
            ratios.append(direct / bound)
    assert tm.elapsed < 120.0
    detail(record_property, "direct/bound " + ", ".join(f"{r:.4f}" for r in ratios))


@pytest.mark.criterion(11, "Threshold conditions 648, 5.207, 127.537 for d = 3")
def test_c11_thresholds(record_property):
    t1, t2, t3 = selection.critical_thresholds(3)
    assert abs(t1 - 648) <= 0.01
    assert abs(t2 - 5.207) <= 0.01
    assert abs(t3 - 127.537) <= 0.01
    # every dyadic block satisfies the tau_0 conditions with M = B^_3 once tau >= 648
    B3 = constants.hat_coeff(3)[1]
    for tau in np.concatenate([[648.0], np.logspace(math.log10(648), 12, 400)]):
        _, alphas = zeta.dyadic_blocks(tau)
        for a in alphas:
            assert all(selection.tau0_conditions(3, a, B3, tau)), (tau, a)
            assert tau >= math.exp(selection.tau0_log(3, a, B3)) * (1 - 1e-12)
    detail(record_property, f"{t1:.4f}, {t2:.4f}, {t3:.4f}")


def _golden_function(case):
    p = case["params"]
    if case["family"] == "log_phase":
        return LogPhase(p["t"])
    if case["family"] == "monomial":
        return Monomial(p["c"], p["gamma"])
    return Polynomial(p["coeffs"])


@pytest.mark.criterion(12, "exp_sum within N 2^-40 of a 50-digit reference on 20 golden cases")
def test_c12_oracle_fidelity(record_property, golden):
    assert len(golden) == 20
    assert max(c["N"] for c in golden) == 1_000_000
    worst = 0.0
    for case in golden:
        got = exp_sum(_golden_function(case), Window(case["X"], case["Y"]), sigma=case["sigma"])
        ref = complex(float(case["re"]), float(case["im"]))
        tol = case["N"] * 2.0**-40
        err = abs(got - ref)
        assert err <= tol, (case["name"], err, tol)
        worst = max(worst, err / tol if tol else 0.0)
    detail(record_property, f"worst error/tolerance {worst:.2e}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
