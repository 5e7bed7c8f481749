"""Acceptance checks, one function per criterion.

Each check returns CheckResult objects (some criteria produce several lines).
Used by tests/test_acceptance.py and by `nonpisot verify-all`.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .algebra import DENSITY, LAM, QLambda, ZLambda, gcd_facts_check
from .algebras import ida_dimension, kron_algebra_real_dimension, positivity_threshold
from .cocycles import (admissible_ks, bn_from_pn, bn_product, contracting_exponent, det_limit_inward,
                       inward_lyapunov, jensen_integral, outward_lyapunov, random_ks)
from .correlation import BASE_RADIUS, base_system_solve, count_correlations, extend_table
from .diffraction import BALANCED, bragg_scan, distribution_function
from .fourier import conjugation_commutator_residual, u_realness_residual
from .inflation import geometric_patch
from .torus import HALF_LOG_LAM, torus_mean_refinement

SEED = 1
LOG3 = math.log(3.0)
BRAGG_GRID = np.linspace(0.0, 4.0, 1000)
INWARD_KS = (0.005, 0.01, 0.02)

# reference table: z -> (nu00, nu01, nu10, nu11), each entry None or (coefficient, lam exponent)
_Z = [ZLambda(-1, -1), ZLambda(-3, 0), ZLambda(0, -1), ZLambda(-2, 0), ZLambda(-1, 0), ZLambda(0, 0),
      ZLambda(1, 0), ZLambda(2, 0), ZLambda(0, 1), ZLambda(3, 0), ZLambda(1, 1)]
_ROWS = {
    "nu00": [None, None, (3, -3), None, None, (1, -1), None, None, (3, -3), None, None],
    "nu01": [(1, -3), (1, -2), None, (1, -2), (1, -2), None, None, None, (1, -2), None, (1, -2)],
    "nu10": [(1, -2), None, (1, -2), None, None, None, (1, -2), (1, -2), None, (1, -2), (1, -3)],
    "nu11": [(3, -4), None, None, (1, -2), (2, -2), (3, -2), (2, -2), (1, -2), None, None, (3, -4)],
}


def reference_table() -> dict:
    def val(e):
        return QLambda() if e is None else e[0] * QLambda.lam_power(e[1])
    return {z: tuple(val(_ROWS[c][i]) for c in ("nu00", "nu01", "nu10", "nu11")) for i, z in enumerate(_Z)}


@dataclass
class CheckResult:
    cid: str
    name: str
    measured: str
    target: str
    passed: bool
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] C{self.cid} {self.name}: measured {self.measured} | target {self.target} | {self.seconds:.2f} s"


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.dt = time.perf_counter() - self.t0


def check_1() -> list[CheckResult]:
    with _Timer() as tm:
        t = base_system_solve()
    ref = reference_table()
    mism = [z for z in ref if t.entries.get(z) != ref[z]]
    extra = set(t.entries) - set(ref)
    n_vals = 4 * len(ref)
    ok = not mism and not extra and tm.dt < 1.0
    return [CheckResult("1", "base correlation table exact", f"{n_vals - 4 * len(mism)}/{n_vals} exact, {len(extra)} extra z",
                        "44/44 exact, < 1 s", ok, tm.dt)]


def check_2(patch=None) -> list[CheckResult]:
    with _Timer() as tm:
        base = base_system_solve()
        ext = extend_table(base, 10.0)
        patch = geometric_patch(8) if patch is None else patch
        emp = count_correlations(patch, 10.0)
        inner = outer = 0.0
        for z in ext.support:
            exact = np.array([float(v) for v in ext.entries[z]])
            d = float(np.abs(emp.get(z) - exact).max())
            if abs(z) <= BASE_RADIUS:
                inner = max(inner, d)
            else:
                outer = max(outer, d)
        stray = set(emp.values) - {(z.a, z.b) for z in ext.support}
    ok = inner < 5e-3 and outer < 5e-3 and not stray and tm.dt < 60
    return [CheckResult("2", "counting oracle vs exact tables (level 8)",
                        f"max|diff| {inner:.2e} (|z|<=1+lam), {outer:.2e} (to 10), {len(stray)} stray z",
                        "< 5e-3 each, < 60 s", ok, tm.dt)]


def check_3() -> list[CheckResult]:
    target = ((6 + LAM) / 13) ** 2
    with _Timer() as tm:
        r1 = bragg_scan((1, 1), BRAGG_GRID, [6, 7, 8, 9])
        rb = bragg_scan(BALANCED, BRAGG_GRID, [6, 7, 8, 9])
    peaks = [r for r in r1 if r.classification == "Bragg"]
    at0 = len(peaks) == 1 and peaks[0].k == 0.0
    dev = max(abs(i - target) for i in peaks[0].intensities) if at0 else float("inf")
    nb = sum(r.classification == "Bragg" for r in rb)
    return [
        CheckResult("3a", "Bragg peaks for u=(1,1)", f"{len(peaks)} at k={[p.k for p in peaks]}, max|I-I0| {dev:.1e}",
                    "one at k=0, |I-0.40791| <= 1e-3 (levels 6-9)", at0 and dev <= 1e-3, tm.dt),
        CheckResult("3b", "Bragg peaks for balanced u", f"{nb} on {BRAGG_GRID.size} k", "0", nb == 0, tm.dt),
    ]


def check_4() -> list[CheckResult]:
    with _Timer() as tm:
        ida = ida_dimension(2)
        kd = kron_algebra_real_dimension([0.05, 0.11, 0.17])
        ks = random_ks(SEED, 1000)
        ur = u_realness_residual(ks)
        cr = conjugation_commutator_residual(ks)
    return [
        CheckResult("4a", "algebra dimensions", f"IDA {ida}, Kronecker real {kd}", "4 and 16", ida == 4 and kd == 16, tm.dt),
        CheckResult("4b", "U-conjugate realness", f"{ur:.1e}", "< 1e-12", ur < 1e-12, tm.dt),
        CheckResult("4c", "[C, A(k)] residual", f"{cr:.1e}", "< 1e-12", cr < 1e-12, tm.dt),
    ]


def check_5() -> list[CheckResult]:
    with _Timer() as tm:
        k = positivity_threshold()
    ok = 0.03822 <= k <= 0.03842 and tm.dt < 5
    return [CheckResult("5", "positivity threshold", f"{k:.8f}", "[0.03822, 0.03842], < 5 s", ok, tm.dt)]


def check_6(n: int = 300) -> list[CheckResult]:
    out = []
    sums = []
    with _Timer() as tm:
        gen = [inward_lyapunov(k, (1.0, 1.0), n)[0] for k in INWARD_KS]
        con = [contracting_exponent(k, n)[0] for k in INWARD_KS]
    sums = [g + c for g, c in zip(gen, con)]
    target_sum = 0.2651
    out.append(CheckResult("6a", "inward generic exponent", ", ".join(f"{g:.5f}" for g in gen),
                           "0.8344 +- 0.01", all(abs(g - 0.8344) <= 0.01 for g in gen), tm.dt))
    out.append(CheckResult("6b", "inward contracting exponent", ", ".join(f"{c:.5f}" for c in con),
                           "-0.153 +- 0.02", all(abs(c + 0.153) <= 0.02 for c in con), tm.dt))
    out.append(CheckResult("6c", "inward exponent sum", ", ".join(f"{s:.5f}" for s in sums),
                           "0.2651 +- 0.02", all(abs(s - target_sum) <= 0.02 for s in sums), tm.dt))
    return out


def check_7() -> list[CheckResult]:
    with _Timer() as tm:
        ks = admissible_ks(SEED, 5, 60)
        vals = [det_limit_inward(k, 60) for k in ks]
        j = jensen_integral()
    dev = [v - LOG3 for v in vals]
    return [
        CheckResult("7a", "inward det limit n=60, k~U(0,1)",
                    "k=" + ",".join(f"{k:.3f}" for k in ks) + " dev=" + ",".join(f"{d:+.4f}" for d in dev),
                    "log 3 +- 1e-2", all(abs(d) <= 1e-2 for d in dev), tm.dt),
        CheckResult("7b", "Jensen integral", f"{j:.2e}", "0 +- 1e-4", abs(j) <= 1e-4, tm.dt),
    ]


def check_8(tol: float = 1e-3) -> list[CheckResult]:
    with _Timer() as tm:
        res = torus_mean_refinement(4, 8, tol)
    v = res.value
    gap = HALF_LOG_LAM - v
    ok = res.converged and 0.384 <= v <= 0.386 and gap >= 0.03 and tm.dt < 300
    return [CheckResult("8", "torus mean n=4", f"{v:.6f}, gap {gap:.5f}", "[0.384, 0.386], gap >= 0.03, < 5 min",
                        ok, tm.dt)]


def check_9(n: int = 10_000) -> list[CheckResult]:
    with _Timer() as tm:
        ks = random_ks(SEED, 20)
        chis = [outward_lyapunov(k, n).chi1 for k in ks]
    npos = sum(c > 0 for c in chis)
    return [CheckResult("9", "outward chi1 > 0 at n=1e4",
                        f"{npos}/20 positive, range [{min(chis):.4f}, {max(chis):.4f}]", ">= 18/20", npos >= 18, tm.dt)]


def check_10(threads: int = 1) -> list[CheckResult]:
    with _Timer() as tm:
        c8 = distribution_function(BALANCED, 3.0, 1500, 8, threads=threads)
        c7 = distribution_function(BALANCED, 3.0, 1500, 7, threads=threads)
    slope = c8.slope_at_end()
    mono = bool(np.all(np.diff(c8.Fs) >= 0))
    rel = abs(c7.Fs[-1] - c8.Fs[-1]) / c8.Fs[-1]
    inc = c8.min_increment()
    return [
        CheckResult("10a", "F(3)/3 at level 8", f"{slope:.5f}", "0.832 +- 0.02", abs(slope - 0.832) <= 0.02, tm.dt),
        CheckResult("10b", "F non-decreasing, strictly at grid resolution", f"min increment {inc:.2e}",
                    "> 0 on 1500 cells", mono and inc > 0, tm.dt),
        CheckResult("10c", "level 7 vs 8 at x=3", f"{rel:.2e}", "< 2e-2, total < 5 min", rel < 0.02 and tm.dt < 300, tm.dt),
    ]


def check_11() -> list[CheckResult]:
    with _Timer() as tm:
        g = gcd_facts_check(40)
        ks = random_ks(SEED, 100)
        worst = 0.0
        for k in ks:
            for n in range(1, 13):
                worst = max(worst, float(np.abs(bn_product(k, n) - bn_from_pn(k, n)).max()))
    return [
        CheckResult("11a", "gcd facts to n=40", g.message, "pass", g.ok, tm.dt),
        CheckResult("11b", "P_n vs direct product", f"{worst:.1e}", "< 1e-10 (n <= 12, 100 k)", worst < 1e-10, tm.dt),
    ]


CHECKS = {
    "1": check_1, "2": check_2, "3": check_3, "4": check_4, "5": check_5, "6": check_6,
    "7": check_7, "8": check_8, "9": check_9, "10": check_10, "11": check_11,
}


def run_all(threads: int = 1, printer=print) -> list[CheckResult]:
    results = []
    for cid, fn in CHECKS.items():
        res = fn(threads=threads) if cid == "10" else fn()
        for r in res:
            printer(r.line())
        results.extend(res)
    return results


__all__ = ["CHECKS", "CheckResult", "DENSITY", "reference_table", "run_all"]
