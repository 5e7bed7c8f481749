"""Extra diagnostics run by `verify-all` without --quick.

They back up the acceptance criteria from other angles (larger n, an
independent quadrature, convergence of constructed directions).
"""
from __future__ import annotations

import math

import numpy as np

from .acceptance import SEED, CheckResult, _Timer
from .cocycles import admissible_ks, contracting_direction, det_limit_inward, outward_lyapunov, random_ks
from .torus import torus_mean_midpoint, torus_mean_refinement


def extended_diagnostics() -> list[CheckResult]:
    out = []
    with _Timer() as tm:
        gl = torus_mean_refinement(4, 8, 1e-5).value
        mid = torus_mean_midpoint(4, 400)
    out.append(CheckResult("x1", "torus mean: Gauss-Legendre vs midpoint", f"{gl:.6f} vs {mid:.6f}",
                           "agree to 1e-4", abs(gl - mid) < 1e-4, tm.dt))
    with _Timer() as tm:
        ks = admissible_ks(SEED, 5, 60)
        dev = [det_limit_inward(k, 5000) - math.log(3) for k in ks]
    out.append(CheckResult("x2", "inward det limit at n=5000 (same k)", ", ".join(f"{d:+.1e}" for d in dev),
                           "log 3 +- 1e-3", max(map(abs, dev)) < 1e-3, tm.dt))
    with _Timer() as tm:
        v40, v41 = contracting_direction(0.02, 40), contracting_direction(0.02, 41)
        ang = math.acos(min(1.0, abs(np.vdot(v40, v41))))
    out.append(CheckResult("x3", "contracting direction n=40 vs 41", f"{ang:.1e} rad", "< 1e-6", ang < 1e-6, tm.dt))
    with _Timer() as tm:
        sums = [abs(e.tilde1 + e.tilde2) for e in (outward_lyapunov(k, 10_000) for k in random_ks(SEED, 5))]
    out.append(CheckResult("x4", "outward tilde-exponent sum n=1e4", f"max {max(sums):.3f}", "< 0.05",
                           max(sums) < 0.05, tm.dt))
    return out
