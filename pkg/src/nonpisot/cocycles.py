"""Matrix cocycles over k -> k/lam (inward) and k -> lam k (outward).

Inward steps use plain floats since k/lam^m only shrinks.  Outward steps take
p(lam^m k) from the exact orbit in `orbit`, because float lam^m k carries no
information about its fractional part after ~45 steps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.integrate import quad

from .algebra import LAM
from .fourier import b_from_p, eval_p
from .orbit import frac_orbit_int, p_along_orbit

LOG_SQRT_LAM = 0.5 * math.log(LAM)
SINGULAR_TOL = 1e-8
# eigenvectors of M: (lam, 3) for lam, (1 - lam, 3) for 1 - lam
E_EXPAND = np.array([LAM, 3.0])
E_CONTRACT = np.array([1.0 - LAM, 3.0])


class SingularStepError(ValueError):
    def __init__(self, m: int, value: float):
        super().__init__(f"near-singular step at m = {m}: |p| = {value:.3g}")
        self.m = m
        self.value = value


def _inward_points(k: float, n: int) -> np.ndarray:
    """k / lam^m for m = 1..n (underflows quietly to 0 for huge n)."""
    return k * np.exp(-np.arange(1, n + 1) * math.log(LAM))


def _check_singular(p, offset=0):
    ap = np.abs(p)
    bad = np.flatnonzero(ap < SINGULAR_TOL)
    if bad.size:
        raise SingularStepError(int(bad[0]) + offset, float(ap[bad[0]]))


def fit_slope(y) -> tuple[float, float]:
    """Least-squares slope over the second half; returns (slope, max residual)."""
    y = np.asarray(y, dtype=float)
    n = y.size
    i0 = n // 2
    x = np.arange(i0, n)
    coef = np.polyfit(x, y[i0:], 1)
    resid = y[i0:] - np.polyval(coef, x)
    return float(coef[0]), float(np.abs(resid).max())


# ---------------------------------------------------------------------------
# P_n and B^(n)

@dataclass
class PnSequence:
    k: float
    start: int  # values are at lam^start * k
    values: np.ndarray  # P_{-1}, P_0, ..., P_n

    def __getitem__(self, n: int) -> complex:
        return complex(self.values[n + 1])


def pn_sequence(k, n: int, start: int = 0) -> PnSequence:
    """P_{n+1} = P_n + p(lam^n x) P_{n-1} at x = lam^start k."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = p_along_orbit(k, n, start)
    P = np.empty(n + 2, dtype=complex)
    P[0], P[1] = 0.0, 1.0
    for m in range(n):
        P[m + 2] = P[m + 1] + p[m] * P[m]
    return PnSequence(float(k), start, P)


def bn_product(k, n: int, start: int = 0) -> np.ndarray:
    """B(x) B(lam x) ... B(lam^{n-1} x), x = lam^start k, by direct multiplication."""
    if n < 1:
        raise ValueError("n must be >= 1")
    Q = np.eye(2, dtype=complex)
    for B in b_from_p(p_along_orbit(k, n, start)):
        Q = Q @ B
    return Q


def bn_from_pn(k, n: int) -> np.ndarray:
    """B^(n)(k) assembled from P_n(k), P_{n-1}(k), P_{n-1}(lam k), P_{n-2}(lam k)."""
    P = pn_sequence(k, n, 0)
    Pl = pn_sequence(k, max(n - 1, 1), 1)
    p0 = complex(p_along_orbit(k, 1)[0])
    return np.array([[P[n], P[n - 1]], [p0 * Pl[n - 1], p0 * Pl[n - 2]]])


# ---------------------------------------------------------------------------
# determinants

def det_limit_inward(k: float, n: int) -> float:
    """(1/n) log |det B(k/lam^n) ... B(k/lam)|, tends to log 3."""
    p = eval_p(_inward_points(k, n))
    _check_singular(p, offset=1)
    return float(np.sum(np.log(np.abs(p))) / n)


def det_limit_outward(k, n: int) -> float:
    """-(1/n) sum_{l<n} log |1 + 2 cos(2 pi lam^l k)|, a Birkhoff average with mean 0."""
    p = p_along_orbit(k, n)
    _check_singular(p)
    return float(-math.fsum(np.log(np.abs(p))) / n)


def jensen_integral() -> float:
    """int_0^1 log|1 + e^{2 pi i t} + e^{4 pi i t}| dt, split at the zeros 1/3, 2/3."""
    f = lambda t: math.log(abs(1 + 2 * math.cos(2 * math.pi * t)))  # noqa: E731
    total = 0.0
    for a, b in [(0, 1 / 3), (1 / 3, 2 / 3), (2 / 3, 1)]:
        v, _ = quad(f, a, b, limit=200, epsabs=1e-13, epsrel=1e-13)
        total += v
    return total


# ---------------------------------------------------------------------------
# inward iteration

@dataclass
class CocycleProduct:
    direction: str
    k0: float
    steps: int
    scale: float
    state: np.ndarray
    log_norm_trace: np.ndarray
    exponent: float = float("nan")
    residual: float = float("nan")
    extra: dict = field(default_factory=dict)

    @property
    def running_slope(self) -> np.ndarray:
        n = np.arange(self.log_norm_trace.size)
        out = np.full(n.size, np.nan)
        out[1:] = (self.log_norm_trace[1:] - self.log_norm_trace[0]) / n[1:]
        return out


def _mp_p(k_mp):
    two_pi = 2 * mpmath.pi
    return mpmath.exp(1j * two_pi * k_mp * (1 + _mp_lam())) * (1 + 2 * mpmath.cos(two_pi * k_mp))


def _mp_lam():
    return (1 + mpmath.sqrt(13)) / 2


def _dps_for(n: int) -> int:
    # the ratio of the two inward exponents is exp(0.57) per step
    return 30 + int(0.26 * n)


def inward_lyapunov(k: float, v0, n: int, dps: int | None = None):
    """v_m = (1/sqrt lam) B(k/lam^m) v_{m-1}; returns (fitted slope, CocycleProduct).

    With dps set, the iteration runs in mpmath at that many digits, which is
    needed to follow the contracting direction for more than ~60 steps.
    """
    scale = 1 / math.sqrt(LAM)
    logs = np.empty(n + 1)
    if dps is None:
        v = np.asarray(v0, dtype=complex)
        nv = np.linalg.norm(v)
        if nv == 0:
            raise ValueError("v0 must be nonzero")
        logs[0] = math.log(nv)
        v = v / nv
        p = eval_p(_inward_points(k, n))
        for m in range(n):
            v = scale * np.array([v[0] + v[1], p[m] * v[0]])
            nv = np.linalg.norm(v)
            logs[m + 1] = logs[m] + math.log(nv)
            v = v / nv
        state = v
    else:
        with mpmath.workdps(dps):
            v = [mpmath.mpc(x) for x in v0]
            lam = _mp_lam()
            sc = 1 / mpmath.sqrt(lam)
            nv = mpmath.sqrt(abs(v[0]) ** 2 + abs(v[1]) ** 2)
            logs[0] = float(mpmath.log(nv))
            v = [x / nv for x in v]
            km = mpmath.mpf(k)
            for m in range(n):
                km = km / lam
                p = _mp_p(km)
                v = [sc * (v[0] + v[1]), sc * p * v[0]]
                nv = mpmath.sqrt(abs(v[0]) ** 2 + abs(v[1]) ** 2)
                logs[m + 1] = logs[m] + float(mpmath.log(nv))
                v = [x / nv for x in v]
            state = np.array([complex(x) for x in v])
    slope, resid = fit_slope(logs)
    return slope, CocycleProduct("inward", float(k), n, scale, state, logs, slope, resid)


def _contracting_mp(k: float, n: int, dps: int):
    with mpmath.workdps(dps):
        lam = _mp_lam()
        v = [1 - lam, mpmath.mpf(3)]
        ks = [mpmath.mpf(k) / lam**m for m in range(1, n + 1)]
        for km in reversed(ks):
            p = _mp_p(km)
            # B^{-1} = [[0, 1/p], [1, -1/p]]
            v = [v[1] / p, v[0] - v[1] / p]
            nv = mpmath.sqrt(abs(v[0]) ** 2 + abs(v[1]) ** 2)
            v = [x / nv for x in v]
        # fix the phase so that the first nonzero entry is real positive
        ph = v[0] / abs(v[0]) if abs(v[0]) > 0 else v[1] / abs(v[1])
        return [x / ph for x in v]


def contracting_direction(k: float, n: int, dps: int | None = None) -> np.ndarray:
    """Unit v with B(k/lam^n) ... B(k/lam) v parallel to the contracting
    eigenvector (1 - lam, 3) of M.

    Computed by pulling (1 - lam, 3) back with the inverse steps one at a time
    (renormalising after each), which is well conditioned: the pull-back
    contracts towards the wanted direction.
    """
    _check_singular(eval_p(_inward_points(k, n)), offset=1)
    if dps is None:
        v = E_CONTRACT.astype(complex)
        p = eval_p(_inward_points(k, n))
        for m in range(n - 1, -1, -1):
            v = np.array([v[1] / p[m], v[0] - v[1] / p[m]])
            v = v / np.linalg.norm(v)
        ph = v[0] / abs(v[0]) if abs(v[0]) > 0 else v[1] / abs(v[1])
        return v / ph
    return np.array([complex(x) for x in _contracting_mp(k, n, dps)])


def contracting_exponent(k: float, n: int, dps: int | None = None):
    """Exponent measured by forward iteration from the contracting start vector.

    Runs in extended precision (default digits grow with n) because double
    rounding lets the expanding direction take over after ~60 steps.
    """
    dps = _dps_for(n) if dps is None else dps
    v0 = _contracting_mp(k, n, dps)
    return inward_lyapunov(k, v0, n, dps=dps)


def inward_spectrum(k: float, n: int = 300, v0=(1.0, 1.0)) -> dict:
    gen, _ = inward_lyapunov(k, v0, n)
    con, _ = contracting_exponent(k, n)
    return {"k": k, "n": n, "generic": gen, "contracting": con, "sum": gen + con}


# ---------------------------------------------------------------------------
# outward iteration

@dataclass
class OutwardEstimate:
    k: float
    n: int
    chi1: float
    chi2: float
    tilde1: float
    tilde2: float
    det_correction: float
    consistency: float
    log_norm_trace: np.ndarray


def _outward_mp(k, n: int, dps: int):
    """Both renormalised products in mpmath, with orbit points to dps digits."""
    with mpmath.workdps(dps):
        bits = int(dps * 3.33) + 16
        scale = mpmath.ldexp(1, -bits)
        t = [mpmath.mpf(v) * scale for v in frac_orbit_int(k, n, 0, bits)]
        two_pi = 2 * mpmath.pi
        p = [mpmath.expjpi(2 * (t[m + 1] + t[m])) * (1 + 2 * mpmath.cos(two_pi * t[m])) for m in range(n)]
        _check_singular(np.array([complex(x) for x in p]))
        one, zero = mpmath.mpc(1), mpmath.mpc(0)
        q00, q01, q10, q11 = one, zero, zero, one
        r00, r01, r10, r11 = one, zero, zero, one
        lq = lr = mpmath.mpf(0)
        trace = np.empty(n + 1)
        trace[0] = 0.5 * math.log(2.0)
        logdet = mpmath.mpf(0)
        for m in range(n):
            pm = p[m]
            q00, q01, q10, q11 = q00 + q01 * pm, q00, q10 + q11 * pm, q10
            nf = mpmath.sqrt(abs(q00) ** 2 + abs(q01) ** 2 + abs(q10) ** 2 + abs(q11) ** 2)
            lq += mpmath.log(nf)
            q00, q01, q10, q11 = q00 / nf, q01 / nf, q10 / nf, q11 / nf
            trace[m + 1] = float(lq)
            ip = 1 / pm
            r00, r01, r10, r11 = ip * r10, ip * r11, r00 - ip * r10, r01 - ip * r11
            nf = mpmath.sqrt(abs(r00) ** 2 + abs(r01) ** 2 + abs(r10) ** 2 + abs(r11) ** 2)
            lr += mpmath.log(nf)
            r00, r01, r10, r11 = r00 / nf, r01 / nf, r10 / nf, r11 / nf
            logdet += mpmath.log(abs(pm))
        return float(lq), float(lr), float(logdet), trace


def _outward_dps(n: int) -> int:
    return 40 + n // 300


def outward_lyapunov(k, n: int, dps="auto") -> OutwardEstimate:
    """Finite-n estimates of the outward exponents (Frobenius norm).

    chi1 = log sqrt(lam) - (1/n) log |B(k) ... B(lam^{n-1} k)|
    chi2 = log sqrt(lam) + (1/n) log |B^{-1}(lam^{n-1} k) ... B^{-1}(k)|

    The products are ill-conditioned: a relative error eps in each factor moves
    (1/n) log |.| by far more than eps: in double precision chi1 is off by
    ~1e-2 at n = 2000.  So by default the orbit points and both products are
    carried in mpmath; "auto" picks the digits from n and doubles them until
    the identity chi1 + chi2 = log lam + det_correction holds to 1e-12.
    dps=None runs the fast double-precision loop.
    """
    if dps is not None:
        auto = dps == "auto"
        d = _outward_dps(n) if auto else int(dps)
        while True:
            lq, lr, logdet, trace = _outward_mp(k, n, d)
            tilde1, tilde2 = -lq / n, lr / n
            chi1, chi2 = LOG_SQRT_LAM + tilde1, LOG_SQRT_LAM + tilde2
            detc = -logdet / n
            cons = chi1 + chi2 - math.log(LAM) - detc
            if not auto or abs(cons) < 1e-12 or d > 4 * _outward_dps(n):
                return OutwardEstimate(float(k), n, chi1, chi2, tilde1, tilde2, detc, cons, trace)
            d *= 2
    p = p_along_orbit(k, n)
    _check_singular(p)
    # forward product Q = Q B_m, renormalised, kept as plain complex scalars
    q00, q01, q10, q11 = 1 + 0j, 0j, 0j, 1 + 0j
    lq = 0.0
    trace = np.empty(n + 1)
    trace[0] = 0.5 * math.log(2.0)
    for m in range(n):
        pm = p[m]
        q00, q01, q10, q11 = q00 + q01 * pm, q00, q10 + q11 * pm, q10
        nf = math.sqrt(abs(q00) ** 2 + abs(q01) ** 2 + abs(q10) ** 2 + abs(q11) ** 2)
        lq += math.log(nf)
        q00, q01, q10, q11 = q00 / nf, q01 / nf, q10 / nf, q11 / nf
        trace[m + 1] = lq
    # inverse product R = B_m^{-1} R with B^{-1} = [[0, 1/p], [1, -1/p]]
    r00, r01, r10, r11 = 1 + 0j, 0j, 0j, 1 + 0j
    lr = 0.0
    for m in range(n):
        ip = 1.0 / p[m]
        r00, r01, r10, r11 = ip * r10, ip * r11, r00 - ip * r10, r01 - ip * r11
        nf = math.sqrt(abs(r00) ** 2 + abs(r01) ** 2 + abs(r10) ** 2 + abs(r11) ** 2)
        lr += math.log(nf)
        r00, r01, r10, r11 = r00 / nf, r01 / nf, r10 / nf, r11 / nf
    tilde1 = -lq / n
    tilde2 = lr / n
    chi1 = LOG_SQRT_LAM + tilde1
    chi2 = LOG_SQRT_LAM + tilde2
    detc = -math.fsum(np.log(np.abs(p))) / n
    consistency = chi1 + chi2 - math.log(LAM) - detc
    return OutwardEstimate(float(k), n, chi1, chi2, tilde1, tilde2, detc, consistency, trace)


def random_ks(seed: int, count: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(low, high, count)


def admissible_ks(seed: int, count: int, n: int, low=0.0, high=1.0) -> np.ndarray:
    """Seeded k with no near-singular inward step up to n."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        k = rng.uniform(low, high)
        if np.abs(eval_p(_inward_points(k, n))).min() >= SINGULAR_TOL:
            out.append(k)
    return np.array(out)

