"""Exponential sums over patches, Bragg detection and the distribution function
F(x) = int_0^x |S(k)|^2 / (2r) dk of the diffraction of a level-n patch."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import DENSITY, LAM, NU
from .correlation import BASE_RADIUS, base_system_solve, count_correlations, eta, extend_table
from .inflation import geometric_patch

BALANCED = (1.0 - LAM, 1.0)


def parse_weights(spec) -> tuple[complex, complex]:
    """'balanced', '1,1', '1-1j,2' or a pair."""
    if isinstance(spec, str):
        if spec.strip().lower() == "balanced":
            return BALANCED
        parts = [complex(p.strip().replace(" ", "")) for p in spec.split(",")]
        if len(parts) != 2:
            raise ValueError(f"need two weights, got {spec!r}")
        return parts[0], parts[1]
    u0, u1 = spec
    return complex(u0), complex(u1)


def half_length(level: int) -> float:
    """r for the two-sided level patch: each side has length lam^(2 level + 1)."""
    return LAM ** (2 * level + 1)


@dataclass
class SpectralSample:
    k: float
    density_approx: float
    patch_radius: float


def exponential_sum(patch, k):
    """S(k) = sum_x u(x) exp(-2 pi i k x), straight from the point list."""
    x = patch.positions
    w = patch.weights
    if np.ndim(k) == 0:
        z = w * np.exp(-2j * np.pi * float(k) * x)
        return complex(math.fsum(z.real), math.fsum(z.imag))
    return np.array([exponential_sum(patch, kk) for kk in np.asarray(k).ravel()]).reshape(np.shape(k))


def per_type_sums(patch, k) -> np.ndarray:
    """(S_0(k), S_1(k)) with unit weights on each type."""
    x = patch.positions
    out = []
    for t in (0, 1):
        z = np.exp(-2j * np.pi * float(k) * x[patch.types == t])
        out.append(complex(math.fsum(z.real), math.fsum(z.imag)))
    return np.array(out)


def recursive_sums(level: int, k, u=(1.0, 1.0)):
    """S(k) for the level patch via the inflation recursion, vectorised over k.

    With f_n(a) the sum over rho^n(a) placed at 0:
      f_n(0) = f_{n-1}(0) + conj(p(lam^{n-1} k)) f_{n-1}(1),  f_n(1) = f_{n-1}(0).
    The left half is the same word ending at 0.
    """
    k = np.asarray(k, dtype=float)
    u0, u1 = complex(u[0]), complex(u[1])
    r0 = np.full(k.shape, u0, dtype=complex)
    r1 = np.full(k.shape, u1, dtype=complex)
    steps = 2 * level
    for j in range(steps):
        x = k * LAM**j
        pc = np.exp(-2j * np.pi * x * (LAM + 1)) * (1 + 2 * np.cos(2 * np.pi * x))
        r0, r1 = r0 + r1 * pc, r0
    return r0 * (1 + np.exp(2j * np.pi * k * LAM ** (steps + 1)))


def density_approx(level: int, k, u=(1.0, 1.0)):
    """|S(k)|^2 / (2r)."""
    S = recursive_sums(level, k, u)
    return np.abs(S) ** 2 / (2 * half_length(level))


def pure_point_matrix() -> np.ndarray:
    return np.outer(NU, NU)


def pure_point_intensity(u) -> float:
    u = np.asarray(parse_weights(u))
    return float(abs(DENSITY * (u @ NU)) ** 2)


# ---------------------------------------------------------------------------
# Bragg scan

@dataclass
class BraggResult:
    k: float
    levels: list
    intensities: list  # |S/(2r)|^2 per level
    slope: float  # d log I / d log r
    classification: str


def classify(intensities, levels, floor: float = 1e-3, ratio: float = 0.5) -> tuple[str, float]:
    """'Bragg' when |S/2r|^2 stays above floor and does not decay across levels."""
    I = np.asarray(intensities)
    logr = np.log([half_length(L) for L in levels])
    slope = float(np.polyfit(logr, np.log(np.maximum(I, 1e-300)), 1)[0]) if len(levels) > 1 else 0.0
    bragg = I.min() >= floor and I[-1] >= ratio * I[0]
    return ("Bragg" if bragg else "continuous"), slope


def bragg_scan(u, k_list, levels) -> list[BraggResult]:
    levels = list(levels)
    if sorted(levels) != levels:
        raise ValueError("levels must be increasing")
    u = parse_weights(u)
    k = np.asarray(k_list, dtype=float)
    table = np.array([np.abs(recursive_sums(L, k, u) / (2 * half_length(L))) ** 2 for L in levels])
    out = []
    for i, kk in enumerate(k):
        cls, slope = classify(table[:, i], levels)
        out.append(BraggResult(float(kk), levels, table[:, i].tolist(), slope, cls))
    return out


# ---------------------------------------------------------------------------
# distribution function

@dataclass
class DistributionCurve:
    xs: np.ndarray
    Fs: np.ndarray
    u: tuple
    level: int
    rule: str
    meta: dict = field(default_factory=dict)

    def slope_at_end(self) -> float:
        return float(self.Fs[-1] / self.xs[-1])

    def min_increment(self) -> float:
        return float(np.diff(self.Fs).min())


_GL4 = np.polynomial.legendre.leggauss(4)


def _cell_integrals(level, u, edges, panels):
    t, w = _GL4
    out = np.empty(edges.size - 1)
    h = (edges[1] - edges[0]) / panels  # uniform grid
    nodes = 0.5 * (t + 1) * h
    weights = 0.5 * w * h
    for i in range(edges.size - 1):
        left = edges[i] + h * np.arange(panels)
        k = (left[:, None] + nodes[None, :]).ravel()
        out[i] = density_approx(level, k, u) @ np.tile(weights, panels)
    return out


def distribution_function(u, x_max: float, grid: int, level: int, threads: int = 1,
                          chunk: int = 50) -> DistributionCurve:
    """F on grid+1 equispaced points of [0, x_max].

    Each grid cell is split into panels no wider than 1/(2r) with a 4-point
    Gauss-Legendre rule in each; F is the running sum, hence non-decreasing.
    """
    if x_max <= 0 or grid < 1:
        raise ValueError("need x_max > 0 and grid >= 1")
    u = parse_weights(u)
    xs = np.linspace(0.0, x_max, grid + 1)
    two_r = 2 * half_length(level)
    panels = max(1, math.ceil((x_max / grid) * two_r))
    starts = list(range(0, grid, chunk))
    jobs = [xs[s:min(s + chunk, grid) + 1] for s in starts]
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(lambda e: _cell_integrals(level, u, e, panels), jobs))
    else:
        parts = [_cell_integrals(level, u, e, panels) for e in jobs]
    cells = np.concatenate(parts)
    Fs = np.concatenate([[0.0], np.cumsum(cells)])
    rule = f"uniform panels h={x_max / grid / panels:.3e} (<= 1/(2r)), 4-point Gauss-Legendre"
    return DistributionCurve(xs, Fs, u, level, rule, {"panels_per_cell": panels, "two_r": two_r})


def unit_interval_masses(u, level: int, m_max: int = 10) -> np.ndarray:
    """Integrated density over [m, m+1], m = 0..m_max."""
    curve = distribution_function(u, m_max + 1, m_max + 1, level)
    return np.diff(curve.Fs)


# ---------------------------------------------------------------------------
# autocorrelation cross-check

@dataclass
class AutocorrelationReport:
    u: tuple
    R: float
    level: int
    max_residual: float
    residuals: dict


def autocorrelation_compare(u, R, level: int, patch=None) -> AutocorrelationReport:
    """max over z in Delta within R of |eta_exact(z) - eta_counted(z)|."""
    u = parse_weights(u)
    table = base_system_solve()
    if float(R) > float(BASE_RADIUS) + 1e-12:
        table = extend_table(table, R)
    if patch is None:
        patch = geometric_patch(level)
    emp = count_correlations(patch, R)
    # empirical density of the counting window
    dens = emp.n_origin / (2 * emp.window)
    uu = np.array(u)
    res = {}
    for z in table.support:
        nu = emp.get(z).reshape(2, 2)
        counted = dens * (uu.conj() @ nu @ uu)
        res[z] = abs(eta(table, u, z) - counted)
    return AutocorrelationReport(u, float(R), level, max(res.values()) if res else 0.0, res)

