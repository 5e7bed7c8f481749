"""Quantities on the two-torus: the Frobenius floor of the lifted products and
the mean (1/2n) int log |B~^(n)(x,y)|_F^2 dx dy."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .fourier import lift_product


def frob_sq(x, y, n: int):
    B = lift_product(x, y, n)
    return np.sum(np.abs(B) ** 2, axis=(-2, -1))


def frobenius_floor(n: int, grid: int = 200, tol: float = 1e-9, max_grid: int = 3200) -> float:
    """min over [0,1]^2 of |B~^(n)|_F^2: grid search with doubling, then local polish."""
    if n < 1:
        raise ValueError("n must be >= 1")
    prev = np.inf
    g = grid
    while True:
        xs = np.arange(g) / g
        X, Y = np.meshgrid(xs, xs, indexing="ij")
        F = frob_sq(X, Y, n)
        idx = np.argsort(F, axis=None)[:8]
        best = np.inf
        for i in idx:
            x0 = np.array([X.flat[i], Y.flat[i]])
            res = minimize(lambda z: float(frob_sq(z[0], z[1], n)), x0, method="Nelder-Mead",
                           options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
            best = min(best, float(res.fun), float(F.flat[i]))
        if abs(prev - best) < tol or 2 * g > max_grid:
            return best
        prev, g = best, 2 * g


def _gl_grid(panels: int, order: int):
    t, w = np.polynomial.legendre.leggauss(order)
    t = 0.5 * (t + 1) / panels
    w = 0.5 * w / panels
    left = np.arange(panels) / panels
    nodes = (left[:, None] + t[None, :]).ravel()
    weights = np.tile(w, panels)
    return nodes, weights


def _tensor_mean(n: int, nodes, weights, chunk: int = 512) -> float:
    total = 0.0
    for s in range(0, nodes.size, chunk):
        X, Y = np.meshgrid(nodes[s:s + chunk], nodes, indexing="ij")
        vals = np.log(frob_sq(X, Y, n))
        total += float(weights[s:s + chunk] @ vals @ weights)
    return total / (2 * n)


@dataclass
class TorusMean:
    n: int
    value: float
    converged: bool
    history: list = field(default_factory=list)  # (panels, order, value)


def torus_mean_refinement(n: int, quad_order: int = 8, tol: float = 1e-4,
                          panels: int = 2, max_panels: int = 256) -> TorusMean:
    """Composite Gauss-Legendre tensor rule, panel count doubled until two
    successive values differ by less than tol."""
    hist = []
    prev = None
    while panels <= max_panels:
        nodes, weights = _gl_grid(panels, quad_order)
        v = _tensor_mean(n, nodes, weights)
        hist.append((panels, quad_order, v))
        if prev is not None and abs(v - prev) < tol:
            return TorusMean(n, v, True, hist)
        prev = v
        panels *= 2
    return TorusMean(n, hist[-1][2], False, hist)


def torus_mean_log_norm(n: int, quad_order: int = 8, tol: float = 1e-4) -> float:
    res = torus_mean_refinement(n, quad_order, tol)
    if not res.converged:
        raise RuntimeError(f"torus mean not converged to {tol}: {res.history[-2:]}")
    return res.value


def torus_mean_midpoint(n: int, m: int) -> float:
    """Plain m x m midpoint rule; spectrally accurate for smooth periodic integrands."""
    xs = (np.arange(m) + 0.5) / m
    w = np.full(m, 1.0 / m)
    return _tensor_mean(n, xs, w)


HALF_LOG_LAM = 0.5 * math.log((1 + math.sqrt(13)) / 2)
