"""Algebra checks: displacement algebra, Kronecker real algebra, positivity
threshold of A_U(k/lam) A_U(k), and the blow-up iteration near k = 0."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np
from scipy.optimize import brentq

from .algebra import LAM, NU
from .fourier import D0, DL, eval_A, eval_AU_real

W_PF = np.kron(NU, NU)


def _exact_rank(vectors) -> int:
    rows = [[Fraction(int(x)) for x in v] for v in vectors]
    rank, ncol = 0, len(rows[0]) if rows else 0
    for c in range(ncol):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _numeric_rank(vectors, tol=1e-8) -> int:
    X = np.asarray(vectors)
    s = np.linalg.svd(X, compute_uv=False)
    return int((s > tol * s[0]).sum()) if s.size and s[0] > 0 else 0


def word_products(generators, max_len: int, include_identity: bool = True):
    d = generators[0].shape[0]
    out = [np.eye(d, dtype=generators[0].dtype)] if include_identity else []
    for L in range(1, max_len + 1):
        for w in product(range(len(generators)), repeat=L):
            m = np.eye(d, dtype=generators[0].dtype)
            for i in w:
                m = m @ generators[i]
            out.append(m)
    return out


def ida_dimension(max_word_len: int, generators=None, include_identity: bool = True, tol=1e-8) -> int:
    """Dimension of the span of all words of length <= max_word_len.

    Integer generators (default: the digit matrices) use exact rank, anything
    else a relative SVD threshold.
    """
    gens = [D0, DL] if generators is None else [np.asarray(g) for g in generators]
    mats = word_products(gens, max_word_len, include_identity)
    flat = [m.reshape(-1) for m in mats]
    if all(np.issubdtype(m.dtype, np.integer) for m in mats):
        return _exact_rank(flat)
    return _numeric_rank(flat, tol)


def kron_algebra_real_dimension(samples, tol=1e-8, max_rounds=10) -> int:
    """Real dimension of the real algebra generated by {A(k) : k in samples}.

    Matrices are flattened to 32 real numbers; the span is closed under
    right-multiplication by the generators until the rank stops growing.
    """
    gens = list(eval_A(np.asarray(samples, dtype=float)))
    flat = lambda m: np.concatenate([m.real.ravel(), m.imag.ravel()])  # noqa: E731

    def basis_of(mats):
        X = np.array([flat(m) for m in mats])
        u, s, vt = np.linalg.svd(X, full_matrices=False)
        r = int((s > tol * s[0]).sum())
        return [(v[:16] + 1j * v[16:]).reshape(4, 4) for v in vt[:r]]

    basis = basis_of([np.eye(4, dtype=complex)] + gens)
    for _ in range(max_rounds):
        grown = basis_of(basis + [b @ g for b in basis for g in gens])
        if len(grown) == len(basis):
            break
        basis = grown
    return len(basis)


def _au_pair(k):
    return eval_AU_real(np.asarray(k) / LAM) @ eval_AU_real(k)


def positivity_threshold(k_max: float = 0.1, step: float = 2e-4) -> float:
    """Smallest k > 0 where an entry of A_U(k/lam) A_U(k) reaches zero."""
    ks = np.arange(step, k_max + step / 2, step)
    vals = _au_pair(ks).reshape(ks.size, 16)
    best = np.inf
    for e in range(16):
        col = vals[:, e]
        bad = np.flatnonzero(col <= 0)
        if bad.size == 0:
            continue
        i = bad[0]
        if i == 0:
            raise RuntimeError(f"entry {e} not positive at the first scan point")
        f = lambda k, e=e: _au_pair(k).reshape(16)[e]  # noqa: E731
        root = brentq(f, ks[i - 1], ks[i], xtol=1e-14)
        best = min(best, root)
    if not np.isfinite(best):
        raise RuntimeError(f"no sign change below {k_max}")
    return float(best)


@dataclass
class BlowupTrace:
    k: float
    log_norms: np.ndarray  # log |w_n| (1-norm), n = 0..steps
    directions: np.ndarray  # w_n / |w_n|_1
    slope: float  # per double step, expected 4 log lam
    angle_to_pf: float
    min_entry: float  # smallest normalised entry seen after the first step


def _fit_slope(y) -> float:
    y = np.asarray(y)
    n = y.size
    i0 = n // 2
    x = np.arange(i0, n)
    return float(np.polyfit(x, y[i0:], 1)[0])


def _angle(u, v) -> float:
    c = abs(np.dot(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v))
    return float(np.arccos(min(1.0, c)))


def blowup_iteration(k: float, w0, n: int) -> BlowupTrace:
    """w_n = (A_U(k/lam^{2n-1}) A_U(k/lam^{2n-2})) ... (A_U(k/lam) A_U(k)) w0."""
    w = np.asarray(w0, dtype=float)
    if (w < 0).any() or not w.any():
        raise ValueError("w0 must be non-negative and nonzero")
    logs = [np.log(w.sum())]
    w = w / w.sum()
    dirs = [w]
    min_entry = np.inf
    for j in range(1, n + 1):
        m = 2 * j - 1
        w = eval_AU_real(k / LAM**m) @ (eval_AU_real(k / LAM ** (m - 1)) @ w)
        s = w.sum()
        logs.append(logs[-1] + np.log(s))
        w = w / s
        dirs.append(w)
        min_entry = min(min_entry, w.min())
    logs = np.array(logs)
    return BlowupTrace(k, logs, np.array(dirs), _fit_slope(logs), _angle(w, W_PF), float(min_entry))


def scaled_blowup(k0: float, w0, m: int) -> np.ndarray:
    """w'_j = (1/lam) A_U(k0/lam^j) w'_{j-1}; returns k_m * w'_m with k_m = k0/lam^m."""
    w = np.asarray(w0, dtype=float)
    logscale = 0.0
    for j in range(1, m + 1):
        w = eval_AU_real(k0 / LAM**j) @ w / LAM
        s = np.abs(w).sum()
        logscale += np.log(s)
        w = w / s
    return w * np.exp(logscale + np.log(k0) - m * np.log(LAM))
