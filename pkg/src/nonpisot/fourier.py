"""Fourier matrix B(k), Kronecker matrix A(k) and friends.

B(k) = D0 + p(k) DL with the digit matrices D0, DL, and
p(k) = e^{2 pi i k lam} + e^{2 pi i k (lam+1)} + e^{2 pi i k (lam+2)}.
Everything is vectorised over k (arrays of shape (...) give (..., 2, 2)).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LAM, ZLambda

TWO_PI = 2 * np.pi

D0 = np.array([[1, 1], [0, 0]], dtype=np.int64)
DL = np.array([[0, 0], [1, 0]], dtype=np.int64)
M = D0 + 3 * DL

U = np.array([[1 - 1j, 0, 0, 0],
              [0, 1, -1j, 0],
              [0, -1j, 1, 0],
              [0, 0, 0, 1 - 1j]]) / np.sqrt(2)
U_INV = np.linalg.inv(U)

# C(x (x) y) = conj(y) (x) conj(x): swap index 01 <-> 10, then conjugate.
_SWAP = np.eye(4)[[0, 2, 1, 3]]
C_REAL = np.block([[_SWAP, np.zeros((4, 4))], [np.zeros((4, 4)), -_SWAP]])


@dataclass(frozen=True)
class TrigPoly:
    """k -> sum c * exp(2 pi i k freq)."""

    terms: tuple  # ((ZLambda, complex), ...)

    def __call__(self, k):
        k = np.asarray(k, dtype=float)
        out = np.zeros(k.shape, dtype=complex)
        for f, c in self.terms:
            out = out + c * np.exp(1j * TWO_PI * k * float(f))
        return out


P_TRIG = TrigPoly(((ZLambda(0, 1), 1.0), (ZLambda(1, 1), 1.0), (ZLambda(2, 1), 1.0)))


def eval_p(k):
    """p(k) in factored form e^{2 pi i k (lam+1)} (1 + 2 cos 2 pi k)."""
    k = np.asarray(k, dtype=float)
    return np.exp(1j * TWO_PI * k * (LAM + 1)) * (1 + 2 * np.cos(TWO_PI * k))


def z_of(k):
    return 3 - eval_p(k)


def c_of(k):
    return eval_p(k).real


def s_of(k):
    return eval_p(k).imag


def b_from_p(p):
    p = np.asarray(p, dtype=complex)
    out = np.zeros(p.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = 1
    out[..., 0, 1] = 1
    out[..., 1, 0] = p
    return out


def eval_B(k):
    return b_from_p(eval_p(k))


def kron_conj(B):
    """B (x) conj(B), lexicographic order, batched."""
    return np.einsum("...ik,...jl->...ijkl", B, B.conj()).reshape(B.shape[:-2] + (4, 4))


def eval_A(k):
    return kron_conj(eval_B(k))


def eval_AU(k):
    return U @ eval_A(k) @ U_INV


def eval_AU_real(k):
    """A_U(k) from its closed form with c = Re p, s = Im p (always real)."""
    p = eval_p(k)
    c, s = p.real, p.imag
    out = np.zeros(np.shape(c) + (4, 4))
    out[..., 0, :] = 1
    out[..., 1, 0], out[..., 1, 1], out[..., 1, 2] = c + s, s, c
    out[..., 2, 0], out[..., 2, 1], out[..., 2, 2] = c - s, c, -s
    out[..., 3, 0] = c * c + s * s
    return out


def p_lift(x, y):
    """p~(x, y) = e^{2 pi i (x+y)} (1 + 2 cos 2 pi y); p(k) = p~(lam k, k)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.exp(1j * TWO_PI * (x + y)) * (1 + 2 * np.cos(TWO_PI * y))


def eval_B_lift(x, y):
    return b_from_p(p_lift(x, y))


def lift_product(x, y, n: int):
    """B~^(n)(x, y) via B~^(n+1)(x,y) = B~(x,y) B~^(n)(x + 3y mod 1, x).

    Unrolled: the m-th factor is evaluated at the m-th point of the torus map
    (x, y) -> (x + 3y, x), which is multiplication of (lam k, k) by lam.
    """
    x = np.asarray(x, dtype=float) % 1.0
    y = np.asarray(y, dtype=float) % 1.0
    out = np.broadcast_to(np.eye(2, dtype=complex), np.broadcast(x, y).shape + (2, 2)).copy()
    for _ in range(n):
        out = out @ eval_B_lift(x, y)
        x, y = (x + 3 * y) % 1.0, x
    return out


def to_real_rep(A):
    """Complex n x n -> real 2n x 2n acting on (Re w, Im w)."""
    re, im = A.real, A.imag
    return np.block([[re, -im], [im, re]])


def conjugation_commutator_residual(k) -> float:
    """max |[C, A(k)]| with C the real-linear swap-conjugation on C^4."""
    ks = np.atleast_1d(np.asarray(k, dtype=float))
    worst = 0.0
    for A in eval_A(ks):
        R = to_real_rep(A)
        worst = max(worst, np.abs(C_REAL @ R - R @ C_REAL).max())
    return float(worst)


def u_realness_residual(k) -> float:
    ks = np.atleast_1d(np.asarray(k, dtype=float))
    return float(np.abs(eval_AU(ks).imag).max())


def projector_residuals(k) -> dict:
    """Idempotence, complementarity and A-invariance of (1 +- C)/2."""
    I8 = np.eye(8)
    Pp, Pm = 0.5 * (I8 + C_REAL), 0.5 * (I8 - C_REAL)
    ks = np.atleast_1d(np.asarray(k, dtype=float))
    inv = 0.0
    for A in eval_A(ks):
        R = to_real_rep(A)
        inv = max(inv, np.abs(Pm @ R @ Pp).max(), np.abs(Pp @ R @ Pm).max())
    return {
        "idempotent": float(max(np.abs(Pp @ Pp - Pp).max(), np.abs(Pm @ Pm - Pm).max())),
        "complementary": float(np.abs(Pp + Pm - I8).max() + np.abs(Pp @ Pm).max()),
        "invariant": float(inv),
    }
