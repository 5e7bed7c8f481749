"""Fractional parts of lam^m k, computed exactly enough for long outward orbits.

Floats cannot represent lam^m k mod 1 once lam^m k exceeds ~2^53, so the orbit
is run in fixed point with Python integers: t_{m+1} = t_m + 3 t_{m-1} (mod 1),
which is exact because lam^2 = lam + 3.  The working precision is chosen so the
final 53 bits are still correct after the lam^n error amplification.
"""
from __future__ import annotations

import math
from fractions import Fraction
from math import isqrt

import numpy as np

from .algebra import lambda_power_coeffs

LOG2_LAM = math.log2((1 + math.sqrt(13)) / 2)
GUARD_BITS = 96


def _as_fraction(k) -> Fraction:
    if isinstance(k, Fraction):
        return k
    if isinstance(k, (int, np.integer)):
        return Fraction(int(k))
    if isinstance(k, str):
        return Fraction(k)
    return Fraction(float(k))  # exact dyadic value of the double


def _fixed_point_frac(x: Fraction, a: Fraction, bits: int) -> int:
    """floor(2^bits * frac(x * (a*lam + b))) is handled by the caller; here:
    2^bits * (x * a * lam) rounded down, with lam = (1 + sqrt13)/2."""
    guard = 64 + max(0, (abs(x * a).numerator.bit_length() - abs(x * a).denominator.bit_length()))
    scale = bits + guard
    s13 = isqrt(13 << (2 * scale))
    num = x * a * ((1 << scale) + s13)  # = x a lam * 2^(scale+1)
    return (num.numerator // num.denominator) >> (guard + 1)


def _frac_at(k: Fraction, m: int, bits: int) -> int:
    a, b = lambda_power_coeffs(m)
    a, b = Fraction(a), Fraction(b)
    one = 1 << bits
    lam_part = _fixed_point_frac(k, a, bits)
    rat = k * b * one
    return (lam_part + rat.numerator // rat.denominator) % one


def frac_orbit_int(k, n: int, start: int = 0, out_bits: int = 53) -> list[int]:
    """floor(2^out_bits * frac(lam^m k)) for m = start, ..., start + n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    kf = _as_fraction(k)
    bits = int(max(n, 1) * LOG2_LAM) + GUARD_BITS + out_bits
    mask = (1 << bits) - 1
    sh = bits - out_bits
    a = _frac_at(kf, start, bits)
    out = [a >> sh]
    if n == 0:
        return out
    b = _frac_at(kf, start + 1, bits)
    out.append(b >> sh)
    for _ in range(2, n + 1):
        a, b = b, (b + 3 * a) & mask
        out.append(b >> sh)
    return out


def frac_orbit(k, n: int, start: int = 0) -> np.ndarray:
    """frac(lam^m k) for m = start, ..., start + n (n + 1 values)."""
    return np.array(frac_orbit_int(k, n, start), dtype=float) / 2.0**53


def p_from_orbit(t: np.ndarray) -> np.ndarray:
    """p(lam^m k) for consecutive orbit points: needs t_m and t_{m+1}.

    Returns len(t) - 1 values.
    """
    t0, t1 = t[:-1], t[1:]
    return np.exp(2j * np.pi * (t1 + t0)) * (1.0 + 2.0 * np.cos(2 * np.pi * t0))


def p_along_orbit(k, n: int, start: int = 0) -> np.ndarray:
    """p(lam^m k) for m = start, ..., start + n - 1."""
    return p_from_orbit(frac_orbit(k, n, start))
