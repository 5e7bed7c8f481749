"""Exact arithmetic in Z[lam] and Q(lam), lam^2 = lam + 3.

Elements are written a + b*lam.  Ordering is decided exactly from the sign of
m + b*sqrt(13) with m = 2a + b, so no float ever enters a comparison.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import total_ordering

import numpy as np

SQRT13 = math.sqrt(13.0)
LAM = (1.0 + SQRT13) / 2.0
LAM_CONJ = 1.0 - LAM

with localcontext() as _ctx:
    _ctx.prec = 60
    _SQRT13_DEC = Decimal(13).sqrt()
    LAM_DEC = (1 + _SQRT13_DEC) / 2

SUBST_MATRIX = np.array([[1, 1], [3, 0]], dtype=np.int64)

# JSON integers are only safe up to 2**53 in most consumers.
_JSON_SAFE = 2**53


def _sign_rational(m, b) -> int:
    """Sign of m + b*sqrt(13) for rationals (or ints) m, b."""
    sm = (m > 0) - (m < 0)
    sb = (b > 0) - (b < 0)
    if sm == sb or sb == 0:
        return sm
    if sm == 0:
        return sb
    mm, bb = m * m, 13 * b * b
    if mm == bb:
        return 0
    return sm if mm > bb else sb


def exact_sign(a, b) -> int:
    """Sign of a + b*lam, exactly."""
    return _sign_rational(2 * a + b, b)


def _to_real(a, b) -> float:
    # cheap path, and a high-precision one when cancellation could bite
    x = a + b * LAM
    if abs(a) < 2**40 and abs(b) < 2**40 and (x == 0 or abs(x) > 1e-6 * (abs(a) + abs(b) * LAM)):
        return float(x)
    with localcontext() as ctx:
        ctx.prec = 60
        if isinstance(a, Fraction) or isinstance(b, Fraction):
            a, b = Fraction(a), Fraction(b)
            num = Decimal(a.numerator) / Decimal(a.denominator) + Decimal(b.numerator) / Decimal(b.denominator) * LAM_DEC
        else:
            num = Decimal(a) + Decimal(b) * LAM_DEC
        return float(num)


@total_ordering
@dataclass(frozen=True, slots=True)
class ZLambda:
    """a + b*lam with integer a, b (Python ints, so no overflow)."""

    a: int = 0
    b: int = 0

    def __post_init__(self):
        if not isinstance(self.a, (int, np.integer)) or not isinstance(self.b, (int, np.integer)):
            raise TypeError("ZLambda components must be integers")
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", int(self.b))

    @classmethod
    def lam(cls) -> ZLambda:
        return cls(0, 1)

    @staticmethod
    def _coerce(other):
        if isinstance(other, ZLambda):
            return other
        if isinstance(other, (int, np.integer)):
            return ZLambda(int(other), 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ZLambda(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return ZLambda(-self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ZLambda(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, QLambda):
                return QLambda.from_z(self) * other
            return NotImplemented
        return zl_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return QLambda.from_z(self) / other

    def __pow__(self, n: int):
        if n < 0:
            return QLambda.from_z(self) ** n
        out, base = ZLambda(1, 0), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, QLambda):
                return other == self
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, QLambda):
                return QLambda.from_z(self) < other
            return NotImplemented
        return exact_sign(o.a - self.a, o.b - self.b) > 0

    def sign(self) -> int:
        return exact_sign(self.a, self.b)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.a or self.b)

    def __float__(self):
        return _to_real(self.a, self.b)

    def conj(self) -> ZLambda:
        # lam -> 1 - lam
        return ZLambda(self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b - 3 * self.b * self.b

    def to_json(self) -> dict:
        enc = lambda v: v if abs(v) < _JSON_SAFE else str(v)  # noqa: E731
        return {"a": enc(self.a), "b": enc(self.b)}

    @classmethod
    def from_json(cls, d: dict) -> ZLambda:
        return cls(int(d["a"]), int(d["b"]))

    def __repr__(self):
        return f"ZLambda({self.a}, {self.b})"

    def __str__(self):
        return _fmt(self.a, self.b)


def _fmt(a, b) -> str:
    if b == 0:
        return str(a)
    lam = "lam" if b == 1 else ("-lam" if b == -1 else f"{b}*lam")
    if a == 0:
        return lam
    return f"{a}{'' if lam.startswith('-') else '+'}{lam}"


def zl_mul(x: ZLambda, y: ZLambda) -> ZLambda:
    """Exact product using lam^2 = lam + 3."""
    return ZLambda(x.a * y.a + 3 * x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b)


@total_ordering
@dataclass(frozen=True, slots=True)
class QLambda:
    """p + q*lam with rational p, q."""

    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))

    @classmethod
    def from_z(cls, z: ZLambda) -> QLambda:
        return cls(Fraction(z.a), Fraction(z.b))

    @classmethod
    def lam_power(cls, n: int) -> QLambda:
        a, b = lambda_power_coeffs(n)
        return cls(b, a)

    @staticmethod
    def _coerce(other):
        if isinstance(other, QLambda):
            return other
        if isinstance(other, ZLambda):
            return QLambda.from_z(other)
        if isinstance(other, (int, Fraction, np.integer)):
            return QLambda(Fraction(int(other) if isinstance(other, np.integer) else other), Fraction(0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QLambda(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self):
        return QLambda(-self.p, -self.q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QLambda(self.p - o.p, self.q - o.q)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QLambda(self.p * o.p + 3 * self.q * o.q, self.p * o.q + self.q * o.p + self.q * o.q)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.p * self.p + self.p * self.q - 3 * self.q * self.q

    def conj(self) -> QLambda:
        return QLambda(self.p + self.q, -self.q)

    def inverse(self) -> QLambda:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QLambda inverse of zero")
        c = self.conj()
        return QLambda(c.p / n, c.q / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = QLambda(1)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __hash__(self):
        if self.p.denominator == 1 and self.q.denominator == 1:
            return hash((int(self.p), int(self.q)))
        return hash((self.p, self.q))

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o - self
        return _sign_rational(2 * d.p + d.q, d.q) > 0

    def sign(self) -> int:
        return _sign_rational(2 * self.p + self.q, self.q)

    def __bool__(self):
        return bool(self.p or self.q)

    def __float__(self):
        return _to_real(self.p, self.q)

    def is_integral(self) -> bool:
        return self.p.denominator == 1 and self.q.denominator == 1

    def to_z(self) -> ZLambda:
        if not self.is_integral():
            raise ValueError(f"{self} is not in Z[lam]")
        return ZLambda(int(self.p), int(self.q))

    def __repr__(self):
        return f"QLambda({self.p}, {self.q})"

    def __str__(self):
        return _fmt(self.p, self.q)


def lambda_power_coeffs(n: int) -> tuple[Fraction, Fraction] | tuple[int, int]:
    """(a_n, b_n) with lam^n = a_n*lam + b_n, i.e. M^n (0,1)^t.

    Integers for n >= 0, Fractions for negative n.
    """
    if n >= 0:
        a, b = 0, 1
        for _ in range(n):
            # lam*(a lam + b) = a(lam+3) + b lam
            a, b = a + b, 3 * a
        return a, b
    a, b = Fraction(0), Fraction(1)
    for _ in range(-n):
        # divide by lam: lam^-1 = (lam - 1)/3
        a, b = b / 3, a - b / 3
    return a, b


@dataclass
class GcdReport:
    ok: bool
    n_max: int
    first_violation: int | None = None
    message: str = ""


def gcd_facts_check(n_max: int) -> GcdReport:
    """Congruence and gcd facts for the lam-power coefficients, 1 <= n <= n_max.

    Convention gcd(0, k) = |k| (math.gcd already does this).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    a = [0, 1]
    while len(a) < n_max + 3:
        a.append(a[-1] + 3 * a[-2])
    b = [1] + [3 * a[i - 1] for i in range(1, len(a))]
    for n in range(1, n_max + 1):
        checks = [
            (a[n] % 3 == 1, f"a_{n} = {a[n]} not 1 mod 3"),
            (b[n] % 3 == 0, f"b_{n} = {b[n]} not 0 mod 3"),
            (math.gcd(a[n], a[n + 1]) == 1, f"gcd(a_{n}, a_{n+1}) != 1"),
            (math.gcd(b[n], b[n + 1]) == 3, f"gcd(b_{n}, b_{n+1}) != 3"),
        ]
        for good, msg in checks:
            if not good:
                return GcdReport(False, n_max, n, msg)
    return GcdReport(True, n_max, None, f"all facts hold for 1 <= n <= {n_max}")


@dataclass(frozen=True)
class PFData:
    lam: float
    lam_conj: float
    subst_matrix: np.ndarray
    right_pf: tuple[float, float]
    left_pf: tuple[float, float]
    density: float
    right_pf_exact: tuple[QLambda, QLambda]
    density_exact: QLambda


def pf_data() -> PFData:
    nu0 = QLambda(Fraction(-1, 3), Fraction(1, 3))
    nu1 = QLambda(Fraction(4, 3), Fraction(-1, 3))
    dens = QLambda(Fraction(6, 13), Fraction(1, 13))
    return PFData(
        lam=LAM,
        lam_conj=LAM_CONJ,
        subst_matrix=SUBST_MATRIX.copy(),
        right_pf=(float(nu0), float(nu1)),
        left_pf=(LAM, 1.0),
        density=float(dens),
        right_pf_exact=(nu0, nu1),
        density_exact=dens,
    )


DENSITY = (6.0 + LAM) / 13.0
NU = np.array([(LAM - 1.0) / 3.0, (4.0 - LAM) / 3.0])


def exact_sign_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorised exact sign of a + b*lam for int64 arrays of modest size (|.| < 2**30)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    m = 2 * a + b
    sm, sb = np.sign(m), np.sign(b)
    big = np.where(m * m > 13 * b * b, sm, sb)
    out = np.where((sm == sb) | (sb == 0), sm, np.where(sm == 0, sb, big))
    return out.astype(np.int64)
