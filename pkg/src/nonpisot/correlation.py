"""Pair correlations nu_ij(z): exact renormalisation solve, recursive extension,
and a brute-force counting estimate from geometric patches."""
from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import DENSITY, LAM, QLambda, ZLambda, exact_sign, exact_sign_array, pf_data
from .inflation import geometric_patch

COMPONENTS = ((0, 0), (0, 1), (1, 0), (1, 1))
LAM_Z = ZLambda(0, 1)
BASE_RADIUS = ZLambda(1, 1)

# displacements of type-i tiles inside a supertile of type m:
# supertile 0 = 0111 (0 at 0, 1s at lam, 1+lam, 2+lam); supertile 1 = 0.
DISPLACEMENTS = {
    (0, 0): (ZLambda(0, 0),),
    (0, 1): (ZLambda(0, 0),),
    (1, 0): (ZLambda(0, 1), ZLambda(1, 1), ZLambda(2, 1)),
    (1, 1): (),
}

_ZERO = QLambda()
_INV_LAM = QLambda(Fraction(-1, 3), Fraction(1, 3))


def _within(z: ZLambda, R) -> bool:
    """|z| <= R, exactly when R is in Z[lam]."""
    if isinstance(R, ZLambda):
        return exact_sign(R.a - abs(z).a, R.b - abs(z).b) >= 0
    return abs(float(z)) <= R


def renormalisation_terms(i: int, j: int, z: ZLambda):
    """Right-hand side of nu_ij(z) = (1/lam) sum nu_mn(w) as (m, n, w) triples.

    w is a QLambda; terms with w outside Z[lam] vanish and are dropped.
    """
    out = []
    for m in (0, 1):
        for n in (0, 1):
            for t in DISPLACEMENTS[(i, m)]:
                for tp in DISPLACEMENTS[(j, n)]:
                    w = (z + t - tp) * _INV_LAM
                    if w.is_integral():
                        out.append((m, n, w.to_z()))
    return out


@dataclass
class CorrelationTable:
    entries: dict  # ZLambda -> tuple of 4 QLambda, ordered as COMPONENTS
    radius: object  # ZLambda (exact) or float
    support: tuple = ()  # all z of Delta within radius

    def __post_init__(self):
        if not self.support:
            self.support = tuple(sorted(self.entries))

    def get(self, z: ZLambda) -> tuple:
        if not _within(z, self.radius):
            raise ValueError(f"|{z}| exceeds table radius {self.radius}")
        return self.entries.get(z, (_ZERO,) * 4)

    def nu(self, i: int, j: int, z: ZLambda) -> QLambda:
        return self.get(z)[2 * i + j]

    def radius_float(self) -> float:
        return float(self.radius)

    def support_sets(self) -> dict:
        """S_ij: distances with a positive entry, per component."""
        return {c: tuple(z for z in self.support if self.entries[z][k].sign() > 0)
                for k, c in enumerate(COMPONENTS)}

    def to_float(self) -> dict:
        return {z: np.array([float(v) for v in vals]) for z, vals in self.entries.items()}

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        head = ["z_a", "z_b", "z_float"]
        for i, j in COMPONENTS:
            head += [f"nu{i}{j}_p", f"nu{i}{j}_q"]
        head += [f"nu{i}{j}_float" for i, j in COMPONENTS]
        wr.writerow(head)
        for z in sorted(self.entries):
            vals = self.entries[z]
            row = [z.a, z.b, f"{float(z):.17g}"]
            for v in vals:
                row += [str(v.p), str(v.q)]
            row += [f"{float(v):.17g}" for v in vals]
            wr.writerow(row)
        return buf.getvalue()


def _shift_differences(pa, pb, R, types=None):
    """Yield (shift, da, db, float_dist, mask) for forward pairs with distance <= R."""
    s = 1
    n = pa.size
    while s < n:
        da = pa[s:] - pa[:-s]
        db = pb[s:] - pb[:-s]
        if isinstance(R, ZLambda):
            mask = exact_sign_array(R.a - da, R.b - db) >= 0
        else:
            mask = da + db * LAM <= R
        if not mask.any():
            break
        yield s, da, db, mask
        s += 1


def difference_set(R, level: int | None = None) -> list[ZLambda]:
    """Delta within [-R, R], read off an actual patch of radius >= lam^2 R."""
    Rf = float(R)
    if level is None:
        level = 1
        while LAM ** (2 * level + 1) < LAM**2 * Rf:
            level += 1
    patch = geometric_patch(level)
    found = {(0, 0)}
    for _, da, db, mask in _shift_differences(patch.pos_a, patch.pos_b, R):
        pairs = np.unique(np.stack([da[mask], db[mask]], axis=1), axis=0)
        for a, b in pairs:
            found.add((int(a), int(b)))
            found.add((-int(a), -int(b)))
    return sorted(ZLambda(a, b) for a, b in found)


def _solve_nullspace(rows: list[dict], ncols: int):
    """Gauss-Jordan over Q(lam) on sparse rows; returns (rank, basis of the null space)."""
    rows = [dict(r) for r in rows if r]
    pivots = {}  # col -> row dict (normalised, pivot entry 1)
    for r in rows:
        # reduce against existing pivots
        for c, prow in pivots.items():
            f = r.get(c)
            if f:
                for cc, v in prow.items():
                    nv = r.get(cc, _ZERO) - f * v
                    if nv:
                        r[cc] = nv
                    else:
                        r.pop(cc, None)
        if not r:
            continue
        c0 = min(r)
        inv = r[c0].inverse()
        r = {c: v * inv for c, v in r.items()}
        # back-substitute into earlier pivots
        for c, prow in pivots.items():
            f = prow.get(c0)
            if f:
                for cc, v in r.items():
                    nv = prow.get(cc, _ZERO) - f * v
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivots[c0] = r
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [_ZERO] * ncols
        v[fcol] = QLambda(1)
        for c, prow in pivots.items():
            v[c] = -prow.get(fcol, _ZERO)
        basis.append(v)
    return len(pivots), basis


class SolutionSpaceError(RuntimeError):
    pass


def assemble_base_system(symmetric: bool = False):
    """Homogeneous renormalisation system on Delta within |z| <= 1+lam.

    Returns (rows, zs); column index = 4*position_of_z + component.
    """
    zs = difference_set(BASE_RADIUS)
    index = {z: k for k, z in enumerate(zs)}
    rows = []
    for z in zs:
        for c, (i, j) in enumerate(COMPONENTS):
            row = {4 * index[z] + c: QLambda(1)}
            for m, n, w in renormalisation_terms(i, j, z):
                if not _within(w, BASE_RADIUS):
                    raise SolutionSpaceError(f"argument {w} escapes the base range")
                if w in index:
                    col = 4 * index[w] + 2 * m + n
                    v = row.get(col, _ZERO) - _INV_LAM
                    if v:
                        row[col] = v
                    else:
                        row.pop(col)
            rows.append(row)
    if symmetric:
        for z in zs:
            for c, (i, j) in enumerate(COMPONENTS):
                c2 = 2 * j + i
                a, b = 4 * index[z] + c, 4 * index[-z] + c2
                if a < b:
                    rows.append({a: QLambda(1), b: QLambda(-1)})
    return rows, zs


def base_system_solve(symmetric: bool = False) -> CorrelationTable:
    rows, zs = assemble_base_system(symmetric)
    ncols = 4 * len(zs)
    rank, basis = _solve_nullspace(rows, ncols)
    if len(basis) != 1:
        raise SolutionSpaceError(f"solution space has dimension {len(basis)}, expected 1")
    v = basis[0]
    k0 = zs.index(ZLambda(0, 0))
    scale = (v[4 * k0] + v[4 * k0 + 3]).inverse()
    v = [x * scale for x in v]
    entries = {z: tuple(v[4 * k + c] for c in range(4)) for k, z in enumerate(zs)}
    return CorrelationTable(entries, BASE_RADIUS, tuple(zs))


def extend_table(t: CorrelationTable, R, level: int | None = None) -> CorrelationTable:
    """Grow the table to radius R by evaluating the renormalisation identities outward."""
    if float(R) <= t.radius_float():
        raise ValueError("R must exceed the current radius")
    zs = difference_set(R, level)
    delta = set(zs)
    entries = dict(t.entries)
    todo = sorted((z for z in zs if not _within(z, t.radius)), key=lambda z: (abs(z), z))
    for z in todo:
        vals = []
        for i, j in COMPONENTS:
            acc = _ZERO
            for m, n, w in renormalisation_terms(i, j, z):
                if w in entries:
                    acc = acc + entries[w][2 * m + n]
                elif w in delta:
                    raise RuntimeError(f"value at {w} needed for {z} is not yet known")
            vals.append(acc * _INV_LAM)
        entries[z] = tuple(vals)
    return CorrelationTable(entries, R, tuple(zs))


def renormalisation_residual(t: CorrelationTable) -> list:
    """z where an identity fails exactly (only z whose arguments stay inside the table)."""
    bad = []
    R = t.radius_float()
    for z in t.support:
        if (abs(float(z)) + 2.0) / LAM > R:
            continue
        for c, (i, j) in enumerate(COMPONENTS):
            acc = _ZERO
            for m, n, w in renormalisation_terms(i, j, z):
                acc = acc + t.get(w)[2 * m + n]
            if acc * _INV_LAM != t.entries[z][c]:
                bad.append((z, (i, j)))
    return bad


@dataclass
class EmpiricalTable:
    """Counted estimates of nu_ij(z); keys are (a, b) tuples."""

    values: dict
    n_origin: int
    R: object
    window: float

    def get(self, z) -> np.ndarray:
        key = (z.a, z.b) if isinstance(z, ZLambda) else z
        return self.values.get(key, np.zeros(4))

    def keys(self):
        return [ZLambda(a, b) for a, b in sorted(self.values)]


def count_correlations(patch, R, window=None) -> EmpiricalTable:
    """Brute-force nu_ij(z) from a patch.

    Origins are the points x with -r <= x < r (half-open), partners may lie
    anywhere in the patch; r defaults to the patch half-width minus R.
    """
    pa, pb, ty = patch.pos_a, patch.pos_b, patch.types.astype(np.int64)
    Rf = float(R)
    if patch.radius < 10 * Rf:
        warnings.warn("patch radius < 10 R: boundary effects dominate", stacklevel=2)
    if window is None:
        if isinstance(R, ZLambda):
            window = patch.right_end - R
        else:
            window = patch.radius - Rf
    if isinstance(window, ZLambda):
        lo = exact_sign_array(pa + window.a, pb + window.b) >= 0
        hi = exact_sign_array(window.a - pa, window.b - pb) > 0
        inside = lo & hi
    else:
        x = patch.positions
        inside = (x >= -window) & (x < window)
    n0 = int(inside.sum())
    counts: dict = {}

    def add(da, db, ti, tj):
        if da.size == 0:
            return
        K = int(max(np.abs(da).max(), np.abs(db).max())) + 1
        key = ((da + K) * (2 * K + 1) + (db + K)) * 4 + 2 * ti + tj
        uk, cnt = np.unique(key, return_counts=True)
        comp = uk % 4
        rest = uk // 4
        a = rest // (2 * K + 1) - K
        b = rest % (2 * K + 1) - K
        for aa, bb, cc, nn in zip(a.tolist(), b.tolist(), comp.tolist(), cnt.tolist()):
            counts.setdefault((aa, bb), np.zeros(4))[cc] += nn

    # z = 0
    add(np.zeros(n0, np.int64), np.zeros(n0, np.int64), ty[inside], ty[inside])
    for s, da, db, mask in _shift_differences(pa, pb, R):
        # origin at the left point, partner on the right: +d
        m1 = mask & inside[:-s]
        add(da[m1], db[m1], ty[:-s][m1], ty[s:][m1])
        # origin at the right point: -d
        m2 = mask & inside[s:]
        add(-da[m2], -db[m2], ty[s:][m2], ty[:-s][m2])
    values = {k: v / n0 for k, v in counts.items()}
    return EmpiricalTable(values, n0, R, float(window))


def eta(t: CorrelationTable, u, z: ZLambda) -> complex:
    """eta_u(z) = dens * sum conj(u_i) nu_ij(z) u_j."""
    vals = t.get(z)
    u = [complex(x) for x in u]
    s = 0j
    for c, (i, j) in enumerate(COMPONENTS):
        s += u[i].conjugate() * float(vals[c]) * u[j]
    return DENSITY * s


def eta_exact(t: CorrelationTable, u, z: ZLambda) -> QLambda:
    """Exact eta for weights in Q(lam) (real weights only)."""
    vals = t.get(z)
    u = [QLambda._coerce(x) for x in u]
    s = _ZERO
    for c, (i, j) in enumerate(COMPONENTS):
        s = s + u[i] * vals[c] * u[j]
    return pf_data().density_exact * s


@dataclass
class AutocorrelationCoefficients:
    u: tuple
    values: dict = field(default_factory=dict)
    density: float = DENSITY


def autocorrelation_coefficients(t: CorrelationTable, u) -> AutocorrelationCoefficients:
    return AutocorrelationCoefficients(tuple(u), {z: eta(t, u, z) for z in t.support})
