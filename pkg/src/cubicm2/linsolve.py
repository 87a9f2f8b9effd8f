"""Linear algebra in both scalar regimes.

Exact routines run fraction-free-ish Gauss-Jordan over `Fraction` and
return primitive integer vectors wherever a scale-free answer makes
sense (kernels, fitted forms).  Float routines delegate to numpy's SVD
and always report the spectral gap they relied on, so callers can flag
ill-conditioned rank decisions instead of silently trusting them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .scalars import as_fraction, to_complex


class DimensionMismatchError(ValueError):
    pass


def _as_fraction_matrix(rows: Sequence[Sequence]) -> list:
    return [[as_fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]):
    """Reduced row echelon form over the rationals.

    Returns (matrix, pivot column list).
    """
    m = _as_fraction_matrix(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank_exact(rows: Sequence[Sequence]) -> int:
    _, pivots = rref(rows)
    return len(pivots)


def primitive_vector(vec: Sequence) -> list:
    """Clear denominators, divide by content, make first nonzero entry positive."""
    fr = [as_fraction(x) for x in vec]
    den = 1
    for f in fr:
        den = den * f.denominator // math.gcd(den, f.denominator)
    ints = [int(f * den) for f in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        return [0] * len(ints)
    ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-x for x in ints]
            break
    return ints


def kernel_basis_exact(rows: Sequence[Sequence], ncols: int | None = None) -> list:
    """Primitive integer basis of the right kernel."""
    rows = list(rows)
    if ncols is None:
        if not rows:
            raise DimensionMismatchError("empty system needs explicit ncols")
        ncols = len(rows[0])
    if not rows:
        basis = []
        for i in range(ncols):
            v = [0] * ncols
            v[i] = 1
            basis.append(v)
        return basis
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(primitive_vector(v))
    return basis


def solve_exact(rows: Sequence[Sequence], rhs: Sequence):
    """One particular solution of A x = b over the rationals, or None.

    Returns (particular, kernel basis); kernel vectors are primitive.
    """
    rows = list(rows)
    if len(rows) != len(rhs):
        raise DimensionMismatchError("rhs length != row count")
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None, []
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x, kernel_basis_exact(rows, ncols)


def invert_exact(rows: Sequence[Sequence]) -> list:
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise DimensionMismatchError("inverse of a non-square matrix")
    aug = [
        [as_fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(rows)
    ]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red[:n]]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    if len(a[0]) != len(b):
        raise DimensionMismatchError("inner dimensions differ")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    if len(a[0]) != len(v):
        raise DimensionMismatchError("matrix/vector size mismatch")
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*a)]


def det_exact(rows: Sequence[Sequence]) -> Fraction:
    """Bareiss-style elimination; exact determinant."""
    n = len(rows)
    m = _as_fraction_matrix(rows)
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


# ---------------------------------------------------------------------------
# float regime


@dataclass
class RankReport:
    rank: int
    singular_values: list
    gap: float
    ill_conditioned: bool


def _to_ndarray(rows: Sequence[Sequence]) -> np.ndarray:
    return np.array([[to_complex(x) for x in row] for row in rows], dtype=complex)


def rank_report_float(rows: Sequence[Sequence], tol: float = 1e-8) -> RankReport:
    """Numerical rank from the SVD with an explicit spectral-gap audit.

    The rank is the count of singular values above `tol * s_max`.  The
    decision is flagged ill-conditioned when some singular value sits
    within a factor of 10 of the threshold on either side.
    """
    a = _to_ndarray(rows)
    if a.size == 0:
        return RankReport(0, [], float("inf"), False)
    s = np.linalg.svd(a, compute_uv=False)
    smax = float(s[0]) if len(s) else 0.0
    if smax == 0.0:
        return RankReport(0, [0.0] * len(s), float("inf"), False)
    cut = tol * smax
    rank = int(np.sum(s > cut))
    if 0 < rank < len(s) and float(s[rank]) > 0.0:
        gap = float(s[rank - 1] / s[rank])
    else:
        gap = float("inf")
    ill = any(cut / 10 < float(v) < cut * 10 for v in s)
    return RankReport(rank, [float(v) for v in s], gap, ill)


def rank_float(rows: Sequence[Sequence], tol: float = 1e-8) -> int:
    return rank_report_float(rows, tol).rank


def nullspace_float(rows: Sequence[Sequence], tol: float = 1e-8) -> list:
    """Orthonormal kernel basis (columns of V past the numerical rank).

    The null vectors are the conjugated trailing rows of V^H; for a
    complex matrix the unconjugated rows satisfy A conj(v) = 0 instead.
    """
    a = _to_ndarray(rows)
    if a.size == 0:
        raise DimensionMismatchError("empty matrix")
    _, s, vh = np.linalg.svd(a)
    smax = float(s[0]) if len(s) else 0.0
    rank = int(np.sum(s > tol * smax)) if smax > 0 else 0
    return [list(np.conj(vh[i, :])) for i in range(rank, vh.shape[0])]


def solve_linear(rows: Sequence[Sequence], rhs: Sequence):
    """Spec-facing wrapper: exact when all inputs are exact, else lstsq."""
    flat = [x for row in rows for x in row] + list(rhs)
    from .scalars import all_exact

    if all_exact(flat):
        x, _ = solve_exact(rows, rhs)
        if x is None:
            raise ValueError("inconsistent linear system")
        return x
    a = _to_ndarray(rows)
    b = np.array([to_complex(x) for x in rhs], dtype=complex)
    sol, residual, *_ = np.linalg.lstsq(a, b, rcond=None)
    return list(sol)
