"""Univariate root extraction with multiplicity bookkeeping.

Exact inputs are split into square-free factors first (Yun), so reported
multiplicities are algebraic facts rather than cluster guesses; each
square-free factor then goes to an Aberth-Ehrlich solve plus Newton
polish.  Float inputs skip the factor step and recover multiplicities by
clustering.  Residuals are always checked against a coefficient-scaled
bound before anything is returned.
"""

from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

import mpmath

from .mpoly import UniPoly
from .scalars import PRECISION, to_complex


class RootFindingError(ArithmeticError):
    pass


def _coeffs_complex(poly: UniPoly) -> list:
    return [to_complex(c) for c in poly.coeffs]


def _cauchy_radius(cs: list) -> float:
    lead = abs(cs[-1])
    if lead == 0:
        raise RootFindingError("leading coefficient vanished")
    return 1.0 + max(abs(c) for c in cs[:-1]) / lead if len(cs) > 1 else 1.0


def _eval_with_derivative(cs: list, x):
    p = 0j
    dp = 0j
    for c in reversed(cs):
        dp = dp * x + p
        p = p * x + c
    return p, dp


def aberth(poly: UniPoly, maxiter: int = 200, rng: random.Random | None = None) -> list:
    """All complex roots of `poly` simultaneously (Aberth-Ehrlich)."""
    cs = _coeffs_complex(poly)
    n = len(cs) - 1
    if n <= 0:
        return []
    if n == 1:
        return [-cs[0] / cs[1]]
    rng = rng or random.Random(0x5EED)
    r = _cauchy_radius(cs)
    zs = [
        r * cmath.exp(2j * math.pi * (k + 0.35) / n + 0.1j * rng.random())
        for k in range(n)
    ]
    eps = 2.0 ** -50
    for _ in range(maxiter):
        moved = 0.0
        new = list(zs)
        for i, z in enumerate(zs):
            p, dp = _eval_with_derivative(cs, z)
            if p == 0:
                continue
            if dp == 0:
                new[i] = z * (1 + 1e-6) + 1e-6
                moved = float("inf")
                continue
            ratio = p / dp
            s = sum(1 / (z - zs[j]) for j in range(n) if j != i)
            denom = 1 - ratio * s
            if denom == 0:
                new[i] = z + ratio
            else:
                new[i] = z - ratio / denom
            moved = max(moved, abs(new[i] - z))
        zs = new
        scale = max(1.0, max(abs(z) for z in zs))
        if moved <= eps * scale:
            break
    return zs


def polish_newton(poly: UniPoly, x0, maxiter: int = 60):
    """Newton refinement of a single approximate root."""
    cs = _coeffs_complex(poly)
    x = complex(x0)
    for _ in range(maxiter):
        p, dp = _eval_with_derivative(cs, x)
        if dp == 0:
            break
        step = p / dp
        x = x - step
        if abs(step) <= 2.0 ** -50 * max(1.0, abs(x)):
            break
    return x


def residual_scale(poly: UniPoly, x) -> float:
    cs = _coeffs_complex(poly)
    m = max(abs(c) for c in cs)
    return m * max(1.0, abs(x)) ** max(1, poly.degree())


def check_residual(poly: UniPoly, x, residual_tol: float) -> float:
    val = abs(complex(poly.evaluate(to_complex(x) if not isinstance(x, complex) else x)))
    bound = residual_tol * residual_scale(poly, x)
    if val > bound:
        raise RootFindingError(
            f"root residual {val:.3e} exceeds bound {bound:.3e}"
        )
    return val


def cluster(points: list, radius: float) -> list:
    """Greedy clustering; returns [(centroid, count), ...]."""
    out = []
    for p in points:
        for k, (c, cnt) in enumerate(out):
            if abs(p - c) <= radius:
                out[k] = ((c * cnt + p) / (cnt + 1), cnt + 1)
                break
        else:
            out.append((p, 1))
    return out


def _mpmath_roots(poly: UniPoly) -> list:
    cs = [mpmath.mpmathify(to_complex(c)) for c in reversed(poly.coeffs)]
    try:
        roots = mpmath.polyroots(cs, maxsteps=200, extraprec=60)
    except mpmath.libmp.NoConvergence as exc:  # pragma: no cover
        raise RootFindingError(str(exc)) from exc
    return [complex(r) for r in roots]


def _solve_squarefree(poly: UniPoly, residual_tol: float) -> list:
    """Roots of a square-free polynomial, polished and residual-checked."""
    if PRECISION.extended:
        roots = _mpmath_roots(poly)
    else:
        roots = [polish_newton(poly, z) for z in aberth(poly)]
    for r in roots:
        check_residual(poly, r, residual_tol)
    return roots


def univariate_roots(
    poly: UniPoly,
    cluster_radius: float = 1e-7,
    residual_tol: float = 1e-10,
) -> list:
    """All roots with multiplicities as [(complex root, mult), ...].

    Exact coefficients get a square-free decomposition first, so a
    repeated root is reported with its true multiplicity.  Float
    coefficients fall back to clustering at `cluster_radius`.
    """
    if poly.is_zero():
        raise RootFindingError("zero polynomial has every number as a root")
    if poly.degree() == 0:
        return []
    if poly.is_exact():
        out = []
        for factor, mult in poly.squarefree_decomposition():
            for r in _solve_squarefree(factor, residual_tol):
                out.append((r, mult))
        return out
    roots = [polish_newton(poly, z) for z in aberth(poly)]
    for r in roots:
        check_residual(poly, r, residual_tol)
    return cluster(roots, cluster_radius)


def binary_roots(
    coeffs: list,
    hom_degree: int,
    cluster_radius: float = 1e-7,
    residual_tol: float = 1e-10,
) -> list:
    """Roots of a binary form sum c_k s^k t^(d-k) as points [s, t] of P^1.

    `coeffs` is ascending in the first variable and must have length
    hom_degree + 1; vanishing top coefficients contribute the point at
    infinity [1, 0] with the corresponding multiplicity.
    """
    if len(coeffs) != hom_degree + 1:
        raise ValueError("coefficient list does not match declared degree")
    cs = list(coeffs)
    if all(c == 0 for c in cs):
        raise RootFindingError("identically zero binary form")
    inf_mult = 0
    while cs and cs[-1] == 0:
        cs.pop()
        inf_mult += 1
    out = []
    if inf_mult:
        out.append(([1, 0], inf_mult))
    dehom = UniPoly(cs)
    if dehom.degree() >= 1:
        for r, m in univariate_roots(dehom, cluster_radius, residual_tol):
            out.append(([r, 1], m))
    return out


def newton2(fs, jac, x0, y0, maxiter: int = 50, tol: float = 1e-13):
    """Damped Newton for a 2x2 system given callables fs(x,y)->(f,g)."""
    x, y = complex(x0), complex(y0)
    for _ in range(maxiter):
        f, g = fs(x, y)
        (a, b), (c, d) = jac(x, y)
        det = a * d - b * c
        if det == 0:
            break
        dx = (f * d - b * g) / det
        dy = (a * g - f * c) / det
        x, y = x - dx, y - dy
        if max(abs(dx), abs(dy)) <= tol * max(1.0, abs(x), abs(y)):
            break
    return x, y
