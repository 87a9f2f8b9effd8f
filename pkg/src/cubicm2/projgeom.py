"""Projective primitives: points, lines, quadrics, projectivities.

Points and covectors are plain sequences of scalars; the classes below
only appear where genuine state helps (a line's Plucker vector, a
conic's parametrisation, a projectivity's matrix).  Everything is
duck-typed over the two scalar regimes; comparisons use exact minors
when possible and chordal distance otherwise.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .linsolve import (
    invert_exact,
    kernel_basis_exact,
    mat_mul,
    mat_vec,
    nullspace_float,
    primitive_vector,
    rank_exact,
    rank_float,
    rank_report_float,
    solve_exact,
    transpose,
)
from .scalars import all_exact, is_exact_scalar, to_complex


class _Infinity:
    """Sentinel for an exactly infinite cross-ratio."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"


INF = _Infinity()


def normalize_point(v: Sequence):
    """Canonical representative: primitive integers, or sup-norm 1 with
    the largest entry made real positive."""
    if all_exact(v):
        return tuple(primitive_vector(v))
    zs = [to_complex(x) for x in v]
    m = max(abs(z) for z in zs)
    if m == 0:
        raise ValueError("zero vector is not a projective point")
    k = max(range(len(zs)), key=lambda i: abs(zs[i]))
    return tuple(z / zs[k] for z in zs)


def proj_distance(a: Sequence, b: Sequence) -> float:
    """Chordal distance between the complex lines spanned by a and b.

    Computed as the normalised wedge norm (the sine of the principal
    angle); the 1 - cos^2 form would floor at sqrt(eps) for nearly
    equal points.
    """
    za = [to_complex(x) for x in a]
    zb = [to_complex(x) for x in b]
    na = math.fsum(abs(z) ** 2 for z in za)
    nb = math.fsum(abs(z) ** 2 for z in zb)
    if na == 0 or nb == 0:
        raise ValueError("zero vector is not a projective point")
    wedge = math.fsum(
        abs(za[i] * zb[j] - za[j] * zb[i]) ** 2
        for i in range(len(za))
        for j in range(i + 1, len(za))
    )
    return math.sqrt(wedge / (na * nb))


def proj_same(a: Sequence, b: Sequence, tol: float = 1e-9) -> bool:
    """Projective equality: exact 2x2 minors when both sides are exact."""
    if all_exact(a) and all_exact(b):
        n = len(a)
        if n != len(b):
            return False
        return all(
            a[i] * b[j] - a[j] * b[i] == 0
            for i in range(n)
            for j in range(i + 1, n)
        )
    return proj_distance(a, b) <= tol


# ---------------------------------------------------------------------------
# lines


class ProjLine:
    """Line in P^n spanned by two points, with Plucker coordinates."""

    __slots__ = ("a", "b", "plucker")

    def __init__(self, a: Sequence, b: Sequence):
        if len(a) != len(b):
            raise ValueError("spanning points live in different spaces")
        self.a = tuple(a)
        self.b = tuple(b)
        n = len(a)
        pl = [
            a[i] * b[j] - a[j] * b[i]
            for i in range(n)
            for j in range(i + 1, n)
        ]
        if all(x == 0 for x in pl):
            raise ValueError("spanning points coincide")
        self.plucker = normalize_point(pl)

    @property
    def dim_ambient(self) -> int:
        return len(self.a) - 1

    def point_at(self, alpha, beta) -> tuple:
        return tuple(alpha * x + beta * y for x, y in zip(self.a, self.b))

    def param_of(self, x: Sequence):
        """Homogeneous (alpha, beta) with x ~ alpha*a + beta*b."""
        rows = [[self.a[i], self.b[i]] for i in range(len(x))]
        if all_exact(self.a) and all_exact(self.b) and all_exact(x):
            sol, _ = solve_exact(rows, list(x))
            if sol is None:
                raise ValueError("point is not on the line")
            return tuple(sol)
        import numpy as np

        m = np.array([[to_complex(v) for v in row] for row in rows], dtype=complex)
        rhs = np.array([to_complex(v) for v in x], dtype=complex)
        sol, *_ = np.linalg.lstsq(m, rhs, rcond=None)
        resid = m @ sol - rhs
        scale = max(1.0, float(max(abs(z) for z in rhs)))
        if max(abs(z) for z in resid) > 1e-7 * scale:
            raise ValueError("point is not on the line")
        return (complex(sol[0]), complex(sol[1]))

    def contains(self, x: Sequence, tol: float = 1e-9) -> bool:
        rows = [list(self.a), list(self.b), list(x)]
        if all_exact(self.a) and all_exact(self.b) and all_exact(x):
            return rank_exact(rows) <= 2
        return rank_float(rows, tol) <= 2

    def meets(self, other: "ProjLine", tol: float = 1e-9) -> bool:
        rows = [list(self.a), list(self.b), list(other.a), list(other.b)]
        if all(all_exact(r) for r in rows):
            return rank_exact(rows) <= 3
        return rank_float(rows, tol) <= 3

    def __repr__(self):
        return f"ProjLine({self.a} , {self.b})"


def line_intersection(l1: ProjLine, l2: ProjLine, tol: float = 1e-9):
    """The common point of two distinct coplanar lines."""
    if lines_equal(l1, l2, tol):
        raise ValueError("lines coincide; no single intersection point")
    rows = [list(l1.a), list(l1.b), list(l2.a), list(l2.b)]
    exact = all(all_exact(r) for r in rows)
    n = len(l1.a)
    # kernel vector (alpha, beta, gamma, delta): alpha*a1 + beta*b1 = -(gamma*a2 + delta*b2)
    stacked = [[l1.a[i], l1.b[i], l2.a[i], l2.b[i]] for i in range(n)]
    if exact:
        ker = kernel_basis_exact(stacked, 4)
    else:
        ker = nullspace_float([[to_complex(c) for c in row] for row in stacked], tol)
    if len(ker) != 1:
        raise ValueError("lines are skew or coincide; no single intersection point")
    alpha, beta = ker[0][0], ker[0][1]
    pt = tuple(alpha * l1.a[i] + beta * l1.b[i] for i in range(n))
    if all(v == 0 for v in pt) if exact else max(abs(to_complex(v)) for v in pt) == 0:
        pt = tuple(-(ker[0][2] * l2.a[i] + ker[0][3] * l2.b[i]) for i in range(n))
    return normalize_point(pt)


def plucker_distance(l1: ProjLine, l2: ProjLine) -> float:
    if all_exact(l1.plucker) and all_exact(l2.plucker):
        return 0.0 if l1.plucker == l2.plucker else proj_distance(l1.plucker, l2.plucker)
    return proj_distance(l1.plucker, l2.plucker)


def lines_equal(l1: ProjLine, l2: ProjLine, tol: float = 1e-9) -> bool:
    return proj_same(l1.plucker, l2.plucker, tol)


def match_lines(lines_a: Sequence[ProjLine], lines_b: Sequence[ProjLine], tol: float = 1e-8):
    """Bijection sigma with lines_a[i] ~ lines_b[sigma[i]], by brute force.

    Minimises the worst pairwise Plucker distance over all bijections
    (6! = 720 at the sizes used here) and insists the winner beats tol.
    Returns (sigma, worst_distance).
    """
    n = len(lines_a)
    if len(lines_b) != n:
        raise ValueError("cannot match line sets of different sizes")
    d = [[plucker_distance(a, b) for b in lines_b] for a in lines_a]
    best = None
    best_worst = None
    for perm in itertools.permutations(range(n)):
        worst = max(d[i][perm[i]] for i in range(n))
        if best_worst is None or worst < best_worst:
            best, best_worst = perm, worst
    if best_worst > tol:
        raise ValueError(
            f"line sets do not match: best worst-case distance {best_worst:.3e} > {tol:.1e}"
        )
    return list(best), best_worst


# ---------------------------------------------------------------------------
# linear subspaces


def span_covectors(points: Sequence[Sequence]) -> list:
    """Covectors cutting out the projective span of the given points."""
    rows = [list(p) for p in points]
    if all(all_exact(r) for r in rows):
        return kernel_basis_exact(rows)
    return nullspace_float(rows)


def span_rank(points: Sequence[Sequence]) -> int:
    rows = [list(p) for p in points]
    if all(all_exact(r) for r in rows):
        return rank_exact(rows)
    return rank_float(rows)


def in_span(x: Sequence, points: Sequence[Sequence], tol: float = 1e-9) -> bool:
    base = span_rank(points)
    rows = [list(p) for p in points] + [list(x)]
    if all(all_exact(r) for r in rows):
        return rank_exact(rows) == base
    return rank_float(rows, tol) == base


def hyperplane_contains(cov: Sequence, x: Sequence, tol: float = 1e-9) -> bool:
    val = sum(c * v for c, v in zip(cov, x))
    if all_exact(cov) and all_exact(x):
        return val == 0
    scale = max(abs(to_complex(c)) for c in cov) * max(abs(to_complex(v)) for v in x)
    return abs(to_complex(val)) <= tol * max(scale, 1e-300)


# ---------------------------------------------------------------------------
# quadrics


class QuadricForm:
    """Quadratic form via its symmetric Gram matrix."""

    __slots__ = ("gram",)

    def __init__(self, gram: Sequence[Sequence]):
        n = len(gram)
        for row in gram:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        self.gram = [list(row) for row in gram]

    @property
    def nvars(self) -> int:
        return len(self.gram)

    def evaluate(self, x: Sequence):
        gx = mat_vec(self.gram, list(x))
        return sum(a * b for a, b in zip(x, gx))

    def bilinear(self, x: Sequence, y: Sequence):
        gy = mat_vec(self.gram, list(y))
        return sum(a * b for a, b in zip(x, gy))

    def polar_covector(self, x: Sequence) -> list:
        return mat_vec(self.gram, list(x))

    def is_exact(self) -> bool:
        return all(all_exact(row) for row in self.gram)

    def rank(self, tol: float = 1e-8) -> int:
        if self.is_exact():
            return rank_exact(self.gram)
        return rank_float(self.gram, tol)

    def rank_report(self, tol: float = 1e-8):
        return rank_report_float(self.gram, tol)

    def restrict(self, basis: Sequence[Sequence]) -> "QuadricForm":
        """Form in coordinates y for points w = sum y_i * basis[i]."""
        b = [list(v) for v in basis]
        return QuadricForm(mat_mul(mat_mul(b, self.gram), transpose(b)))

    def kernel(self) -> list:
        if self.is_exact():
            return kernel_basis_exact(self.gram)
        return nullspace_float(self.gram)

    def contains(self, x: Sequence, tol: float = 1e-10) -> bool:
        val = self.evaluate(x)
        if all_exact(x) and self.is_exact():
            return val == 0
        scale = max(
            (abs(to_complex(c)) for row in self.gram for c in row), default=0.0
        ) * max(abs(to_complex(v)) for v in x) ** 2
        return abs(to_complex(val)) <= tol * max(scale, 1e-300)


def tangent_covector(q: QuadricForm, x: Sequence) -> tuple:
    if not q.contains(x):
        raise ValueError("tangent covector requested at a point off the quadric")
    return normalize_point(q.polar_covector(x))


def tangent_hyperplane(q: QuadricForm, x: Sequence) -> tuple:
    """Covector of the tangent hyperplane of {q = 0} at x.

    Raises on vertex input (polar covector identically zero), which is
    the only way gram * x can vanish on a point of the quadric.
    """
    if not q.contains(x):
        raise ValueError("tangent hyperplane requested at a point off the quadric")
    cov = q.polar_covector(x)
    if all_exact(cov):
        if all(c == 0 for c in cov):
            raise ValueError("point is a vertex of the quadric; no tangent hyperplane")
    else:
        scale = max(abs(to_complex(c)) for row in q.gram for c in row) * max(
            abs(to_complex(v)) for v in x
        )
        if max(abs(to_complex(c)) for c in cov) <= 1e-12 * max(scale, 1e-300):
            raise ValueError("point is a vertex of the quadric; no tangent hyperplane")
    return normalize_point(cov)


def _exact_sqrt(value: Fraction):
    """Square root of a nonnegative rational, or None if irrational."""
    f = Fraction(value)
    if f < 0:
        return None
    m = f.numerator * f.denominator
    r = math.isqrt(m)
    if r * r != m:
        return None
    return Fraction(r, f.denominator)


def polar_points_on_quadric(q: QuadricForm, plane_covectors: Sequence[Sequence], tol: float = 1e-9):
    """The two quadric points whose tangent hyperplanes contain a codim-2 plane.

    The plane is given as two independent covectors; its polar line is
    spanned by gram^-1 applied to them, and cutting that line with the
    quadric is one binary quadratic.  Returns a pair of points; a
    coincident pair (returned as the identical tuple twice) signals a
    tangency, i.e. a multiplicity-2 solution.
    """
    c1, c2 = plane_covectors
    exact = q.is_exact() and all_exact(c1) and all_exact(c2)
    if exact:
        ginv = invert_exact(q.gram)
        p1 = mat_vec(ginv, [Fraction(c) for c in c1])
        p2 = mat_vec(ginv, [Fraction(c) for c in c2])
    else:
        import numpy as np

        g = np.array([[to_complex(v) for v in row] for row in q.gram], dtype=complex)
        ginv = np.linalg.inv(g)
        p1 = (ginv @ np.array([to_complex(v) for v in c1], dtype=complex)).tolist()
        p2 = (ginv @ np.array([to_complex(v) for v in c2], dtype=complex)).tolist()
    A = q.evaluate(p1)
    B = q.bilinear(p1, p2)
    C = q.evaluate(p2)
    # restriction to the polar line: A a^2 + 2B ab + C b^2
    if A == 0 and B == 0 and C == 0:
        raise ValueError("polar line lies on the quadric; plane is not in general position")
    if exact:
        disc = B * B - A * C
        root = _exact_sqrt(disc)
        if root is not None:
            if A != 0:
                params = [(-B + root, A), (-B - root, A)]
            elif C != 0:
                params = [(C, -B + root), (C, -B - root)]
            else:
                params = [(1, 0), (-C, 2 * B)]
        else:
            s = complex(math.sqrt(-float(disc)) * 1j) if disc < 0 else complex(math.sqrt(float(disc)))
            params = [(-float(B) + s, float(A)), (-float(B) - s, float(A))]
    else:
        import cmath

        Ac, Bc, Cc = to_complex(A), to_complex(B), to_complex(C)
        s = cmath.sqrt(Bc * Bc - Ac * Cc)
        if abs(Ac) >= abs(Cc):
            params = [(-Bc + s, Ac), (-Bc - s, Ac)]
        else:
            params = [(Cc, -Bc + s), (Cc, -Bc - s)]
    pts = []
    for alpha, beta in params:
        pt = [alpha * u + beta * v for u, v in zip(p1, p2)]
        pts.append(normalize_point(pt))
    if proj_same(pts[0], pts[1], tol):
        return pts[0], pts[0]
    return pts[0], pts[1]


def second_intersection_on_line(q: QuadricForm, a: Sequence, b: Sequence, known: tuple):
    """Second point of {line ab} & {q = 0} given one known parameter pair.

    The restriction q(alpha*a + beta*b) = A a^2 + B ab + C b^2 is solved
    by Vieta against the known root, so an exact input yields an exact
    second root without any radical.
    """
    A = q.evaluate(a)
    C = q.evaluate(b)
    B = 2 * q.bilinear(a, b)
    a1, b1 = known
    if A == 0 and C == 0:
        if B == 0:
            raise ValueError("line lies on the quadric")
        other = (0, 1) if proj_same(known, (1, 0)) else (1, 0)
        return other
    if A == 0:
        return (C, -B) if proj_same(known, (1, 0)) else (1, 0)
    if C == 0:
        return (-B, A) if proj_same(known, (0, 1)) else (0, 1)
    return (C * b1, A * a1)


# ---------------------------------------------------------------------------
# cross-ratios


def cross_ratio(a, b, c, d):
    """Cross-ratio of four points of P^1 given as homogeneous pairs.

    Normalised so that (0, 1, oo, x) evaluates to x.  Returns the INF
    sentinel when the value is exactly infinite.
    """

    def br(x, y):
        return x[0] * y[1] - x[1] * y[0]

    num = br(d, a) * br(b, c)
    den = br(d, c) * br(b, a)
    if all_exact(a) and all_exact(b) and all_exact(c) and all_exact(d):
        if den == 0:
            return INF
        return Fraction(num) / Fraction(den)
    num = to_complex(num)
    den = to_complex(den)
    if den == 0:
        return INF
    return num / den


def collinear_params(points: Sequence[Sequence]) -> list:
    """P^1 coordinates for collinear points, by projecting to two slots.

    Picks a coordinate pair on which the first two independent points
    already have an invertible 2x2 minor; the same pair then serves as
    homogeneous coordinates for every point on the line.
    """
    pts = [list(p) for p in points]
    base = pts[0]
    other = None
    for p in pts[1:]:
        if not proj_same(base, p):
            other = p
            break
    if other is None:
        raise ValueError("all points coincide; no line is determined")
    n = len(base)
    best = None
    best_size = None
    for i in range(n):
        for j in range(i + 1, n):
            minor = base[i] * other[j] - base[j] * other[i]
            size = abs(to_complex(minor))
            if size > 0 and (best_size is None or size > best_size):
                best, best_size = (i, j), size
    if best is None:
        raise ValueError("points do not span a line")
    i, j = best
    return [(p[i], p[j]) for p in pts]


def cross_ratio_collinear(points: Sequence[Sequence]):
    if len(points) != 4:
        raise ValueError("cross-ratio needs exactly four points")
    pairs = collinear_params(points)
    return cross_ratio(*pairs)


# ---------------------------------------------------------------------------
# conic parametrisation


class ConicParam:
    """Rational parametrisation of a rank-3 conic through a seed point.

    point_at maps P^1 into the conic; the seed sits at parameter (1, 0).
    """

    __slots__ = ("quadric", "seed", "u", "v")

    def __init__(self, quadric: QuadricForm, seed: Sequence, u: Sequence, v: Sequence):
        self.quadric = quadric
        self.seed = tuple(seed)
        self.u = tuple(u)
        self.v = tuple(v)

    def point_at(self, alpha, beta) -> tuple:
        w = [alpha * x + beta * y for x, y in zip(self.u, self.v)]
        qw = self.quadric.evaluate(w)
        bw = self.quadric.bilinear(self.seed, w)
        pt = [qw * s - 2 * bw * wi for s, wi in zip(self.seed, w)]
        if all(x == 0 for x in pt):
            raise ValueError("parameter hits the seed's tangent degenerately")
        return normalize_point(pt)

    def param_of(self, x: Sequence) -> tuple:
        """Inverse of point_at, up to scale."""
        cols = [list(self.seed), list(self.u), list(self.v)]
        rows = [[cols[j][i] for j in range(3)] for i in range(len(x))]
        if all_exact(x) and all(all_exact(c) for c in cols):
            sol, _ = solve_exact(rows, list(x))
            if sol is None:
                raise ValueError("point is not in the conic's plane")
            _, alpha, beta = sol
            if alpha == 0 and beta == 0:
                return (1, 0)
            return (alpha, beta)
        import numpy as np

        m = np.array([[to_complex(v) for v in row] for row in rows], dtype=complex)
        rhs = np.array([to_complex(v) for v in x], dtype=complex)
        sol, *_ = np.linalg.lstsq(m, rhs, rcond=None)
        _, alpha, beta = (complex(z) for z in sol)
        scale = max(abs(z) for z in sol)
        if abs(alpha) <= 1e-12 * scale and abs(beta) <= 1e-12 * scale:
            return (1, 0)
        return (alpha, beta)


def conic_parametrize(quadric: QuadricForm, seed: Sequence) -> ConicParam:
    """Parametrise a rank-3 ternary conic by lines through a point on it.

    The direction frame (u, v) is chosen with u conjugate to the seed,
    which pins the seed itself at parameter (1, 0); u cannot lie on the
    conic (that would force a line inside a rank-3 conic), so the frame
    is always usable.
    """
    if quadric.nvars != 3:
        raise ValueError("conic parametrisation works in P^2 only")
    if quadric.rank() != 3:
        raise ValueError("conic must have rank 3")
    if not quadric.contains(seed):
        raise ValueError("seed point is not on the conic")
    polar = quadric.polar_covector(seed)
    if all_exact(polar) and all_exact(seed):
        perp = kernel_basis_exact([polar], 3)
    else:
        perp = nullspace_float([[to_complex(c) for c in polar]])
    u = None
    for cand in perp:
        if not proj_same(cand, seed):
            u = list(cand)
            break
    if u is None:
        raise ValueError("could not complete the seed to a tangent frame")
    v = None
    for i in range(3):
        e = [0, 0, 0]
        e[i] = 1
        rows = [list(seed), u, e]
        r = rank_exact(rows) if all(all_exact(r_) for r_ in rows) else rank_float(rows)
        if r == 3:
            v = e
            break
    if v is None:
        raise ValueError("degenerate frame")
    return ConicParam(quadric, seed, u, v)


# ---------------------------------------------------------------------------
# projectivities


class Projectivity:
    """Invertible linear map up to scale, acting on points as x -> Mx."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Sequence[Sequence]):
        self.matrix = [list(row) for row in matrix]

    @classmethod
    def identity(cls, n: int) -> "Projectivity":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_permutation(cls, perm: Sequence[int]) -> "Projectivity":
        n = len(perm)
        m = [[0] * n for _ in range(n)]
        for i, p in enumerate(perm):
            m[p][i] = 1
        return cls(m)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def is_exact(self) -> bool:
        return all(all_exact(row) for row in self.matrix)

    def apply_point(self, x: Sequence) -> tuple:
        return tuple(mat_vec(self.matrix, list(x)))

    def inverse(self) -> "Projectivity":
        if self.is_exact():
            return Projectivity(invert_exact(self.matrix))
        import numpy as np

        m = np.array(
            [[to_complex(x) for x in row] for row in self.matrix], dtype=complex
        )
        return Projectivity(np.linalg.inv(m).tolist())

    def apply_covector(self, u: Sequence) -> tuple:
        minv = self.inverse().matrix
        return tuple(mat_vec(transpose(minv), list(u)))

    def apply_line(self, line: ProjLine) -> ProjLine:
        return ProjLine(self.apply_point(line.a), self.apply_point(line.b))

    def push_quadric(self, q: QuadricForm) -> "QuadricForm":
        """Gram matrix of the image quadric {q(M^-1 x) = 0}."""
        minv = self.inverse().matrix
        return QuadricForm(mat_mul(transpose(minv), mat_mul(q.gram, minv)))

    def compose(self, other: "Projectivity") -> "Projectivity":
        """self after other: x -> self(other(x))."""
        return Projectivity(mat_mul(self.matrix, other.matrix))

    def canonical_key(self) -> tuple:
        flat = [x for row in self.matrix for x in row]
        return tuple(normalize_point(flat))

    def __repr__(self):
        return f"Projectivity({self.matrix})"
