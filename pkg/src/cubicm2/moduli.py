"""Binary sextics and their moduli: invariants, normal forms, boundary data.

Six points on a conic determine a genus-2 double cover; its moduli point
is carried by the classical invariants of weights 2, 4, 6, 10 computed
from squared differences of homogeneous root pairs, so points at
infinity need no special cases.  Ordered six-tuples are normalised by
the Moebius map sending the first three to 0, 1, infinity; degenerate
(two-component) configurations carry per-component node coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .projgeom import (
    INF,
    ProjLine,
    QuadricForm,
    conic_parametrize,
    cross_ratio,
    line_intersection,
    proj_same,
)
from .scalars import all_exact, is_exact_scalar, to_complex

WEIGHTS = (2, 4, 6, 10)


def _as_pair(p):
    """Accept an affine value, INF, or a homogeneous pair."""
    if p is INF:
        return (1, 0)
    if isinstance(p, (tuple, list)):
        if len(p) != 2:
            raise ValueError("homogeneous coordinates on the line have length 2")
        return tuple(p)
    return (p, 1)


@dataclass(frozen=True)
class BinarySextic:
    """Six ordered points of the projective line, stored homogeneously."""

    points: tuple

    def __init__(self, points):
        if len(points) != 6:
            raise ValueError("a binary sextic needs six points")
        object.__setattr__(self, "points", tuple(_as_pair(p) for p in points))

    def is_exact(self) -> bool:
        return all(all_exact(p) for p in self.points)

    def diff(self, i: int, j: int):
        (a, b), (c, d) = self.points[i], self.points[j]
        return a * d - c * b

    def is_distinct(self, tol: float = 1e-9) -> bool:
        for i, j in itertools.combinations(range(6), 2):
            d = self.diff(i, j)
            if is_exact_scalar(d) and all_exact(self.points[i]) and all_exact(self.points[j]):
                if d == 0:
                    return False
            else:
                ni = max(abs(to_complex(v)) for v in self.points[i])
                nj = max(abs(to_complex(v)) for v in self.points[j])
                if abs(to_complex(d)) <= tol * max(ni * nj, 1e-300):
                    return False
        return True

    def relabel(self, perm) -> "BinarySextic":
        """New sextic whose slot perm[i] holds the old point i."""
        out = [None] * 6
        for i, p in enumerate(self.points):
            out[perm[i]] = p
        return BinarySextic(out)

    def mobius(self, m) -> "BinarySextic":
        """Apply a 2x2 matrix to every point."""
        (a, b), (c, d) = m
        return BinarySextic(
            [(a * x + b * y, c * x + d * y) for (x, y) in self.points]
        )


@dataclass(frozen=True)
class IgusaInvariants:
    I2: object
    I4: object
    I6: object
    I10: object

    def as_tuple(self):
        return (self.I2, self.I4, self.I6, self.I10)

    def is_exact(self) -> bool:
        return all_exact(self.as_tuple())

    def as_json(self) -> dict:
        return {
            "I2": scalar_to_json(self.I2),
            "I4": scalar_to_json(self.I4),
            "I6": scalar_to_json(self.I6),
            "I10": scalar_to_json(self.I10),
        }


def scalar_to_json(v):
    """Fraction string for exact values, 17 significant digits for floats."""
    if isinstance(v, int):
        return f"{v}/1"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    z = to_complex(v)
    if z.imag == 0.0:
        return f"{z.real:.17g}"
    return {"re": f"{z.real:.17g}", "im": f"{z.imag:.17g}"}


def _pair_splits():
    """The 15 partitions of {0..5} into three unordered pairs."""
    out = []

    def rec(rest, acc):
        if not rest:
            out.append(tuple(acc))
            return
        first = rest[0]
        for other in rest[1:]:
            rec([x for x in rest if x not in (first, other)], acc + [(first, other)])

    rec(list(range(6)), [])
    return out


_PAIR_SPLITS = _pair_splits()
_TRIPLE_SPLITS = [
    (t, tuple(sorted(set(range(6)) - set(t))))
    for t in itertools.combinations(range(6), 3)
    if 0 in t
]


def igusa_clebsch(s: BinarySextic) -> IgusaInvariants:
    """Classical invariants as symmetric sums of squared differences.

    I2 runs over the 15 pairings into three pairs, I4 over the 10
    splittings into two triangles, I6 over the 60 triangle pairs joined
    by a bijection, and I10 is the discriminant: the product of the
    squared differences over all 15 index pairs.
    """
    d = [[s.diff(i, j) for j in range(6)] for i in range(6)]

    def sq(i, j):
        return d[i][j] * d[i][j]

    i2 = 0
    for pairs in _PAIR_SPLITS:
        term = 1
        for (i, j) in pairs:
            term = term * sq(i, j)
        i2 = i2 + term

    def triangle(t):
        (i, j, k) = t
        return sq(i, j) * sq(j, k) * sq(k, i)

    i4 = 0
    for t, u in _TRIPLE_SPLITS:
        i4 = i4 + triangle(t) * triangle(u)

    i6 = 0
    for t, u in _TRIPLE_SPLITS:
        tt, uu = triangle(t), triangle(u)
        for sigma in itertools.permutations(u):
            cross = 1
            for i, j in zip(t, sigma):
                cross = cross * sq(i, j)
            i6 = i6 + tt * uu * cross

    i10 = 1
    for i, j in itertools.combinations(range(6), 2):
        i10 = i10 * sq(i, j)

    return IgusaInvariants(i2, i4, i6, i10)


def _invariant_sizes(inv: IgusaInvariants) -> float:
    return max(
        abs(to_complex(v)) ** (1.0 / w) for v, w in zip(inv.as_tuple(), WEIGHTS)
    )


def _is_zero_slot(v, w, size, tol):
    if is_exact_scalar(v):
        return v == 0
    return abs(to_complex(v)) <= tol * max(size, 1e-300) ** w


def m2_equal(a: IgusaInvariants, b: IgusaInvariants, tol: float = 1e-9) -> bool:
    """Equality in the weighted projective space of weights (2,4,6,10).

    Zero patterns must match; on the nonzero slots every cross ratio of
    weight zero (gcd-reduced cross powers) must agree.
    """
    av, bv = a.as_tuple(), b.as_tuple()
    sa, sb = _invariant_sizes(a), _invariant_sizes(b)
    if sa == 0 or sb == 0:
        return sa == sb
    za = [_is_zero_slot(v, w, sa, tol) for v, w in zip(av, WEIGHTS)]
    zb = [_is_zero_slot(v, w, sb, tol) for v, w in zip(bv, WEIGHTS)]
    if za != zb:
        return False
    # the cross relations have weight zero, so each tuple may be scaled
    # independently; bring inexact tuples to unit size to avoid overflow
    if not all_exact(av):
        av = tuple(to_complex(v) / sa**w for v, w in zip(av, WEIGHTS))
    if not all_exact(bv):
        bv = tuple(to_complex(v) / sb**w for v, w in zip(bv, WEIGHTS))
    live = [i for i in range(4) if not za[i]]
    for i, j in itertools.combinations(live, 2):
        g = math.gcd(WEIGHTS[i], WEIGHTS[j])
        p, q = WEIGHTS[j] // g, WEIGHTS[i] // g
        lhs = av[i] ** p * bv[j] ** q
        rhs = bv[i] ** p * av[j] ** q
        if is_exact_scalar(lhs) and is_exact_scalar(rhs):
            if lhs != rhs:
                return False
        else:
            zl, zr = to_complex(lhs), to_complex(rhs)
            if abs(zl - zr) > tol * max(abs(zl), abs(zr), 1e-300):
                return False
    return True


def m2_margin(a: IgusaInvariants, b: IgusaInvariants, tol: float = 1e-9) -> float:
    """Worst relative mismatch over the weight-zero cross relations.

    Returns 0.0 for exact agreement and math.inf when the zero patterns
    differ (the tuples are then in different strata, not merely far).
    """
    av, bv = a.as_tuple(), b.as_tuple()
    sa, sb = _invariant_sizes(a), _invariant_sizes(b)
    if sa == 0 or sb == 0:
        return 0.0 if sa == sb else math.inf
    za = [_is_zero_slot(v, w, sa, tol) for v, w in zip(av, WEIGHTS)]
    zb = [_is_zero_slot(v, w, sb, tol) for v, w in zip(bv, WEIGHTS)]
    if za != zb:
        return math.inf
    if not all_exact(av):
        av = tuple(to_complex(v) / sa**w for v, w in zip(av, WEIGHTS))
    if not all_exact(bv):
        bv = tuple(to_complex(v) / sb**w for v, w in zip(bv, WEIGHTS))
    live = [i for i in range(4) if not za[i]]
    worst = 0.0
    for i, j in itertools.combinations(live, 2):
        g = math.gcd(WEIGHTS[i], WEIGHTS[j])
        p, q = WEIGHTS[j] // g, WEIGHTS[i] // g
        lhs = av[i] ** p * bv[j] ** q
        rhs = bv[i] ** p * av[j] ** q
        if is_exact_scalar(lhs) and is_exact_scalar(rhs):
            if lhs != rhs:
                zl, zr = to_complex(lhs), to_complex(rhs)
                worst = max(worst, abs(zl - zr) / max(abs(zl), abs(zr), 1e-300))
        else:
            zl, zr = to_complex(lhs), to_complex(rhs)
            worst = max(worst, abs(zl - zr) / max(abs(zl), abs(zr), 1e-300))
    return worst


@dataclass(frozen=True)
class M06Point:
    """Cross-ratio coordinates: images of points 4, 5, 6 after sending
    points 1, 2, 3 to 0, 1, infinity."""

    lambdas: tuple  # three values, each a scalar or INF

    def is_interior(self, tol: float = 1e-9) -> bool:
        vals = []
        for lam in self.lambdas:
            if lam is INF:
                return False
            v = to_complex(lam)
            if abs(v) <= tol or abs(v - 1) <= tol:
                return False
            vals.append(v)
        for x, y in itertools.combinations(vals, 2):
            if abs(x - y) <= tol * max(1.0, abs(x), abs(y)):
                return False
        return True

    def as_json(self) -> dict:
        out = {}
        for name, lam in zip(("lambda4", "lambda5", "lambda6"), self.lambdas):
            out[name] = "inf" if lam is INF else scalar_to_json(lam)
        return out


def m06_equal(a: M06Point, b: M06Point, tol: float = 1e-10) -> bool:
    for x, y in zip(a.lambdas, b.lambdas):
        if (x is INF) != (y is INF):
            return False
        if x is INF:
            continue
        if is_exact_scalar(x) and is_exact_scalar(y):
            if x != y:
                return False
        else:
            zx, zy = to_complex(x), to_complex(y)
            if abs(zx - zy) > tol * max(1.0, abs(zx), abs(zy)):
                return False
    return True


def m06_coords(s: BinarySextic, tol: float = 1e-9) -> M06Point:
    """Moebius normalisation of an ordered distinct six-tuple."""
    if not s.is_distinct(tol):
        raise ValueError("coincident points have no interior normal form")
    p1, p2, p3 = s.points[0], s.points[1], s.points[2]
    lams = tuple(cross_ratio(p1, p2, p3, s.points[j]) for j in (3, 4, 5))
    return M06Point(lams)


def standard_sextic(m: M06Point) -> BinarySextic:
    """The normal-form representative (0, 1, oo, l4, l5, l6)."""
    pts = [(0, 1), (1, 1), (1, 0)]
    for lam in m.lambdas:
        pts.append((1, 0) if lam is INF else _as_pair(lam))
    return BinarySextic(tuple(pts))


# ---------------------------------------------------------------------------
# six points cut on a conic


@dataclass
class MarkedConic:
    """A plane conic with six ordered marked points in plane coordinates."""

    quadric: QuadricForm
    marks: tuple

    def __init__(self, quadric: QuadricForm, marks, tol: float = 1e-10):
        if len(quadric.gram) != 3:
            raise ValueError("conic lives in a plane: 3x3 Gram matrix expected")
        if len(marks) != 6:
            raise ValueError("six marked points are required")
        for m in marks:
            if not quadric.contains(m, tol):
                raise ValueError("marked point is off the conic")
        self.quadric = quadric
        self.marks = tuple(tuple(m) for m in marks)


def marked_conic_to_sextic(mc: MarkedConic, seed_index: int = 0) -> BinarySextic:
    """Parameters of the six marks; the seed mark goes to infinity.

    The conic must be smooth (rank 3); a rank-2 conic is two lines and
    belongs to boundary_invariants instead.
    """
    rank = mc.quadric.rank()
    if rank < 3:
        raise ValueError(
            "degenerate conic (rank < 3): use boundary_invariants on the two lines"
        )
    par = conic_parametrize(mc.quadric, seed=mc.marks[seed_index])
    params = []
    for i, m in enumerate(mc.marks):
        if i == seed_index:
            params.append((1, 0) if all_exact(m) else (1.0, 0.0))
        else:
            params.append(par.param_of(m))
    return BinarySextic(params)


# ---------------------------------------------------------------------------
# boundary points: two components glued at a node


@dataclass(frozen=True)
class BoundaryM06Point:
    """Stable two-component configuration with three marks per component.

    Each block lists the labels carried by one component in ascending
    order; the matching entry of node_params is the coordinate of the
    node in the frame of that component's three marks (cross ratio of
    the sorted marks with the node).
    """

    blocks: tuple       # two tuples of three labels each
    node_params: tuple  # node coordinate per block

    def as_json(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "node_params": [
                "inf" if v is INF else scalar_to_json(v) for v in self.node_params
            ],
        }


def boundary_equal(a: BoundaryM06Point, b: BoundaryM06Point, tol: float = 1e-10) -> bool:
    """Equality as labeled stable curves; components may be listed in
    either order."""

    def entries(pt):
        return {pt.blocks[0]: pt.node_params[0], pt.blocks[1]: pt.node_params[1]}

    ea, eb = entries(a), entries(b)
    if set(ea) != set(eb):
        return False
    for key in ea:
        x, y = ea[key], eb[key]
        if (x is INF) != (y is INF):
            return False
        if x is INF:
            continue
        if is_exact_scalar(x) and is_exact_scalar(y):
            if x != y:
                return False
        else:
            zx, zy = to_complex(x), to_complex(y)
            if abs(zx - zy) > tol * max(1.0, abs(zx), abs(zy)):
                return False
    return True


def boundary_invariants(
    line_a: ProjLine,
    line_b: ProjLine,
    marks_a,
    marks_b,
    tol: float = 1e-9,
) -> BoundaryM06Point:
    """Node coordinates of a two-line configuration with 3 + 3 marks.

    marks_a and marks_b are lists of (label, point) with the points on
    the respective lines; the node is the intersection of the lines.
    """
    node = line_intersection(line_a, line_b, tol)
    out_blocks = []
    out_params = []
    for line, marks in ((line_a, marks_a), (line_b, marks_b)):
        if len(marks) != 3:
            raise ValueError("each component carries exactly three marks")
        marks = sorted(marks, key=lambda lm: lm[0])
        pts = []
        for _, p in marks:
            if proj_same(p, node, tol):
                raise ValueError("marked point collides with the node")
            pts.append(line.param_of(p))
        for x, y in itertools.combinations(pts, 2):
            if proj_same(x, y, tol):
                raise ValueError("coincident marked points on one component")
        node_par = line.param_of(node)
        out_blocks.append(tuple(lm[0] for lm in marks))
        out_params.append(cross_ratio(pts[0], pts[1], pts[2], node_par))
    return BoundaryM06Point(tuple(out_blocks), tuple(out_params))
