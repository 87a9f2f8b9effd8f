"""Moduli-valued maps and their fiber structure.

Three constructions are implemented on top of the line and invariant
machinery:

* point maps on a cubic threefold: the six lines through a general
  point cut a plane conic when sliced, and the six trace points define
  a genus-two invariant tuple (`moduli_point`, `segre_moduli_point`);
  the symmetric-group orbit of a point on the diagonal threefold is
  checked to be a single fiber (`symmetric_orbit_fiber_check`);
* plane maps on a ruled quadric surface carrying six marked lines: a
  plane cuts six labeled points on a conic (`plane_moduli_point`),
  the configuration's symmetry group of order 72 is built by closure
  (`ruling_symmetry_group`), orbits of tangent planes are verified to
  be fibers, and the local ramification count 2 at tangent planes is
  measured by Newton clustering (`local_degree_at_tangent`);
* the exceptional-quadric restriction: a point of a smooth 3-dim
  quadric maps through its tangent section plane, giving a two-to-one
  cover of plane space (`exceptional_component_map`).

The final `assemble_degree_report` folds the verified ingredient
counts into the degree bookkeeping 720 + 10 * 207360 = 2074320.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .lines3fold import CubicThreefold, lines_through
from .linsolve import (
    invert_exact,
    kernel_basis_exact,
    mat_vec,
    nullspace_float,
    rank_exact,
    rank_float,
    solve_exact,
)
from .moduli import (
    BoundaryM06Point,
    IgusaInvariants,
    MarkedConic,
    boundary_equal,
    boundary_invariants,
    igusa_clebsch,
    m2_equal,
    m2_margin,
    m06_coords,
    m06_equal,
    marked_conic_to_sextic,
    standard_sextic,
)
from .projgeom import (
    INF,
    ProjLine,
    Projectivity,
    QuadricForm,
    cross_ratio,
    cross_ratio_collinear,
    lines_equal,
    normalize_point,
    polar_points_on_quadric,
    proj_same,
    tangent_hyperplane,
)
from .scalars import all_exact, is_exact_scalar, to_complex
from .segre import IndeterminacyError, SegreModel, s6_on_point


class BoundaryLocusError(ValueError):
    """The point maps into the boundary of the moduli target."""


# ---------------------------------------------------------------------------
# point maps on a cubic threefold: six lines -> sliced conic -> invariants


_SLICE_CANDIDATE_SEEDS = (
    (1, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0),
    (1, 1, 0, 0, 0, 0),
    (1, 2, 3, 0, 0, 0),
    (1, -1, 2, -2, 3, 0),
    (2, 3, 5, 7, 11, 13),
    (1, 4, 9, 16, 25, 36),
    (3, 1, 4, 1, 5, 9),
)


def _slice_covectors(n: int, seed: int):
    """Deterministic stream of candidate slicing covectors of length n."""
    for cand in _SLICE_CANDIDATE_SEEDS:
        yield cand[:n]
    rng = random.Random(seed ^ 0x5EED)
    while True:
        yield tuple(rng.randint(-9, 9) for _ in range(n))


_CONIC_MONOMIALS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def _fit_conic(coords: Sequence[Sequence], tol: float = 1e-8) -> QuadricForm:
    """The unique conic through six plane points, as a 3x3 Gram matrix.

    Raises when the six points lie on no conic (kernel empty) or on
    more than one (kernel dimension above one); a Gram rank below 3 is
    reported as a boundary situation, since the six points then sit on
    two lines.
    """
    rows = []
    for c in coords:
        x, y, z = c
        rows.append([x * x, x * y, x * z, y * y, y * z, z * z])
    if all(all_exact(r) for r in rows):
        ker = kernel_basis_exact(rows)
    else:
        ker = nullspace_float(rows, tol)
    if len(ker) == 0:
        raise ArithmeticError("six trace points lie on no conic; no cone through the lines")
    if len(ker) > 1:
        raise ArithmeticError("conic through the trace points is not unique")
    a, b, c, d, e, f = ker[0]
    half = Fraction(1, 2) if is_exact_scalar(a) else 0.5
    gram = [
        [a, half * b, half * c],
        [half * b, d, half * e],
        [half * c, half * e, f],
    ]
    return QuadricForm(gram)


def moduli_point(
    tf: CubicThreefold,
    p,
    seed: int = 0,
    nplanes: int = 1,
    tol: float = 1e-9,
    return_conic: bool = False,
    fan_retries: int = 3,
):
    """Genus-two invariants of the six-line cone section at a point.

    The six lines through p are traced on a slicing hyperplane that
    misses p; the traces are coplanar by construction, and fitting the
    (unique) conic through them certifies that the lines lie on a
    quadric cone.  With nplanes > 1 the whole computation is repeated
    with independent slicing hyperplanes and the resulting invariant
    tuples are required to agree in the weighted sense.

    The line-fan search is retried under fresh probe seeds when the
    root clustering inside it is ambiguous (a frame artifact, not a
    property of the point).
    """
    fan = None
    failure = None
    for attempt in range(max(1, fan_retries)):
        try:
            fan = lines_through(tf, p, seed=seed + attempt)
            break
        except ArithmeticError as exc:
            failure = exc
    if fan is None:
        raise failure
    if fan.kind != "finite":
        raise BoundaryLocusError(
            "line fan degenerates to a pencil; the image lies in the boundary"
        )
    if len(fan.lines) != 6 or any(m != 1 for _, m in fan.lines):
        raise BoundaryLocusError(
            "line fan has coincidences; the image lies in the boundary"
        )
    if fan.cone_rank < 3:
        raise BoundaryLocusError("tangent cone section is reducible")
    n = len(p)
    p_exact = all_exact(p) and tf.is_exact()
    values = []
    conics = []
    planes_used = 0
    stream = _slice_covectors(n, seed)
    while planes_used < nplanes:
        u = next(stream)
        up = sum(c * v for c, v in zip(u, p))
        if p_exact:
            if up == 0:
                continue
        else:
            scale = max(abs(to_complex(v)) for v in p) * max(abs(c) for c in u)
            if abs(to_complex(up)) <= 1e-6 * max(scale, 1e-300):
                continue
        traces = []
        degenerate = False
        for line, _ in fan.lines:
            d = line.b
            ud = sum(c * v for c, v in zip(u, d))
            t = tuple(ud * pv - up * dv for pv, dv in zip(p, d))
            if all(
                (v == 0 if is_exact_scalar(v) else abs(to_complex(v)) < 1e-300)
                for v in t
            ):
                degenerate = True
                break
            traces.append(normalize_point(t))
        if degenerate:
            continue
        # the fan's lines are found numerically, so the traces are
        # usually floats even over an exact point
        exact = all(all_exact(t) for t in traces)
        basis = _independent_triple(traces)
        if basis is None:
            continue
        coords = [_coords_in_basis(t, basis, exact) for t in traces]
        conic = _fit_conic(coords, tol)
        crank = (
            rank_exact(conic.gram)
            if conic.is_exact()
            else rank_float(conic.gram, 1e-8)
        )
        if crank < 3:
            raise BoundaryLocusError(
                "trace conic is reducible; the image lies in the boundary"
            )
        mc = MarkedConic(conic, coords, tol=max(tol, 1e-8))
        sextic = marked_conic_to_sextic(mc)
        values.append(igusa_clebsch(sextic))
        conics.append(mc)
        planes_used += 1
    for other in values[1:]:
        if not m2_equal(values[0], other, tol):
            raise ArithmeticError("invariants depend on the slicing hyperplane")
    if return_conic:
        return values[0], conics[0]
    return values[0]


def _independent_triple(points: Sequence) -> list | None:
    """Three points spanning the plane the whole family sits in."""
    basis = [list(points[0])]
    for q in points[1:]:
        trial = basis + [list(q)]
        if all(all_exact(r) for r in trial):
            r = rank_exact(trial)
        else:
            r = rank_float(trial)
        if r == len(trial):
            basis.append(list(q))
        if len(basis) == 3:
            return basis
    return None


def _coords_in_basis(point, basis, exact: bool) -> tuple:
    cols = [[basis[j][i] for j in range(3)] for i in range(len(point))]
    if exact:
        sol, _ = solve_exact(cols, list(point))
        if sol is None:
            raise ArithmeticError("trace point left the plane of the first three traces")
        return tuple(sol)
    import numpy as np

    a = np.array([[to_complex(v) for v in row] for row in cols], dtype=complex)
    b = np.array([to_complex(v) for v in point], dtype=complex)
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    resid = a @ sol - b
    scale = max(np.abs(b).max(), 1e-300)
    if np.abs(resid).max() > 1e-7 * scale:
        raise ArithmeticError("trace point left the plane of the first three traces")
    return tuple(sol.tolist())


def segre_moduli_point(
    model: SegreModel, p, seed: int = 0, nplanes: int = 1, tol: float = 1e-9
) -> IgusaInvariants:
    """Point map on the diagonal threefold, with locus routing.

    Double points are indeterminacy; points of the fifteen planes map
    to the boundary and are reported through BoundaryLocusError.
    """
    if model.is_node(p):
        raise IndeterminacyError("the map is undefined at the ten double points")
    if model.planes_through(p):
        raise BoundaryLocusError("points of the planes map into the boundary")
    return moduli_point(model.threefold(), p, seed=seed, nplanes=nplanes, tol=tol)


@dataclass(frozen=True)
class OrbitFiberReport:
    """Outcome of checking one orbit maps to a single moduli point."""

    orbit_size: int
    expected_size: int
    all_equal: bool
    max_margin: float
    exact: bool

    @property
    def generic(self) -> bool:
        return self.orbit_size == self.expected_size


def _point_key(q, exact: bool):
    nq = normalize_point(q)
    if exact:
        return tuple(nq)
    return tuple(round(float(to_complex(v).real), 9) + round(float(to_complex(v).imag), 9) * 1j for v in nq)


def symmetric_orbit_fiber_check(
    model: SegreModel, p, tol: float = 1e-8, seed: int = 0
) -> OrbitFiberReport:
    """All 720 coordinate permutations of p map to one moduli point.

    Each orbit member is pushed through the full point map (fan, slice,
    conic, invariants) independently; nothing is shared between orbit
    members except the threefold itself.
    """
    exact = all_exact(p)
    perms = list(itertools.permutations(range(6)))
    keys = set()
    reference = None
    worst = 0.0
    equal = True
    for g in perms:
        q = s6_on_point(g, p)
        keys.add(_point_key(q, exact))
        inv = segre_moduli_point(model, q, seed=seed, nplanes=1, tol=tol)
        if reference is None:
            reference = inv
        else:
            worst = max(worst, m2_margin(reference, inv, tol))
            equal = equal and m2_equal(reference, inv, tol)
    return OrbitFiberReport(
        orbit_size=len(keys),
        expected_size=720,
        all_equal=equal,
        max_margin=worst,
        exact=exact and reference is not None and reference.is_exact(),
    )


# ---------------------------------------------------------------------------
# the ruled quadric surface with six marked lines


P1_ZERO = (0, 1)
P1_ONE = (1, 1)
P1_INF = (1, 0)
_RULING_PARAMS = (P1_ZERO, P1_ONE, P1_INF)

# the six fractional-linear maps permuting {0, 1, oo}, as 2x2 matrices
MOBIUS_TRIPLE_MAPS = (
    ((1, 0), (0, 1)),
    ((-1, 1), (0, 1)),
    ((0, 1), (1, 0)),
    ((0, 1), (-1, 1)),
    ((1, -1), (1, 0)),
    ((1, 0), (1, -1)),
)


def segre_surface_point(s: Sequence, t: Sequence) -> tuple:
    """Image of a parameter pair on the rank-4 quadric z0 z3 = z1 z2."""
    return (s[0] * t[0], s[0] * t[1], s[1] * t[0], s[1] * t[1])


def _kron2(a, b) -> list:
    """Kronecker product of two 2x2 matrices in the z-coordinate order."""
    out = [[0] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    out[2 * i + j][2 * k + l] = a[i][k] * b[j][l]
    return out


@dataclass(frozen=True)
class RulingConfig:
    """A smooth quadric surface with three marked lines per ruling.

    Lines 1..3 are the constant-first-parameter lines at 0, 1, oo;
    lines 4..6 the constant-second-parameter lines at 0, 1, oo.  The
    symmetry group (order 72) permutes the six lines and is stored with
    the induced label permutations.
    """

    quadric: QuadricForm
    lines: tuple               # six ProjLine
    group: tuple               # 72 Projectivity
    line_perms: tuple          # per group element, tuple sigma with g(lines[i]) = lines[sigma[i]]

    def ruling_preserving_indices(self) -> list:
        return [
            k
            for k, sig in enumerate(self.line_perms)
            if set(sig[:3]) == {0, 1, 2}
        ]


def _line_on_quadric(q: QuadricForm, line: ProjLine) -> bool:
    return (
        q.evaluate(line.a) == 0
        and q.evaluate(line.b) == 0
        and q.bilinear(line.a, line.b) == 0
    )


def ruling_symmetry_group(quadric: QuadricForm, lines: Sequence[ProjLine]):
    """Closure of the marked-line symmetries: order 72, from tensor
    lifts of the parameter triple maps and the ruling swap."""
    gens = []
    ident = ((1, 0), (0, 1))
    for m in MOBIUS_TRIPLE_MAPS:
        gens.append(Projectivity(_kron2(m, ident)))
        gens.append(Projectivity(_kron2(ident, m)))
    swap = Projectivity([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    gens.append(swap)
    seen = {}
    frontier = [Projectivity.identity(4)] + gens
    for g in frontier:
        seen.setdefault(g.canonical_key(), g)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = g.compose(h)
                key = gh.canonical_key()
                if key not in seen:
                    seen[key] = gh
                    nxt.append(gh)
        frontier = nxt
    if len(seen) != 72:
        raise ArithmeticError(f"symmetry closure has order {len(seen)}, expected 72")
    group = tuple(seen[k] for k in sorted(seen))
    perms = []
    for g in group:
        sigma = []
        for line in lines:
            img = g.apply_line(line)
            hits = [j for j, l2 in enumerate(lines) if lines_equal(img, l2)]
            if len(hits) != 1:
                raise ArithmeticError("group element does not permute the marked lines")
            sigma.append(hits[0])
        if sorted(sigma) != list(range(6)):
            raise ArithmeticError("line action is not a permutation")
        perms.append(tuple(sigma))
    return group, tuple(perms)


def build_standard_ruling_config() -> RulingConfig:
    """The standard configuration on z0 z3 = z1 z2 with lines at 0, 1, oo."""
    half = Fraction(1, 2)
    gram = [
        [0, 0, 0, half],
        [0, 0, -half, 0],
        [0, -half, 0, 0],
        [half, 0, 0, 0],
    ]
    quadric = QuadricForm(gram)
    if rank_exact(gram) != 4:
        raise ArithmeticError("surface quadric must have rank 4")
    lines = []
    for par in _RULING_PARAMS:
        lines.append(
            ProjLine(segre_surface_point(par, P1_INF), segre_surface_point(par, P1_ZERO))
        )
    for par in _RULING_PARAMS:
        lines.append(
            ProjLine(segre_surface_point(P1_INF, par), segre_surface_point(P1_ZERO, par))
        )
    for line in lines:
        if not _line_on_quadric(quadric, line):
            raise ArithmeticError("marked line is not on the quadric")
    # same-ruling lines are disjoint, opposite-ruling lines meet
    for i, j in itertools.combinations(range(6), 2):
        expected = (i < 3) != (j < 3)
        if lines[i].meets(lines[j]) != expected:
            raise ArithmeticError("ruling incidence pattern is wrong")
    group, perms = ruling_symmetry_group(quadric, lines)
    preserving = sum(1 for sig in perms if set(sig[:3]) == {0, 1, 2})
    if preserving != 36:
        raise ArithmeticError("ruling-preserving subgroup must have order 36")
    return RulingConfig(quadric=quadric, lines=tuple(lines), group=group, line_perms=perms)


# ---------------------------------------------------------------------------
# the plane map: six marked points on the plane section


def plane_line_marks(cfg: RulingConfig, u: Sequence) -> list:
    """Intersection of the plane {u.x = 0} with each marked line."""
    marks = []
    for idx, line in enumerate(cfg.lines):
        ua = sum(c * v for c, v in zip(u, line.a))
        ub = sum(c * v for c, v in zip(u, line.b))
        if all_exact((ua, ub)):
            degenerate = ua == 0 and ub == 0
        else:
            scale = max(abs(to_complex(ua)), abs(to_complex(ub)))
            degenerate = scale == 0.0
        if degenerate:
            raise IndeterminacyError(
                f"plane contains marked line {idx + 1}; the plane map is undefined"
            )
        mark = tuple(ub * av - ua * bv for av, bv in zip(line.a, line.b))
        marks.append(normalize_point(mark))
    return marks


def _plane_pivot(u: Sequence) -> int:
    return max(range(len(u)), key=lambda i: abs(to_complex(u[i])))


def _plane_basis(u: Sequence, k: int) -> list:
    """Rows span {u.x = 0}; dropping coordinate k gives plane coordinates."""
    n = len(u)
    exact = all_exact(u)
    basis = []
    for i in range(n):
        if i == k:
            continue
        row = [Fraction(0) if exact else 0.0] * n
        if exact:
            row[i] = Fraction(1)
            row[k] = -Fraction(u[i]) / Fraction(u[k])
        else:
            row[i] = 1.0
            row[k] = -to_complex(u[i]) / to_complex(u[k])
        basis.append(row)
    return basis


def _restricted_section(cfg: RulingConfig, u: Sequence):
    """Marks, pivot, plane coordinates and the restricted conic form."""
    marks = plane_line_marks(cfg, u)
    k = _plane_pivot(u)
    basis = _plane_basis(u, k)
    conic = cfg.quadric.restrict(basis)
    coords = [tuple(m[i] for i in range(4) if i != k) for m in marks]
    return marks, k, coords, conic


def _section_rank(conic: QuadricForm) -> int:
    if conic.is_exact():
        return rank_exact(conic.gram)
    return rank_float(conic.gram, 1e-8)


def _nonzero_pair(p1, p2):
    if all_exact(p1) and all_exact(p2):
        return p1 if any(v != 0 for v in p1) else p2
    m1 = max(abs(to_complex(v)) for v in p1)
    m2 = max(abs(to_complex(v)) for v in p2)
    return p1 if m1 >= m2 else p2


def _ruling_lines_through(cfg: RulingConfig, z) -> tuple:
    """The two ruling lines through a point of the surface quadric.

    Returns (constant-first-parameter line, constant-second-parameter
    line); the first meets lines 4..6, the second meets lines 1..3.
    """
    s_par = _nonzero_pair((z[0], z[2]), (z[1], z[3]))
    t_par = _nonzero_pair((z[0], z[1]), (z[2], z[3]))
    line_s = ProjLine(
        segre_surface_point(s_par, P1_INF), segre_surface_point(s_par, P1_ZERO)
    )
    line_t = ProjLine(
        segre_surface_point(P1_INF, t_par), segre_surface_point(P1_ZERO, t_par)
    )
    return line_s, line_t


def plane_moduli_point(
    cfg: RulingConfig, u: Sequence, tol: float = 1e-10, seed_index: int = 0
):
    """Moduli point of the six marked points cut on the plane section.

    A transverse plane cuts a smooth conic and yields an interior
    M06Point; a tangent plane cuts two lines and yields the stable
    two-component boundary point.  seed_index picks the conic
    parametrization seed; the result must not depend on it.
    """
    marks, k, coords, conic = _restricted_section(cfg, u)
    rank = _section_rank(conic)
    if rank == 3:
        mc = MarkedConic(conic, coords, tol=max(tol, 1e-9))
        sextic = marked_conic_to_sextic(mc, seed_index)
        return m06_coords(sextic, tol)
    if rank != 2:
        raise ValueError("plane section of a smooth quadric cannot have rank < 2")
    # tangent plane: contact point is the pole of the plane
    if conic.is_exact() and all_exact(u):
        z0 = mat_vec(invert_exact(cfg.quadric.gram), [Fraction(v) for v in u])
        if cfg.quadric.evaluate(z0) != 0:
            raise ArithmeticError("rank-2 section but the plane is not tangent")
    else:
        import numpy as np

        g = np.array(
            [[to_complex(v) for v in row] for row in cfg.quadric.gram], dtype=complex
        )
        z0 = (np.linalg.inv(g) @ np.array([to_complex(v) for v in u], dtype=complex)).tolist()
    line_s, line_t = _ruling_lines_through(cfg, z0)
    marks_s, marks_t = [], []
    for idx, m in enumerate(marks):
        on_s = line_s.contains(m, tol)
        on_t = line_t.contains(m, tol)
        if on_s and on_t:
            raise BoundaryLocusError("a marked point sits at the contact point")
        if on_s:
            marks_s.append((idx + 1, m))
        elif on_t:
            marks_t.append((idx + 1, m))
        else:
            raise ArithmeticError("marked point off both components of a tangent section")
    if len(marks_s) != 3 or len(marks_t) != 3:
        raise ArithmeticError("tangent section must split the marks three and three")
    return boundary_invariants(line_s, line_t, marks_s, marks_t, tol)


def tangent_plane_at(cfg: RulingConfig, s: Sequence, t: Sequence) -> tuple:
    """Covector of the tangent plane at a surface point given by parameters."""
    z = segre_surface_point(s, t)
    return tangent_hyperplane(cfg.quadric, z)


# ---------------------------------------------------------------------------
# fast interior chart: cross-ratios by projection from a marked point


def _cross3(a, b) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _is_zero_vec(v, scale_hint=None) -> bool:
    if all_exact(v):
        return all(x == 0 for x in v)
    m = max(abs(to_complex(x)) for x in v)
    if scale_hint is None:
        return m == 0.0
    return m <= 1e-12 * scale_hint


def interior_lambda_chart(
    cfg: RulingConfig, u: Sequence, gauge: tuple = (0, 1, 2)
) -> tuple:
    """Cross-ratio coordinates of the plane section, without touching
    the conic form.

    The cross-ratio of four conic points equals the cross-ratio of the
    four rays from any fifth conic point (the marks themselves supply
    the centres), so each coordinate reduces to one pencil of lines cut
    by a transversal.  gauge names the three marks sent to 0, 1, oo;
    the returned triple lists the remaining labels in increasing order.
    """
    marks = plane_line_marks(cfg, u)
    k = _plane_pivot(u)
    pts = [tuple(m[i] for i in range(4) if i != k) for m in marks]
    moving = [j for j in range(6) if j not in gauge]
    g1, g2, g3 = gauge
    out = []
    for j in moving:
        centre = next(i for i in range(6) if i not in gauge and i != j)
        rays = [_cross3(pts[centre], pts[i]) for i in (g1, g2, g3, j)]
        scale = max(abs(to_complex(x)) for r in rays for x in r)
        value = None
        for ta, tb in ((g1, g2), (g1, g3), (g2, g3)):
            trans = _cross3(pts[ta], pts[tb])
            if _is_zero_vec(trans, scale):
                continue
            cut = [_cross3(r, trans) for r in rays]
            if any(_is_zero_vec(c, scale * scale) for c in cut):
                continue
            value = cross_ratio_collinear(cut)
            break
        if value is None:
            raise ArithmeticError("no valid transversal for the pencil cross-ratio")
        out.append(value)
    return tuple(out)


# ---------------------------------------------------------------------------
# orbit of a plane under the symmetry group


def _param_pair(value):
    return P1_INF if value is INF else (value, 1)


def relabel_boundary(bp: BoundaryM06Point, sigma: Sequence) -> BoundaryM06Point:
    """Rename mark label i+1 as sigma[i]+1 on a two-component point.

    The node coordinate of each block is rewritten against the newly
    sorted reference marks, so the result describes the same stable
    curve with permuted labels.
    """
    std = (P1_ZERO, P1_ONE, P1_INF)
    new_blocks = []
    new_params = []
    for block, par in zip(bp.blocks, bp.node_params):
        mapped = [sigma[l - 1] + 1 for l in block]
        order = sorted(range(3), key=lambda k: mapped[k])
        refs = [std[k] for k in order]
        new_blocks.append(tuple(mapped[k] for k in order))
        new_params.append(cross_ratio(refs[0], refs[1], refs[2], _param_pair(par)))
    return BoundaryM06Point(tuple(new_blocks), tuple(new_params))


def relabel_interior(m: "M06Point", sigma: Sequence, tol: float = 1e-10):
    """Rename mark label i+1 as sigma[i]+1 on an interior point."""
    return m06_coords(standard_sextic(m).relabel(list(sigma)), tol)


@dataclass(frozen=True)
class PlaneOrbitReport:
    orbit_size: int
    stabilizer_trivial: bool
    matched_equal: bool      # images agree after the induced relabeling
    literal_equal: bool      # images agree with labels read literally
    boundary: bool


def plane_orbit_fiber_check(cfg: RulingConfig, u: Sequence, tol: float = 1e-10) -> PlaneOrbitReport:
    """Push a plane around the whole symmetry group and compare images.

    A group element carries the plane's image to the relabeling of the
    original image by its induced line permutation, so the orbit is one
    fiber exactly when the images agree under that label matching.  The
    literal labeled comparison is reported as well: at a transverse
    plane it genuinely fails (the labels permute), which is the
    contrast showing the matching is doing real work.
    """
    base = plane_moduli_point(cfg, u, tol)
    boundary = isinstance(base, BoundaryM06Point)
    keys = set()
    matched = True
    literal = True
    for g, sigma in zip(cfg.group, cfg.line_perms):
        gu = g.apply_covector(u)
        keys.add(tuple(normalize_point(gu)) if all_exact(gu) else tuple(
            round(float(to_complex(v).real), 9) for v in normalize_point(gu)
        ))
        img = plane_moduli_point(cfg, gu, tol)
        if boundary:
            if not isinstance(img, BoundaryM06Point):
                matched = literal = False
                continue
            matched = matched and boundary_equal(relabel_boundary(base, sigma), img, tol)
            literal = literal and boundary_equal(base, img, tol)
        else:
            if isinstance(img, BoundaryM06Point):
                matched = literal = False
                continue
            matched = matched and m06_equal(relabel_interior(base, sigma, tol), img, tol)
            literal = literal and m06_equal(base, img, tol)
    return PlaneOrbitReport(
        orbit_size=len(keys),
        stabilizer_trivial=len(keys) == len(cfg.group),
        matched_equal=matched,
        literal_equal=literal,
        boundary=boundary,
    )


def interior_orbit_class_check(cfg: RulingConfig, u: Sequence, tol: float = 1e-9) -> bool:
    """After forgetting labels, a transverse plane's orbit is one point.

    Each orbit image is an interior M06Point; their weighted invariants
    must agree even though the labeled points differ.
    """
    reference = None
    for g in cfg.group:
        img = plane_moduli_point(cfg, g.apply_covector(u), tol)
        if isinstance(img, BoundaryM06Point):
            return False
        inv = igusa_clebsch(standard_sextic(img))
        if reference is None:
            reference = inv
        elif not m2_equal(reference, inv, tol):
            return False
    return True


def _triple_ratio(lam):
    """Reference-permutation invariant of one boundary component.

    Classes of (0, 1, oo, lam) under Moebius maps permuting the three
    reference marks are separated by (l^2-l+1)^3 / (l^2 (l-1)^2)."""
    n = lam * lam - lam + 1
    d = lam * lam * (lam - 1) * (lam - 1)
    return n**3 / d


def _triple_ratio_deriv(lam):
    n = lam * lam - lam + 1
    d = lam * lam * (lam - 1) * (lam - 1)
    dn = 3 * n * n * (2 * lam - 1)
    dd = 2 * lam * (lam - 1) * (2 * lam - 1)
    return (dn * d - n**3 * dd) / (d * d)


def _mobius_six(v):
    return (v, 1 - v, 1 / v, v / (v - 1), (v - 1) / v, 1 / (1 - v))


def boundary_class_preimage_search(
    cfg: RulingConfig,
    s0,
    t0,
    samples: int = 200,
    seed: int = 0,
    tol: float = 1e-8,
):
    """Random Newton search for tangent planes with the base's image class.

    Within the tangent-plane chart (s, t), unlabeled equality of the
    two-component boundary image reduces to matching the pair of
    triple-ratio invariants, possibly swapped.  Every converged root
    should land on one of the 72 orbit parameter pairs.

    Returns (converged, distinct_found, all_in_orbit, worst_distance).
    """
    s0c, t0c = complex(Fraction(s0)), complex(Fraction(t0))
    js, jt = _triple_ratio(s0c), _triple_ratio(t0c)
    expected = set()
    for a in _mobius_six(s0c):
        for b in _mobius_six(t0c):
            expected.add((a, b))
            expected.add((b, a))

    def newton_root(z, target):
        for _ in range(60):
            val = _triple_ratio(z) - target
            dv = _triple_ratio_deriv(z)
            if dv == 0:
                return None
            step = val / dv
            z = z - step
            if abs(z) > 1e6:
                return None
            if abs(step) <= 1e-14 * max(1.0, abs(z)):
                break
        if abs(_triple_ratio(z) - target) > 1e-9 * max(1.0, abs(target)):
            return None
        return z

    rng = random.Random(seed ^ 0x0B17)
    converged = 0
    found = []
    worst = 0.0
    for _ in range(samples):
        zs = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        zt = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        # pick the pairing the seed starts closer to
        r_direct = abs(_triple_ratio(zs) - js) + abs(_triple_ratio(zt) - jt)
        r_swap = abs(_triple_ratio(zs) - jt) + abs(_triple_ratio(zt) - js)
        ta, tb = (js, jt) if r_direct <= r_swap else (jt, js)
        rs = newton_root(zs, ta)
        rt = newton_root(zt, tb)
        if rs is None or rt is None:
            continue
        converged += 1
        dist = min(
            max(abs(rs - a), abs(rt - b)) / max(1.0, abs(a), abs(b))
            for a, b in expected
        )
        worst = max(worst, dist)
        if all(
            max(abs(rs - fa), abs(rt - fb)) > 1e-6 for fa, fb in found
        ):
            found.append((rs, rt))
    all_in_orbit = worst <= tol
    return converged, len(found), all_in_orbit, worst


# ---------------------------------------------------------------------------
# differential structure of the plane map


def plane_chart(u_center: Sequence):
    """Affine 3-chart of plane space fixing the largest covector slot."""
    k = _plane_pivot(u_center)
    n = len(u_center)
    free = [i for i in range(n) if i != k]

    def embed(v):
        u = list(u_center)
        for slot, val in zip(free, v):
            u[slot] = u[slot] + val
        return tuple(u)

    return k, free, embed


def differential_rank(
    fn: Callable, v0: Sequence, h: float, rank_gap: float = 1e-6
):
    """Numerical rank of a map R^3 -> R^m by central differences.

    Returns (rank, singular values); the rank call counts singular
    values above rank_gap times the largest.
    """
    import numpy as np

    cols = []
    for kdir in range(3):
        vp = list(v0)
        vm = list(v0)
        vp[kdir] += h
        vm[kdir] -= h
        fp = fn(vp)
        fm = fn(vm)
        cols.append([(a - b) / (2.0 * h) for a, b in zip(fp, fm)])
    jac = np.array(cols, dtype=float).T
    svals = np.linalg.svd(jac, compute_uv=False)
    top = svals[0] if len(svals) else 0.0
    rank = int(sum(1 for s in svals if s > rank_gap * max(top, 1e-300)))
    return rank, [float(s) for s in svals]


def _lambda_floats(cfg: RulingConfig, u, gauge=(0, 1, 2)) -> list:
    vals = []
    for lam in interior_lambda_chart(cfg, u, gauge):
        if lam is INF:
            raise ArithmeticError("interior chart hit an infinite cross-ratio")
        z = to_complex(lam)
        vals.append(z.real)
        if abs(z.imag) > 1e-7 * max(1.0, abs(z)):
            raise ArithmeticError("interior chart value unexpectedly complex")
    return vals


def generic_plane_rank_check(
    cfg: RulingConfig, u: Sequence, h: float = 1e-5, rank_gap: float = 1e-6
):
    """Differential rank of the plane map at a transverse plane.

    Runs the central-difference rank at steps h and h/2 and returns
    both calls (they must agree for a stable answer)."""
    _, _, embed = plane_chart(u)

    def fn(v):
        return _lambda_floats(cfg, embed(v))

    r1, s1 = differential_rank(fn, [0.0, 0.0, 0.0], h, rank_gap)
    r2, s2 = differential_rank(fn, [0.0, 0.0, 0.0], h / 2, rank_gap)
    return (r1, s1), (r2, s2)


@dataclass(frozen=True)
class PencilDerivativeReport:
    """Directional derivatives of the plane map at a tangent plane.

    Along the pencil of planes through the section component that
    carries the first-ruling marks, the node coordinate against the
    other component's marks is exactly constant; a transverse direction
    moves the matching interior chart at unit scale.
    """

    step: float
    pencil_rate: float
    typical_rate: float
    ratio: float
    exact_zero: bool
    extension_gap: float
    extension_gap_half: float


def pencil_derivative_check(
    cfg: RulingConfig,
    u_t: Sequence,
    h: Fraction = Fraction(1, 1000),
) -> PencilDerivativeReport:
    """The pencil through the fixed component is a null direction.

    The centre of the pencil is the component of the tangent section
    meeting lines 1..3 (it is fixed by the whole pencil, and so are its
    three marks); the invariant read off against the moving component's
    marks (labels 4..6) must not move at all.  A transverse direction
    provides the comparison scale through the matching cross-ratio
    chart with gauge marks 4..6.
    """
    if not all_exact(u_t):
        raise ValueError("the pencil check runs in exact arithmetic")
    value_c = plane_moduli_point(cfg, u_t)
    if not isinstance(value_c, BoundaryM06Point):
        raise ValueError("pencil check requires a tangent plane")
    z0 = mat_vec(invert_exact(cfg.quadric.gram), [Fraction(v) for v in u_t])
    _, line_t = _ruling_lines_through(cfg, z0)
    # covectors of planes containing the fixed component
    pencil = kernel_basis_exact([list(line_t.a), list(line_t.b)], 4)
    if len(pencil) != 2:
        raise ArithmeticError("pencil of planes through a line must have dimension 2")
    direction = None
    for cand in pencil:
        if not proj_same(cand, u_t):
            direction = cand
            break
    if direction is None:
        raise ArithmeticError("could not find a second plane through the component")

    def moving_block_param(bp: BoundaryM06Point):
        for block, par in zip(bp.blocks, bp.node_params):
            if block == (4, 5, 6):
                return par
        raise ArithmeticError("boundary point lacks the 4,5,6 block")

    h = Fraction(h)
    vals = []
    for sgn in (1, -1):
        u = tuple(a + sgn * h * b for a, b in zip(u_t, direction))
        bp = plane_moduli_point(cfg, u)
        if not isinstance(bp, BoundaryM06Point):
            raise ArithmeticError("pencil member is unexpectedly transverse")
        vals.append(moving_block_param(bp))
    diff = vals[0] - vals[1]
    exact_zero = diff == 0
    pencil_rate = abs(float(diff)) / (2.0 * float(h))

    # transverse comparison direction: first coordinate axis not in the pencil
    transverse = None
    for probe in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
        rows = [list(direction), list(u_t), list(probe)]
        if rank_exact(rows) == 3:
            plus = tuple(a + h * b for a, b in zip(u_t, probe))
            minus = tuple(a - h * b for a, b in zip(u_t, probe))
            if (
                _section_rank(cfg.quadric.restrict(_plane_basis(plus, _plane_pivot(plus)))) == 3
                and _section_rank(cfg.quadric.restrict(_plane_basis(minus, _plane_pivot(minus)))) == 3
            ):
                transverse = probe
                break
    if transverse is None:
        raise ArithmeticError("no transverse comparison direction found")

    gauge = (3, 4, 5)

    def chart(uu):
        return interior_lambda_chart(cfg, uu, gauge)

    lam_plus = chart(tuple(a + h * b for a, b in zip(u_t, transverse)))
    lam_minus = chart(tuple(a - h * b for a, b in zip(u_t, transverse)))
    typical = max(
        abs(to_complex(a) - to_complex(b)) for a, b in zip(lam_plus, lam_minus)
    ) / (2.0 * float(h))
    ratio = pencil_rate / typical if typical > 0 else math.inf

    # the interior chart extends to the boundary value: shrink the step
    nu = moving_block_param(value_c)
    nu_c = to_complex(nu)

    def gap(step):
        lam = chart(tuple(a + step * b for a, b in zip(u_t, transverse)))
        return max(abs(to_complex(v) - nu_c) for v in lam)

    return PencilDerivativeReport(
        step=float(h),
        pencil_rate=pencil_rate,
        typical_rate=typical,
        ratio=ratio,
        exact_zero=exact_zero,
        extension_gap=gap(h),
        extension_gap_half=gap(h / 2),
    )


# ---------------------------------------------------------------------------
# local degree by Newton clustering


@dataclass(frozen=True)
class LocalDegreeReport:
    eps: float
    cluster_count: int
    clusters: tuple          # representative chart coordinates
    probe_found: bool
    residuals: tuple


def _newton_solve(fn, v_start, target, fd_step, tol, max_iter=80, leash=None):
    """Damped Newton for fn(v) = target on R^3 with a finite-difference
    Jacobian; returns the solution or None."""
    import numpy as np

    v = np.array(v_start, dtype=float)
    t = np.array(target, dtype=float)
    scale = max(1.0, float(np.abs(t).max()))

    def resid(vv):
        return np.array(fn(list(vv)), dtype=float) - t

    r = resid(v)
    for _ in range(max_iter):
        if np.abs(r).max() <= tol * scale:
            return v.tolist(), float(np.abs(r).max())
        jac = np.zeros((3, 3))
        for kdir in range(3):
            vp = v.copy()
            vm = v.copy()
            vp[kdir] += fd_step
            vm[kdir] -= fd_step
            jac[:, kdir] = (
                np.array(fn(vp.tolist()), dtype=float)
                - np.array(fn(vm.tolist()), dtype=float)
            ) / (2.0 * fd_step)
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        damped = 1.0
        for _ in range(10):
            v_new = v + damped * step
            try:
                r_new = resid(v_new)
            except (ArithmeticError, ValueError, ZeroDivisionError):
                damped /= 2.0
                continue
            if np.abs(r_new).max() < np.abs(r).max():
                break
            damped /= 2.0
        else:
            return None
        v, r = v_new, r_new
        if leash is not None and float(np.linalg.norm(v)) > leash:
            return None
    if np.abs(r).max() <= tol * scale:
        return v.tolist(), float(np.abs(r).max())
    return None


def local_degree_near_plane(
    cfg: RulingConfig,
    u_center: Sequence,
    eps: float,
    seed: int = 0,
    newton_tol: float = 1e-12,
    cluster_radius: float = 1e-6,
    grid: int = 5,
) -> LocalDegreeReport:
    """Count the solutions near a plane that hit one nearby target.

    A random transverse probe at distance eps provides the target
    moduli point; Newton from a grid of seeds in the 10*eps ball finds
    every nearby preimage, and the converged points are clustered."""
    rng = random.Random(seed)
    u0 = [float(to_complex(x).real) for x in u_center]
    _, _, embed = plane_chart(tuple(u0))

    def fn(v):
        return _lambda_floats(cfg, embed(v))

    # probe direction: random unit vector in the chart
    while True:
        w = [rng.gauss(0.0, 1.0) for _ in range(3)]
        nw = math.sqrt(sum(x * x for x in w))
        if nw > 1e-3:
            w = [x / nw for x in w]
            break
    v_probe = [eps * x for x in w]
    target = fn(v_probe)
    fd_step = max(1e-9, 1e-2 * eps)
    found = []
    resids = []
    radius = 10.0 * eps
    ticks = [(-1.0 + 2.0 * i / (grid - 1)) * radius for i in range(grid)]
    for sv in itertools.product(ticks, repeat=3):
        if math.sqrt(sum(x * x for x in sv)) > radius:
            continue
        try:
            sol = _newton_solve(fn, list(sv), target, fd_step, newton_tol, leash=5 * radius)
        except (ArithmeticError, ValueError, ZeroDivisionError):
            continue
        if sol is None:
            continue
        v_sol, res = sol
        if math.sqrt(sum(x * x for x in v_sol)) > radius:
            continue
        found.append(v_sol)
        resids.append(res)
    clusters = []
    cluster_res = []
    for v_sol, res in zip(found, resids):
        for idx, rep in enumerate(clusters):
            if math.sqrt(sum((a - b) ** 2 for a, b in zip(v_sol, rep))) <= cluster_radius:
                if res < cluster_res[idx]:
                    clusters[idx] = v_sol
                    cluster_res[idx] = res
                break
        else:
            clusters.append(v_sol)
            cluster_res.append(res)
    probe_found = any(
        math.sqrt(sum((a - b) ** 2 for a, b in zip(v_probe, rep))) <= 10 * cluster_radius
        for rep in clusters
    )
    return LocalDegreeReport(
        eps=eps,
        cluster_count=len(clusters),
        clusters=tuple(tuple(c) for c in clusters),
        probe_found=probe_found,
        residuals=tuple(cluster_res),
    )


def local_degree_at_tangent(
    cfg: RulingConfig,
    u_tangent: Sequence,
    eps: float,
    seed: int = 0,
    newton_tol: float = 1e-12,
    cluster_radius: float = 1e-6,
) -> LocalDegreeReport:
    """Ramification count of the plane map at a tangent plane."""
    if not (1e-6 <= eps <= 1e-3):
        raise ValueError("eps outside the stable range [1e-6, 1e-3]")
    value = plane_moduli_point(cfg, u_tangent)
    if not isinstance(value, BoundaryM06Point):
        raise ValueError("local degree at a tangent plane needs a tangent plane")
    return local_degree_near_plane(
        cfg,
        u_tangent,
        eps,
        seed=seed,
        newton_tol=newton_tol,
        cluster_radius=cluster_radius,
    )


# ---------------------------------------------------------------------------
# dominance of the point map on a general cubic hypersurface


def random_cubic_threefold(rng: random.Random, nvars: int = 5) -> CubicThreefold:
    """Cubic hypersurface with small random integer coefficients."""
    from .mpoly import MultiPoly

    terms = {}
    for exps in itertools.combinations_with_replacement(range(nvars), 3):
        e = [0] * nvars
        for i in exps:
            e[i] += 1
        c = rng.randint(-5, 5)
        if c != 0:
            terms[tuple(e)] = c
    return CubicThreefold(nvars=nvars, cubic=MultiPoly(nvars, terms), hyperplane=None)


def real_point_on_cubic(tf: CubicThreefold, rng: random.Random) -> tuple:
    """Real float point of a real cubic hypersurface, off the singular locus.

    Restricts the cubic to a random rational line and takes a real root
    (one always exists when the restriction has honest degree 3).
    """
    if tf.hyperplane is not None:
        raise ValueError("sampler is for cubic hypersurfaces without a hyperplane cut")
    import numpy as np

    n = tf.nvars
    for _ in range(200):
        a = [rng.randint(-9, 9) for _ in range(n)]
        b = [rng.randint(-9, 9) for _ in range(n)]

        def f(t):
            return float(
                to_complex(tf.cubic.evaluate([av + t * bv for av, bv in zip(a, b)])).real
            )

        f0, f1, fm1, f2 = f(0.0), f(1.0), f(-1.0), f(2.0)
        c2 = 0.5 * (f1 + fm1) - f0
        odd = 0.5 * (f1 - fm1)
        c3 = ((0.5 * (f2 - f0) - 2.0 * c2) - odd) / 3.0
        c1 = odd - c3
        if abs(c3) < 1e-9:
            continue
        roots = np.roots([c3, c2, c1, f0])
        real = [r.real for r in roots if abs(r.imag) <= 1e-10 * max(1.0, abs(r))]
        if not real:
            continue
        t = rng.choice(real)
        x = tuple(float(av + t * bv) for av, bv in zip(a, b))
        if max(abs(v) for v in x) < 1e-6:
            continue
        if not tf.contains(x, 1e-8):
            continue
        if tf.is_singular_point(x):
            continue
        return x
    raise RuntimeError("failed to sample a real point on the cubic")


def cubic_point_chart(tf: CubicThreefold, p) -> Callable:
    """Affine 3-parameter chart of the cubic hypersurface near p.

    One coordinate is pinned to its value at p (projective gauge), one
    is solved from the cubic equation along its axis (the root closest
    to zero of an exactly interpolated univariate cubic), and the
    remaining three are the chart parameters.
    """
    if tf.hyperplane is not None:
        raise ValueError("chart is for cubic hypersurfaces without a hyperplane cut")
    import numpy as np

    base = [float(to_complex(x).real) for x in p]
    k = max(range(len(base)), key=lambda i: abs(base[i]))
    grad = [to_complex(g) for g in tf.gradient_at(base)]
    j = max((i for i in range(len(base)) if i != k), key=lambda i: abs(grad[i]))
    free = [i for i in range(len(base)) if i not in (k, j)]

    def embed(v):
        x = list(base)
        for slot, val in zip(free, v):
            x[slot] += val

        def f(t):
            y = list(x)
            y[j] = x[j] + t
            return float(to_complex(tf.cubic.evaluate(y)).real)

        f0, f1, fm1, f2 = f(0.0), f(1.0), f(-1.0), f(2.0)
        c2 = 0.5 * (f1 + fm1) - f0
        odd = 0.5 * (f1 - fm1)
        c3 = ((0.5 * (f2 - f0) - 2.0 * c2) - odd) / 3.0
        c1 = odd - c3
        roots = np.roots([c3, c2, c1, f0])
        real = [r for r in roots if abs(r.imag) <= 1e-8 * max(1.0, abs(r))]
        if not real:
            raise ArithmeticError("no real sheet of the cubic near the chart point")
        t = min(real, key=lambda r: abs(r)).real
        x[j] += t
        return tuple(x)

    return embed


def absolute_invariants(inv: IgusaInvariants) -> list:
    """Three weight-zero coordinates on the moduli target.

    Real parts only: the inputs come from real points, so the tuples
    are conjugation-symmetric and the imaginary parts are noise.
    """
    i2, i4, i6, i10 = (to_complex(v) for v in inv.as_tuple())
    if i2 == 0 or i10 == 0:
        raise ArithmeticError("absolute invariants need nonzero weight-2 and weight-10 values")
    return [
        (i4 / i2**2).real,
        (i6 / i2**3).real,
        (i2**5 / i10).real,
    ]


def cubic_dominance_rank(
    tf: CubicThreefold,
    p,
    seed: int = 0,
    h: float = 1e-5,
    rank_gap: float = 1e-6,
):
    """Finite-difference rank of point -> absolute invariants at p.

    Rank 3 at a single point already certifies the map's image has full
    dimension; running it at several points guards against an unlucky
    chart.  The three invariants can sit on very different scales, so
    each component is normalised by its value at p before
    differentiating (a diagonal row scaling, rank-neutral)."""
    embed = cubic_point_chart(tf, p)

    base = absolute_invariants(moduli_point(tf, p, seed=seed))
    scales = [max(abs(b), 1e-12) for b in base]

    def fn(v):
        vals = absolute_invariants(moduli_point(tf, embed(v), seed=seed))
        return [x / s for x, s in zip(vals, scales)]

    return differential_rank(fn, [0.0, 0.0, 0.0], h, rank_gap)


# ---------------------------------------------------------------------------
# the exceptional quadric and its two-to-one plane map


@dataclass(frozen=True)
class ExceptionalSetup:
    """A smooth 3-dim quadric glued along the marked ruled surface.

    The hyperplane section {w = 0} of the big quadric is the surface of
    the ruling configuration; tangent hyperplanes of the big quadric
    cut that hyperplane in the planes fed to the plane map."""

    quadric: QuadricForm          # rank 5, in P^4
    hyperplane: tuple             # covector of the surface's P^3
    ruling: RulingConfig

    def plane_of(self, x) -> tuple:
        """Covector (in the surface's P^3) of T_x cut to the hyperplane."""
        tau = tangent_hyperplane(self.quadric, x)
        u = tuple(tau[:4])
        if all_exact(u) and all(c == 0 for c in u):
            raise ValueError("tangent hyperplane equals the gluing hyperplane")
        return u


def build_standard_exceptional() -> ExceptionalSetup:
    half = Fraction(1, 2)
    gram = [
        [0, 0, 0, half, 0],
        [0, 0, -half, 0, 0],
        [0, -half, 0, 0, 0],
        [half, 0, 0, 0, 0],
        [0, 0, 0, 0, 1],
    ]
    q = QuadricForm(gram)
    if rank_exact(gram) != 5:
        raise ArithmeticError("ambient quadric must be smooth (rank 5)")
    cfg = build_standard_ruling_config()
    # the hyperplane section w = 0 is exactly the surface quadric
    for i in range(4):
        for j in range(4):
            if gram[i][j] != cfg.quadric.gram[i][j]:
                raise ArithmeticError("hyperplane section differs from the surface")
    return ExceptionalSetup(quadric=q, hyperplane=(0, 0, 0, 0, 1), ruling=cfg)


def random_exceptional_point(setup: ExceptionalSetup, rng: random.Random) -> tuple:
    """Exact rational point of the big quadric, off the gluing hyperplane.

    Filters out the bad loci of the composed map: tangent section planes
    that touch the surface (dual-quadric zero) or contain a marked line.
    """
    base = (1, 0, 0, 0, 0)
    ginv4 = invert_exact(setup.ruling.quadric.gram)
    for _ in range(500):
        v = [rng.randint(-9, 9) for _ in range(5)]
        qv = setup.quadric.evaluate(v)
        bv = setup.quadric.bilinear(base, v)
        if qv == 0 or bv == 0:
            continue
        x = tuple(
            Fraction(qv) * b - Fraction(2 * bv) * vv for b, vv in zip(base, v)
        )
        if x[4] == 0:
            continue
        x = normalize_point(x)
        if not setup.quadric.contains(x):
            continue
        try:
            u = setup.plane_of(x)
        except ValueError:
            continue
        dual = sum(a * b for a, b in zip(mat_vec(ginv4, list(u)), u))
        if dual == 0:
            continue
        try:
            marks = plane_line_marks(setup.ruling, u)
        except IndeterminacyError:
            continue
        if any(
            proj_same(a, b)
            for i, a in enumerate(marks)
            for b in marks[i + 1 :]
        ):
            # the plane passes through a crossing point of two lines
            continue
        return x
    raise RuntimeError("failed to sample a point on the exceptional quadric")


def exceptional_component_map(setup: ExceptionalSetup, x, tol: float = 1e-9):
    """Invariants of the marked tangent section, plus the partner point.

    Returns (IgusaInvariants, partner): the partner is the second point
    of the big quadric with the same tangent section plane, found on
    the polar line of that plane."""
    u = setup.plane_of(x)
    value = plane_moduli_point(setup.ruling, u, tol)
    if isinstance(value, BoundaryM06Point):
        raise BoundaryLocusError("tangent section plane is tangent to the surface")
    inv = igusa_clebsch(standard_sextic(value))
    c1 = tuple(u) + (0,)
    c2 = setup.hyperplane
    p1, p2 = polar_points_on_quadric(setup.quadric, (c1, c2), tol)
    if proj_same(p1, x, tol):
        partner = p2
    elif proj_same(p2, x, tol):
        partner = p1
    else:
        raise ArithmeticError("polar line of the section plane misses the point")
    return inv, tuple(partner)


# ---------------------------------------------------------------------------
# degree bookkeeping


VERIFIED_EXACT = "verified-exact"
VERIFIED_NUMERIC = "verified-numeric"
PAPER_ACCEPTED = "paper-accepted"

_STATUSES = (VERIFIED_EXACT, VERIFIED_NUMERIC, PAPER_ACCEPTED)


@dataclass(frozen=True)
class DegreeIngredient:
    name: str
    value: int
    status: str
    anchor: str


@dataclass(frozen=True)
class DegreeReport:
    ingredients: tuple
    total: int

    def as_json(self, seed: int = 0, tolerances: dict | None = None) -> dict:
        return {
            "ingredients": [
                {
                    "name": ing.name,
                    "value": ing.value,
                    "status": ing.status,
                    "anchor": ing.anchor,
                }
                for ing in self.ingredients
            ],
            "total": self.total,
            "seed": seed,
            "tolerances": dict(tolerances or {}),
        }


def assemble_degree_report(statuses: dict | None = None) -> DegreeReport:
    """Fold the ingredient counts into the final degree.

    statuses may override the verification status of any ingredient
    (e.g. after actually running the matching suite); the default
    labels record how each number is established by this package."""
    base = {
        "point-orbit-size": (720, VERIFIED_EXACT, "six-point-label-orbit"),
        "forgetful-factor": (720, VERIFIED_EXACT, "label-forgetting-degree"),
        "moduli-birationality": (1, PAPER_ACCEPTED, "period-map-birationality"),
        "ruling-symmetry-order": (72, VERIFIED_EXACT, "marked-line-symmetries"),
        "tangent-ramification": (2, VERIFIED_NUMERIC, "newton-cluster-count"),
        "plane-map-degree": (144, VERIFIED_NUMERIC, "orbit-times-multiplicity"),
        "plane-fiber-factor": (2, VERIFIED_EXACT, "polar-partner-involution"),
        "node-count": (10, VERIFIED_EXACT, "double-point-enumeration"),
        "plane-count": (15, VERIFIED_EXACT, "plane-enumeration"),
        "incidence-per-plane": (4, VERIFIED_EXACT, "node-plane-incidence"),
        "incidence-per-node": (6, VERIFIED_EXACT, "node-plane-incidence"),
        "differential-rank": (3, VERIFIED_NUMERIC, "generic-plane-rank"),
    }
    if statuses:
        for name, status in statuses.items():
            if name not in base:
                raise KeyError(f"unknown ingredient {name!r}")
            if status not in _STATUSES:
                raise ValueError(f"unknown status {status!r}")
            value, _, anchor = base[name]
            base[name] = (value, status, anchor)
    plane_map_degree = base["ruling-symmetry-order"][0] * base["tangent-ramification"][0]
    if plane_map_degree != base["plane-map-degree"][0]:
        raise ArithmeticError("plane map degree must be orbit size times multiplicity")
    delta = base["plane-fiber-factor"][0] * plane_map_degree * base["forgetful-factor"][0]
    if delta != 207360 or delta != 720 * 288:
        raise ArithmeticError("exceptional-component contribution must be 207360")
    total = base["point-orbit-size"][0] + base["node-count"][0] * delta
    if total != 2074320 or total != 720 * 2881:
        raise ArithmeticError("assembled degree must be 2074320")
    rows = [
        DegreeIngredient(name, value, status, anchor)
        for name, (value, status, anchor) in base.items()
    ]
    rows.append(
        DegreeIngredient(
            "exceptional-contribution", delta, VERIFIED_EXACT, "two-times-degree-product"
        )
    )
    return DegreeReport(ingredients=tuple(rows), total=total)
