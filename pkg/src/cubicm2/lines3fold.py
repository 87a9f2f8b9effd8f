"""Lines through a point of a cubic threefold, via local expansion.

The cubic is expanded around a point p as a homogeneous identity
F(t*p + y) = t^2*L(y) + t*Q(y) + C(y) in four direction variables; a
direction spans a line inside the cubic iff it kills all three parts.
At a smooth point this is a conic/cubic intersection in the plane
{L = 0} — six directions with multiplicity.  On one of the special
planes the conic and cubic share a linear factor and the fan degenerates
to a pencil plus two residual lines; that path is taken automatically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .elim import (
    CommonComponentError,
    common_factor,
    divide_by_linear,
    plane_curve_intersections,
)
from .linsolve import kernel_basis_exact, nullspace_float, rank_exact, rank_float
from .mpoly import MultiPoly
from .projgeom import ProjLine, plucker_distance, proj_same
from .scalars import all_exact, to_complex


class SingularPointError(ValueError):
    pass


@dataclass
class CubicThreefold:
    """Cubic form, optionally cut down to a hyperplane section.

    With a hyperplane the threefold is {cubic = 0, h.x = 0} in P^(n-1);
    without one, the cubic hypersurface in P^(n-1) itself.
    """

    nvars: int
    cubic: MultiPoly
    hyperplane: tuple | None = None

    def __post_init__(self):
        if self.cubic.nvars != self.nvars:
            raise ValueError("cubic form has the wrong variable count")
        if not self.cubic.is_homogeneous() or self.cubic.degree() != 3:
            raise ValueError("defining form must be a homogeneous cubic")
        if self.hyperplane is not None and len(self.hyperplane) != self.nvars:
            raise ValueError("hyperplane covector has the wrong length")

    def is_exact(self) -> bool:
        return self.cubic.is_exact() and (
            self.hyperplane is None or all_exact(self.hyperplane)
        )

    def contains(self, x, tol: float = 1e-10) -> bool:
        val = self.cubic.evaluate(list(x))
        exact = self.cubic.is_exact() and all_exact(x)
        scale = max(
            (abs(to_complex(c)) for c in self.cubic.terms.values()), default=0.0
        ) * max(abs(to_complex(v)) for v in x) ** 3
        on_cubic = val == 0 if exact else abs(to_complex(val)) <= tol * max(scale, 1e-300)
        if not on_cubic:
            return False
        if self.hyperplane is None:
            return True
        hv = sum(c * v for c, v in zip(self.hyperplane, x))
        if exact and all_exact(self.hyperplane):
            return hv == 0
        hscale = max(abs(to_complex(c)) for c in self.hyperplane) * max(
            abs(to_complex(v)) for v in x
        )
        return abs(to_complex(hv)) <= tol * max(hscale, 1e-300)

    def gradient_at(self, x) -> list:
        return [g.evaluate(list(x)) for g in self.cubic.gradient()]

    def is_singular_point(self, x, tol: float = 1e-8) -> bool:
        """Singular as a point of the (possibly hyperplane-cut) threefold."""
        if not self.contains(x):
            raise ValueError("point is not on the threefold")
        grad = self.gradient_at(x)
        if self.hyperplane is None:
            if all_exact(grad):
                return all(g == 0 for g in grad)
            scale = max(abs(to_complex(g)) for g in grad)
            xs = max(abs(to_complex(v)) for v in x)
            return scale <= tol * max(xs**2, 1e-300)
        rows = [list(grad), list(self.hyperplane)]
        if all_exact(grad) and all_exact(self.hyperplane):
            return rank_exact(rows) <= 1
        return rank_float(rows, tol) <= 1


def _direction_space(tf: CubicThreefold, p) -> list:
    """Four direction vectors spanning the chart around p.

    With a hyperplane, directions stay inside it; in both cases they
    complete p to a basis of the relevant linear space.
    """
    n = tf.nvars
    exact = all_exact(p) and tf.is_exact()
    if tf.hyperplane is not None:
        if exact:
            ambient = kernel_basis_exact([list(tf.hyperplane)], n)
        else:
            ambient = nullspace_float([[to_complex(c) for c in tf.hyperplane]])
    else:
        ambient = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    frame = []
    chosen = [list(p)]
    for v in ambient:
        trial = chosen + [list(v)]
        r = rank_exact(trial) if exact else rank_float(trial)
        if r == len(trial):
            frame.append(list(v))
            chosen = trial
        if len(frame) == 4:
            break
    if len(frame) != 4:
        raise ValueError("could not build a 4-dimensional direction frame")
    return frame


@dataclass
class LocalExpansion:
    """Degree-graded parts of the cubic around a base point.

    linear_part is the tangent covector in direction coordinates; it
    vanishes identically exactly at the double points.
    """

    point: tuple
    frame: list
    linear_part: MultiPoly
    quadratic_part: MultiPoly
    cubic_part: MultiPoly

    def is_node_like(self) -> bool:
        return self.linear_part.is_zero()

    def direction_to_ambient(self, w) -> tuple:
        """Map direction coordinates (len 4) to an ambient vector."""
        n = len(self.point)
        return tuple(
            sum(w[k] * self.frame[k][i] for k in range(4)) for i in range(n)
        )

    def probe_identity(self, rng: random.Random, trials: int = 20) -> bool:
        """Check F(t*p + y) = t^2 L + t Q + C on random exact probes."""
        ok = True
        for _ in range(trials):
            t = Fraction(rng.randint(-9, 9))
            y = [Fraction(rng.randint(-9, 9)) for _ in range(4)]
            amb = [
                t * pc + sum(y[k] * self.frame[k][i] for k in range(4))
                for i, pc in enumerate(self.point)
            ]
            lhs = self._owner_cubic.evaluate(amb)
            rhs = (
                t * t * self.linear_part.evaluate(y)
                + t * self.quadratic_part.evaluate(y)
                + self.cubic_part.evaluate(y)
            )
            ok = ok and (lhs == rhs)
        return ok

    # filled by local_expand so probe_identity can re-evaluate the source form
    _owner_cubic: MultiPoly = field(default=None, repr=False)


def local_expand(tf: CubicThreefold, p) -> LocalExpansion:
    """Expand the cubic around a point of the threefold.

    The substitution x = t*p + sum_k y_k v_k is graded by t-degree; the
    t^3 coefficient is F(p) and must vanish, the t^2 coefficient is the
    linear part, and so on down to the pure cubic in the directions.
    """
    if not tf.contains(p):
        raise ValueError("expansion point is not on the threefold")
    frame = _direction_space(tf, p)
    n = tf.nvars
    matrix = [[p[i]] + [frame[k][i] for k in range(4)] for i in range(n)]
    composed = tf.cubic.compose_linear(matrix)
    from .elim import coeffs_in_var

    parts = coeffs_in_var(composed, 0, 3)
    graded = [part.eliminate_vars([1, 2, 3, 4]) for part in parts]
    if not graded[3].is_zero():
        if graded[3].is_exact():
            raise ValueError("cubic does not vanish at the expansion point")
        top = max(abs(to_complex(c)) for c in graded[3].terms.values())
        scale = max(
            (abs(to_complex(c)) for c in composed.terms.values()), default=0.0
        )
        if top > 1e-9 * max(scale, 1e-300):
            raise ValueError("cubic does not vanish at the expansion point")
    exp = LocalExpansion(
        point=tuple(p),
        frame=frame,
        linear_part=graded[2],
        quadratic_part=graded[1],
        cubic_part=graded[0],
    )
    exp._owner_cubic = tf.cubic
    return exp


@dataclass
class LineFan:
    """Lines on the cubic through one point.

    kind is "finite" (six lines with multiplicity) or
    "pencil-plus-residual" (a plane's worth of lines plus the two
    residual lines, which alone are listed).
    """

    point: tuple
    kind: str
    lines: list  # [(ProjLine, multiplicity)]
    cone_rank: int
    cone_form: MultiPoly
    pencil_plane_directions: list | None = None

    def multiplicity_total(self) -> int:
        return sum(m for _, m in self.lines)


def verify_line_on_cubic(
    tf: CubicThreefold, line: ProjLine, nsamples: int = 20, tol: float = 1e-10
) -> float:
    """Worst containment residual over sample points of the line."""
    rng = random.Random(0xA11CE)
    worst = 0.0
    exact = tf.is_exact() and all_exact(line.a) and all_exact(line.b)
    for k in range(nsamples):
        alpha, beta = rng.randint(-20, 20), rng.randint(1, 20)
        if k == 0:
            alpha, beta = 1, 0
        if k == 1:
            alpha, beta = 0, 1
        x = line.point_at(alpha, beta)
        if exact:
            if not tf.contains(x):
                raise ValueError("line sample point leaves the cubic")
        else:
            val = abs(to_complex(tf.cubic.evaluate(list(x))))
            scale = max(
                abs(to_complex(c)) for c in tf.cubic.terms.values()
            ) * max(abs(to_complex(v)) for v in x) ** 3
            resid = val / max(scale, 1e-300)
            worst = max(worst, resid)
            if resid > tol:
                raise ValueError(f"line containment residual {resid:.2e} > {tol:.1e}")
    return worst


def _tangent_plane_basis(linear_part: MultiPoly):
    cov = [
        linear_part.coefficient(tuple(1 if j == i else 0 for j in range(4)))
        for i in range(4)
    ]
    if all_exact(cov):
        return kernel_basis_exact([cov], 4)
    return nullspace_float([[to_complex(c) for c in cov]])


def lines_through(
    tf: CubicThreefold,
    p,
    seed: int = 0,
    cluster_radius: float = 1e-7,
    residual_tol: float = 1e-10,
    rank_gap: float = 1e-8,
    line_check_tol: float = 1e-10,
) -> LineFan:
    """All lines on the cubic through a smooth point.

    Restricts the quadratic and cubic parts of the local expansion to
    the tangent plane of directions, eliminates, and back-substitutes.
    A shared linear factor (point on one of the planes inside the cubic)
    switches to the pencil-plus-residual description.
    """
    exp = local_expand(tf, p)
    if exp.is_node_like():
        raise SingularPointError(
            "tangent covector vanishes; this is a double point - use the node analysis"
        )
    tangent = _tangent_plane_basis(exp.linear_part)
    if len(tangent) != 3:
        raise SingularPointError("tangent space has unexpected dimension")
    # restriction matrix: y_i = sum_j tangent[j][i] * w_j
    restr = [[tangent[j][i] for j in range(3)] for i in range(4)]
    conic = exp.quadratic_part.compose_linear(restr)
    cubic = exp.cubic_part.compose_linear(restr)
    gram = conic.quadratic_gram()
    cone_rank = (
        rank_exact(gram)
        if all(all_exact(row) for row in gram)
        else rank_float(gram, rank_gap)
    )

    def to_ambient_line(w) -> ProjLine:
        y = [sum(w[j] * tangent[j][i] for j in range(3)) for i in range(4)]
        d = exp.direction_to_ambient(y)
        return ProjLine(exp.point, d)

    try:
        pts = plane_curve_intersections(
            conic, cubic, seed=seed, cluster_radius=cluster_radius, residual_tol=residual_tol
        )
    except CommonComponentError:
        shared = common_factor(conic, cubic, seed=seed, tol=residual_tol)
    else:
        lines = []
        for w, mult in pts:
            line = to_ambient_line(w)
            verify_line_on_cubic(tf, line, tol=line_check_tol)
            lines.append((line, mult))
        fan = LineFan(tuple(p), "finite", lines, cone_rank, conic)
        if fan.multiplicity_total() != 6:
            raise ArithmeticError("line multiplicities do not sum to 6")
        return fan

    if shared is None:
        raise CommonComponentError(
            "resultant vanished identically but no shared factor was found"
        )
    if shared.degree() != 1:
        raise CommonComponentError(
            "shared component is the full conic; fan is not a pencil plus residual"
        )
    # pencil of lines: directions w with shared(w) = 0
    other_factor = divide_by_linear(conic, shared, residual_tol)
    residual_conic = divide_by_linear(cubic, shared, residual_tol)
    if other_factor is None or residual_conic is None:
        raise CommonComponentError("factorisation of the degenerate fan failed")
    # residual lines: {other_factor = 0} meets {residual_conic = 0}
    cov = [
        other_factor.coefficient(tuple(1 if j == i else 0 for j in range(3)))
        for i in range(3)
    ]
    if all_exact(cov):
        span = kernel_basis_exact([cov], 3)
    else:
        span = nullspace_float([[to_complex(c) for c in cov]])
    sub = [[span[r][i] for r in range(2)] for i in range(3)]
    on_line = residual_conic.compose_linear(sub)
    from .elim import binary_form_coeffs
    from .roots import binary_roots

    bc = binary_form_coeffs(on_line, 2)
    lines = []
    for (s, t), mult in binary_roots(bc, 2, cluster_radius, residual_tol):
        w = [s * span[0][i] + t * span[1][i] for i in range(3)]
        line = to_ambient_line(w)
        verify_line_on_cubic(tf, line, tol=line_check_tol)
        lines.append((line, mult))
    shared_cov = [
        shared.coefficient(tuple(1 if j == i else 0 for j in range(3)))
        for i in range(3)
    ]
    if all_exact(shared_cov):
        pencil_w = kernel_basis_exact([shared_cov], 3)
    else:
        pencil_w = nullspace_float([[to_complex(c) for c in shared_cov]])
    pencil_dirs = [
        exp.direction_to_ambient(
            [sum(w[j] * tangent[j][i] for j in range(3)) for i in range(4)]
        )
        for w in pencil_w
    ]
    return LineFan(
        tuple(p),
        "pencil-plus-residual",
        lines,
        cone_rank,
        conic,
        pencil_plane_directions=pencil_dirs,
    )


def marked_lines_at_plane_point(
    model, p, coincidence_tol: float = 1e-6, seed: int = 0
) -> LineFan:
    """The six marked lines (with multiplicity) at a point of a plane.

    Four lines join p to the double points of its plane; two more are
    the residual lines of the degenerate fan.  When p is collinear with
    two double points the two joins coincide (multiplicity 2) and the
    residual pair is replaced by joins to the second plane through p.
    Lines closer than coincidence_tol in Pluecker distance are merged.
    """
    tf = model.threefold()
    if model.is_node(p):
        raise SingularPointError("marked fan is not defined at a double point")
    plane_ids = model.planes_through(p)
    if not plane_ids:
        raise ValueError("point is not on any plane of the model")

    exp = local_expand(tf, p)
    tangent = _tangent_plane_basis(exp.linear_part)
    restr = [[tangent[j][i] for j in range(3)] for i in range(4)]
    conic = exp.quadratic_part.compose_linear(restr)
    gram = conic.quadratic_gram()
    cone_rank = (
        rank_exact(gram)
        if all(all_exact(row) for row in gram)
        else rank_float(gram)
    )

    node_ids = set()
    for i in plane_ids:
        node_ids.update(model.nodes_on_plane(i))
    entries = [
        (ProjLine(tuple(p), tuple(model.nodes[j])), 1) for j in sorted(node_ids)
    ]
    if len(plane_ids) == 1:
        fan = lines_through(tf, p, seed=seed)
        if fan.kind != "pencil-plus-residual":
            raise ValueError("expected a degenerate fan at a plane point")
        entries.extend(fan.lines)

    merged = []
    for ln, m in entries:
        for k, (ref, acc) in enumerate(merged):
            if plucker_distance(ref, ln) <= coincidence_tol:
                merged[k] = (ref, acc + m)
                break
        else:
            merged.append((ln, m))
    fan = LineFan(tuple(p), "marked", merged, cone_rank, conic)
    if fan.multiplicity_total() != 6:
        raise ArithmeticError(
            f"marked multiplicities sum to {fan.multiplicity_total()}, expected 6"
        )
    return fan


def point_on_cubic_via_line(tf: CubicThreefold, rng: random.Random, pick: int = 0):
    """A float point of the cubic, cut out by a random rational line.

    Exactness is given up only at this single cubic-root step; the line
    respects the hyperplane when the threefold carries one.
    """
    n = tf.nvars
    for _ in range(100):
        if tf.hyperplane is not None:
            amb = kernel_basis_exact([list(tf.hyperplane)], n)
            a = [sum(rng.randint(-9, 9) * v[i] for v in amb) for i in range(n)]
            b = [sum(rng.randint(-9, 9) * v[i] for v in amb) for i in range(n)]
        else:
            a = [rng.randint(-9, 9) for _ in range(n)]
            b = [rng.randint(-9, 9) for _ in range(n)]
        if all(x == 0 for x in a) or all(x == 0 for x in b) or proj_same(a, b):
            continue
        restricted = tf.cubic.compose_linear([[a[i], b[i]] for i in range(n)])
        from .elim import binary_form_coeffs

        try:
            coeffs = binary_form_coeffs(restricted, 3)
        except ValueError:
            continue
        if all(c == 0 for c in coeffs):
            continue
        from .roots import binary_roots

        try:
            roots = binary_roots(coeffs, 3)
        except Exception:
            continue
        expanded = []
        for (s, t), m in roots:
            expanded.extend([(s, t)] * m)
        if len(expanded) <= pick:
            continue
        expanded.sort(key=lambda st: (to_complex(st[0] / st[1] if st[1] != 0 else 1e9).real, to_complex(st[0] / st[1] if st[1] != 0 else 1e9).imag))
        s, t = expanded[pick]
        pt = tuple(to_complex(s) * a[i] + to_complex(t) * b[i] for i in range(n))
        if tf.contains(pt, tol=1e-8):
            return pt
    raise RuntimeError("failed to sample a point on the cubic")
