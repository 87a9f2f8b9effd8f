"""The ten-node cubic threefold with its planes, symmetry, and parametrisation.

Standard model: the cubic sum of cubes on the hyperplane where the six
coordinates sum to zero.  Its double points are the sign vectors with
three plus and three minus entries; its planes are cut by the fifteen
ways of matching the coordinates into three opposite pairs.  The same
threefold arises as the image of projective 3-space under the system of
quadrics through five general points; both presentations are built here
with every structural claim checked exactly at construction time.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .elim import plane_curve_intersections
from .linsolve import (
    kernel_basis_exact,
    primitive_vector,
    rank_exact,
    rank_float,
    solve_exact,
)
from .lines3fold import CubicThreefold, local_expand
from .mpoly import MultiPoly, cubic_sum_of_cubes
from .projgeom import ProjLine, in_span, normalize_point, proj_same
from .scalars import all_exact, to_complex


class IndeterminacyError(ValueError):
    """The requested evaluation sits on the locus where the map is undefined."""


@dataclass(frozen=True)
class PlaneInCubic:
    """A plane contained in a cubic threefold, as span plus cutting covectors."""

    label: tuple
    span: tuple       # three spanning points
    covectors: tuple  # covectors cutting the plane out of the ambient space

    def contains(self, x, tol: float = 1e-9) -> bool:
        if all_exact(x) and all(all_exact(c) for c in self.covectors):
            return all(
                sum(c * v for c, v in zip(cov, x)) == 0 for cov in self.covectors
            )
        return in_span(x, [list(s) for s in self.span], tol)

    def point_at(self, coeffs) -> tuple:
        return tuple(
            sum(c * s[i] for c, s in zip(coeffs, self.span))
            for i in range(len(self.span[0]))
        )


# ---------------------------------------------------------------------------
# standard model


@dataclass
class SegreModel:
    cubic: MultiPoly
    hyperplane: tuple
    nodes: list
    planes: list
    incidence: list  # incidence[i][j] = plane i contains node j

    def threefold(self) -> CubicThreefold:
        return CubicThreefold(6, self.cubic, self.hyperplane)

    def is_node(self, x) -> bool:
        return any(proj_same(x, n) for n in self.nodes)

    def planes_through(self, x) -> list:
        return [i for i, pl in enumerate(self.planes) if pl.contains(x)]

    def nodes_on_plane(self, plane_index: int) -> list:
        return [j for j, flag in enumerate(self.incidence[plane_index]) if flag]


def _pair_partitions():
    """The 15 ways to split {0..5} into three unordered pairs."""
    out = []
    items = list(range(6))

    def rec(rest, acc):
        if not rest:
            out.append(tuple(sorted(acc)))
            return
        first = rest[0]
        for other in rest[1:]:
            nxt = [x for x in rest if x not in (first, other)]
            rec(nxt, acc + [(first, other)])

    rec(items, [])
    return out


def build_standard_segre() -> SegreModel:
    """Construct the standard model and certify its structure exactly.

    Checks performed here (all exact): 10 double points with vanishing
    restricted gradient, 15 planes lying identically on the cubic, and
    the (6,4) incidence table.
    """
    cubic = cubic_sum_of_cubes(6)
    hyperplane = (1, 1, 1, 1, 1, 1)

    nodes = []
    for plus in itertools.combinations(range(6), 3):
        if 0 not in plus:
            continue
        node = tuple(1 if i in plus else -1 for i in range(6))
        nodes.append(node)
    if len(nodes) != 10:
        raise AssertionError("node construction is wrong")

    planes = []
    for pairs in _pair_partitions():
        span = []
        covs = []
        for (i, j) in pairs:
            v = [0] * 6
            v[i], v[j] = 1, -1
            span.append(tuple(v))
            cov = [0] * 6
            cov[i] = cov[j] = 1
            covs.append(tuple(cov))
        planes.append(PlaneInCubic(pairs, tuple(span), tuple(covs)))
    if len(planes) != 15:
        raise AssertionError("plane construction is wrong")

    # certify nodes: on the cubic, on the hyperplane, restricted gradient zero
    for n in nodes:
        if sum(n) != 0 or cubic.evaluate(list(n)) != 0:
            raise AssertionError("node fails containment")
        grad = [g.evaluate(list(n)) for g in cubic.gradient()]
        if rank_exact([grad, list(hyperplane)]) > 1:
            raise AssertionError("node gradient is not parallel to the hyperplane")

    # certify planes: inside the hyperplane and identically on the cubic
    for pl in planes:
        for s in pl.span:
            if sum(s) != 0:
                raise AssertionError("plane leaves the hyperplane")
        sub = [[pl.span[j][i] for j in range(3)] for i in range(6)]
        if not cubic.compose_linear(sub).is_zero():
            raise AssertionError("plane is not contained in the cubic")

    incidence = []
    for pl in planes:
        row = []
        for n in nodes:
            row.append(
                all(sum(c * v for c, v in zip(cov, n)) == 0 for cov in pl.covectors)
            )
        incidence.append(row)
    if any(sum(row) != 4 for row in incidence):
        raise AssertionError("some plane does not contain exactly 4 nodes")
    if any(sum(col) != 6 for col in zip(*incidence)):
        raise AssertionError("some node does not lie on exactly 6 planes")

    return SegreModel(cubic, hyperplane, nodes, planes, incidence)


def s6_on_point(perm, x) -> tuple:
    """Coordinate permutation: entry i of x moves to slot perm[i]."""
    out = [None] * 6
    for i, v in enumerate(x):
        out[perm[i]] = v
    return tuple(out)


def s6_apply(perm, target):
    """Act by a permutation of the six coordinates on a point, plane, or line."""
    if isinstance(target, PlaneInCubic):
        span = tuple(s6_on_point(perm, s) for s in target.span)
        covs = tuple(s6_on_point(perm, c) for c in target.covectors)
        label = tuple(sorted(tuple(sorted((perm[i], perm[j]))) for (i, j) in target.label))
        return PlaneInCubic(label, span, covs)
    if isinstance(target, ProjLine):
        return ProjLine(s6_on_point(perm, target.a), s6_on_point(perm, target.b))
    return normalize_point(s6_on_point(perm, target))


def plane_index_of(model: SegreModel, plane: PlaneInCubic) -> int:
    for i, pl in enumerate(model.planes):
        if pl.label == plane.label:
            return i
    raise ValueError("plane not in model")


def random_point_on_plane(model: SegreModel, plane_index: int, rng: random.Random) -> tuple:
    pl = model.planes[plane_index]
    for _ in range(100):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(3)]
        if all(c == 0 for c in coeffs):
            continue
        p = pl.point_at(coeffs)
        if model.is_node(p):
            continue
        others = [i for i in model.planes_through(p) if i != plane_index]
        if others:
            continue
        return normalize_point(p)
    raise RuntimeError("failed to sample a plane point")


def random_rational_point(model: SegreModel, rng: random.Random) -> tuple:
    """Exact rational point of the threefold, off the planes and nodes.

    Cuts the cubic with the line through random points of two distinct
    planes; the third intersection is rational by Vieta.
    """
    tf = model.threefold()
    for _ in range(300):
        i, j = rng.sample(range(len(model.planes)), 2)
        q1 = model.planes[i].point_at([Fraction(rng.randint(-9, 9)) for _ in range(3)])
        q2 = model.planes[j].point_at([Fraction(rng.randint(-9, 9)) for _ in range(3)])
        if all(v == 0 for v in q1) or all(v == 0 for v in q2) or proj_same(q1, q2):
            continue
        restricted = tf.cubic.compose_linear([[q1[k], q2[k]] for k in range(6)])
        c2 = restricted.coefficient((2, 1))
        c1 = restricted.coefficient((1, 2))
        if c1 == 0 or c2 == 0:
            continue
        x = tuple(c1 * a - c2 * b for a, b in zip(q1, q2))
        if all(v == 0 for v in x):
            continue
        x = normalize_point(x)
        if not tf.contains(x):
            continue
        if model.is_node(x) or model.planes_through(x):
            continue
        return x
    raise RuntimeError("failed to sample a rational point on the threefold")


# ---------------------------------------------------------------------------
# parametrisation by quadrics through five base points


def _quadric_monomials():
    return sorted(
        (e for e in itertools.product(range(3), repeat=4) if sum(e) == 2),
        reverse=True,
    )


def _cubic_monomials_5():
    return sorted(
        (e for e in itertools.product(range(4), repeat=5) if sum(e) == 3),
        reverse=True,
    )


@dataclass
class QuadricSystemMap:
    """The map of 3-space by the quadrics through five general points.

    The image is a ten-node cubic hypersurface in P^4; the ten lines
    joining base points contract to its double points, and the fifteen
    planes arise from the ten base-point triples plus the five
    linearisations at the base points themselves.
    """

    base_points: list
    quadrics: list          # five forms spanning the system
    image_cubic: MultiPoly  # primitive integer coefficients
    nodes: dict             # frozenset({i, j}) -> image point of the join
    planes: list            # PlaneInCubic, labels ('triple', i, j, k) / ('contact', i)

    def threefold(self) -> CubicThreefold:
        return CubicThreefold(5, self.image_cubic, None)

    def on_indeterminacy_locus(self, x) -> bool:
        for p in self.base_points:
            if proj_same(x, p):
                return True
        for i, j in itertools.combinations(range(5), 2):
            rows = [list(self.base_points[i]), list(self.base_points[j]), list(x)]
            if all_exact(x):
                if rank_exact(rows) <= 2:
                    return True
            elif rank_float(rows) <= 2:
                return True
        return False

    def eval_point(self, x) -> tuple:
        """Image of a point; exact on exact input."""
        if self.on_indeterminacy_locus(x):
            raise IndeterminacyError(
                "point is a base point or sits on a contracted join"
            )
        img = tuple(q.evaluate(list(x)) for q in self.quadrics)
        if all(v == 0 for v in img):
            raise IndeterminacyError("image vanished unexpectedly")
        return normalize_point(img)

    def join_line(self, i: int, j: int) -> ProjLine:
        return ProjLine(self.base_points[i], self.base_points[j])


def quadrics_through(points, nvars: int = 4) -> list:
    """Basis of quadratic forms vanishing at the given exact points."""
    monos = _quadric_monomials()
    rows = []
    for p in points:
        row = []
        for e in monos:
            v = 1
            for x, k in zip(p, e):
                v *= x**k
            row.append(v)
        rows.append(row)
    basis = kernel_basis_exact(rows, len(monos))
    return [MultiPoly(nvars, dict(zip(monos, vec))) for vec in basis]


def build_quadric_system_map(base_points=None) -> QuadricSystemMap:
    """Construct the five-point quadric map and fit its image cubic.

    The fitted cubic is found as the one-dimensional kernel of the exact
    linear system expressing that a quintic... rather, that the degree-6
    composite of a candidate cubic with the five quadrics vanishes
    identically; uniqueness (kernel dimension exactly 1) is asserted.
    """
    if base_points is None:
        base_points = [
            (1, 0, 0, 0),
            (0, 1, 0, 0),
            (0, 0, 1, 0),
            (0, 0, 0, 1),
            (1, 1, 1, 1),
        ]
    base_points = [tuple(Fraction(c) for c in p) for p in base_points]
    if len(base_points) != 5:
        raise ValueError("exactly five base points are required")
    for quad in itertools.combinations(range(5), 4):
        rows = [list(base_points[i]) for i in quad]
        if rank_exact(rows) < 4:
            raise ValueError("four of the base points are coplanar")

    quadrics = quadrics_through(base_points)
    if len(quadrics) != 5:
        raise ValueError("quadric system has unexpected dimension")

    # fit the image cubic: coefficients of a cubic in 5 variables whose
    # pullback along the quadrics vanishes identically in 4 variables
    cmonos = _cubic_monomials_5()
    pullbacks = []
    for e in cmonos:
        prod = MultiPoly.constant(4, 1)
        for qi, k in zip(quadrics, e):
            for _ in range(k):
                prod = prod * qi
        pullbacks.append(prod)
    sextic_monos = sorted(
        {m for pb in pullbacks for m in pb.terms},
    )
    rows = [[pb.coefficient(m) for pb in pullbacks] for m in sextic_monos]
    kernel = kernel_basis_exact(rows, len(cmonos))
    if len(kernel) != 1:
        raise ValueError(f"cubic fit kernel has dimension {len(kernel)}, expected 1")
    image_cubic = MultiPoly(5, dict(zip(cmonos, kernel[0]))).primitive()

    # joins contract: image of p_i + p_j represents the whole line's image
    nodes = {}
    for i, j in itertools.combinations(range(5), 2):
        mid = tuple(a + b for a, b in zip(base_points[i], base_points[j]))
        img = normalize_point(tuple(q.evaluate(list(mid)) for q in quadrics))
        grad = [g.evaluate(list(img)) for g in image_cubic.gradient()]
        if any(v != 0 for v in grad):
            raise AssertionError("contracted join image is not a singular point")
        nodes[frozenset((i, j))] = img

    planes = []
    # triple planes: images of the planes through three base points
    for tri in itertools.combinations(range(5), 3):
        span_world = [base_points[t] for t in tri]
        combos = [(1, 1, 1), (1, 2, 3), (2, 1, 1), (1, 1, 2), (3, 1, 2), (1, 4, 2)]
        samples = []
        for c in combos:
            x = tuple(
                sum(c[k] * span_world[k][i] for k in range(3)) for i in range(4)
            )
            samples.append(tuple(q.evaluate(list(x)) for q in quadrics))
        rows = [list(s) for s in samples if any(v != 0 for v in s)]
        covs = kernel_basis_exact(rows, 5)
        if len(covs) != 2:
            raise AssertionError("triple-plane image is not a plane")
        span = [primitive_vector(v) for v in kernel_basis_exact(covs, 5)]
        planes.append(
            PlaneInCubic(("triple",) + tri, tuple(tuple(s) for s in span), tuple(tuple(c) for c in covs))
        )
    # contact planes: linearisation of the system at each base point
    for i, p in enumerate(base_points):
        jac = [[g.evaluate(list(p)) for g in q.gradient()] for q in quadrics]
        # columns span the image of the tangent directions
        if rank_exact(jac) != 3:
            raise AssertionError("linearisation rank is not 3")
        covs = kernel_basis_exact([list(col) for col in zip(*jac)], 5)
        if len(covs) != 2:
            raise AssertionError("contact-plane covector space is not 2-dim")
        span = [primitive_vector(v) for v in kernel_basis_exact(covs, 5)]
        planes.append(
            PlaneInCubic(("contact", i), tuple(tuple(s) for s in span), tuple(tuple(c) for c in covs))
        )

    # every plane lies identically on the fitted cubic
    for pl in planes:
        sub = [[pl.span[j][i] for j in range(3)] for i in range(5)]
        if not image_cubic.compose_linear(sub).is_zero():
            raise AssertionError("a constructed plane does not lie on the cubic")

    return QuadricSystemMap(list(base_points), quadrics, image_cubic, nodes, planes)


def fitted_model(qmap: QuadricSystemMap) -> SegreModel:
    """Package the fitted cubic as a model with nodes, planes, incidence."""
    nodes = [qmap.nodes[k] for k in sorted(qmap.nodes, key=sorted)]
    incidence = []
    for pl in qmap.planes:
        row = []
        for n in nodes:
            row.append(
                all(sum(c * v for c, v in zip(cov, n)) == 0 for cov in pl.covectors)
            )
        incidence.append(row)
    model = SegreModel(qmap.image_cubic, None, nodes, qmap.planes, incidence)
    return model


# ---------------------------------------------------------------------------
# the rational normal curve through six points


def cone_quadric_with_vertex(points, vertex) -> MultiPoly:
    """The unique quadric singular at `vertex` through the other points.

    Vanishing of the full gradient at the vertex (four conditions, one
    redundant by the Euler relation) plus passage through the given
    points pins the quadric projectively; uniqueness is asserted.
    """
    monos = _quadric_monomials()
    rows = []
    for p in points:
        row = []
        for e in monos:
            v = 1
            for x, k in zip(p, e):
                v *= x**k
            row.append(v)
        rows.append(row)
    # gradient rows at the vertex
    for slot in range(4):
        row = []
        for e in monos:
            if e[slot] == 0:
                row.append(0)
                continue
            ne = list(e)
            ne[slot] -= 1
            v = e[slot]
            for x, k in zip(vertex, ne):
                v *= x**k
            row.append(v)
        rows.append(row)
    kernel = kernel_basis_exact(rows, len(monos))
    if len(kernel) != 1:
        raise ValueError(
            f"singular-quadric system has kernel dimension {len(kernel)}, expected 1"
        )
    return MultiPoly(4, dict(zip(monos, kernel[0])))


def twisted_cubic_sample(
    base_points,
    x,
    probe_covector=None,
    seed: int = 0,
    residual_tol: float = 1e-10,
):
    """A point of the rational normal cubic through five base points and x.

    Two singular members (cones with vertices at x and at the first base
    point) of the six-point quadric system cut the curve plus the line
    joining their vertices; a probe plane reduces this to four candidate
    points, and membership in two further cones filters the curve points
    from the join-line point.  Returns one curve point distinct from the
    six inputs (float coordinates).
    """
    pts = [tuple(Fraction(c) for c in p) for p in base_points]
    x = tuple(Fraction(c) for c in x)
    six = pts + [x]
    system = quadrics_through(six)
    if len(system) != 4:
        raise ValueError("six-point quadric system has unexpected dimension")

    z_x = cone_quadric_with_vertex(pts, x)
    z0 = cone_quadric_with_vertex([x] + pts[1:], pts[0])
    z1 = cone_quadric_with_vertex([x] + [pts[0]] + pts[2:], pts[1])
    z2 = cone_quadric_with_vertex([x] + pts[:2] + pts[3:], pts[2])

    rng = random.Random(seed ^ 0x7C3)
    for attempt in range(40):
        if probe_covector is not None and attempt == 0:
            u = [Fraction(c) for c in probe_covector]
        else:
            if probe_covector is not None and attempt > 0:
                raise ValueError("supplied probe plane yielded no curve point")
            u = [Fraction(rng.randint(-9, 9)) for _ in range(4)]
        if all(c == 0 for c in u):
            continue
        if any(sum(c * v for c, v in zip(u, p)) == 0 for p in six):
            if probe_covector is not None:
                raise ValueError("probe plane passes through a configuration point")
            continue
        span = kernel_basis_exact([u], 4)
        sub = [[span[j][i] for j in range(3)] for i in range(4)]
        qa = z_x.compose_linear(sub)
        qb = z0.compose_linear(sub)
        try:
            hits = plane_curve_intersections(qa, qb, seed=seed, residual_tol=residual_tol)
        except Exception:
            if probe_covector is not None:
                raise
            continue
        scale_z1 = max(abs(to_complex(c)) for c in z1.terms.values())
        scale_z2 = max(abs(to_complex(c)) for c in z2.terms.values())
        curve_points = []
        for w, _ in hits:
            amb = tuple(
                sum(to_complex(span[j][i]) * w[j] for j in range(3)) for i in range(4)
            )
            amb = normalize_point(amb)
            r1 = abs(to_complex(z1.evaluate(list(amb)))) / max(scale_z1, 1e-300)
            r2 = abs(to_complex(z2.evaluate(list(amb)))) / max(scale_z2, 1e-300)
            if r1 > 1e-8 or r2 > 1e-8:
                continue
            if any(proj_same(amb, p, 1e-8) for p in six):
                continue
            curve_points.append(amb)
        if curve_points:
            curve_points.sort(key=lambda t: tuple((z.real, z.imag) for z in t))
            return curve_points[0]
        if probe_covector is not None:
            raise ValueError("no candidate passed the curve-membership filter; re-probe advised")
    raise RuntimeError("no probe plane produced a curve point; re-probe advised")


# ---------------------------------------------------------------------------
# node cone analysis


@dataclass
class NodeConeReport:
    node: tuple
    cone_rank: int
    incident_planes: list      # indices into model.planes
    direction_lines: list      # ProjLine in the 3-space of directions
    ruling_split: tuple        # (tuple of plane indices, tuple of plane indices)
    quadratic_part: MultiPoly
    cubic_part: MultiPoly


def node_cone_analysis(model: SegreModel, node) -> NodeConeReport:
    """Certify the local structure of the threefold at a double point.

    The linear part vanishes identically; the quadratic part has full
    rank 4; each of the six incident planes gives a line of directions
    killing both the quadratic and cubic parts; and the disjointness
    graph of those six lines splits them 3+3 into the two rulings of the
    rank-4 cone (lines of one ruling are pairwise disjoint, lines of
    opposite rulings meet).
    """
    matches = [j for j, n in enumerate(model.nodes) if proj_same(node, n)]
    if not matches:
        raise ValueError("not a node of the model")
    node = model.nodes[matches[0]]
    tf = model.threefold()
    exp = local_expand(tf, node)
    if not exp.linear_part.is_zero():
        raise AssertionError("linear part does not vanish at a node")
    gram = exp.quadratic_part.quadratic_gram()
    cone_rank = rank_exact(gram)

    incident = [i for i, pl in enumerate(model.planes) if pl.contains(node)]
    basis_cols = [list(node)] + [list(v) for v in exp.frame]
    rows = [[basis_cols[j][i] for j in range(5)] for i in range(6)]
    direction_lines = []
    for i in incident:
        pl = model.planes[i]
        dirs = []
        for s in pl.span:
            sol, _ = solve_exact(rows, list(s))
            if sol is None:
                raise AssertionError("plane point not expressible in the node chart")
            mu = sol[1:]
            if any(v != 0 for v in mu):
                dirs.append(mu)
        picked = []
        for d in dirs:
            if not picked or rank_exact(picked + [list(d)]) > len(picked):
                picked.append(list(d))
            if len(picked) == 2:
                break
        if len(picked) != 2:
            raise AssertionError("plane directions do not span a line")
        line = ProjLine(tuple(picked[0]), tuple(picked[1]))
        sub = [[picked[0][i], picked[1][i]] for i in range(4)]
        if not exp.quadratic_part.compose_linear(sub).is_zero():
            raise AssertionError("plane direction line is not on the quadratic part")
        if not exp.cubic_part.compose_linear(sub).is_zero():
            raise AssertionError("plane direction line is not on the cubic part")
        direction_lines.append(line)

    if len(incident) != 6:
        raise AssertionError("node is not on exactly six planes")

    # split by the disjointness graph: same ruling = disjoint
    adj = {i: set() for i in range(6)}
    for a, b in itertools.combinations(range(6), 2):
        if not direction_lines[a].meets(direction_lines[b]):
            adj[a].add(b)
            adj[b].add(a)
    comp = []
    seen = set()
    for s in range(6):
        if s in seen:
            continue
        stack, group = [s], set()
        while stack:
            v = stack.pop()
            if v in group:
                continue
            group.add(v)
            stack.extend(adj[v] - group)
        seen |= group
        comp.append(tuple(sorted(group)))
    if sorted(len(g) for g in comp) != [3, 3]:
        raise AssertionError("ruling split is not 3 + 3")
    split = tuple(tuple(incident[i] for i in g) for g in comp)

    return NodeConeReport(
        node=node,
        cone_rank=cone_rank,
        incident_planes=incident,
        direction_lines=direction_lines,
        ruling_split=split,
        quadratic_part=exp.quadratic_part,
        cubic_part=exp.cubic_part,
    )
