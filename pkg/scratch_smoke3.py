import itertools
import random
from fractions import Fraction

from cubicm2.moduli import (
    BinarySextic,
    BoundaryM06Point,
    IgusaInvariants,
    MarkedConic,
    boundary_equal,
    boundary_invariants,
    igusa_clebsch,
    m06_coords,
    m06_equal,
    m2_equal,
    marked_conic_to_sextic,
)
from cubicm2.projgeom import INF, ProjLine, QuadricForm


def oracle(s: BinarySextic) -> IgusaInvariants:
    d = [[s.diff(i, j) for j in range(6)] for i in range(6)]

    def sq(i, j):
        return d[i][j] ** 2

    A = B = C = 0
    for o in itertools.permutations(range(6)):
        A += sq(o[0], o[1]) * sq(o[2], o[3]) * sq(o[4], o[5])
        B += (
            sq(o[0], o[1]) * sq(o[1], o[2]) * sq(o[2], o[0])
            * sq(o[3], o[4]) * sq(o[4], o[5]) * sq(o[5], o[3])
        )
        C += (
            sq(o[0], o[1]) * sq(o[1], o[2]) * sq(o[2], o[0])
            * sq(o[3], o[4]) * sq(o[4], o[5]) * sq(o[5], o[3])
            * sq(o[0], o[3]) * sq(o[1], o[4]) * sq(o[2], o[5])
        )
    D = 1
    for i, j in itertools.combinations(range(6), 2):
        D *= sq(i, j)
    assert A % 48 == 0 and B % 72 == 0 and C % 12 == 0
    return IgusaInvariants(A // 48, B // 72, C // 12, D)


s = BinarySextic([0, 1, -1, 2, -2, INF])
inv = igusa_clebsch(s)
orc = oracle(s)
print("main:", inv.as_tuple())
print("orcl:", orc.as_tuple())
assert inv.as_tuple() == orc.as_tuple()

# term counts sanity: I2 has 15 terms, I4 10, I6 60
# relabel invariance over all 720 permutations
for perm in itertools.permutations(range(6)):
    inv_p = igusa_clebsch(s.relabel(perm))
    assert inv_p.as_tuple() == inv.as_tuple()
print("720 relabelings exact-equal OK")

# scaling equivariance: each root pair enters a weight-w invariant with
# degree w, so scaling all six pairs by 3 multiplies I_w by 3^(6w)
s_scaled = BinarySextic([(3 * a, 3 * b) for (a, b) in s.points])
inv_s = igusa_clebsch(s_scaled)
assert inv_s.as_tuple() == tuple(
    v * Fraction(3) ** (6 * w) for v, w in zip(inv.as_tuple(), (2, 4, 6, 10))
)
assert m2_equal(inv, inv_s)

# weighted scaling直接
inv_w = IgusaInvariants(
    inv.I2 * 9, inv.I4 * 81, inv.I6 * 729, inv.I10 * 3**10
)
assert m2_equal(inv, inv_w)

# repeated point -> I10 = 0
assert igusa_clebsch(BinarySextic([0, 0, 1, 2, 3, INF])).I10 == 0

# Moebius invariance of the moduli point
rng = random.Random(7)
for trial in range(20):
    pts = []
    while len(pts) < 6:
        v = Fraction(rng.randint(-40, 40), rng.randint(1, 9))
        if all(v != w for w in pts):
            pts.append(v)
    sx = BinarySextic(pts)
    m = [[rng.randint(-9, 9) for _ in range(2)] for _ in range(2)]
    if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0:
        continue
    assert m2_equal(igusa_clebsch(sx), igusa_clebsch(sx.mobius(m))), (pts, m)
print("Moebius invariance exact OK")

# float regime
sxf = BinarySextic([0.3, 1.7, -2.1, 4.4, 0.9, 12.0])
mf = [[2.0, -1.0], [1.0, 3.0]]
assert m2_equal(igusa_clebsch(sxf), igusa_clebsch(sxf.mobius(mf)))
# independent sextics differ
sy = BinarySextic([0, 1, -1, 3, -2, INF])
assert not m2_equal(igusa_clebsch(s), igusa_clebsch(sy))
print("m2_equal pos/neg OK")

# m06 coords
pt = m06_coords(BinarySextic([0, 1, INF, 2, 3, 4]))
assert pt.lambdas == (2, 3, 4), pt.lambdas
mm = [[5, 2], [1, 3]]
pt2 = m06_coords(BinarySextic([0, 1, INF, 2, 3, 4]).mobius(mm))
assert m06_equal(pt, pt2)
swap = (0, 1, 2, 4, 3, 5)
pt3 = m06_coords(BinarySextic([0, 1, INF, 2, 3, 4]).relabel(swap))
assert pt3.lambdas == (3, 2, 4)
print("m06 coords OK")

# marked conic: x0*x2 = x1^2, points (1, t, t^2)
gram = [[0, 0, Fraction(1, 2)], [0, -1, 0], [Fraction(1, 2), 0, 0]]
q = QuadricForm(gram)
ts = [INF, 0, 1, 2, 3, 5]
marks = []
for t in ts:
    if t is INF:
        marks.append((0, 0, 1))
    else:
        marks.append((1, t, t * t))
mc = MarkedConic(q, marks)
sx = marked_conic_to_sextic(mc)
print("conic params:", sx.points)
iv0 = igusa_clebsch(sx)
# reseed from mark 2: same M2 point and same normal form
sx2 = marked_conic_to_sextic(mc, seed_index=2)
assert m2_equal(iv0, igusa_clebsch(sx2))
assert m06_equal(m06_coords(sx), m06_coords(sx2))
# against direct parameter values (the conic is rational normal):
direct = BinarySextic(ts)
assert m2_equal(iv0, igusa_clebsch(direct))
assert m06_equal(m06_coords(sx), m06_coords(direct))
print("marked conic OK")

# degenerate conic refuses
bad = QuadricForm([[0, Fraction(1, 2), 0], [Fraction(1, 2), 0, 0], [0, 0, 0]])
try:
    MarkedConic(bad, [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1), (1, 0, 2), (0, 1, 5)])
    marked_conic_to_sextic(
        MarkedConic(bad, [(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1), (1, 0, 2), (0, 1, 5)])
    )
    raise SystemExit("degenerate conic accepted")
except ValueError as e:
    print("degenerate conic ->", e)

# boundary invariants in P^2: lines x=0 and y=0 meet at (0,0,1)
la = ProjLine((0, 1, 0), (0, 0, 1))
lb = ProjLine((1, 0, 0), (0, 0, 1))
marks_a = [(1, (0, 1, 1)), (2, (0, 1, 2)), (3, (0, 1, -1))]
marks_b = [(4, (1, 0, 1)), (5, (1, 0, 2)), (6, (1, 0, -1))]
bp = boundary_invariants(la, lb, marks_a, marks_b)
print("boundary point:", bp.blocks, bp.node_params)
bp_sym = boundary_invariants(lb, la, marks_b, marks_a)
assert boundary_equal(bp, bp_sym)
# symmetric configuration: same mark params on both components -> equal node params
assert bp.node_params[0] == bp.node_params[1]
try:
    boundary_invariants(la, lb, [(1, (0, 0, 1))] + marks_a[1:], marks_b)
    raise SystemExit("node collision accepted")
except ValueError as e:
    print("node collision ->", e)

print("smoke3 OK")
