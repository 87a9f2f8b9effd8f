import random
import time
from fractions import Fraction

from cubicm2.segre import (
    build_standard_segre,
    build_quadric_system_map,
    fitted_model,
    node_cone_analysis,
    random_point_on_plane,
    random_rational_point,
    s6_apply,
    twisted_cubic_sample,
)
from cubicm2.lines3fold import lines_through, marked_lines_at_plane_point
from cubicm2.projgeom import ProjLine, match_lines, proj_same
from cubicm2.scalars import to_complex

t0 = time.time()
model = build_standard_segre()
print(f"standard model certified in {time.time()-t0:.3f}s")
assert len(model.nodes) == 10 and len(model.planes) == 15

# S6 action permutes nodes and planes
perm = (2, 0, 1, 4, 5, 3)
for n in model.nodes:
    assert model.is_node(s6_apply(perm, n))
for pl in model.planes:
    moved = s6_apply(perm, pl)
    assert any(p.label == moved.label for p in model.planes)

t0 = time.time()
qmap = build_quadric_system_map()
print(f"quadric system map built in {time.time()-t0:.3f}s")
assert len(qmap.nodes) == 10 and len(qmap.planes) == 15
fm = fitted_model(qmap)
print("fitted cubic:", len(qmap.image_cubic.terms), "terms")

# 40 random exact points of P^3 land on the fitted cubic
rng = random.Random(11)
for _ in range(40):
    x = tuple(Fraction(rng.randint(-30, 30)) for _ in range(4))
    if all(v == 0 for v in x) or qmap.on_indeterminacy_locus(x):
        continue
    img = qmap.eval_point(x)
    assert qmap.image_cubic.evaluate(list(img)) == 0
print("40-point image check OK")

# six lines at a general exact point of the standard model
rng = random.Random(5)
t0 = time.time()
x = random_rational_point(model, rng)
fan = lines_through(model.threefold(), x)
print(f"lines_through at rational point: {time.time()-t0:.3f}s kind={fan.kind} rank={fan.cone_rank}")
assert fan.kind == "finite" and fan.multiplicity_total() == 6 and fan.cone_rank == 3
assert all(m == 1 for _, m in fan.lines) and len(fan.lines) == 6

# cross-check on the fitted threefold: joins + twisted cubic
x3 = (Fraction(2), Fraction(3), Fraction(5), Fraction(7))
assert not qmap.on_indeterminacy_locus(x3)
img = qmap.eval_point(x3)
t0 = time.time()
fan2 = lines_through(qmap.threefold(), img)
print(f"lines_through at mapped point: {time.time()-t0:.3f}s rank={fan2.cone_rank}")
assert fan2.kind == "finite" and fan2.multiplicity_total() == 6 and fan2.cone_rank == 3

expected = []
for i in range(5):
    p = qmap.base_points[i]
    y1 = tuple(a + b for a, b in zip(x3, p))
    y2 = tuple(a + 2 * b for a, b in zip(x3, p))
    expected.append(ProjLine(qmap.eval_point(y1), qmap.eval_point(y2)))
t0 = time.time()
c = twisted_cubic_sample(qmap.base_points, x3)
print(f"twisted cubic sample in {time.time()-t0:.3f}s: {[f'{to_complex(v):.4f}' for v in c]}")
img_c = tuple(q.evaluate(list(c)) for q in qmap.quadrics)
expected.append(ProjLine(tuple(to_complex(v) for v in img), img_c))
sigma, worst = match_lines([ln for ln, _ in fan2.lines], expected, tol=1e-8)
print(f"join/cubic cross-check worst Plucker distance {worst:.2e}")

# plane point: pencil + 2 residuals; marked fan of 6
rng = random.Random(23)
pp = random_point_on_plane(model, 4, rng)
fanp = lines_through(model.threefold(), pp)
assert fanp.kind == "pencil-plus-residual"
assert len(fanp.lines) == 2, [m for _, m in fanp.lines]
marked = marked_lines_at_plane_point(model, pp)
assert marked.multiplicity_total() == 6 and len(marked.lines) == 6
print("plane point fan OK")

# coincidence: p on the join of two nodes of a plane
pl_idx = 4
nn = model.nodes_on_plane(pl_idx)
n1, n2 = model.nodes[nn[0]], model.nodes[nn[1]]
p_c = tuple(a + 2 * b for a, b in zip(n1, n2))
assert not model.is_node(p_c)
marked_c = marked_lines_at_plane_point(model, p_c)
mults = sorted(m for _, m in marked_c.lines)
print("coincidence fan multiplicities:", mults)
assert marked_c.multiplicity_total() == 6 and max(mults) == 2

# node cone analysis
t0 = time.time()
for node in model.nodes[:3]:
    rep = node_cone_analysis(model, node)
    assert rep.cone_rank == 4
    assert sorted(len(s) for s in rep.ruling_split) == [3, 3]
print(f"node cone analysis OK ({time.time()-t0:.3f}s per ~3 nodes)")

print("smoke2 OK")
