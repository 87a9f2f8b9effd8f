"""Elimination theory for plane curves: resultants and conic splitting.

The central consumer is the six-line computation, which intersects a
conic with a cubic inside a P^2 by eliminating one coordinate through a
Sylvester resultant.  A declared-degree resultant silently degenerates
when the eliminated coordinate's top coefficient vanishes, so every
entry point first moves to a frame whose elimination vertex avoids the
input curves.  An identically vanishing resultant in a valid frame is a
theorem (shared component), not noise, and is handled as such.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .linsolve import invert_exact, kernel_basis_exact, solve_exact
from .mpoly import MultiPoly
from .roots import RootFindingError
from .scalars import is_exact_scalar, sqrt_scalar, to_complex


class CommonComponentError(ArithmeticError):
    """A resultant vanished identically where a finite answer was promised."""


class DegenerateConicError(ArithmeticError):
    pass


def coeffs_in_var(p: MultiPoly, var: int, degree: int) -> list:
    """Write p as sum_k c_k(other vars) * x_var^k; returns c_0..c_degree."""
    out = [dict() for _ in range(degree + 1)]
    for e, c in p.terms.items():
        k = e[var]
        if k > degree:
            raise ValueError("variable exceeds declared degree")
        ne = list(e)
        ne[var] = 0
        out[k][tuple(ne)] = c
    return [MultiPoly(p.nvars, d) for d in out]


def sylvester_matrix(fc: list, gc: list) -> list:
    """Sylvester matrix for coefficient lists ascending in the eliminated var.

    fc has length m+1, gc length n+1; the matrix is (m+n) square with
    polynomial entries.
    """
    m = len(fc) - 1
    n = len(gc) - 1
    size = m + n
    rows = []
    for shift in range(n):
        row = [0] * size
        for k, c in enumerate(fc):
            row[size - 1 - (k + shift)] = c
        rows.append(row)
    for shift in range(m):
        row = [0] * size
        for k, c in enumerate(gc):
            row[size - 1 - (k + shift)] = c
        rows.append(row)
    return rows


def poly_det(matrix: list) -> MultiPoly:
    """Determinant by permutation expansion; entries MultiPoly or 0.

    Fine for the sizes used here (at most 5x5).
    """
    n = len(matrix)
    nvars = None
    for row in matrix:
        for x in row:
            if isinstance(x, MultiPoly):
                nvars = x.nvars
                break
        if nvars is not None:
            break
    if nvars is None:
        raise ValueError("matrix without polynomial entries")
    total = MultiPoly.zero(nvars)
    for perm in itertools.permutations(range(n)):
        inv = sum(
            1
            for i in range(n)
            for j in range(i + 1, n)
            if perm[i] > perm[j]
        )
        sign = -1 if inv % 2 else 1
        term = MultiPoly.constant(nvars, sign)
        zero_term = False
        for i in range(n):
            entry = matrix[i][perm[i]]
            if isinstance(entry, MultiPoly):
                if entry.is_zero():
                    zero_term = True
                    break
                term = term * entry
            else:
                if entry == 0:
                    zero_term = True
                    break
                term = term.scale(entry)
        if not zero_term:
            total = total + term
    return total


def resultant_form(f: MultiPoly, g: MultiPoly, var: int, deg_f: int, deg_g: int) -> MultiPoly:
    """Resultant of f and g with respect to x_var at declared degrees.

    Inputs must be homogeneous of the declared total degrees; the output
    is a form of degree deg_f*deg_g in the remaining variables (with the
    eliminated slot still present but unused).  The caller is
    responsible for the frame being valid: if the top coefficients in
    x_var vanish, the declared-degree resultant is meaningless.
    """
    fc = coeffs_in_var(f, var, deg_f)
    gc = coeffs_in_var(g, var, deg_g)
    if fc[-1].is_zero() or gc[-1].is_zero():
        raise ValueError("top coefficient vanishes; change frames before eliminating")
    return poly_det(sylvester_matrix(fc, gc))


def binary_form_coeffs(p: MultiPoly, degree: int) -> list:
    """Coefficient list c_0..c_degree of a binary form sum c_k s^k t^(d-k)."""
    if p.nvars != 2:
        raise ValueError("binary form must have exactly two variables")
    out = [0] * (degree + 1)
    for e, c in p.terms.items():
        if sum(e) != degree:
            raise ValueError("form is not homogeneous of the declared degree")
        out[e[0]] = c
    return out


def _candidate_vertices(nvars: int, rng: random.Random):
    for i in range(nvars):
        v = [0] * nvars
        v[i] = 1
        yield v
    for combo in itertools.combinations(range(nvars), 2):
        for s in (1, -1):
            v = [0] * nvars
            v[combo[0]] = 1
            v[combo[1]] = s
            yield v
    yield [1] * nvars
    for _ in range(200):
        yield [rng.randint(-9, 9) for _ in range(nvars)]


def choose_elimination_frame(forms: list, nvars: int = 3, seed: int = 0):
    """Invertible matrix M whose last column avoids the given forms.

    Composing with M sends the new last coordinate direction to a point
    where every form in `forms` is nonzero, so declared-degree
    resultants in that coordinate are honest.  Returns (M, Minv) with
    small integer entries.
    """
    rng = random.Random(seed ^ 0xF7A3E)

    def clearly_nonzero(form, v):
        val = form.evaluate(v)
        if form.is_exact():
            return val != 0
        scale = _form_scale(form) * max(abs(to_complex(x)) for x in v) ** max(
            form.degree(), 1
        )
        return abs(to_complex(val)) > 1e-6 * max(scale, 1e-300)

    for v in _candidate_vertices(nvars, rng):
        if not all(clearly_nonzero(f, v) for f in forms):
            continue
        # complete v to a basis by unit vectors on coordinates where a
        # 2x2 complement stays invertible
        for rest in itertools.combinations(range(nvars), nvars - 1):
            cols = []
            for i in rest:
                e = [0] * nvars
                e[i] = 1
                cols.append(e)
            cols.append(list(v))
            m = [[cols[j][i] for j in range(nvars)] for i in range(nvars)]
            try:
                minv = invert_exact(m)
            except ZeroDivisionError:
                continue
            return m, minv
    raise RootFindingError("no valid elimination frame found")


def _form_scale(p: MultiPoly) -> float:
    if not p.terms:
        return 0.0
    return max(abs(to_complex(c)) for c in p.terms.values())


def resultant_vanishes(res: MultiPoly, f: MultiPoly, g: MultiPoly, deg_f: int, deg_g: int, tol: float = 1e-10) -> bool:
    """Is the resultant identically zero, scale-relatively in the float regime?"""
    if res.is_exact():
        return res.is_zero()
    scale = _form_scale(f) ** deg_g * _form_scale(g) ** deg_f
    if scale == 0:
        return True
    return _form_scale(res) <= tol * scale


def split_degenerate_conic(q: MultiPoly):
    """Factor a rank <= 2 ternary conic as a product of two linear forms.

    Returns (l1, l2) with l1*l2 == q (exactly in the exact regime when
    the splitting field is rational; a float split otherwise).  Raises
    DegenerateConicError when the conic has full rank 3.
    """
    g = q.quadratic_gram()
    n = q.nvars
    exact = q.is_exact()
    if exact:
        ker = kernel_basis_exact(g, n)
        rank = n - len(ker)
    else:
        from .linsolve import nullspace_float, rank_float

        rank = rank_float(g)
        ker = nullspace_float(g)
    if rank >= 3:
        raise DegenerateConicError("conic has rank 3; it does not split")
    if rank == 0:
        raise DegenerateConicError("zero conic")
    if rank == 1:
        # q = kappa * (u.x)^2: take u from a nonzero Gram row, scaled so
        # its pivot entry is 1; then kappa is the pivot diagonal entry
        u = next(row for row in g if any(x != 0 for x in row))
        j = next(i for i in range(n) if u[i] != 0)
        u = [x / u[j] for x in u]
        kappa = g[j][j]
        l2 = MultiPoly.linear_form(u)
        l1 = l2.scale(kappa)
        return l1, l2
    # rank 2: restrict to a complement of the kernel and split a binary quadric
    k = ker[0]
    basis = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        trial = basis + [e]
        if exact:
            from .linsolve import rank_exact

            if rank_exact(trial + [list(k)]) == len(trial) + 1:
                basis.append(e)
        else:
            from .linsolve import rank_float as _rf

            if _rf(trial + [list(k)]) == len(trial) + 1:
                basis.append(e)
        if len(basis) == n - 1:
            break
    a, b = basis[0], basis[1]
    cols = [a, b, list(k)]
    m = [[cols[j][i] for j in range(n)] for i in range(n)]
    qq = q.compose_linear(m)
    alpha = qq.coefficient((2, 0, 0))
    beta = qq.coefficient((1, 1, 0))
    gamma = qq.coefficient((0, 2, 0))
    if exact:
        minv = invert_exact(m)
    else:
        import numpy as np

        minv = np.linalg.inv(
            np.array([[to_complex(x) for x in row] for row in m], dtype=complex)
        ).tolist()
    # covectors (l, mu, 0) in (s,t,u) coordinates pull back through minv
    def pullback(cov):
        return MultiPoly.linear_form(
            [sum(cov[r] * minv[r][i] for r in range(n)) for i in range(n)]
        )

    if alpha == 0 and gamma == 0:
        return pullback([beta, 0, 0]), pullback([0, 1, 0])
    if alpha == 0:
        # t * (beta s + gamma t)
        return pullback([0, 1, 0]), pullback([beta, gamma, 0])
    disc = beta * beta - 4 * alpha * gamma
    if exact:
        try:
            root = sqrt_scalar(disc)
        except ArithmeticError:
            # irrational split: hand back float factors
            root = sqrt_scalar(to_complex(disc))
            alpha_f = to_complex(alpha)
            beta_f = to_complex(beta)
            r1 = (-beta_f + root) / (2 * alpha_f)
            r2 = (-beta_f - root) / (2 * alpha_f)
            return (
                pullback([alpha_f, -alpha_f * r1, 0]),
                pullback([1, -r2, 0]),
            )
        r1 = (-beta + root) / (2 * alpha)
        r2 = (-beta - root) / (2 * alpha)
        return pullback([alpha, -alpha * r1, 0]), pullback([1, -r2, 0])
    root = sqrt_scalar(disc)
    r1 = (-beta + root) / (2 * alpha)
    r2 = (-beta - root) / (2 * alpha)
    return pullback([alpha, -alpha * r1, 0]), pullback([1, -r2, 0])


def _divides_linear(ell: MultiPoly, p: MultiPoly, tol: float = 1e-10) -> bool:
    """Does the linear form ell divide p?  Tested on a parametrised line."""
    n = ell.nvars
    cov = [ell.coefficient(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
    if all(is_exact_scalar(c) for c in cov) and p.is_exact():
        span = kernel_basis_exact([cov], n)
        # substitute x = sum params * span into p; all coefficients must die
        sub = [[span[r][i] for r in range(len(span))] for i in range(n)]
        return p.compose_linear(sub).is_zero()
    from .linsolve import nullspace_float

    span = nullspace_float([cov])
    sub = [[span[r][i] for r in range(len(span))] for i in range(n)]
    restricted = p.map_coeffs(to_complex).compose_linear(
        [[to_complex(x) for x in row] for row in sub]
    )
    return _form_scale(restricted) <= tol * max(_form_scale(p), 1e-300)


def common_factor(q: MultiPoly, c: MultiPoly, seed: int = 0, tol: float = 1e-10):
    """Common positive-degree factor of a ternary conic and cubic, or None.

    Decides via a valid-frame resultant; on identical vanishing it
    produces the factor itself: a linear component of the split conic
    that divides the cubic, or the full conic when the cubic is a
    multiple of it.
    """
    m, _ = choose_elimination_frame([q, c], q.nvars, seed)
    qf = q.compose_linear(m)
    cf = c.compose_linear(m)
    res = resultant_form(qf, cf, q.nvars - 1, 2, 3)
    if not resultant_vanishes(res, qf, cf, 2, 3, tol):
        return None
    try:
        l1, l2 = split_degenerate_conic(q)
    except DegenerateConicError:
        # irreducible conic dividing the cubic: c = q * linear
        lam = _cubic_over_conic(q, c, tol)
        if lam is None:
            raise CommonComponentError(
                "resultant vanished but no factorisation was found"
            )
        return q
    for ell in (l1, l2):
        if _divides_linear(ell, c, tol):
            return ell
    raise CommonComponentError("degenerate conic shares no component with the cubic")


def resultant(f: MultiPoly, g: MultiPoly, var: int) -> "UniPoly":
    """Resultant of two ternary forms in x_var, as a binary-form UniPoly.

    Degrees are the declared total degrees (coefficient lists are padded,
    so inputs free of x_var are legal).  The coefficient list is
    ascending in the first remaining variable.  An identically zero
    result raises: either the curves share a component, or the
    elimination centre [0:0:1]-style point lies on both curves — the
    caller must change frames to tell these apart.
    """
    if f.nvars != 3 or g.nvars != 3:
        raise ValueError("resultant is implemented for ternary forms")
    if not (f.is_homogeneous() and g.is_homogeneous()):
        raise ValueError("resultant needs homogeneous inputs")
    deg_f, deg_g = f.degree(), g.degree()
    fc = coeffs_in_var(f, var, deg_f)
    gc = coeffs_in_var(g, var, deg_g)
    det = poly_det(sylvester_matrix(fc, gc))
    if resultant_vanishes(det, f, g, deg_f, deg_g):
        raise CommonComponentError(
            "identically zero resultant: common component or invalid frame"
        )
    keep = [i for i in range(3) if i != var]
    from .mpoly import UniPoly

    return UniPoly(binary_form_coeffs(det.eliminate_vars(keep), deg_f * deg_g))


def divide_by_linear(p: MultiPoly, ell: MultiPoly, tol: float = 1e-10):
    """Quotient p / ell for a linear form that divides p, else None.

    Solved as a linear system on the quotient's coefficients; exact when
    both inputs are exact.
    """
    n = p.nvars
    d = p.degree()
    if d < 1:
        return None
    monos = sorted(
        e for e in itertools.product(range(d), repeat=n) if sum(e) == d - 1
    )
    basis = [MultiPoly(n, {e: 1}) * ell for e in monos]
    target_monos = sorted(
        e for e in itertools.product(range(d + 1), repeat=n) if sum(e) == d
    )
    rows = [[b.coefficient(e) for b in basis] for e in target_monos]
    rhs = [p.coefficient(e) for e in target_monos]
    if all(is_exact_scalar(x) for row in rows for x in row) and all(
        is_exact_scalar(x) for x in rhs
    ):
        sol, _ = solve_exact(rows, rhs)
        if sol is None:
            return None
        return MultiPoly(n, dict(zip(monos, sol)))
    import numpy as np

    a = np.array([[to_complex(x) for x in row] for row in rows], dtype=complex)
    b = np.array([to_complex(x) for x in rhs], dtype=complex)
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    resid = a @ sol - b
    scale = max(1.0, max(abs(z) for z in b))
    if max(abs(z) for z in resid) > tol * scale:
        return None
    return MultiPoly(n, dict(zip(monos, (complex(z) for z in sol))))


def plane_curve_intersections(
    f: MultiPoly,
    g: MultiPoly,
    seed: int = 0,
    cluster_radius: float = 1e-7,
    residual_tol: float = 1e-10,
) -> list:
    """Intersection points of two plane curves, with multiplicities.

    Eliminates in a valid frame (vertex off both curves), solves the
    binary eliminant, back-substitutes each root, polishes with a 2x2
    Newton step in an affine chart, and verifies residuals on both
    forms.  Points come back as complex coordinate triples in the
    original frame; multiplicities sum to the Bezout number.
    """
    from .roots import RootFindingError, binary_roots, newton2, univariate_roots

    deg_f, deg_g = f.degree(), g.degree()
    m, _ = choose_elimination_frame([f, g], 3, seed)
    ff = f.compose_linear(m)
    gg = g.compose_linear(m)
    det = poly_det(sylvester_matrix(coeffs_in_var(ff, 2, deg_f), coeffs_in_var(gg, 2, deg_g)))
    if resultant_vanishes(det, ff, gg, deg_f, deg_g, residual_tol):
        raise CommonComponentError("curves share a component")
    bin_coeffs = binary_form_coeffs(det.eliminate_vars([0, 1]), deg_f * deg_g)
    eliminant_roots = list(
        binary_roots(bin_coeffs, deg_f * deg_g, cluster_radius, residual_tol)
    )
    fiber_pairs = [
        (to_complex(sk), to_complex(tk)) for (sk, tk), _ in eliminant_roots
    ]

    def fiber_cross(z, sk, tk):
        return abs(z[0] * tk - z[1] * sk) / max(
            max(abs(z[0]), abs(z[1])) * max(abs(sk), abs(tk)), 1e-300
        )

    fcs = coeffs_in_var(ff, 2, deg_f)
    gcs = coeffs_in_var(gg, 2, deg_g)
    scale_f = _form_scale(ff)
    scale_g = _form_scale(gg)

    def vertical_poly(coeff_list, s, t):
        from .mpoly import UniPoly

        vals = []
        for cpoly in coeff_list:
            vals.append(to_complex(cpoly.evaluate([s, t, 0])))
        return UniPoly(vals)

    out = []
    for ridx, ((s, t), mult) in enumerate(eliminant_roots):
        s = to_complex(s)
        t = to_complex(t)
        uf = vertical_poly(fcs, s, t)
        ug = vertical_poly(gcs, s, t)
        if uf.degree() < 1 and ug.degree() < 1:
            raise RootFindingError("both restrictions constant on an eliminant root")
        base = uf if uf.degree() >= 1 else ug
        other = ug if base is uf else uf
        cands = [r for r, _ in univariate_roots(base, cluster_radius, 1e-6)]
        myscale = max(abs(c) for c in other.coeffs) if other.coeffs else 0.0
        good = []
        for r in cands:
            v = abs(other.evaluate(r))
            if v <= 1e-5 * max(myscale * max(1.0, abs(r)) ** max(other.degree(), 1), 1e-300):
                good.append(r)
        if not good and other.is_zero():
            good = cands
        polished = []
        for r in good:
            w = [s, t, r]
            k = max(range(3), key=lambda i: abs(w[i]))
            free = [i for i in range(3) if i != k]
            wk = w[k]
            w = [z / wk for z in w]

            def vec(u, v):
                z = [0j, 0j, 0j]
                z[k] = 1.0
                z[free[0]] = u
                z[free[1]] = v
                return z

            dfs = [ff.partial(i) for i in range(3)]
            dgs = [gg.partial(i) for i in range(3)]

            def fs(u, v):
                z = vec(u, v)
                return to_complex(ff.evaluate(z)), to_complex(gg.evaluate(z))

            def jac(u, v):
                z = vec(u, v)
                return (
                    (to_complex(dfs[free[0]].evaluate(z)), to_complex(dfs[free[1]].evaluate(z))),
                    (to_complex(dgs[free[0]].evaluate(z)), to_complex(dgs[free[1]].evaluate(z))),
                )

            u0, v0 = newton2(fs, jac, w[free[0]], w[free[1]])
            if ff.is_exact() and gg.is_exact():
                # double precision caps the polish when coefficients are
                # large integers; a few extended steps recover the slack
                import mpmath

                with mpmath.workprec(140):
                    u1, v1 = mpmath.mpc(u0), mpmath.mpc(v0)
                    for _ in range(4):
                        z = [mpmath.mpc(0)] * 3
                        z[k] = mpmath.mpf(1)
                        z[free[0]], z[free[1]] = u1, v1
                        fv, gv = ff.evaluate(z), gg.evaluate(z)
                        a = dfs[free[0]].evaluate(z)
                        b = dfs[free[1]].evaluate(z)
                        c_ = dgs[free[0]].evaluate(z)
                        d_ = dgs[free[1]].evaluate(z)
                        det = a * d_ - b * c_
                        if det == 0:
                            break
                        u1 = u1 - (fv * d_ - b * gv) / det
                        v1 = v1 - (a * gv - fv * c_) / det
                    u0, v0 = complex(u1), complex(v1)
            z = vec(u0, v0)
            rf = abs(to_complex(ff.evaluate(z)))
            rg = abs(to_complex(gg.evaluate(z)))
            zmax = max(abs(c) for c in z)
            if rf > residual_tol * max(scale_f * zmax**deg_f, 1e-300) or rg > residual_tol * max(
                scale_g * zmax**deg_g, 1e-300
            ):
                raise RootFindingError(
                    f"back-substituted point fails residual check ({rf:.2e}, {rg:.2e})"
                )
            # the polish solves the full 2x2 system, so a bad starting
            # candidate can converge onto an intersection point in a
            # different fiber; such escapes are nearer another eliminant
            # root and are picked up by that root instead.  (An absolute
            # drift threshold misfires when the roots cluster: the root
            # error itself then exceeds any fixed multiple of the
            # cluster radius.)
            own = fiber_cross(z, s, t)
            if any(
                fiber_cross(z, sk, tk) < own
                for j, (sk, tk) in enumerate(fiber_pairs)
                if j != ridx
            ):
                continue
            polished.append(tuple(z))
        # dedupe points recovered above the same eliminant root
        from .projgeom import proj_distance

        distinct = []
        for ptn in polished:
            if all(proj_distance(ptn, q) > cluster_radius for q in distinct):
                distinct.append(ptn)
        if len(distinct) == 1:
            local = [(distinct[0], mult)]
        elif len(distinct) == mult:
            local = [(ptn, 1) for ptn in distinct]
        elif not distinct:
            raise RootFindingError("no back-substitution candidate survived")
        else:
            raise RootFindingError(
                "ambiguous multiplicity split over one eliminant root"
            )
        for ptn, k_ in local:
            orig = tuple(
                sum(m[i][j] * ptn[j] for j in range(3)) for i in range(3)
            )
            out.append((orig, k_))
    total = sum(k_ for _, k_ in out)
    if total != deg_f * deg_g:
        raise RootFindingError(
            f"intersection multiplicities sum to {total}, expected {deg_f * deg_g}"
        )
    return out


def _cubic_over_conic(q: MultiPoly, c: MultiPoly, tol: float):
    """Solve c = q * (linear form) for the linear form, or None."""
    n = q.nvars
    unknown_rows = []
    rhs = []
    monos = sorted(
        {
            tuple(e)
            for e in itertools.product(range(4), repeat=n)
            if sum(e) == 3
        }
    )
    basis = []
    for i in range(n):
        li = MultiPoly.variable(n, i)
        basis.append(q * li)
    for e in monos:
        unknown_rows.append([b.coefficient(e) for b in basis])
        rhs.append(c.coefficient(e))
    if all(is_exact_scalar(x) for row in unknown_rows for x in row) and all(
        is_exact_scalar(x) for x in rhs
    ):
        sol, _ = solve_exact(unknown_rows, rhs)
        if sol is None:
            return None
        return MultiPoly.linear_form(sol)
    import numpy as np

    a = np.array([[to_complex(x) for x in row] for row in unknown_rows], dtype=complex)
    b = np.array([to_complex(x) for x in rhs], dtype=complex)
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    resid = a @ sol - b
    if max(abs(x) for x in resid) > tol * max(1.0, max(abs(x) for x in b)):
        return None
    return MultiPoly.linear_form(list(sol))
