"""Sparse multivariate and dense univariate polynomial arithmetic.

Coefficients are duck-typed scalars (Fraction/int in the exact regime,
complex/mpmath in the float regime); the structures never mix regimes on
their own — conversion is always an explicit map over coefficients.
MultiPoly is the workhorse for cubic forms and their expansions; UniPoly
carries eliminants to the root finder.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .scalars import all_exact, as_fraction, is_exact_scalar


def _zero_like(coeff):
    return coeff * 0


class MultiPoly:
    """Polynomial in `nvars` variables as {exponent tuple: coefficient}.

    Zero coefficients are never stored.  Instances are immutable by
    convention; all operations return fresh objects.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in dict(terms).items():
                if len(exps) != nvars:
                    raise ValueError("exponent tuple length != nvars")
                if c != 0:
                    clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int, c=1) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): c})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c != 0:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls(n, terms)

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence]) -> "MultiPoly":
        """Quadratic form x^T G x from a symmetric matrix."""
        n = len(gram)
        p = cls.zero(n)
        terms = {}
        for i in range(n):
            for j in range(n):
                if gram[i][j] == 0:
                    continue
                e = [0] * n
                e[i] += 1
                e[j] += 1
                k = tuple(e)
                terms[k] = terms.get(k, 0) + gram[i][j]
        return cls(n, terms)

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def map_coeffs(self, fn: Callable) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def is_exact(self) -> bool:
        return all_exact(self.terms.values())

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return MultiPoly(self.nvars, terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return MultiPoly(self.nvars, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "MultiPoly":
        if c == 0:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- calculus and substitution -------------------------------------

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError("point length != nvars")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                for _ in range(k):
                    v = v * x
            total = total + v
        return total

    def partial(self, i: int) -> "MultiPoly":
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            terms[tuple(ne)] = c * e[i]
        return MultiPoly(self.nvars, terms)

    def gradient(self) -> list:
        return [self.partial(i) for i in range(self.nvars)]

    def compose_linear(self, matrix: Sequence[Sequence]) -> "MultiPoly":
        """Substitute x_i = sum_j matrix[i][j] * y_j.

        `matrix` has one row per old variable; the row length fixes the
        new variable count.
        """
        if len(matrix) != self.nvars:
            raise ValueError("matrix must have one row per variable")
        m = len(matrix[0])
        subs = [MultiPoly.linear_form(row) for row in matrix]
        for s in subs:
            if s.nvars != m:
                raise ValueError("ragged substitution matrix")
        # cache powers of each substituted variable up to needed degree
        max_deg = [0] * self.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                max_deg[i] = max(max_deg[i], k)
        powers = []
        for i in range(self.nvars):
            row = [MultiPoly.constant(m, 1)]
            for _ in range(max_deg[i]):
                row.append(row[-1] * subs[i])
            powers.append(row)
        out = MultiPoly.zero(m)
        for e, c in self.terms.items():
            term = MultiPoly.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * powers[i][k]
            out = out + term
        return out

    def eliminate_vars(self, keep: Sequence[int]) -> "MultiPoly":
        """Project onto the variables in `keep`; all others must be absent."""
        keep = list(keep)
        drop = [i for i in range(self.nvars) if i not in keep]
        terms = {}
        for e, c in self.terms.items():
            if any(e[i] for i in drop):
                raise ValueError("polynomial involves a dropped variable")
            terms[tuple(e[i] for i in keep)] = c
        return MultiPoly(len(keep), terms)

    # -- quadratic forms ------------------------------------------------

    def quadratic_gram(self) -> list:
        """Symmetric matrix G with self = x^T G x, for a homogeneous quadric.

        Exact coefficients go through Fraction so the halving of cross
        terms stays exact.
        """
        if self.terms and any(sum(e) != 2 for e in self.terms):
            raise ValueError("not a homogeneous quadratic")
        n = self.nvars
        exact = self.is_exact()
        zero = Fraction(0) if exact else 0.0
        g = [[zero for _ in range(n)] for _ in range(n)]
        for e, c in self.terms.items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                g[i][i] = as_fraction(c) if exact else c
            else:
                half = as_fraction(c) / 2 if exact else c / 2
                g[i][j] = half
                g[j][i] = half
        return g

    # -- normalisation ---------------------------------------------------

    def content(self) -> Fraction:
        """gcd of numerators / lcm of denominators, sign of the leading term."""
        if not self.is_exact():
            raise TypeError("content only defined for exact coefficients")
        if not self.terms:
            return Fraction(0)
        fracs = [as_fraction(c) for c in self.terms.values()]
        num = 0
        den = 1
        for f in fracs:
            num = math.gcd(num, f.numerator)
            den = den * f.denominator // math.gcd(den, f.denominator)
        lead = self.terms[max(self.terms)]
        sign = -1 if as_fraction(lead) < 0 else 1
        return Fraction(sign * num, den)

    def primitive(self) -> "MultiPoly":
        """Scale to coprime integer coefficients with positive leading term."""
        c = self.content()
        if c == 0:
            return self
        inv = 1 / c
        return MultiPoly(
            self.nvars,
            {e: int(as_fraction(v) * inv) for e, v in self.terms.items()},
        )

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"x{i}" + (f"^{k}" if k > 1 else "")
                for i, k in enumerate(e)
                if k
            )
            bits.append(f"({c})" + ("*" + mono if mono else ""))
        return " + ".join(bits)


def cubic_sum_of_cubes(n: int) -> MultiPoly:
    return MultiPoly(n, {tuple(3 if j == i else 0 for j in range(n)): 1 for i in range(n)})


# ---------------------------------------------------------------------------
# dense univariate polynomials


class UniPoly:
    """Dense univariate polynomial, coefficients ascending by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls([])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return all_exact(self.coeffs)

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else 0
            b = other.coeffs[i] if i < len(other.coeffs) else 0
            out.append(a + b)
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    def __rmul__(self, other):
        return self * other

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        lead = self.leading()
        if is_exact_scalar(lead):
            inv = Fraction(1) / as_fraction(lead)
            return UniPoly([as_fraction(c) * inv for c in self.coeffs])
        return UniPoly([c / lead for c in self.coeffs])

    def divmod_exact(self, other: "UniPoly"):
        """Quotient and remainder over the exact field."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if not (self.is_exact() and other.is_exact()):
            raise TypeError("divmod_exact requires exact coefficients")
        rem = [as_fraction(c) for c in self.coeffs]
        div = [as_fraction(c) for c in other.coeffs]
        dq = len(rem) - len(div)
        if dq < 0:
            return UniPoly.zero(), UniPoly(rem)
        quot = [Fraction(0)] * (dq + 1)
        lead = div[-1]
        for k in range(dq, -1, -1):
            if len(rem) < len(div) + k:
                continue
            c = rem[len(div) + k - 1] / lead
            quot[k] = c
            if c != 0:
                for i, d in enumerate(div):
                    rem[i + k] -= c * d
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(quot), UniPoly(rem)

    def gcd_exact(self, other: "UniPoly") -> "UniPoly":
        """Monic gcd over the rationals (Euclid)."""
        a, b = self, other
        while not b.is_zero():
            _, r = a.divmod_exact(b)
            a, b = b, r
        if a.is_zero():
            return a
        return a.monic()

    def squarefree_decomposition(self) -> list:
        """Yun's algorithm; returns [(factor, multiplicity), ...], factors monic.

        Only valid over characteristic zero with exact coefficients.
        """
        if not self.is_exact():
            raise TypeError("square-free decomposition requires exact coefficients")
        return _yun(self)

    def __repr__(self):
        return f"UniPoly({self.coeffs})"


def _yun(p: UniPoly) -> list:
    f = p.monic()
    if f.degree() < 1:
        return []
    df = f.derivative()
    a0 = f.gcd_exact(df)
    b, _ = f.divmod_exact(a0)
    c, _ = df.divmod_exact(a0)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree() > 0:
        a = b.gcd_exact(d)
        if a.degree() > 0:
            out.append((a, i))
        b, _ = b.divmod_exact(a)
        c, _ = d.divmod_exact(a)
        d = c - b.derivative()
        i += 1
    return out
