"""Scalar regimes shared by the whole package.

Two regimes are used everywhere: exact rationals (`fractions.Fraction`,
plain `int`) for incidence and containment claims, and complex floats for
the places where roots of degree >= 2 polynomials are unavoidable.  The
float regime runs on hardware `complex` by default and can be switched to
mpmath at a higher mantissa width through the global precision context.
All downstream code is duck-typed over these scalar types.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import mpmath

EXACT_TYPES = (int, Fraction)


class PrecisionError(ValueError):
    pass


class PrecisionContext:
    """Global mantissa-width switch for the float regime.

    53 bits selects the hardware path; anything above routes root finding
    and polishing through mpmath.  The context is process-global on
    purpose: a verification run commits to one precision.
    """

    def __init__(self, bits: int = 53):
        self.bits = bits

    @property
    def extended(self) -> bool:
        return self.bits > 53

    def set(self, bits: int) -> None:
        if bits < 53:
            raise PrecisionError("mantissa below hardware double is not supported")
        self.bits = bits
        if bits > 53:
            mpmath.mp.prec = bits

    def eps(self):
        if self.extended:
            return mpmath.mpf(2) ** (1 - self.bits)
        return 2.0 ** -52


PRECISION = PrecisionContext()

MPF_TYPES = (mpmath.mpf, mpmath.mpc)


def is_exact_scalar(x) -> bool:
    return isinstance(x, EXACT_TYPES)


def all_exact(xs) -> bool:
    return all(is_exact_scalar(x) for x in xs)


def to_complex(x) -> complex:
    """Collapse any supported scalar to a hardware complex number."""
    if isinstance(x, Fraction):
        # float(Fraction) performs correctly rounded big-integer division
        return complex(float(x))
    if isinstance(x, MPF_TYPES):
        return complex(x)
    return complex(x)


def to_context_float(x):
    """Convert a scalar into the float regime of the active precision."""
    if PRECISION.extended:
        if isinstance(x, Fraction):
            return mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)
        return mpmath.mpmathify(x)
    return to_complex(x)


def scalar_abs(x):
    if isinstance(x, Fraction):
        return abs(x)
    return abs(x)


def check_finite(x):
    """Reject NaN/Inf before they can enter any reported result."""
    if isinstance(x, EXACT_TYPES):
        return x
    if isinstance(x, MPF_TYPES):
        if not mpmath.isfinite(x):
            raise ArithmeticError("non-finite scalar in float regime")
        return x
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ArithmeticError("non-finite scalar in float regime")
    return x


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def sqrt_scalar(x):
    """Square root in the matching regime.

    Exact input returns a Fraction when the value is a perfect rational
    square and raises otherwise; float input returns a complex root.
    """
    if is_exact_scalar(x):
        f = as_fraction(x)
        if f < 0:
            raise ArithmeticError("negative exact scalar has no rational square root")
        rn = math.isqrt(f.numerator)
        rd = math.isqrt(f.denominator)
        if rn * rn == f.numerator and rd * rd == f.denominator:
            return Fraction(rn, rd)
        raise ArithmeticError("exact scalar is not a perfect square")
    if isinstance(x, MPF_TYPES):
        return mpmath.sqrt(x)
    return cmath.sqrt(complex(x))


def exact_sqrt_or_none(x):
    try:
        return sqrt_scalar(as_fraction(x))
    except (ArithmeticError, TypeError):
        return None
