"""Smooth plane curves and divisors on them, kept as saturated ideals.

An effective divisor is the saturated homogeneous ideal of a 0-dimensional
subscheme of the curve; it always contains F. A general divisor is a pair
``plus - minus`` of effective ones. Points over number fields never need to
be named: a conjugate pair enters through forms with rational coefficients.
"""

from . import linalg
from .ideal import (
    Ideal,
    NotZeroDimensional,
    degree_of_scheme,
    ideal_product,
    ideal_sum,
    normal_form,
    saturate,
)
from .poly import HomogPoly, Rat, Z


class NotSmooth(ValueError):
    pass


class DegreeTooSmall(ValueError):
    pass


class PointNotOnCurve(ValueError):
    pass


class FormVanishesOnCurve(ValueError):
    pass


class PlaneCurve:
    """A smooth plane curve ``F = 0`` of degree ``d >= 3``.

    ``hyperplane`` is the linear form whose divisor plays the role of H when
    twisting by O(n); any line works, Z is the default.
    """

    def __init__(self, F, hyperplane=Z):
        self.F = F
        self.d = F.degree
        self.g = (self.d - 1) * (self.d - 2) // 2
        self.canonical_twist = self.d - 3
        self.ideal = Ideal._from_gb([F.scale(1 / F.leading_coefficient())])
        self.hyperplane = hyperplane
        self._H = None

    @property
    def H(self):
        if self._H is None:
            self._H = divisor_of_form(self, self.hyperplane)
        return self._H

    def mod_f(self, p):
        return normal_form(p, self.ideal)

    def on_curve(self, p):
        """True if the form ``p`` vanishes identically on the curve."""
        return self.mod_f(p).is_zero()

    def __repr__(self):
        return f"PlaneCurve({self.F}, d={self.d}, g={self.g})"


def new_curve(F, hyperplane=Z):
    if F.is_zero():
        raise ValueError("F must be nonzero")
    if F.degree < 3:
        raise DegreeTooSmall(f"curve degree must be at least 3, got {F.degree}")
    jac = saturate(Ideal([F, F.derivative(0), F.derivative(1), F.derivative(2)]))
    if not jac.is_unit():
        gens = ", ".join(str(g) for g in jac.groebner)
        raise NotSmooth(f"curve is singular; saturated Jacobian ideal is ({gens})")
    C = PlaneCurve(F, hyperplane)
    if C.g != (C.d - 1) * (C.d - 2) // 2:
        raise AssertionError("genus bookkeeping")
    return C


class EffectiveDivisor:
    __slots__ = ("curve", "ideal", "degree")

    def __init__(self, curve, ideal, degree):
        self.curve = curve
        self.ideal = ideal
        self.degree = degree

    @classmethod
    def from_ideal(cls, curve, ideal, saturated=False):
        """Saturate ``ideal + (F)`` and wrap it, computing the degree."""
        I = ideal_sum(ideal, curve.ideal)
        if not saturated:
            I = saturate(I)
        if not I.contains(curve.F):
            raise AssertionError("divisor ideal must contain F")
        return cls(curve, I, degree_of_scheme(I))

    @classmethod
    def zero(cls, curve):
        return cls(curve, Ideal.unit(), 0)

    def is_zero(self):
        return self.degree == 0

    def __repr__(self):
        return f"EffectiveDivisor(deg={self.degree}, ideal={list(map(str, self.ideal.groebner))})"


class Divisor:
    __slots__ = ("plus", "minus", "_cache")

    def __init__(self, plus, minus=None):
        if minus is None:
            minus = EffectiveDivisor.zero(plus.curve)
        if plus.curve is not minus.curve:
            raise ValueError("divisor parts live on different curves")
        self.plus = plus
        self.minus = minus
        self._cache = {}

    def __getstate__(self):
        return (self.plus, self.minus)

    def __setstate__(self, state):
        self.plus, self.minus = state
        self._cache = {}

    @property
    def curve(self):
        return self.plus.curve

    @property
    def degree(self):
        return self.plus.degree - self.minus.degree

    def __add__(self, other):
        return div_add(self, other)

    def __neg__(self):
        return div_neg(self)

    def __sub__(self, other):
        return div_add(self, div_neg(other))

    def __rmul__(self, n):
        return div_scale(self, n)

    def __repr__(self):
        return f"Divisor(+{self.plus.degree} -{self.minus.degree})"


def point_divisor(C, P):
    """Degree-1 divisor of a rational point given as an integer triple."""
    if C.F.evaluate(P) != 0:
        raise PointNotOnCurve(f"F{tuple(P)} = {C.F.evaluate(P)} != 0")
    if all(v == 0 for v in P):
        raise ValueError("[0:0:0] is not a point")
    forms = [HomogPoly.from_coeffs(v, 1) for v in linalg.nullspace([[Rat(v) for v in P]], 3)]
    return EffectiveDivisor.from_ideal(C, Ideal(forms))


def conjugate_pair_divisor(C, forms):
    """Divisor cut on C by rational forms, e.g. a Galois-stable pair of quadratic points."""
    E = EffectiveDivisor.from_ideal(C, Ideal(forms))
    return E


def divisor_of_form(C, G):
    """The hyperplane-section style divisor ``div(G)``, of degree ``d * deg G``."""
    if G.is_zero() or C.on_curve(G):
        raise FormVanishesOnCurve(f"{G} vanishes on the curve")
    E = EffectiveDivisor.from_ideal(C, Ideal([G]))
    if E.degree != C.d * G.degree:
        raise AssertionError(f"Bezout violated: {E.degree} != {C.d} * {G.degree}")
    return E


def effective_add(A, B):
    if A.is_zero():
        return B
    if B.is_zero():
        return A
    return EffectiveDivisor.from_ideal(A.curve, ideal_product(A.ideal, B.ideal))


def effective_scale(A, n):
    if n < 0:
        raise ValueError("effective divisors scale by n >= 0")
    acc = EffectiveDivisor.zero(A.curve)
    for _ in range(n):
        acc = effective_add(acc, A)
    return acc


def as_divisor(x):
    return x if isinstance(x, Divisor) else Divisor(x)


def div_add(D, E):
    D, E = as_divisor(D), as_divisor(E)
    return Divisor(effective_add(D.plus, E.plus), effective_add(D.minus, E.minus))


def div_neg(D):
    D = as_divisor(D)
    return Divisor(D.minus, D.plus)


def div_scale(D, n):
    D = as_divisor(D)
    if n < 0:
        D, n = div_neg(D), -n
    return Divisor(effective_scale(D.plus, n), effective_scale(D.minus, n))


__all__ = [
    "PlaneCurve",
    "EffectiveDivisor",
    "Divisor",
    "NotSmooth",
    "DegreeTooSmall",
    "PointNotOnCurve",
    "FormVanishesOnCurve",
    "NotZeroDimensional",
    "new_curve",
    "point_divisor",
    "conjugate_pair_divisor",
    "divisor_of_form",
    "div_add",
    "div_neg",
    "div_scale",
    "effective_add",
    "as_divisor",
]
