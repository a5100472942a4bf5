"""Riemann-Roch spaces on a smooth plane curve by the residual method.

For ``D = D+ - D-`` pick a form G0 through D+; then div(G0) = D+ + E and the
sections of O(D + t*H) are the quotients h / G0 with h a form of degree
``deg G0 + t`` vanishing on E + D-, taken modulo multiples of F.
"""

from dataclasses import dataclass, field

from . import linalg
from .curve import Divisor, EffectiveDivisor, as_divisor, div_add, div_neg, divisor_of_form
from .ideal import Ideal, graded_dim, graded_piece, ideal_colon, ideal_product, ideal_sum, saturate
from .poly import HomogPoly, monomial_basis, num_monomials


class WrongDegree(ValueError):
    pass


@dataclass
class RRSpace:
    """Basis of L(D + twist*H): sections ``numerator / denominator``."""

    divisor: Divisor
    twist: int
    denominator: HomogPoly
    basis: list
    obstruction: Ideal = field(repr=False)

    @property
    def h0(self):
        return len(self.basis)

    @property
    def degree(self):
        """Degree of the numerator forms."""
        return self.denominator.degree + self.twist

    def coordinates(self, p):
        """Coordinates of the form ``p`` (reduced mod F) in this basis, or None if outside the span."""
        C = self.divisor.curve
        vec = C.mod_f(p).coeffs() if p.degree == self.degree else None
        if vec is None:
            raise ValueError("degree mismatch")
        pivots = [_pivot(b) for b in self.basis]
        coords = [vec[k] for k in pivots]
        resid = list(vec)
        for c, b in zip(coords, self.basis):
            if c:
                for i, v in enumerate(b.coeffs()):
                    resid[i] -= c * v
        if any(resid):
            return None
        return coords


def _pivot(p):
    return monomial_basis(p.degree).index(p.leading_monomial())


def reduced_piece(C, forms, degree):
    """RREF basis, mod F, of the span of ``forms`` (all of the given degree)."""
    rows = [C.mod_f(f).coeffs() for f in forms]
    if not rows:
        return []
    red, _ = linalg.rref(rows)
    return [HomogPoly.from_coeffs(r, degree) for r in red]


def _residual_data(C, D):
    """(G0, obstruction ideal) for D; memoised on the divisor."""
    if "residual" in D._cache:
        return D._cache["residual"]
    plus, minus = D.plus, D.minus
    d = C.d
    n = max(0, -(-plus.degree // d))
    while True:
        dim_i, _ = graded_dim(plus.ideal, n)
        if dim_i > num_monomials(n - d):
            break
        n += 1
    G0 = reduced_piece(C, graded_piece(plus.ideal, n), n)[0]
    if plus.is_zero():
        I_E = Ideal.unit()
    else:
        cut = saturate(Ideal([G0, C.F]))
        I_E = saturate(ideal_colon(cut, plus.ideal))
    if minus.is_zero():
        I_obs = ideal_sum(I_E, C.ideal) if not I_E.is_unit() else I_E
    elif I_E.is_unit():
        I_obs = minus.ideal
    else:
        I_obs = saturate(ideal_sum(ideal_product(I_E, minus.ideal), C.ideal))
    D._cache["residual"] = (G0, I_obs)
    return G0, I_obs


def rr_space(C, D, twist=0):
    D = as_divisor(D)
    G0, I_obs = _residual_data(C, D)
    N = G0.degree + twist
    if N < 0:
        return RRSpace(D, twist, G0, [], I_obs)
    key = ("rr", twist)
    if key in D._cache:
        return D._cache[key]
    basis = reduced_piece(C, graded_piece(I_obs, N), N)
    expected = graded_dim(I_obs, N)[0] - num_monomials(N - C.d)
    if len(basis) != expected:
        raise AssertionError(f"h0 bookkeeping: {len(basis)} != {expected}")
    for b in basis:
        if not I_obs.contains(b):
            raise AssertionError("section numerator outside the obstruction ideal")
    space = RRSpace(D, twist, G0, basis, I_obs)
    D._cache[key] = space
    return space


def h0(C, D):
    D = as_divisor(D)
    if D.degree < 0:
        return 0
    return rr_space(C, D, 0).h0


def canonical_divisor(C):
    """K = (d-3) H, realised as div(hyperplane^(d-3))."""
    if C.canonical_twist == 0:
        return Divisor(EffectiveDivisor.zero(C))
    return Divisor(divisor_of_form(C, C.hyperplane ** C.canonical_twist))


def hyperplane_multiple(C, t):
    if t == 0:
        return Divisor(EffectiveDivisor.zero(C))
    D = Divisor(divisor_of_form(C, C.hyperplane ** abs(t)))
    return D if t > 0 else div_neg(D)


def _require_degree(D, deg, what):
    if D.degree != deg:
        raise WrongDegree(f"{what} needs degree {deg}, got {D.degree}")


def is_noneffective(C, D):
    D = as_divisor(D)
    _require_degree(D, C.g - 1, "is_noneffective")
    return h0(C, D) == 0


def is_principal(C, E):
    E = as_divisor(E)
    _require_degree(E, 0, "is_principal")
    if E.plus.is_zero() and E.minus.is_zero():
        return True
    return h0(C, E) == 1


def linearly_equivalent(C, D1, D2):
    D1, D2 = as_divisor(D1), as_divisor(D2)
    if D1.degree != D2.degree:
        raise WrongDegree(f"degrees differ: {D1.degree} vs {D2.degree}")
    return is_principal(C, div_add(D1, div_neg(D2)))


def is_theta_characteristic(C, D):
    D = as_divisor(D)
    _require_degree(D, C.g - 1, "is_theta_characteristic")
    return linearly_equivalent(C, div_add(D, D), canonical_divisor(C))


def reduce_divisor(C, D):
    """A linearly equivalent ``E - t*H`` with E effective and t >= 0 minimal.

    Returns ``(Divisor(E, t*H), t)``. t == 0 means D is effective.
    """
    D = as_divisor(D)
    t = max(0, -(-(-D.degree) // C.d))
    while True:
        space = rr_space(C, D, t)
        if space.h0:
            break
        t += 1
    h = space.basis[0]
    cut = saturate(Ideal([h, C.F]))
    E = EffectiveDivisor.from_ideal(C, ideal_colon(cut, space.obstruction))
    minus = hyperplane_multiple(C, t).plus if t else EffectiveDivisor.zero(C)
    return Divisor(E, minus), t
