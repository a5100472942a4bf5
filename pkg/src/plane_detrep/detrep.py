"""Linear determinantal representations from non-effective divisor classes.

Two constructions are provided. ``algorithm1`` reads the matrix off the
relations among sections of L(1): the kernel of L(1) (x) <X,Y,Z> -> L(2).
``algorithm2`` pairs sections of L(1) with sections of the dual L^v(1),
takes the adjugate of the resulting matrix of (d-1)-forms, and divides out
F^(d-2). Feeding it w_j = v_j * h, with h realising L^v = L, gives a
symmetric matrix for a theta characteristic.
"""

from itertools import combinations, permutations

from . import linalg
from .curve import as_divisor, div_add, div_neg, div_scale
from .ideal import exact_divide_raw
from .poly import HomogPoly, Rat, X, Y, Z, monomial_basis, normalizing_factor, parse_poly
from .rr import WrongDegree, canonical_divisor, h0, is_theta_characteristic, rr_space


class EffectiveDivisorError(ValueError):
    def __init__(self, h0_value):
        super().__init__(f"divisor is effective (h0 = {h0_value})")
        self.h0 = h0_value


class InternalRankError(RuntimeError):
    pass


class DivisionFailure(ArithmeticError):
    pass


class NotDivisible(ArithmeticError):
    pass


class NotProportional(ValueError):
    pass


class ZeroDeterminant(ValueError):
    pass


class NotThetaCharacteristic(ValueError):
    pass


class PolyMatrix:
    """Square matrix of homogeneous forms of a common degree."""

    def __init__(self, entries, degree=None):
        rows = [list(r) for r in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if degree is None:
            degs = {e.degree for r in rows for e in r if not e.is_zero()}
            if len(degs) > 1:
                raise ValueError(f"entries of mixed degrees {sorted(degs)}")
            degree = degs.pop() if degs else 1
        for r in rows:
            for j, e in enumerate(r):
                if e.is_zero():
                    r[j] = HomogPoly.zero(degree)
                elif e.degree != degree:
                    raise ValueError(f"entry {e} is not of degree {degree}")
        self.entries = rows
        self.degree = degree
        self.size = n

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self):
        return type(self)([list(c) for c in zip(*self.entries)], self.degree)

    def is_symmetric(self):
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def scale(self, c):
        return type(self)([[e.scale(c) for e in r] for r in self.entries], self.degree)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def to_strings(self):
        return [[str(e) for e in r] for r in self.entries]

    def __str__(self):
        cells = self.to_strings()
        w = max(len(c) for r in cells for c in r)
        return "\n".join("  ".join(c.rjust(w) for c in r) for r in cells)


class LinMatrix(PolyMatrix):
    """A d x d matrix of linear forms; ``certificate`` holds c with det = c*F once verified."""

    def __init__(self, entries, degree=1, certificate=None):
        super().__init__(entries, 1)
        if degree != 1:
            raise ValueError("LinMatrix entries are linear")
        self.certificate = certificate

    @classmethod
    def parse(cls, rows):
        return cls([[parse_poly(e, degree=1) for e in r] for r in rows])

    def transpose(self):
        return LinMatrix([list(c) for c in zip(*self.entries)], certificate=self.certificate)

    def normalized(self):
        """Rescale so coefficients are coprime integers and the first nonzero entry leads positively."""
        coeffs = [c for r in self.entries for e in r for c in e.terms.values()]
        first = next(e for r in self.entries for e in r if not e.is_zero())
        f = normalizing_factor(coeffs, first.leading_coefficient())
        return LinMatrix([[e.scale(f) for e in r] for r in self.entries])


class FormMatrix(PolyMatrix):
    pass


# ---------------------------------------------------------------------------
# determinants


def det_poly(entries):
    """Determinant of a square matrix of forms by Laplace expansion memoised on column subsets."""
    n = len(entries)
    if n == 0:
        return HomogPoly.constant(1)
    dp = {(): HomogPoly.constant(1)}
    for i in range(n - 1, -1, -1):
        size = n - i
        new = {}
        for cols in combinations(range(n), size):
            acc = None
            for pos, j in enumerate(cols):
                e = entries[i][j]
                if e.is_zero():
                    continue
                rest = dp[cols[:pos] + cols[pos + 1:]]
                if rest.is_zero():
                    continue
                term = e * rest
                if pos % 2:
                    term = -term
                acc = term if acc is None else acc + term
            if acc is None:
                deg = sum(entries[k][0].degree for k in range(i, n))
                acc = HomogPoly.zero(deg)
            new[cols] = acc
        dp = new
    return dp[tuple(range(n))]


def det_leibniz(entries):
    """Permutation-sum determinant; the independent oracle for ``det_poly``."""
    n = len(entries)
    total = None
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = HomogPoly.constant(-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term = term * entries[i][j]
        total = term if total is None else total + term
    return total


def adjugate(M):
    """Cofactor transpose: ``adj[j][i] = (-1)^(i+j) det(minor_ij)``."""
    rows = M.entries if isinstance(M, PolyMatrix) else M
    n = len(rows)
    deg = (rows[0][0].degree) * (n - 1)
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            c = det_poly(minor) if n > 1 else HomogPoly.constant(1)
            if c.is_zero():
                c = HomogPoly.zero(deg)
            adj[j][i] = -c if (i + j) % 2 else c
    return FormMatrix(adj, deg)


def exact_divide(p, q):
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return HomogPoly.zero(p.degree - q.degree)
    try:
        return exact_divide_raw(p, q)
    except ArithmeticError as exc:
        raise NotDivisible(f"{q} does not divide {p}") from exc


def verify_detrep(C, M):
    """Return c with det(M) = c*F; raises if the determinant is not such a multiple."""
    if M.size != C.d:
        raise ValueError(f"matrix has size {M.size}, curve degree is {C.d}")
    det = det_poly(M.entries)
    if det.is_zero():
        raise ZeroDeterminant("determinant vanishes identically")
    lm = C.F.leading_monomial()
    c = det.terms.get(lm, Rat(0)) / C.F.terms[lm]
    if c == 0 or not (det - C.F.scale(c)).is_zero():
        raise NotProportional(f"det = {det} is not a multiple of F")
    M.certificate = c
    return c


def monic_det(C, M):
    """Rescale the first row so that det = F exactly."""
    c = verify_detrep(C, M)
    rows = [list(r) for r in M.entries]
    rows[0] = [e.scale(1 / c) for e in rows[0]]
    out = LinMatrix(rows)
    verify_detrep(C, out)
    return out


# ---------------------------------------------------------------------------
# the two algorithms


def _check_input(C, D):
    D = as_divisor(D)
    if D.degree != C.g - 1:
        raise WrongDegree(f"need a divisor of degree g-1 = {C.g - 1}, got {D.degree}")
    value = h0(C, D)
    if value:
        raise EffectiveDivisorError(value)
    return D


def _certify(C, rows):
    M = LinMatrix(rows).normalized()
    verify_detrep(C, M)
    return M


def algorithm1(C, D):
    D = _check_input(C, D)
    d = C.d
    W0 = rr_space(C, D, 1)
    if W0.h0 != d:
        raise InternalRankError(f"dim H0(L(1)) = {W0.h0}, expected {d}")
    W2 = rr_space(C, D, 2)
    # column (j, v): image of v_j (x) v in H0(L(2))
    cols = []
    for vj in W0.basis:
        for var in (X, Y, Z):
            coords = W2.coordinates(vj * var)
            if coords is None:
                raise InternalRankError("product of sections left H0(L(2))")
            cols.append(coords)
    mult = linalg.transpose(cols)
    kernel = linalg.nullspace(mult, 3 * d)
    if len(kernel) != d:
        raise InternalRankError(f"dim W1 = {len(kernel)}, expected {d}")
    kernel, _ = linalg.rref(kernel)
    rows = []
    for e in kernel:
        rows.append([HomogPoly.from_coeffs(e[3 * j:3 * j + 3], 1) for j in range(d)])
    return _certify(C, rows)


def dual_divisor(C, D):
    """Representative of L^v = Hom(L, O(d-3)): the divisor K - D."""
    return div_add(div_neg(as_divisor(D)), canonical_divisor(C))


def _pairing_matrix(C, vs, ws, denominator, extra):
    """Forms P_ij of degree d-1 with P_ij * denominator == v_i * w_j * extra mod F."""
    d = C.d
    basis = monomial_basis(d - 1)
    cols = [C.mod_f(HomogPoly({m: 1}, d - 1) * denominator).coeffs() for m in basis]
    A = linalg.transpose(cols)
    rhs = [C.mod_f(v * w * extra).coeffs() for v in vs for w in ws]
    aug = [list(row) + [r[k] for r in rhs] for k, row in enumerate(A)]
    red, pivots = linalg.rref(aug)
    nvar = len(basis)
    if pivots[-1] >= nvar or len(pivots) != nvar:
        raise InternalRankError("multiplication map target outside the span of F-reduced forms")
    sols = [[red[k][nvar + idx] for k in range(nvar)] for idx in range(len(rhs))]
    entries = [[HomogPoly.from_coeffs(sols[i * d + j], d - 1) for j in range(d)] for i in range(d)]
    return FormMatrix(entries, d - 1)


def _from_pairing(C, Ma):
    d = C.d
    adj = adjugate(Ma)
    Fp = C.F ** (d - 2)
    rows = []
    for r in adj.entries:
        row = []
        for e in r:
            try:
                row.append(exact_divide(e, Fp))
            except NotDivisible as exc:
                raise DivisionFailure(f"adjugate entry not divisible by F^{d - 2}") from exc
        rows.append(row)
    return rows


def pairing_matrix(C, D):
    """The matrix M_a = (m(v_i w_j)) of (d-1)-forms for L and its dual."""
    D = _check_input(C, D)
    d = C.d
    V = rr_space(C, D, 1)
    W = rr_space(C, dual_divisor(C, D), 1)
    if V.h0 != d or W.h0 != d:
        raise InternalRankError(f"dims {V.h0}, {W.h0}, expected {d}")
    extra = C.hyperplane ** C.canonical_twist
    return _pairing_matrix(C, V.basis, W.basis, V.denominator * W.denominator, extra)


def algorithm2(C, D):
    return _certify(C, _from_pairing(C, pairing_matrix(C, D)))


def symmetric_pairing_matrix(C, D):
    D = _check_input(C, D)
    d = C.d
    if not is_theta_characteristic(C, D):
        raise NotThetaCharacteristic("2D is not linearly equivalent to K")
    V = rr_space(C, D, 1)
    if V.h0 != d:
        raise InternalRankError(f"dim H0(L(1)) = {V.h0}, expected {d}")
    iso = rr_space(C, div_add(div_scale(D, -2), canonical_divisor(C)), 0)
    if iso.h0 != 1:
        raise InternalRankError(f"h0(K - 2D) = {iso.h0}, expected 1")
    h = iso.basis[0]
    extra = h * C.hyperplane ** C.canonical_twist
    denom = V.denominator * V.denominator * iso.denominator
    return _pairing_matrix(C, V.basis, V.basis, denom, extra)


def symmetric_rep(C, D):
    Ma = symmetric_pairing_matrix(C, D)
    if not Ma.is_symmetric():
        raise InternalRankError("pairing matrix is not symmetric")
    M = _certify(C, _from_pairing(C, Ma))
    if not M.is_symmetric():
        raise InternalRankError("output is not symmetric")
    return M
