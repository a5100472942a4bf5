"""Exact linear algebra over the rationals.

Elimination is fraction-free (Bareiss): rows are cleared to integers and every
division performed during the forward sweep is exact. Rational numbers only
reappear when the echelon form is normalised to RREF.
"""

from math import lcm

from gmpy2 import mpq, mpz

from .poly import Rat


def _integer_rows(rows):
    out = []
    for r in rows:
        den = 1
        for v in r:
            den = lcm(den, int(mpq(v).denominator))
        out.append([mpz(mpq(v) * den) for v in r])
    return out


def ff_echelon(rows):
    """Fraction-free row echelon form.

    Returns ``(matrix, pivots)`` where ``matrix`` holds integer rows and
    ``pivots`` lists the pivot column of each nonzero leading row.
    """
    a = _integer_rows(rows)
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    prev = mpz(1)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        row_r = a[r]
        for i in range(r + 1, nrows):
            row_i = a[i]
            f = row_i[c]
            if f == 0:
                for j in range(c + 1, ncols):
                    row_i[j] = (piv * row_i[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
            row_i[c] = mpz(0)
        # rows above the pivot keep their old scale; only r+1.. are updated
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def rref(rows):
    """Reduced row echelon form of a rational matrix; returns ``(nonzero_rows, pivots)``."""
    a, pivots = ff_echelon(rows)
    out = [[mpq(v) for v in a[i]] for i in range(len(pivots))]
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        row = out[k]
        inv = 1 / row[c]
        for j in range(len(row)):
            if row[j]:
                row[j] *= inv
        for i in range(k):
            f = out[i][c]
            if f:
                ri = out[i]
                for j in range(c, len(ri)):
                    if row[j]:
                        ri[j] -= f * row[j]
    return out, pivots


def rank(rows):
    return len(ff_echelon(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of the right kernel ``{x : A x = 0}``, one vector per free column, in RREF order."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        red, pivots = [], []
    else:
        red, pivots = rref(rows)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Rat(0)] * ncols
        v[f] = Rat(1)
        for k, c in enumerate(pivots):
            v[c] = -red[k][f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """Solve ``A x = b`` exactly; returns one solution (free variables 0) or ``None``."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Rat(0)] * ncols
    for k, c in enumerate(pivots):
        x[c] = red[k][ncols]
    return x


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(r, c)), Rat(0)) for c in bt] for r in a]


def det(rows):
    """Determinant of a square rational matrix (fraction-free)."""
    n = len(rows)
    if n == 0:
        return Rat(1)
    a = _integer_rows(rows)
    scale = Rat(1)
    for r in rows:
        den = 1
        for v in r:
            den = lcm(den, int(mpq(v).denominator))
        scale /= den
    sign = 1
    prev = mpz(1)
    for k in range(n - 1):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            return Rat(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = mpz(0)
        prev = a[k][k]
    return sign * scale * a[n - 1][n - 1]
