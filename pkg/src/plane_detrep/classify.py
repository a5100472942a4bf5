"""Catalogs of determinantal representations over a supplied Mordell-Weil group.

Degree g-1 classes are enumerated as ``sum a_i * D_i + base`` over the
supplied cyclic generators. Classes are carried in reduced form ``E - t*H``
so the ideals stay small however large the multiples get.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from . import linalg
from .curve import Divisor, EffectiveDivisor, as_divisor, div_add
from .detrep import LinMatrix, adjugate, algorithm1, algorithm2, symmetric_rep, verify_detrep
from .ideal import Ideal
from .poly import HomogPoly, Rat
from .rr import (
    h0,
    is_principal,
    is_theta_characteristic,
    linearly_equivalent,
    reduce_divisor,
)

log = logging.getLogger(__name__)


class BadPresentation(ValueError):
    pass


class NotAnAutomorphism(ValueError):
    pass


class DegenerateAdjugate(RuntimeError):
    pass


@dataclass
class MWPresentation:
    generators: list  # [(Divisor of degree 0, order)]
    base: Divisor
    names: list = field(default_factory=list)


@dataclass
class ClassEntry:
    label: tuple
    divisor: Divisor
    effective: bool
    theta: bool
    matrix: Optional[LinMatrix] = None


@dataclass
class ClassCatalog:
    curve: object
    entries: list

    def noneffective(self):
        return [e for e in self.entries if not e.effective]

    def matrices(self):
        return [e.matrix for e in self.entries if e.matrix is not None]


class ProjSubstitution:
    """An invertible 3x3 rational matrix acting on points: ``P -> A P``."""

    def __init__(self, matrix):
        self.matrix = [[Rat(v) for v in r] for r in matrix]
        if linalg.det(self.matrix) == 0:
            raise ValueError("substitution matrix is singular")

    @classmethod
    def from_forms(cls, forms):
        """From the images of (X, Y, Z), e.g. ``(Y, Z, X)`` for the cyclic shift."""
        return cls([f.coeffs() for f in forms])

    def forms(self):
        return [HomogPoly.from_coeffs(r, 1) for r in self.matrix]

    def inverse(self):
        n = 3
        aug = [r + [Rat(int(i == j)) for j in range(n)] for i, r in enumerate(self.matrix)]
        red, _ = linalg.rref(aug)
        return ProjSubstitution([r[n:] for r in red])

    def compose(self, other):
        """``self ∘ other``: apply ``other`` first."""
        return ProjSubstitution(linalg.mat_mul(self.matrix, other.matrix))

    def apply(self, p):
        """``p ∘ self`` for a form p."""
        return p.substitute(self.forms())


def _check_automorphism(C, s):
    G = s.apply(C.F)
    lm = C.F.leading_monomial()
    c = G.terms.get(lm, Rat(0)) / C.F.terms[lm]
    if c == 0 or not (G - C.F.scale(c)).is_zero():
        raise NotAnAutomorphism("substitution does not preserve the curve")


def _move_effective(C, s_inv, E):
    if E.is_zero():
        return E
    moved = EffectiveDivisor.from_ideal(C, Ideal([s_inv.apply(g) for g in E.ideal.groebner]))
    if moved.degree != E.degree:
        raise AssertionError("degree changed under an automorphism")
    return moved


def pullback_divisor(C, s, D):
    """Image of D under the point map of s (ideals are pulled back along s^-1)."""
    _check_automorphism(C, s)
    D = as_divisor(D)
    inv = s.inverse()
    return Divisor(_move_effective(C, inv, D.plus), _move_effective(C, inv, D.minus))


def pullback_matrix(s, M):
    """Entrywise substitution ``M ∘ s``; e.g. the cyclic shift takes N_{X,Y,Z} to N_{Y,Z,X}."""
    return LinMatrix([[s.apply(e) for e in r] for r in M.entries])


# ---------------------------------------------------------------------------
# presentation checks and enumeration


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def multiples(C, D, count):
    """Reduced representatives of D, 2D, ..., count*D."""
    R, _ = reduce_divisor(C, D)
    out = [R]
    for _ in range(count - 1):
        nxt, _ = reduce_divisor(C, div_add(out[-1], R))
        out.append(nxt)
    return out


def element_order_check(C, D, order):
    """True iff D has exactly the given order in the class group."""
    mult = multiples(C, D, order)
    if not is_principal(C, mult[order - 1]):
        return False
    return not any(is_principal(C, mult[order // p - 1]) for p in _prime_factors(order))


def verify_presentation(C, mw):
    if as_divisor(mw.base).degree != C.g - 1:
        raise BadPresentation(f"base divisor must have degree g-1 = {C.g - 1}")
    for i, (D, order) in enumerate(mw.generators):
        if as_divisor(D).degree != 0:
            raise BadPresentation(f"generator {i} does not have degree 0")
        if order < 1 or not element_order_check(C, D, order):
            raise BadPresentation(f"generator {i} does not have order {order}")


def class_representatives(C, mw):
    """Reduced divisor for every label, in lexicographic label order."""
    gens = [reduce_divisor(C, D)[0] for D, _ in mw.generators]
    orders = [o for _, o in mw.generators]
    reps = {}
    for label in product(*(range(o) for o in orders)):
        k = max((i for i, a in enumerate(label) if a), default=None)
        if k is None:
            reps[label] = reduce_divisor(C, mw.base)[0]
            continue
        prev = label[:k] + (label[k] - 1,) + label[k + 1:]
        reps[label] = reduce_divisor(C, div_add(reps[prev], gens[k]))[0]
    return reps


def _build_entry(args):
    C, label, D, alg, symmetric_theta = args
    effective = h0(C, D) > 0
    theta = is_theta_characteristic(C, D)
    matrix = None
    if not effective:
        if theta and symmetric_theta:
            matrix = symmetric_rep(C, D)
        elif alg == 2:
            matrix = algorithm2(C, D)
        else:
            matrix = algorithm1(C, D)
    return ClassEntry(label, D, effective, theta, matrix)


def worker_count():
    raw = os.environ.get("DETREP_THREADS")
    if raw is None:
        return 1
    n = int(raw)
    if n < 1:
        raise ValueError("DETREP_THREADS must be a positive integer")
    return n


def enumerate_classes(C, mw, alg=1, symmetric_theta=True, workers=None, verify=True):
    if verify:
        verify_presentation(C, mw)
    reps = class_representatives(C, mw)
    jobs = [(C, label, D, alg, symmetric_theta) for label, D in reps.items()]
    workers = worker_count() if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_build_entry, jobs))
    else:
        entries = [_build_entry(j) for j in jobs]
    entries.sort(key=lambda e: e.label)
    return ClassCatalog(C, entries)


# ---------------------------------------------------------------------------
# equivalence of representations


def extract_class(C, M):
    """Effective divisor cut by the first adjugate row not vanishing on C.

    Its linear equivalence class depends only on the equivalence class of M
    (it is the class of L(1) for the bundle L that M represents).
    """
    if M.certificate is None:
        verify_detrep(C, M)
    adj = adjugate(M)
    for row in adj.entries:
        if any(not C.on_curve(e) for e in row):
            return EffectiveDivisor.from_ideal(C, Ideal([e for e in row if not e.is_zero()]))
    raise DegenerateAdjugate("every adjugate row vanishes on the curve")


def equivalent_reps(C, M1, M2):
    E1, E2 = extract_class(C, M1), extract_class(C, M2)
    return linearly_equivalent(C, Divisor(E1), Divisor(E2))


def pairwise_inequivalent(C, matrices):
    """Return the list of equivalent index pairs (empty when all are distinct)."""
    ext = [Divisor(extract_class(C, M)) for M in matrices]
    clashes = []
    for i in range(len(ext)):
        for j in range(i + 1, len(ext)):
            if linearly_equivalent(C, ext[i], ext[j]):
                clashes.append((i, j))
    return clashes


def match_to_catalog(C, matrices, catalog_matrices):
    """For each matrix, the indices of catalog matrices equivalent to it."""
    ext_cat = [Divisor(extract_class(C, M)) for M in catalog_matrices]
    out = []
    for M in matrices:
        E = Divisor(extract_class(C, M))
        out.append([j for j, F in enumerate(ext_cat) if linearly_equivalent(C, E, F)])
    return out


def explicit_equivalence(M1, M2):
    """Constant invertible (A, B) with ``M2 = A M1 B``, or None.

    Pure linear algebra: solve ``A M1 = M2 B'`` for the pair (A, B') and
    invert B'. Independent of the divisor machinery, so it serves as a cross
    check on ``equivalent_reps``.
    """
    n = M1.size
    # unknowns: A (n*n) then B' (n*n); one equation per (i, j, variable)
    rows = []
    for i in range(n):
        for j in range(n):
            for v in range(3):
                mono = tuple(int(k == v) for k in range(3))
                row = [Rat(0)] * (2 * n * n)
                for k in range(n):
                    row[i * n + k] += M1.entries[k][j].terms.get(mono, 0)
                    row[n * n + k * n + j] -= M2.entries[i][k].terms.get(mono, 0)
                rows.append(row)
    sols = linalg.nullspace(rows, 2 * n * n)
    if not sols:
        return None
    for s in sols + [[sum(c) for c in zip(*sols)]]:
        A = [s[i * n:(i + 1) * n] for i in range(n)]
        Bp = [s[n * n + i * n:n * n + (i + 1) * n] for i in range(n)]
        if linalg.det(A) != 0 and linalg.det(Bp) != 0:
            aug = [r + [Rat(int(i == j)) for j in range(n)] for i, r in enumerate(Bp)]
            red, _ = linalg.rref(aug)
            return A, [r[n:] for r in red]
    return None
