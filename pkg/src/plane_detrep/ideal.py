"""Homogeneous ideals in Q[X, Y, Z] and the Buchberger kernel behind them.

The Groebner engine works on plain dicts ``{exponents: mpq}`` with any number
of variables, so the same code handles grevlex on X, Y, Z and the block order
(an extra variable T first, then grevlex) used to intersect ideals.
"""

import threading

from .poly import HomogPoly, Rat, grevlex_key, monomial_basis, num_monomials


class NotZeroDimensional(ValueError):
    pass


# ---------------------------------------------------------------------------
# raw polynomial kernel


def _elim_key(m):
    # T > everything, then grevlex on (X, Y, Z)
    return (m[0], m[1] + m[2] + m[3], -m[3], -m[2])


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Basis:
    """Working set of a Buchberger run: polys plus cached leading data."""

    def __init__(self, key):
        self.key = key
        self.polys = []
        self.lms = []
        self.lcs = []

    def add(self, p):
        m = max(p, key=self.key)
        c = p[m]
        if c != 1:
            inv = 1 / c
            p = {k: v * inv for k, v in p.items()}
        self.polys.append(p)
        self.lms.append(m)
        self.lcs.append(Rat(1))
        return len(self.polys) - 1


def _reduce(f, reducers, key, full=True):
    """Normal form of ``f`` modulo the monic polynomials ``reducers`` (list of (lm, poly))."""
    f = dict(f)
    r = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in reducers:
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                for gm, gc in g.items():
                    mm = tuple(x + y for x, y in zip(gm, q))
                    v = f.get(mm, 0) - c * gc
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            if not full:
                r.update(f)
                return r
            r[m] = c
            del f[m]
    return r


def _spoly(f, lf, g, lg):
    l = _lcm(lf, lg)
    qf = tuple(x - y for x, y in zip(l, lf))
    qg = tuple(x - y for x, y in zip(l, lg))
    out = {}
    for m, c in f.items():
        out[tuple(x + y for x, y in zip(m, qf))] = c
    for m, c in g.items():
        mm = tuple(x + y for x, y in zip(m, qg))
        v = out.get(mm, 0) - c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def buchberger(gens, key):
    """Reduced Groebner basis of the ideal generated by ``gens`` (raw dicts).

    Normal selection strategy (smallest lcm first, by degree then order)
    with Gebauer-Moeller pair elimination, which subsumes both Buchberger
    criteria. Output is monic and sorted by descending leading monomial.
    """
    B = _Basis(key)
    active = []
    pairs = []

    def sel_key(pair):
        l = pair[2]
        return (sum(l), key(l))

    def update(h):
        nonlocal active, pairs
        lh = B.lms[h]
        cand = [(h, g, _lcm(lh, B.lms[g])) for g in active]
        kept = []
        while cand:
            p = cand.pop(0)
            l = p[2]
            if _coprime(lh, B.lms[p[1]]) or not (
                any(_divides(q[2], l) for q in cand) or any(_divides(q[2], l) for q in kept)
            ):
                kept.append(p)
        new_pairs = [p for p in kept if not _coprime(lh, B.lms[p[1]])]
        old = []
        for (a, b, l) in pairs:
            if _divides(lh, l) and _lcm(B.lms[a], lh) != l and _lcm(B.lms[b], lh) != l:
                continue
            old.append((a, b, l))
        pairs = old + new_pairs
        active = [g for g in active if not _divides(lh, B.lms[g])] + [h]

    for g in gens:
        if g:
            r = _reduce(g, [(B.lms[i], B.polys[i]) for i in active], key)
            if r:
                update(B.add(r))

    while pairs:
        pairs.sort(key=sel_key)
        a, b, _ = pairs.pop(0)
        s = _spoly(B.polys[a], B.lms[a], B.polys[b], B.lms[b])
        if not s:
            continue
        r = _reduce(s, [(B.lms[i], B.polys[i]) for i in active], key)
        if r:
            update(B.add(r))

    return _interreduce([B.polys[i] for i in active], key)


def _interreduce(polys, key):
    lms = [max(p, key=key) for p in polys]
    keep = []
    for i, p in enumerate(polys):
        if any(j != i and _divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i) for j in range(len(polys))):
            continue
        keep.append(i)
    out = []
    for i in keep:
        others = [(lms[j], polys[j]) for j in keep if j != i]
        r = _reduce(polys[i], others, key)
        m = max(r, key=key)
        inv = 1 / r[m]
        out.append({k: v * inv for k, v in r.items()})
    out.sort(key=lambda p: key(max(p, key=key)), reverse=True)
    return out


def _exact_div(h, f, key):
    """Quotient of raw polynomials ``h / f``; raises if the remainder is nonzero."""
    h = dict(h)
    lf = max(f, key=key)
    cf = f[lf]
    q = {}
    while h:
        m = max(h, key=key)
        if not _divides(lf, m):
            raise ArithmeticError("polynomial division is not exact")
        c = h[m] / cf
        qm = tuple(x - y for x, y in zip(m, lf))
        q[qm] = c
        for gm, gc in f.items():
            mm = tuple(x + y for x, y in zip(gm, qm))
            v = h.get(mm, 0) - c * gc
            if v:
                h[mm] = v
            else:
                h.pop(mm, None)
    return q


# ---------------------------------------------------------------------------
# Ideal


def _to_poly(d):
    if not d:
        raise ValueError("zero polynomial has no degree here")
    return HomogPoly._raw(dict(d), sum(next(iter(d))))


class Ideal:
    """Homogeneous ideal of Q[X, Y, Z] with a lazily computed reduced Groebner basis."""

    def __init__(self, generators):
        gens = []
        for g in generators:
            if not isinstance(g, HomogPoly):
                raise TypeError("ideal generators must be HomogPoly")
            if g.terms:
                gens.append(g)
        self.generators = tuple(gens)
        self._gb = None
        self._lock = threading.Lock()

    def __getstate__(self):
        return {"generators": self.generators, "_gb": self._gb}

    def __setstate__(self, state):
        self.generators = state["generators"]
        self._gb = state["_gb"]
        self._lock = threading.Lock()

    @classmethod
    def unit(cls):
        return cls([HomogPoly.constant(1)])

    @classmethod
    def _from_gb(cls, gb):
        I = cls(gb)
        I._gb = tuple(gb)
        return I

    @property
    def groebner(self):
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    raw = buchberger([g.terms for g in self.generators], grevlex_key)
                    self._gb = tuple(_to_poly(p) for p in raw)
        return self._gb

    def _reducers(self):
        return [(g.leading_monomial(), g.terms) for g in self.groebner]

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.groebner]

    def is_unit(self):
        gb = self.groebner
        return len(gb) == 1 and gb[0].degree == 0

    def is_zero(self):
        return not self.generators

    def contains(self, p):
        return normal_form(p, self).is_zero()

    def max_degree(self):
        return max((g.degree for g in self.groebner), default=0)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.groebner == other.groebner

    def __hash__(self):
        return hash(self.groebner)

    def __repr__(self):
        return "Ideal([" + ", ".join(str(g) for g in self.generators) + "])"


def groebner_basis(I):
    return list(I.groebner)


def normal_form(p, I):
    if not p.terms:
        return p
    r = _reduce(p.terms, I._reducers(), grevlex_key)
    return HomogPoly._raw(r, p.degree)


def ideal_sum(I, J):
    return Ideal(I.generators + J.generators)


def ideal_product(I, J):
    a = I.groebner if I._gb is not None else I.generators
    b = J.groebner if J._gb is not None else J.generators
    return Ideal([f * g for f in a for g in b])


def _lift(p):
    return {(0,) + m: c for m, c in p.terms.items()}


def _elim_intersection(gens_i, gens_j):
    """Raw generators of I ∩ J via T*I + (1 - T)*J, eliminating T."""
    gens = []
    for g in gens_i:
        gens.append({(e[0] + 1,) + e[1:]: c for e, c in _lift(g).items()})
    for g in gens_j:
        d = _lift(g)
        h = dict(d)
        for e, c in d.items():
            h[(e[0] + 1,) + e[1:]] = -c
        gens.append(h)
    gb = buchberger(gens, _elim_key)
    return [{e[1:]: c for e, c in p.items()} for p in gb if all(e[0] == 0 for e in p)]


def ideal_intersection(I, J):
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    raw = _elim_intersection(I.groebner, J.groebner)
    return Ideal([_to_poly(p) for p in raw])


def _colon_principal(I, f):
    if f.degree == 0:
        return I
    if I.is_unit() or I.contains(f):
        return Ideal.unit()
    raw = _elim_intersection(I.groebner, [f])
    return Ideal([_to_poly(_exact_div(p, f.terms, grevlex_key)) for p in raw])


def ideal_colon(I, J):
    """The ideal quotient ``I : J = {p : p*J ⊆ I}``, as ∩ over f in J of (I ∩ (f))/f."""
    gens = J.groebner
    if not gens:
        return Ideal.unit()
    result = None
    for f in gens:
        Q = _colon_principal(I, f)
        result = Q if result is None else ideal_intersection(result, Q)
        if result == I:
            # I ⊆ I:f for every f, so the intersection cannot drop below I
            break
    return result


IRRELEVANT = None


def irrelevant_ideal():
    global IRRELEVANT
    if IRRELEVANT is None:
        IRRELEVANT = Ideal([HomogPoly.var(0), HomogPoly.var(1), HomogPoly.var(2)])
    return IRRELEVANT


def saturate(I):
    """``I : (X, Y, Z)^∞`` by iterated colon until the reduced basis stabilises."""
    m = irrelevant_ideal()
    cur = Ideal._from_gb(I.groebner)
    while True:
        if cur.is_unit():
            return cur
        nxt = ideal_colon(cur, m)
        if nxt.groebner == cur.groebner:
            return cur
        cur = nxt


def _standard_count(lms, n):
    count = 0
    for m in monomial_basis(n):
        if not any(_divides(l, m) for l in lms):
            count += 1
    return count


def graded_dim(I, n):
    """Returns ``(dim I_n, dim (S/I)_n)``."""
    q = _standard_count(I.leading_monomials(), n)
    return num_monomials(n) - q, q


def graded_piece(I, n):
    """A basis of ``I_n``: one element per leading monomial of degree ``n``."""
    gb = I.groebner
    out = []
    for m in monomial_basis(n):
        for g in gb:
            lm = g.leading_monomial()
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                out.append(g * HomogPoly._raw({q: Rat(1)}, sum(q)))
                break
    return out


def degree_of_scheme(I):
    """Stable value of the Hilbert function of a saturated 0-dimensional ideal."""
    lms = I.leading_monomials()
    if I.is_unit():
        return 0
    top = max(sum(m) for m in lms)
    n = top
    prev = _standard_count(lms, n)
    while n <= 2 * top + 4:
        n += 1
        cur = _standard_count(lms, n)
        if cur == prev:
            return cur
        prev = cur
    raise NotZeroDimensional("Hilbert function does not stabilise: not a 0-dimensional scheme")


def exact_divide_raw(p, q):
    return HomogPoly._raw(_exact_div(p.terms, q.terms, grevlex_key), p.degree - q.degree)
