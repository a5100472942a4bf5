"""Exact homogeneous polynomials in X, Y, Z over the rationals.

Monomials are exponent triples ``(a, b, c)`` standing for ``X^a Y^b Z^c``.
They are ordered by graded reverse lexicographic order with X > Y > Z; this
order is global and everything downstream (Groebner bases, basis selection,
printing) inherits it.
"""

import re

from gmpy2 import mpq

Rat = mpq
VARS = ("X", "Y", "Z")


class PolyParseError(ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class InhomogeneousError(PolyParseError):
    def __init__(self, deg1, deg2):
        super().__init__(f"inhomogeneous polynomial: terms of degree {deg1} and {deg2}")
        self.degrees = (deg1, deg2)


def grevlex_key(m):
    """Sort key realising grevlex (X > Y > Z) on exponent triples: larger key = larger monomial."""
    return (m[0] + m[1] + m[2], -m[2], -m[1])


def monomial_basis(n):
    """All monomials of degree ``n`` in descending grevlex order."""
    if n < 0:
        return []
    out = []
    for c in range(n + 1):
        for b in range(n - c + 1):
            out.append((n - b - c, b, c))
    return out


def num_monomials(n):
    return (n + 1) * (n + 2) // 2 if n >= 0 else 0


def _mono_str(m):
    parts = []
    for v, e in zip(VARS, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


class HomogPoly:
    """A homogeneous polynomial with a declared degree.

    ``terms`` maps exponent triples to nonzero rationals. The zero polynomial
    keeps its degree so graded linear maps stay well typed. Instances are
    treated as immutable.
    """

    __slots__ = ("degree", "terms", "_hash")

    def __init__(self, terms=None, degree=None):
        terms = {m: Rat(c) for m, c in (terms or {}).items() if c != 0}
        if degree is None:
            if not terms:
                raise ValueError("degree required for the zero polynomial")
            degree = sum(next(iter(terms)))
        for m in terms:
            if len(m) != 3 or sum(m) != degree or min(m) < 0:
                raise ValueError(f"monomial {m} does not have degree {degree}")
        self.degree = degree
        self.terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, terms, degree):
        p = cls.__new__(cls)
        p.degree = degree
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, degree):
        return cls._raw({}, degree)

    @classmethod
    def constant(cls, c):
        return cls({(0, 0, 0): c}, 0)

    @classmethod
    def var(cls, i):
        m = [0, 0, 0]
        m[i] = 1
        return cls._raw({tuple(m): Rat(1)}, 1)

    @classmethod
    def from_coeffs(cls, coeffs, degree):
        """Build from a coefficient vector indexed by ``monomial_basis(degree)``."""
        return cls({m: c for m, c in zip(monomial_basis(degree), coeffs) if c != 0}, degree)

    def coeffs(self):
        return [self.terms.get(m, Rat(0)) for m in monomial_basis(self.degree)]

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_monomial(self):
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def __eq__(self, other):
        if isinstance(other, HomogPoly):
            if not self.terms and not other.terms:
                return True
            return self.degree == other.degree and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree if self.terms else -1, frozenset(self.terms.items())))
        return self._hash

    def __neg__(self):
        return HomogPoly._raw({m: -c for m, c in self.terms.items()}, self.degree)

    def _check_deg(self, other):
        if self.degree != other.degree:
            if not self.terms:
                return other.degree
            if not other.terms:
                return self.degree
            raise ValueError(f"cannot add polynomials of degree {self.degree} and {other.degree}")
        return self.degree

    def __add__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        deg = self._check_deg(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return HomogPoly._raw(t, deg)

    def __sub__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = Rat(c)
        if c == 0:
            return HomogPoly.zero(self.degree)
        return HomogPoly._raw({m: c * v for m, v in self.terms.items()}, self.degree)

    def __mul__(self, other):
        if isinstance(other, HomogPoly):
            return poly_mul(self, other)
        if isinstance(other, (int, type(Rat(0)))) or hasattr(other, "numerator"):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n):
        result = HomogPoly.constant(1)
        for _ in range(n):
            result = poly_mul(result, self)
        return result

    def derivative(self, i):
        t = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                t[tuple(mm)] = c * m[i]
        return HomogPoly._raw(t, max(self.degree - 1, 0))

    def evaluate(self, point):
        x, y, z = (Rat(v) for v in point)
        return sum((c * x ** m[0] * y ** m[1] * z ** m[2] for m, c in self.terms.items()), Rat(0))

    def substitute(self, forms):
        """Compose with three linear forms: returns p(forms[0], forms[1], forms[2])."""
        result = HomogPoly.zero(self.degree)
        cache = {}

        def power(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = forms[i] ** e
            return cache[(i, e)]

        for m, c in self.terms.items():
            term = power(0, m[0]) * power(1, m[1]) * power(2, m[2])
            result = result + term.scale(c)
        return result

    def content_normalized(self):
        """Scale to integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        return self.scale(normalizing_factor(self.terms.values(), self.leading_coefficient()))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            ms = _mono_str(m)
            if not ms:
                body = str(a)
            elif a == 1:
                body = ms
            else:
                body = f"{a}*{ms}"
            if i == 0:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"HomogPoly({str(self)!r}, degree={self.degree})"


def normalizing_factor(values, lead):
    """Rational factor making ``values`` coprime integers with ``lead`` positive."""
    from math import gcd, lcm

    den = 1
    for v in values:
        den = lcm(den, int(Rat(v).denominator))
    g = 0
    for v in values:
        g = gcd(g, int(Rat(v) * den))
    f = Rat(den, g)
    return -f if lead < 0 else f


def poly_mul(p, q):
    t = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            v = t.get(m, 0) + c1 * c2
            if v:
                t[m] = v
            else:
                del t[m]
    return HomogPoly._raw(t, p.degree + q.degree)


X = HomogPoly.var(0)
Y = HomogPoly.var(1)
Z = HomogPoly.var(2)


_TOKEN = re.compile(r"\s*(?:(\d+)|([XYZ])|(\^)|(\*)|(/)|([+-]))")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            stripped = len(text) - len(text[pos:].lstrip())
            raise PolyParseError(f"unexpected character {text[stripped]!r}", stripped)
        start = mt.start(mt.lastindex)
        kind = ("int", "var", "^", "*", "/", "sign")[mt.lastindex - 1]
        tokens.append((kind, mt.group(mt.lastindex), start))
        pos = mt.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_poly(text, degree=None):
    """Parse a polynomial such as ``"X^3*Y + Y^3*Z + Z^3*X"``.

    Coefficients may be integers or fractions ``p/q``; ``*`` is optional.
    ``degree`` is only consulted when the input is identically zero and has
    no monomial to infer it from.
    """
    tokens = _tokenize(text)
    i = 0

    def peek():
        return tokens[i]

    terms = {}
    term_degrees = []
    first = True
    while True:
        sign = 1
        kind, val, pos = peek()
        if kind == "sign":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise PolyParseError(f"expected '+' or '-', found {val or 'end of input'!r}", pos)
        first = False

        coeff = None
        kind, val, pos = peek()
        if kind == "int":
            coeff = Rat(int(val))
            i += 1
            if peek()[0] == "/":
                i += 1
                kind, val, pos = peek()
                if kind != "int":
                    raise PolyParseError("expected denominator", pos)
                if int(val) == 0:
                    raise PolyParseError("zero denominator", pos)
                coeff /= int(val)
                i += 1
            if peek()[0] == "*":
                i += 1
                if peek()[0] != "var":
                    raise PolyParseError("expected variable after '*'", peek()[2])
        exps = [0, 0, 0]
        nfactors = 0
        while peek()[0] == "var":
            _, v, _ = peek()
            i += 1
            e = 1
            if peek()[0] == "^":
                i += 1
                kind, val, pos = peek()
                if kind != "int":
                    raise PolyParseError("expected exponent", pos)
                e = int(val)
                i += 1
            exps["XYZ".index(v)] += e
            nfactors += 1
            if peek()[0] == "*":
                i += 1
                if peek()[0] != "var":
                    raise PolyParseError("expected variable after '*'", peek()[2])
        if coeff is None and nfactors == 0:
            kind, val, pos = peek()
            raise PolyParseError(f"expected term, found {val or 'end of input'!r}", pos)
        if coeff is None:
            coeff = Rat(1)
        m = tuple(exps)
        term_degrees.append(sum(m))
        v = terms.get(m, 0) + sign * coeff
        if v:
            terms[m] = v
        else:
            terms.pop(m, None)
        kind, val, pos = peek()
        if kind == "end":
            break
        if kind != "sign":
            raise PolyParseError(f"unexpected {val!r}", pos)

    for dg in term_degrees[1:]:
        if dg != term_degrees[0]:
            raise InhomogeneousError(term_degrees[0], dg)
    deg = term_degrees[0]
    if not terms and degree is not None and deg == 0:
        deg = degree
    return HomogPoly._raw(terms, deg)
