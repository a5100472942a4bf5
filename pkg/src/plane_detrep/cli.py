"""Command line front end: ``detrep {verify,represent,classify,equiv}``.

Curve files are INI-style::

    [curve]
    F = X^3*Y + Y^3*Z + Z^3*X

    [points]
    P1 = 1, 0, 0

    [pairs]
    Q = X + Y + Z; X^2 + X*Y + Y^2

    [divisors]
    D = P2 + P3 - Q
    theta = 2*D + 2*P1

    [mw]
    generators = D:14
    base = 2*P1

Divisor expressions combine earlier names with integer coefficients; ``H``
is the hyperplane divisor, ``K`` the canonical divisor and ``0`` the zero
divisor. Matrix files hold one row per line with comma separated entries.

Exit codes: 0 success or equivalent, 1 inequivalent, 2 verification
failure, 3 effective divisor, 4 usage or format error.
"""

import argparse
import configparser
import json
import logging
import re
import sys
from dataclasses import dataclass, field

from . import classify as cl
from .curve import (
    Divisor,
    EffectiveDivisor,
    NotSmooth,
    PointNotOnCurve,
    conjugate_pair_divisor,
    div_add,
    div_scale,
    new_curve,
    point_divisor,
)
from .detrep import (
    EffectiveDivisorError,
    LinMatrix,
    NotProportional,
    NotThetaCharacteristic,
    ZeroDeterminant,
    algorithm1,
    algorithm2,
    monic_det,
    symmetric_rep,
    verify_detrep,
)
from .ideal import NotZeroDimensional
from .poly import PolyParseError, parse_poly
from .rr import WrongDegree, canonical_divisor

log = logging.getLogger("plane_detrep")

EXIT_OK, EXIT_INEQUIVALENT, EXIT_VERIFY, EXIT_EFFECTIVE, EXIT_USAGE = 0, 1, 2, 3, 4


class FormatError(ValueError):
    pass


@dataclass
class CurveFile:
    curve: object
    name: str
    points: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    divisors: dict = field(default_factory=dict)
    mw: object = None

    def divisor(self, name):
        if name in self.divisors:
            return self.divisors[name]
        return parse_divisor_expr(name, self)


_TERM = re.compile(r"^(?:(\d+)\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_]*)$")


def parse_divisor_expr(text, cf):
    """Evaluate ``2*D + 2*P1 - Q`` style expressions against the names known so far."""
    src = text.strip()
    if not src:
        raise FormatError("empty divisor expression")
    total = None
    sign = 1
    expect_term = True
    for tok in re.findall(r"[+-]|[^+-]+", src):
        tok = tok.strip()
        if not tok:
            continue
        if tok in ("+", "-"):
            if tok == "-":
                sign = -sign
            expect_term = True
            continue
        if not expect_term:
            raise FormatError(f"missing operator in {text!r}")
        term = _lookup(tok, cf)
        if term is None:
            m = _TERM.match(tok)
            if not m:
                raise FormatError(f"bad divisor term {tok!r} in {text!r}")
            base = _lookup(m.group(2), cf)
            if base is None:
                raise FormatError(f"unknown name {m.group(2)!r} in {text!r}")
            coeff = int(m.group(1) or 1)
            term = div_scale(base, coeff) if coeff != 1 else base
        if sign < 0:
            term = div_scale(term, -1)
        total = term if total is None else div_add(total, term)
        sign = 1
        expect_term = False
    if total is None or expect_term:
        raise FormatError(f"incomplete divisor expression {text!r}")
    return total


def _lookup(name, cf):
    C = cf.curve
    if name == "0":
        return Divisor(EffectiveDivisor.zero(C))
    for table in (cf.divisors, cf.points, cf.pairs):
        if name in table:
            v = table[name]
            return v if isinstance(v, Divisor) else Divisor(v)
    if name == "H":
        return Divisor(C.H)
    if name == "K":
        return canonical_divisor(C)
    return None


def load_curve_file(path):
    parser = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#", ";"),
                                       inline_comment_prefixes=("#",), interpolation=None)
    parser.optionxform = str
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if not parser.has_section("curve") or "F" not in parser["curve"]:
        raise FormatError(f"{path}: missing [curve] section with F = ...")
    try:
        F = parse_poly(parser["curve"]["F"])
        hyper = parser["curve"].get("hyperplane")
        C = new_curve(F, parse_poly(hyper)) if hyper else new_curve(F)
    except (PolyParseError, NotSmooth, ValueError) as exc:
        raise FormatError(f"{path}: [curve]: {exc}") from exc
    cf = CurveFile(C, parser["curve"].get("name", str(F)))

    def section(name):
        return parser[name].items() if parser.has_section(name) else []

    for key, val in section("points"):
        try:
            P = tuple(int(v) for v in val.replace(":", ",").split(","))
            if len(P) != 3:
                raise ValueError("need three coordinates")
            cf.points[key] = point_divisor(C, P)
        except (ValueError, PointNotOnCurve) as exc:
            raise FormatError(f"{path}: [points] {key}: {exc}") from exc
    for key, val in section("pairs"):
        try:
            forms = [parse_poly(s) for s in val.split(";") if s.strip()]
            cf.pairs[key] = conjugate_pair_divisor(C, forms)
        except (PolyParseError, NotZeroDimensional, ValueError) as exc:
            raise FormatError(f"{path}: [pairs] {key}: {exc}") from exc
    for key, val in section("divisors"):
        cf.divisors[key] = parse_divisor_expr(val, cf)
    if parser.has_section("mw"):
        mw = parser["mw"]
        gens, names = [], []
        for item in mw.get("generators", "").split(","):
            if not item.strip():
                continue
            try:
                name, order = item.split(":")
                gens.append((cf.divisor(name.strip()), int(order)))
                names.append(name.strip())
            except ValueError as exc:
                raise FormatError(f"{path}: [mw] bad generator {item!r}") from exc
        if "base" not in mw:
            raise FormatError(f"{path}: [mw] needs a base divisor")
        cf.mw = cl.MWPresentation(gens, cf.divisor(mw["base"].strip()), names)
    return cf


def parse_matrix_text(text):
    rows = []
    size = None
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"size\s*[:=]\s*(\d+)$", line)
        if m:
            size = int(m.group(1))
            continue
        rows.append([e.strip() for e in line.split(",")])
    if not rows:
        raise FormatError("matrix file has no rows")
    if size is not None and len(rows) != size:
        raise FormatError(f"declared size {size} but found {len(rows)} rows")
    for i, r in enumerate(rows):
        if len(r) != len(rows):
            raise FormatError(f"row {i + 1} has {len(r)} entries, expected {len(rows)}")
    try:
        return LinMatrix.parse(rows)
    except PolyParseError as exc:
        raise FormatError(str(exc)) from exc
    except ValueError as exc:
        raise FormatError(f"matrix entries must be linear forms: {exc}") from exc


def load_matrix_file(path):
    try:
        with open(path) as fh:
            return parse_matrix_text(fh.read())
    except OSError as exc:
        raise FormatError(str(exc)) from exc


def format_matrix(M):
    cells = M.to_strings()
    w = max(len(c) for r in cells for c in r)
    return "\n".join(", ".join(c.rjust(w) for c in r) for r in cells)


def rat_str(c):
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args):
    cf = load_curve_file(args.curve)
    M = load_matrix_file(args.matrix)
    try:
        c = verify_detrep(cf.curve, M)
    except (NotProportional, ZeroDeterminant) as exc:
        print(f"verification failed: {type(exc).__name__}: {exc}")
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"verification failed: {exc}")
        return EXIT_VERIFY
    print(f"c = {c}")
    print(f"symmetric = {'true' if M.is_symmetric() else 'false'}")
    return EXIT_OK


def cmd_represent(args):
    cf = load_curve_file(args.curve)
    C = cf.curve
    try:
        D = cf.divisor(args.divisor)
    except FormatError as exc:
        raise FormatError(f"unknown divisor {args.divisor!r}: {exc}") from exc
    try:
        if args.symmetric:
            M = symmetric_rep(C, D)
            alg = "symmetric"
        elif args.alg == 2:
            M = algorithm2(C, D)
            alg = "2"
        else:
            M = algorithm1(C, D)
            alg = "1"
    except EffectiveDivisorError as exc:
        print(f"divisor {args.divisor} is effective: h0 = {exc.h0}")
        return EXIT_EFFECTIVE
    except (WrongDegree, NotThetaCharacteristic) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.monic_det:
        M = monic_det(C, M)
    try:
        c = verify_detrep(C, M)
    except (NotProportional, ZeroDeterminant) as exc:
        print(f"verification failed: {exc}")
        return EXIT_VERIFY
    if args.json:
        out = {
            "curve": cf.name,
            "d": C.d,
            "divisor": args.divisor,
            "algorithm": alg,
            "matrix": M.to_strings(),
            "det_constant": rat_str(c),
            "symmetric": M.is_symmetric(),
        }
        print(json.dumps(out, indent=2))
    else:
        print(f"# {cf.name}: divisor {args.divisor}, algorithm {alg}")
        print(format_matrix(M))
        print(f"# det = ({c}) * F")
    return EXIT_OK


def cmd_classify(args):
    cf = load_curve_file(args.curve)
    if cf.mw is None:
        print("error: curve file has no [mw] section", file=sys.stderr)
        return EXIT_USAGE
    C = cf.curve
    try:
        cat = cl.enumerate_classes(C, cf.mw, alg=args.alg)
    except cl.BadPresentation as exc:
        print(f"error: bad Mordell-Weil presentation: {exc}", file=sys.stderr)
        return EXIT_USAGE
    mats = cat.matrices()
    clashes = cl.pairwise_inequivalent(C, mats)
    if args.json:
        out = {
            "curve": cf.name,
            "d": C.d,
            "classes": [
                {
                    "label": list(e.label),
                    "effective": e.effective,
                    "theta": e.theta,
                    "matrix": e.matrix.to_strings() if e.matrix is not None else None,
                    "det_constant": rat_str(e.matrix.certificate) if e.matrix is not None else None,
                }
                for e in cat.entries
            ],
        }
        print(json.dumps(out, indent=2))
    else:
        names = cf.mw.names or [f"g{i}" for i in range(len(cf.mw.generators))]
        print(f"# {cf.name}: d = {C.d}, g = {C.g}, generators {', '.join(names)}")
        for e in cat.entries:
            flags = "effective" if e.effective else "non-effective"
            if e.theta:
                flags += ", theta"
            print(f"[{', '.join(map(str, e.label))}] {flags}")
            if e.matrix is not None:
                sym = " (symmetric)" if e.matrix.is_symmetric() else ""
                print(f"# det = ({e.matrix.certificate}) * F{sym}")
                print(format_matrix(e.matrix))
        neff = len(cat.noneffective())
        nsym = sum(1 for M in mats if M.is_symmetric())
        print(f"# classes: {len(cat.entries)}, effective: {len(cat.entries) - neff}, "
              f"non-effective: {neff}, symmetric: {nsym}")
        n = len(mats)
        status = "yes" if not clashes else f"NO, equivalent pairs {clashes}"
        print(f"# pairwise inequivalent: {status} ({n * (n - 1) // 2} pairs checked)")
    return EXIT_VERIFY if clashes else EXIT_OK


def cmd_equiv(args):
    cf = load_curve_file(args.curve)
    C = cf.curve
    M1, M2 = load_matrix_file(args.matrix1), load_matrix_file(args.matrix2)
    try:
        verify_detrep(C, M1)
        verify_detrep(C, M2)
    except (NotProportional, ZeroDeterminant, ValueError) as exc:
        print(f"verification failed: {exc}")
        return EXIT_VERIFY
    if cl.equivalent_reps(C, M1, M2):
        print("equivalent")
        return EXIT_OK
    print("inequivalent")
    return EXIT_INEQUIVALENT


def build_parser():
    p = argparse.ArgumentParser(prog="detrep", description=__doc__.split("\n\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check det(M) = c*F")
    s.add_argument("curve")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("represent", help="matrix for a named non-effective divisor")
    s.add_argument("curve")
    s.add_argument("divisor")
    s.add_argument("--alg", type=int, choices=(1, 2), default=1)
    s.add_argument("--symmetric", action="store_true")
    s.add_argument("--monic-det", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_represent)

    s = sub.add_parser("classify", help="one representation per non-effective class")
    s.add_argument("curve")
    s.add_argument("--alg", type=int, choices=(1, 2), default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("equiv", help="decide equivalence of two representations")
    s.add_argument("curve")
    s.add_argument("matrix1")
    s.add_argument("matrix2")
    s.set_defaults(func=cmd_equiv)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        if "DETREP_THREADS" in str(exc):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
