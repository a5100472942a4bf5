import random

import pytest
from conftest import klein_reference_matrices, stored_matrix, substitution

from plane_detrep.classify import (
    BadPresentation,
    MWPresentation,
    NotAnAutomorphism,
    ProjSubstitution,
    element_order_check,
    enumerate_classes,
    equivalent_reps,
    explicit_equivalence,
    extract_class,
    match_to_catalog,
    pairwise_inequivalent,
    pullback_divisor,
    pullback_matrix,
    verify_presentation,
    worker_count,
)
from plane_detrep.curve import Divisor, EffectiveDivisor
from plane_detrep.detrep import LinMatrix, adjugate, verify_detrep
from plane_detrep.ideal import Ideal
from plane_detrep.poly import HomogPoly, Rat, parse_poly
from plane_detrep.rr import is_principal, linearly_equivalent

THETA = "Y, Z, X"
THETA1 = "-X, Y, Z"
THETA2 = "Y, X, Z"


def random_invertible(rng, n):
    from plane_detrep import linalg

    while True:
        A = [[Rat(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if linalg.det(A) != 0:
            return A


def recombine(M, A, B):
    """A * M * B for constant matrices A, B."""
    n = M.size
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = HomogPoly.zero(1)
            for k in range(n):
                for l in range(n):
                    c = A[i][k] * B[l][j]
                    if c:
                        acc = acc + M.entries[k][l].scale(c)
            row.append(acc)
        rows.append(row)
    return LinMatrix(rows)


class TestSubstitutions:
    def test_inverse_and_compose(self):
        s = substitution(THETA)
        ident = s.compose(s.inverse())
        assert ident.matrix == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert s.compose(s).compose(s).matrix == ident.matrix

    def test_apply(self):
        s = substitution(THETA)
        assert s.apply(parse_poly("X^2 + Z^2")) == parse_poly("Y^2 + X^2")

    def test_singular(self):
        with pytest.raises(ValueError):
            ProjSubstitution([[1, 0, 0], [1, 0, 0], [0, 0, 1]])

    def test_not_automorphism(self, klein):
        with pytest.raises(NotAnAutomorphism):
            pullback_divisor(klein.curve, substitution(THETA2), klein.divisor("D"))


class TestKleinAction:
    def test_theta_on_generator(self, klein):
        C = klein.curve
        moved = pullback_divisor(C, substitution(THETA), klein.divisor("D"))
        assert linearly_equivalent(C, moved, klein.divisor("-3*D"))

    def test_theta_on_base(self, klein):
        C = klein.curve
        moved = pullback_divisor(C, substitution(THETA), klein.divisor("2P1"))
        assert linearly_equivalent(C, moved, klein.divisor("2*P1 + 8*D"))

    def test_theta_moves_points(self, klein):
        moved = pullback_divisor(klein.curve, substitution(THETA), klein.divisor("P1"))
        # [1:0:0] -> [0:0:1] under [X:Y:Z] -> [Y:Z:X]
        assert moved.plus.ideal == klein.points["P3"].ideal


FERMAT_ACTION = [
    (THETA1, "D1", "D1 - D2"),
    (THETA1, "D2", "-D2"),
    (THETA1, "D3", "2*D2 + D3"),
    (THETA2, "D1", "-D1 - D3"),
    (THETA2, "D2", "-D2 - D3"),
    (THETA2, "D3", "D3"),
]


@pytest.mark.parametrize("sub, src, dst", FERMAT_ACTION)
def test_fermat_action(fermat, sub, src, dst):
    C = fermat.curve
    moved = pullback_divisor(C, substitution(sub), fermat.divisor(src))
    assert linearly_equivalent(C, moved, fermat.divisor(dst))


class TestPullbackMatrix:
    def test_sign_change(self, fermat):
        A = stored_matrix("fermat_A.txt")
        moved = pullback_matrix(substitution("X, -Y, Z"), A)
        expect = LinMatrix.parse([["X + Z", "Y", "0", "-Y"], ["Y", "-X + Z", "0", "-Y"],
                                  ["0", "0", "Y + Z", "-X"], ["-Y", "-Y", "-X", "Y - Z"]])
        assert moved == expect
        assert verify_detrep(fermat.curve, moved) != 0

    def test_identity(self):
        M = stored_matrix("klein_M.txt")
        assert pullback_matrix(substitution("X, Y, Z"), M) == M

    def test_cyclic_shift_of_n(self, klein):
        N = stored_matrix("klein_N.txt")
        shifted = pullback_matrix(substitution(THETA), N)
        expect = LinMatrix.parse([["Y", "0", "Z", "Z"], ["-X", "-Z + X", "Z - X", "Z"],
                                  ["0", "Y", "-X", "Z - X"], ["0", "Z", "Y - Z", "-X"]])
        assert shifted == expect
        assert verify_detrep(klein.curve, shifted) != 0


class TestExtraction:
    def test_recombination_invariance(self, klein):
        C = klein.curve
        M = stored_matrix("klein_M.txt")
        rng = random.Random(4)
        for _ in range(3):
            R = recombine(M, random_invertible(rng, 4), random_invertible(rng, 4))
            assert verify_detrep(C, R) != 0
            assert equivalent_reps(C, M, R)
            assert explicit_equivalence(M, R) is not None

    def test_row_independence(self, klein):
        C = klein.curve
        adj = adjugate(stored_matrix("klein_M.txt"))
        rows = [EffectiveDivisor.from_ideal(C, Ideal(r)) for r in adj.entries[:2]]
        assert linearly_equivalent(C, Divisor(rows[0]), Divisor(rows[1]))

    def test_extracted_class_is_twist_by_one(self, klein):
        # the adjugate-row divisor lies in the class of L(1) = D + H
        C = klein.curve
        E = extract_class(C, stored_matrix("klein_M.txt"))
        assert E.degree == 6
        assert linearly_equivalent(C, Divisor(E), klein.divisor("theta + H"))

    def test_n_against_transpose(self, klein):
        N = stored_matrix("klein_N.txt")
        assert not equivalent_reps(klein.curve, N, N.transpose())
        assert explicit_equivalence(N, N.transpose()) is None

    def test_same_matrix(self, klein):
        M = stored_matrix("klein_M.txt")
        assert equivalent_reps(klein.curve, M, M)

    def test_klein_seven_distinct(self, klein):
        mats = list(klein_reference_matrices().values())
        assert pairwise_inequivalent(klein.curve, mats) == []

    def test_fermat_distinct_families(self, fermat):
        C = fermat.curve
        B, Cm = stored_matrix("fermat_B.txt"), stored_matrix("fermat_C.txt")
        assert not equivalent_reps(C, B, Cm)
        assert not equivalent_reps(C, B, pullback_matrix(substitution("-X, Y, Z"), B))

    def test_invariance_under_automorphism(self, klein):
        C = klein.curve
        s = substitution(THETA)
        mats = list(klein_reference_matrices().values())[:4]
        for i in range(len(mats)):
            for j in range(i, len(mats)):
                before = equivalent_reps(C, mats[i], mats[j])
                after = equivalent_reps(C, pullback_matrix(s, mats[i]), pullback_matrix(s, mats[j]))
                assert before == after


class TestPresentation:
    def test_klein_order(self, klein):
        C, D = klein.curve, klein.divisor("D")
        assert element_order_check(C, D, 14)
        assert not element_order_check(C, D, 7)
        assert not element_order_check(C, D, 28)

    def test_fermat_orders(self, fermat):
        C = fermat.curve
        for name, order in (("D1", 4), ("D2", 4), ("D3", 2)):
            assert element_order_check(C, fermat.divisor(name), order)

    def test_fermat_two_torsion_independent(self, fermat):
        C = fermat.curve
        relations = [(2, 0, 0), (0, 2, 0), (0, 0, 1), (2, 2, 0), (2, 0, 1), (0, 2, 1), (2, 2, 1)]
        for coeffs in relations:
            expr = " + ".join(f"{k}*{n}" for k, n in zip(coeffs, ("D1", "D2", "D3")) if k)
            assert not is_principal(C, fermat.divisor(expr)), coeffs

    def test_bad_presentation(self, klein):
        bad = MWPresentation([(klein.divisor("D"), 7)], klein.divisor("2P1"))
        with pytest.raises(BadPresentation):
            verify_presentation(klein.curve, bad)
        wrong_base = MWPresentation([(klein.divisor("D"), 14)], klein.divisor("P1"))
        with pytest.raises(BadPresentation):
            verify_presentation(klein.curve, wrong_base)


class TestCatalog:
    def test_klein_counts(self, klein_catalog):
        cat = klein_catalog
        assert len(cat.entries) == 14
        assert len(cat.noneffective()) == 7
        assert [e.label for e in cat.entries] == [(k,) for k in range(14)]
        eff = {e.label[0] for e in cat.entries if e.effective}
        assert eff == {0, 4, 6, 8, 9, 10, 12}
        thetas = [e for e in cat.noneffective() if e.theta]
        assert [e.label for e in thetas] == [(2,)]
        assert thetas[0].matrix.is_symmetric()
        assert all((e.matrix is None) == e.effective for e in cat.entries)

    def test_klein_catalog_matches_reference(self, klein, klein_catalog):
        found = match_to_catalog(klein.curve, list(klein_reference_matrices().values()),
                                 klein_catalog.matrices())
        assert all(len(f) == 1 for f in found)
        assert sorted(f[0] for f in found) == list(range(7))

    def test_determinism(self, klein, klein_catalog):
        again = enumerate_classes(klein.curve, klein.mw, verify=False)
        assert [(e.label, e.effective, e.theta) for e in again.entries] == \
            [(e.label, e.effective, e.theta) for e in klein_catalog.entries]
        assert [m.to_strings() for m in again.matrices()] == \
            [m.to_strings() for m in klein_catalog.matrices()]

    def test_parallel_matches_serial(self, cubic, cubic_catalog):
        par = enumerate_classes(cubic.curve, cubic.mw, workers=2)
        assert [m.to_strings() for m in par.matrices()] == \
            [m.to_strings() for m in cubic_catalog.matrices()]

    def test_worker_count(self, monkeypatch):
        assert worker_count() == 1
        monkeypatch.setenv("DETREP_THREADS", "3")
        assert worker_count() == 3
        monkeypatch.setenv("DETREP_THREADS", "0")
        with pytest.raises(ValueError):
            worker_count()

    def test_cubic(self, cubic_catalog):
        cat = cubic_catalog
        assert len(cat.entries) == 3
        assert [e.label for e in cat.noneffective()] == [(1,), (2,)]
        assert all(m.size == 3 for m in cat.matrices())
