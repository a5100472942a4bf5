import os
from pathlib import Path

import pytest

from plane_detrep.classify import enumerate_classes
from plane_detrep.cli import load_curve_file, load_matrix_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
MATRICES = FIXTURES / "matrices"


def fixture_path(name):
    return str(FIXTURES / name)


def matrix_path(name):
    return str(MATRICES / name)


def stored_matrix(name):
    return load_matrix_file(matrix_path(name))


@pytest.fixture(scope="session")
def klein():
    return load_curve_file(fixture_path("klein.ini"))


@pytest.fixture(scope="session")
def fermat():
    return load_curve_file(fixture_path("fermat.ini"))


@pytest.fixture(scope="session")
def cubic():
    return load_curve_file(fixture_path("cubic.ini"))


@pytest.fixture(scope="session")
def klein_catalog(klein):
    return enumerate_classes(klein.curve, klein.mw)


@pytest.fixture(scope="session")
def fermat_catalog(fermat):
    return enumerate_classes(fermat.curve, fermat.mw)


@pytest.fixture(scope="session")
def cubic_catalog(cubic):
    return enumerate_classes(cubic.curve, cubic.mw)


@pytest.fixture(autouse=True)
def _single_worker(monkeypatch):
    if "DETREP_THREADS" in os.environ:
        monkeypatch.delenv("DETREP_THREADS")


def substitution(text):
    """ProjSubstitution from images of X, Y, Z written like ``"Y, -X, Z"``."""
    from plane_detrep.classify import ProjSubstitution
    from plane_detrep.poly import parse_poly

    return ProjSubstitution.from_forms([parse_poly(t, degree=1) for t in text.split(",")])


def _family(base, images):
    from plane_detrep.classify import pullback_matrix

    return [pullback_matrix(substitution(s), base) for s in images]


def klein_reference_matrices():
    """M, the three cyclic shifts of N and their transposes."""
    M, N = stored_matrix("klein_M.txt"), stored_matrix("klein_N.txt")
    shifts = _family(N, ["X, Y, Z", "Y, Z, X", "Z, X, Y"])
    names = ["M", "N_XYZ", "N_YZX", "N_ZXY", "tN_XYZ", "tN_YZX", "tN_ZXY"]
    return dict(zip(names, [M] + shifts + [S.transpose() for S in shifts]))


def fermat_reference_matrices():
    """The sixteen substituted A, B, B^T and C matrices."""
    A, B, Cm = (stored_matrix(f"fermat_{n}.txt") for n in "ABC")
    swaps = ["X, Y, Z", "X, -Y, Z", "Y, X, Z", "Y, -X, Z"]
    signs = ["X, Y, Z", "-X, Y, Z", "X, -Y, Z", "-X, -Y, Z"]
    out = {}
    for s, m in zip(swaps, _family(A, swaps)):
        out[f"A[{s}]"] = m
    for s, m in zip(signs, _family(B, signs)):
        out[f"B[{s}]"] = m
        out[f"tB[{s}]"] = m.transpose()
    for s, m in zip(swaps, _family(Cm, swaps)):
        out[f"C[{s}]"] = m
    return out
