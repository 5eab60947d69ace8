import math

import numpy as np
import pytest

import qmvop


def cheb_u(n, x):
    a, b = 1.0, 2 * x
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, 2 * x * b - a
    return b


def test_weight_half():
    q = 0.5
    W = qmvop.weight(1, q, 0.3)
    assert W.shape == (2, 2)
    assert W[0, 0] == pytest.approx(q + 1 / q)
    assert W[0, 1] == pytest.approx(0.6)


def test_poly_scalar_case():
    q = 0.5
    for n in range(5):
        for x in (-0.8, 0.1, 0.9):
            want = q**n * (1 - q**2) / (1 - q ** (2 * n + 2)) * cheb_u(n, x)
            assert qmvop.poly(0, n, q, x)[0, 0] == pytest.approx(want, rel=1e-12, abs=1e-15)


def test_poly_explicit_matches_recursion():
    for n in range(5):
        P = qmvop.poly(3, n, 0.3, 0.4)
        E = qmvop.poly_explicit(3, n, 0.3, 0.4)
        assert np.max(np.abs(P - E)) < 1e-9


def test_ldu_and_precision():
    L, T, Linv = qmvop.ldu(2, 0.5, 0.2)
    W = qmvop.weight(2, 0.5, 0.2)
    assert np.max(np.abs(L @ T @ L.T - W)) < 1e-12
    assert np.max(np.abs(L @ Linv - np.eye(3))) < 1e-12
    Le, Te, _ = qmvop.ldu(2, 0.5, 0.2, precision="extended")
    assert np.max(np.abs(Te - T)) < 1e-12


def test_orthogonality():
    G = qmvop.orthogonality_matrix(2, 3, 3, 0.5)
    assert np.max(np.abs(G - qmvop.norm(2, 3, 0.5))) < 1e-9
    assert np.max(np.abs(qmvop.orthogonality_matrix(2, 2, 5, 0.5))) < 1e-9


def test_recurrence_keys():
    r = qmvop.recurrence(1, 2, 0.5)
    assert set(r) == {"A", "B", "C", "X", "Y"}
    assert qmvop.recurrence(0, 3, 0.5)["Y"][0, 0] == pytest.approx(0.25)


def test_lambda_reversal():
    a = np.diag(qmvop.lambda_matrix(2, 0, 0.5, 1))
    b = np.diag(qmvop.lambda_matrix(2, 0, 0.5, 2))
    assert np.array_equal(a, b[::-1])


def test_errors():
    with pytest.raises(ValueError):
        qmvop.weight(1, 1.5, 0.0)
    with pytest.raises(ValueError):
        qmvop.weight(-1, 0.5, 0.0)
    with pytest.raises(ValueError):
        qmvop.weight(1, 0.5, 0.0, precision="quad")
    with pytest.raises(ValueError):
        qmvop.run_suite(bogus=1)


def test_suite_subset():
    reports = qmvop.run_suite(families=["sheppard", "ldu"], two_ells=[0, 1], qs=[0.5], draws=3)
    assert reports
    assert {r["family"] for r in reports} == {"sheppard", "ldu"}
    assert all(r["pass"] for r in reports)
    assert set(qmvop.default_tolerances()) == set(qmvop.check_ids())
    tight = qmvop.run_suite(families=["ldu"], two_ells=[2], qs=[0.5], tolerance=1e-30)
    assert not all(r["pass"] for r in tight)
