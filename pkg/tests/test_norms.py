import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import fractional_matrix_power

from conftest import EX1_A, EX1_B, EX2_A, EX2_B
from mmv.explore import random_unitary
from mmv.norms import (
    FROBENIUS,
    OPERATOR,
    ExponentMismatch,
    InvalidP,
    check_hoelder,
    kyfan,
    norm,
    parse_norm,
    schatten,
    tau,
)

KINDS = [schatten(1), FROBENIUS, schatten(2.5), schatten(3), schatten(40), OPERATOR, kyfan(1), kyfan(2)]


def rand_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def lapack_norm(X, kind):
    s = np.linalg.svd(X, compute_uv=False)
    if kind.variant == "operator":
        return s[0]
    if kind.variant == "kyfan":
        return s[: kind.param].sum()
    p = 2 if kind.variant == "frobenius" else kind.param
    return (s**p).sum() ** (1 / p)


def test_tau_basic():
    assert tau(np.eye(3)) == 3.0
    assert tau(EX2_A + EX2_B) == 14634.0
    assert tau(np.diag([1 + 5j, 2 - 1j])) == 3.0


def test_tau_cyclic(rng):
    for _ in range(100):
        X, Y = rand_complex(rng, 4), rand_complex(rng, 4)
        a, b = tau(X @ Y), tau(Y @ X)
        assert abs(a - b) <= 1e-10 * max(1.0, abs(a))


def test_tau_adjoint_and_frobenius(rng):
    for _ in range(100):
        X = rand_complex(rng, 5)
        assert abs(tau(X.conj().T) - tau(X)) <= 1e-12 * max(1.0, abs(tau(X)))
        assert abs(tau(X.conj().T @ X) - norm(X, FROBENIUS) ** 2) <= 1e-10 * tau(X.conj().T @ X)


def test_norm_examples():
    assert abs(norm(np.diag([3.0, 4.0]), schatten(2)) - 5.0) <= 1e-14
    assert abs(norm(np.diag([3.0, 4.0]), FROBENIUS) - 5.0) <= 1e-14
    assert abs(norm(EX1_A, OPERATOR) - 1141.0) <= 1e-12
    assert abs(norm(np.diag([3.0, -4.0, 1.0]), kyfan(2)) - 7.0) <= 1e-14
    assert norm(np.zeros((2, 2)), schatten(3)) == 0.0


def test_norms_against_lapack(rng):
    for _ in range(100):
        X = rand_complex(rng, int(rng.integers(2, 7)))
        for kind in KINDS:
            if kind.variant == "kyfan" and kind.param > X.shape[0]:
                continue
            assert abs(norm(X, kind) - lapack_norm(X, kind)) <= 1e-9 * lapack_norm(X, kind)


def test_family_identities(rng):
    X = rand_complex(rng, 4)
    assert norm(X, OPERATOR) == norm(X, kyfan(1))
    assert norm(X, FROBENIUS) == pytest.approx(norm(X, schatten(2)), rel=1e-15)


def test_unitary_invariance(rng):
    for _ in range(50):
        n = int(rng.integers(2, 7))
        X, U, V = rand_complex(rng, n), random_unitary(n, rng), random_unitary(n, rng)
        for kind in KINDS:
            if kind.variant == "kyfan" and kind.param > n:
                continue
            assert abs(norm(U @ X @ V, kind) - norm(X, kind)) <= 1e-9 * norm(X, kind)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), p=st.floats(1, 20), q=st.floats(1, 20))
def test_schatten_monotone(seed, p, q):
    p, q = min(p, q), max(p, q)
    X = rand_complex(np.random.default_rng(seed), 4)
    assert norm(X, schatten(q)) <= norm(X, schatten(p)) * (1 + 1e-9)


def test_triangle_and_symmetric_norm_property(rng):
    for _ in range(100):
        n = int(rng.integers(2, 6))
        X, Y, Z = (rand_complex(rng, n) for _ in range(3))
        for kind in KINDS:
            if kind.variant == "kyfan" and kind.param > n:
                continue
            assert norm(X + Y, kind) <= (norm(X, kind) + norm(Y, kind)) * (1 + 1e-9)
            bound = norm(X, OPERATOR) * norm(Y, kind) * norm(Z, OPERATOR)
            assert norm(X @ Y @ Z, kind) <= bound * (1 + 1e-9)


@pytest.mark.parametrize(
    "text, expected",
    [("op", OPERATOR), ("fro", FROBENIUS), ("s:1", schatten(1)), ("s:2.5", schatten(2.5)), ("kf:3", kyfan(3))],
)
def test_parse_norm(text, expected):
    assert parse_norm(text) == expected
    assert parse_norm(str(expected)) == expected


@pytest.mark.parametrize("text", ["", "s:", "s:0.5", "kf:0", "kf:1.5", "nuc", "s:inf"])
def test_parse_norm_rejects(text):
    with pytest.raises(ValueError):
        parse_norm(text)


def test_invalid_p():
    with pytest.raises(InvalidP):
        schatten(0.9)


def test_kyfan_index_beyond_dimension():
    with pytest.raises(ValueError):
        norm(np.eye(2), kyfan(3))


# -- Hölder -----------------------------------------------------------------


def test_hoelder_identity_saturates():
    rep = check_hoelder(np.eye(2), np.eye(2), 4, 4, 2)
    assert rep.holds
    assert rep.lhs == pytest.approx(math.sqrt(2), rel=1e-14)
    assert rep.rhs == pytest.approx(math.sqrt(2), rel=1e-14)


def test_hoelder_random_trials(rng):
    for _ in range(1000):
        X, Y = rand_complex(rng, 3), rand_complex(rng, 3)
        rep = check_hoelder(X, Y, 4, 4, 2)
        assert rep.holds
        # independent evaluation of both sides
        lhs = lapack_norm(X @ Y, schatten(2))
        rhs = lapack_norm(X, schatten(4)) * lapack_norm(Y, schatten(4))
        assert rep.lhs == pytest.approx(lhs, rel=1e-9)
        assert rep.rhs == pytest.approx(rhs, rel=1e-9)


def test_hoelder_example1_quarter_powers():
    X = fractional_matrix_power(EX1_A, 0.25)
    Y = fractional_matrix_power(EX1_B, 0.25)
    rep = check_hoelder(X, Y, 8, 8, 4)
    assert rep.holds
    # frozen from scipy fractional powers + LAPACK singular values
    assert rep.lhs == pytest.approx(17.80446956002488, rel=1e-9)
    assert rep.rhs == pytest.approx(31.10012545592322, rel=1e-9)


def test_hoelder_infinite_exponent(rng):
    X, Y = rand_complex(rng, 3), rand_complex(rng, 3)
    assert check_hoelder(X, Y, math.inf, 2, 2).holds


def test_hoelder_rejects_bad_exponents():
    with pytest.raises(ExponentMismatch):
        check_hoelder(np.eye(2), np.eye(2), 2, 2, 2)
    with pytest.raises(InvalidP):
        check_hoelder(np.eye(2), np.eye(2), 0.5, 2, 2)
