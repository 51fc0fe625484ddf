import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from oracles import hermitian_pd_by_minors
from wqg.errors import NotPositiveDefinite
from wqg.numkernel import (AntilinearOp, Tolerance, adjoint_wrt, antilinear_adjoint, column_space,
                           gram_frame, hermitian_power, null_space, numerical_rank, rref,
                           same_subspace, solve_least_squares)


def test_least_squares_identity():
    x, res = solve_least_squares(np.eye(2), np.array([1.0, 2.0]))
    assert np.allclose(x[:, 0], [1, 2]) and res == pytest.approx(0)


def test_least_squares_overdetermined():
    x, res = solve_least_squares(np.array([[1.0], [1.0]]), np.array([1.0, 3.0]))
    assert x[0, 0] == pytest.approx(2)
    assert res == pytest.approx(np.sqrt(2))


def test_least_squares_minimal_norm():
    x, res = solve_least_squares(np.array([[1.0, 0.0], [0.0, 0.0]]), np.array([0.0, 1.0]))
    assert np.allclose(x[:, 0], 0) and res == pytest.approx(1)


def test_least_squares_shape_mismatch():
    with pytest.raises(ValueError):
        solve_least_squares(np.eye(2), np.ones(3))


def test_hermitian_power_examples():
    assert np.allclose(hermitian_power(np.eye(3), 0.5 + 3j), np.eye(3))
    assert np.allclose(hermitian_power(np.diag([4.0, 1.0]), 0.5), np.diag([2.0, 1.0]))
    U = hermitian_power(np.diag([4.0, 1.0]), 1j)
    assert np.allclose(U, np.diag([np.exp(1j * np.log(4)), 1]))
    assert np.max(np.abs(U @ U.conj().T - np.eye(2))) < 1e-12


def test_hermitian_power_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        hermitian_power(np.diag([1.0, -1.0]), 0.5)
    with pytest.raises(NotPositiveDefinite):
        hermitian_power(np.array([[1.0, 1.0], [0.0, 1.0]]), 0.5)


def test_gram_frame_examples():
    L, Linv = gram_frame(np.eye(2))
    assert np.allclose(L, np.eye(2))
    L, _ = gram_frame(np.diag([1.0, 2.0]))
    assert np.allclose(L, np.diag([1, np.sqrt(2)]))
    G = np.array([[2.0, 1.0], [1.0, 1.0]])
    L, Linv = gram_frame(G)
    assert np.allclose(L, [[np.sqrt(2), 0], [1 / np.sqrt(2), 1 / np.sqrt(2)]])
    assert np.max(np.abs(L @ L.conj().T - G)) < 1e-12
    assert np.allclose(L @ Linv, np.eye(2))


def test_adjoint_wrt_examples(rng):
    T = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    assert np.allclose(adjoint_wrt(np.eye(2), np.eye(3), T), T.conj().T)
    Ta = adjoint_wrt(np.diag([1.0, 2.0]), np.eye(1), np.array([[1.0, 1.0]]))
    assert np.allclose(Ta[:, 0], [1, 0.5])


def test_antilinear_adjoint_examples():
    assert np.allclose(antilinear_adjoint(AntilinearOp(np.eye(2))).kernel, np.eye(2))
    K = np.array([[0, 1], [1, 0]])
    assert np.allclose(antilinear_adjoint(AntilinearOp(K)).kernel, K)
    Z = AntilinearOp(np.array([[0, 2], [1, 0]]))
    Za = antilinear_adjoint(Z)
    assert np.allclose(Za.kernel, [[0, 1], [2, 0]])
    # <Zu, v> = <Z* v, u> on basis vectors, with <x, y> = y^H x
    for u in np.eye(2):
        for v in np.eye(2):
            assert np.vdot(v, Z(u)) == pytest.approx(np.vdot(u, Za(v)))


def test_rank_and_spaces():
    A = np.array([[1.0, 2.0], [2.0, 4.0], [0.0, 0.0]])
    assert numerical_rank(A) == 1
    assert column_space(A).rank == 1
    assert null_space(A).rank == 1
    assert np.allclose(A @ null_space(A).basis, 0)
    assert same_subspace(column_space(A), column_space(2 * A)) < 1e-12
    assert same_subspace(column_space(np.eye(3)[:, :1]), column_space(np.eye(3)[:, 1:2])) > 0.5


def test_rref():
    R = rref(np.array([[2.0, 4.0, 0.0], [1.0, 2.0, 1.0]]))
    assert np.allclose(R, [[1, 2, 0], [0, 0, 1]])


def test_tolerance_must_be_positive():
    with pytest.raises(ValueError):
        Tolerance(abs_residual=0)


def _pd(n, seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return X @ X.conj().T + n * np.eye(n)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6),
       st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
def test_hermitian_power_is_a_group_homomorphism(n, seed, a, b, c, d):
    H = _pd(n, seed)
    z, w = complex(a, b), complex(c, d)
    lhs = hermitian_power(H, z) @ hermitian_power(H, w)
    rhs = hermitian_power(H, z + w)
    assert np.max(np.abs(lhs - rhs)) <= 1e-8 * max(1.0, np.max(np.abs(rhs)))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_gram_frame_factorizes(n, seed):
    G = _pd(n, seed)
    assert hermitian_pd_by_minors(G)
    L, Linv = gram_frame(G)
    assert np.allclose(L @ L.conj().T, G)
    assert np.allclose(np.triu(L, 1), 0)


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, (3, 3), elements=st.floats(-3, 3)),
       arrays(np.float64, (3, 3), elements=st.floats(-3, 3)),
       arrays(np.float64, 3, elements=st.floats(-3, 3)),
       arrays(np.float64, 3, elements=st.floats(-3, 3)))
def test_antilinear_adjoint_pairing(Kr, Ki, u, v):
    Z = AntilinearOp(Kr + 1j * Ki)
    Za = antilinear_adjoint(Z)
    uu, vv = u + 0.5j * v, v - 0.25j * u
    assert np.vdot(vv, Z(uu)) == pytest.approx(np.vdot(uu, Za(vv)), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_adjoint_wrt_pairing(m, n, seed):
    rng = np.random.default_rng(seed)
    Gd, Gc = _pd(n, seed), _pd(m, seed + 1)
    T = rng.normal(size=(m, n)) + 1j * rng.normal(size=(m, n))
    Ta = adjoint_wrt(Gd, Gc, T)
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    y = rng.normal(size=m) + 1j * rng.normal(size=m)
    # <T x, y>_cod = <x, T* y>_dom
    assert (y.conj() @ Gc @ T @ x) == pytest.approx((Ta @ y).conj() @ Gd @ x)
