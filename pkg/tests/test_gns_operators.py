import numpy as np
import pytest

from conftest import ALL, HOPF, WEAK, example, pipeline
from wqg.errors import DeltaNotPositive
from wqg.gns_operators import SAMPLED_T, build_W, delta_space, rep2
from wqg.numkernel import hermitian_power
from wqg.report import VerificationReport


def _diag_in_basis(H, X):
    """Matrix of an operator in the (non-normalized) basis Lambda(e_i)."""
    return H.lam_inv @ X @ H.lam


def test_z2_gns_is_regular_representation():
    P, _, _ = example("Z2")
    H = pipeline("Z2").gns
    assert np.allclose(H.gram, np.eye(2))
    assert np.allclose(H.rep(P.basis(1)), [[0, 1], [1, 0]])


@pytest.mark.parametrize("name", ["wtrace", "wfun"])
def test_weighted_grams(name):
    H = pipeline(name).gns
    assert np.allclose(H.gram, np.diag([1, 2, 1, 2]))


def test_matrix_unit_representation_adjoint():
    P, _, _ = example("wtrace")
    H = pipeline("wtrace").gns
    e12, e21 = P.basis(P.index("(1,2)")), P.basis(P.index("(2,1)"))
    assert np.allclose(H.rep(e12).conj().T, H.rep(e21))


def test_bridge_examples():
    assert np.allclose(pipeline("Z2").operators.JhatB, np.eye(1))
    JB = pipeline("pair2_conv").operators.JhatB
    assert np.allclose(np.abs(JB), np.eye(2))
    JB = pipeline("pair2_fun").operators.JhatB
    assert np.max(np.abs(JB.conj().T @ JB - np.eye(2))) < 1e-12


def test_z2_W_is_unitary_group_operator():
    ops = pipeline("Z2").operators
    W = ops.W
    assert W.shape == (4, 4)
    assert np.allclose(W.conj().T @ W, np.eye(4))
    # W*(e_p (x) e_a) = e_{ap} (x) e_a for the group-like coproduct
    assert np.allclose(np.abs(W), np.abs(W) ** 2)


def test_matrix_units_W_rank():
    P, D, _ = example("pair2_conv")
    res = pipeline("pair2_conv")
    W, E_op = res.operators.W, res.operators.E_op
    assert W.shape == (16, 16)
    assert np.linalg.matrix_rank(E_op, tol=1e-9) == 8
    assert np.linalg.matrix_rank(W, tol=1e-9) == np.linalg.matrix_rank(rep2(res.gns, res.bundle.E), tol=1e-9)
    assert np.max(np.abs(W @ W.conj().T @ W - W)) < 1e-10


def test_perturbed_comultiplication_breaks_W():
    from wqg.coalgebra import Comultiplication
    P, D, _ = example("Z2")
    res = pipeline("Z2")
    T = D.tensor.copy()
    T[0, 1, 1] += 0.1
    rep = VerificationReport()
    try:
        build_W(P, Comultiplication(P, T), res.gns, res.bundle, res.integrals, report=rep)
    except Exception:
        pass
    assert rep.get("W.WstarW_is_E").residual >= 0.1 - 1e-12


def test_z2_modular_operators_trivial():
    ops = pipeline("Z2").operators
    assert np.allclose(ops.nabla, np.eye(2))
    K = ops.J.kernel
    assert np.allclose(K.conj().T @ K, np.eye(2))


def test_weighted_trace_nabla():
    res = pipeline("wtrace")
    nab = _diag_in_basis(res.gns, res.operators.nabla)
    assert np.allclose(nab, np.diag([1, 0.5, 2, 1]))
    assert res.operators.sigma_sign in (1, -1)
    # pi(sigma(a)) = nabla^s pi(a) nabla^-s with the recorded sign
    P = res.gns.algebra
    s = res.operators.sigma_sign
    A = hermitian_power(res.operators.nabla, s)
    Ai = hermitian_power(res.operators.nabla, -s)
    for k in range(4):
        assert np.allclose(res.gns.rep(res.integrals.sigma[:, k]), A @ res.gns.rep(P.basis(k)) @ Ai)


def test_commutative_function_algebra_nabla_is_identity():
    res = pipeline("wfun")
    assert np.allclose(res.operators.nabla, np.eye(4))
    assert not np.allclose(res.integrals.delta, res.gns.algebra.unit)


@pytest.mark.parametrize("name", ["Z2", "wtrace"])
def test_P_is_identity_when_delta_trivial(name):
    assert np.allclose(pipeline(name).operators.P, np.eye(pipeline(name).gns.dim))


def test_delta_space_of_weighted_function_algebra():
    P, _, _ = example("wfun")
    res = pipeline("wfun")
    _, Pop, Hd = delta_space(P, res.integrals, res.gns)
    # phi(e_j* delta e_i) = u(i) at arrow (i, j)
    u = {1: 1.0, 2: 2.0}
    expected = [u[int(l.strip("()").split(",")[0])] for l in P.labels]
    assert np.allclose(Hd.gram, np.diag(expected))
    # P Lambda(a) = Lambda(d^-1 S^-2(a) d) by brute force on the basis
    ib = res.integrals
    for k in range(4):
        a = P.basis(k)
        Sm2 = ib.S_inv @ ib.S_inv @ a
        target = np.einsum("i,j,ijk->k", np.einsum("i,j,ijk->k", ib.delta_inv, Sm2, P.mult), ib.delta, P.mult)
        assert np.allclose(Pop @ res.gns.vector(a), res.gns.vector(target))


def test_non_positive_delta_raises():
    from dataclasses import replace
    P, _, _ = example("wfun")
    res = pipeline("wfun")
    ib = replace(res.integrals, delta_selfadjoint=False)
    with pytest.raises(DeltaNotPositive):
        delta_space(P, ib, res.gns)


@pytest.mark.parametrize("name", ALL)
def test_operator_checks_pass(name):
    rep = pipeline(name).report
    prefixes = ("gns.", "W.", "modular.", "delta_space.", "commutation.", "lcqg_certificate.")
    checks = [c for c in rep.checks if c.name.startswith(prefixes)]
    assert checks
    for c in checks:
        assert c.status == "pass", c
        assert c.residual < 1e-9 or c.name == "W.unitarity", c


@pytest.mark.parametrize("name", ALL)
def test_sampled_times_present(name):
    names = pipeline(name).report.names()
    for t in SAMPLED_T:
        assert f"commutation.W_invariance_t={t}" in names
        assert f"commutation.modular_group_t={t}" in names


@pytest.mark.parametrize("name", HOPF)
def test_hopf_W_unitary(name):
    W = pipeline(name).operators.W
    assert np.max(np.abs(W.conj().T @ W - np.eye(W.shape[0]))) < 1e-9


@pytest.mark.parametrize("name", WEAK)
def test_weak_W_rank_deficient(name):
    W = pipeline(name).operators.W
    assert np.linalg.matrix_rank(W, tol=1e-9) < W.shape[0]
