import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from conftest import BUNDLED, example
from oracles import associativity_residual_loops
from wqg.algebra import (AlgebraPresentation, Functional, functional_gram, left_matrix, mul,
                         multiply, right_matrix, star_vec, tensor_presentation, validate_algebra)
from wqg.errors import AlgebraMismatch
from wqg.report import VerificationReport


def _names_ok(rep):
    return all(c.status == "pass" for c in rep.checks)


@pytest.mark.parametrize("name", BUNDLED)
def test_generators_pass_validation(name):
    P, _, _ = example(name)
    rep = validate_algebra(P)
    assert _names_ok(rep)
    assert max(c.residual for c in rep.checks) < 1e-10


@pytest.mark.parametrize("name", ["Z2", "pair2_conv", "S3"])
def test_associativity_matches_loops(name):
    P, _, _ = example(name)
    rep = validate_algebra(P)
    assert rep.get("algebra.associativity").residual == pytest.approx(associativity_residual_loops(P.mult), abs=1e-14)


def test_perturbed_associativity_fails():
    P, _, _ = example("Z2")
    mult = P.mult.copy()
    mult[0, 0, 0] += 0.1
    Q = AlgebraPresentation("bad", P.labels, mult, P.star, P.unit)
    rep = validate_algebra(Q)
    c = rep.get("algebra.associativity")
    assert c.status == "fail" and c.residual >= 0.1 - 1e-12
    assert c.residual == pytest.approx(associativity_residual_loops(Q.mult))


def test_group_law_and_matrix_units():
    P, _, _ = example("Z2")
    e, g = P.basis(0), P.basis(1)
    assert np.allclose(mul(P, g, g), e)
    M, _, _ = example("pair2_conv")
    e12, e21, e11 = (M.basis(M.index(l)) for l in ("(1,2)", "(2,1)", "(1,1)"))
    assert np.allclose(mul(M, e12, e21), e11)
    assert np.allclose(mul(M, e12, e12), 0)


def test_star_on_group_algebra():
    P, _, _ = example("Z2")
    a = np.array([1 + 2j, 3 - 1j])
    assert np.allclose(star_vec(P, a), np.conj(a))
    x = P.element(a)
    assert np.allclose(x.star().coeffs, np.conj(a))


def test_element_arithmetic_and_mismatch():
    P, _, _ = example("Z2")
    Q, _, _ = example("Z3")
    x, y = P.element([1, 2]), P.element([0, 1])
    assert np.allclose((x * y).coeffs, [2, 1])
    assert np.allclose((x + y).coeffs, [1, 3])
    assert np.allclose((2 * x).coeffs, [2, 4])
    with pytest.raises(AlgebraMismatch):
        multiply(x, Q.element([1, 0, 0]))


def test_tensor_presentation():
    P, _, _ = example("Z2")
    T = tensor_presentation(P, P)
    assert T.dim == 4
    # index (i1, i2) -> 2 i1 + i2
    ge, eg, gg = T.basis(2), T.basis(1), T.basis(3)
    assert np.allclose(mul(T, ge, eg), gg)
    assert np.allclose(T.unit, np.kron(P.unit, P.unit))
    M, _, _ = example("pair2_conv")
    assert _names_ok(validate_algebra(tensor_presentation(P, M)))


def test_functional_gram_examples():
    P, _, _ = example("Z2")
    gram = functional_gram(Functional(P, np.array([1.0, 0.0])))
    assert np.allclose(gram.inner, np.eye(2)) and gram.positive and gram.faithful
    _, _, phi = example("wtrace")
    M, _, _ = example("pair2_conv")
    gram = functional_gram(Functional(M, phi))
    assert np.allclose(gram.inner, np.diag([1, 2, 1, 2])) and gram.faithful
    zero = functional_gram(Functional(M, np.zeros(4)))
    assert zero.positive and not zero.faithful


def test_left_right_matrices_agree_with_mul(rng):
    P, _, _ = example("S3")
    a, b = rng.normal(size=6), rng.normal(size=6)
    assert np.allclose(left_matrix(P, a) @ b, mul(P, a, b))
    assert np.allclose(right_matrix(P, b) @ a, mul(P, a, b))


coeffs = arrays(np.float64, 6, elements=st.floats(-2, 2))


@settings(max_examples=30, deadline=None)
@given(coeffs, coeffs, coeffs, coeffs)
def test_s3_star_is_antimultiplicative(ar, ai, br, bi):
    P, _, _ = example("S3")
    a, b = ar + 1j * ai, br + 1j * bi
    lhs = star_vec(P, mul(P, a, b))
    rhs = mul(P, star_vec(P, b), star_vec(P, a))
    assert np.allclose(lhs, rhs)


@settings(max_examples=30, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_s3_associative_on_random_elements(a, b, c):
    P, _, _ = example("S3")
    assert np.allclose(mul(P, mul(P, a, b), c), mul(P, a, mul(P, b, c)))


def test_report_records_into_given_report():
    P, _, _ = example("Z2")
    rep = VerificationReport()
    validate_algebra(P, report=rep)
    assert rep.names()[0] == "algebra.associativity"
