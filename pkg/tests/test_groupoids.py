import itertools

import numpy as np
import pytest

from conftest import BUNDLED, example, pipeline
from wqg.algebra import validate_algebra
from wqg.coalgebra import canonical_bundle, validate_comultiplication
from wqg.errors import InvalidGroupoid, InvalidGroupTable
from wqg.groupoids import (GroupoidPresentation, bundled_examples, cyclic_group_table,
                           direct_sum, disjoint_union, gen_group_algebra, gen_groupoid_convolution,
                           group_as_groupoid, pair_groupoid, symmetric_group_table, tensor,
                           validate_group_table)
from wqg.pipeline import verify


def test_bundled_examples_have_expected_dimensions():
    dims = {k: P.dim for k, (P, _) in bundled_examples().items()}
    assert dims == {"Z2": 2, "Z3": 3, "S3": 6, "pair2_conv": 4, "pair3_conv": 9, "pair2_fun": 4, "pair3_fun": 9}


@pytest.mark.parametrize("name", BUNDLED)
def test_generators_pass_axioms(name):
    P, D, _ = example(name)
    assert validate_algebra(P).verdict == "pass"
    assert validate_comultiplication(P, D).verdict == "pass"


def test_z3_haar():
    phi = pipeline("Z3").integrals.phi
    assert np.allclose(phi, [1, 0, 0])


def test_s3_noncommutative_unimodular():
    P, _, _ = example("S3")
    assert not np.allclose(P.mult, P.mult.transpose(1, 0, 2))
    ib = pipeline("S3").integrals
    assert np.allclose(ib.delta, P.unit) and np.allclose(ib.sigma, np.eye(6))


def test_pair_groupoid_convolution_is_matrix_units():
    P, _, _ = example("pair2_conv")
    for a, b in itertools.product(P.labels, repeat=2):
        i, j = a.strip("()").split(",")
        k, l = b.strip("()").split(",")
        prod = np.einsum("i,j,ijk->k", P.basis(P.index(a)), P.basis(P.index(b)), P.mult)
        expected = P.basis(P.index(f"({i},{l})")) if j == k else np.zeros(4)
        assert np.allclose(prod, expected)


def test_disjoint_union_direct_sum():
    Z2 = group_as_groupoid(cyclic_group_table(2), ["e", "g"])
    G = disjoint_union(Z2, pair_groupoid(2))
    P, D = gen_groupoid_convolution(G)
    assert P.dim == 6
    assert validate_comultiplication(P, D).verdict == "pass"


def test_one_point_groupoid_is_C():
    P, D = gen_groupoid_convolution(pair_groupoid(1))
    assert P.dim == 1 and np.allclose(P.mult, 1) and np.allclose(D.tensor, 1)
    assert verify(P, D).verdict == "pass"


def test_direct_sum_E_is_block_sum():
    a, b = example("Z2")[:2], example("pair2_conv")[:2]
    P, D = direct_sum(a, b)
    E = canonical_bundle(P, D).E
    Ea, Eb = canonical_bundle(*a).E, canonical_bundle(*b).E
    expected = np.zeros((6, 6), dtype=complex)
    expected[:2, :2] = Ea
    expected[2:, 2:] = Eb
    assert np.allclose(E, expected)


def test_tensor_of_z2_is_klein_group():
    Z2 = example("Z2")[:2]
    P, D = tensor(Z2, Z2)
    klein = np.array([[a ^ b for b in range(4)] for a in range(4)])
    K, DK = gen_group_algebra(klein)
    found = False
    for perm in itertools.permutations(range(4)):
        p = list(perm)
        if (np.allclose(P.mult[np.ix_(p, p, p)], K.mult) and np.allclose(D.tensor[np.ix_(p, p, p)], DK.tensor)
                and np.allclose(P.star[np.ix_(p, p)], K.star)):
            found = True
            break
    assert found


def test_symmetric_group_table():
    table, labels = symmetric_group_table(3)
    t, e = validate_group_table(table)
    assert labels[e] == "123" and t.shape == (6, 6)


def test_invalid_group_tables():
    with pytest.raises(InvalidGroupTable):
        validate_group_table([[0, 1], [0, 1]])
    with pytest.raises(InvalidGroupTable):
        validate_group_table([[0, 2], [1, 0]])
    with pytest.raises(InvalidGroupTable):
        validate_group_table(np.zeros((0, 0), dtype=int))


def test_invalid_groupoid():
    G = pair_groupoid(2)
    compose = dict(G.compose)
    compose[("(1,2)", "(1,2)")] = "(1,1)"
    bad = GroupoidPresentation(G.arrows, G.units, G.source, G.target, compose, G.inverse)
    with pytest.raises(InvalidGroupoid):
        gen_groupoid_convolution(bad)
