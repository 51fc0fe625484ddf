import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import BUNDLED, HOPF, example
from wqg.algebra import mul2, star2
from wqg.coalgebra import (Comultiplication, canonical_bundle, compute_canonical_idempotent,
                           compute_counit, radon_nikodym_on_base, validate_comultiplication)
from wqg.errors import IdempotentViolation
from wqg.groupoids import cyclic_group_table, gen_groupoid_function, group_as_groupoid, pair_groupoid
from wqg.numkernel import column_space, same_subspace


def _vec(P, coeffs):
    v = np.zeros(P.dim, dtype=complex)
    for label, c in coeffs.items():
        v[P.index(label)] = c
    return v


def _span(P, *vectors):
    return column_space(np.stack(vectors, axis=1))


@pytest.mark.parametrize("name", BUNDLED)
def test_generators_pass(name):
    P, D, _ = example(name)
    rep = validate_comultiplication(P, D)
    assert rep.verdict == "pass"
    assert max(c.residual for c in rep.checks) < 1e-10


def test_function_algebra_of_z2():
    P, D = gen_groupoid_function(group_as_groupoid(cyclic_group_table(2), ["e", "g"]))
    assert validate_comultiplication(P, D).verdict == "pass"


def test_broken_comultiplication_detected():
    P, D, _ = example("Z2")
    T = D.tensor.copy()
    # Delta(g) = g (x) e
    T[:, :, 1] = 0
    T[1, 0, 1] = 1
    rep = validate_comultiplication(P, Comultiplication(P, T))
    # this map is still a coassociative *-homomorphism; only the right leg collapses to C
    assert rep.get("coalgebra.coassociativity").residual < 1e-12
    assert rep.get("coalgebra.multiplicative").residual < 1e-12
    assert rep.get("coalgebra.full_right_leg").status == "fail"
    assert rep.verdict == "fail"


def test_non_coassociative_comultiplication_detected():
    P, D, _ = example("Z2")
    T = D.tensor.copy()
    # Delta(g) = g (x) g + e (x) g
    T[0, 1, 1] = 1
    rep = validate_comultiplication(P, Comultiplication(P, T))
    assert rep.get("coalgebra.coassociativity").residual > 0.5


@pytest.mark.parametrize("name", HOPF)
def test_group_algebras_have_trivial_E(name):
    P, D, _ = example(name)
    E = compute_canonical_idempotent(P, D)
    assert np.array_equal(E, np.outer(P.unit, P.unit))


def test_E_of_matrix_units():
    P, D, _ = example("pair2_conv")
    E = compute_canonical_idempotent(P, D)
    e11, e22 = _vec(P, {"(1,1)": 1}), _vec(P, {"(2,2)": 1})
    assert np.allclose(E, np.outer(e11, e11) + np.outer(e22, e22))


def test_E_of_function_algebra_has_eight_terms():
    P, D, _ = example("pair2_fun")
    E = compute_canonical_idempotent(P, D)
    expected = np.zeros((4, 4))
    for i in (1, 2):
        for j in (1, 2):
            for k in (1, 2):
                expected[P.index(f"({i},{j})"), P.index(f"({j},{k})")] = 1
    assert np.allclose(E, expected)
    assert np.count_nonzero(np.abs(E) > 1e-12) == 8


@pytest.mark.parametrize("name", BUNDLED)
def test_E_axioms(name):
    P, D, _ = example(name)
    E = compute_canonical_idempotent(P, D)
    assert np.allclose(star2(P, E), E)
    assert np.allclose(mul2(P, E, E), E)


def test_legs():
    P, D, _ = example("Z2")
    cb = canonical_bundle(P, D)
    assert cb.B.rank == cb.C.rank == 1
    assert cb.B.residual_of(P.unit) < 1e-12
    M, DM, _ = example("pair2_conv")
    cb = canonical_bundle(M, DM)
    diag = _span(M, _vec(M, {"(1,1)": 1}), _vec(M, {"(2,2)": 1}))
    assert same_subspace(cb.B, diag) < 1e-12 and same_subspace(cb.C, diag) < 1e-12
    F, DF, _ = example("pair2_fun")
    cb = canonical_bundle(F, DF)
    by_source = [_vec(F, {f"(1,{j})": 1, f"(2,{j})": 1}) for j in (1, 2)]
    by_target = [_vec(F, {f"({i},1)": 1, f"({i},2)": 1}) for i in (1, 2)]
    assert same_subspace(cb.B, _span(F, *by_source)) < 1e-12
    assert same_subspace(cb.C, _span(F, *by_target)) < 1e-12


def test_pair_groupoid_3_legs_have_rank_3():
    P, D, _ = example("pair3_fun")
    cb = canonical_bundle(P, D)
    assert cb.B.rank == cb.C.rank == 3


def test_leg_antipodes():
    P, D, _ = example("Z2")
    cb = canonical_bundle(P, D)
    assert np.allclose(cb.S_B @ P.unit, P.unit)
    M, DM, _ = example("pair2_conv")
    cb = canonical_bundle(M, DM)
    for l in ("(1,1)", "(2,2)"):
        v = _vec(M, {l: 1})
        assert np.allclose(cb.S_B @ v, v)
    F, DF, _ = example("pair2_fun")
    cb = canonical_bundle(F, DF)
    for j in (1, 2):
        src = _vec(F, {f"(1,{j})": 1, f"(2,{j})": 1})
        tgt = _vec(F, {f"({j},1)": 1, f"({j},2)": 1})
        assert np.allclose(cb.S_B @ src, tgt)


def test_distinguished_functionals():
    P, D, _ = example("Z2")
    assert canonical_bundle(P, D).nu @ P.unit == pytest.approx(1)
    M, DM, _ = example("pair2_conv")
    nu = canonical_bundle(M, DM).nu
    assert nu[M.index("(1,1)")] == pytest.approx(1) and nu[M.index("(2,2)")] == pytest.approx(1)
    F, DF, _ = example("pair2_fun")
    nu = canonical_bundle(F, DF).nu
    for j in (1, 2):
        assert nu @ _vec(F, {f"(1,{j})": 1, f"(2,{j})": 1}) == pytest.approx(1)


def test_counits():
    P, D, _ = example("Z2")
    assert np.allclose(compute_counit(D), [1, 1])
    M, DM, _ = example("pair2_conv")
    assert np.allclose(compute_counit(DM), 1)
    F, DF, _ = example("pair2_fun")
    eps = compute_counit(DF)
    assert np.allclose(eps, [1 if l in ("(1,1)", "(2,2)") else 0 for l in F.labels])


def test_radon_nikodym_on_base():
    M, DM, _ = example("pair2_conv")
    cb = canonical_bundle(M, DM)
    y, inv = radon_nikodym_on_base(M, cb.nu, cb.B, cb.nu)
    assert np.allclose(y, M.unit) and inv
    g = _vec(M, {"(1,1)": 2, "(2,2)": 3})
    y, inv = radon_nikodym_on_base(M, cb.nu, cb.B, g)
    assert np.allclose(y, g) and inv
    g = _vec(M, {"(1,1)": 1})
    y, inv = radon_nikodym_on_base(M, cb.nu, cb.B, g)
    assert np.allclose(y, g) and not inv


def test_non_idempotent_E_raises():
    P, D, _ = example("Z2")
    T = D.tensor.copy()
    T[0, 0, 0] = 1.1
    with pytest.raises(IdempotentViolation):
        compute_canonical_idempotent(P, Comultiplication(P, T))


@settings(max_examples=20, deadline=None)
@given(st.floats(0.01, 0.5), st.integers(0, 3), st.integers(0, 3))
def test_E_is_the_unique_idempotent_candidate(eps, i, j):
    """Moving any entry of E breaks idempotence or absorption of Delta(A)."""
    P, D, _ = example("pair2_fun")
    E = compute_canonical_idempotent(P, D)
    E2 = E.copy()
    E2[i, j] += eps
    idem = np.max(np.abs(mul2(P, E2, E2) - E2))
    absorb = max(np.max(np.abs(mul2(P, E2, D.tensor[:, :, k]) - D.tensor[:, :, k])) for k in range(P.dim))
    assert max(idem, absorb) > 1e-3


def test_comultiplication_shape_checked():
    P, _, _ = example("Z2")
    with pytest.raises(ValueError):
        Comultiplication(P, np.zeros((3, 2)))


def test_pair_groupoid_has_expected_units():
    G = pair_groupoid(3)
    assert G.units == ("(1,1)", "(2,2)", "(3,3)")
