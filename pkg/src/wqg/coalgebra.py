"""Comultiplication, canonical idempotent, legs B and C, and base-algebra data."""
from dataclasses import dataclass

import numpy as np

from .algebra import mul, mul2, mul3, outer, star_vec, star2
from .errors import (AntipodeUnsolvable, CounitUnsolvable, DistinguishedFunctionalNotPositive,
                     IdempotentViolation, LegNotSubalgebra)
from .numkernel import (DEFAULT_TOL, column_space, max_abs, numerical_rank, same_subspace,
                        solve_least_squares, Subspace)
from .report import VerificationReport


@dataclass(frozen=True, eq=False)
class Comultiplication:
    """Delta(e_k) = sum_{i,j} delta[i * n + j, k] e_i (x) e_j."""
    algebra: object
    delta: np.ndarray

    def __post_init__(self):
        n = self.algebra.dim
        d = np.asarray(self.delta, dtype=complex)
        if d.shape == (n, n, n):
            d = d.reshape(n * n, n)
        if d.shape != (n * n, n):
            raise ValueError(f"comultiplication must be {n * n} x {n}")
        object.__setattr__(self, "delta", d)

    @property
    def tensor(self):
        """D[i, j, k], the coefficient of e_i (x) e_j in Delta(e_k)."""
        n = self.algebra.dim
        return self.delta.reshape(n, n, n)

    def __call__(self, a):
        return np.einsum("ijk,k->ij", self.tensor, a)


@dataclass(frozen=True, eq=False)
class Legs:
    B: Subspace
    C: Subspace


@dataclass(frozen=True, eq=False)
class CanonicalIdempotentBundle:
    """E with its legs; maps between legs are n x n matrices on A supported on the leg."""
    E: np.ndarray
    legs: Legs
    S_B: np.ndarray
    S_C: np.ndarray
    nu: np.ndarray
    mu: np.ndarray
    counit: np.ndarray
    sigma_nu: np.ndarray
    sigma_mu: np.ndarray

    @property
    def B(self):
        return self.legs.B

    @property
    def C(self):
        return self.legs.C


def _rep(tol, report):
    return VerificationReport(tol=tol.abs_residual) if report is None else report


def validate_comultiplication(P, comult, tol=DEFAULT_TOL, report=None):
    """*-homomorphism, coassociativity and fullness residuals."""
    rep = _rep(tol, report)
    n, D = P.dim, comult.tensor
    left = np.einsum("pqi,ijk->pqjk", D, D)
    right = np.einsum("ijk,pqj->ipqk", D, D)
    rep.add("coalgebra.coassociativity", max_abs(left - right), tol.abs_residual)
    # multiplicativity at (1, 1) is idempotence of E = Delta(1); reported on its own
    E = comult(P.unit)
    rep.add("coalgebra.E_idempotent", max_abs(mul2(P, E, E) - E), tol.abs_residual)
    hom = 0.0
    for i in range(n):
        for j in range(n):
            lhs = comult(mul(P, P.basis(i), P.basis(j)))
            rhs = mul2(P, D[:, :, i], D[:, :, j])
            hom = max(hom, max_abs(lhs - rhs))
    rep.add("coalgebra.multiplicative", hom, tol.abs_residual)
    st = max(max_abs(comult(star_vec(P, P.basis(i))) - star2(P, D[:, :, i])) for i in range(n))
    rep.add("coalgebra.star_preserving", st, tol.abs_residual)
    r1 = numerical_rank(D.reshape(n, n * n), tol)
    r2 = numerical_rank(D.transpose(1, 0, 2).reshape(n, n * n), tol)
    rep.flag("coalgebra.full_left_leg", r1 == n, f"rank {r1} of {n}")
    rep.flag("coalgebra.full_right_leg", r2 == n, f"rank {r2} of {n}")
    return rep


def compute_canonical_idempotent(P, comult, tol=DEFAULT_TOL, report=None):
    """E = Delta(1), verified self-adjoint, idempotent, a unit for Delta(A), weakly comultiplicative."""
    rep = _rep(tol, report)
    n, D = P.dim, comult.tensor
    E = comult(P.unit)
    checks = []
    checks.append(rep.add("coalgebra.E_selfadjoint", max_abs(star2(P, E) - E), tol.abs_residual))
    if "coalgebra.E_idempotent" not in rep.names():
        checks.append(rep.add("coalgebra.E_idempotent", max_abs(mul2(P, E, E) - E), tol.abs_residual))
    absorb = 0.0
    for k in range(n):
        d = D[:, :, k]
        absorb = max(absorb, max_abs(mul2(P, E, d) - d), max_abs(mul2(P, d, E) - d))
    checks.append(rep.add("coalgebra.E_absorbs_Delta", absorb, tol.abs_residual))
    id_delta = np.einsum("ij,pqj->ipq", E, D)
    delta_id = np.einsum("ij,pqi->pqj", E, D)
    e1 = outer(E, P.unit)
    one_e = outer(P.unit, E)
    prod1 = mul3(P, e1, one_e)
    prod2 = mul3(P, one_e, e1)
    weak = max(max_abs(id_delta - prod1), max_abs(prod1 - prod2), max_abs(prod2 - delta_id))
    checks.append(rep.add("coalgebra.weak_comultiplicativity", weak, tol.abs_residual))
    for c in checks:
        if c.status == "fail":
            raise IdempotentViolation(f"canonical idempotent check {c.name} failed", c)
    return E


def _coords(S, x):
    return S.basis.conj().T @ x


def _leg_subalgebra_residual(P, S):
    """How far S is from a unital *-subalgebra."""
    res = S.residual_of(P.unit)
    Q = S.basis
    for k in range(S.rank):
        res = max(res, S.residual_of(star_vec(P, Q[:, k])))
        for l in range(S.rank):
            res = max(res, S.residual_of(mul(P, Q[:, k], Q[:, l])))
    return res


def extract_legs(P, comult, E, tol=DEFAULT_TOL, report=None):
    """Left and right legs of E as orthonormal coefficient subspaces."""
    rep = _rep(tol, report)
    B = column_space(E, tol)
    C = column_space(E.T, tol)
    bad = []
    for nm, S in (("B", B), ("C", C)):
        c = rep.add(f"coalgebra.{nm}_subalgebra", _leg_subalgebra_residual(P, S), tol.abs_residual,
                    f"rank {S.rank}")
        if c.status == "fail":
            bad.append(c)
    in_bc = max_abs(B.projector() @ E @ C.projector().T - E)
    c = rep.add("coalgebra.E_in_B_tensor_C", in_bc, tol.abs_residual)
    if c.status == "fail":
        bad.append(c)
    res_b = res_c = 0.0
    for k in range(B.rank):
        x = B.basis[:, k]
        dx = comult(x)
        res_b = max(res_b, max_abs(dx - mul2(P, E, outer(P.unit, x))),
                    max_abs(dx - mul2(P, outer(P.unit, x), E)))
    for k in range(C.rank):
        y = C.basis[:, k]
        dy = comult(y)
        res_c = max(res_c, max_abs(dy - mul2(P, outer(y, P.unit), E)),
                    max_abs(dy - mul2(P, E, outer(y, P.unit))))
    rep.add("coalgebra.Delta_on_B", res_b, tol.abs_residual)
    rep.add("coalgebra.Delta_on_C", res_c, tol.abs_residual)
    rep.flag("coalgebra.leg_dimensions", B.rank == C.rank, f"dim B = {B.rank}, dim C = {C.rank}")
    if bad:
        raise LegNotSubalgebra(f"leg check {bad[0].name} failed", bad[0])
    return Legs(B, C)


def _solve_unique(A, b, tol):
    x, res = solve_least_squares(A, b)
    unique = numerical_rank(A, tol) == A.shape[1]
    return x[:, 0], res, unique


def solve_leg_antipodes(P, E, legs, tol=DEFAULT_TOL, report=None):
    """S_B: B -> C and S_C: C -> B as n x n maps on A (zero off the legs)."""
    rep = _rep(tol, report)
    n = P.dim
    QB, QC = legs.B.basis, legs.C.basis
    one = P.unit
    right_cols = np.stack([mul2(P, E, outer(one, QC[:, l])).ravel() for l in range(legs.C.rank)], axis=1)
    left_cols = np.stack([mul2(P, E, outer(QB[:, k], one)).ravel() for k in range(legs.B.rank)], axis=1)
    SBc = np.zeros((legs.C.rank, legs.B.rank), dtype=complex)
    res_b, uniq = 0.0, True
    for k in range(legs.B.rank):
        g, r, u = _solve_unique(right_cols, left_cols[:, k], tol)
        SBc[:, k] = g
        res_b, uniq = max(res_b, r), uniq and u
    cb = rep.add("coalgebra.S_B_solve", res_b, tol.abs_residual, "" if uniq else "solution not unique")
    if cb.status == "fail" or not uniq:
        raise AntipodeUnsolvable("E(b(x)1) = E(1(x)y) has no unique solution in C", cb)
    # (1 (x) c) E = (x (x) 1) E with x in B
    tgt = np.stack([mul2(P, outer(one, QC[:, l]), E).ravel() for l in range(legs.C.rank)], axis=1)
    cols = np.stack([mul2(P, outer(QB[:, k], one), E).ravel() for k in range(legs.B.rank)], axis=1)
    SCc = np.zeros((legs.B.rank, legs.C.rank), dtype=complex)
    res_c, uniq = 0.0, True
    for l in range(legs.C.rank):
        g, r, u = _solve_unique(cols, tgt[:, l], tol)
        SCc[:, l] = g
        res_c, uniq = max(res_c, r), uniq and u
    cc = rep.add("coalgebra.S_C_solve", res_c, tol.abs_residual, "" if uniq else "solution not unique")
    if cc.status == "fail" or not uniq:
        raise AntipodeUnsolvable("(1(x)c)E = (x(x)1)E has no unique solution in B", cc)
    SB = QC @ SBc @ QB.conj().T
    SC = QB @ SCc @ QC.conj().T
    rep.add("coalgebra.regularity", same_subspace(column_space(left_cols, tol), column_space(right_cols, tol)),
            tol.abs_residual, "E(B(x)1) = E(1(x)C)")
    rep.add("coalgebra.S_B_S_C_flip", max_abs(SB @ E @ SC.T - E.T), tol.abs_residual)
    inv = max(max_abs(star_vec(P, SC @ star_vec(P, SB @ QB[:, k])) - QB[:, k]) for k in range(legs.B.rank))
    rep.add("coalgebra.S_C_star_S_B_star", inv, tol.abs_residual)
    return SB, SC


def _leg_gram(P, f, Q):
    """M[l, k] = f(q_l* q_k) for the leg basis columns."""
    r = Q.shape[1]
    M = np.zeros((r, r), dtype=complex)
    for k in range(r):
        for l in range(r):
            M[l, k] = f @ mul(P, star_vec(P, Q[:, l]), Q[:, k])
    return M


def _pd(M, tol):
    H = (M + M.conj().T) / 2
    lam = np.linalg.eigvalsh(H)
    return max_abs(M - M.conj().T) <= tol.abs_residual and lam[0] > tol.pd_ratio * max(lam[-1], 0)


def _kms_residual(P, f, Q, sig):
    """max |f(x y) - f(y sig(x))| over leg basis pairs."""
    r = Q.shape[1]
    res = 0.0
    for k in range(r):
        for l in range(r):
            x, y = Q[:, k], Q[:, l]
            res = max(res, abs(f @ mul(P, x, y) - f @ mul(P, y, sig @ x)))
    return res


def distinguished_functionals(P, E, legs, S_B, S_C, tol=DEFAULT_TOL, report=None):
    """nu on B and mu on C with (nu (x) id)(E) = 1 = (id (x) mu)(E); returns (nu, mu, sigma_nu, sigma_mu)."""
    rep = _rep(tol, report)
    QB, QC = legs.B.basis, legs.C.basis
    beta, r1 = solve_least_squares(E.T @ np.conj(QB), P.unit)
    gamma, r2 = solve_least_squares(E @ np.conj(QC), P.unit)
    nu = (np.conj(QB) @ beta)[:, 0]
    mu = (np.conj(QC) @ gamma)[:, 0]
    rep.add("coalgebra.nu_solve", r1, tol.abs_residual)
    rep.add("coalgebra.mu_solve", r2, tol.abs_residual)
    okn = _pd(_leg_gram(P, nu, QB), tol)
    okm = _pd(_leg_gram(P, mu, QC), tol)
    cn = rep.flag("coalgebra.nu_positive_faithful", okn)
    cm = rep.flag("coalgebra.mu_positive_faithful", okm)
    if not (okn and okm):
        raise DistinguishedFunctionalNotPositive("nu or mu is not positive and faithful", cn if not okn else cm)
    SB_inv = np.linalg.pinv(S_B)
    SC_inv = np.linalg.pinv(S_C)
    sigma_nu = SB_inv @ SC_inv
    sigma_mu = S_B @ S_C
    rep.add("coalgebra.nu_weak_KMS", _kms_residual(P, nu, QB, sigma_nu), tol.abs_residual)
    rep.add("coalgebra.mu_weak_KMS", _kms_residual(P, mu, QC, sigma_mu), tol.abs_residual)
    rep.add("coalgebra.nu_sigma_invariant", max_abs((nu @ sigma_nu - nu) @ QB), tol.abs_residual)
    rep.add("coalgebra.mu_sigma_invariant", max_abs((mu @ sigma_mu - mu) @ QC), tol.abs_residual)
    rep.add("coalgebra.mu_equals_nu_S_C", max_abs((nu @ S_C - mu) @ QC), tol.abs_residual)
    rep.add("coalgebra.nu_equals_mu_S_B", max_abs((mu @ S_B - nu) @ QB), tol.abs_residual)
    return nu, mu, sigma_nu, sigma_mu


def compute_counit(comult, tol=DEFAULT_TOL, report=None):
    """Least-squares counit from (eps (x) id)Delta = id = (id (x) eps)Delta."""
    rep = _rep(tol, report)
    D = comult.tensor
    n = D.shape[0]
    # rows (j, k): sum_i eps_i D[i, j, k] = [j = k]; then sum_j D[i, j, k] eps_j = [i = k]
    A1 = D.transpose(1, 2, 0).reshape(n * n, n)
    A2 = D.transpose(0, 2, 1).reshape(n * n, n)
    A = np.vstack([A1, A2])
    b = np.concatenate([np.eye(n).ravel(), np.eye(n).ravel()])
    eps, res = solve_least_squares(A, b)
    c = rep.add("coalgebra.counit", res, tol.abs_residual)
    if c.status == "fail":
        raise CounitUnsolvable("no counit satisfies both counit equations", c)
    return eps[:, 0]


def radon_nikodym_on_base(P, nu, B, g, tol=DEFAULT_TOL):
    """y in B with g(b) = nu(b y) on B; returns (y, invertible_in_B)."""
    Q = B.basis
    r = B.rank
    A = np.array([[nu @ mul(P, Q[:, k], Q[:, l]) for l in range(r)] for k in range(r)])
    rhs = np.array([g @ Q[:, k] for k in range(r)])
    eta = np.linalg.solve(A, rhs)
    y = Q @ eta
    Ly = np.stack([Q.conj().T @ mul(P, y, Q[:, k]) for k in range(r)], axis=1)
    return y, numerical_rank(Ly, tol) == r


def canonical_bundle(P, comult, tol=DEFAULT_TOL, report=None):
    """Run the whole coalgebra stage after validation."""
    rep = _rep(tol, report)
    E = compute_canonical_idempotent(P, comult, tol, rep)
    legs = extract_legs(P, comult, E, tol, rep)
    SB, SC = solve_leg_antipodes(P, E, legs, tol, rep)
    nu, mu, snu, smu = distinguished_functionals(P, E, legs, SB, SC, tol, rep)
    eps = compute_counit(comult, tol, rep)
    return CanonicalIdempotentBundle(E, legs, SB, SC, nu, mu, eps, snu, smu)
