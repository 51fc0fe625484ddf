"""GNS spaces, the partial isometry W, modular operators and the groupoid certificate.

Every operator lives in orthonormal coordinates obtained from ``gram_frame``.
``lam`` maps coefficient vectors to those coordinates.
"""
from dataclasses import dataclass

import numpy as np

from .algebra import Functional, functional_gram, left_matrix, mul, mul2, outer, right_matrix, star_vec
from .errors import BridgeNotUnitary, DeltaNotPositive, NotPositiveDefinite, PartialIsometryViolation
from .numkernel import (DEFAULT_TOL, AntilinearOp, antilinear_adjoint, column_space, condition_number,
                        gram_frame, hermitian_power, max_abs, numerical_rank, same_subspace)
from .report import VerificationReport

SAMPLED_T = (-1.0, 0.37, 2.0)


@dataclass(frozen=True, eq=False)
class GNSSpace:
    """Hilbert space of a faithful positive functional on a subalgebra spanned by ``Q``."""
    algebra: object
    Q: np.ndarray
    gram: np.ndarray
    L: np.ndarray
    Linv: np.ndarray

    @property
    def dim(self):
        return self.Q.shape[1]

    @property
    def lam(self):
        """Coefficient vector in A (supported on the subalgebra) -> orthonormal coordinates."""
        return self.L.conj().T @ self.Q.conj().T

    @property
    def lam_inv(self):
        return self.Q @ self.Linv.conj().T

    def rep(self, x):
        return self.lam @ left_matrix(self.algebra, x) @ self.lam_inv

    def right_rep(self, x):
        return self.lam @ right_matrix(self.algebra, x) @ self.lam_inv

    def vector(self, x):
        return self.lam @ x

    @property
    def condition(self):
        return condition_number(self.gram)


@dataclass(frozen=True, eq=False)
class OperatorBundle:
    W: np.ndarray
    E_op: np.ndarray
    G_op: np.ndarray
    T: AntilinearOp
    nabla: np.ndarray
    J: AntilinearOp
    JhatB: np.ndarray
    Z: AntilinearOp = None
    P: np.ndarray = None
    sigma_sign: int = 0
    sampled_t: tuple = SAMPLED_T


def _rep(tol, report):
    return VerificationReport(tol=tol.abs_residual) if report is None else report


def _subspace_gram(P, f, Q):
    r = Q.shape[1]
    M = np.empty((r, r), dtype=complex)
    for k in range(r):
        for l in range(r):
            M[l, k] = f @ mul(P, star_vec(P, Q[:, l]), Q[:, k])
    return M


def gns_on(P, f, Q, tol=DEFAULT_TOL):
    M = _subspace_gram(P, f, Q)
    L, Linv = gram_frame(M, tol)
    return GNSSpace(P, Q, M, L, Linv)


def build_gns(P, phi, tol=DEFAULT_TOL, report=None):
    """GNS space of phi on A, with the *-representation checks."""
    rep = _rep(tol, report)
    gram = functional_gram(Functional(P, phi), tol)
    if not gram.faithful:
        c = rep.flag("gns.phi_faithful", False)
        raise NotPositiveDefinite("phi is not faithful and positive", c)
    L, Linv = gram_frame(gram.inner, tol)
    H = GNSSpace(P, np.eye(P.dim, dtype=complex), gram.inner, L, Linv)
    n = P.dim
    reps = [H.rep(P.basis(i)) for i in range(n)]
    sr = max(max_abs(H.rep(star_vec(P, P.basis(i))) - reps[i].conj().T) for i in range(n))
    hr = max(max_abs(H.rep(mul(P, P.basis(i), P.basis(j))) - reps[i] @ reps[j]) for i in range(n) for j in range(n))
    cond = H.condition
    rep.add("gns.star_representation", sr, tol.abs_residual, "rep(x*) = rep(x)^H", cond)
    rep.add("gns.multiplicative", hr, tol.abs_residual, "", cond)
    rep.add("gns.unital", max_abs(H.rep(P.unit) - np.eye(n)), tol.abs_residual)
    return H


def base_spaces(P, cb, tol=DEFAULT_TOL, report=None):
    """GNS spaces of nu on B and mu on C."""
    rep = _rep(tol, report)
    HB = gns_on(P, cb.nu, cb.B.basis, tol)
    HC = gns_on(P, cb.mu, cb.C.basis, tol)
    for nm, Hs in (("B", HB), ("C", HC)):
        r = Hs.dim
        Q = Hs.Q
        sr = max(max_abs(Hs.rep(star_vec(P, Q[:, k])) - Hs.rep(Q[:, k]).conj().T) for k in range(r))
        rep.add(f"gns.{nm}_star_representation", sr, tol.abs_residual, "", Hs.condition)
    return HB, HC


def base_bridge(P, cb, HB, HC, tol=DEFAULT_TOL, report=None):
    """J_B Lambda_B(x) = Lambda_C(S_B x) and the right representations it induces."""
    rep = _rep(tol, report)
    J = HC.lam @ cb.S_B @ HB.lam_inv
    c = rep.add("gns.JhatB_unitary", max(max_abs(J.conj().T @ J - np.eye(HB.dim)),
                                         max_abs(J @ J.conj().T - np.eye(HC.dim))), tol.abs_residual)
    if c.status == "fail":
        raise BridgeNotUnitary("the bridge between H_B and H_C is not unitary", c)
    SB_inv = np.linalg.pinv(cb.S_B)
    rb = max(max_abs(J.conj().T @ HC.rep(cb.S_B @ b) @ J - HB.right_rep(b)) for b in HB.Q.T)
    rc = max(max_abs(J @ HB.rep(SB_inv @ c) @ J.conj().T - HC.right_rep(c)) for c in HC.Q.T)
    rep.add("gns.B_right_representation", rb, tol.abs_residual)
    rep.add("gns.C_right_representation", rc, tol.abs_residual)
    return J


def embed_maps(P, comult, cb, ib, H, HB, HC, tol=DEFAULT_TOL, report=None):
    """rho_C(a), rho_B(a) and the boundedness of C and B acting on H."""
    rep = _rep(tol, report)
    n = P.dim
    phi, psi, sig = ib.phi, ib.psi, ib.sigma
    rhoC = [H.lam @ right_matrix(P, P.basis(i)) @ HC.lam_inv for i in range(n)]
    rhoB = [H.lam @ right_matrix(P, P.basis(i)) @ HB.lam_inv for i in range(n)]
    rc = rb = 0.0
    for i in range(n):
        for j in range(n):
            a, b = P.basis(i), P.basis(j)
            x = mul(P, a, sig @ star_vec(P, b))
            ct = comult(x) @ phi
            rc = max(rc, max_abs(rhoC[j].conj().T @ rhoC[i] - HC.right_rep(ct)))
            bt = psi @ comult(mul(P, x, ib.delta_inv))
            rb = max(rb, max_abs(rhoB[j].conj().T @ rhoB[i] - HB.right_rep(bt)))
    rep.add("gns.rho_C_bounded", rc, tol.abs_residual, "rho_C(b)^H rho_C(a) = pi_C^R((id(x)phi)Delta(a sigma(b*)))")
    rep.add("gns.rho_B_bounded", rb, tol.abs_residual,
            "rho_B(b)^H rho_B(a) = pi_B^R((psi(x)id)Delta(a sigma(b*) delta^-1))")
    norm_c = norm_b = 0.0
    inter = 0.0
    for nm, Hs in (("C", HC), ("B", HB)):
        worst = 0.0
        rho = rhoC if nm == "C" else rhoB
        for c in Hs.Q.T:
            big = np.linalg.norm(H.rep(c), 2)
            small = np.linalg.norm(Hs.rep(c), 2)
            worst = max(worst, big - small)
            for i in range(n):
                inter = max(inter, max_abs(H.rep(c) @ rho[i] - rho[i] @ Hs.rep(c)))
        if nm == "C":
            norm_c = worst
        else:
            norm_b = worst
    rep.add("gns.alpha_norm_bound", max(norm_c, 0.0), tol.abs_residual, "||alpha(pi_C(c))|| <= ||pi_C(c)||")
    rep.add("gns.beta_norm_bound", max(norm_b, 0.0), tol.abs_residual, "||beta(pi_B(b))|| <= ||pi_B(b)||")
    rep.add("gns.rho_intertwines", inter, tol.abs_residual, "alpha(c) rho(a) = rho(a) pi(c)")
    return rhoC, rhoB


def rep2(H, X):
    """(pi (x) pi)(X) for X in A (x) A."""
    n = H.algebra.dim
    R = np.stack([H.rep(H.algebra.basis(i)) for i in range(n)])
    m = R.shape[1]
    return np.einsum("ij,iab,jcd->acbd", X, R, R).reshape(m * m, m * m)


def build_W(P, comult, H, cb, ib, tol=DEFAULT_TOL, report=None):
    """W* (Lambda(p) (x) Lambda(a)) = (Lambda (x) Lambda)((Delta a)(p (x) 1)) and its checks."""
    rep = _rep(tol, report)
    n, D, m = P.dim, comult.tensor, P.mult
    lam2 = np.kron(H.lam, H.lam)
    lam2_inv = np.kron(H.lam_inv, H.lam_inv)
    Wc = np.einsum("kja,kpi->ijpa", D, m).reshape(n * n, n * n)
    Wstar = lam2 @ Wc @ lam2_inv
    W = Wstar.conj().T
    E_op = rep2(H, cb.E)
    I2 = np.eye(n * n)
    tolr = tol.abs_residual
    rep.add("W.WstarW_is_E", max_abs(Wstar @ W - E_op), tolr, "W*W = (pi(x)pi)(E)")
    c = rep.add("W.partial_isometry", max(max_abs(Wstar @ W @ Wstar - Wstar), max_abs(W @ Wstar @ W - W)), tolr)
    # W (Lambda a (x) Lambda b) = (Lambda (x) Lambda)((S^-1 (x) id)(Delta b)(a (x) 1))
    Wc2 = np.einsum("ijb,iap->pjab", np.einsum("ik,kjb->ijb", ib.S_inv, D), m).reshape(n * n, n * n)
    rep.add("W.characterization", max_abs(W - lam2 @ Wc2 @ lam2_inv), tolr, "W via S^-1")
    reps = [H.rep(P.basis(i)) for i in range(n)]
    dres = fres = 0.0
    for k in range(n):
        Dk = rep2(H, D[:, :, k])
        one_x = np.kron(np.eye(n), reps[k])
        dres = max(dres, max_abs(Wstar @ one_x @ W - Dk))
        fres = max(fres, max_abs(Wstar @ one_x - Dk @ Wstar))
    rep.add("W.implements_Delta", dres, tolr, "Delta(pi(a)) = W*(1(x)pi(a))W")
    rep.add("W.intertwines", fres, tolr, "W*(1(x)x) = (Delta x)W*")
    rep.add("W.E_absorbs", max_abs(E_op @ Wstar - Wstar), tolr, "EW* = W*")
    W4 = W.reshape(n, n, n, n)
    sres = 0.0
    for p in range(n):
        for q in range(n):
            xi, eta = H.lam @ P.basis(p), H.lam @ P.basis(q)
            X = np.einsum("ikjl,k,l->ij", W4, np.conj(eta), xi)
            cq = mul2(P, comult(star_vec(P, P.basis(q))), outer(P.unit, P.basis(p))) @ ib.phi
            sres = max(sres, max_abs(X - H.rep(cq)))
    rep.add("W.slice_representation", sres, tolr, "(id(x)omega_{Lp,Lq})(W) = pi((id(x)phi)(Delta(q*)(1(x)p)))")
    slices = np.stack([W4[:, k, :, l].ravel() for k in range(n) for l in range(n)], axis=1)
    pis = np.stack([r.ravel() for r in reps], axis=1)
    rep.add("W.slices_span_pi_A", same_subspace(column_space(slices, tol), column_space(pis, tol)), tolr)
    unitary = max_abs(Wstar @ W - I2) < tolr and max_abs(W @ Wstar - I2) < tolr
    rank = numerical_rank(W, tol)
    rep.note("W.unitarity", f"unitary: {unitary}, rank {rank} of {n * n}, dim B = {cb.B.rank}")
    if c.status == "fail":
        raise PartialIsometryViolation("W is not a partial isometry", c)
    return W, E_op, W @ Wstar


def modular_operators(P, ib, H, tol=DEFAULT_TOL, report=None):
    """T, nabla = T*T, J = T nabla^-1/2, and the sign s with pi(sigma(a)) = nabla^s pi(a) nabla^-s."""
    rep = _rep(tol, report)
    n = P.dim
    tolr = tol.abs_residual
    T = AntilinearOp(H.lam @ P.star @ np.conj(H.lam_inv))
    nabla = T.positive_part()
    nabla = (nabla + nabla.conj().T) / 2
    half_inv = hermitian_power(nabla, -0.5, tol)
    J = AntilinearOp(T.kernel @ np.conj(half_inv))
    KJ = J.kernel
    rep.add("modular.J_antiunitary", max_abs(KJ.conj().T @ KJ - np.eye(n)), tolr)
    rep.add("modular.J_involution", max_abs(J.compose(J) - np.eye(n)), tolr)
    rep.add("modular.J_nabla_J", max_abs(KJ @ np.conj(nabla) @ np.conj(KJ) - np.linalg.inv(nabla)), tolr,
            "J nabla J = nabla^-1")
    rep.add("modular.polar_decomposition", max_abs(J.kernel @ np.conj(hermitian_power(nabla, 0.5, tol)) - T.kernel),
            tolr, "T = J nabla^1/2")
    reps = [H.rep(P.basis(i)) for i in range(n)]
    nab_inv = np.linalg.inv(nabla)
    res = {}
    for s, (A, Ai) in ((1, (nabla, nab_inv)), (-1, (nab_inv, nabla))):
        res[s] = max(max_abs(H.rep(ib.sigma[:, i]) - A @ reps[i] @ Ai) for i in range(n))
    holds = [s for s in (1, -1) if res[s] < tolr]
    if len(holds) == 2:
        sign, detail = 1, "sigma trivial on the representation: both signs hold"
    elif holds:
        sign, detail = holds[0], f"pi(sigma(a)) = nabla^({holds[0]:+d}) pi(a) nabla^({-holds[0]:+d})"
    else:
        sign, detail = 0, "neither sign holds"
    rep.flag("modular.sigma_nabla_sign", bool(holds), detail, min(res.values()))
    # J Lambda(x) = Lambda(sigma_{i/2}(x)*) with sigma_z = nabla^{iz} . nabla^{-iz}
    half = hermitian_power(nabla, 0.5, tol)
    omega = H.lam @ P.unit
    jr = 0.0
    for i in range(n):
        y = half_inv @ reps[i] @ half @ omega
        jr = max(jr, max_abs(J(H.lam @ P.basis(i)) - T(y)))
    rep.add("modular.J_analytic", jr, tolr, "J Lambda(x) = Lambda(sigma_{i/2}(x)*)")
    return T, nabla, J, sign


def delta_space(P, ib, H, tol=DEFAULT_TOL, report=None):
    """H_delta, Z Lambda(a) = Lambda_delta(S(a*)) and P = Z*Z."""
    rep = _rep(tol, report)
    tolr = tol.abs_residual
    d = ib.delta
    rd = H.rep(d)
    lam_d = np.linalg.eigvalsh((rd + rd.conj().T) / 2)
    positive = ib.delta_selfadjoint and lam_d[0] > tol.pd_ratio * lam_d[-1]
    if not positive:
        c = rep.skip("delta_space", "delta is not self-adjoint and positive")
        raise DeltaNotPositive("delta is not positive", c)
    Hd = _delta_gns(P, ib, tol)
    Z = AntilinearOp(Hd.lam @ ib.S @ P.star @ np.conj(H.lam_inv))
    Zs = antilinear_adjoint(Z)
    Ld_inv = left_matrix(P, ib.delta_inv)
    Rd = right_matrix(P, d)
    expected_zs = H.lam @ Ld_inv @ Rd @ P.star @ np.conj(ib.S) @ np.conj(Hd.lam_inv)
    rep.add("delta_space.Zstar", max_abs(Zs.kernel - expected_zs), tolr, "Z* Lambda_d(a) = Lambda(d^-1 S(a)* d)",
            Hd.condition)
    Pop = Z.positive_part()
    expected_p = H.lam @ Ld_inv @ Rd @ ib.S_inv @ ib.S_inv @ H.lam_inv
    rep.add("delta_space.P_formula", max_abs(Pop - expected_p), tolr, "P Lambda(a) = Lambda(d^-1 S^-2(a) d)")
    return Z, (Pop + Pop.conj().T) / 2, Hd


def _delta_gns(P, ib, tol):
    """Gram phi(e_j* delta e_i) on all of A."""
    n = P.dim
    Q = np.eye(n, dtype=complex)
    M = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            M[j, i] = ib.phi @ mul(P, star_vec(P, P.basis(j)), mul(P, ib.delta, P.basis(i)))
    L, Linv = gram_frame(M, tol)
    return GNSSpace(P, Q, M, L, Linv)


def _pi_span(H):
    P = H.algebra
    return column_space(np.stack([H.rep(P.basis(i)).ravel() for i in range(P.dim)], axis=1))


def commutation_suite(H, W, E_op, G_op, nabla, Pop, tol=DEFAULT_TOL, report=None):
    """W(nabla(x)P) = (nabla(x)nabla)W and its consequences, as finite-dimensional matrix identities."""
    rep = _rep(tol, report)
    tolr = tol.abs_residual
    nP = np.kron(nabla, Pop)
    nn = np.kron(nabla, nabla)
    rep.add("commutation.W_nabla_P", max_abs(W @ nP - nn @ W), tolr, "finite-dimensional collapse")
    rep.add("commutation.E_nabla_P", max_abs(nP @ E_op - E_op @ nP @ E_op), tolr)
    rep.add("commutation.G_nabla_nabla", max_abs(nn @ G_op - G_op @ nn @ G_op), tolr)
    span = _pi_span(H)
    P = H.algebra
    for t in SAMPLED_T:
        nit = hermitian_power(nabla, 1j * t, tol)
        nmit = hermitian_power(nabla, -1j * t, tol)
        pmit = hermitian_power(Pop, -1j * t, tol)
        lhs = np.kron(nit, nit) @ W @ np.kron(nmit, pmit)
        rep.add(f"commutation.W_invariance_t={t}", max_abs(lhs - W), tolr)
        moved = column_space(np.stack([(nit @ H.rep(P.basis(i)) @ nmit).ravel() for i in range(P.dim)], axis=1))
        rep.add(f"commutation.modular_group_t={t}", same_subspace(moved, span), tolr,
                "nabla^{it} pi(A) nabla^{-it} = pi(A)")
    return rep


def _base_modular(P, Hs):
    K = Hs.lam @ P.star @ np.conj(Hs.lam_inv)
    nab = K.T @ np.conj(K)
    return (nab + nab.conj().T) / 2


def _leg_flow(P, Hs, nab, z, tol):
    """Matrix on A (supported on the leg) of x -> nabla^{iz} x nabla^{-iz}."""
    a = hermitian_power(nab, 1j * z, tol)
    b = hermitian_power(nab, -1j * z, tol)
    omega = Hs.lam @ P.unit
    cols = [Hs.lam_inv @ (a @ Hs.rep(q) @ b @ omega) for q in Hs.Q.T]
    return np.stack(cols, axis=1) @ Hs.Q.conj().T


def lcqg_certificate(P, comult, cb, ib, H, HB, HC, ops, tol=DEFAULT_TOL, report=None):
    """Checklist of the axioms of a measured quantum groupoid at finite dimension."""
    rep = _rep(tol, report)
    tolr = tol.abs_residual
    n, D, E = P.dim, comult.tensor, cb.E
    QB, QC = cb.B.basis, cb.C.basis
    left = np.einsum("pqi,ijk->pqjk", D, D)
    right = np.einsum("ijk,pqj->ipqk", D, D)
    rep.add("lcqg_certificate.coassociativity", max_abs(left - right), tolr)
    rep.add("lcqg_certificate.E_axioms", max(max_abs(mul2(P, E, E) - E), max_abs(ops.E_op - ops.E_op.conj().T),
                                        max_abs(ops.W.conj().T @ ops.W - ops.E_op)), tolr)
    rb = numerical_rank(np.stack([HB.rep(q).ravel() for q in QB.T], axis=1), tol)
    rep.flag("lcqg_certificate.B_nondegenerate", rb == cb.B.rank and HB.rep(P.unit).shape[0] == cb.B.rank,
             f"faithful representation of dim {rb}")
    nab_nu = _base_modular(P, HB)
    nab_mu = _base_modular(P, HC)
    inv = 0.0
    spanB = column_space(np.stack([HB.rep(q).ravel() for q in QB.T], axis=1))
    for t in SAMPLED_T:
        a = hermitian_power(nab_nu, 1j * t, tol)
        b = hermitian_power(nab_nu, -1j * t, tol)
        moved = column_space(np.stack([(a @ HB.rep(q) @ b).ravel() for q in QB.T], axis=1))
        inv = max(inv, same_subspace(moved, spanB))
    rep.add("lcqg_certificate.nu_KMS_flow", inv, tolr, "nabla_nu^{it} pi_B(B) nabla_nu^{-it} = pi_B(B)")
    rep.add("lcqg_certificate.nu_separability", max_abs(E.T @ cb.nu - P.unit), tolr, "(nu(x)id)(E) = 1")
    sig_half = _leg_flow(P, HB, nab_nu, 0.5j, tol)
    sig_mhalf = _leg_flow(P, HB, nab_nu, -0.5j, tol)
    R = cb.S_B @ sig_mhalf
    lhs = np.stack([cb.nu @ mul2(P, E, outer(q, P.unit)) for q in QB.T], axis=1)
    rep.add("lcqg_certificate.E_separability_idempotent", max_abs(lhs - R @ sig_half @ QB), tolr, "(nu(x)id)(E(b(x)1)) = R(sigma^nu_{i/2}(b))")
    rep.add("lcqg_certificate.R_star", max(max_abs(R @ star_vec(P, q) - star_vec(P, R @ q)) for q in QB.T), tolr,
            "R(b*) = R(b)*")
    fl = 0.0
    for t in SAMPLED_T:
        sn = _leg_flow(P, HB, nab_nu, t, tol)
        sm = _leg_flow(P, HC, nab_mu, -t, tol)
        fl = max(fl, max_abs(sn @ E @ sm.T - E))
    rep.add("lcqg_certificate.gamma_maps_flow", fl, tolr, "(sigma^nu_t (x) sigma^mu_-t)(E) = E")
    rep.add("lcqg_certificate.gamma_maps_gamma", max_abs(cb.S_B @ E @ cb.S_C.T - E.T), tolr,
            "(gamma_N (x) gamma_L)(E) = flip E")
    R_inv = np.linalg.pinv(R)
    rep.add("lcqg_certificate.gamma_maps_R", max_abs(R @ E @ R_inv.T - E.T), tolr, "(R (x) R^-1)(E) = flip E")
    from .integrals import left_invariance_residual, right_invariance_residual
    rep.add("lcqg_certificate.left_invariance", left_invariance_residual(P, comult, cb.C, ib.phi), tolr)
    rep.add("lcqg_certificate.right_invariance", right_invariance_residual(P, comult, cb.B, ib.psi), tolr)
    rep.flag("lcqg_certificate.quasi_invariance", ib.quasi_invariant)
    th = 0.0
    if ib.quasi_invariant:
        for t in SAMPLED_T:
            st = _leg_flow(P, H, ops.nabla, t, tol)
            imgs = st @ QB
            th = max(th, cb.B.residual_of(imgs), max_abs(cb.nu @ imgs - cb.nu @ QB))
        rep.add("lcqg_certificate.theta_condition", th, tolr, "sigma_t(B) = B and nu o sigma_t = nu")
    else:
        rep.skip("lcqg_certificate.theta_condition", "not quasi-invariant")
    rd = H.rep(ib.delta)
    lam_d = np.linalg.eigvalsh((rd + rd.conj().T) / 2)
    if ib.delta_selfadjoint and lam_d[0] > tol.pd_ratio * lam_d[-1]:
        root = H.lam_inv @ (hermitian_power((rd + rd.conj().T) / 2, 0.5, tol) @ (H.lam @ P.unit))
        vs = max(abs(ib.psi @ P.basis(k) - ib.phi @ mul(P, mul(P, root, P.basis(k)), root)) for k in range(n))
        rep.add("lcqg_certificate.radon_nikodym", vs, tolr, "psi = phi(delta^1/2 . delta^1/2)")
    else:
        rep.skip("lcqg_certificate.radon_nikodym", "delta not positive")
    hopf = max_abs(E - outer(P.unit, P.unit)) < tolr
    unitary = max_abs(ops.W.conj().T @ ops.W - np.eye(n * n)) < tolr
    rep.flag("lcqg_certificate.W_unitary_iff_hopf", hopf == unitary, f"Hopf: {hopf}, W unitary: {unitary}")
    return rep
