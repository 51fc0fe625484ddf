"""Integrals, antipode, modular automorphisms, the modular element and their identity suites."""
from dataclasses import dataclass, replace
from itertools import product

import numpy as np

from .algebra import (Functional, functional_gram, hermitian_conjugate_functional,
                      is_hermitian_functional, left_matrix, mul, mul2, outer, star_vec)
from .errors import (AntipodeInconsistent, NoFaithfulPositiveIntegral, NoIntegral, NotFaithful,
                     SpanDeficient)
from .numkernel import DEFAULT_TOL, max_abs, null_space, numerical_rank, rref
from .report import VerificationReport

MAX_SIGN_SEARCH_DIM = 12


@dataclass(frozen=True, eq=False)
class IntegralBundle:
    phi: np.ndarray
    psi: np.ndarray
    S: np.ndarray
    S_inv: np.ndarray
    sigma: np.ndarray
    sigma_prime: np.ndarray
    delta: np.ndarray
    delta_inv: np.ndarray
    quasi_invariant: bool = False
    delta_selfadjoint: bool = False
    left_cone_dim: int = 0
    right_cone_dim: int = 0


def _rep(tol, report):
    return VerificationReport(tol=tol.abs_residual) if report is None else report


def _hermitian_cone(P, A, tol):
    """Canonical basis of {f : A f = 0, f hermitian} as a real vector space."""
    n = P.dim
    H = np.conj(P.star.T)
    Ar, Ai = A.real, A.imag
    Hr, Hi = H.real, H.imag
    eye = np.eye(n)
    M = np.vstack([
        np.hstack([Ar, -Ai]),
        np.hstack([Ai, Ar]),
        np.hstack([eye - Hr, -Hi]),
        np.hstack([-Hi, eye + Hr]),
    ])
    N = null_space(M, tol).basis.real
    if N.shape[1] == 0:
        return []
    R = rref(N.T)
    return [r[:n] + 1j * r[n:] for r in R]


def left_invariance_residual(P, comult, C, phi):
    """max over k of the distance of (id (x) phi)(Delta e_k) from C."""
    D = comult.tensor
    return max(C.residual_of(D[:, :, k] @ phi) for k in range(P.dim))


def right_invariance_residual(P, comult, B, psi):
    D = comult.tensor
    return max(B.residual_of(psi @ D[:, :, k]) for k in range(P.dim))


def invariance_cones(P, comult, legs, tol=DEFAULT_TOL):
    D = comult.tensor
    n = P.dim
    offC = np.eye(n) - legs.C.projector()
    offB = np.eye(n) - legs.B.projector()
    A_left = np.vstack([offC @ D[:, :, k] for k in range(n)])
    A_right = np.vstack([offB @ D[:, :, k].T for k in range(n)])
    return _hermitian_cone(P, A_left, tol), _hermitian_cone(P, A_right, tol)


def find_integrals(P, comult, legs, tol=DEFAULT_TOL, report=None):
    """Left/right invariant Hermitian cones and a deterministic faithful positive left integral."""
    rep = _rep(tol, report)
    left, right = invariance_cones(P, comult, legs, tol)
    rep.note("integrals.cone_dimensions", f"left {len(left)}, right {len(right)}")
    if not left:
        c = rep.flag("integrals.left_integral_exists", False, "left invariant cone is zero")
        raise NoIntegral("no nonzero left invariant functional", c)
    d = len(left)
    if d > MAX_SIGN_SEARCH_DIM:
        c = rep.flag("integrals.left_integral_exists", False, f"cone dimension {d} exceeds search cap")
        raise NoFaithfulPositiveIntegral("cone too large for the sign search", c)
    for signs in product((1, -1), repeat=d):
        cand = sum(s * v for s, v in zip(signs, left))
        if functional_gram(Functional(P, cand), tol).faithful:
            rep.note("integrals.left_integral_selected", f"signs {signs}")
            return left, right, cand
    c = rep.flag("integrals.left_integral_exists", False, "no faithful positive member found")
    raise NoFaithfulPositiveIntegral("no sign combination gives a faithful positive functional", c)


def check_left_integral(P, comult, legs, phi, tol=DEFAULT_TOL, report=None):
    """Invariance, hermiticity and faithful positivity of a given phi."""
    rep = _rep(tol, report)
    c = rep.add("integrals.left_invariance", left_invariance_residual(P, comult, legs.C, phi), tol.abs_residual)
    gram = functional_gram(Functional(P, phi), tol)
    f = rep.flag("integrals.phi_positive_faithful", gram.faithful)
    if c.status == "fail":
        raise NoIntegral("phi is not left invariant", c)
    if not gram.faithful:
        raise NoFaithfulPositiveIntegral("phi is not faithful and positive", f)
    return gram


def antipode_from_integral(P, comult, phi, legs=None, bundle=None, tol=DEFAULT_TOL, report=None):
    """S with S((id(x)phi)((Delta a)(1(x)b))) = (id(x)phi)((1(x)a)(Delta b)), plus its property checks."""
    rep = _rep(tol, report)
    n, D = P.dim, comult.tensor
    F = np.einsum("ijk,k->ij", P.mult, phi)
    U = np.einsum("ipa,pb->iab", D, F).reshape(n, n * n)
    V = np.einsum("ipb,ap->iab", D, F).reshape(n, n * n)
    rank = numerical_rank(U, tol)
    c = rep.flag("integrals.antipode_span", rank == n, f"rank {rank} of {n}")
    if rank < n:
        raise SpanDeficient("slices (id(x)phi)((Delta a)(1(x)b)) do not span A", c)
    S = V @ np.linalg.pinv(U)
    rep.add("integrals.antipode_solve", max_abs(S @ U - V), tol.abs_residual)
    rs = numerical_rank(S, tol)
    rep.flag("integrals.antipode_bijective", rs == n, f"rank {rs}")
    S_inv = np.linalg.inv(S) if rs == n else np.linalg.pinv(S)
    anti = 0.0
    for i in range(n):
        for j in range(n):
            lhs = S @ mul(P, P.basis(i), P.basis(j))
            anti = max(anti, max_abs(lhs - mul(P, S[:, j], S[:, i])))
    rep.add("integrals.antipode_antimultiplicative", anti, tol.abs_residual)
    inv = max(max_abs(star_vec(P, S @ star_vec(P, S[:, k])) - P.basis(k)) for k in range(n))
    rep.add("integrals.antipode_star_inverse", inv, tol.abs_residual, "S(S(x)*)* = x")
    cop = max(max_abs(comult(S[:, k]) - S @ D[:, :, k].T @ S.T) for k in range(n))
    rep.add("integrals.antipode_anticomultiplicative", cop, tol.abs_residual, "Delta S = (S(x)S) flip Delta")
    if legs is not None and bundle is not None:
        QB, QC = legs.B.basis, legs.C.basis
        rep.add("integrals.antipode_restricts_S_B", max_abs(S @ QB - bundle.S_B @ QB), tol.abs_residual)
        rep.add("integrals.antipode_restricts_S_C", max_abs(S @ QC - bundle.S_C @ QC), tol.abs_residual)
    psi = S.T @ phi
    Fpsi = np.einsum("ijk,k->ij", P.mult, psi)
    lhs = S @ np.einsum("ap,pjb->jab", Fpsi, D).reshape(n, n * n)
    rhs = np.einsum("pja,pb->jab", D, Fpsi).reshape(n, n * n)
    c = rep.add("integrals.antipode_psi_characterization", max_abs(lhs - rhs), tol.abs_residual)
    if c.status == "fail":
        raise AntipodeInconsistent("antipode from phi disagrees with the psi characterization", c)
    return S, S_inv


def modular_automorphism(P, phi, tol=DEFAULT_TOL, report=None):
    """sigma = F^-1 F^T, so that phi(ab) = phi(b sigma(a))."""
    rep = _rep(tol, report)
    n = P.dim
    F = np.einsum("ijk,k->ij", P.mult, phi)
    if numerical_rank(F, tol) < n:
        c = rep.flag("integrals.phi_nondegenerate", False)
        raise NotFaithful("phi(e_i e_j) is singular", c)
    sigma = np.linalg.solve(F, F.T)
    kms = 0.0
    hom = 0.0
    for i in range(n):
        for j in range(n):
            a, b = P.basis(i), P.basis(j)
            kms = max(kms, abs(phi @ mul(P, a, b) - phi @ mul(P, b, sigma[:, i])))
            hom = max(hom, max_abs(sigma @ mul(P, a, b) - mul(P, sigma[:, i], sigma[:, j])))
    rep.add("integrals.sigma_kms", kms, tol.abs_residual, "phi(ab) = phi(b sigma(a))")
    rep.add("integrals.sigma_automorphism", hom, tol.abs_residual)
    rep.add("integrals.phi_sigma_invariant", max_abs(phi @ sigma - phi), tol.abs_residual)
    sig_inv = np.linalg.inv(sigma)
    st = max(max_abs(star_vec(P, sigma @ P.basis(k)) - sig_inv @ star_vec(P, P.basis(k))) for k in range(n))
    rep.add("integrals.sigma_star", st, tol.abs_residual, "sigma(x)* = sigma^-1(x*)")
    return sigma


def element_inverse(P, x, tol=DEFAULT_TOL):
    L = left_matrix(P, x)
    if numerical_rank(L, tol) < P.dim:
        return None
    return np.linalg.solve(L, P.unit)


def modular_element(P, phi, psi, tol=DEFAULT_TOL, report=None):
    """delta with psi(x) = phi(x delta); returns (delta, delta_inv, selfadjoint)."""
    rep = _rep(tol, report)
    n = P.dim
    F = np.einsum("ijk,k->ij", P.mult, phi)
    if numerical_rank(F, tol) < n:
        c = rep.flag("integrals.phi_nondegenerate", False)
        raise NotFaithful("phi(e_i e_j) is singular", c)
    delta = np.linalg.solve(F, psi)
    rep.add("integrals.delta_defining", max_abs(F @ delta - psi), tol.abs_residual, "psi(x) = phi(x delta)")
    dinv = element_inverse(P, delta, tol)
    c = rep.flag("integrals.delta_invertible", dinv is not None)
    if dinv is None:
        raise NotFaithful("modular element is not invertible", c)
    sa = max_abs(star_vec(P, delta) - delta) < tol.abs_residual
    rep.note("integrals.delta_selfadjoint", "self-adjoint" if sa else "not self-adjoint")
    return delta, dinv, sa


def scaling_scalar(P, sigma, delta):
    """tau with sigma(delta) = tau delta, or None when no scalar relation holds."""
    sd = sigma @ delta
    tau = np.vdot(delta, sd) / np.vdot(delta, delta)
    return (tau, max_abs(sd - tau * delta))


def build_integral_bundle(P, comult, bundle, phi=None, psi_supplied=None, tol=DEFAULT_TOL, report=None):
    """Find or verify phi, then build S, psi = phi o S, sigma, sigma', delta."""
    rep = _rep(tol, report)
    legs = bundle.legs
    left, right = invariance_cones(P, comult, legs, tol)
    if phi is None:
        _, _, phi = find_integrals(P, comult, legs, tol, rep)
    else:
        phi = np.asarray(phi, dtype=complex)
        rep.note("integrals.cone_dimensions", f"left {len(left)}, right {len(right)}")
    check_left_integral(P, comult, legs, phi, tol, rep)
    S, S_inv = antipode_from_integral(P, comult, phi, legs, bundle, tol, rep)
    psi = S.T @ phi
    rep.add("integrals.right_invariance", right_invariance_residual(P, comult, legs.B, psi), tol.abs_residual,
            "psi = phi o S")
    rep.flag("integrals.psi_positive_faithful", functional_gram(Functional(P, psi), tol).faithful)
    psi_for_delta = psi
    if psi_supplied is not None:
        # a supplied psi must be right invariant and agree with phi o S
        psi_for_delta = np.asarray(psi_supplied, dtype=complex)
        rep.add("integrals.supplied_psi_right_invariance",
                right_invariance_residual(P, comult, legs.B, psi_for_delta), tol.abs_residual)
        rep.add("integrals.antipode_consistency", max_abs(psi_for_delta - psi), tol.abs_residual,
                "supplied psi = phi o S")
    sigma = modular_automorphism(P, phi, tol, rep)
    sigma_prime = S_inv @ np.linalg.inv(sigma) @ S
    Fpsi = np.einsum("ijk,k->ij", P.mult, psi)
    kms = max(abs(psi @ mul(P, P.basis(i), P.basis(j)) - psi @ mul(P, P.basis(j), sigma_prime[:, i]))
              for i in range(P.dim) for j in range(P.dim))
    rep.add("integrals.sigma_prime_kms", kms, tol.abs_residual, "psi(ab) = psi(b sigma'(a))")
    rep.add("integrals.sigma_prime_formula", max_abs(Fpsi @ sigma_prime - Fpsi.T), tol.abs_residual,
            "sigma' = S^-1 sigma^-1 S")
    delta, dinv, sa = modular_element(P, phi, psi_for_delta, tol, rep)
    tau, tres = scaling_scalar(P, sigma, delta)
    if tres < tol.abs_residual:
        rep.note("integrals.scaling_scalar", f"sigma(delta) = tau delta with tau = {tau.real:.12g}{tau.imag:+.3g}j")
    else:
        rep.note("integrals.scaling_scalar", "no scalar relation between sigma(delta) and delta")
    return IntegralBundle(phi, psi, S, S_inv, sigma, sigma_prime, delta, dinv, False, sa, len(left), len(right))


class _Ops:
    """Shorthands shared by the identity suites."""

    def __init__(self, P, comult, cb, ib):
        self.P, self.cb, self.ib = P, cb, ib
        self.n = P.dim
        self.D = comult.tensor
        self.comult = comult
        self.one = P.unit
        self.E = cb.E
        S, Si = ib.S, ib.S_inv
        self.S2 = S @ S
        self.Sm2 = Si @ Si
        self.F1 = self.E @ S.T
        self.F2 = S @ self.E
        self.F3 = self.E @ Si.T
        self.F4 = Si @ self.E
        self.sig_inv = np.linalg.inv(ib.sigma)
        self.sigp_inv = np.linalg.inv(ib.sigma_prime)
        self.dstar = star_vec(P, ib.delta)

    def m(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = mul(self.P, out, x)
        return out

    def m2(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = mul2(self.P, out, x)
        return out

    def e(self, i):
        return self.P.basis(i)

    def basis(self):
        return [self.e(i) for i in range(self.n)]

    def pairs(self):
        return [(self.e(i), self.e(j)) for i in range(self.n) for j in range(self.n)]


def relation_suite(P, comult, cb, ib, tol=DEFAULT_TOL, report=None):
    """One residual per identity relating phi, psi, S, sigma, sigma', delta, E, nu, mu."""
    rep = _rep(tol, report)
    o = _Ops(P, comult, cb, ib)
    phi, psi, S, Si = ib.phi, ib.psi, ib.S, ib.S_inv
    sig, sigp, d, di, ds = ib.sigma, ib.sigma_prime, ib.delta, ib.delta_inv, o.dstar
    one, E, tolr = o.one, o.E, tol.abs_residual

    def add(name, res, detail=""):
        rep.add("relations." + name, res, tolr, detail)

    add("nu_of_right_slice", max(abs(cb.nu @ (psi @ comult(x)) - psi @ x) for x in o.basis()))
    add("mu_of_left_slice", max(abs(cb.mu @ (comult(x) @ phi) - phi @ x) for x in o.basis()))

    r = [0.0] * 4
    for a in o.basis():
        L = comult(a) @ phi
        R = psi @ comult(a)
        r[0] = max(r[0], max_abs(o.m2(o.F2, outer(one, a)) @ phi - L))
        r[1] = max(r[1], max_abs(o.m2(outer(one, a), o.F4) @ phi - L))
        r[2] = max(r[2], max_abs(psi @ o.m2(outer(a, one), o.F1) - R))
        r[3] = max(r[3], max_abs(psi @ o.m2(o.F3, outer(a, one)) - R))
    add("left_slice_absorbs_1", r[0])
    add("left_slice_absorbs_2", r[1])
    add("right_slice_absorbs_1", r[2])
    add("right_slice_absorbs_2", r[3])

    r1 = r2 = 0.0
    for a in o.basis():
        lhs = phi @ comult(a)
        r1 = max(r1, max_abs(lhs - o.m(o.m2(o.F1, outer(one, a)) @ phi, d)))
        r2 = max(r2, max_abs(lhs - o.m(ds, o.m2(outer(one, a), o.F3) @ phi)))
    add("right_slice_delta_1", r1)
    add("right_slice_delta_2", r2)

    add("phi_S_inverse", max(abs(phi @ (Si @ a) - phi @ o.m(ds, a)) for a in o.basis()))
    add("S_delta_delta_star", max_abs(o.m(S @ d, ds) - one), "S(delta) delta* = 1")

    add("sigma_sigma_prime_delta_1", max_abs(o.sig_inv @ d - o.sigp_inv @ d))
    add("sigma_sigma_prime_delta_2", max(max_abs(sig @ (o.sigp_inv @ d) - d), max_abs(sigp @ (o.sig_inv @ d) - d)))
    r3 = max(max(max_abs(sigp @ a - o.m(d, sig @ a, di)), max_abs(sig @ a - o.m(di, sigp @ a, d)))
             for a in o.basis())
    add("sigma_sigma_prime_delta_3", r3)
    add("sigma_sigma_prime_delta_4", max(max_abs(sig @ (o.sigp_inv @ a) - o.m(di, a, d)) for a in o.basis()))

    Dd, Dds = comult(d), comult(ds)
    p1 = p2 = rl = 0.0
    for p, q in o.pairs():
        pq = outer(p, q)
        p1 = max(p1, abs(phi @ o.m2(pq, Dd) @ phi - psi @ o.m2(pq, E) @ psi))
        p2 = max(p2, abs(phi @ o.m2(Dds, pq) @ phi - psi @ o.m2(E, pq) @ psi))
        rl = max(rl, max_abs(psi @ o.m2(pq, E) - o.m(q, Si @ (psi @ comult(p)))))
    add("Delta_delta_pairing_1", p1)
    add("Delta_delta_pairing_2", p2)
    add("right_invariance_slice", rl)

    s_dinv = Si @ di
    sm2_ds = o.Sm2 @ ds
    s2_d = o.S2 @ d
    add("Delta_delta_1", max(max_abs(Dd - o.m2(outer(d, s_dinv), E)), max_abs(Dd - o.m2(outer(d, sm2_ds), E)),
                            max_abs(Dd - o.m2(E, outer(d, sm2_ds), E))))
    add("Delta_delta_2", max(max_abs(Dds - o.m2(E, outer(ds, s2_d))), max_abs(Dds - o.m2(E, outer(ds, s2_d), E))))
    add("Delta_delta_3", max(max_abs(Dds - o.m2(outer(d, ds), E)), max_abs(Dds - o.m2(E, outer(d, ds), E))))
    add("Delta_delta_4", max(max_abs(Dd - o.m2(E, outer(ds, d))), max_abs(Dd - o.m2(E, outer(ds, d), E))))
    add("Delta_delta_5", max_abs(Dd - o.m2(E, outer(d, d), E)))
    add("Delta_delta_6", max_abs(Dds - o.m2(E, outer(ds, ds), E)))

    ds1 = ds2 = c1 = c2 = c3 = 0.0
    sig_sm2 = sig @ o.Sm2
    for k in range(o.n):
        a = o.e(k)
        Da = o.D[:, :, k]
        ds1 = max(ds1, max_abs(comult(sig @ a) - o.S2 @ Da @ sig.T))
        ds2 = max(ds2, max_abs(comult(sigp @ a) - sigp @ Da @ o.Sm2.T))
        c1 = max(c1, max_abs(comult(o.sig_inv @ a) - o.Sm2 @ Da @ o.sig_inv.T))
        c2 = max(c2, max_abs(comult(o.sigp_inv @ a) - o.sigp_inv @ Da @ o.S2.T))
        c3 = max(c3, max_abs(comult(sig_sm2 @ a) - Da @ sig_sm2.T))
    add("Delta_sigma", ds1, "Delta sigma = (S^2 (x) sigma) Delta")
    add("Delta_sigma_prime", ds2, "Delta sigma' = (sigma' (x) S^-2) Delta")
    add("Delta_sigma_inverses", max(c1, c2))
    add("Delta_sigma_S_minus2", c3)

    QB, QC = cb.B.basis, cb.C.basis
    add("sigma_on_C", max(cb.C.residual_of(sig @ QC), max_abs(sig @ QC - o.S2 @ QC),
                                  max_abs(sig @ QC - cb.sigma_mu @ QC)))
    add("sigma_prime_on_B", max(cb.B.residual_of(sigp @ QB), max_abs(sigp @ QB - o.Sm2 @ QB),
                                  max_abs(sigp @ QB - cb.sigma_nu @ QB)))
    add("base_functionals_invariant", max(max_abs((cb.mu @ sig - cb.mu) @ QC),
                                            max_abs((cb.nu @ sigp - cb.nu) @ QB)))
    return rep


def quasi_invariance_suite(P, comult, cb, ib, tol=DEFAULT_TOL, report=None):
    """Detect quasi-invariance and run the identities that depend on it; returns (report, flag)."""
    rep = _rep(tol, report)
    o = _Ops(P, comult, cb, ib)
    tolr = tol.abs_residual
    sig, sigp, d, di = ib.sigma, ib.sigma_prime, ib.delta, ib.delta_inv
    QB = cb.B.basis
    inv_res = cb.B.residual_of(sig @ QB)
    nu_res = max_abs((cb.nu @ sig - cb.nu) @ QB)
    flag = inv_res < tolr and nu_res < tolr
    rep.note("quasi.flag", f"quasi-invariant: {flag}", max(inv_res, nu_res))
    names = ["psi_sigma_S_minus2_invariant", "sigma_prime_commutes_sigma_S_minus2", "sigma_commutes_S2", "sigma_prime_commutes_S2",
             "sigma_commutes_sigma_prime", "sigma_inverse_via_delta"]
    sa_names = ["selfadjoint_delta_phi_S", "selfadjoint_delta_S", "selfadjoint_delta_slice", "selfadjoint_delta_Delta", "sigma_sigma_prime_Delta"]
    if not flag:
        for nm in names + sa_names:
            rep.skip("quasi." + nm, "not quasi-invariant")
        return rep, False

    def add(name, res):
        rep.add("quasi." + name, res, tolr)

    psi, phi = ib.psi, ib.phi
    sig_sm2 = sig @ o.Sm2
    add("psi_sigma_S_minus2_invariant", max_abs(psi @ sig_sm2 - psi))
    add("sigma_prime_commutes_sigma_S_minus2", max_abs(sigp @ sig_sm2 - sig_sm2 @ sigp))
    add("sigma_commutes_S2", max_abs(sig @ o.S2 - o.S2 @ sig))
    add("sigma_prime_commutes_S2", max_abs(sigp @ o.S2 - o.S2 @ sigp))
    add("sigma_commutes_sigma_prime", max_abs(sigp @ sig - sig @ sigp))
    add("sigma_inverse_via_delta", max(max(max_abs(o.sig_inv @ a - o.m(d, o.sigp_inv @ a, di)),
                                       max_abs(o.sigp_inv @ a - o.m(di, o.sig_inv @ a, d))) for a in o.basis()))
    if not ib.delta_selfadjoint:
        for nm in sa_names:
            rep.skip("quasi." + nm, "delta not self-adjoint")
        return rep, True
    one, E = o.one, o.E
    add("selfadjoint_delta_phi_S", max(max(abs(phi @ (ib.S @ a) - phi @ o.m(a, d)), abs(phi @ (ib.S_inv @ a) - phi @ o.m(d, a)))
                         for a in o.basis()))
    add("selfadjoint_delta_S", max(max_abs(o.m(ib.S @ d, d) - one), max_abs(o.S2 @ d - d)))
    r = 0.0
    for a in o.basis():
        lhs = phi @ comult(a)
        r = max(r, max_abs(lhs - o.m(o.m2(o.F1, outer(one, a)) @ phi, d)),
                max_abs(lhs - o.m(d, o.m2(outer(one, a), o.F3) @ phi)))
    add("selfadjoint_delta_slice", r)
    Dd = comult(d)
    dd = outer(d, d)
    add("selfadjoint_delta_Delta", max(max_abs(Dd - o.m2(dd, E)), max_abs(Dd - o.m2(E, dd)), max_abs(Dd - o.m2(E, dd, E))))
    add("sigma_sigma_prime_Delta", max(max_abs(o.sig_inv @ o.D[:, :, k] @ sigp.T - comult(o.Sm2 @ o.e(k)))
                                for k in range(o.n)))
    return rep, True


def integrals_stage(P, comult, cb, phi=None, psi=None, tol=DEFAULT_TOL, report=None):
    """Build the integral bundle and run both identity suites."""
    rep = _rep(tol, report)
    ib = build_integral_bundle(P, comult, cb, phi, psi, tol, rep)
    relation_suite(P, comult, cb, ib, tol, rep)
    _, flag = quasi_invariance_suite(P, comult, cb, ib, tol, rep)
    return replace(ib, quasi_invariant=flag)
