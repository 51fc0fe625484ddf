"""The dual weak Hopf *-algebra on the dual basis and the biduality comparison.

Â is built on f_1..f_n with f_i(e_j) = [i == j]. Its product is transposed
from Delta and its coproduct from the product of A, so both structure
tensors are plain re-readings of the input tensors.
"""
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraPresentation
from .coalgebra import Comultiplication
from .numkernel import DEFAULT_TOL, max_abs
from .report import FAIL, VerificationReport


@dataclass(frozen=True, eq=False)
class DualPresentation:
    algebra: AlgebraPresentation
    comult: Comultiplication
    E_hat: np.ndarray
    S_hat: np.ndarray
    psi_hat: np.ndarray
    phi_hat: np.ndarray


def dualize(P, comult, cb, ib, tol=DEFAULT_TOL, name=None):
    """(f_i f_j)(e_k) = Delta-coefficient, Delta-hat(f_k)(e_i (x) e_j) = f_k(e_i e_j)."""
    D, m, S, eps = comult.tensor, P.mult, ib.S, cb.counit
    # omega*(x) = conj(omega(S(x)*)) written on coefficient vectors
    star_hat = (np.conj(P.star) @ S).T
    labels = tuple(f"f[{l}]" for l in P.labels)
    P_hat = AlgebraPresentation(name or f"dual({P.name})", labels, D, star_hat, eps)
    comult_hat = Comultiplication(P_hat, m)
    E_hat = np.einsum("ijk,k->ij", m, eps)
    S_hat = S.T
    # psi-hat(phi(. c)) = eps(c); the covector phi(. c) is F c
    F = np.einsum("ijk,k->ij", m, ib.phi)
    psi_hat = np.linalg.solve(F.T, eps)
    phi_hat = ib.S_inv @ psi_hat
    return DualPresentation(P_hat, comult_hat, E_hat, S_hat, psi_hat, phi_hat)


def _dual_pipeline(dual, tol):
    from .pipeline import run_pipeline
    return run_pipeline(dual.algebra, dual.comult, dual.phi_hat, dual.psi_hat, tol,
                        stage="gns_operators")


def validate_dual(dual, tol=DEFAULT_TOL):
    """Full pipeline on the dual with phi-hat and psi-hat supplied; no further dualization."""
    return _dual_pipeline(dual, tol).report


def biduality_check(P, comult, cb, ib, ddual, ddual_cb, ddual_ib, tol=DEFAULT_TOL, report=None):
    """Compare A with its double dual under e_i <-> evaluation at e_i."""
    rep = VerificationReport(tol=tol.abs_residual) if report is None else report
    Q = ddual.algebra
    t = tol.abs_residual
    rep.add("duality.biduality_mult", max_abs(Q.mult - P.mult), t)
    rep.add("duality.biduality_comult", max_abs(ddual.comult.tensor - comult.tensor), t)
    rep.add("duality.biduality_star", max_abs(Q.star - P.star), t)
    rep.add("duality.biduality_unit", max_abs(Q.unit - P.unit), t)
    rep.add("duality.biduality_counit", max_abs(ddual_cb.counit - cb.counit), t)
    rep.add("duality.biduality_antipode", max_abs(ddual_ib.S - ib.S), t)
    rep.add("duality.biduality_E", max_abs(ddual_cb.E - cb.E), t)
    phi2 = ddual_ib.phi
    k = int(np.argmax(np.abs(ib.phi)))
    scalar = phi2[k] / ib.phi[k]
    prop = max_abs(phi2 - scalar * ib.phi)
    if prop <= t * max(1.0, max_abs(phi2)):
        rep.note("duality.biduality_phi_scalar", f"double-dual phi = {scalar.real:.6g} phi", prop)
    else:
        rep.note("duality.biduality_phi_scalar", "double-dual phi is not proportional to phi", prop)
    return rep


def _summarize(rep, name, sub):
    fail = sub.first_failure
    detail = f"{len(sub.checks)} checks" + ("" if fail is None else f", first failing: {fail.name}")
    rep.flag(name, fail is None, detail, max((c.residual for c in sub.checks), default=0.0))


def duality_stage(P, comult, cb, ib, tol=DEFAULT_TOL, report=None):
    """Dualize twice, validate both duals with the full pipeline and compare with A."""
    rep = VerificationReport(tol=tol.abs_residual) if report is None else report
    t = tol.abs_residual
    dual = dualize(P, comult, cb, ib, tol)
    rep.add("duality.unit_is_counit", max_abs(dual.algebra.unit - cb.counit), t, "1-hat = eps")
    res1 = _dual_pipeline(dual, tol)
    _summarize(rep, "duality.validate_dual", res1.report)
    if res1.report.verdict == FAIL or res1.integrals is None:
        return dual
    rep.add("duality.E_hat_is_Delta_hat_unit", max_abs(dual.E_hat - res1.bundle.E), t)
    rep.add("duality.psi_hat_matches_phi_hat_S_hat",
            max_abs(dual.psi_hat - dual.S_hat.T @ dual.phi_hat), t)
    r1, r2 = np.linalg.matrix_rank(cb.E, tol=1e-9), np.linalg.matrix_rank(res1.bundle.E, tol=1e-9)
    rep.note("duality.E_ranks", f"rank E {r1}, rank E-hat {r2}")
    ddual = dualize(dual.algebra, dual.comult, res1.bundle, res1.integrals, tol, name=f"dual(dual({P.name}))")
    res2 = _dual_pipeline(ddual, tol)
    _summarize(rep, "duality.validate_double_dual", res2.report)
    if res2.report.verdict == FAIL or res2.integrals is None:
        return dual
    biduality_check(P, comult, cb, ib, ddual, res2.bundle, res2.integrals, tol, rep)
    return dual
