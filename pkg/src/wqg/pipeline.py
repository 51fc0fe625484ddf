"""The staged verification pipeline: algebra, coalgebra, integrals, gns_operators, duality."""
from dataclasses import dataclass

from .algebra import validate_algebra
from .coalgebra import canonical_bundle, validate_comultiplication
from .errors import DeltaNotPositive, WQGError
from .gns_operators import (OperatorBundle, base_bridge, base_spaces, build_W, build_gns,
                            commutation_suite, delta_space, embed_maps, lcqg_certificate,
                            modular_operators)
from .integrals import integrals_stage
from .numkernel import DEFAULT_TOL
from .report import FAIL, VerificationReport

STAGES = ("algebra", "coalgebra", "integrals", "gns_operators", "duality")


@dataclass
class PipelineResult:
    """Report plus whichever intermediate objects were built before stopping."""
    report: VerificationReport
    bundle: object = None
    integrals: object = None
    gns: object = None
    operators: object = None
    dual: object = None


def _failed_since(rep, start):
    return any(c.status == FAIL for c in rep.checks[start:])


def _record_error(rep, stage, err):
    if err.check is None or err.check not in rep.checks:
        rep.flag(f"{stage}.error", False, f"{type(err).__name__}: {err}")


def run_pipeline(P, comult, phi=None, psi=None, tol=DEFAULT_TOL, stage="duality"):
    """Run every stage up to and including ``stage``; stop after the first stage that fails.

    Each stage appends its checks in a fixed order, so the report is deterministic.
    """
    if stage not in STAGES:
        raise ValueError(f"unknown stage {stage!r}; expected one of {STAGES}")
    last = STAGES.index(stage)
    rep = VerificationReport(tol=tol.abs_residual)
    res = PipelineResult(rep)

    def run(name, fn):
        start = len(rep.checks)
        try:
            fn()
        except WQGError as err:
            _record_error(rep, name, err)
            return False
        return not _failed_since(rep, start)

    def s_algebra():
        validate_algebra(P, tol, rep)

    def s_coalgebra():
        validate_comultiplication(P, comult, tol, rep)
        if _failed_since(rep, 0):
            return
        res.bundle = canonical_bundle(P, comult, tol, rep)

    def s_integrals():
        res.integrals = integrals_stage(P, comult, res.bundle, phi, psi, tol, rep)

    def s_gns():
        cb, ib = res.bundle, res.integrals
        H = build_gns(P, ib.phi, tol, rep)
        res.gns = H
        HB, HC = base_spaces(P, cb, tol, rep)
        JB = base_bridge(P, cb, HB, HC, tol, rep)
        embed_maps(P, comult, cb, ib, H, HB, HC, tol, rep)
        W, E_op, G_op = build_W(P, comult, H, cb, ib, tol, rep)
        T, nabla, J, sign = modular_operators(P, ib, H, tol, rep)
        Z = Pop = None
        try:
            Z, Pop, _ = delta_space(P, ib, H, tol, rep)
        except DeltaNotPositive:
            rep.skip("gns.commutation", "delta is not positive")
        if Pop is not None:
            commutation_suite(H, W, E_op, G_op, nabla, Pop, tol, rep)
        ops = OperatorBundle(W, E_op, G_op, T, nabla, J, JB, Z, Pop, sign)
        res.operators = ops
        lcqg_certificate(P, comult, cb, res.integrals, H, HB, HC, ops, tol, rep)

    def s_duality():
        from .duality import duality_stage
        res.dual = duality_stage(P, comult, res.bundle, res.integrals, tol, rep)

    bodies = {"algebra": s_algebra, "coalgebra": s_coalgebra, "integrals": s_integrals,
              "gns_operators": s_gns, "duality": s_duality}
    for name in STAGES[:last + 1]:
        if not run(name, bodies[name]):
            break
    return res


def verify(P, comult, phi=None, psi=None, tol=DEFAULT_TOL, stage="duality"):
    """Convenience wrapper returning only the report."""
    return run_pipeline(P, comult, phi, psi, tol, stage).report
