"""Single-entry perturbations of C[Z2] that each break exactly one layer of the pipeline."""
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraPresentation
from .coalgebra import Comultiplication
from .groupoids import cyclic_group_table, gen_group_algebra


@dataclass(frozen=True, eq=False)
class Fault:
    name: str
    description: str
    algebra: AlgebraPresentation
    comult: Comultiplication
    phi: np.ndarray = None
    psi: np.ndarray = None
    expected_check: str = ""


def _z2():
    return gen_group_algebra(cyclic_group_table(2), ["e", "g"], "C[Z2]")


def _with_mult(P, D, mult):
    Q = AlgebraPresentation(P.name + "~", P.labels, mult, P.star, P.unit)
    return Q, Comultiplication(Q, D.tensor)


def _with_delta(P, D):
    return P, Comultiplication(P, D)


def associativity_fault():
    P, D = _z2()
    mult = P.mult.copy()
    mult[0, 0, 0] += 0.1
    Q, DQ = _with_mult(P, D, mult)
    return Fault("associativity", "e*e = 1.1 e", Q, DQ, expected_check="algebra.associativity")


def coassociativity_fault():
    P, D = _z2()
    T = D.tensor.copy()
    T[0, 1, 1] = 0.1
    Q, DQ = _with_delta(P, T)
    return Fault("coassociativity", "Delta(g) gains 0.1 e (x) g", Q, DQ,
                 expected_check="coalgebra.coassociativity")


def idempotence_fault():
    # coassociative, but Delta(1) is no longer idempotent
    P, D = _z2()
    T = D.tensor.copy()
    T[0, 0, 0] = 1.1
    Q, DQ = _with_delta(P, T)
    return Fault("E_idempotence", "Delta(e) = 1.1 e (x) e", Q, DQ, expected_check="coalgebra.E_idempotent")


def integral_invariance_fault():
    P, D = _z2()
    phi = np.array([1.0, 0.1], dtype=complex)
    return Fault("integral_invariance", "supplied phi(g) = 0.1", P, D, phi=phi,
                 expected_check="integrals.left_invariance")


def antipode_consistency_fault():
    # right invariant, but not phi o S
    P, D = _z2()
    phi = np.array([1.0, 0.0], dtype=complex)
    psi = np.array([1.1, 0.0], dtype=complex)
    return Fault("antipode_consistency", "supplied psi(e) = 1.1", P, D, phi=phi, psi=psi,
                 expected_check="integrals.antipode_consistency")


def all_faults():
    return [associativity_fault(), coassociativity_fault(), idempotence_fault(),
            integral_invariance_fault(), antipode_consistency_fault()]
