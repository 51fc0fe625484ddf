"""Finite-dimensional unital *-algebras given by structure constants.

Elements are coefficient vectors in the basis e_0..e_{n-1}. Elements of
A (x) A and A (x) A (x) A are stored as arrays of shape (n, n) and (n, n, n).
"""
from dataclasses import dataclass

import numpy as np

from .errors import AlgebraMismatch
from .numkernel import DEFAULT_TOL, max_abs, numerical_rank
from .report import VerificationReport


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    """e_i e_j = sum_k mult[i, j, k] e_k and (sum a_i e_i)* = sum conj(a_i) star[:, i]."""
    name: str
    labels: tuple
    mult: np.ndarray
    star: np.ndarray
    unit: np.ndarray

    def __post_init__(self):
        n = len(self.labels)
        mult = np.asarray(self.mult, dtype=complex)
        star = np.asarray(self.star, dtype=complex)
        unit = np.asarray(self.unit, dtype=complex)
        if mult.shape != (n, n, n) or star.shape != (n, n) or unit.shape != (n,):
            raise ValueError("structure constants do not match the number of labels")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "star", star)
        object.__setattr__(self, "unit", unit)

    @property
    def dim(self):
        return len(self.labels)

    def basis(self, i):
        v = np.zeros(self.dim, dtype=complex)
        v[i] = 1
        return v

    def element(self, coeffs):
        return Element(self, np.asarray(coeffs, dtype=complex))

    def index(self, label):
        return self.labels.index(label)


@dataclass(frozen=True, eq=False)
class Element:
    algebra: AlgebraPresentation
    coeffs: np.ndarray

    def _same(self, other):
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return Element(self.algebra, self.coeffs * other)

    __rmul__ = lambda self, c: Element(self.algebra, self.coeffs * c)

    def __add__(self, other):
        self._same(other)
        return Element(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._same(other)
        return Element(self.algebra, self.coeffs - other.coeffs)

    def star(self):
        return star(self)


@dataclass(frozen=True, eq=False)
class Functional:
    algebra: AlgebraPresentation
    coeffs: np.ndarray

    def __call__(self, x):
        c = x.coeffs if isinstance(x, Element) else np.asarray(x)
        return np.asarray(self.coeffs) @ c


@dataclass(frozen=True, eq=False)
class FunctionalGram:
    """F[i, j] = phi(e_i e_j), G[i, j] = phi(e_j* e_i)."""
    F: np.ndarray
    G: np.ndarray
    positive: bool
    faithful: bool

    @property
    def inner(self):
        """Matrix M with phi(y* x) = y^H M x."""
        return self.G.T


# coefficient-level arithmetic

def mul(P, a, b):
    return np.einsum("i,j,ijk->k", a, b, P.mult)


def star_vec(P, a):
    return P.star @ np.conj(a)


def left_matrix(P, a):
    return np.einsum("i,ijk->kj", a, P.mult)


def right_matrix(P, a):
    return np.einsum("j,ijk->ki", a, P.mult)


def mul2(P, X, Y):
    """Product in A (x) A of two (n, n) arrays."""
    m = P.mult
    T = np.einsum("ab,cd,ack->kbd", X, Y, m, optimize=True)
    return np.einsum("kbd,bdl->kl", T, m, optimize=True)


def star2(P, X):
    return P.star @ np.conj(X) @ P.star.T


def mul3(P, X, Y):
    m = P.mult
    T = np.einsum("abc,def,adk->kbecf", X, Y, m, optimize=True)
    T = np.einsum("kbecf,bel->klcf", T, m, optimize=True)
    return np.einsum("klcf,cfp->klp", T, m, optimize=True)


def outer(*vs):
    out = vs[0]
    for v in vs[1:]:
        out = np.multiply.outer(out, v)
    return out


def is_hermitian_functional(P, phi):
    """Residual of phi(x*) = conj(phi(x)) on the basis."""
    return max_abs(P.star.T @ phi - np.conj(phi))


def hermitian_conjugate_functional(P, phi):
    """phi^dagger(x) = conj(phi(x*))."""
    return np.conj(P.star.T @ phi)


# element-level wrappers

def _check(a, b):
    if a.algebra is not b.algebra:
        raise AlgebraMismatch("elements belong to different algebras")


def multiply(a, b):
    _check(a, b)
    return Element(a.algebra, mul(a.algebra, a.coeffs, b.coeffs))


def star(a):
    return Element(a.algebra, star_vec(a.algebra, a.coeffs))


def left_mult(a):
    return left_matrix(a.algebra, a.coeffs)


def right_mult(a):
    return right_matrix(a.algebra, a.coeffs)


def validate_algebra(P, tol=DEFAULT_TOL, report=None):
    """Associativity, unit, star axioms and non-degeneracy as named residuals."""
    rep = VerificationReport(tol=tol.abs_residual) if report is None else report
    n, m = P.dim, P.mult
    lhs = np.einsum("ijp,pkq->ijkq", m, m)
    rhs = np.einsum("jkp,ipq->ijkq", m, m)
    rep.add("algebra.associativity", max_abs(lhs - rhs), tol.abs_residual)
    eye = np.eye(n)
    unit_res = max(max_abs(left_matrix(P, P.unit) - eye), max_abs(right_matrix(P, P.unit) - eye))
    rep.add("algebra.unit", unit_res, tol.abs_residual)
    rep.add("algebra.star_involutive", max_abs(P.star @ np.conj(P.star) - eye), tol.abs_residual)
    # (e_i e_j)* against e_j* e_i*
    prod_star = np.einsum("pk,ijk->ijp", P.star, np.conj(m))
    star_prod = np.einsum("aj,bi,abp->ijp", P.star, P.star, m)
    rep.add("algebra.star_antimultiplicative", max_abs(prod_star - star_prod), tol.abs_residual)
    lreg = np.stack([left_matrix(P, P.basis(i)).ravel() for i in range(n)], axis=1)
    rreg = np.stack([right_matrix(P, P.basis(i)).ravel() for i in range(n)], axis=1)
    rl, rr = numerical_rank(lreg, tol), numerical_rank(rreg, tol)
    rep.flag("algebra.left_nondegenerate", rl == n, f"rank {rl} of {n}")
    rep.flag("algebra.right_nondegenerate", rr == n, f"rank {rr} of {n}")
    return rep


def tensor_presentation(P1, P2, name=None):
    """P1 (x) P2 with index (i1, i2) -> i1 * n2 + i2."""
    n1, n2 = P1.dim, P2.dim
    mult = np.einsum("ijk,abc->iajbkc", P1.mult, P2.mult).reshape(n1 * n2, n1 * n2, n1 * n2)
    star = np.kron(P1.star, P2.star)
    unit = np.kron(P1.unit, P2.unit)
    labels = tuple(f"{a}*{b}" for a in P1.labels for b in P2.labels)
    return AlgebraPresentation(name or f"{P1.name}(x){P2.name}", labels, mult, star, unit)


def functional_gram(phi, tol=DEFAULT_TOL):
    """Bilinear and sesquilinear Gram data of a functional, with positivity flags."""
    P = phi.algebra
    f = np.asarray(phi.coeffs, dtype=complex)
    F = np.einsum("ijk,k->ij", P.mult, f)
    G = np.einsum("pj,pik,k->ij", P.star, P.mult, f)
    M = G.T
    herm = max_abs(M - M.conj().T)
    scale = max(max_abs(M), 1e-300)
    lam = np.linalg.eigvalsh((M + M.conj().T) / 2)
    positive = herm <= tol.abs_residual * max(scale, 1.0) and (lam.size == 0 or lam[0] >= -tol.abs_residual * max(scale, 1.0))
    faithful = bool(positive and lam[-1] > 0 and lam[0] > tol.pd_ratio * lam[-1])
    return FunctionalGram(F, G, bool(positive), faithful)
