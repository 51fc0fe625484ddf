"""Dense complex linear algebra shared by every stage.

Non-standard inner products are handled once: ``gram_frame`` turns a Gram
matrix into orthonormal coordinates, after which adjoints are plain
conjugate transposes.
"""
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .errors import NotPositiveDefinite


@dataclass(frozen=True)
class Tolerance:
    abs_residual: float = 1e-9
    pd_ratio: float = 1e-10
    rank_ratio: float = 1e-10

    def __post_init__(self):
        if min(self.abs_residual, self.pd_ratio, self.rank_ratio) <= 0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class AntilinearOp:
    """The map v -> K conj(v)."""
    kernel: np.ndarray

    def __post_init__(self):
        k = np.asarray(self.kernel, dtype=complex)
        if k.ndim != 2:
            raise ValueError("kernel must be a matrix")
        object.__setattr__(self, "kernel", k)

    def __call__(self, v):
        return self.kernel @ np.conj(v)

    def compose(self, other):
        """self o other, which is linear: K1 conj(K2)."""
        return self.kernel @ np.conj(other.kernel)

    def positive_part(self):
        """The linear map Z* Z = K^T conj(K)."""
        return self.kernel.T @ np.conj(self.kernel)


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: np.ndarray

    @property
    def rank(self):
        return self.basis.shape[1]

    def projector(self):
        return self.basis @ self.basis.conj().T

    def residual_of(self, v):
        """Distance of the columns of ``v`` from the subspace (max column norm)."""
        v = np.asarray(v, dtype=complex).reshape(self.ambient_dim, -1)
        r = v - self.basis @ (self.basis.conj().T @ v)
        return float(np.max(np.linalg.norm(r, axis=0))) if r.size else 0.0


def as_matrix(x):
    a = np.asarray(x, dtype=complex)
    if a.ndim == 1:
        a = a[:, None]
    if not np.all(np.isfinite(a)):
        raise ValueError("non-finite entries")
    return a


def max_abs(x):
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def solve_least_squares(A, b):
    """Minimal-norm least squares solution and the Frobenius residual."""
    A, b = as_matrix(A), as_matrix(b)
    if A.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {A.shape} vs {b.shape}")
    x = np.linalg.pinv(A) @ b
    return x, float(np.linalg.norm(A @ x - b))


def numerical_rank(A, tol=DEFAULT_TOL):
    s = np.linalg.svd(as_matrix(A), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tol.rank_ratio * s[0]))


def column_space(A, tol=DEFAULT_TOL, abs_floor=1e-12):
    """Orthonormal basis of the range, rank decided relative to sigma_max."""
    A = as_matrix(A)
    u, s, _ = np.linalg.svd(A, full_matrices=False)
    if s.size == 0 or s[0] <= abs_floor:
        return Subspace(A.shape[0], np.zeros((A.shape[0], 0), dtype=complex))
    r = int(np.sum(s > tol.rank_ratio * s[0]))
    return Subspace(A.shape[0], u[:, :r])


def null_space(A, tol=DEFAULT_TOL, scale=None):
    """Orthonormal basis of the kernel; ``scale`` fixes the reference singular value."""
    A = as_matrix(A)
    n = A.shape[1]
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    ref = scale if scale is not None else (s[0] if s.size else 0.0)
    r = int(np.sum(s > tol.rank_ratio * max(ref, 1.0)))
    return Subspace(n, vh[r:].conj().T)


def same_subspace(U, V):
    """Symmetric containment residual between two subspaces."""
    if U.rank != V.rank:
        return float("inf")
    return max(U.residual_of(V.basis), V.residual_of(U.basis))


def check_hermitian_pd(H, tol=DEFAULT_TOL):
    H = as_matrix(H)
    if H.shape[0] != H.shape[1]:
        raise ValueError("matrix must be square")
    herm = max_abs(H - H.conj().T)
    scale = max(max_abs(H), 1.0)
    if herm > 1e-8 * scale:
        raise NotPositiveDefinite(f"matrix is not Hermitian (residual {herm:.3g})")
    lam, U = np.linalg.eigh((H + H.conj().T) / 2)
    if lam[-1] <= 0 or lam[0] <= tol.pd_ratio * lam[-1]:
        raise NotPositiveDefinite(f"eigenvalues in [{lam[0]:.3g}, {lam[-1]:.3g}]")
    return lam, U


def hermitian_power(H, z, tol=DEFAULT_TOL):
    """H^z through the eigendecomposition of a positive definite H."""
    lam, U = check_hermitian_pd(H, tol)
    return (U * np.exp(complex(z) * np.log(lam))) @ U.conj().T


def condition_number(H):
    lam = np.linalg.eigvalsh(as_matrix(H))
    return float(lam[-1] / lam[0]) if lam[0] > 0 else float("inf")


def gram_frame(G, tol=DEFAULT_TOL):
    """Cholesky factor L with L L^H = G and its inverse."""
    G = as_matrix(G)
    check_hermitian_pd(G, tol)
    L = linalg.cholesky((G + G.conj().T) / 2, lower=True)
    Linv = linalg.solve_triangular(L, np.eye(L.shape[0]), lower=True)
    return L, Linv


def adjoint_wrt(G_dom, G_cod, T, tol=DEFAULT_TOL):
    """Adjoint of T for the inner products <x,y> = y^H G x on domain and codomain."""
    G_dom, G_cod, T = as_matrix(G_dom), as_matrix(G_cod), as_matrix(T)
    check_hermitian_pd(G_dom, tol)
    check_hermitian_pd(G_cod, tol)
    return np.linalg.solve(G_dom, T.conj().T @ G_cod)


def antilinear_adjoint(Z):
    """Adjoint for the pairing <Zu, v> = <Z* v, u>; the kernel is transposed."""
    return AntilinearOp(Z.kernel.T)


def rref(A, eps=1e-9):
    """Reduced row echelon form of a real matrix with partial pivoting."""
    R = np.array(A, dtype=float)
    rows, cols = R.shape
    pivot_row = 0
    for c in range(cols):
        if pivot_row >= rows:
            break
        p = pivot_row + int(np.argmax(np.abs(R[pivot_row:, c])))
        if abs(R[p, c]) <= eps:
            R[pivot_row:, c] = 0.0
            continue
        R[[pivot_row, p]] = R[[p, pivot_row]]
        R[pivot_row] /= R[pivot_row, c]
        for r in range(rows):
            if r != pivot_row:
                R[r] -= R[r, c] * R[pivot_row]
        pivot_row += 1
    R[np.abs(R) <= eps] = 0.0
    return R[:pivot_row]
