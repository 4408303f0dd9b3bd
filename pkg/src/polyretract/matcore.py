"""Dense complex matrix kernels.

Matrices are plain 2-D ``numpy`` arrays of dtype ``complex128``.  The matrix
functions here (exponential, logarithm, inverse square root) are all computed
through a Hermitian or Schur eigendecomposition, which respects unitary and
Hermitian structure to working accuracy at the sizes this package targets.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    BranchCutError,
    DefinitenessError,
    DimensionError,
    RankError,
    StructureError,
)

# Angular distance from -1 below which the principal logarithm is refused.
BRANCH_CUT_TOL = 1e-6


def as_matrix(A, name="A"):
    """Return ``A`` as a finite 2-D complex128 array."""
    A = np.asarray(A)
    if A.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {A.shape}")
    A = A.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    return A


def _square(A, name="A"):
    A = as_matrix(A, name)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {A.shape}")
    return A


def _scale(A):
    return max(1.0, frobenius_norm(A))


def adjoint(A):
    return A.conj().T


@dataclass(frozen=True)
class EigenDecompositionHermitian:
    """``A = vectors @ diag(values) @ vectors^*`` with ascending real values."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self):
        return (self.vectors * self.values) @ adjoint(self.vectors)


@dataclass(frozen=True)
class ThinSVD:
    """``A = U @ diag(S) @ V^*`` with ``U`` m x p and ``S`` descending."""

    U: np.ndarray
    S: np.ndarray
    V: np.ndarray

    def reconstruct(self):
        return (self.U * self.S) @ adjoint(self.V)


@dataclass(frozen=True)
class ThinQR:
    """``A = Q @ R`` with ``R`` upper triangular with positive real diagonal."""

    Q: np.ndarray
    R: np.ndarray


def frobenius_norm(A):
    return float(np.linalg.norm(np.asarray(A), "fro")) if np.size(A) else 0.0


def sym_part(A):
    """Hermitian part ``(A + A^*) / 2`` of a square matrix."""
    A = _square(A)
    return 0.5 * (A + adjoint(A))


def skew_part(A):
    """Skew-Hermitian part ``(A - A^*) / 2`` of a square matrix."""
    A = _square(A)
    return 0.5 * (A - adjoint(A))


def is_skew_hermitian(A, tol=1e-10):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    return frobenius_norm(A + adjoint(A)) / 2 <= tol * _scale(A)


def eigh_hermitian(A):
    """Eigendecomposition of a Hermitian matrix (only its Hermitian part is used)."""
    A = sym_part(A)
    values, vectors = np.linalg.eigh(A)
    return EigenDecompositionHermitian(values, vectors)


def expm_skew(omega):
    """Exponential of a skew-Hermitian matrix.

    Diagonalizes the Hermitian matrix ``-1j * omega`` and maps its real
    eigenvalues onto the unit circle, so the result is unitary to working
    accuracy regardless of ``||omega||``.
    """
    omega = _square(omega, "omega")
    if not is_skew_hermitian(omega):
        raise StructureError("expm_skew requires a skew-Hermitian matrix")
    eig = eigh_hermitian(-1j * omega)
    return (eig.vectors * np.exp(1j * eig.values)) @ adjoint(eig.vectors)


def logm_unitary(U, unitary_tol=1e-8):
    """Principal logarithm of a unitary matrix.

    Returns a skew-Hermitian matrix whose eigenvalues have phases in
    ``(-pi, pi)``. Raises :class:`BranchCutError` when an eigenvalue sits
    within ``BRANCH_CUT_TOL`` (in angle) of ``-1``.
    """
    U = _square(U, "U")
    m = U.shape[0]
    if frobenius_norm(adjoint(U) @ U - np.eye(m)) > unitary_tol * max(1, m):
        raise StructureError("logm_unitary requires a unitary matrix")
    # Complex Schur form of a normal matrix is diagonal up to roundoff.
    T, Z = scipy.linalg.schur(U, output="complex")
    phases = np.angle(np.diag(T))
    if m and np.max(np.abs(phases)) > np.pi - BRANCH_CUT_TOL:
        raise BranchCutError("eigenvalue of U is at or near -1 (antipodal input)")
    L = (Z * (1j * phases)) @ adjoint(Z)
    return skew_part(L)


def invsqrtm_hpd(C):
    """Inverse principal square root of a Hermitian positive-definite matrix."""
    C = _square(C, "C")
    if frobenius_norm(C - adjoint(C)) > 1e-10 * _scale(C):
        raise DefinitenessError("matrix is not Hermitian")
    eig = eigh_hermitian(C)
    lam = eig.values
    if lam.size and (lam[0] <= 0 or lam[0] <= 1e-12 * lam[-1]):
        raise DefinitenessError(
            f"matrix is not positive definite (lambda_min={lam[0]:.3e})"
        )
    return (eig.vectors / np.sqrt(lam)) @ adjoint(eig.vectors)


def thin_svd(A):
    A = as_matrix(A)
    m, p = A.shape
    if m < p:
        raise DimensionError(f"thin_svd needs m >= p, got {A.shape}")
    U, S, Vh = np.linalg.svd(A, full_matrices=False)
    return ThinSVD(U, S, adjoint(Vh))


def singular_values(A):
    return np.linalg.svd(np.asarray(A), compute_uv=False)


def is_full_rank(A, rtol=1e-12):
    s = singular_values(A)
    return s.size > 0 and s[-1] > rtol * s[0]


def thin_qr(A):
    """Thin QR factorization with the positive-real-diagonal convention on ``R``."""
    A = as_matrix(A)
    m, p = A.shape
    if m < p:
        raise DimensionError(f"thin_qr needs m >= p, got {A.shape}")
    if not is_full_rank(A):
        raise RankError("thin_qr requires a full-rank matrix")
    Q, R = np.linalg.qr(A, mode="reduced")
    d = np.diag(R)
    phase = d / np.abs(d)
    Q = Q * phase
    R = np.triu(phase.conj()[:, None] * R)
    # Clear the roundoff imaginary part left on the diagonal by the rephasing.
    idx = np.arange(p)
    R[idx, idx] = np.abs(d)
    return ThinQR(Q, R)


def check_orthonormal(Y, tol=1e-10, name="Y"):
    Y = as_matrix(Y, name)
    p = Y.shape[1]
    if frobenius_norm(adjoint(Y) @ Y - np.eye(p)) > tol * max(1, p):
        raise StructureError(f"{name} must have orthonormal columns")
    return Y


def orth_completion(Y):
    """Columns completing ``Y`` (orthonormal columns) to a unitary ``[Y | Yperp]``.

    For a square ``Y`` the result has zero columns.
    """
    Y = check_orthonormal(Y)
    m, p = Y.shape
    if m < p:
        raise DimensionError(f"orth_completion needs m >= p, got {Y.shape}")
    Q, _ = np.linalg.qr(Y, mode="complete")
    return Q[:, p:]


def _complex_gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_skew_hermitian(m, seed):
    """Seeded skew-Hermitian ``m x m`` matrix with unit Frobenius norm."""
    if m < 1:
        raise DimensionError("m must be positive")
    rng = np.random.default_rng(seed)
    omega = skew_part(_complex_gaussian(rng, (m, m)))
    return omega / frobenius_norm(omega)


def random_unitary(m, seed):
    rng = np.random.default_rng(seed)
    return thin_qr(_complex_gaussian(rng, (m, m))).Q


def random_stiefel_point(m, p, seed):
    """Seeded ``m x p`` matrix with orthonormal columns (Q factor of a Gaussian)."""
    if m < p or p < 1:
        raise DimensionError(f"need m >= p >= 1, got m={m}, p={p}")
    rng = np.random.default_rng(seed)
    return thin_qr(_complex_gaussian(rng, (m, p))).Q


def _project_out(Y, G):
    # (I - Y Y^*) G, applied twice for orthogonality at the roundoff level.
    G = G - Y @ (adjoint(Y) @ G)
    return G - Y @ (adjoint(Y) @ G)


def random_grassmann_tangent(Y, seed):
    """Seeded unit-norm ``H`` with ``Y^* H = 0`` (a Grassmann tangent at ``Y``)."""
    Y = check_orthonormal(Y)
    m, p = Y.shape
    if m == p:
        raise DimensionError("Grassmann tangent space is trivial when m == p")
    rng = np.random.default_rng(seed)
    H = _project_out(Y, _complex_gaussian(rng, (m, p)))
    return H / frobenius_norm(H)


def random_stiefel_tangent(Y, seed, grassmann_only=False):
    """Seeded unit-norm ``H = Y Omega + Yperp K`` (a Stiefel tangent at ``Y``).

    With ``grassmann_only`` the ``Omega`` block is zero, so ``Y^* H = 0``.
    """
    Y = check_orthonormal(Y)
    m, p = Y.shape
    rng = np.random.default_rng(seed)
    omega = skew_part(_complex_gaussian(rng, (p, p)))
    H = _project_out(Y, _complex_gaussian(rng, (m, p)))
    if not grassmann_only:
        H = H + Y @ omega
    nrm = frobenius_norm(H)
    if nrm == 0:
        raise DimensionError("tangent direction is empty (m == p with grassmann_only)")
    return H / nrm
