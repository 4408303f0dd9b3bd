"""Projectors onto matrices with orthonormal columns.

``polar_svd`` computes the unitary polar factor ``P(A) = A (A^* A)^{-1/2}``
directly from a thin SVD. The three iterative kernels (Newton, the
rectangular Newton variant, Newton-Schulz) use only products and inverses
and are checked against it. ``qr_projector`` returns the Q factor instead,
which spans the same column space.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionError,
    DomainError,
    NonConvergenceError,
    RankError,
    SingularityError,
)
from .matcore import (
    adjoint,
    as_matrix,
    frobenius_norm,
    singular_values,
    skew_part,
    sym_part,
    thin_qr,
    thin_svd,
)

METHODS = ("svd", "newton", "newton-rect", "newton-schulz")


@dataclass(frozen=True)
class IterationConfig:
    """Stopping policy for fixed-point loops.

    ``tol`` is a relative step tolerance: iteration stops once
    ``||X_{k+1} - X_k|| <= tol * ||X_{k+1}||``.
    """

    tol: float = 1e-12
    max_iters: int = 100

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.max_iters < 1:
            raise DomainError("max_iters must be at least 1")


@dataclass(frozen=True)
class PolarFactors:
    U: np.ndarray
    H: np.ndarray


@dataclass(frozen=True)
class IterationInfo:
    """Diagnostics of an iterative polar solve."""

    iterations: int
    step: float
    residual: float  # ||U^* U - I||_F of the returned iterate


@dataclass(frozen=True)
class GapDiagnostic:
    """Two-sided bound on the distance from ``P(A)`` to an orthonormal ``Utilde``."""

    lower: float
    upper: float
    actual: float

    def holds(self, slack=1e-10):
        return self.lower <= self.actual + slack and self.actual <= self.upper + slack


def _check_full_rank(A):
    m, p = A.shape
    if m < p:
        raise DimensionError(f"need m >= p, got {A.shape}")
    s = singular_values(A)
    if s.size == 0 or not s[-1] > 1e-12 * s[0]:
        raise RankError("matrix is rank deficient")


def polar_svd(A):
    """Polar decomposition ``A = U H`` via the thin SVD.

    ``U`` is the nearest matrix with orthonormal columns to ``A`` in the
    Frobenius norm.
    """
    A = as_matrix(A)
    _check_full_rank(A)
    svd = thin_svd(A)
    U = svd.U @ adjoint(svd.V)
    H = (svd.V * svd.S) @ adjoint(svd.V)
    return PolarFactors(U, sym_part(H))


def _iterate(step_fn, X, cfg, name):
    cfg = cfg or IterationConfig()
    step = np.inf
    for k in range(1, cfg.max_iters + 1):
        X_new = step_fn(X)
        if not np.all(np.isfinite(X_new)):
            raise SingularityError(f"{name}: iterate became non-finite at step {k}")
        step = frobenius_norm(X_new - X) / max(frobenius_norm(X_new), np.finfo(float).tiny)
        X = X_new
        if step <= cfg.tol:
            p = X.shape[1]
            res = frobenius_norm(adjoint(X) @ X - np.eye(p))
            return X, IterationInfo(k, step, res)
    p = X.shape[1]
    res = frobenius_norm(adjoint(X) @ X - np.eye(p))
    raise NonConvergenceError(
        f"{name} did not converge in {cfg.max_iters} iterations (step={step:.3e})",
        residual=res,
        iterations=cfg.max_iters,
    )


def _solve_or_raise(M, B, name):
    try:
        return np.linalg.solve(M, B)
    except np.linalg.LinAlgError as exc:
        raise SingularityError(f"{name}: singular iterate") from exc


def polar_newton(A, cfg=None, full_output=False):
    """Unitary polar factor of a square nonsingular matrix by Newton's iteration
    ``X <- (X + X^{-*}) / 2``."""
    A = as_matrix(A)
    if A.shape[0] != A.shape[1]:
        raise DimensionError("polar_newton needs a square matrix")

    def step(X):
        # X^{-*} = (X^*)^{-1}
        Xinv_h = _solve_or_raise(adjoint(X), np.eye(X.shape[0]), "polar_newton")
        return 0.5 * (X + Xinv_h)

    U, info = _iterate(step, A, cfg, "polar_newton")
    return (U, info) if full_output else U


def polar_newton_rect(A, cfg=None, full_output=False):
    """Polar factor of a full-rank ``m x p`` matrix by ``X <- 2 X (I + X^* X)^{-1}``."""
    A = as_matrix(A)
    m, p = A.shape
    if m < p:
        raise DimensionError(f"need m >= p, got {A.shape}")
    eye = np.eye(p)

    def step(X):
        G = eye + adjoint(X) @ X
        # X G^{-1} = (G^{-*} X^*)^*, and G is Hermitian
        return 2.0 * adjoint(_solve_or_raise(G, adjoint(X), "polar_newton_rect"))

    U, info = _iterate(step, A, cfg, "polar_newton_rect")
    return (U, info) if full_output else U


def polar_newton_schulz(A, cfg=None, full_output=False):
    """Inverse-free polar factor by the Newton-Schulz map ``X <- X (3I - X^* X) / 2``.

    The input is first divided by its Frobenius norm, which bounds every
    singular value by 1 and keeps the iteration inside its convergence region
    ``(0, sqrt(3))``. The polar factor is invariant under this rescaling.
    """
    A = as_matrix(A)
    m, p = A.shape
    if m < p:
        raise DimensionError(f"need m >= p, got {A.shape}")
    nrm = frobenius_norm(A)
    if nrm == 0:
        raise RankError("zero matrix has no polar factor")
    eye3 = 3.0 * np.eye(p)

    def step(X):
        return 0.5 * X @ (eye3 - adjoint(X) @ X)

    U, info = _iterate(step, A / nrm, cfg, "polar_newton_schulz")
    return (U, info) if full_output else U


def polar_factor(A, method="svd", cfg=None):
    """Dispatch to one of the polar kernels by name (see ``METHODS``)."""
    if method == "svd":
        return polar_svd(A).U
    if method == "newton":
        return polar_newton(A, cfg)
    if method == "newton-rect":
        return polar_newton_rect(A, cfg)
    if method == "newton-schulz":
        return polar_newton_schulz(A, cfg)
    raise DomainError(f"unknown polar method {method!r}; expected one of {METHODS}")


def qr_projector(A):
    """Q factor of the thin QR decomposition (positive diagonal ``R``)."""
    return thin_qr(A).Q


def symmetry_gap(A, Utilde):
    """Evaluate the two-sided bound on ``||P(A) - Utilde||_F``.

    With ``S = Utilde^* A`` and ``R = (I - Utilde Utilde^*) A``::

        max(2||skew S||, ||R||) / (2 sigma_1(A))
            <= ||P(A) - Utilde||
            <= 2 (||skew S|| + ||R||) / (sigma_p(A) + lambda_min(sym S))

    valid whenever ``||A - Utilde|| < 1``.
    """
    A = as_matrix(A)
    Utilde = as_matrix(Utilde, "Utilde")
    if A.shape != Utilde.shape:
        raise DomainError("A and Utilde must have the same shape")
    p = A.shape[1]
    if frobenius_norm(adjoint(Utilde) @ Utilde - np.eye(p)) > 1e-10 * max(1, p):
        raise DomainError("Utilde must have orthonormal columns")
    if not frobenius_norm(A - Utilde) < 1:
        raise DomainError("symmetry_gap requires ||A - Utilde|| < 1")
    try:
        U = polar_svd(A).U
    except RankError as exc:
        raise DomainError("A must have full rank") from exc
    S = adjoint(Utilde) @ A
    R = A - Utilde @ S
    skew_n = frobenius_norm(skew_part(S))
    res_n = frobenius_norm(R)
    s = singular_values(A)
    lam_min = np.linalg.eigvalsh(sym_part(S))[0]
    lower = max(2 * skew_n, res_n) / (2 * s[0])
    upper = 2 * (skew_n + res_n) / (s[-1] + lam_min)
    return GapDiagnostic(float(lower), float(upper), frobenius_norm(U - Utilde))
