"""Projected-polynomial retractions and the exact exponentials they approximate.

Unitary group (base point ``I``, direction skew-Hermitian ``Omega``)::

    P(Theta_n(t Omega)) = exp(t Omega) + O(t^(2n+1))

Grassmannian (``Y^* H = 0``), polar or QR projector, cost O(m p^2)::

    P(Y alpha_n(t^2 H^*H) + t H beta_n(t^2 H^*H)) = Exp_Y(tH) + O(t^(2n+1))

Stiefel manifold, canonical metric, ``n`` in 1..3::

    P(Y gamma_n(t^2 H^*H, t Y^*H) + t H delta_n(t^2 H^*H, t Y^*H))

which is accurate to O(t^(n+1)) in general and O(t^(2n+1)) when ``Y^*H = 0``
or ``m == p``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    RankError,
    SingularityError,
    StepTooLargeError,
    StructureError,
    UnsupportedOrderError,
)
from .matcore import (
    adjoint,
    as_matrix,
    expm_skew,
    frobenius_norm,
    logm_unitary,
    orth_completion,
    singular_values,
    skew_part,
    sym_part,
    thin_svd,
)
from .polar import METHODS, polar_factor, qr_projector
from .polynomials import (
    MAX_ORDER,
    alpha_beta_coeffs,
    eval_noncommutative,
    gamma_delta,
    horner,
    theta_apply,
)

MANIFOLDS = ("unitary", "grassmann", "stiefel")
PROJECTORS = ("polar", "qr")
TANGENT_TOL = 1e-10


@dataclass(frozen=True)
class TangentVector:
    """A tangent direction at ``base``.

    For ``manifold="unitary"`` the base point is the identity by convention
    and ``direction`` holds the skew-Hermitian ``Omega``; ``base`` may be None.
    """

    manifold: str
    base: np.ndarray
    direction: np.ndarray


@dataclass(frozen=True)
class TangentReport:
    manifold: str
    grassmann_residual: float  # ||Y^* H||
    stiefel_residual: float  # ||sym(Y^* H)||
    skew_residual: float  # ||skew(Omega) - Omega|| for the unitary case
    passed: bool


@dataclass(frozen=True)
class RetractionSpec:
    """Which retraction to apply: manifold, order, projector and polar kernel."""

    manifold: str
    order_n: int = 1
    projector: str = "polar"
    polar_method: str = "svd"

    def __post_init__(self):
        if self.manifold not in MANIFOLDS:
            raise DomainError(f"unknown manifold {self.manifold!r}")
        if self.projector not in PROJECTORS:
            raise DomainError(f"unknown projector {self.projector!r}")
        if self.polar_method not in METHODS:
            raise DomainError(f"unknown polar method {self.polar_method!r}")
        if self.projector == "qr" and self.manifold != "grassmann":
            raise DomainError("the QR projector is only valid on the Grassmannian")
        if self.manifold == "stiefel":
            if self.order_n not in (1, 2, 3):
                raise UnsupportedOrderError("Stiefel retractions exist for n in 1..3")
        elif not 0 <= self.order_n <= MAX_ORDER:
            raise DomainError(f"order_n must lie in [0, {MAX_ORDER}]")

    def apply(self, base, direction, t, cfg=None):
        """Retract ``direction`` at ``base`` with step ``t``.

        For the unitary group ``base`` is a unitary ``U`` (or None for the
        identity) and the result is ``U @ P(Theta_n(t Omega))``.
        """
        kw = dict(method=self.polar_method, cfg=cfg)
        if self.manifold == "unitary":
            R = retract_unitary(direction, t, self.order_n, **kw)
            return R if base is None else as_matrix(base) @ R
        if self.manifold == "grassmann":
            return retract_grassmann(base, direction, t, self.order_n, projector=self.projector, **kw)
        return retract_stiefel(base, direction, t, self.order_n, **kw)


def check_tangent(tv):
    """Report how far ``tv`` is from the tangent space of its manifold."""
    H = as_matrix(tv.direction, "direction")
    nan = float("nan")
    if tv.manifold == "unitary":
        if H.shape[0] != H.shape[1]:
            return TangentReport("unitary", nan, nan, float("inf"), False)
        skew_res = frobenius_norm(skew_part(H) - H)
        return TangentReport("unitary", nan, nan, skew_res, skew_res <= TANGENT_TOL * max(1, frobenius_norm(H)))
    Y = as_matrix(tv.base, "base")
    if Y.shape != H.shape:
        return TangentReport(tv.manifold, float("inf"), float("inf"), nan, False)
    W = adjoint(Y) @ H
    gr = frobenius_norm(W)
    st = frobenius_norm(sym_part(W))
    if tv.manifold == "grassmann":
        ok = gr <= TANGENT_TOL
    elif tv.manifold == "stiefel":
        ok = st <= TANGENT_TOL
    else:
        raise DomainError(f"unknown manifold {tv.manifold!r}")
    return TangentReport(tv.manifold, gr, st, nan, bool(ok))


def _require_tangent(manifold, Y, H):
    rep = check_tangent(TangentVector(manifold, Y, H))
    if not rep.passed:
        raise StructureError(
            f"direction is not tangent to the {manifold} manifold at Y "
            f"(||Y^*H||={rep.grassmann_residual:.3e}, ||sym(Y^*H)||={rep.stiefel_residual:.3e})"
        )


def _project(A, projector, method, cfg):
    s = singular_values(A)
    if s.size == 0 or not s[-1] > 1e-12 * s[0]:
        raise StepTooLargeError(
            "pre-projection matrix is numerically rank deficient; use a smaller t"
        )
    try:
        if projector == "qr":
            return qr_projector(A)
        if projector == "polar":
            return polar_factor(A, method, cfg)
    except (RankError, SingularityError) as exc:
        raise StepTooLargeError(str(exc)) from exc
    raise DomainError(f"unknown projector {projector!r}")


def retract_unitary(omega, t, n=1, method="svd", cfg=None):
    """``P(Theta_n(t Omega))``, an order ``2n+1`` approximation of ``exp(t Omega)``."""
    omega = as_matrix(omega, "omega")
    if omega.shape[0] != omega.shape[1] or frobenius_norm(skew_part(omega) - omega) > TANGENT_TOL * max(1, frobenius_norm(omega)):
        raise StructureError("omega must be skew-Hermitian")
    return _project(theta_apply(n, t * omega), "polar", method, cfg)


def grassmann_argument(Y, H, t, n):
    """The m x p matrix ``Y alpha_n(t^2 H^*H) + t H beta_n(t^2 H^*H)``."""
    alpha, beta = alpha_beta_coeffs(n)
    S = t * t * (adjoint(H) @ H)
    A = Y @ horner(alpha, S)
    if beta:
        A = A + t * (H @ horner(beta, S))
    return A


def retract_grassmann(Y, H, t, n=1, projector="polar", method="svd", cfg=None):
    """Order ``2n+1`` retraction on the Grassmannian.

    Only m x p and p x p matrices are formed. With ``projector="qr"`` the
    result spans the same subspace as the polar version; compare results with
    :func:`dist_grassmann`.
    """
    Y = as_matrix(Y, "Y")
    H = as_matrix(H, "H")
    _require_tangent("grassmann", Y, H)
    return _project(grassmann_argument(Y, H, t, n), projector, method, cfg)


def stiefel_argument(Y, H, t, n):
    """``Y gamma_n(t^2 H^*H, t Y^*H) + t H delta_n(t^2 H^*H, t Y^*H)``."""
    gamma, delta = gamma_delta(n)
    X = t * t * (adjoint(H) @ H)
    W = t * (adjoint(Y) @ H)
    return Y @ eval_noncommutative(gamma, X, W) + t * (H @ eval_noncommutative(delta, X, W))


def retract_stiefel(Y, H, t, n=1, method="svd", cfg=None):
    """Projected-polynomial retraction on the Stiefel manifold (n in 1..3)."""
    Y = as_matrix(Y, "Y")
    H = as_matrix(H, "H")
    _require_tangent("stiefel", Y, H)
    return _project(stiefel_argument(Y, H, t, n), "polar", method, cfg)


def exp_grassmann_exact(Y, H, t=1.0):
    """Grassmann exponential ``Y V cos(S) V^* + U sin(S) V^*`` where ``tH = U S V^*``."""
    Y = as_matrix(Y, "Y")
    H = as_matrix(H, "H")
    _require_tangent("grassmann", Y, H)
    svd = thin_svd(t * H)
    Vh = adjoint(svd.V)
    return (Y @ svd.V) @ (np.cos(svd.S)[:, None] * Vh) + svd.U @ (np.sin(svd.S)[:, None] * Vh)


def exp_grassmann_block(Y, H, t=1.0):
    """Grassmann exponential through the m x m block ``[[0, -K^*], [K, 0]]``.

    Independent O(m^3) route used to cross-check :func:`exp_grassmann_exact`.
    """
    Y = as_matrix(Y, "Y")
    H = as_matrix(H, "H")
    _require_tangent("grassmann", Y, H)
    return _block_exponential(Y, H, t, keep_omega=False)


def _block_exponential(Y, H, t, keep_omega):
    m, p = Y.shape
    Yp = orth_completion(Y)
    K = adjoint(Yp) @ H
    Z = np.zeros((m, m), dtype=np.complex128)
    if keep_omega:
        Z[:p, :p] = skew_part(adjoint(Y) @ H)
    Z[p:, :p] = K
    Z[:p, p:] = -adjoint(K)
    E = expm_skew(t * Z)
    return np.hstack([Y, Yp]) @ E[:, :p]


def exp_stiefel_exact(Y, H, t=1.0):
    """Stiefel exponential for the canonical metric,
    ``[Y Yperp] exp(t [[Omega, -K^*], [K, 0]]) [I; 0]``.

    Forms the full m x m block, so the cost is O(m^3).
    """
    Y = as_matrix(Y, "Y")
    H = as_matrix(H, "H")
    _require_tangent("stiefel", Y, H)
    return _block_exponential(Y, H, t, keep_omega=True)


def dist_unitary(U, V):
    """Geodesic distance ``||log(U^* V)||_F / sqrt(2)`` on the unitary group."""
    U = as_matrix(U, "U")
    V = as_matrix(V, "V")
    return frobenius_norm(logm_unitary(adjoint(U) @ V)) / np.sqrt(2)


def dist_grassmann(X, Y):
    """Distance ``min ||X V - Y W||_F`` over unitary ``V``, ``W``.

    Evaluated as ``||X - Y Q||_F`` with ``Q`` the unitary polar factor of
    ``Y^* X`` (the optimal alignment), which equals
    ``sqrt(2p - 2 sum sigma_i(X^* Y))`` but stays accurate for nearby
    subspaces where that closed form cancels catastrophically.
    """
    X = as_matrix(X, "X")
    Y = as_matrix(Y, "Y")
    if X.shape != Y.shape:
        raise StructureError("X and Y must have the same shape")
    p = X.shape[1]
    for M, name in ((X, "X"), (Y, "Y")):
        if frobenius_norm(adjoint(M) @ M - np.eye(p)) > 1e-8 * max(1, p):
            raise StructureError(f"{name} must have orthonormal columns")
    Us, _, Vh = np.linalg.svd(adjoint(Y) @ X)
    return frobenius_norm(X - Y @ (Us @ Vh))
