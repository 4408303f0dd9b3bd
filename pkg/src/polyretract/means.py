"""Arithmetic and geometric means of unitary matrices.

The weighted arithmetic mean is the polar factor of ``sum_i w_i U_i``. The
geometric (Karcher) mean ``G`` solves ``sum_i w_i log(G^* U_i) = 0`` and is
found by fixed-point iteration started from the arithmetic mean. For data
clustered within ``O(t)`` of each other the two means differ by ``O(t^3)``.
"""

import numpy as np

from .errors import DomainError, NonConvergenceError, RankError, SingularityError
from .matcore import (
    adjoint,
    as_matrix,
    expm_skew,
    frobenius_norm,
    logm_unitary,
    random_skew_hermitian,
)
from .polar import IterationConfig, polar_svd
from .report import ConvergenceReport, LevelResult, SeriesResult, attach_orders
from .retract import dist_unitary

# Pairwise geodesic radius inside which the Karcher mean is unique and all
# logarithms stay clear of the branch cut.
CLUSTER_RADIUS = np.pi / 4


def check_weights(w, count):
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size != count:
        raise DomainError(f"need {count} weights, got shape {w.shape}")
    if abs(w.sum() - 1.0) > 1e-14 * max(1, count):
        raise DomainError(f"weights must sum to 1, got {w.sum()!r}")
    return w


def _stack(Us):
    Us = [as_matrix(U, "U_i") for U in Us]
    if not Us:
        raise DomainError("need at least one matrix")
    shape = Us[0].shape
    if any(U.shape != shape for U in Us) or shape[0] != shape[1]:
        raise DomainError("all matrices must be square of the same size")
    m = shape[0]
    for U in Us:
        if frobenius_norm(adjoint(U) @ U - np.eye(m)) > 1e-8 * max(1, m):
            raise DomainError("all matrices must be unitary")
    return Us


def arithmetic_mean(Us, w):
    """``P(sum_i w_i U_i)``, the closest unitary to the weighted average."""
    Us = _stack(Us)
    w = check_weights(w, len(Us))
    A = sum(wi * U for wi, U in zip(w, Us))
    try:
        return polar_svd(A).U
    except RankError as exc:
        raise SingularityError("weighted sum is singular (antipodal data)") from exc


def karcher_residual(G, Us, w):
    """``sum_i w_i log(G^* U_i)`` -- zero exactly at the geometric mean."""
    Gh = adjoint(G)
    return sum(wi * logm_unitary(Gh @ U) for wi, U in zip(w, Us))


def geometric_mean(Us, w, cfg=None, full_output=False):
    """Weighted Karcher mean on the unitary group.

    Iterates ``G <- G exp(sum_i w_i log(G^* U_i))`` from the arithmetic mean
    until the residual's Frobenius norm is at most ``cfg.tol``. With
    ``full_output`` also returns ``(iterations, residual_norm)``.
    """
    cfg = cfg or IterationConfig()
    Us = _stack(Us)
    w = check_weights(w, len(Us))
    for i in range(len(Us)):
        for j in range(i + 1, len(Us)):
            if dist_unitary(Us[i], Us[j]) > CLUSTER_RADIUS:
                raise DomainError("data must lie pairwise within geodesic distance pi/4")
    G = arithmetic_mean(Us, w)
    R = karcher_residual(G, Us, w)
    res = frobenius_norm(R)
    it = 0
    while res > cfg.tol:
        if it >= cfg.max_iters:
            raise NonConvergenceError(
                f"Karcher iteration did not converge in {cfg.max_iters} steps "
                f"(residual={res:.3e})",
                residual=res,
                iterations=it,
            )
        G = G @ expm_skew(R)
        R = karcher_residual(G, Us, w)
        res = frobenius_norm(R)
        it += 1
    return (G, it, res) if full_output else G


def interpolate_polar(U1, U2, s):
    """``P((1 - s) U1 + s U2)``; superclose to the geodesic, exact at ``s = 1/2``."""
    U1 = as_matrix(U1, "U1")
    U2 = as_matrix(U2, "U2")
    try:
        return polar_svd((1 - s) * U1 + s * U2).U
    except RankError as exc:
        raise SingularityError("(1-s) U1 + s U2 is singular") from exc


def supercloseness_experiment(seed=0, count=3, w=None, t0=0.01, levels=6, m=10, cfg=None):
    """Compare arithmetic and geometric means of clustered unitary data.

    Draws ``U_i(t) = exp(t Omega_i)`` with seeded unit-norm skew-Hermitian
    ``Omega_i`` and records ``||A - G||_F`` at ``t = t0 2^{-k}``. The Karcher
    residual at each level is stored in ``report.diagnostics["residuals"]``.
    """
    if w is None:
        w = np.full(count, 1.0 / count)
    w = check_weights(w, count)
    cfg = cfg or IterationConfig(tol=1e-13)
    rng = np.random.default_rng(seed)
    seeds = rng.integers(0, 2**31, size=count)
    omegas = [random_skew_hermitian(m, int(s)) for s in seeds]
    results, residuals = [], []
    for k in range(levels):
        t = t0 * 2.0**-k
        Us = [expm_skew(t * O) for O in omegas]
        A = arithmetic_mean(Us, w)
        G, _, res = geometric_mean(Us, w, cfg, full_output=True)
        results.append(LevelResult(k, t, frobenius_norm(A - G)))
        residuals.append(res)
    config = {
        "experiment": "means",
        "m": m,
        "count": count,
        "weights": [float(x) for x in w],
        "t0": t0,
        "levels": levels,
        "seed": seed,
    }
    report = ConvergenceReport(config, [SeriesResult(count, attach_orders(results))])
    report.diagnostics["residuals"] = residuals
    return report
