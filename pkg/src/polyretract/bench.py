"""Seeded convergence-order studies for the projected-polynomial retractions.

For each order ``n`` and each level ``k`` the retraction at ``t = t0 2^{-k}``
is compared with the exact exponential, and the observed dyadic order
``log2(e_{k-1} / e_k)`` is recorded.
"""

from dataclasses import asdict, dataclass

import numpy as np

from .errors import DomainError, StepTooLargeError, UnsupportedOrderError
from .matcore import (
    expm_skew,
    frobenius_norm,
    random_grassmann_tangent,
    random_skew_hermitian,
    random_stiefel_point,
    random_stiefel_tangent,
)
from .polar import METHODS
from .polynomials import MAX_ORDER
from .report import ConvergenceReport, LevelResult, SeriesResult, attach_orders
from .retract import (
    MANIFOLDS,
    PROJECTORS,
    dist_grassmann,
    exp_grassmann_exact,
    exp_stiefel_exact,
    retract_grassmann,
    retract_stiefel,
    retract_unitary,
)

TANGENT_MODES = ("generic", "grassmann-only")
DEFAULT_DIMS = {"unitary": (50, 50), "grassmann": (200, 20), "stiefel": (200, 20)}


@dataclass
class ExperimentConfig:
    """One convergence study.

    ``scale`` is the spectral norm given to the random direction, so that
    ``||t0 * direction||_2 = t0 * scale`` (0.4 with the defaults). This keeps
    the high-order errors above roundoff for several halvings.
    """

    manifold: str = "unitary"
    m: int = None
    p: int = None
    n_list: tuple = (1, 2, 3)
    t0: float = 0.01
    levels: int = 6
    seed: int = 0
    projector: str = "polar"
    polar_method: str = "svd"
    tangent_mode: str = "generic"
    scale: float = 40.0

    def __post_init__(self):
        if self.manifold not in MANIFOLDS:
            raise DomainError(f"manifold must be one of {MANIFOLDS}, got {self.manifold!r}")
        dm, dp = DEFAULT_DIMS[self.manifold]
        if self.m is None:
            self.m = dm
        if self.p is None:
            self.p = self.m if self.manifold == "unitary" else min(dp, self.m)
        if self.manifold == "unitary" and self.p != self.m:
            raise DomainError("unitary experiments need p == m")
        if not self.m >= self.p >= 1:
            raise DomainError(f"need m >= p >= 1, got m={self.m}, p={self.p}")
        if self.manifold == "grassmann" and self.m == self.p:
            raise DomainError("Grassmann experiments need m > p")
        self.n_list = tuple(int(n) for n in self.n_list)
        if not self.n_list:
            raise DomainError("n_list is empty")
        for n in self.n_list:
            if self.manifold == "stiefel" and n not in (1, 2, 3):
                raise UnsupportedOrderError("Stiefel retractions exist for n in 1..3")
            if not 0 <= n <= MAX_ORDER:
                raise DomainError(f"n must lie in [0, {MAX_ORDER}]")
        if not self.t0 > 0:
            raise DomainError("t0 must be positive")
        if self.levels < 2:
            raise DomainError("levels must be at least 2")
        if self.projector not in PROJECTORS:
            raise DomainError(f"projector must be one of {PROJECTORS}")
        if self.projector == "qr" and self.manifold != "grassmann":
            raise DomainError("the QR projector is only valid on the Grassmannian")
        if self.polar_method not in METHODS:
            raise DomainError(f"polar_method must be one of {METHODS}")
        self.tangent_mode = self.tangent_mode.replace("_", "-")
        if self.tangent_mode not in TANGENT_MODES:
            raise DomainError(f"tangent_mode must be one of {TANGENT_MODES}")
        if not self.scale > 0:
            raise DomainError("scale must be positive")

    def as_dict(self):
        d = asdict(self)
        d["n_list"] = list(self.n_list)
        return d


def _with_spectral_norm(X, target):
    return X * (target / np.linalg.norm(X, 2))


def _problem(cfg):
    """Return ``(retract(t, n), error(approx, t))`` closures for ``cfg``."""
    kw = dict(method=cfg.polar_method)
    if cfg.manifold == "unitary":
        omega = _with_spectral_norm(random_skew_hermitian(cfg.m, cfg.seed), cfg.scale)

        def retract(t, n):
            return retract_unitary(omega, t, n, **kw)

        def error(R, t):
            return frobenius_norm(R - expm_skew(t * omega))

        return retract, error

    Y = random_stiefel_point(cfg.m, cfg.p, cfg.seed)
    if cfg.manifold == "grassmann":
        H = _with_spectral_norm(random_grassmann_tangent(Y, cfg.seed + 1), cfg.scale)

        def retract(t, n):
            return retract_grassmann(Y, H, t, n, projector=cfg.projector, **kw)

        def error(R, t):
            E = exp_grassmann_exact(Y, H, t)
            return dist_grassmann(R, E) if cfg.projector == "qr" else frobenius_norm(R - E)

        return retract, error

    grassmann_only = cfg.tangent_mode == "grassmann-only"
    H = _with_spectral_norm(random_stiefel_tangent(Y, cfg.seed + 1, grassmann_only), cfg.scale)

    def retract(t, n):
        return retract_stiefel(Y, H, t, n, **kw)

    def error(R, t):
        return frobenius_norm(R - exp_stiefel_exact(Y, H, t))

    return retract, error


def run_convergence_study(cfg):
    """Run ``cfg`` and return a :class:`ConvergenceReport`.

    Levels where the pre-projection matrix loses rank are kept as skipped
    (floored) entries instead of aborting the study.
    """
    retract, error = _problem(cfg)
    results = []
    for n in cfg.n_list:
        levels = []
        for k in range(cfg.levels):
            t = cfg.t0 * 2.0**-k
            try:
                levels.append(LevelResult(k, t, error(retract(t, n), t)))
            except StepTooLargeError:
                levels.append(LevelResult(k, t, None))
        results.append(SeriesResult(n, attach_orders(levels)))
    return ConvergenceReport(cfg.as_dict(), results)
