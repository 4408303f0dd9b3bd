"""High-order retractions on the unitary group, Grassmannian and Stiefel
manifold built from projected (polar or QR) Bessel-type matrix polynomials."""

from .errors import (
    BranchCutError,
    DefinitenessError,
    DimensionError,
    DomainError,
    NonConvergenceError,
    RankError,
    RetractionError,
    SingularityError,
    StepTooLargeError,
    StructureError,
    UnsupportedOrderError,
)
from .matcore import (
    expm_skew,
    frobenius_norm,
    invsqrtm_hpd,
    logm_unitary,
    orth_completion,
    random_grassmann_tangent,
    random_skew_hermitian,
    random_stiefel_point,
    random_stiefel_tangent,
    random_unitary,
    skew_part,
    sym_part,
    thin_qr,
    thin_svd,
)
from .means import (
    arithmetic_mean,
    geometric_mean,
    interpolate_polar,
    supercloseness_experiment,
)
from .polar import (
    IterationConfig,
    PolarFactors,
    polar_factor,
    polar_newton,
    polar_newton_rect,
    polar_newton_schulz,
    polar_svd,
    qr_projector,
    symmetry_gap,
)
from .polynomials import alpha_beta_coeffs, bessel_coeffs, gamma_delta, theta_apply
from .report import ConvergenceReport, emit_report, observed_order
from .retract import (
    RetractionSpec,
    TangentVector,
    check_tangent,
    dist_grassmann,
    dist_unitary,
    exp_grassmann_exact,
    exp_stiefel_exact,
    retract_grassmann,
    retract_stiefel,
    retract_unitary,
)
from .bench import ExperimentConfig, run_convergence_study

__version__ = "0.1.0"
