"""
Four ways to compute the polar factor
======================================

The SVD gives the polar factor directly. Newton's iteration, its rectangular
variant and the inverse-free Newton-Schulz iteration reach the same matrix
using only products and solves. A cheap two-sided bound tells how far a
nearby orthonormal matrix is from the true polar factor.
"""

import numpy as np

from polyretract import (
    frobenius_norm,
    polar_newton,
    polar_newton_rect,
    polar_newton_schulz,
    polar_svd,
    random_stiefel_point,
    symmetry_gap,
)

rng = np.random.default_rng(0)
A = rng.standard_normal((40, 40)) + 1j * rng.standard_normal((40, 40))
ref = polar_svd(A).U

###############################################################################
# Iteration counts and agreement with the SVD factor.
for name, kernel in [("newton", polar_newton), ("newton-rect", polar_newton_rect),
                     ("newton-schulz", polar_newton_schulz)]:
    U, info = kernel(A, full_output=True)
    print(f"{name:>13}: {info.iterations:2d} iterations, diff {frobenius_norm(U - ref):.1e}")

###############################################################################
# The bound: perturb an orthonormal matrix and compare the true distance of
# its polar factor with the lower and upper estimates.
Ut = random_stiefel_point(40, 6, seed=3)
for eps in (1e-1, 1e-2, 1e-3):
    E = rng.standard_normal((40, 6))
    g = symmetry_gap(Ut + eps * E / frobenius_norm(E), Ut)
    print(f"eps={eps:.0e}: {g.lower:.3e} <= {g.actual:.3e} <= {g.upper:.3e}")
