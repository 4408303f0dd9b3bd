"""
Retractions on the Grassmannian
================================

On the Grassmannian only m x p and p x p matrices are needed. The even and
odd parts of Theta_n act on t^2 H^*H, and either the polar factor or the Q
factor of a QR decomposition finishes the job. Both spans agree with the
exact geodesic to order 2n+1.
"""

import numpy as np

from polyretract import (
    alpha_beta_coeffs,
    dist_grassmann,
    exp_grassmann_exact,
    observed_order,
    random_grassmann_tangent,
    random_stiefel_point,
    retract_grassmann,
)

m, p = 300, 10
Y = random_stiefel_point(m, p, seed=1)
H = random_grassmann_tangent(Y, seed=2)
H *= 40 / np.linalg.norm(H, 2)

###############################################################################
# The coefficient split used by the retraction.
for n in (1, 2, 3):
    alpha, beta = alpha_beta_coeffs(n)
    print(f"n={n}: alpha={[str(c) for c in alpha]} beta={[str(c) for c in beta]}")

###############################################################################
# Subspace distance to the exact geodesic, for both projectors. Four levels
# keep the n = 3 errors above roundoff.
ts = 0.01 * 2.0 ** -np.arange(4)
for projector in ("polar", "qr"):
    for n in (1, 2, 3):
        errs = [dist_grassmann(retract_grassmann(Y, H, t, n, projector), exp_grassmann_exact(Y, H, t))
                for t in ts]
        print(f"{projector:>5} n={n}: mean order {np.mean(observed_order(errs)):.2f}")
