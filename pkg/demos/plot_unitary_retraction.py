"""
Approximating the exponential of a skew-Hermitian matrix
=========================================================

Projecting the degree-n Bessel polynomial Theta_n(t Omega) onto the unitary
group gives an approximation of exp(t Omega) whose error shrinks like
t^(2n+1). This script measures that rate by repeated halving of t.
"""

import numpy as np

from polyretract import (
    bessel_coeffs,
    expm_skew,
    frobenius_norm,
    observed_order,
    random_skew_hermitian,
    retract_unitary,
)

###############################################################################
# The polynomials have exact rational coefficients. Theta_1 is 1 + z, so the
# n = 1 retraction is simply the polar factor of I + t Omega.
for n in range(4):
    print(f"Theta_{n}:", [str(c) for c in bessel_coeffs(n).a])

###############################################################################
# A random skew-Hermitian direction, scaled to spectral norm 40 so that even
# the n = 3 errors stay well above roundoff for a few halvings.
omega = random_skew_hermitian(30, seed=0)
omega *= 40 / np.linalg.norm(omega, 2)

ts = 0.01 * 2.0 ** -np.arange(5)
for n in (1, 2, 3):
    errors = [frobenius_norm(retract_unitary(omega, t, n) - expm_skew(t * omega)) for t in ts]
    orders = observed_order(errors)
    print(f"n={n}: errors", " ".join(f"{e:.2e}" for e in errors))
    print(f"     orders", " ".join(f"{o:.2f}" for o in orders), f"(expected {2 * n + 1})")

###############################################################################
# The result is unitary to machine precision no matter how large t is.
U = retract_unitary(omega, 1.0, 2)
print("||U*U - I|| =", frobenius_norm(U.conj().T @ U - np.eye(30)))
