"""
Arithmetic versus geometric means of unitary matrices
======================================================

The arithmetic mean projects the weighted average onto the unitary group;
the geometric (Karcher) mean is defined implicitly by a vanishing sum of
logarithms. For data within O(t) of each other they differ by only O(t^3),
and for two matrices with equal weights they coincide.
"""

import numpy as np
import scipy.linalg

from polyretract import (
    arithmetic_mean,
    expm_skew,
    frobenius_norm,
    geometric_mean,
    interpolate_polar,
    random_skew_hermitian,
    random_unitary,
    supercloseness_experiment,
)

###############################################################################
# Two matrices: the polar midpoint is the geodesic midpoint U1 (U1^* U2)^(1/2).
U1 = random_unitary(6, seed=0)
U2 = U1 @ expm_skew(random_skew_hermitian(6, seed=1))
mid = interpolate_polar(U1, U2, 0.5)
print("midpoint vs sqrtm:", frobenius_norm(mid - U1 @ scipy.linalg.sqrtm(U1.conj().T @ U2)))
print("A vs G (2 matrices):", frobenius_norm(arithmetic_mean([U1, U2], [0.5, 0.5])
                                            - geometric_mean([U1, U2], [0.5, 0.5])))

###############################################################################
# Three clustered matrices with unequal weights: the gap shrinks like t^3.
rep = supercloseness_experiment(seed=0, count=3, w=[0.5, 0.3, 0.2])
for lv, res in zip(rep.results[0].levels, rep.diagnostics["residuals"]):
    order = "" if lv.order is None else f"{lv.order:.3f}"
    print(f"t={lv.t:.5f}  ||A - G||={lv.error:.3e}  order={order:>6}  Karcher residual={res:.1e}")
