"""
Retractions on the Stiefel manifold
====================================

With the canonical metric the Stiefel exponential mixes the Grassmann part
of the tangent with the rotation Omega = Y^*H. The projected polynomials are
then accurate to order n+1 in general, recovering 2n+1 when Omega vanishes or
when the matrices are square.
"""

import numpy as np

from polyretract import (
    ExperimentConfig,
    gamma_delta,
    run_convergence_study,
)
from polyretract.report import report_to_table

###############################################################################
# The polynomials are non-commutative: the word "xy" is evaluated as
# (t^2 H^*H)(t Y^*H).
for n in (1, 2, 3):
    gamma, delta = gamma_delta(n)
    print(f"gamma_{n}:", {w or "1": str(c) for w, c in gamma.terms})
    print(f"delta_{n}:", {w or "1": str(c) for w, c in delta.terms})

###############################################################################
# Three regimes, each a seeded convergence study.
cases = {
    "generic tangent": ExperimentConfig("stiefel", m=120, p=12),
    "Y^*H = 0": ExperimentConfig("stiefel", m=120, p=12, tangent_mode="grassmann-only"),
    "square (m = p)": ExperimentConfig("stiefel", m=12, p=12),
}
for name, cfg in cases.items():
    print(f"\n{name}")
    print(report_to_table(run_convergence_study(cfg)), end="")
