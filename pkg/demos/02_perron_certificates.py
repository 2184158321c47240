#!/usr/bin/env python3
"""Collatz-Wielandt certificates for nonnegative matrices.

For nonnegative B the weighted l1 norm with weights w induces
max_i (B^T w)_i / w_i on B, and the infimum of that expression over all
positive w is exactly rho(B).  The weights realizing it within any eps
form a computable certificate: one inequality check per row, no
eigensolver needed to verify.
"""

import numpy as np

from absnorm import induced_norm, nonneg_spectral_radius, optimal_weighted_l1

rng = np.random.default_rng(0)

examples = {
    "all-ones": np.ones((2, 2)),
    "cyclic [[0,2],[1,0]]": np.array([[0.0, 2.0], [1.0, 0.0]]),
    "nilpotent shift": np.array([[0.0, 1.0], [0.0, 0.0]]),
    "random sparse 5x5": np.where(rng.random((5, 5)) < 0.5, rng.random((5, 5)), 0.0),
}

for name, b in examples.items():
    result = nonneg_spectral_radius(b)
    print(f"=== {name} ===")
    print("rho(B)                  :", result.rho)
    print("certified bracket       :", result.bracket)
    print("iterations              :", result.iterations)

    eps = 1e-3
    weights = optimal_weighted_l1(b, eps=eps)
    nu = induced_norm(b, weights)
    print(f"weights (eps = {eps})    :", np.round(weights.w, 6))
    print("induced weighted l1     :", nu)
    print("rho + eps               :", result.rho + eps)
    print("certificate holds       :", nu <= result.rho + eps + 1e-9)
    ratios = (b.T @ weights.w) / weights.w
    print("per-row ratios          :", np.round(ratios, 6))
    print()

print("The per-row ratios sit at or below rho + eps; their maximum IS the")
print("induced norm, so the certificate is checkable by inspection.")
