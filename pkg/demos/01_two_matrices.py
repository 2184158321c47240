#!/usr/bin/env python3
"""Two 2x2 matrices that bracket the whole story.

The first matrix has spectral radius 0, yet no absolute norm can give it
an induced norm below 2: it is sign equivalent to the all-ones matrix,
so every absolute norm sees the all-ones growth.  The second matrix is a
scaled rotation; it is NOT sign equivalent to its absolute value, and
the minimal induced absolute norm drops to sqrt(2), strictly below
rho(|A|) = 2.
"""

import numpy as np

from absnorm import (
    entrywise_abs,
    mu_bounds,
    sign_equivalent_to_abs,
    spectral_norm,
    spectral_radius,
    word_to_json,
)

sharp = np.array([[1.0, 1.0], [-1.0, -1.0]])
hadamard = np.array([[1.0, 1.0], [1.0, -1.0]])

print("=== A = [[1,1],[-1,-1]] ===")
print("spectral radius rho(A)   :", spectral_radius(sharp))
print("spectral norm ||A||_2    :", spectral_norm(sharp))
print("rho(|A|)                 :", spectral_radius(entrywise_abs(sharp)))

witness = sign_equivalent_to_abs(sharp)
print("sign equivalent to |A|?  : yes")
print("  left diagonal D1       :", list(witness.left.phases))
print("  right diagonal D2      :", list(witness.right.phases))

report = mu_bounds(sharp, max_depth=1)
print("mu(A) interval           :", [report.lower, report.upper])
print("  shortcut               :", report.shortcut)
print("  witness word           :", word_to_json(report.lower_witness))
print()
print("Every absolute norm must give ||A|| >= 2 even though rho(A) = 0.")
print()

print("=== A = [[1,1],[1,-1]] ===")
print("spectral radius rho(A)   :", spectral_radius(hadamard))
print("rho(|A|)                 :", spectral_radius(entrywise_abs(hadamard)))

certificate = sign_equivalent_to_abs(hadamard)
print("sign equivalent to |A|?  : no")
print("  refuting cycle         :", list(certificate.cycle))
print("  cycle phase product    :", certificate.phase_product.real)

report = mu_bounds(hadamard, max_depth=1)
print("mu(A) interval           :", [report.lower, report.upper])
print()
print("Here mu(A) = sqrt(2) < rho(|A|) = 2: scaling by 1/sqrt(2) makes A")
print("orthogonal, so all diagonal-sign products grow like 2^(k/2) and the")
print("Euclidean norm itself is already optimal among absolute norms.")
