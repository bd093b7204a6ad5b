"""Scaling bounds at desk scale: pinned increments and stability.

Centering the integral at W's increment through phi_c must leave a remainder
of order (b-a)^(tau + lam*gamma); with a path pinned smoothly at the left
endpoint the exponent improves further, and an excessive target exponent is
detectably wrong (the negative control).  Perturbing the medium or the path
moves the integral by at most the two-term expressions tested here.
"""

import numpy as np

from nlyoung import (
    ProductField,
    Regularity,
    centered_bound_check,
    make_function,
    make_weierstrass,
    refined_bound_check,
    stability_in_medium,
)
from nlyoung.quadrature import QuadratureConfig
from nlyoung.regression import theil_sen_slope

w = ProductField(make_weierstrass(0.6, 12), make_function("identity"))
phi = make_weierstrass(0.7, 12)
reg = Regularity(0.6, 1.0, 0.7)
cfg = QuadratureConfig(n_outer=512, tol=5e-3)

print("centered bound: ratio of |int - pinned increment| to the scaling bound")
print(f"{'j':>3s} {'b-a':>10s} {'ratio':>10s}")
ratios = []
for j in range(7):
    b = 2.0 ** (-j)
    chk = centered_bound_check(w, phi, reg, 0.0, b, 0.0, cfg)
    ratios.append(chk.ratio)
    print(f"{j:3d} {b:10.4f} {chk.ratio:10.4f}")
slope = theil_sen_slope(np.arange(7), np.log2(ratios))
print(f"Theil-Sen slope of log2-ratio vs j: {slope:+.3f}  (no trend = uniform constant)")

print("\nrefined bound with a smooth pinned path phi(s) = s:")
threshold = 1.0 + (reg.lam * reg.gamma + reg.tau - 1.0) / reg.gamma
phi_pin = lambda t: np.asarray(t, dtype=float)
for beta, tag in ((0.9 * threshold, "admissible"), (threshold + 0.45, "excessive")):
    logr = []
    for j in range(7):
        b = 2.0 ** (-j)
        chk = refined_bound_check(w, phi_pin, reg, 0.0, b, 1.0, 1.0, beta, cfg)
        logr.append(np.log2(max(chk.ratio, 1e-300)))
    s = theil_sen_slope(np.arange(7), logr)
    print(f"  beta = {beta:.3f} ({tag}); ratio trend {s:+.3f} "
          f"({'bounded' if s <= 0.1 else 'grows'})")

print("\nmedium stability: lhs vs the two-term bound")
w2 = ProductField(make_weierstrass(0.65, 12, phases=[0.7] * 12), make_function("identity"))
chk = stability_in_medium(w, w2, phi, reg, 0.0, 1.0, QuadratureConfig(n_outer=768, tol=5e-3))
print(f"  |int W1 - int W2| = {chk.lhs:.4f}")
print(f"  pinned-increment term = {chk.term1:.4f}, bracket term = {chk.term2:.4f}")
