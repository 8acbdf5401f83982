"""Choosing the weight from the data alone with the L-curve.

Sweeping lambda over a log-spaced grid traces the residual norm against
the penalty seminorm. Small weights fit the noise (left branch, large
solution norm); large weights oversmooth (right branch, large residual).
The corner balances the two, and the automatic pick lands there without
knowing the noise level.
"""

import numpy as np

import waveforce as wf

g = wf.GridSpec(1.0, 1.0, 80, 80)
system = wf.assemble_single(wf.inverse_problem(2, g), wf.measured_flux(2, g))
noisy = system.with_measurement(wf.measured_flux(2, g), noise=wf.NoiseSpec(0.01, 1))

points = wf.sweep(noisy, 0)
best = wf.corner(points)

print("hat-profile scenario, 1% noise, order 0")
print()
print("lambda      residual norm   solution norm")
print("-" * 46)
for p in points:
    mark = "   <-- corner" if p is best else ""
    print(f"{p.lam:<11g} {p.residual_norm:<15.6e} {p.solution_norm:.6e}" + mark)

exact = wf.exact_force(2, g)
print()
for lam, label in ((best.lam, "corner"), (1e-9, "undersmoothed"), (5e-2, "oversmoothed")):
    f = wf.tikhonov_solve(noisy, wf.RegConfig(order=0, lam=lam))
    print(f"accuracy error at lambda = {lam:g} ({label}): "
          f"{wf.accuracy_error(f, exact):.4f}")
