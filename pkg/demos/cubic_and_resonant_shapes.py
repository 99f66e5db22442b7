"""Curve shapes for the cubic family and a bounded resonant perturbation.

For u'' + lam u - u^3 = mu_1 sin(pi x) + e the curve mu_1(xi_1) is strictly
decreasing when lam <= lambda_1 (unique solutions) but develops two turns
once lam crosses into (lambda_1, lambda_2) with small forcing (up to three
solutions between the turning levels).  For the bounded perturbation
pi^2 u + u/(1+u^2) at exact resonance the curve crosses zero, proving
solvability of the unforced-harmonic equation.

Run:  python demos/cubic_and_resonant_shapes.py
"""

import numpy as np

from harmcont import SineSeries, analyze, catalog, follow_curve

low = catalog("cubic(pi^2/2)")  # e defaults to 0.3 sin 2 pi x
curve = follow_curve(low, -3.0, 3.0, 0.05, n_modes=32)
print("lam = pi^2/2 (below lambda_1):")
print(f"  strictly decreasing: {bool(np.all(np.diff(curve.mu()) < 0))}")

high = catalog("cubic(2.5*pi^2)", e=SineSeries.from_pairs(1.0, [(2, 0.05)]))
curve = follow_curve(high, -3.0, 3.0, 0.05, n_modes=32)
report = analyze(curve)
print("lam = 2.5 pi^2 (between lambda_1 and lambda_2), small e:")
for x, m, kind in report.extrema:
    print(f"  turn: {kind} at xi = {x:.3f}, mu = {m:.3f}")
turns = [m for _, m, _ in report.extrema]
if len(turns) >= 2:
    lo, hi = sorted(turns)[0], sorted(turns)[-1]
    print(f"  three solutions for mu_1 between {lo:.3f} and {hi:.3f}")

res = catalog("resonant-bounded")
curve = follow_curve(res, -30.0, 30.0, 0.1, n_modes=32)
report = analyze(curve)
print("bounded perturbation at resonance:")
print(f"  mu(-30) = {curve.mu()[0]:.4f} < 0 < mu(30) = {curve.mu()[-1]:.4f}")
print(f"  zero crossing at xi = {report.sign_changes[0]:.4f} "
      "(a solution of the mu_1 = 0 problem)")
