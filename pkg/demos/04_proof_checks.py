"""Numerical companions to the proof: perturbation and monotonicity.

Each family evaluates one step of the argument over a grid and reports the
worst margin; a negative margin would be a counterexample.
"""

from spectralcut.prooflab import sweep

report = sweep(dmax=10, samples=200, seed=1)
print(report.to_csv(), end="")
print("all families pass:", report.ok)
