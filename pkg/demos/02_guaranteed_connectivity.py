"""Read off edge-connectivity guarantees from a second eigenvalue.

A random d-regular graph usually has lambda_2 far below every threshold,
so the spectrum alone certifies that it is d-edge-connected.
"""

from spectralcut.connectivity import edge_connectivity
from spectralcut.extremal import guaranteed_edge_connectivity, rho
from spectralcut.harness import random_regular
from spectralcut.spectra import lambda2

d = 6
print("thresholds for d = 6:", {t: round(rho(d, t), 6) for t in range(3, d)})
for seed in range(5):
    g = random_regular(40, d, seed)
    lam = lambda2(g)
    bound = guaranteed_edge_connectivity(d, lam)
    actual, _ = edge_connectivity(g)
    print(f"seed {seed}: lambda2 = {lam:.4f}  guaranteed kappa' >= {bound}  actual {actual}")
