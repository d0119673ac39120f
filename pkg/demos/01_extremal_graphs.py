"""Build the extremal graphs G_{d,t} and watch the threshold become tight.

For each valid (d, t) the graph has edge-connectivity exactly t and its
second eigenvalue lands on rho(d, t), so no smaller threshold would work.
"""

from spectralcut.connectivity import edge_connectivity
from spectralcut.extremal import build_G, rho, valid_pairs
from spectralcut.spectra import lambda2

print(f"{'d':>3} {'t':>3} {'n':>4} {'kappa':>6} {'lambda2':>12} {'rho(d,t)':>12}")
for d, t in valid_pairs(9):
    g = build_G(d, t)
    kappa, cert = edge_connectivity(g)
    print(f"{d:>3} {t:>3} {g.n:>4} {kappa:>6} {lambda2(g):>12.8f} {rho(d, t):>12.8f}")

# The minimum cut separates the two halves.
g = build_G(7, 4)
kappa, cert = edge_connectivity(g)
print("\nG_{7,4} minimum cut: r =", cert.r, "side sizes", cert.sizes(g.n))
