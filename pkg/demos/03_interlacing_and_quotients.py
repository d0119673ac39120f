"""Equitable partitions and interlacing on a small example.

The canonical partition of G_{d,t} is equitable, so its quotient eigenvalues
sit inside the graph spectrum; any partition still interlaces.
"""

import numpy as np

from spectralcut.extremal import build_G, canonical_partition
from spectralcut.partitions import VertexPartition, interlaces, is_equitable, quotient_matrix
from spectralcut.spectra import adjacency_spectrum

for d, t in [(7, 3), (8, 4)]:
    g = build_G(d, t)
    p = canonical_partition(d, t)
    q = quotient_matrix(g, p)
    print(f"G_{{{d},{t}}} equitable: {is_equitable(g, p)}")
    print(q.to_array())
    print("quotient eigenvalues:", np.round(q.eigenvalues().values, 6))
    print("graph spectrum top:  ", np.round(adjacency_spectrum(g).values[:3], 6))

g = build_G(7, 3)
rough = VertexPartition([list(range(0, g.n, 2)), list(range(1, g.n, 2))])
print("\nodd/even vertex split interlaces:",
      interlaces(adjacency_spectrum(g), quotient_matrix(g, rough).eigenvalues(), 1e-9))
