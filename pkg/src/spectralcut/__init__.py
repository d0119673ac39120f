"""Spectral thresholds for the edge-connectivity of regular graphs."""

from .graph import (
    EdgeBoundary,
    Graph,
    GraphError,
    complement,
    complete,
    cycle,
    degree_sequence,
    disjoint_union,
    edge_boundary,
    induced_subgraph,
    is_regular,
    join,
    matching_complement,
)
from .spectra import (
    ConvergenceError,
    Spectrum,
    adjacency_spectrum,
    lambda2,
    laplacian_spectrum,
    largest_real_root,
    mu2,
    sym_eigenvalues,
)
from .connectivity import (
    CutCertificate,
    check_cut_side_sizes,
    check_dense_edge_conn,
    edge_connectivity,
    vertex_connectivity,
)
from .partitions import (
    QuotientMatrix,
    TridiagonalRowSum,
    VertexPartition,
    equitable_lift_check,
    interlaces,
    is_equitable,
    quotient_matrix,
    tridiagonal_reduce,
)
from .extremal import (
    build_G,
    build_H,
    cioaba_weak_bound,
    guaranteed_edge_connectivity,
    pi,
    rho,
)

__version__ = "0.1.0"
