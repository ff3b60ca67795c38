"""Spectral sufficient conditions for k-factor-criticality of graphs with
fixed minimum degree: extremal constructions, thresholds, criticality
deciders and a verification harness.
"""

from ._kernels import USE_NUMBA
from .criticality import (
    CriticalityCertificate,
    MatchingResult,
    is_kfc_matching,
    is_kfc_tutte,
    max_matching,
)
from .extremal import (
    CubicPoly,
    ExtremalParams,
    ThresholdReport,
    build_H,
    build_Hprime,
    build_Hs,
    f_poly,
    g_poly,
    largest_real_root,
    recognize_extremal,
    thresholds,
)
from .graph import (
    Graph,
    complete,
    copies,
    disjoint_union,
    empty,
    join,
    min_degree,
    odd_components,
    remove_vertices,
)
from .graph6 import emit_graph6, parse_graph6
from .spectral import (
    adjacency_matrix,
    alpha_matrix,
    largest_eigenvalue,
    perron_vector,
    quotient_matrix,
    signless_laplacian,
    spectral_radius,
)

__version__ = "0.1.0"
