"""Resonance graphs of plane bipartite graphs and daisy cubes.

Build a plane bipartite graph (from a rotation system, a graph file or one of
the generators), enumerate its perfect matchings, construct the resonance
graph and test it for the partial-cube, median and daisy-cube properties.
"""

from .cube import (
    CubeEmbedding,
    DaisyCertificate,
    SimpleGraph,
    all_pairs_distances,
    cartesian_product,
    fibonacci_cube,
    hypercube,
    is_daisy_cube,
    is_isomorphic,
    is_median_graph,
    is_partial_cube,
    recognize_daisy,
    theta_partition,
)
from .errors import ReskitError
from .generators import (
    anthracene,
    benzenoid_chain,
    bridged_hexagons,
    coronene_like,
    enumerate_chains,
    even_cycle,
    fibonaccene,
    naphthalene,
    polyacene,
    search_non_weakly_elementary,
    two_component_graph,
)
from .io import export_dot, parse, serialize
from .matching import (
    Matching,
    allowed_edges,
    elementary_decomposition,
    enumerate_perfect_matchings,
    forbidden_edges,
    fries_number,
    is_elementary,
    is_weakly_elementary,
    resonant_faces,
)
from .plane_graph import (
    Color,
    PlaneBipartiteGraph,
    adjacent_triples,
    classify,
    handles,
    is_outerplane,
    is_peripherally_2_colorable,
    outerplanarize,
)
from .resonance import ResonanceGraph, build_resonance_graph, classify_symmetric_difference
from .theorems import TheoremReport, run_corpus

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
