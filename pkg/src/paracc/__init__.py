"""Derandomized color coding for parameterized graph problems."""
from .cluster import (
    ClusterSolution,
    EditSet,
    cluster_editing,
    cluster_editing_free_l,
    many_cluster_editing,
    multipartite_cluster_editing,
    p_partite_editing,
)
from .coloring import Coloring, CoverageReport, FamilyParams, family_params, family_size, get_coloring, threshold, verify_family
from .cover import CoverWitness, Kernel, buss_kernel, exact_partial_vertex_cover, partial_vertex_cover, vertex_cover
from .cut import CutWitness, cut_at_most, cut_connected
from .embed import Embedding, distance, embed, k_path, matching
from .errors import DecompositionError, GraphParseError, GuardError, ParaccError, ParameterError
from .graph import Graph, PatternSpec, TreeDecomposition, build_pattern, parse_graph, serialize_graph
from .local import BallsWitness, scattered_balls
from .packing import pack, pack_cycles, pack_forest, pack_paths

__version__ = "0.1.0"
