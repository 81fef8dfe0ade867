"""Effective resistances, low-conductance sweep cuts, and recursive
decomposition of weighted graphs into blocks of bounded resistance diameter.
"""

__version__ = "0.1.0"

from .errors import (ConvergenceError, DegeneratePotentialError,
                     DisconnectedGraphError, InfiniteResistanceError)
from .graph import (CutStats, WeightedGraph, build_graph, connected_components,
                    cut_stats, induced_subgraph, is_connected, scale_weights)
from .generators import (barbell, complete, generate, grid2d, hypercube,
                         random_regular)
from .edgelist import (EdgeListFormatError, format_edgelist, parse_edgelist,
                       read_edgelist, write_edgelist)
from .linalg import (PotentialVector, SolverOptions, assemble_laplacian,
                     exact_reff, exact_reff_matrix, exact_resistance_diameter,
                     implied_potential_accuracy, lambda2_lower_bound,
                     required_solver_accuracy, solve_laplacian,
                     solve_laplacian_many, st_potential)
from .sketch import SketchConfig, approx_reff_from_source, furthest_pair
from .sweep import CutResult, SweepEntry, find_sparse_cut, sweep_level_sets
from .decompose import (BlockResistance, DecompositionConfig,
                        DecompositionReport, Partition, VerificationRecord,
                        partition, partition_with_config, prune_low_degree,
                        verify_partition)

__all__ = [
    "ConvergenceError", "DegeneratePotentialError", "DisconnectedGraphError",
    "InfiniteResistanceError",
    "CutStats", "WeightedGraph", "build_graph", "connected_components",
    "cut_stats", "induced_subgraph", "is_connected", "scale_weights",
    "barbell", "complete", "generate", "grid2d", "hypercube", "random_regular",
    "EdgeListFormatError", "format_edgelist", "parse_edgelist",
    "read_edgelist", "write_edgelist",
    "PotentialVector", "SolverOptions", "assemble_laplacian", "exact_reff",
    "exact_reff_matrix", "exact_resistance_diameter",
    "implied_potential_accuracy", "lambda2_lower_bound",
    "required_solver_accuracy", "solve_laplacian", "solve_laplacian_many",
    "st_potential",
    "SketchConfig", "approx_reff_from_source", "furthest_pair",
    "CutResult", "SweepEntry", "find_sparse_cut", "sweep_level_sets",
    "BlockResistance", "DecompositionConfig", "DecompositionReport",
    "Partition", "VerificationRecord", "partition", "partition_with_config",
    "prune_low_degree", "verify_partition",
]
