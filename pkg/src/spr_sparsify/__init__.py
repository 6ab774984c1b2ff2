"""Hammock decompositions, scattering partitions and SPR minors for series-parallel graphs."""

from .bfs import RootedBfsTree, build_bfs_tree, lca
from .generate import GeneratorConfig, generate_series_parallel
from .graph import (
    GraphError,
    Path,
    WeightedGraph,
    distance,
    expand_unit_weights,
    induced_subgraph,
    shortest_path,
)
from .recognition import ClawedCycle, SeriesParallel, check_clawed_cycle, is_series_parallel
from .chops import FuzzyChop, delta_chop, recursive_chops, verify_fuzzy, weak_diameter
from .hammocks import HammockDecomposition, build_hammock_decomposition, hammock_pipeline
from .hammock_verify import verify_hammock_decomposition
from .scattering import scattering_chop, scattering_partition, verify_scattering
from .ears import nested_ear_decomposition, verify_ear_decomposition
from .spr import SprInstance, SprMinor, distortion, verify_minor, voronoi_spr_minor
from .report import Report, StructuredFailure

__all__ = [
    "ClawedCycle",
    "FuzzyChop",
    "GeneratorConfig",
    "GraphError",
    "HammockDecomposition",
    "Path",
    "Report",
    "RootedBfsTree",
    "SeriesParallel",
    "SprInstance",
    "SprMinor",
    "StructuredFailure",
    "WeightedGraph",
    "build_bfs_tree",
    "build_hammock_decomposition",
    "check_clawed_cycle",
    "delta_chop",
    "distance",
    "distortion",
    "expand_unit_weights",
    "generate_series_parallel",
    "hammock_pipeline",
    "induced_subgraph",
    "is_series_parallel",
    "lca",
    "nested_ear_decomposition",
    "recursive_chops",
    "scattering_chop",
    "scattering_partition",
    "shortest_path",
    "verify_ear_decomposition",
    "verify_fuzzy",
    "verify_hammock_decomposition",
    "verify_minor",
    "verify_scattering",
    "voronoi_spr_minor",
    "weak_diameter",
]
