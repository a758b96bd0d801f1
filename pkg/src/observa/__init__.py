"""Observability of edge-colored directed graphs.

An agent walks a colored digraph and only sees edge colors. The graph is
*observable* if every long enough color word pins the agent to one node, and
*partly observable* if that happens at least once in every window of bounded
length.
"""

from .analysis import (ObservabilityReport, analyze, is_observable,
                       is_partly_aposteriori_observable, is_partly_observable,
                       min_observation_time, min_partial_observation_time)
from .graph import (ColoredDigraph, Digraph, GraphError, ValidationReport,
                    asymptotically_reachable, epsilon_closure, validate)
from .io import ParseError, parse, serialize
from .pairs import PairGraph, build_pair_graph
from .tracker import localization_times, path_count_matrix, step, track

__all__ = [
    "ColoredDigraph", "Digraph", "GraphError", "ValidationReport", "ParseError",
    "ObservabilityReport", "PairGraph",
    "validate", "asymptotically_reachable", "epsilon_closure", "parse", "serialize",
    "step", "track", "path_count_matrix", "localization_times",
    "build_pair_graph", "analyze", "is_observable", "is_partly_observable",
    "is_partly_aposteriori_observable", "min_observation_time",
    "min_partial_observation_time",
]
