"""Dense minor containment for K_t minus s edges, with exhaustive small-graph checks."""
from __future__ import annotations

from ._kernels import BACKEND
from .canonical import canonical_form, is_isomorphic
from .constructions import (
    CockadeSpec,
    GluingStep,
    TriplePattern,
    all_cockades,
    build_cockade,
    complete_minus,
    derive_minimal_alpha2_family,
    enumerate_triple_patterns,
    family_members,
)
from .enumeration import Filter, count_graphs, enumerate_graphs
from .graph import Graph, GraphError, build_graph, complement, contract_edge
from .minors import MinorModel, MinorTarget, SearchBudgetExceeded, find_family_minor, find_minor_of, verify_model
from .reports import VERSION as __version__
from .reports import LemmaReport
from .stats import graph_stats
from .verify import WitnessResult, witness

__all__ = [
    "__version__", "BACKEND", "CockadeSpec", "Filter", "Graph", "GraphError", "GluingStep", "LemmaReport",
    "MinorModel", "MinorTarget", "SearchBudgetExceeded", "TriplePattern", "WitnessResult",
    "all_cockades", "build_cockade", "build_graph", "canonical_form", "complement",
    "complete_minus", "contract_edge", "count_graphs", "derive_minimal_alpha2_family",
    "enumerate_graphs", "enumerate_triple_patterns", "family_members", "find_family_minor",
    "find_minor_of", "graph_stats", "is_isomorphic", "verify_model", "witness",
]
