"""Actuator placement keeping a structured linear system controllable
after any single state-to-state edge failure."""

from .controllability import (
    ControllabilityError,
    ControllabilityVerdict,
    InputConfiguration,
    dedicated_input_configuration,
    dilation_free,
    is_structurally_controllable,
)
from .graph import (
    BipartiteGraph,
    Digraph,
    Matching,
    SccDag,
    bipartite_of,
    build_digraph,
    maximum_matching,
    reachable_from,
    scc_dag,
)
from .resilience import (
    CriticalEdgeReport,
    CriticalSet,
    critical_edge_scan,
    critical_sets,
    edge_controllability_index,
    failure_witness,
    is_k_edge_controllable,
    verify_single_edge_resilience,
)
from .synthesis import (
    SynthesisResult,
    add_edges,
    augment_vertex,
    collect_witnesses,
    cover_additional_roots,
    decompose,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "ControllabilityError",
    "ControllabilityVerdict",
    "CriticalEdgeReport",
    "CriticalSet",
    "Digraph",
    "InputConfiguration",
    "Matching",
    "SccDag",
    "SynthesisResult",
    "add_edges",
    "augment_vertex",
    "bipartite_of",
    "build_digraph",
    "collect_witnesses",
    "cover_additional_roots",
    "critical_edge_scan",
    "critical_sets",
    "decompose",
    "dedicated_input_configuration",
    "dilation_free",
    "edge_controllability_index",
    "failure_witness",
    "is_k_edge_controllable",
    "is_structurally_controllable",
    "maximum_matching",
    "reachable_from",
    "scc_dag",
    "synthesize",
    "verify_single_edge_resilience",
]
