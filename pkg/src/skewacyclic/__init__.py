"""Weak acyclicity testing and decomposition for skew-symmetric and bidirected graphs."""

from .acyclicity import RegularCircuit, WeaklyAcyclic, acyclicity_test
from .buds import Bud, CurrentGraph, TrimRecord
from .certificates import (
    AcyclicBarrier,
    Barrier,
    DecompositionNode,
    StrongAcyclicPartition,
    StrongDecompositionNode,
    StrongSeparator,
    Violation,
    WeakSeparator,
    verify_certificate,
)
from .decomposition import (
    barrier_to_separators,
    check_strong_acyclic,
    component_partition,
    decompose,
    decompose_strong,
    final_barrier,
    find_strong_separator,
    find_weak_separator,
)
from .errors import ContractViolation, GraphInputError
from .graph import BidirectedGraph, BiWalk, SkewGraph, Walk, bidirected_to_skew, mate, skew_to_bidirected
from .matching import AlternatingCircuit, MatchingInstance, Unique, unique_matching, verify_matching
from .reductions import canonical_preprocess, edge_to_node, node_to_edge, pull_back_cycle

__all__ = [
    "AcyclicBarrier",
    "AlternatingCircuit",
    "Barrier",
    "BiWalk",
    "BidirectedGraph",
    "Bud",
    "ContractViolation",
    "CurrentGraph",
    "DecompositionNode",
    "GraphInputError",
    "MatchingInstance",
    "RegularCircuit",
    "SkewGraph",
    "StrongAcyclicPartition",
    "StrongDecompositionNode",
    "StrongSeparator",
    "TrimRecord",
    "Unique",
    "Violation",
    "Walk",
    "WeakSeparator",
    "WeaklyAcyclic",
    "acyclicity_test",
    "barrier_to_separators",
    "bidirected_to_skew",
    "canonical_preprocess",
    "check_strong_acyclic",
    "component_partition",
    "decompose",
    "decompose_strong",
    "edge_to_node",
    "final_barrier",
    "find_strong_separator",
    "find_weak_separator",
    "mate",
    "node_to_edge",
    "pull_back_cycle",
    "skew_to_bidirected",
    "unique_matching",
    "verify_certificate",
    "verify_matching",
]
