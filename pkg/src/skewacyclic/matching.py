"""Unique perfect matching check through weak acyclicity.

Orient every matched edge to leave both endpoints and every other edge to
enter both.  Cycles of that bidirected graph are exactly the alternating
circuits, and a perfect matching is unique iff none exists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .acyclicity import RegularCircuit, acyclicity_test
from .errors import GraphInputError
from .graph import BidirectedGraph
from .reductions import canonical_preprocess, pull_back_circuit


@dataclass(frozen=True)
class MatchingInstance:
    n: int
    edges: tuple[tuple[int, int], ...]
    M: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "M", frozenset(self.M))


@dataclass(frozen=True)
class Unique:
    pass


@dataclass(frozen=True)
class AlternatingCircuit:
    """Closed node sequence ``nodes[0] .. nodes[k] == nodes[0]`` through ``edges``."""

    nodes: tuple[int, ...]
    edges: tuple[int, ...]

    def other_matching(self, M: frozenset[int]) -> frozenset[int]:
        return M.symmetric_difference(self.edges)


def verify_matching(inst: MatchingInstance) -> list[str]:
    """Definitional perfect matching check; returns the list of problems."""
    problems = []
    for i in sorted(inst.M):
        if not 0 <= i < len(inst.edges):
            problems.append(f"matching names edge {i + 1}, which does not exist")
    if problems:
        return problems
    cover = [0] * inst.n
    for i in inst.M:
        u, v = inst.edges[i]
        cover[u] += 1
        if v != u:
            cover[v] += 1
        else:
            problems.append(f"edge {i + 1} is a loop at node {u}")
    for x, c in enumerate(cover):
        if c == 0:
            problems.append(f"node {x} is not covered")
        elif c > 1:
            problems.append(f"node {x} is covered {c} times")
    return problems


def matching_bidirected(inst: MatchingInstance) -> BidirectedGraph:
    return BidirectedGraph(inst.n, tuple((u, i in inst.M, v, i in inst.M) for i, (u, v) in enumerate(inst.edges)))


def unique_matching(inst: MatchingInstance) -> Unique | AlternatingCircuit:
    for i, (u, v) in enumerate(inst.edges):
        if not (0 <= u < inst.n and 0 <= v < inst.n):
            raise GraphInputError(f"edge {i + 1} has an endpoint outside 1..{inst.n}")
        if u == v:
            raise GraphInputError(f"edge {i + 1} is a loop; loops are not allowed in matching input")
    problems = verify_matching(inst)
    if problems:
        raise GraphInputError("not a perfect matching: " + "; ".join(problems))
    bg = matching_bidirected(inst)
    g, trace, _ = canonical_preprocess(bg)
    verdict = acyclicity_test(g)
    if not isinstance(verdict, RegularCircuit):
        return Unique()
    cycle = pull_back_circuit(g, trace, verdict.walk)
    return AlternatingCircuit(cycle.nodes, cycle.edges)


def alternating_circuit_violation(inst: MatchingInstance, c: AlternatingCircuit) -> str | None:
    """Why ``c`` fails to witness a second perfect matching, or None."""
    k = len(c.edges)
    if k == 0 or k % 2 or len(c.nodes) != k + 1 or c.nodes[0] != c.nodes[-1]:
        return "not a closed walk of even length"
    if len(set(c.nodes[:-1])) != k:
        return "circuit repeats a node"
    for i, e in enumerate(c.edges):
        if not 0 <= e < len(inst.edges) or set(inst.edges[e]) != {c.nodes[i], c.nodes[i + 1]}:
            return f"edge {e} does not join {c.nodes[i]} and {c.nodes[i + 1]}"
        if (e in inst.M) == (c.edges[(i + 1) % k] in inst.M):
            return f"edges {e} and {c.edges[(i + 1) % k]} do not alternate"
    other = c.other_matching(inst.M)
    if other == inst.M or verify_matching(MatchingInstance(inst.n, inst.edges, other)):
        return "symmetric difference is not a different perfect matching"
    return None
