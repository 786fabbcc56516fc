"""Node/edge acyclicity reductions for bidirected graphs and the preprocessing
pipeline that gives a skew graph the degree and loop properties.

A :class:`ReductionTrace` remembers where every output node and edge came
from, so cycles found downstream can be pulled back to the input graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContractViolation
from .graph import BidirectedGraph, BiWalk, NodeMap, SkewGraph, Walk, bidirected_to_skew, project_walk

NODE_TO_EDGE = "node_to_edge"
EDGE_TO_NODE = "edge_to_node"


@dataclass
class ReductionTrace:
    """Flat back-pointers from output ids to input ids.

    node_origin[x]
        input node an output node copies, or -1 for an edge gadget node.
    edge_origin[e]
        input edge an output edge stands for, or -1 for a node splitter.
    """

    kind: str
    n_in: int
    m_in: int
    node_origin: list[int] = field(default_factory=list)
    edge_origin: list[int] = field(default_factory=list)


@dataclass
class PipelineTrace:
    """Sequence of traces applied in order; pull-back runs them in reverse."""

    stages: list[ReductionTrace]


def node_to_edge(bg: BidirectedGraph) -> tuple[BidirectedGraph, ReductionTrace]:
    """Split every node v into ``v1 = 2v`` and ``v2 = 2v + 1`` joined by a directed edge ``v1 -> v2``.

    Splitter of node v is output edge v; input edge e becomes output edge
    ``n + e`` attached to the copy ``v1`` at ends where e enters and ``v2``
    where it leaves, keeping its direction at each end.
    """
    n = bg.n
    edges: list[tuple[int, bool, int, bool]] = [(2 * v, True, 2 * v + 1, False) for v in range(n)]
    for u, lu, v, lv in bg.edges:
        edges.append((2 * u + (1 if lu else 0), lu, 2 * v + (1 if lv else 0), lv))
    trace = ReductionTrace(
        NODE_TO_EDGE,
        n,
        len(bg.edges),
        node_origin=[x >> 1 for x in range(2 * n)],
        edge_origin=[-1] * n + list(range(len(bg.edges))),
    )
    return BidirectedGraph(2 * n, tuple(edges)), trace


def edge_to_node(bg: BidirectedGraph) -> tuple[BidirectedGraph, ReductionTrace]:
    """Replace every edge e = uv by a gadget node ``w_e = 2n + e`` and four edges.

    Output edges ``4e, 4e+1`` join ``u1, u2`` to ``w_e`` (entering ``w_e``) and
    ``4e+2, 4e+3`` join ``w_e`` to ``v1, v2`` (leaving ``w_e``); the direction
    at each copy matches the direction of e at the original end.
    """
    n = bg.n
    edges: list[tuple[int, bool, int, bool]] = []
    for e, (u, lu, v, lv) in enumerate(bg.edges):
        w = 2 * n + e
        edges.append((2 * u, lu, w, False))
        edges.append((2 * u + 1, lu, w, False))
        edges.append((w, True, 2 * v, lv))
        edges.append((w, True, 2 * v + 1, lv))
    m = len(bg.edges)
    trace = ReductionTrace(
        EDGE_TO_NODE,
        n,
        m,
        node_origin=[x >> 1 for x in range(2 * n)] + [-1] * m,
        edge_origin=[e >> 2 for e in range(4 * m)],
    )
    return BidirectedGraph(2 * n + m, tuple(edges)), trace


def canonical_preprocess(bg: BidirectedGraph) -> tuple[SkewGraph, PipelineTrace, NodeMap]:
    """Edge-to-node, then node-to-edge, then conversion to a skew graph.

    The result satisfies the degree and loop properties and has a regular
    circuit iff ``bg`` has an edge-simple cycle.
    """
    mid, t1 = edge_to_node(bg)
    out, t2 = node_to_edge(mid)
    g, node_map = bidirected_to_skew(out)
    return g, PipelineTrace([t1, t2]), node_map


def _rotate(w: BiWalk, start: int) -> BiWalk:
    k = len(w.edges)
    idx = [(start + i) % k for i in range(k)]
    nodes = [w.nodes[i] for i in idx] + [w.nodes[start]]
    return BiWalk(tuple(nodes), tuple(w.edges[i] for i in idx), tuple(w.forward[i] for i in idx), True)


def _pull_back_node_to_edge(trace: ReductionTrace, w: BiWalk) -> BiWalk:
    k = len(w.edges)
    first = next((i for i in range(k) if trace.edge_origin[w.edges[i]] >= 0), None)
    if first is None:
        raise ContractViolation("cycle uses no transferred edge")
    w = _rotate(w, first)
    nodes: list[int] = []
    edges: list[int] = []
    forward: list[bool] = []
    for i, e in enumerate(w.edges):
        src = trace.edge_origin[e]
        if src < 0:
            continue
        nodes.append(trace.node_origin[w.nodes[i]])
        edges.append(src)
        forward.append(w.forward[i])
    nodes.append(nodes[0])
    return BiWalk(tuple(nodes), tuple(edges), tuple(forward), True)


def _pull_back_edge_to_node(trace: ReductionTrace, w: BiWalk) -> BiWalk:
    k = len(w.edges)
    first = next((i for i in range(k) if trace.node_origin[w.nodes[i]] >= 0), None)
    if first is None:
        raise ContractViolation("cycle visits no copy node")
    w = _rotate(w, first)
    if k % 2:
        raise ContractViolation("cycle does not alternate between copies and gadgets")
    nodes: list[int] = []
    edges: list[int] = []
    forward: list[bool] = []
    for i in range(0, k, 2):
        e_in, e_out = w.edges[i], w.edges[i + 1]
        src = trace.edge_origin[e_in]
        if trace.edge_origin[e_out] != src:
            raise ContractViolation("cycle leaves a gadget through a different edge's gadget")
        # entering the gadget from a u-side copy means traversing e forward
        u_side = (e_in & 3) < 2
        if u_side != w.forward[i]:
            raise ContractViolation("cycle enters a gadget against its orientation")
        nodes.append(trace.node_origin[w.nodes[i]])
        edges.append(src)
        forward.append(u_side)
    nodes.append(nodes[0])
    return BiWalk(tuple(nodes), tuple(edges), tuple(forward), True)


def pull_back_cycle(trace: ReductionTrace | PipelineTrace, w: BiWalk) -> BiWalk:
    """Map a cycle of the reduced graph back to the corresponding input cycle."""
    if isinstance(trace, PipelineTrace):
        for stage in reversed(trace.stages):
            w = pull_back_cycle(stage, w)
        return w
    if not w.edges:
        raise ContractViolation("cannot pull back an empty walk")
    if trace.kind == NODE_TO_EDGE:
        return _pull_back_node_to_edge(trace, w)
    if trace.kind == EDGE_TO_NODE:
        return _pull_back_edge_to_node(trace, w)
    raise ContractViolation(f"unknown reduction kind {trace.kind!r}")


def pull_back_circuit(g: SkewGraph, trace: PipelineTrace, circuit: Walk) -> BiWalk:
    """Regular circuit of a preprocessed skew graph -> edge-simple cycle of the original bidirected graph."""
    return pull_back_cycle(trace, project_walk(g, circuit))
