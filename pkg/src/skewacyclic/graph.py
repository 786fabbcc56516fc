"""Skew-symmetric and bidirected graphs, walks, and the conversions between them.

Node and arc ids of a :class:`SkewGraph` come in mate pairs ``{2k, 2k+1}``, so
the mate of any id is ``x ^ 1``.  Arc ``2i`` is the arc declared by the i-th
arc pair and ``2i + 1`` is its mate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ContractViolation, GraphInputError


def mate(x: int) -> int:
    return x ^ 1


class SkewGraph:
    """Immutable skew-symmetric digraph with outgoing adjacency lists only.

    Parameters
    ----------
    pairs : int
        Number of symmetric node pairs; nodes are ``0 .. 2*pairs - 1``.
    arc_pairs : iterable of (tail, head)
        Each entry declares an arc ``tail -> head`` together with its mate
        ``head^1 -> tail^1``.  Parallel arcs are kept as distinct arcs.
    """

    __slots__ = ("pairs", "tails", "heads", "adj")

    def __init__(self, pairs: int, arc_pairs: Iterable[tuple[int, int]] = ()):
        if pairs < 0:
            raise GraphInputError("negative node-pair count")
        n = 2 * pairs
        tails: list[int] = []
        heads: list[int] = []
        for u, v in arc_pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
            tails.append(u)
            heads.append(v)
            tails.append(v ^ 1)
            heads.append(u ^ 1)
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, u in enumerate(tails):
            adj[u].append(a)
        self.pairs = pairs
        self.tails = tails
        self.heads = heads
        self.adj = adj

    @property
    def node_count(self) -> int:
        return 2 * self.pairs

    @property
    def arc_count(self) -> int:
        return len(self.tails)

    def tail(self, a: int) -> int:
        return self.tails[a]

    def head(self, a: int) -> int:
        return self.heads[a]

    def out_arcs(self, v: int) -> list[int]:
        return self.adj[v]

    def in_arcs(self, v: int) -> list[int]:
        # Incoming arcs of v are the mates of the arcs leaving v'.
        return [a ^ 1 for a in self.adj[v ^ 1]]

    def out_degree(self, v: int) -> int:
        return len(self.adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.adj[v ^ 1])

    def arc_pairs(self) -> list[tuple[int, int]]:
        return [(self.tails[a], self.heads[a]) for a in range(0, len(self.tails), 2)]

    def arcs(self) -> list[tuple[int, int]]:
        return list(zip(self.tails, self.heads))

    def induced(self, nodes: Iterable[int]) -> tuple["SkewGraph", list[int], list[int]]:
        """Induced subgraph on a self-symmetric node set.

        Returns the subgraph together with maps from new node ids and new arc
        ids back to ids of this graph.
        """
        node_set = set(nodes)
        if any((x ^ 1) not in node_set for x in node_set):
            raise ContractViolation("induced() needs a self-symmetric node set")
        pair_ids = sorted({x >> 1 for x in node_set})
        index: dict[int, int] = {}
        for k, p in enumerate(pair_ids):
            index[2 * p] = 2 * k
            index[2 * p + 1] = 2 * k + 1
        new_pairs = []
        arc_back = []
        for a in range(0, len(self.tails), 2):
            u, v = self.tails[a], self.heads[a]
            if u in index and v in index:
                new_pairs.append((index[u], index[v]))
                arc_back.append(a)
                arc_back.append(a + 1)
        node_back = [0] * (2 * len(pair_ids))
        for old, new in index.items():
            node_back[new] = old
        return SkewGraph(len(pair_ids), new_pairs), node_back, arc_back

    def __repr__(self) -> str:
        return f"SkewGraph(pairs={self.pairs}, arc_pairs={self.arc_pairs()!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewGraph):
            return NotImplemented
        return self.pairs == other.pairs and self.tails == other.tails and self.heads == other.heads

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class BidirectedGraph:
    """Bidirected graph; an edge is ``(u, leaves_u, v, leaves_v)``.

    ``leaves_u`` is True when the edge leaves ``u`` at that end and False when
    it enters ``u``.  A directed edge ``u -> v`` is ``(u, True, v, False)``.
    """

    n: int
    edges: tuple[tuple[int, bool, int, bool], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        for i, (u, _, v, _) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphInputError(f"edge {i} ({u}, {v}) has an endpoint outside 0..{self.n - 1}")

    def leaves(self, e: int, at_v_end: bool) -> bool:
        edge = self.edges[e]
        return edge[3] if at_v_end else edge[1]


@dataclass(frozen=True)
class Walk:
    """Walk in a skew graph: ``nodes[i] --arcs[i]--> nodes[i+1]``."""

    nodes: tuple[int, ...]
    arcs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "arcs", tuple(self.arcs))
        if len(self.nodes) != len(self.arcs) + 1:
            raise ContractViolation("walk needs exactly one more node than arcs")

    @property
    def closed(self) -> bool:
        return len(self.arcs) > 0 and self.nodes[0] == self.nodes[-1]

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class BiWalk:
    """Walk in a bidirected graph.

    ``forward[i]`` tells whether ``edges[i]`` is traversed from its ``u`` end
    to its ``v`` end; this matters for loops.  ``cycle`` requests transit
    closure at the start node.
    """

    nodes: tuple[int, ...]
    edges: tuple[int, ...] = ()
    forward: tuple[bool, ...] = ()
    cycle: bool = False

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "forward", tuple(self.forward))
        if len(self.nodes) != len(self.edges) + 1 or len(self.edges) != len(self.forward):
            raise ContractViolation("malformed bidirected walk")

    def reversed(self) -> "BiWalk":
        return BiWalk(self.nodes[::-1], self.edges[::-1], tuple(not f for f in self.forward[::-1]), self.cycle)


@dataclass
class NodeMap:
    """Correspondence between bidirected nodes and skew node pairs.

    ``v1[x]`` is the skew node of pair ``x`` that belongs to the V1 side.
    """

    v1: list[int] = field(default_factory=list)

    def skew_node(self, x: int) -> int:
        return self.v1[x]

    def bidirected_node(self, v: int) -> int:
        return v >> 1

    def in_v1(self, v: int) -> bool:
        return self.v1[v >> 1] == v


# ---------------------------------------------------------------- conversions


def bidirected_to_skew(bg: BidirectedGraph) -> tuple[SkewGraph, NodeMap]:
    """Skew graph with one arc-mate pair per edge; bidirected node x becomes pair ``{2x, 2x+1}``."""
    pairs = []
    for u, lu, v, lv in bg.edges:
        # the arc leaves the V1 copy iff the edge leaves u, and enters the V1 copy iff it enters v
        pairs.append((2 * u + (0 if lu else 1), 2 * v + (1 if lv else 0)))
    return SkewGraph(bg.n, pairs), NodeMap([2 * x for x in range(bg.n)])


def skew_to_bidirected(g: SkewGraph, side_choice: Sequence[int] | None = None) -> BidirectedGraph:
    """Bidirected graph induced by choosing one node of each pair as V1.

    ``side_choice[k]`` is 0 when node ``2k`` is in V1 and 1 when ``2k+1`` is.
    Edge i comes from arc pair i and is oriented from the pair of ``tail(2i)``
    to the pair of ``head(2i)``.
    """
    if side_choice is None:
        side_choice = [0] * g.pairs
    if len(side_choice) != g.pairs:
        raise GraphInputError("side_choice needs one bit per node pair")
    edges = []
    for a in range(0, g.arc_count, 2):
        t, h = g.tails[a], g.heads[a]
        t_in_v1 = (t & 1) == side_choice[t >> 1]
        h_in_v1 = (h & 1) == side_choice[h >> 1]
        edges.append((t >> 1, t_in_v1, h >> 1, not h_in_v1))
    return BidirectedGraph(g.pairs, tuple(edges))


# ---------------------------------------------------------------- walks


def walk_from_arcs(g: SkewGraph, arcs: Sequence[int], start: int | None = None) -> Walk:
    if not arcs:
        if start is None:
            raise ContractViolation("an empty walk needs a start node")
        return Walk((start,), ())
    nodes = [g.tails[arcs[0]]]
    for a in arcs:
        if g.tails[a] != nodes[-1]:
            raise ContractViolation(f"arc {a} does not continue the walk at node {nodes[-1]}")
        nodes.append(g.heads[a])
    return Walk(tuple(nodes), tuple(arcs))


def mate_walk(w: Walk) -> Walk:
    return Walk(tuple(x ^ 1 for x in reversed(w.nodes)), tuple(a ^ 1 for a in reversed(w.arcs)))


def is_walk(g: SkewGraph, w: Walk) -> bool:
    n = g.node_count
    if any(not (0 <= x < n) for x in w.nodes):
        return False
    for i, a in enumerate(w.arcs):
        if not (0 <= a < g.arc_count):
            return False
        if g.tails[a] != w.nodes[i] or g.heads[a] != w.nodes[i + 1]:
            return False
    return True


def is_regular(g: SkewGraph, w: Walk) -> bool:
    """True iff no arc occurs together with its mate (arc-simplicity is the caller's premise)."""
    seen = set(w.arcs)
    return all((a ^ 1) not in seen for a in seen)


def regular_circuit_violation(g: SkewGraph, w: Walk) -> str | None:
    """Reason why ``w`` is not a regular circuit of ``g``, or None."""
    if not w.arcs:
        return "empty walk"
    if not is_walk(g, w):
        return "consecutive elements are not incident"
    if w.nodes[0] != w.nodes[-1]:
        return "walk is not closed"
    if len(set(w.arcs)) != len(w.arcs):
        return "an arc repeats"
    if not is_regular(g, w):
        return "walk uses an arc together with its mate"
    return None


def is_regular_circuit(g: SkewGraph, w: Walk) -> bool:
    return regular_circuit_violation(g, w) is None


def node_simple_subcircuit(g: SkewGraph, arcs: Sequence[int]) -> list[int]:
    """Cut a closed arc sequence down to a node-simple closed sub-walk.

    Any closed sub-walk of a regular arc-simple closed walk is again regular.
    """
    arcs = list(arcs)
    first_seen: dict[int, int] = {}
    stack: list[int] = []
    for a in arcs:
        t = g.tails[a]
        if t in first_seen:
            i = first_seen[t]
            return stack[i:]
        first_seen[t] = len(stack)
        stack.append(a)
    return arcs


def _edge_end_leaves(bg: BidirectedGraph, e: int, forward: bool, departing: bool) -> bool:
    # departing end of a forward traversal is the u end; the arriving end is the v end
    at_v_end = (not departing) if forward else departing
    return bg.leaves(e, at_v_end)


def bi_walk_violation(bg: BidirectedGraph, w: BiWalk) -> str | None:
    """Reason why ``w`` is not a walk (or cycle, if flagged) in ``bg``, or None."""
    for i, e in enumerate(w.edges):
        if not (0 <= e < len(bg.edges)):
            return f"edge {e} out of range"
        u, _, v, _ = bg.edges[e]
        a, b = (u, v) if w.forward[i] else (v, u)
        if w.nodes[i] != a or w.nodes[i + 1] != b:
            return f"edge {e} does not connect nodes {w.nodes[i]} and {w.nodes[i + 1]}"
    k = len(w.edges)
    for i in range(k - 1):
        arrive = _edge_end_leaves(bg, w.edges[i], w.forward[i], departing=False)
        depart = _edge_end_leaves(bg, w.edges[i + 1], w.forward[i + 1], departing=True)
        if arrive == depart:
            return f"edges {w.edges[i]}, {w.edges[i + 1]} are not transit at node {w.nodes[i + 1]}"
    if w.cycle:
        if k == 0 or w.nodes[0] != w.nodes[-1]:
            return "cycle is not closed"
        arrive = _edge_end_leaves(bg, w.edges[-1], w.forward[-1], departing=False)
        depart = _edge_end_leaves(bg, w.edges[0], w.forward[0], departing=True)
        if arrive == depart:
            return f"cycle is not transit at its start node {w.nodes[0]}"
    return None


def project_walk(g: SkewGraph, w: Walk, node_map: NodeMap | None = None) -> BiWalk:
    """Image of a skew walk in the bidirected graph ``skew_to_bidirected(g)``."""
    if not is_walk(g, w):
        raise ContractViolation("project_walk() needs a walk of g")
    nodes = tuple(x >> 1 for x in w.nodes)
    return BiWalk(nodes, tuple(a >> 1 for a in w.arcs), tuple((a & 1) == 0 for a in w.arcs), w.closed)


def lift_walk(g: SkewGraph, bw: BiWalk, node_map: NodeMap | None = None) -> Walk:
    """The unique skew preimage of a bidirected walk.

    The first traversal fixes the lift; an empty walk lifts to the V1 copy of
    its node.
    """
    node_map = node_map or NodeMap([2 * x for x in range(g.pairs)])
    if not bw.edges:
        return Walk((node_map.skew_node(bw.nodes[0]),), ())
    arcs = tuple(2 * e + (0 if f else 1) for e, f in zip(bw.edges, bw.forward))
    nodes = [g.tails[arcs[0]]]
    for a in arcs:
        if g.tails[a] != nodes[-1]:
            raise GraphInputError("bidirected walk violates the transit condition")
        nodes.append(g.heads[a])
    if any((x >> 1) != y for x, y in zip(nodes, bw.nodes)):
        raise GraphInputError("bidirected walk does not match its edges")
    if bw.cycle and nodes[0] != nodes[-1]:
        raise GraphInputError("bidirected cycle is not transit at its start node")
    return Walk(tuple(nodes), arcs)


# ---------------------------------------------------------------- cuts


def delta_in(g: SkewGraph, X: Iterable[int]) -> set[int]:
    X = set(X)
    return {a for a in range(g.arc_count) if g.heads[a] in X and g.tails[a] not in X}


def delta_out(g: SkewGraph, X: Iterable[int]) -> set[int]:
    X = set(X)
    return {a for v in X for a in g.adj[v] if g.heads[a] not in X}


def gamma(g: SkewGraph, X: Iterable[int]) -> set[int]:
    X = set(X)
    return {a for v in X for a in g.adj[v] if g.heads[a] in X}


def degree_property_violation(g: SkewGraph) -> str | None:
    adj = g.adj
    for v in range(g.node_count):
        if len(adj[v]) > 1 and len(adj[v ^ 1]) > 1:
            return f"node {v} has in-degree {g.in_degree(v)} and out-degree {g.out_degree(v)}"
    return None


def loop_property_violation(g: SkewGraph) -> str | None:
    heads, tails = g.heads, g.tails
    for a in range(0, len(tails), 2):
        if heads[a] == tails[a] ^ 1:
            return f"arcs {a} and {a + 1} connect node {tails[a]} to its mate"
    return None
