"""Linear-time weak acyclicity test for skew-symmetric graphs.

A depth-first search over node pairs with five colors.  When the node being
scanned reaches a gray node, the gray forest path plus that arc is a regular
circuit.  When it reaches an antiblack node ``v``, the forest path from the
scanned node down to ``v'`` and its mate form a bud, which is trimmed in place.
Recursion is replaced by an explicit stack; each frame keeps the list of
base-graph nodes whose outgoing arcs it still has to scan, so trimming just
appends segments to the frame of the new base node.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .buds import Bud, CurrentGraph
from .errors import ContractViolation, GraphInputError
from .graph import SkewGraph, Walk, degree_property_violation, loop_property_violation

WHITE, GRAY, BLACK, ANTIGRAY, ANTIBLACK = 0, 1, 2, 3, 4
COLOR_NAMES = ("white", "gray", "black", "antigray", "antiblack")


@dataclass
class WeaklyAcyclic:
    """No regular circuit exists.

    ``finish`` holds the finish stamp of every node that ended black (-1 for
    others); ``black_order`` lists them by increasing stamp.
    """

    finish: list[int]
    black_order: list[int]
    current: CurrentGraph

    @property
    def trim_history(self):
        return self.current.history


@dataclass
class RegularCircuit:
    walk: Walk


@dataclass
class Traversal:
    """Complete state of one run; kept for decomposition and for invariant checks."""

    graph: SkewGraph
    current: CurrentGraph
    color: bytearray
    forest_arc: list[int]
    finish: list[int]
    black_order: list[int] = field(default_factory=list)
    stack: list[list] = field(default_factory=list)
    circuit: Walk | None = None
    dead_discards: int = 0
    # barrier bookkeeping, filled when traversing for a decomposition
    fragment_of: list[int] | None = None
    hangs_from_base: dict[int, bool] | None = None


def check_preconditions(g: SkewGraph) -> None:
    problem = degree_property_violation(g) or loop_property_violation(g)
    if problem:
        raise GraphInputError(f"input violates the degree/loop precondition: {problem}")


def traverse(g: SkewGraph, *, decompose: bool = False, debug: bool = False, check: bool = True) -> Traversal:
    """Run the colored search; stops at the first regular circuit.

    ``decompose`` records which barrier fragment every absorbed node joins.
    ``debug`` re-verifies the structural invariants after every trimming and
    every finished node (quadratic; for small graphs only).
    """
    if check:
        check_preconditions(g)
    n = g.node_count
    heads, tails, adj = g.heads, g.tails, g.adj
    cg = CurrentGraph(g)
    parent, gbase, garc = cg.parent, cg.group_base, cg.group_arc
    find = cg.find
    color = bytearray(n)
    q = [-1] * n
    finish = [-1] * n
    black_order: list[int] = []
    st = Traversal(g, cg, color, q, finish, black_order)
    if decompose:
        st.fragment_of = [-1] * n
        st.hangs_from_base = {}
    frag = st.fragment_of
    dead = 0

    for k in range(g.pairs):
        root = 2 * k
        if color[root]:
            continue
        if len(adj[root]) > 1:
            root += 1
        color[root] = GRAY
        color[root ^ 1] = ANTIGRAY
        stack = [[root, [root], 0, 0]]
        st.stack = stack
        while stack:
            fr = stack[-1]
            u, segs, si, ai = fr
            ru = u if parent[u] == u else find(u)
            descended = False
            while si < len(segs):
                lst = adj[segs[si]]
                size = len(lst)
                while ai < size:
                    a = lst[ai]
                    ai += 1
                    h = heads[a]
                    r = h if parent[h] == h else find(h)
                    b = gbase[r]
                    if b < 0:
                        v = h
                    elif r == ru:
                        dead += 1
                        continue
                    else:
                        v = b if a == garc[r] else b ^ 1
                    c = color[v]
                    if c == WHITE:
                        q[v] = a
                        color[v] = GRAY
                        color[v ^ 1] = ANTIGRAY
                        fr[2] = si
                        fr[3] = ai
                        stack.append([v, [v], 0, 0])
                        descended = True
                        break
                    if c == GRAY:
                        st.dead_discards = dead
                        st.circuit = _close_circuit(st, u, v, a)
                        return st
                    if c == ANTIBLACK:
                        _trim(st, u, v, a, segs)
                        ru = find(u)
                        if debug:
                            st.dead_discards = dead
                            check_invariants(st)
                if descended:
                    break
                si += 1
                ai = 0
            if descended:
                continue
            color[u] = BLACK
            color[u ^ 1] = ANTIBLACK
            finish[u] = len(black_order)
            black_order.append(u)
            stack.pop()
            if debug:
                st.dead_discards = dead
                check_invariants(st)
    st.dead_discards = dead
    st.stack = []
    return st


def _forest_parent(cg: CurrentGraph, q: list[int], x: int) -> int:
    fa = q[x]
    if fa < 0:
        return -1
    return cg.tail_of(fa)


def _close_circuit(st: Traversal, u: int, v: int, a: int) -> Walk:
    arcs = [a]
    x = u
    while x != v:
        fa = st.forest_arc[x]
        if fa < 0:
            raise ContractViolation(f"gray node {v} is not an ancestor of {u}")
        arcs.append(fa)
        x = st.current.tail_of(fa)
    arcs.reverse()
    return st.current.restore_all(arcs)


def _trim(st: Traversal, u: int, v: int, a: int, segs: list[int]) -> None:
    cg = st.current
    q = st.forest_arc
    w = v ^ 1
    spine: list[int] = []
    path: list[int] = []
    x = w
    while x != u:
        fa = q[x]
        if fa < 0:
            raise ContractViolation(f"antiblack head {v}: {w} is not a descendant of {u}")
        spine.append(fa)
        path.append(x)
        x = cg.tail_of(fa)
    spine.reverse()
    gbase, find = cg.group_base, cg.find
    u_simple = gbase[find(u)] < 0
    frag = st.fragment_of
    for x in path:
        simple = gbase[find(x)] < 0
        if simple:
            # mates of black spine nodes are antiblack and were never scanned
            segs.append(x ^ 1)
        if frag is not None:
            frag[x] = u
            if not simple:
                st.hangs_from_base[x] = cg.tail_of(q[x]) == u
    if frag is not None and u_simple:
        frag[u ^ 1] = u
    members = frozenset(path) | frozenset(y ^ 1 for y in path) | {u, u ^ 1}
    cg.trim(Bud(members, q[u], u, tuple(spine), a))


def acyclicity_test(g: SkewGraph, *, debug: bool = False) -> WeaklyAcyclic | RegularCircuit:
    """Decide weak acyclicity of a graph with the degree and loop properties.

    Returns :class:`RegularCircuit` with a node-simple regular circuit of ``g``
    or :class:`WeaklyAcyclic` carrying finish stamps and the trim history.
    Raises :class:`GraphInputError` when a precondition fails.
    """
    st = traverse(g, debug=debug)
    if st.circuit is not None:
        return RegularCircuit(st.circuit)
    return WeaklyAcyclic(st.finish, st.black_order, st.current)


def check_invariants(st: Traversal) -> None:
    """Assert color symmetry, forest shape, and black-node properties on the explicit current graph."""
    cg, color, q, finish = st.current, st.color, st.forest_arc, st.finish
    nodes = cg.nodes()
    node_set = set(nodes)
    anti = {WHITE: WHITE, GRAY: ANTIGRAY, ANTIGRAY: GRAY, BLACK: ANTIBLACK, ANTIBLACK: BLACK}
    for x in nodes:
        if color[x ^ 1] != anti[color[x]]:
            raise ContractViolation(f"color symmetry broken at {x}: {COLOR_NAMES[color[x]]}/{COLOR_NAMES[color[x ^ 1]]}")
    for a, t, h in cg.live_arcs():
        if color[t] == BLACK:
            if color[h] not in (BLACK, ANTIGRAY):
                raise ContractViolation(f"arc {a} runs from black {t} to {COLOR_NAMES[color[h]]} {h}")
            if color[h] == BLACK and not finish[t] > finish[h]:
                raise ContractViolation(f"finish stamps not reverse-topological on arc {a}")
    gray = {x for x in nodes if color[x] == GRAY}
    stack_nodes = [fr[0] for fr in st.stack]
    if gray != set(stack_nodes):
        raise ContractViolation("gray nodes differ from the search path")
    for i in range(1, len(stack_nodes)):
        if _forest_parent(cg, q, stack_nodes[i]) != stack_nodes[i - 1]:
            raise ContractViolation("search path is not a forest path")
    for x in nodes:
        if color[x] in (GRAY, BLACK):
            if color[x ^ 1] in (GRAY, BLACK):
                raise ContractViolation(f"forest holds both {x} and its mate")
            seen = 0
            y = x
            while True:
                p = _forest_parent(cg, q, y)
                if p < 0:
                    break
                if p not in node_set or color[p] not in (GRAY, BLACK):
                    raise ContractViolation(f"forest parent of {y} left the forest")
                y = p
                seen += 1
                if seen > len(nodes):
                    raise ContractViolation("forest parent pointers form a cycle")
