"""Weak and strong acyclic decompositions.

``decompose`` runs the acyclicity traversal while recording, for every base
node of a trimmed bud, which nodes joined its barrier fragment.  Afterwards
the fragments are turned into decomposition trees in increasing finish order
of their base nodes, so every child bud's tree exists before it is grafted.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .acyclicity import RegularCircuit, acyclicity_test, traverse
from .buds import Bud
from .certificates import (
    AcyclicBarrier,
    Barrier,
    DecompositionNode,
    StrongAcyclicPartition,
    StrongDecompositionNode,
    StrongSeparator,
    WeakSeparator,
    a_connected,
    verify_acyclic_barrier,
)
from .errors import ContractViolation
from .graph import SkewGraph, Walk, walk_from_arcs


# ---------------------------------------------------------------- strong acyclicity


def topological_order(g: SkewGraph) -> list[int] | None:
    """Kahn order of all nodes (smallest id first among ready nodes), or None if ``g`` has a cycle."""
    n = g.node_count
    heads, adj = g.heads, g.adj
    indeg = [len(adj[v ^ 1]) for v in range(n)]
    ready = deque(v for v in range(n) if indeg[v] == 0)
    order = []
    push, pop = ready.append, ready.popleft
    while ready:
        v = pop()
        order.append(v)
        for a in adj[v]:
            h = heads[a]
            indeg[h] -= 1
            if not indeg[h]:
                push(h)
    return order if len(order) == n else None


def antisymmetric_labels(order: Sequence[int]) -> dict[int, int]:
    """``pi(x) - pi(x')`` for the 1-based positions ``pi`` in ``order``."""
    pos = {x: i + 1 for i, x in enumerate(order)}
    return {x: pos[x] - pos[x ^ 1] for x in order}


def partition_from_order(order: Sequence[int]) -> StrongAcyclicPartition:
    labels = antisymmetric_labels(order)
    return StrongAcyclicPartition(frozenset(x for x, lab in labels.items() if lab > 0))


def check_strong_acyclic(g: SkewGraph) -> StrongAcyclicPartition | Walk:
    """Strong acyclic partition from a topological labeling, or a directed cycle."""
    order = topological_order(g)
    if order is None:
        from .certificates import find_cycle

        return walk_from_arcs(g, find_cycle(g, range(g.node_count)))
    return partition_from_order(order)


# ---------------------------------------------------------------- tree assembly


def _leaf(z: list[int]) -> DecompositionNode:
    return DecompositionNode(z)


def _merge_disjoint(x: DecompositionNode, y: DecompositionNode, leftmost: dict[int, DecompositionNode]) -> DecompositionNode:
    """Combine trees over node sets with no arc between them: ``x`` replaces ``y``'s leftmost leaf."""
    lx, ly = leftmost[id(x)], leftmost[id(y)]
    big, small = (lx.Z, ly.Z) if len(lx.Z) >= len(ly.Z) else (ly.Z, lx.Z)
    big.extend(small)
    if ly is y:
        lx.Z = big
        return x
    if lx is x:
        ly.Z = big
        return y
    lx.Z = big
    ly.Z, ly.crossing, ly.left, ly.right = x.Z, x.crossing, x.left, x.right
    leftmost[id(y)] = lx
    return y


def _assemble(
    items: Iterable[int],
    subtree: dict[int, DecompositionNode],
    base_arc: dict[int, int],
    separated: dict[int, bool],
    leftmost: dict[int, DecompositionNode],
) -> DecompositionNode | None:
    """Fold a topologically ordered W sequence into one tree.

    ``items`` mixes plain nodes (going into Z parts) and bud bases (keys of
    ``subtree``).  A bud whose base arc leaves an earlier plain node becomes
    the B side of a new separator; a bud attached elsewhere shares no arc with
    what was built so far and is merged in.
    """
    tree: DecompositionNode | None = None
    for x in items:
        t = subtree.get(x)
        if t is None:
            if tree is None:
                tree = _leaf([x])
                leftmost[id(tree)] = tree
            else:
                tree.Z.append(x)
        elif tree is None:
            tree = t
        elif separated[x]:
            node = DecompositionNode([], base_arc[x], tree, t)
            leftmost[id(node)] = leftmost[id(tree)]
            tree = node
        else:
            tree = _merge_disjoint(tree, t, leftmost)
    return tree


@dataclass
class _Fragments:
    order: dict[int, list[int]]  # base node -> absorbed black nodes, decreasing finish
    top: list[int]  # final black nodes of the current graph, decreasing finish


def _collect(st) -> _Fragments:
    frag = st.fragment_of
    order: dict[int, list[int]] = {}
    top: list[int] = []
    for x in reversed(st.black_order):
        u = frag[x]
        if u >= 0:
            order.setdefault(u, []).append(x)
        else:
            top.append(x)
    return _Fragments(order, top)


def decompose(g: SkewGraph) -> DecompositionNode | RegularCircuit:
    """Weak acyclic decomposition tree in linear time, or a regular circuit.

    Strongly acyclic inputs are not special-cased: a full topological pass
    would cost as much as the traversal, and the tree it builds is valid too.
    """
    st = traverse(g, decompose=True)
    if st.circuit is not None:
        return RegularCircuit(st.circuit)
    return _build_tree(g, st)


def _build_tree(g: SkewGraph, st) -> DecompositionNode:
    cg = st.current
    q = st.forest_arc
    parts = _collect(st)
    bases = {rec.base_node for rec in cg.history}
    subtree: dict[int, DecompositionNode] = {}
    leftmost: dict[int, DecompositionNode] = {}
    base_arc = {u: q[u] for u in bases}
    separated = {c: not hang for c, hang in st.hangs_from_base.items()}
    for u in st.black_order:
        if u not in bases:
            continue
        items = parts.order.get(u, [])
        items.append(u ^ 1)
        t = _assemble(items, subtree, base_arc, separated, leftmost)
        subtree[u] = t
    for c in parts.top:
        if c in bases:
            separated[c] = True
    tree = _assemble(parts.top, subtree, base_arc, separated, leftmost)
    return tree if tree is not None else _leaf([])


def barrier_to_separators(
    ab: AcyclicBarrier, sub: dict[int, DecompositionNode], g: SkewGraph | None = None
) -> DecompositionNode:
    """Decomposition of ``G`` from an acyclic barrier with empty M and trees for every bud (keyed by base node).

    The W order is trusted unless ``g`` is given, in which case the barrier is
    verified first.
    """
    bar = ab.barrier
    if bar.M:
        raise ContractViolation("barrier has a nonempty M part")
    if g is not None:
        problems = verify_acyclic_barrier(g, ab)
        if problems:
            raise ContractViolation(f"not an acyclic barrier: {problems[0]}")
    base_arc = {b.base_node: b.base_arc for b in bar.buds}
    if set(sub) != set(base_arc):
        raise ContractViolation("need exactly one subtree per bud")
    separated = dict.fromkeys(base_arc, True)
    leftmost: dict[int, DecompositionNode] = {}
    for t in sub.values():
        leaf = t
        while leaf.left is not None:
            leaf = leaf.left
        leftmost[id(t)] = leaf
    tree = _assemble(ab.order, dict(sub), base_arc, separated, leftmost)
    return tree if tree is not None else _leaf([])


def final_barrier(g: SkewGraph) -> AcyclicBarrier | RegularCircuit:
    """The acyclic barrier left by the traversal: final black simple nodes and maximal trimmed buds."""
    st = traverse(g)
    if st.circuit is not None:
        return RegularCircuit(st.circuit)
    cg = st.current
    groups: dict[int, list[int]] = {}
    for x in range(g.node_count):
        r = cg.find(x)
        if cg.group_base[r] >= 0:
            groups.setdefault(cg.group_base[r], []).append(x)
    order = [x for x in reversed(st.black_order) if cg.representative(x) == x]
    S = frozenset(x for x in order if x not in groups)
    buds = [Bud(frozenset(groups[b]), st.forest_arc[b], b) for b in order if b in groups]
    return AcyclicBarrier(Barrier(S, frozenset(), buds), order)


def find_weak_separator(g: SkewGraph) -> WeakSeparator | StrongAcyclicPartition | RegularCircuit:
    """Root of a weak decomposition; a strongly acyclic input gets its partition directly."""
    order = topological_order(g)
    if order is not None:
        return partition_from_order(order)
    tree = decompose(g)
    if isinstance(tree, RegularCircuit):
        return tree
    if tree.is_leaf:
        return StrongAcyclicPartition(frozenset(tree.Z))
    return WeakSeparator(frozenset(tree.left.node_set()), frozenset(tree.right.node_set()), frozenset(tree.Z), tree.crossing)


# ---------------------------------------------------------------- components


def strongly_connected_components(g: SkewGraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components come out sinks first."""
    n = g.node_count
    index = [-1] * n
    low = [0] * n
    on = bytearray(n)
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    heads, adj = g.heads, g.adj
    for s in range(n):
        if index[s] >= 0:
            continue
        index[s] = low[s] = counter
        counter += 1
        stack.append(s)
        on[s] = 1
        work = [(s, 0)]
        while work:
            v, i = work[-1]
            lst = adj[v]
            if i < len(lst):
                work[-1] = (v, i + 1)
                w = heads[lst[i]]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on[w] = 1
                    work.append((w, 0))
                elif on[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                p = work[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on[w] = 0
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def strongly_connected(g: SkewGraph, nodes: Iterable[int]) -> bool:
    P = set(nodes)
    if not P:
        return True
    s = min(P)
    return _reaches_all(g, s, P) and _reached_by_all(g, s, P)


def _reaches_all(g: SkewGraph, s: int, P: set[int]) -> bool:
    seen = {s}
    todo = [s]
    while todo:
        x = todo.pop()
        for a in g.adj[x]:
            h = g.heads[a]
            if h in P and h not in seen:
                seen.add(h)
                todo.append(h)
    return seen == P


def _reached_by_all(g: SkewGraph, s: int, P: set[int]) -> bool:
    seen = {s}
    todo = [s]
    while todo:
        x = todo.pop()
        for a in g.in_arcs(x):
            t = g.tails[a]
            if t in P and t not in seen:
                seen.add(t)
                todo.append(t)
    return seen == P


@dataclass
class ComponentPartition:
    """``Z`` plus the self-symmetric strongly connected components, in topological order."""

    Z: frozenset[int]
    components: list[frozenset[int]]


def component_partition(g: SkewGraph) -> ComponentPartition | RegularCircuit:
    comps = strongly_connected_components(g)
    comps.reverse()  # topological order of the condensation
    comp_of = [0] * g.node_count
    for i, c in enumerate(comps):
        for x in c:
            comp_of[x] = i
    Z = []
    selfsym = []
    for i, c in enumerate(comps):
        j = comp_of[c[0] ^ 1]
        if j == i:
            selfsym.append(frozenset(c))
            continue
        x = c[0]
        if len(c) > 1 or any(g.heads[a] == x for a in g.adj[x]):
            from .certificates import find_cycle

            arcs = find_cycle(g, c)
            return RegularCircuit(walk_from_arcs(g, arcs))
        if i - j > 0:
            Z.append(x)
    return ComponentPartition(frozenset(Z), selfsym)


def find_strong_separator(g: SkewGraph) -> StrongSeparator:
    """Strong separator of a strongly connected weakly acyclic graph (root of ``decompose``)."""
    tree = decompose(g)
    if isinstance(tree, RegularCircuit):
        raise ContractViolation(f"graph is not weakly acyclic: regular circuit through arcs {list(tree.walk.arcs)}")
    if tree.is_leaf:
        raise ContractViolation("graph is strongly acyclic, so it is not strongly connected")
    if tree.Z:
        raise ContractViolation(f"separator has nonempty Z (node {min(tree.Z)}), so the graph is not strongly connected")
    c = tree.crossing
    A = frozenset(tree.left.node_set())
    B = frozenset(tree.right.node_set())
    a, b = g.heads[c ^ 1], g.heads[c]
    for part, e in ((A, a), (B, b)):
        bad = a_connected(g, part, e)
        if bad is not None:
            raise ContractViolation(f"node {bad} does not lie on an {e}-{e ^ 1} path inside its side")
    return StrongSeparator(A, B, c, a, b)


def decompose_strong(g: SkewGraph) -> StrongDecompositionNode | RegularCircuit:
    """Strong acyclic decomposition: component partitions alternating with strong separators."""
    verdict = acyclicity_test(g)
    if isinstance(verdict, RegularCircuit):
        return verdict
    root = StrongDecompositionNode(frozenset(range(g.node_count)), frozenset())
    todo = [root]
    while todo:
        node = todo.pop()
        sub, node_back, arc_back = g.induced(sorted(node.X))
        cp = component_partition(sub)
        if isinstance(cp, RegularCircuit):
            raise ContractViolation("component partition found a regular circuit in a weakly acyclic graph")
        node.Z = frozenset(node_back[z] for z in cp.Z)
        for comp in cp.components:
            members = sorted(node_back[x] for x in comp)
            csub, cback, carc = g.induced(members)
            sep = find_strong_separator(csub)
            mapped = StrongSeparator(
                frozenset(cback[x] for x in sep.A),
                frozenset(cback[x] for x in sep.B),
                carc[sep.crossing],
                cback[sep.a],
                cback[sep.b],
            )
            left = StrongDecompositionNode(mapped.A, frozenset())
            right = StrongDecompositionNode(mapped.B, frozenset())
            node.components.append(frozenset(members))
            node.splits.append(mapped)
            node.children.append((left, right))
            todo.append(left)
            todo.append(right)
    return root
