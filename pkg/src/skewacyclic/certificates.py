"""Acyclicity certificates and their clause-by-clause verifiers.

Every check can be restricted to an induced subgraph ``G[X]`` by passing
``within=X``; tree verifiers use this to check each tree node against the
node set of its subtree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .buds import Bud
from .graph import SkewGraph


@dataclass(frozen=True)
class Violation:
    clause: str
    detail: str

    def __str__(self) -> str:
        return f"{self.clause}: {self.detail}"


@dataclass
class StrongAcyclicPartition:
    """``Z`` with ``V = Z + Z'``, both halves acyclic and no arc from ``Z`` to ``Z'``."""

    Z: frozenset[int]


@dataclass
class WeakSeparator:
    """Partition ``A + B + Z + Z'``; ``crossing`` is the arc of the single crossing pair that runs from A to B."""

    A: frozenset[int]
    B: frozenset[int]
    Z: frozenset[int]
    crossing: int


@dataclass
class StrongSeparator:
    A: frozenset[int]
    B: frozenset[int]
    crossing: int  # the arc a' -> b
    a: int
    b: int


@dataclass
class Barrier:
    S: frozenset[int]
    M: frozenset[int]
    buds: list[Bud]
    s: int | None = None


@dataclass
class AcyclicBarrier:
    """A barrier plus a topological order of ``W`` (``S`` and the bud bases) in the trimmed graph."""

    barrier: Barrier
    order: list[int]


@dataclass
class DecompositionNode:
    """Node of a weak acyclic decomposition; leaves have no children and ``crossing == -1``."""

    Z: list[int]
    crossing: int = -1
    left: "DecompositionNode | None" = None
    right: "DecompositionNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def iter_nodes(self) -> Iterator["DecompositionNode"]:
        todo = [self]
        while todo:
            t = todo.pop()
            yield t
            if t.left is not None:
                todo.append(t.right)
                todo.append(t.left)

    def node_set(self) -> set[int]:
        out: set[int] = set()
        for t in self.iter_nodes():
            out.update(t.Z)
            out.update(z ^ 1 for z in t.Z)
        return out

    def size(self) -> int:
        return sum(1 for _ in self.iter_nodes())


@dataclass
class StrongDecompositionNode:
    """One level of a strong decomposition over node set ``X``.

    ``Z`` and the self-symmetric strongly connected ``components`` partition
    ``X`` together with ``Z'``.  ``splits[i]`` is the strong separator of
    ``components[i]`` and ``children[i]`` holds the subtrees of its two sides.
    """

    X: frozenset[int]
    Z: frozenset[int]
    components: list[frozenset[int]] = field(default_factory=list)
    splits: list[StrongSeparator] = field(default_factory=list)
    children: list[tuple["StrongDecompositionNode", "StrongDecompositionNode"]] = field(default_factory=list)

    def iter_nodes(self) -> Iterator["StrongDecompositionNode"]:
        todo = [self]
        while todo:
            t = todo.pop()
            yield t
            for x, y in reversed(t.children):
                todo.append(y)
                todo.append(x)


# ---------------------------------------------------------------- helpers


def _out(g: SkewGraph, x: int, X: set[int] | None) -> Iterator[tuple[int, int]]:
    for a in g.adj[x]:
        h = g.heads[a]
        if X is None or h in X:
            yield a, h


def _all_nodes(g: SkewGraph, within: Iterable[int] | None) -> set[int]:
    return set(range(g.node_count)) if within is None else set(within)


def find_cycle(g: SkewGraph, nodes: Iterable[int]) -> list[int] | None:
    """Arc ids of a directed cycle inside ``G[nodes]``, or None if it is acyclic."""
    X = set(nodes)
    done: set[int] = set()
    for s in sorted(X):
        if s in done:
            continue
        pos = {s: 0}
        stack = [(s, iter(_out(g, s, X)))]
        via: list[int] = []
        while stack:
            x, it = stack[-1]
            for a, h in it:
                if h in pos:
                    return via[pos[h]:] + [a]
                if h not in done:
                    pos[h] = len(stack)
                    via.append(a)
                    stack.append((h, iter(_out(g, h, X))))
                    break
            else:
                stack.pop()
                del pos[x]
                done.add(x)
                if via:
                    via.pop()
    return None


def _self_symmetric(name: str, S: set[int]) -> Violation | None:
    for x in S:
        if x ^ 1 not in S:
            return Violation(f"{name} self-symmetric", f"node {x} in {name}, mate {x ^ 1} is not")
    return None


def _partition(X: set[int], parts: dict[str, set[int]]) -> list[Violation]:
    out = []
    seen: dict[int, str] = {}
    for name, P in parts.items():
        for x in P:
            if x not in X:
                out.append(Violation("partition", f"node {x} of {name} lies outside the node set"))
                return out
            if x in seen:
                out.append(Violation("partition", f"node {x} lies in both {seen[x]} and {name}"))
                return out
            seen[x] = name
    if len(seen) != len(X):
        x = min(X - seen.keys())
        out.append(Violation("partition", f"node {x} is not covered"))
    return out


def _acyclic_clause(g: SkewGraph, Z: set[int], name: str) -> list[Violation]:
    cyc = find_cycle(g, Z)
    if cyc is not None:
        return [Violation(f"G[{name}] acyclic", f"cycle through arcs {cyc}")]
    return []


def _crossing_arcs(g: SkewGraph, A: set[int], B: set[int]) -> list[int]:
    out = []
    for x in A:
        for a, h in _out(g, x, B):
            out.append(a)
    for x in B:
        for a, h in _out(g, x, A):
            out.append(a)
    return sorted(out)


def _weakly_acyclic(g: SkewGraph, part: set[int], name: str) -> list[Violation]:
    from .acyclicity import RegularCircuit, acyclicity_test

    sub, node_back, arc_back = g.induced(sorted(part))
    verdict = acyclicity_test(sub)
    if isinstance(verdict, RegularCircuit):
        arcs = [arc_back[a] for a in verdict.walk.arcs]
        return [Violation(f"G[{name}] weakly acyclic", f"regular circuit through arcs {arcs}")]
    return []


# ---------------------------------------------------------------- verifiers


def verify_strong_acyclic(g: SkewGraph, cert: StrongAcyclicPartition, within: Iterable[int] | None = None) -> list[Violation]:
    X = _all_nodes(g, within)
    Z = set(cert.Z)
    Zm = {z ^ 1 for z in Z}
    out = _partition(X, {"Z": Z, "Z'": Zm})
    if out:
        return out
    for x in Z:
        for a, h in _out(g, x, Zm):
            return [Violation("no arc from Z to Z'", f"arc {a}: {x} -> {h}")]
    return _acyclic_clause(g, Z, "Z")


def verify_weak_separator(
    g: SkewGraph, cert: WeakSeparator, within: Iterable[int] | None = None, deep: bool = False
) -> list[Violation]:
    X = _all_nodes(g, within)
    A, B, Z = set(cert.A), set(cert.B), set(cert.Z)
    Zm = {z ^ 1 for z in Z}
    out = _partition(X, {"A": A, "B": B, "Z": Z, "Z'": Zm})
    for name, P in (("A", A), ("B", B)):
        if not P:
            out.append(Violation(f"{name} nonempty", f"{name} is empty"))
        v = _self_symmetric(name, P)
        if v:
            out.append(v)
    if out:
        return out
    cross = _crossing_arcs(g, A, B)
    pairs = sorted({a >> 1 for a in cross})
    if len(pairs) != 1 or len(cross) != 2:
        extra = [p for p in pairs if p != cert.crossing >> 1]
        return [Violation("exactly one crossing pair", f"second crossing pair {extra or pairs}" if pairs else "no arc joins A and B")]
    if pairs[0] != cert.crossing >> 1:
        return [Violation("exactly one crossing pair", f"crossing pair is {pairs[0]}, certificate names {cert.crossing >> 1}")]
    for x in Z:
        for a, h in _out(g, x, X):
            if h not in Z:
                return [Violation("no arc leaves Z", f"arc {a}: {x} -> {h}")]
    out = _acyclic_clause(g, Z, "Z")
    if deep and not out:
        out = _weakly_acyclic(g, A, "A") + _weakly_acyclic(g, B, "B")
    return out


def a_connected(g: SkewGraph, part: Iterable[int], a: int) -> int | None:
    """First node of ``G[part]`` that is not both reachable from ``a`` and able to reach ``a'``; None if connected."""
    P = set(part)
    if a not in P:
        return a
    fwd = _reach(g, a, P, forward=True)
    back = _reach(g, a ^ 1, P, forward=False)
    for x in sorted(P):
        if x not in fwd or x not in back:
            return x
    return None


def _reach(g: SkewGraph, s: int, P: set[int], forward: bool) -> set[int]:
    seen = {s}
    todo = deque([s])
    while todo:
        x = todo.popleft()
        if forward:
            nxt = (g.heads[a] for a in g.adj[x])
        else:
            nxt = (g.tails[a] for a in g.in_arcs(x))
        for y in nxt:
            if y in P and y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def verify_strong_separator(
    g: SkewGraph, cert: StrongSeparator, within: Iterable[int] | None = None, deep: bool = False
) -> list[Violation]:
    X = _all_nodes(g, within)
    A, B = set(cert.A), set(cert.B)
    out = _partition(X, {"A": A, "B": B})
    for name, P in (("A", A), ("B", B)):
        if not P:
            out.append(Violation(f"{name} nonempty", f"{name} is empty"))
        v = _self_symmetric(name, P)
        if v:
            out.append(v)
    if out:
        return out
    cross = _crossing_arcs(g, A, B)
    pairs = sorted({a >> 1 for a in cross})
    if len(pairs) != 1 or len(cross) != 2:
        return [Violation("exactly one crossing pair", f"crossing pairs {pairs}")]
    c = cert.crossing
    if c >> 1 != pairs[0] or g.tails[c] not in A:
        return [Violation("exactly one crossing pair", f"certificate names arc {c}, expected an A->B arc of pair {pairs[0]}")]
    if cert.b != g.heads[c] or cert.a != g.heads[c ^ 1]:
        return [Violation("entry nodes", f"entries must be a={g.heads[c ^ 1]}, b={g.heads[c]}")]
    for name, P, e in (("A", A, cert.a), ("B", B, cert.b)):
        bad = a_connected(g, P, e)
        if bad is not None:
            out.append(Violation(f"G[{name}] {e}-connected", f"node {bad} is not on an {e}-{e ^ 1} path"))
    if deep and not out:
        out = _weakly_acyclic(g, A, "A") + _weakly_acyclic(g, B, "B")
    return out


def bud_violation(g: SkewGraph, bud: Bud, within: set[int] | None = None) -> Violation | None:
    """Definitional bud check: self-symmetric, entered by its base arc, reachable from the base node by regular paths."""
    from .oracle import brute_regular_reachable

    V = set(bud.members)
    v = _self_symmetric("bud", V)
    if v:
        return v
    a = bud.base_arc
    if g.heads[a] != bud.base_node or bud.base_node not in V or g.tails[a] in V:
        return Violation("bud base arc", f"arc {a} does not enter the bud at {bud.base_node}")
    reach = brute_regular_reachable(g, bud.base_node, V)
    missing = sorted(V - reach)
    if missing:
        return Violation("bud reachability", f"node {missing[0]} not regularly reachable from {bud.base_node}")
    return None


def verify_barrier(g: SkewGraph, cert: Barrier, within: Iterable[int] | None = None) -> list[Violation]:
    X = _all_nodes(g, within)
    S, M = set(cert.S), set(cert.M)
    Sm = {x ^ 1 for x in S}
    parts: dict[str, set[int]] = {"S": S, "S'": Sm, "M": M}
    where: dict[int, int] = {}
    for i, bud in enumerate(cert.buds):
        parts[f"V{i}"] = set(bud.members)
        for x in bud.members:
            where[x] = i
    out = _partition(X, parts)
    if cert.s is not None and cert.s not in S:
        out.append(Violation("s in S", f"node {cert.s} is not in S"))
    if out:
        return out
    for i, bud in enumerate(cert.buds):
        v = _self_symmetric(f"V{i}", set(bud.members))
        if v:
            return [v]
        if g.heads[bud.base_arc] != bud.base_node or bud.base_node not in bud.members:
            return [Violation("bud base arc", f"arc {bud.base_arc} does not end at base node {bud.base_node}")]
    for x in X:
        for a, h in _out(g, x, X):
            if x in S:
                if h in Sm or h in M:
                    return [Violation("S->S'∪M arc", f"arc {a}: {x} -> {h}")]
                if h in where and a != cert.buds[where[h]].base_arc:
                    return [Violation("only the base arc goes from S to a bud", f"arc {a}: {x} -> {h}")]
            if x in where and h in where and where[x] != where[h]:
                return [Violation("no arc between distinct buds", f"arc {a}: {x} -> {h}")]
            if (x in where and h in M) or (x in M and h in where):
                return [Violation("no arc between a bud and M", f"arc {a}: {x} -> {h}")]
    for i, bud in enumerate(cert.buds):
        if g.tails[bud.base_arc] not in S:
            return [Violation("only the base arc goes from S to a bud", f"base arc {bud.base_arc} of V{i} does not leave S")]
    return []


def trimmed_endpoints(g: SkewGraph, buds: list[Bud]) -> tuple[list[int], list[int]]:
    """Tail and head of every arc in ``G`` after contracting ``buds`` (-1 for arcs inside a bud)."""
    rep = list(range(g.node_count))
    group = [-1] * g.node_count
    for i, bud in enumerate(buds):
        for x in bud.members:
            rep[x] = bud.base_node
            group[x] = i
    tails, heads = [], []
    for a in range(g.arc_count):
        t, h = g.tails[a], g.heads[a]
        gt, gh = group[t], group[h]
        if gt >= 0 and gt == gh:
            tails.append(-1)
            heads.append(-1)
            continue
        tails.append(t if gt < 0 else (rep[t] ^ 1 if a == buds[gt].base_arc ^ 1 else rep[t]))
        heads.append(h if gh < 0 else (rep[h] if a == buds[gh].base_arc else rep[h] ^ 1))
    return tails, heads


def verify_acyclic_barrier(g: SkewGraph, cert: AcyclicBarrier, within: Iterable[int] | None = None, deep: bool = False) -> list[Violation]:
    out = verify_barrier(g, cert.barrier, within)
    if out:
        return out
    bar = cert.barrier
    W = set(bar.S) | {b.base_node for b in bar.buds}
    if set(cert.order) != W or len(cert.order) != len(W):
        return [Violation("W order", "order is not a permutation of S and the bud bases")]
    pos = {w: i for i, w in enumerate(cert.order)}
    tails, heads = trimmed_endpoints(g, bar.buds)
    X = _all_nodes(g, within)
    for a in range(g.arc_count):
        t, h = tails[a], heads[a]
        if t in pos and h in pos and g.tails[a] in X and g.heads[a] in X and pos[t] >= pos[h]:
            return [Violation("trimmed G[W] acyclic", f"arc {a} runs backwards in the order: {t} -> {h}")]
    if deep:
        if bar.M:
            out += _weakly_acyclic(g, set(bar.M), "M")
        for i, bud in enumerate(bar.buds):
            out += _weakly_acyclic(g, set(bud.members), f"V{i}")
    return out


def verify_weak_decomposition(g: SkewGraph, root: DecompositionNode, within: Iterable[int] | None = None) -> list[Violation]:
    """Check every internal node as a weak separator and every leaf as a strong acyclic partition."""
    X = _all_nodes(g, within)
    sets: dict[int, set[int]] = {}
    order = list(root.iter_nodes())
    for t in reversed(order):
        s = set(t.Z) | {z ^ 1 for z in t.Z}
        if not t.is_leaf:
            s |= sets[id(t.left)]
            s |= sets[id(t.right)]
        sets[id(t)] = s
    if sets[id(root)] != X:
        return [Violation("root covers the node set", "tree nodes do not reproduce the node set")]
    for depth_path, t in enumerate(order):
        Xt = sets[id(t)]
        if t.is_leaf:
            res = verify_strong_acyclic(g, StrongAcyclicPartition(frozenset(t.Z)), Xt)
        else:
            sep = WeakSeparator(frozenset(sets[id(t.left)]), frozenset(sets[id(t.right)]), frozenset(t.Z), t.crossing)
            res = verify_weak_separator(g, sep, Xt)
        if res:
            kind = "leaf" if t.is_leaf else "separator"
            return [Violation(f"tree {kind} #{depth_path}: {v.clause}", v.detail) for v in res]
    return []


def verify_strong_decomposition(g: SkewGraph, root: StrongDecompositionNode, within: Iterable[int] | None = None) -> list[Violation]:
    """Per-node checks: Z/components partition, component conditions, separators, children sides."""
    from .decomposition import strongly_connected

    X = _all_nodes(g, within)
    if set(root.X) != X:
        return [Violation("root covers the node set", "root node set differs from the graph")]
    for idx, t in enumerate(root.iter_nodes()):
        Xt = set(t.X)
        Z = set(t.Z)
        Zm = {z ^ 1 for z in Z}
        parts: dict[str, set[int]] = {"Z": Z, "Z'": Zm}
        comp_of: dict[int, int] = {}
        for i, c in enumerate(t.components):
            parts[f"B{i}"] = set(c)
            for x in c:
                comp_of[x] = i
        res = _partition(Xt, parts)
        for i, c in enumerate(t.components):
            v = _self_symmetric(f"B{i}", set(c))
            if v:
                res.append(v)
            elif not strongly_connected(g, c):
                res.append(Violation(f"B{i} strongly connected", "component is not strongly connected"))
        if not res:
            for x in Z:
                for a, h in _out(g, x, Xt):
                    if h not in Z:
                        res.append(Violation("no arc leaves Z", f"arc {a}: {x} -> {h}"))
                        break
                if res:
                    break
        if not res:
            res = _acyclic_clause(g, Z, "Z")
        if not res:
            for x in comp_of:
                for a, h in _out(g, x, Xt):
                    if h in comp_of and comp_of[h] != comp_of[x]:
                        res.append(Violation("no arc between distinct components", f"arc {a}: {x} -> {h}"))
                        break
                if res:
                    break
        if not res and len(t.splits) != len(t.components):
            res.append(Violation("one separator per component", f"{len(t.splits)} separators for {len(t.components)} components"))
        if not res:
            for i, (c, sep) in enumerate(zip(t.components, t.splits)):
                res = verify_strong_separator(g, sep, c)
                if res:
                    break
                kids = t.children[i]
                if set(kids[0].X) != set(sep.A) or set(kids[1].X) != set(sep.B):
                    res = [Violation("children are the separator sides", f"component B{i}")]
                    break
        if res:
            return [Violation(f"strong node #{idx}: {v.clause}", v.detail) for v in res]
    return []


def verify_certificate(g: SkewGraph, cert, within: Iterable[int] | None = None, deep: bool = False) -> list[Violation]:
    """Dispatch on certificate type.  An empty list means the certificate is valid.

    With ``deep`` the weak acyclicity of separator sides and barrier parts is
    also confirmed by running the acyclicity test on them.
    """
    from .acyclicity import RegularCircuit
    from .graph import regular_circuit_violation

    if isinstance(cert, RegularCircuit):
        problem = regular_circuit_violation(g, cert.walk)
        return [Violation("regular circuit", problem)] if problem else []
    if isinstance(cert, StrongAcyclicPartition):
        return verify_strong_acyclic(g, cert, within)
    if isinstance(cert, WeakSeparator):
        return verify_weak_separator(g, cert, within, deep)
    if isinstance(cert, StrongSeparator):
        return verify_strong_separator(g, cert, within, deep)
    if isinstance(cert, AcyclicBarrier):
        return verify_acyclic_barrier(g, cert, within, deep)
    if isinstance(cert, Barrier):
        return verify_barrier(g, cert, within)
    if isinstance(cert, DecompositionNode):
        return verify_weak_decomposition(g, cert, within)
    if isinstance(cert, StrongDecompositionNode):
        return verify_strong_decomposition(g, cert, within)
    raise TypeError(f"not a certificate: {type(cert).__name__}")
