"""Brute-force ground truth, explicit trimming, fixtures and instance generators.

Everything here is exponential or quadratic on purpose and meant for small
graphs only.  Generators are deterministic per seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .buds import Bud
from .certificates import DecompositionNode
from .errors import ContractViolation, GraphInputError
from .graph import BidirectedGraph, BiWalk, SkewGraph, Walk, walk_from_arcs

DEFAULT_CAP = 24


# ---------------------------------------------------------------- fixtures


@dataclass
class Fixture:
    graph: SkewGraph
    names: dict[str, int]

    def __getitem__(self, name: str) -> int:
        return self.names[name]


def _named(letters: str) -> dict[str, int]:
    names = {}
    for k, ch in enumerate(letters):
        names[ch] = 2 * k
        names[ch + "'"] = 2 * k + 1
    return names


def fixture_f1() -> Fixture:
    """Two strongly acyclic blocks joined by the single mate pair a'->b, b'->a."""
    n = _named("axby")
    arcs = [("a", "x"), ("x", "a'"), ("b", "y"), ("y", "b'"), ("a'", "b")]
    return Fixture(SkewGraph(4, [(n[u], n[v]) for u, v in arcs]), n)


def fixture_f2() -> Fixture:
    n = _named("ax")
    return Fixture(SkewGraph(2, [(n["a"], n["x"]), (n["x"], n["a'"])]), n)


def fixture_f3() -> Fixture:
    n = _named("uw")
    return Fixture(SkewGraph(2, [(n["u"], n["w"]), (n["w"], n["u"])]), n)


def fixture_f4() -> Fixture:
    n = _named("svw")
    return Fixture(SkewGraph(3, [(n["s"], n["v"]), (n["v"], n["w"]), (n["w"], n["v'"])]), n)


# ---------------------------------------------------------------- brute-force searches


def _check_cap(g: SkewGraph, cap: int | None) -> None:
    if cap is not None and g.arc_count > cap:
        raise ContractViolation(f"graph has {g.arc_count} arcs, oracle cap is {cap}")


def brute_regular_circuit(g: SkewGraph, cap: int | None = DEFAULT_CAP) -> Walk | None:
    """Some regular circuit of ``g``, or None.

    Only node-simple circuits starting at their smallest node are enumerated;
    this loses nothing because every regular circuit contains a node-simple
    closed sub-walk, which is regular too.
    """
    _check_cap(g, cap)
    heads, adj = g.heads, g.adj
    for s in range(g.node_count):
        used = [False] * (g.arc_count >> 1)
        on_path = [False] * g.node_count
        on_path[s] = True
        path: list[int] = []
        stack = [iter(adj[s])]
        while stack:
            for a in stack[-1]:
                h = heads[a]
                if used[a >> 1] or h < s:
                    continue
                if h == s:
                    return walk_from_arcs(g, path + [a])
                if on_path[h]:
                    continue
                used[a >> 1] = True
                on_path[h] = True
                path.append(a)
                stack.append(iter(adj[h]))
                break
            else:
                stack.pop()
                if path:
                    a = path.pop()
                    used[a >> 1] = False
                    on_path[heads[a]] = False
    return None


def _regular_paths_from(g: SkewGraph, s: int, allowed: set[int] | None):
    """Yield (node, arc list) for every node-simple regular path from ``s``."""
    heads, adj = g.heads, g.adj
    used: set[int] = set()
    on_path = {s}
    path: list[int] = []
    yield s, path
    stack = [iter(adj[s])]
    while stack:
        for a in stack[-1]:
            h = heads[a]
            if (a >> 1) in used or h in on_path or (allowed is not None and h not in allowed):
                continue
            used.add(a >> 1)
            on_path.add(h)
            path.append(a)
            yield h, path
            stack.append(iter(adj[h]))
            break
        else:
            stack.pop()
            if path:
                a = path.pop()
                used.discard(a >> 1)
                on_path.discard(heads[a])


def brute_regular_path(g: SkewGraph, s: int, t: int, within: Iterable[int] | None = None, cap: int | None = DEFAULT_CAP) -> Walk | None:
    """Some regular s-t path (inside ``G[within]`` if given), or None.

    Node-simple paths suffice: cutting a closed piece out of a regular walk
    leaves a regular walk between the same ends.
    """
    _check_cap(g, cap)
    allowed = None if within is None else set(within)
    for x, path in _regular_paths_from(g, s, allowed):
        if x == t:
            return walk_from_arcs(g, list(path), start=s)
    return None


def brute_regular_reachable(g: SkewGraph, s: int, within: Iterable[int] | None = None) -> set[int]:
    allowed = None if within is None else set(within)
    return {x for x, _ in _regular_paths_from(g, s, allowed)}


def brute_bidirected_cycle(bg: BidirectedGraph, node_simple: bool = False) -> BiWalk | None:
    """Edge-simple (or node-simple) cycle of a bidirected graph, by exhaustive search.

    A node-simple cycle visits ``k`` distinct nodes ``v_0 .. v_{k-1}``; a loop
    that enters and leaves its node is a node-simple cycle of length one.
    """
    inc: list[list[tuple[int, bool]]] = [[] for _ in range(bg.n)]
    for e, (u, _, v, _) in enumerate(bg.edges):
        inc[u].append((e, True))
        inc[v].append((e, False))

    def ends(e: int, fwd: bool) -> tuple[bool, int, bool]:
        u, lu, v, lv = bg.edges[e]
        return (lu, v, lv) if fwd else (lv, u, lu)

    for s in range(bg.n):
        for e0, f0 in inc[s]:
            dep0, x, arr = ends(e0, f0)
            if node_simple and x < s:
                continue
            nodes, edges, fwd = [s, x], [e0], [f0]
            arrivals = [arr]
            used = {e0}
            stack = [iter(inc[x])]
            while stack:
                for e, f in stack[-1]:
                    dep, y, arr2 = ends(e, f)
                    if e in used or dep == arrivals[-1]:
                        continue
                    if nodes[-1] == s and len(edges) > 0 and node_simple:
                        continue
                    if y == s and arr2 != dep0:
                        return BiWalk(tuple(nodes + [s]), tuple(edges + [e]), tuple(fwd + [f]), True)
                    if node_simple and (y <= s or y in nodes):
                        continue
                    used.add(e)
                    nodes.append(y)
                    edges.append(e)
                    fwd.append(f)
                    arrivals.append(arr2)
                    stack.append(iter(inc[y]))
                    break
                else:
                    stack.pop()
                    if stack:
                        used.discard(edges.pop())
                        fwd.pop()
                        nodes.pop()
                        arrivals.pop()
            if x == s and arr != dep0:
                return BiWalk((s, s), (e0,), (f0,), True)
    return None


# ---------------------------------------------------------------- explicit trimming


def explicit_trim(g: SkewGraph, bud: Bud, check: bool = True) -> tuple[SkewGraph, list[int]]:
    """Literal rebuild of ``G/bud`` over the same node ids.

    Interior nodes stay behind as isolated nodes.  Returns the new graph and
    the map from its arc ids to arc ids of ``g``.
    """
    if check:
        from .certificates import bud_violation

        problem = bud_violation(g, bud)
        if problem:
            raise ContractViolation(f"not a bud: {problem}")
    V = bud.members
    v = bud.base_node
    pairs = []
    back = []
    for a in range(0, g.arc_count, 2):
        t, h = g.tails[a], g.heads[a]
        if t in V and h in V:
            continue
        if t in V:
            t = v ^ 1 if a == bud.base_arc ^ 1 else v
        if h in V:
            h = v if a == bud.base_arc else v ^ 1
        pairs.append((t, h))
        back.extend((a, a + 1))
    return SkewGraph(g.pairs, pairs), back


def explicit_live_arcs(g: SkewGraph, buds: list[Bud]) -> set[tuple[int, int, int]]:
    """Apply ``explicit_trim`` in sequence and report ``(original arc, tail, head)`` of surviving arcs.

    Each bud is given in node ids of the current graph at its turn, exactly as
    ``CurrentGraph.trim`` receives it.
    """
    cur = g
    back = list(range(g.arc_count))
    for bud in buds:
        arc = back.index(bud.base_arc)
        cur, b2 = explicit_trim(cur, Bud(bud.members, arc, bud.base_node), check=False)
        back = [back[a] for a in b2]
    return {(back[a], cur.tails[a], cur.heads[a]) for a in range(cur.arc_count)}


# ---------------------------------------------------------------- perfect matchings


def perfect_matchings(n: int, edges: list[tuple[int, int]], limit: int | None = None) -> list[frozenset[int]]:
    """Enumerate perfect matchings as sets of edge indices (stops after ``limit``)."""
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        if u != v:
            inc[u].append((i, v))
            inc[v].append((i, u))
    out: list[frozenset[int]] = []
    covered = [False] * n
    chosen: list[int] = []

    def rec() -> bool:
        try:
            x = covered.index(False)
        except ValueError:
            out.append(frozenset(chosen))
            return limit is not None and len(out) >= limit
        covered[x] = True
        for i, y in inc[x]:
            if not covered[y]:
                covered[y] = True
                chosen.append(i)
                if rec():
                    return True
                chosen.pop()
                covered[y] = False
        covered[x] = False
        return False

    if n % 2 == 0:
        rec()
    return out


# ---------------------------------------------------------------- generators

KINDS = ("random-bidirected", "strongly-acyclic", "weakly-acyclic-composed", "strongly-connected-weakly-acyclic")


@dataclass
class GenSpec:
    kind: str
    pairs: int
    arcs: int
    seed: int = 0
    leaf_pairs: int = 2  # composed kinds: pieces this small become strongly acyclic leaves
    leaf_chance: float = 0.2  # chance to stop splitting earlier


@dataclass
class Generated:
    """A generated instance; composed kinds also carry the tree they were built from."""

    graph: SkewGraph | BidirectedGraph
    tree: DecompositionNode | None = None


def random_bidirected(n: int, m: int, rng: random.Random) -> BidirectedGraph:
    edges = tuple((rng.randrange(n), rng.random() < 0.5, rng.randrange(n), rng.random() < 0.5) for _ in range(m))
    return BidirectedGraph(n, edges)


def split_nodes(g: SkewGraph) -> tuple[SkewGraph, list[int], list[int]]:
    """Split every node into an in-copy and an out-copy joined by an arc.

    The result has the degree property.  Returns the graph, the in-copy and
    out-copy of each original node.  Regular circuits of the result map to
    regular circuits of ``g``, so weak acyclicity carries over.
    """
    p = g.pairs
    x_in = [0] * (2 * p)
    x_out = [0] * (2 * p)
    for k in range(p):
        x_in[2 * k], x_out[2 * k + 1] = 4 * k, 4 * k + 1
        x_out[2 * k], x_in[2 * k + 1] = 4 * k + 2, 4 * k + 3
    arcs = [(x_in[2 * k], x_out[2 * k]) for k in range(p)]
    arcs += [(x_out[g.tails[a]], x_in[g.heads[a]]) for a in range(0, g.arc_count, 2)]
    return SkewGraph(2 * p, arcs), x_in, x_out


def _map_tree(t: DecompositionNode, x_in: list[int], x_out: list[int], arc_shift: int) -> DecompositionNode:
    if t.is_leaf:
        return DecompositionNode([y for z in t.Z for y in (x_in[z], x_out[z])])
    return DecompositionNode(
        [y for z in t.Z for y in (x_in[z], x_out[z])],
        t.crossing + arc_shift,
        _map_tree(t.left, x_in, x_out, arc_shift),
        _map_tree(t.right, x_in, x_out, arc_shift),
    )


class _Builder:
    """Accumulates arc pairs on a growing node-pair set without duplicates or mate loops."""

    def __init__(self):
        self.pairs = 0
        self.arcs: list[tuple[int, int]] = []
        self.keys: dict[tuple[int, int], int] = {}

    def new_pairs(self, k: int) -> list[int]:
        first = self.pairs
        self.pairs += k
        return list(range(first, self.pairs))

    def add(self, u: int, v: int) -> int | None:
        """Arc id of ``u -> v`` (existing or new); None for loops and arcs to the mate."""
        if v == u ^ 1 or u == v:
            return None
        if (u, v) in self.keys:
            return self.keys[(u, v)]
        if (v ^ 1, u ^ 1) in self.keys:
            return self.keys[(v ^ 1, u ^ 1)] ^ 1
        self.keys[(u, v)] = 2 * len(self.arcs)
        self.arcs.append((u, v))
        return 2 * (len(self.arcs) - 1)


def _strong_block(
    b: _Builder, pairs: list[int], extra: int, rng: random.Random, entry: bool, double: bool = False
) -> tuple[list[int], int | None]:
    """Strongly acyclic block over ``pairs``; returns its Z part and a special node.

    With ``entry`` that node makes the block entry-connected.  With ``double``
    it is a node reaching its own mate inside the block (None for one pair).
    """
    nodes = [2 * p + rng.randrange(2) for p in pairs]
    labels: dict[int, int] = {}
    values = rng.sample(range(1, 2 * len(nodes) + 1), len(nodes))
    for x, val in zip(nodes, values):
        labels[x] = val
        labels[x ^ 1] = -val
    every = list(labels)
    a = None
    if entry:
        ranked = sorted(every, key=labels.get)
        a = ranked[0]
        for i in range(1, len(ranked)):
            y = ranked[i]
            if y == a ^ 1:
                continue
            # some lower node other than y' exists since a sits below y
            x = y ^ 1
            while x == y ^ 1:
                x = ranked[rng.randrange(i)]
            b.add(x, y)
    if double and len(nodes) > 1:
        # the lowest label has the largest magnitude, so x -> y -> x' respects it
        a = min(every, key=labels.get)
        y = rng.choice([y for y in nodes if y not in (a, a ^ 1)])
        b.add(a, y)
        b.add(y, a ^ 1)
    target = len(b.arcs) + extra
    for _ in range(4 * extra if len(every) > 2 else 0):
        if len(b.arcs) >= target:
            break
        x, y = rng.sample(every, 2)
        if labels[x] > labels[y]:
            x, y = y, x
        b.add(x, y)
    return [x for x in every if labels[x] > 0], a


def _composed(
    b: _Builder, n_pairs: int, arc_budget: int, rng: random.Random, spec: GenSpec
) -> tuple[DecompositionNode, list[int], int | None]:
    """Weakly acyclic piece built bottom-up from the converse of the separator theorem.

    Also returns a node ``d`` reaching ``d'`` inside the piece, when one was
    planted.  Crossings of the form ``d_A' -> d_B`` close cycles, which keeps
    most instances away from the strongly acyclic case.
    """
    if n_pairs <= max(2, spec.leaf_pairs) or rng.random() < spec.leaf_chance:
        pairs = b.new_pairs(n_pairs)
        z, d = _strong_block(b, pairs, arc_budget, rng, entry=False, double=rng.random() < 0.8)
        return DecompositionNode(sorted(z)), [x for p in pairs for x in (2 * p, 2 * p + 1)], d
    z_pairs = rng.randint(0, max(0, (n_pairs - 2) // 3))
    rest = n_pairs - z_pairs
    z_budget = max(z_pairs, arc_budget * z_pairs // n_pairs)
    inner = max(0, arc_budget - z_budget)
    # roughly balanced cuts keep leaves large enough to absorb their arc budget
    left_pairs = rng.randint(max(1, rest // 4), max(1, rest - rest // 4 - 1))
    left, A, dA = _composed(b, left_pairs, inner * left_pairs // rest, rng, spec)
    right, B, dB = _composed(b, rest - left_pairs, inner * (rest - left_pairs) // rest, rng, spec)
    crossing = None
    if dA is not None and dB is not None and rng.random() < 0.8:
        crossing = b.add(dA ^ 1, dB)
    while crossing is None:
        crossing = b.add(rng.choice(A), rng.choice(B))
    Z = [2 * p + rng.randrange(2) for p in b.new_pairs(z_pairs)]
    rng.shuffle(Z)
    inside = A + B
    base = len(inside)
    # every z gets an in-arc; the rest of the budget lands on random z
    targets = list(range(z_pairs)) + [rng.randrange(z_pairs) for _ in range(z_budget - z_pairs)]
    for i in targets:
        z = Z[i]
        for _ in range(4):
            # sources: anything inside, earlier Z nodes, or any Z' node
            r = rng.randrange(base + i + z_pairs)
            src = inside[r] if r < base else (Z[r - base] if r < base + i else Z[r - base - i] ^ 1)
            before = len(b.arcs)
            if b.add(src, z) is not None and len(b.arcs) > before:
                break
    node = DecompositionNode(sorted(Z), crossing, left, right)
    return node, inside + Z + [x ^ 1 for x in Z], dA if dA is not None else dB


def _aconnected(b: _Builder, n_pairs: int, arc_budget: int, rng: random.Random) -> tuple[int, list[int]]:
    """Weakly acyclic piece that is entry-connected from its returned entry node."""
    if n_pairs <= 3 or rng.random() < 0.3:
        pairs = b.new_pairs(n_pairs)
        _, a = _strong_block(b, pairs, arc_budget, rng, entry=True)
        return a, [x for p in pairs for x in (2 * p, 2 * p + 1)]
    nodes, _ = _strongly_connected(b, n_pairs, arc_budget, rng)
    return rng.choice(nodes), nodes


def _strongly_connected(b: _Builder, n_pairs: int, arc_budget: int, rng: random.Random) -> tuple[list[int], int]:
    left_pairs = rng.randint(2, n_pairs - 2) if n_pairs >= 4 else 2
    a, A = _aconnected(b, left_pairs, arc_budget * left_pairs // n_pairs, rng)
    bb, B = _aconnected(b, max(2, n_pairs - left_pairs), arc_budget * (n_pairs - left_pairs) // n_pairs, rng)
    crossing = b.add(a ^ 1, bb)
    if crossing is None:
        raise ContractViolation("entry nodes of fresh blocks cannot already be joined")
    return A + B, crossing


def generate(spec: GenSpec) -> Generated:
    """Deterministic instance of the requested kind.

    Skew kinds are passed through :func:`split_nodes`, so node and arc counts
    of the result are about twice the budget.
    """
    if spec.kind not in KINDS:
        raise GraphInputError(f"unknown generator kind {spec.kind!r}; choose from {', '.join(KINDS)}")
    if spec.pairs < 1 or spec.arcs < 0:
        raise GraphInputError("generator budgets must be positive")
    rng = random.Random(spec.seed)
    if spec.kind == "random-bidirected":
        return Generated(random_bidirected(spec.pairs, spec.arcs, rng))
    b = _Builder()
    tree = None
    if spec.kind == "strongly-acyclic":
        z, _ = _strong_block(b, b.new_pairs(spec.pairs), spec.arcs, rng, entry=False)
        tree = DecompositionNode(sorted(z))
    elif spec.kind == "weakly-acyclic-composed":
        tree, _, _ = _composed(b, spec.pairs, spec.arcs, rng, spec)
    else:
        if spec.pairs < 4:
            raise GraphInputError("strongly connected instances need at least 4 node pairs")
        _strongly_connected(b, spec.pairs, spec.arcs, rng)
    g = SkewGraph(b.pairs, b.arcs)
    split, x_in, x_out = split_nodes(g)
    if tree is not None:
        tree = _map_tree(tree, x_in, x_out, 2 * g.pairs)
    return Generated(split, tree)
