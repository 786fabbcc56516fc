"""Buds, implicit bud trimming, and regular path restoration.

Trimming never rewrites arcs.  A disjoint-set forest groups the nodes of every
inclusion-wise maximal trimmed bud; each group remembers its base node ``b``
and base arc.  An arc ``a = (x, y)`` of the base graph then runs in the
current graph

* from ``b`` if ``x`` lies in a group with base ``b`` (from ``b'`` when ``a`` is
  that group's antibase arc), else from ``x``;
* to ``b'`` if ``y`` lies in a group with base ``b`` (to ``b`` when ``a`` is the
  group's base arc), else to ``y``;

and it is dead when both ends fall into the same group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ContractViolation
from .graph import SkewGraph, Walk, node_simple_subcircuit, walk_from_arcs


@dataclass
class Bud:
    """Node set of the current graph plus its base arc.

    ``spine``/``trigger`` describe an elementary bud: forest arcs of the path
    from the base node down to ``w`` and the arc from the base node to ``w'``.
    Only elementary buds carry the data needed to restore paths.
    """

    members: frozenset[int]
    base_arc: int
    base_node: int
    spine: tuple[int, ...] | None = None
    trigger: int | None = None

    @classmethod
    def elementary(cls, g: SkewGraph, base_arc: int, spine: Sequence[int], trigger: int) -> "Bud":
        u = g.heads[base_arc]
        path = [u] + [g.heads[f] for f in spine]
        members = frozenset(path) | frozenset(x ^ 1 for x in path)
        return cls(members, base_arc, u, tuple(spine), trigger)


@dataclass
class TrimRecord:
    base_node: int
    base_arc: int
    members: tuple[int, ...]
    spine: tuple[int, ...] | None = None
    trigger: int | None = None
    parent: int = -1  # record whose trimming absorbed this bud
    extends: int = -1  # earlier record at the same base node, if any


class CurrentGraph:
    """The graph after a sequence of trimmings, held implicitly over ``base``."""

    def __init__(self, base: SkewGraph):
        n = base.node_count
        self.base = base
        self.parent = list(range(n))
        self.size = [1] * n
        self.group_base = [-1] * n
        self.group_arc = [-1] * n
        self.group_record = [-1] * n
        self.owner = [-1] * n  # first record that absorbed the node as a non-base member
        self.base_record = [-1] * n  # latest record with the node as its base
        self.history: list[TrimRecord] = []

    # ------------------------------------------------------------ lookups

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def representative(self, x: int) -> int:
        """Current-graph node standing for ``x`` (the base node of its maximal trimmed bud)."""
        b = self.group_base[self.find(x)]
        return x if b < 0 else b

    def is_simple(self, x: int) -> bool:
        return self.group_base[self.find(x)] < 0

    def tail_of(self, a: int) -> int:
        r = self.find(self.base.tails[a])
        b = self.group_base[r]
        if b < 0:
            return self.base.tails[a]
        return b ^ 1 if a == self.group_arc[r] ^ 1 else b

    def head_of(self, a: int) -> int:
        r = self.find(self.base.heads[a])
        b = self.group_base[r]
        if b < 0:
            return self.base.heads[a]
        return b if a == self.group_arc[r] else b ^ 1

    def is_dead(self, a: int) -> bool:
        r = self.find(self.base.tails[a])
        return self.group_base[r] >= 0 and r == self.find(self.base.heads[a])

    def nodes(self) -> list[int]:
        out = []
        for x in range(self.base.node_count):
            b = self.group_base[self.find(x)]
            if b < 0 or x == b or x == b ^ 1:
                out.append(x)
        return out

    def live_arcs(self) -> list[tuple[int, int, int]]:
        """``(arc id, tail, head)`` for every live arc of the current graph."""
        return [(a, self.tail_of(a), self.head_of(a)) for a in range(self.base.arc_count) if not self.is_dead(a)]

    # ------------------------------------------------------------ trimming

    def trim(self, bud: Bud) -> TrimRecord:
        """Contract ``bud``; its members are nodes of the current graph."""
        u = bud.base_node
        if self.head_of(bud.base_arc) != u or u not in bud.members:
            raise ContractViolation("base arc does not enter the bud at its base node")
        k = len(self.history)
        rec = TrimRecord(u, bud.base_arc, tuple(sorted(bud.members)), bud.spine, bud.trigger)
        roots = []
        for x in bud.members:
            r = self.find(x)
            b = self.group_base[r]
            if b < 0:
                if x != u:
                    self.owner[x] = k
                roots.append(r)
            elif x == b:
                j = self.group_record[r]
                self.history[j].parent = k
                if b == u:
                    rec.extends = j
                else:
                    self.owner[b] = k
                roots.append(r)
        root = roots[0]
        for r in roots[1:]:
            root = self._union(root, r)
        self.group_base[root] = u
        self.group_arc[root] = bud.base_arc
        self.group_record[root] = k
        self.base_record[u] = k
        self.history.append(rec)
        return rec

    def _union(self, r1: int, r2: int) -> int:
        if r1 == r2:
            return r1
        if self.size[r1] < self.size[r2]:
            r1, r2 = r2, r1
        self.parent[r2] = r1
        self.size[r1] += self.size[r2]
        return r1

    # ------------------------------------------------------------ restoration

    def container(self, t: int, k: int) -> tuple[int, int]:
        """Node of the graph just before trim ``k`` that holds base-graph node ``t``.

        Returns ``(node, j)`` where ``j`` is the record of the maximal bud the
        node is the base of at that moment, or -1 when ``t`` was simple.
        """
        hist = self.history
        j = self.owner[t]
        if j == -1 or j > k:
            # still a node of the graph at trim k, so the base of bud k
            if t != hist[k].base_node:
                raise ContractViolation(f"node {t} is not inside trimmed bud {k}")
            return t, hist[k].extends
        if j == k:
            # absorbed by trim k itself; as a group base it keeps its latest record
            b = self.base_record[t]
            return t, (b if b >= 0 and hist[b].parent == k else -1)
        while hist[j].parent != k:
            j = hist[j].parent
            if j == -1:
                raise ContractViolation(f"node {t} is not inside trimmed bud {k}")
        return hist[j].base_node, j

    def connector(self, k: int, x: int) -> list[int]:
        """Regular path (arc ids) from the base node of record ``k`` to ``x`` inside the bud."""
        rec = self.history[k]
        if rec.spine is None:
            raise ContractViolation("path restoration needs an elementary bud")
        if x == rec.base_node:
            return []
        spine = rec.spine
        heads = self.base.heads
        for i, f in enumerate(spine):
            if heads[f] == x:
                return list(spine[: i + 1])
        if x == rec.base_node ^ 1:
            j = 0
        else:
            for i, f in enumerate(spine):
                if heads[f] == x ^ 1:
                    j = i + 1
                    break
            else:
                raise ContractViolation(f"node {x} is not a member of bud {k}")
        return [rec.trigger] + [spine[i] ^ 1 for i in range(len(spine) - 1, j - 1, -1)]

    def _head_before(self, c: int, k: int) -> int:
        node, j = self.container(self.base.heads[c], k)
        if j < 0 or c == self.history[j].base_arc:
            return node
        return node ^ 1

    def _tail_before(self, c: int, k: int) -> int:
        node, j = self.container(self.base.tails[c], k)
        if j >= 0 and c == self.history[j].base_arc ^ 1:
            return node ^ 1
        return node

    def _undo(self, k: int, succ: dict, pred: dict) -> None:
        rec = self.history[k]
        a = rec.base_arc
        if a in succ and (a ^ 1) in succ:
            raise ContractViolation("a regular path cannot use both the base and antibase arc")
        if a in succ:
            b = succ[a]
            if b is None:
                return
            x = self._tail_before(b, k)
            q = self.connector(k, x)
            prev = a
            for f in q:
                succ[prev] = f
                pred[f] = prev
                prev = f
            succ[prev] = b
            pred[b] = prev
        elif (a ^ 1) in pred:
            c = pred[a ^ 1]
            if c is None:
                return
            y = self._head_before(c, k)
            q = [f ^ 1 for f in reversed(self.connector(k, y ^ 1))]
            prev = c
            for f in q:
                succ[prev] = f
                pred[f] = prev
                prev = f
            succ[prev] = a ^ 1
            pred[a ^ 1] = prev

    def _restore(self, arcs: Sequence[int], closed: bool, records: Iterable[int]) -> list[int]:
        if not arcs:
            return []
        arcs = list(arcs)
        succ: dict[int, int | None] = {}
        pred: dict[int, int | None] = {}
        for i, a in enumerate(arcs):
            nxt = arcs[(i + 1) % len(arcs)] if closed or i + 1 < len(arcs) else None
            succ[a] = nxt
            if nxt is not None:
                pred[nxt] = a
        if not closed:
            pred[arcs[0]] = None
        for k in records:
            self._undo(k, succ, pred)
        out = []
        a: int | None = arcs[0]
        if not closed:
            while pred[a] is not None:
                a = pred[a]
        start = a
        while a is not None:
            out.append(a)
            a = succ[a]
            if a == start:
                break
        return out

    def restore_path(self, k: int, arcs: Sequence[int], closed: bool = False) -> list[int]:
        """Preimage of a regular path/circuit across the single trimming ``k``."""
        return self._restore(arcs, closed, [k])

    def restore_all(self, circuit_arcs: Sequence[int]) -> Walk:
        """Regular circuit of the current graph -> node-simple regular circuit of the base graph."""
        arcs = self._restore(circuit_arcs, True, range(len(self.history) - 1, -1, -1))
        arcs = node_simple_subcircuit(self.base, arcs)
        return walk_from_arcs(self.base, arcs)
