"""Text graph formats (.ssg, .bdg, .mug) and JSON certificates.

File node ids are 1-based.  In a skew file with ``p`` pairs, node ``v <= p``
is mated with ``v + p``; internally file node ``v`` is ``2(v-1)`` and
``v + p`` is ``2(v-1) + 1``.  Certificate arcs are signed: ``+i`` is the arc
declared on the i-th arc line and ``-i`` its mate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .acyclicity import RegularCircuit
from .buds import Bud
from .certificates import (
    AcyclicBarrier,
    Barrier,
    DecompositionNode,
    StrongAcyclicPartition,
    StrongDecompositionNode,
    StrongSeparator,
    WeakSeparator,
)
from .errors import ContractViolation, GraphInputError
from .graph import BidirectedGraph, SkewGraph, walk_from_arcs
from .matching import AlternatingCircuit, MatchingInstance

# ---------------------------------------------------------------- parsing


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphInputError(f"line {no}: {what} must be an integer, got {tok!r}") from None


def _header(rows, kind: str, fields: int) -> tuple[int, list[int]]:
    try:
        no, toks = next(rows)
    except StopIteration:
        raise GraphInputError(f"line 1: empty file, expected header '{kind} ...'") from None
    if toks[0] != kind or len(toks) != fields + 1:
        raise GraphInputError(f"line {no}: expected header '{kind}' with {fields} numbers, got {' '.join(toks)!r}")
    vals = [_int(t, no, "header field") for t in toks[1:]]
    if any(v < 0 for v in vals):
        raise GraphInputError(f"line {no}: header counts must be nonnegative")
    return no, vals


def detect_format(text: str) -> str:
    for _, toks in _lines(text):
        return toks[0]
    return ""


def parse_ssg(text: str) -> SkewGraph:
    rows = _lines(text)
    no, (p, q) = _header(rows, "ssg", 2)
    arcs = []
    for no, toks in rows:
        if toks[0] != "a" or len(toks) != 3:
            raise GraphInputError(f"line {no}: expected 'a <u> <v>'")
        u, v = (_int(t, no, "node id") for t in toks[1:])
        for x in (u, v):
            if not 1 <= x <= 2 * p:
                raise GraphInputError(f"line {no}: node {x} outside 1..{2 * p}")
        arcs.append((ssg_node(u, p), ssg_node(v, p)))
    if len(arcs) != q:
        raise GraphInputError(f"line {no}: header declares {q} arc lines, found {len(arcs)}")
    return SkewGraph(p, arcs)


def ssg_node(v: int, p: int) -> int:
    return 2 * (v - 1) if v <= p else 2 * (v - p - 1) + 1


def file_node(x: int, p: int) -> int:
    return (x >> 1) + 1 + (p if x & 1 else 0)


def write_ssg(g: SkewGraph) -> str:
    p = g.pairs
    out = [f"ssg {p} {g.arc_count // 2}"]
    for u, v in g.arc_pairs():
        out.append(f"a {file_node(u, p)} {file_node(v, p)}")
    return "\n".join(out) + "\n"


_DIR = {"+": True, "-": False}


def parse_bdg(text: str) -> BidirectedGraph:
    rows = _lines(text)
    no, (n, m) = _header(rows, "bdg", 2)
    edges = []
    for no, toks in rows:
        if toks[0] != "e" or len(toks) != 5 or toks[2] not in _DIR or toks[4] not in _DIR:
            raise GraphInputError(f"line {no}: expected 'e <u> <+|-> <v> <+|->'")
        u, v = _int(toks[1], no, "node id"), _int(toks[3], no, "node id")
        for x in (u, v):
            if not 1 <= x <= n:
                raise GraphInputError(f"line {no}: node {x} outside 1..{n}")
        edges.append((u - 1, _DIR[toks[2]], v - 1, _DIR[toks[4]]))
    if len(edges) != m:
        raise GraphInputError(f"line {no}: header declares {m} edge lines, found {len(edges)}")
    return BidirectedGraph(n, tuple(edges))


def write_bdg(bg: BidirectedGraph) -> str:
    out = [f"bdg {bg.n} {len(bg.edges)}"]
    for u, lu, v, lv in bg.edges:
        out.append(f"e {u + 1} {'+' if lu else '-'} {v + 1} {'+' if lv else '-'}")
    return "\n".join(out) + "\n"


def parse_mug(text: str) -> MatchingInstance:
    rows = _lines(text)
    no, (n, m) = _header(rows, "mug", 2)
    edges = []
    matched = None
    for no, toks in rows:
        if matched is not None:
            raise GraphInputError(f"line {no}: nothing may follow the 'm' line")
        if toks[0] == "e" and len(toks) == 3:
            u, v = (_int(t, no, "node id") for t in toks[1:])
            for x in (u, v):
                if not 1 <= x <= n:
                    raise GraphInputError(f"line {no}: node {x} outside 1..{n}")
            edges.append((u - 1, v - 1))
        elif toks[0] == "m":
            idx = [_int(t, no, "edge index") for t in toks[1:]]
            for i in idx:
                if not 1 <= i <= len(edges):
                    raise GraphInputError(f"line {no}: edge index {i} outside 1..{len(edges)}")
            if len(set(idx)) != len(idx):
                raise GraphInputError(f"line {no}: an edge index is repeated")
            matched = [i - 1 for i in idx]
        else:
            raise GraphInputError(f"line {no}: expected 'e <u> <v>' or 'm <i1> <i2> ...'")
    if len(edges) != m:
        raise GraphInputError(f"line {no}: header declares {m} edge lines, found {len(edges)}")
    if matched is None:
        raise GraphInputError(f"line {no}: missing final 'm' line")
    return MatchingInstance(n, tuple(edges), frozenset(matched))


def write_mug(inst: MatchingInstance) -> str:
    out = [f"mug {inst.n} {len(inst.edges)}"]
    out += [f"e {u + 1} {v + 1}" for u, v in inst.edges]
    out.append("m " + " ".join(str(i + 1) for i in sorted(inst.M)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- certificates


@dataclass
class Codec:
    """Node and arc id translation between a skew graph and its file."""

    g: SkewGraph

    def node(self, x: int) -> int:
        return file_node(x, self.g.pairs)

    def nodes(self, xs) -> list[int]:
        return sorted(self.node(x) for x in xs)

    def arc(self, a: int) -> int:
        return (a >> 1) + 1 if a % 2 == 0 else -((a >> 1) + 1)

    def from_node(self, v: Any) -> int:
        p = self.g.pairs
        if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= 2 * p:
            raise GraphInputError(f"certificate names node {v!r}, expected 1..{2 * p}")
        return ssg_node(v, p)

    def from_nodes(self, vs: Any) -> frozenset[int]:
        if not isinstance(vs, list):
            raise GraphInputError("certificate node set must be a list")
        return frozenset(self.from_node(v) for v in vs)

    def from_arc(self, s: Any) -> int:
        q = self.g.arc_count // 2
        if not isinstance(s, int) or isinstance(s, bool) or s == 0 or abs(s) > q:
            raise GraphInputError(f"certificate names arc {s!r}, expected a nonzero integer within +-{q}")
        return 2 * (abs(s) - 1) + (1 if s < 0 else 0)


def _tree_to_json(c: Codec, t: DecompositionNode) -> dict:
    if t.is_leaf:
        return {"Z": c.nodes(t.Z), "crossing_pair": None, "children": []}
    return {
        "Z": c.nodes(t.Z),
        "crossing_pair": [c.arc(t.crossing), c.arc(t.crossing ^ 1)],
        "children": [_tree_to_json(c, t.left), _tree_to_json(c, t.right)],
    }


def _strong_sep_json(c: Codec, s: StrongSeparator) -> dict:
    return {
        "A": c.nodes(s.A),
        "B": c.nodes(s.B),
        "crossing_pair": [c.arc(s.crossing), c.arc(s.crossing ^ 1)],
        "a": c.node(s.a),
        "b": c.node(s.b),
    }


def _strong_tree_json(c: Codec, t: StrongDecompositionNode) -> dict:
    children = []
    for comp, sep, (x, y) in zip(t.components, t.splits, t.children):
        entry = {"component": c.nodes(comp), **_strong_sep_json(c, sep)}
        entry["children"] = [_strong_tree_json(c, x), _strong_tree_json(c, y)]
        children.append(entry)
    return {"X": c.nodes(t.X), "Z": c.nodes(t.Z), "children": children}


def certificate_to_json(g: SkewGraph | None, cert, inst: MatchingInstance | None = None) -> dict:
    if isinstance(cert, AlternatingCircuit):
        return {"type": "alternating-circuit", "nodes": [x + 1 for x in cert.nodes], "edges": [e + 1 for e in cert.edges]}
    c = Codec(g)
    if isinstance(cert, RegularCircuit):
        return {"type": "regular-circuit", "nodes": [c.node(x) for x in cert.walk.nodes], "arcs": [c.arc(a) for a in cert.walk.arcs]}
    if isinstance(cert, StrongAcyclicPartition):
        return {"type": "strong-acyclic", "Z": c.nodes(cert.Z)}
    if isinstance(cert, WeakSeparator):
        return {
            "type": "weak-separator",
            "A": c.nodes(cert.A),
            "B": c.nodes(cert.B),
            "Z": c.nodes(cert.Z),
            "crossing_pair": [c.arc(cert.crossing), c.arc(cert.crossing ^ 1)],
        }
    if isinstance(cert, StrongSeparator):
        return {"type": "strong-separator", **_strong_sep_json(c, cert)}
    if isinstance(cert, AcyclicBarrier):
        bar = cert.barrier
        return {
            "type": "barrier",
            "S": c.nodes(bar.S),
            "M": c.nodes(bar.M),
            "buds": [{"members": c.nodes(b.members), "base_arc": c.arc(b.base_arc)} for b in bar.buds],
            "order": [c.node(w) for w in cert.order],
        }
    if isinstance(cert, DecompositionNode):
        return {"type": "weak-decomposition", "tree": _tree_to_json(c, cert)}
    if isinstance(cert, StrongDecompositionNode):
        return {"type": "strong-decomposition", "tree": _strong_tree_json(c, cert)}
    raise TypeError(f"cannot serialize {type(cert).__name__}")


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _get(d: Any, key: str):
    if not isinstance(d, dict) or key not in d:
        raise GraphInputError(f"certificate object lacks field {key!r}")
    return d[key]


def _tree_from_json(c: Codec, d: Any) -> DecompositionNode:
    Z = sorted(c.from_nodes(_get(d, "Z")))
    kids = _get(d, "children")
    if not kids:
        return DecompositionNode(Z)
    if not isinstance(kids, list) or len(kids) != 2:
        raise GraphInputError("weak decomposition node needs zero or two children")
    cross = _get(d, "crossing_pair")
    if not isinstance(cross, list) or not cross:
        raise GraphInputError("internal node needs a crossing_pair")
    return DecompositionNode(Z, c.from_arc(cross[0]), _tree_from_json(c, kids[0]), _tree_from_json(c, kids[1]))


def _strong_sep_from_json(c: Codec, d: Any) -> StrongSeparator:
    cross = _get(d, "crossing_pair")
    if not isinstance(cross, list) or not cross:
        raise GraphInputError("strong separator needs a crossing_pair")
    return StrongSeparator(c.from_nodes(_get(d, "A")), c.from_nodes(_get(d, "B")), c.from_arc(cross[0]), c.from_node(_get(d, "a")), c.from_node(_get(d, "b")))


def _strong_tree_from_json(c: Codec, d: Any) -> StrongDecompositionNode:
    node = StrongDecompositionNode(c.from_nodes(_get(d, "X")), c.from_nodes(_get(d, "Z")))
    for entry in _get(d, "children"):
        node.components.append(c.from_nodes(_get(entry, "component")))
        node.splits.append(_strong_sep_from_json(c, entry))
        kids = _get(entry, "children")
        if not isinstance(kids, list) or len(kids) != 2:
            raise GraphInputError("strong decomposition component needs two children")
        node.children.append((_strong_tree_from_json(c, kids[0]), _strong_tree_from_json(c, kids[1])))
    return node


def certificate_from_json(g: SkewGraph | None, d: Any):
    kind = _get(d, "type")
    if kind == "alternating-circuit":
        nodes, edges = _get(d, "nodes"), _get(d, "edges")
        if not all(isinstance(v, int) for v in nodes + edges):
            raise GraphInputError("alternating circuit ids must be integers")
        return AlternatingCircuit(tuple(v - 1 for v in nodes), tuple(e - 1 for e in edges))
    if g is None:
        raise GraphInputError(f"certificate type {kind!r} needs a skew graph")
    c = Codec(g)
    if kind == "regular-circuit":
        arcs = [c.from_arc(s) for s in _get(d, "arcs")]
        if not arcs:
            raise GraphInputError("regular circuit has no arcs")
        try:
            return RegularCircuit(walk_from_arcs(g, arcs))
        except ContractViolation as exc:
            raise GraphInputError(f"regular circuit is not a walk: {exc}") from None
    if kind == "strong-acyclic":
        return StrongAcyclicPartition(c.from_nodes(_get(d, "Z")))
    if kind == "weak-separator":
        cross = _get(d, "crossing_pair")
        if not isinstance(cross, list) or not cross:
            raise GraphInputError("weak separator needs a crossing_pair")
        return WeakSeparator(c.from_nodes(_get(d, "A")), c.from_nodes(_get(d, "B")), c.from_nodes(_get(d, "Z")), c.from_arc(cross[0]))
    if kind == "strong-separator":
        return _strong_sep_from_json(c, d)
    if kind == "barrier":
        buds = []
        for b in _get(d, "buds"):
            arc = c.from_arc(_get(b, "base_arc"))
            buds.append(Bud(c.from_nodes(_get(b, "members")), arc, g.heads[arc]))
        bar = Barrier(c.from_nodes(_get(d, "S")), c.from_nodes(_get(d, "M")), buds)
        if "order" not in d:
            return bar
        return AcyclicBarrier(bar, [c.from_node(v) for v in _get(d, "order")])
    if kind == "weak-decomposition":
        return _tree_from_json(c, _get(d, "tree"))
    if kind == "strong-decomposition":
        return _strong_tree_from_json(c, _get(d, "tree"))
    raise GraphInputError(f"unknown certificate type {kind!r}")
