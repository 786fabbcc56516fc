"""Instance sources and structural checks shared by the test modules."""

from __future__ import annotations

import itertools
import random

from skewacyclic.acyclicity import check_preconditions
from skewacyclic.buds import Bud, CurrentGraph
from skewacyclic.errors import GraphInputError
from skewacyclic.graph import SkewGraph
from skewacyclic.oracle import random_bidirected
from skewacyclic.reductions import canonical_preprocess


def arc_classes(pairs: int) -> list[tuple[int, int]]:
    """One representative per mate class of arcs on ``pairs`` node pairs, self-loops included."""
    n = 2 * pairs
    seen = set()
    out = []
    for u in range(n):
        for v in range(n):
            if v == u ^ 1 or (u, v) in seen:
                continue
            seen.add((u, v))
            seen.add((v ^ 1, u ^ 1))
            out.append((u, v))
    return out


def exhaustive_skew(max_pairs: int = 3, max_arc_pairs: int = 4):
    """Every skew graph with at most the given pairs and arc pairs (parallel arcs allowed)."""
    for p in range(1, max_pairs + 1):
        classes = arc_classes(p)
        for k in range(max_arc_pairs + 1):
            for combo in itertools.combinations_with_replacement(classes, k):
                yield SkewGraph(p, list(combo))


def satisfies_preconditions(g: SkewGraph) -> bool:
    try:
        check_preconditions(g)
    except GraphInputError:
        return False
    return True


def random_valid_skew(rng: random.Random, max_nodes: int = 6, max_edges: int = 10) -> SkewGraph:
    """Preprocessed random bidirected graph; always meets the search preconditions."""
    bg = random_bidirected(rng.randint(1, max_nodes), rng.randint(0, max_edges), rng)
    return canonical_preprocess(bg)[0]


def bud_preimages(cg: CurrentGraph) -> list[set[int]]:
    """Base-graph node set of every trimmed bud, in trim order."""
    pre: list[set[int]] = []
    for rec in cg.history:
        pre.append(set(rec.members))
    for k, rec in enumerate(cg.history):
        if rec.parent >= 0:
            pre[rec.parent] |= pre[k]
    return pre


def laminar(sets: list[set[int]]) -> bool:
    for s, t in itertools.combinations(sets, 2):
        if s & t and not (s <= t or t <= s):
            return False
    return True


def history_buds(cg: CurrentGraph) -> list[Bud]:
    return [Bud(frozenset(r.members), r.base_arc, r.base_node) for r in cg.history]
