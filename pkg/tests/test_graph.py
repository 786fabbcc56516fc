import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewacyclic.errors import ContractViolation, GraphInputError
from skewacyclic.graph import (
    BidirectedGraph,
    BiWalk,
    SkewGraph,
    Walk,
    bi_walk_violation,
    bidirected_to_skew,
    degree_property_violation,
    delta_in,
    delta_out,
    gamma,
    is_regular,
    is_regular_circuit,
    lift_walk,
    loop_property_violation,
    mate,
    mate_walk,
    node_simple_subcircuit,
    project_walk,
    regular_circuit_violation,
    skew_to_bidirected,
    walk_from_arcs,
)
from skewacyclic.oracle import fixture_f3, random_bidirected


@st.composite
def skew_graphs(draw, max_pairs=4, max_arcs=8):
    p = draw(st.integers(1, max_pairs))
    node = st.integers(0, 2 * p - 1)
    arcs = draw(st.lists(st.tuples(node, node), max_size=max_arcs))
    return SkewGraph(p, arcs)


def test_mate_is_an_involution_without_fixed_points():
    for x in range(20):
        assert mate(mate(x)) == x and mate(x) != x


def test_arc_ids_come_in_mate_pairs():
    g = SkewGraph(2, [(0, 2)])
    assert g.arc_count == 2
    assert (g.tails[0], g.heads[0]) == (0, 2)
    assert (g.tails[1], g.heads[1]) == (3, 1)
    assert g.adj[0] == [0] and g.adj[3] == [1]


@given(skew_graphs())
def test_skew_symmetry_holds_for_every_arc(g):
    for a in range(g.arc_count):
        assert g.tails[a ^ 1] == g.heads[a] ^ 1
        assert g.heads[a ^ 1] == g.tails[a] ^ 1
    for v in range(g.node_count):
        assert sorted(g.in_arcs(v)) == sorted(a for a in range(g.arc_count) if g.heads[a] == v)
        assert g.in_degree(v) == g.out_degree(v ^ 1)


def test_out_of_range_endpoint_is_an_input_error():
    with pytest.raises(GraphInputError, match="outside"):
        SkewGraph(1, [(0, 2)])
    with pytest.raises(GraphInputError):
        SkewGraph(-1)


def test_induced_subgraph_maps_back():
    g = SkewGraph(3, [(0, 2), (2, 4), (4, 1)])
    sub, node_back, arc_back = g.induced([0, 1, 4, 5])
    assert sub.pairs == 2
    assert [(node_back[sub.tails[a]], node_back[sub.heads[a]]) for a in range(sub.arc_count)] == [
        (g.tails[arc_back[a]], g.heads[arc_back[a]]) for a in range(sub.arc_count)
    ]
    assert sub.arc_count == 2  # only 4 -> 1 and its mate survive
    with pytest.raises(ContractViolation):
        g.induced([0, 2])


def test_walk_construction_and_mate_walk():
    g = fixture_f3().graph
    w = walk_from_arcs(g, [0, 2])
    assert w.nodes == (0, 2, 0) and w.closed
    m = mate_walk(w)
    assert m.nodes == (1, 3, 1) and m.arcs == (3, 1)
    with pytest.raises(ContractViolation):
        walk_from_arcs(g, [0, 0])
    with pytest.raises(ContractViolation):
        Walk((0, 1), ())


def test_regular_circuit_checks():
    f = fixture_f3()
    g = f.graph
    assert is_regular_circuit(g, walk_from_arcs(g, [0, 2]))
    # 0->2->4->3->1->0 uses arc 0 and later its mate 3->1
    h = SkewGraph(3, [(0, 2), (2, 4), (4, 3), (1, 0)])
    w = walk_from_arcs(h, [0, 2, 4, 1, 6])
    assert not is_regular(h, w)
    assert regular_circuit_violation(h, w) == "walk uses an arc together with its mate"
    assert regular_circuit_violation(g, Walk((0,), ())) == "empty walk"
    assert regular_circuit_violation(g, walk_from_arcs(g, [0])) == "walk is not closed"
    assert regular_circuit_violation(g, Walk((0, 2, 0), (0, 0))) == "consecutive elements are not incident"


def test_node_simple_subcircuit_cuts_at_repeated_node():
    # two triangles sharing node 0: 0->2->4->0->6->8->0
    g = SkewGraph(5, [(0, 2), (2, 4), (4, 0), (0, 6), (6, 8), (8, 0)])
    arcs = node_simple_subcircuit(g, [0, 2, 4, 6, 8, 10])
    w = walk_from_arcs(g, arcs)
    assert w.closed and len(set(w.nodes[:-1])) == len(w.arcs) == 3


def test_degree_and_loop_properties():
    assert degree_property_violation(SkewGraph(3, [(0, 2), (4, 2)])) is None
    bad = SkewGraph(3, [(0, 2), (4, 2), (2, 0), (2, 4)])
    assert "node 2" in degree_property_violation(bad)
    assert loop_property_violation(SkewGraph(1, [(0, 1)])) is not None
    assert loop_property_violation(SkewGraph(2, [(0, 2)])) is None


def test_cuts():
    g = SkewGraph(3, [(0, 2), (2, 4), (4, 0)])
    X = {0, 2}
    assert {(g.tails[a], g.heads[a]) for a in delta_out(g, X)} == {(2, 4)}
    assert {(g.tails[a], g.heads[a]) for a in delta_in(g, X)} == {(4, 0)}
    assert gamma(g, X) == {0}


def test_bidirected_round_trip_keeps_edges():
    rng = random.Random(3)
    for _ in range(200):
        bg = random_bidirected(rng.randint(1, 6), rng.randint(0, 8), rng)
        g, nm = bidirected_to_skew(bg)
        assert g.pairs == bg.n and g.arc_count == 2 * len(bg.edges)
        back = skew_to_bidirected(g)
        assert back == bg


@settings(max_examples=200)
@given(skew_graphs(max_pairs=3, max_arcs=6), st.randoms(use_true_random=False))
def test_project_and_lift_are_inverse(g, rnd):
    # random walk of up to 6 arcs
    x = start = rnd.randrange(g.node_count)
    arcs = []
    for _ in range(rnd.randint(1, 6)):
        if not g.adj[x]:
            break
        a = rnd.choice(g.adj[x])
        arcs.append(a)
        x = g.heads[a]
    if not arcs:
        return  # an empty bidirected walk does not say which side it starts on
    w = walk_from_arcs(g, arcs, start=start)
    bw = project_walk(g, w)
    bg = skew_to_bidirected(g)
    assert bi_walk_violation(bg, bw) is None
    assert lift_walk(g, bw) == w


def test_bidirected_cycle_needs_a_transit_at_the_start():
    # a directed loop is a cycle; a loop that leaves the node at both ends is not
    loop = BidirectedGraph(1, [(0, True, 0, False)])
    assert bi_walk_violation(loop, BiWalk((0, 0), (0,), (True,), True)) is None
    two_out = BidirectedGraph(1, [(0, True, 0, True)])
    assert bi_walk_violation(two_out, BiWalk((0, 0), (0,), (True,), True)) is not None
