import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import random_valid_skew

from skewacyclic.acyclicity import (
    ANTIBLACK,
    BLACK,
    RegularCircuit,
    WeaklyAcyclic,
    acyclicity_test,
    traverse,
)
from skewacyclic.errors import GraphInputError
from skewacyclic.graph import SkewGraph, is_regular_circuit
from skewacyclic.oracle import (
    GenSpec,
    brute_regular_circuit,
    fixture_f1,
    fixture_f2,
    fixture_f3,
    fixture_f4,
    generate,
)


def test_f1_is_weakly_acyclic():
    assert isinstance(acyclicity_test(fixture_f1().graph), WeaklyAcyclic)
    assert brute_regular_circuit(fixture_f1().graph) is None


def test_f2_is_weakly_acyclic():
    assert isinstance(acyclicity_test(fixture_f2().graph), WeaklyAcyclic)


def test_f3_has_the_two_arc_circuit():
    f = fixture_f3()
    verdict = acyclicity_test(f.graph)
    assert isinstance(verdict, RegularCircuit)
    assert set(verdict.walk.nodes) == {f["u"], f["w"]}
    assert len(verdict.walk) == 2
    assert is_regular_circuit(f.graph, verdict.walk)


def test_f4_trims_one_bud():
    verdict = acyclicity_test(fixture_f4().graph, debug=True)
    assert isinstance(verdict, WeaklyAcyclic)
    assert len(verdict.trim_history) == 1
    assert verdict.trim_history[0].base_node == fixture_f4()["v"]


def test_isolated_pair_finishes_at_once():
    verdict = acyclicity_test(SkewGraph(1))
    assert verdict.black_order == [0] and verdict.finish == [0, -1]


def test_root_is_the_side_with_out_degree_at_most_one():
    # node 0 has two outgoing arcs, so pair 0 is rooted at node 1
    g = SkewGraph(3, [(0, 2), (0, 4)])
    st = traverse(g)
    assert st.black_order[0] == 1 and st.finish[1] == 0
    assert st.color[1] == BLACK and st.color[0] == ANTIBLACK


def test_self_loop_is_a_regular_circuit():
    verdict = acyclicity_test(SkewGraph(1, [(0, 0)]))
    assert isinstance(verdict, RegularCircuit) and verdict.walk.arcs == (0,)


def test_preconditions_are_enforced():
    with pytest.raises(GraphInputError, match="degree"):
        acyclicity_test(SkewGraph(3, [(0, 2), (4, 2), (2, 0), (2, 4)]))
    with pytest.raises(GraphInputError, match="mate"):
        acyclicity_test(SkewGraph(1, [(0, 1)]))


def test_strongly_acyclic_graphs_are_weakly_acyclic():
    for seed in range(50):
        g = generate(GenSpec("strongly-acyclic", 10, 40, seed)).graph
        assert isinstance(acyclicity_test(g), WeaklyAcyclic)


def test_matches_brute_force_with_debug_invariants():
    rng = random.Random(5)
    for _ in range(800):
        g = random_valid_skew(rng)
        verdict = acyclicity_test(g, debug=True)
        assert isinstance(verdict, RegularCircuit) == (brute_regular_circuit(g, cap=None) is not None)
        if isinstance(verdict, RegularCircuit):
            assert is_regular_circuit(g, verdict.walk)


def test_finish_stamps_order_black_nodes_reverse_topologically():
    rng = random.Random(6)
    for _ in range(300):
        g = random_valid_skew(rng)
        verdict = acyclicity_test(g)
        if isinstance(verdict, RegularCircuit):
            continue
        cg, f = verdict.current, verdict.finish
        for _, t, h in cg.live_arcs():
            if f[t] >= 0 and f[h] >= 0:
                assert f[t] > f[h]
        assert [f[x] for x in verdict.black_order] == list(range(len(verdict.black_order)))


def _permuted(g: SkewGraph, rnd: random.Random) -> SkewGraph:
    arcs = g.arc_pairs()
    rnd.shuffle(arcs)
    # flipping a declared arc to its mate keeps the graph but changes list order
    arcs = [(v ^ 1, u ^ 1) if rnd.random() < 0.5 else (u, v) for u, v in arcs]
    return SkewGraph(g.pairs, arcs)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_verdict_is_invariant_under_adjacency_order(seed):
    rng = random.Random(seed)
    g = random_valid_skew(rng)
    base = isinstance(acyclicity_test(g), RegularCircuit)
    for _ in range(3):
        h = _permuted(g, rng)
        verdict = acyclicity_test(h)
        assert isinstance(verdict, RegularCircuit) == base
        if base:
            assert is_regular_circuit(h, verdict.walk)


def test_linear_scan_on_a_long_chain():
    # deep forest path: the explicit stack must not hit recursion limits
    n = 50_000
    g = SkewGraph(n, [(2 * i, 2 * i + 2) for i in range(n - 1)])
    verdict = acyclicity_test(g)
    assert isinstance(verdict, WeaklyAcyclic) and len(verdict.black_order) == n
