"""Acceptance criteria 1-7.

Each test prints one ``criterion N: PASS|FAIL`` line straight to the terminal.
Run standalone with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import gc
import itertools
import random
import sys
import statistics
import time
from dataclasses import dataclass, field

import numpy as np
import pytest

from support import (
    bud_preimages,
    exhaustive_skew,
    history_buds,
    laminar,
    satisfies_preconditions,
)

from skewacyclic.acyclicity import RegularCircuit, acyclicity_test, traverse
from skewacyclic.certificates import verify_strong_decomposition, verify_weak_decomposition
from skewacyclic.decomposition import decompose, decompose_strong
from skewacyclic.graph import bi_walk_violation, is_regular_circuit, regular_circuit_violation, skew_to_bidirected
from skewacyclic.matching import AlternatingCircuit, MatchingInstance, alternating_circuit_violation, unique_matching
from skewacyclic.oracle import (
    GenSpec,
    brute_regular_circuit,
    brute_regular_path,
    explicit_live_arcs,
    fixture_f4,
    generate,
    perfect_matchings,
    random_bidirected,
)
from skewacyclic.reductions import canonical_preprocess, pull_back_circuit


def report(capsys, number: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")


@dataclass
class Runs:
    cases: int = 0
    mismatches: list = field(default_factory=list)
    circuits: list = field(default_factory=list)  # (graph, walk)
    bicycles: list = field(default_factory=list)  # (bidirected graph, cycle)
    acyclic: list = field(default_factory=list)
    seconds: float = 0.0


def _run_skew(runs: Runs, g, label) -> None:
    verdict = acyclicity_test(g)
    brute = brute_regular_circuit(g, cap=None)
    runs.cases += 1
    if isinstance(verdict, RegularCircuit) != (brute is not None):
        runs.mismatches.append(label)
    if isinstance(verdict, RegularCircuit):
        runs.circuits.append((g, verdict.walk))
    else:
        runs.acyclic.append(g)


def _run_bidirected(runs: Runs, bg, truth_graph, label) -> None:
    """Preprocess ``bg`` and compare against brute force on ``truth_graph``."""
    g, trace, _ = canonical_preprocess(bg)
    verdict = acyclicity_test(g)
    brute = brute_regular_circuit(truth_graph, cap=None)
    runs.cases += 1
    if isinstance(verdict, RegularCircuit) != (brute is not None):
        runs.mismatches.append(label)
    if isinstance(verdict, RegularCircuit):
        runs.circuits.append((g, verdict.walk))
        runs.bicycles.append((bg, pull_back_circuit(g, trace, verdict.walk)))
    else:
        runs.acyclic.append(g)


@pytest.fixture(scope="module")
def c1_runs() -> Runs:
    runs = Runs()
    start = time.perf_counter()
    for i, g in enumerate(exhaustive_skew(3, 4)):
        if satisfies_preconditions(g):
            _run_skew(runs, g, ("exhaustive", i))
        else:
            # outside the search precondition: go through the bidirected pipeline
            _run_bidirected(runs, skew_to_bidirected(g), g, ("exhaustive-pre", i))
    rng = random.Random(20240601)
    for i in range(10_000):
        bg = random_bidirected(rng.randint(1, 6), rng.randint(0, 10), rng)
        g, _, _ = canonical_preprocess(bg)
        _run_bidirected(runs, bg, g, ("random", i))
    runs.seconds = time.perf_counter() - start
    return runs


def test_criterion_1_oracle_equivalence(c1_runs, capsys):
    ok = not c1_runs.mismatches and c1_runs.seconds < 120
    report(capsys, 1, ok, f"{c1_runs.cases} instances, {len(c1_runs.mismatches)} disagreements, {c1_runs.seconds:.1f}s")
    assert not c1_runs.mismatches, c1_runs.mismatches[:5]
    assert c1_runs.seconds < 120


# ---------------------------------------------------------------- criterion 5 data


def _canonical_orbit_reps() -> tuple[list[tuple[int, int]], list[tuple[int, int]], list[int]]:
    """8 nodes, M = {01, 23, 45, 67}: one supergraph of M per orbit of the automorphism group of M.

    Every labeled (graph, perfect matching) pair on 8 nodes is isomorphic to
    one of these, so together they cover all of them.
    """
    M = [(0, 1), (2, 3), (4, 5), (6, 7)]
    others = [e for e in itertools.combinations(range(8), 2) if e not in M]
    index = {e: i for i, e in enumerate(others)}
    perms = []
    for order in itertools.permutations(range(4)):
        for flips in itertools.product((0, 1), repeat=4):
            sigma = [0] * 8
            for blk, (tgt, f) in enumerate(zip(order, flips)):
                sigma[2 * blk] = 2 * tgt + f
                sigma[2 * blk + 1] = 2 * tgt + 1 - f
            perms.append([index[tuple(sorted((sigma[u], sigma[v])))] for u, v in others])
    # byte-wise lookup tables: image of the edges in byte k of a mask under each perm
    tables = np.zeros((3, len(perms), 256), dtype=np.int64)
    for p, img in enumerate(perms):
        for k in range(3):
            for byte in range(256):
                tables[k, p, byte] = sum(1 << img[8 * k + b] for b in range(8) if byte >> b & 1)
    seen = bytearray(1 << len(others))
    view = np.frombuffer(seen, dtype=np.uint8)
    reps = []
    i = 0
    while (i := seen.find(0, i)) >= 0:
        reps.append(i)
        view[tables[0, :, i & 255] | tables[1, :, (i >> 8) & 255] | tables[2, :, i >> 16]] = 1
    return M, others, reps


@dataclass
class MatchRuns:
    cases: int = 0
    mismatches: list = field(default_factory=list)
    circuits: list = field(default_factory=list)  # (instance, circuit)


def _match_case(runs: MatchRuns, inst: MatchingInstance, label) -> None:
    verdict = unique_matching(inst)
    truth = len(perfect_matchings(inst.n, list(inst.edges), limit=2)) == 1
    runs.cases += 1
    if isinstance(verdict, AlternatingCircuit):
        runs.circuits.append((inst, verdict))
    if truth != (not isinstance(verdict, AlternatingCircuit)):
        runs.mismatches.append(label)


@pytest.fixture(scope="module")
def c5_runs() -> MatchRuns:
    runs = MatchRuns()
    for n in (2, 4, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [e for i, e in enumerate(pairs) if mask >> i & 1]
            for M in perfect_matchings(n, edges):
                _match_case(runs, MatchingInstance(n, edges, M), ("labeled", n, mask, tuple(sorted(M))))
    M, others, reps = _canonical_orbit_reps()
    for mask in reps:
        edges = M + [e for i, e in enumerate(others) if mask >> i & 1]
        _match_case(runs, MatchingInstance(8, edges, range(4)), ("orbit", mask))
    rng = random.Random(77)
    for i in range(10_000):
        perm = list(range(10))
        rng.shuffle(perm)
        edges = {tuple(sorted(perm[2 * k : 2 * k + 2])) for k in range(5)}
        matched = set(edges)
        for _ in range(rng.randint(0, 25)):
            edges.add(tuple(sorted(rng.sample(range(10), 2))))
        edges = list(edges)
        rng.shuffle(edges)
        M = [j for j, e in enumerate(edges) if e in matched]
        _match_case(runs, MatchingInstance(10, edges, M), ("random", i))
    return runs


def test_criterion_2_witness_validity(c1_runs, c5_runs, capsys):
    bad = []
    for g, walk in c1_runs.circuits:
        if not is_regular_circuit(g, walk):
            bad.append(regular_circuit_violation(g, walk))
    for bg, cycle in c1_runs.bicycles:
        problem = bi_walk_violation(bg, cycle)
        if problem:
            bad.append(problem)
    for inst, circ in c5_runs.circuits:
        problem = alternating_circuit_violation(inst, circ)
        if problem:
            bad.append(problem)
    total = len(c1_runs.circuits) + len(c1_runs.bicycles) + len(c5_runs.circuits)
    report(capsys, 2, not bad, f"{total} witnesses checked, {len(bad)} invalid")
    assert not bad, bad[:5]


def test_criterion_3_decomposition_soundness(c1_runs, capsys):
    rng = random.Random(31337)
    graphs = list(c1_runs.acyclic)
    for seed in range(1000):
        # split nodes double the pairs, so at most 200 pairs in the final graph
        pairs = rng.randint(1, 100)
        graphs.append(generate(GenSpec("weakly-acyclic-composed", pairs, rng.randint(0, 7 * pairs), seed)).graph)
    bad = []
    for i, g in enumerate(graphs):
        tree = decompose(g)
        if isinstance(tree, RegularCircuit) or verify_weak_decomposition(g, tree):
            bad.append(("weak", i))
        strong = decompose_strong(g)
        if isinstance(strong, RegularCircuit) or verify_strong_decomposition(g, strong):
            bad.append(("strong", i))
    report(capsys, 3, not bad, f"{len(graphs)} weakly acyclic instances, {len(bad)} failed trees")
    assert not bad, bad[:5]


def _run_once(fn, g) -> float:
    gc.collect()  # the previous result holds cycles; free it before the clock starts
    gc.disable()
    try:
        t = time.perf_counter()
        fn(g)
        return time.perf_counter() - t
    finally:
        gc.enable()


def _fit_deviation(sizes: list[int], times: list[float]) -> list[float]:
    c = sum(s * t for s, t in zip(sizes, times)) / sum(s * s for s in sizes)
    return [abs(t - c * s) / (c * s) for s, t in zip(sizes, times)]


def test_criterion_4_linear_time(capsys):
    start = time.perf_counter()
    graphs, shapes, sizes = [], [], []
    for n in (10_000, 100_000, 1_000_000):
        pairs = n // 4  # split_nodes turns each pair into two
        g = generate(GenSpec("weakly-acyclic-composed", pairs, 7 * pairs, seed=n, leaf_pairs=32, leaf_chance=0.0)).graph
        graphs.append(g)
        shapes.append((g.node_count, g.arc_count))
        sizes.append(g.node_count + g.arc_count)
    # interleaved rounds so a slow spell on the shared CPU hits every size alike; median per size
    samples = [([], []) for _ in graphs]
    for _ in range(3):
        for (sc, sd), g, inner in zip(samples, graphs, (5, 3, 1)):
            for _ in range(inner):
                sc.append(_run_once(acyclicity_test, g))
                sd.append(_run_once(decompose, g))
    t_check = [statistics.median(sc) for sc, _ in samples]
    t_dec = [statistics.median(sd) for _, sd in samples]
    del graphs
    total = time.perf_counter() - start
    dev_c = _fit_deviation(sizes, t_check)
    dev_d = _fit_deviation(sizes, t_dec)
    ok = max(dev_c) <= 0.5 and max(dev_d) <= 0.5 and total < 120
    detail = "; ".join(
        f"(n={n}, m={m}) check {tc:.3f}s dec {td:.3f}s" for (n, m), tc, td in zip(shapes, t_check, t_dec)
    )
    detail += f"; max deviation check {max(dev_c):.0%} dec {max(dev_d):.0%}; total {total:.0f}s"
    report(capsys, 4, ok, detail)
    assert max(dev_c) <= 0.5 and max(dev_d) <= 0.5, detail
    assert total < 120, detail


def test_criterion_5_matching(c5_runs, capsys):
    ok = not c5_runs.mismatches
    report(capsys, 5, ok, f"{c5_runs.cases} matching instances, {len(c5_runs.mismatches)} disagreements")
    assert ok, c5_runs.mismatches[:5]


def _fuzz_graphs():
    rng = random.Random(4242)
    for _ in range(1500):
        bg = random_bidirected(rng.randint(1, 6), rng.randint(0, 10), rng)
        yield canonical_preprocess(bg)[0]
    for seed in range(300):
        kind = ("weakly-acyclic-composed", "strongly-connected-weakly-acyclic")[seed % 2]
        pairs = rng.randint(4, 12)
        yield generate(GenSpec(kind, pairs, rng.randint(0, 4 * pairs), seed)).graph
    yield fixture_f4().graph


def _invariant_failures(g) -> list[str]:
    out = []
    try:
        st = traverse(g, debug=True)
    except AssertionError as exc:  # ContractViolation from the debug checks
        return [f"debug invariant: {exc}"]
    cg = st.current
    if st.circuit is None:
        for a, t, h in cg.live_arcs():
            if st.finish[t] >= 0 and st.finish[h] >= 0 and not st.finish[t] > st.finish[h]:
                out.append(f"finish stamps out of order on arc {a}")
    if not laminar(bud_preimages(cg)):
        out.append("trimmed buds not laminar")
    if explicit_live_arcs(g, history_buds(cg)) != set(cg.live_arcs()):
        out.append("lazy and explicit trimming disagree")
    if st.dead_discards > g.arc_count:
        out.append("more dead discards than arcs")
    if st.circuit is None and g.arc_count <= 40:
        for s in range(0, g.node_count):
            if brute_regular_path(g, s, s ^ 1, cap=None) and brute_regular_path(g, s ^ 1, s, cap=None):
                out.append(f"both {s} -> {s ^ 1} and back are regularly reachable")
                break
    return out


def test_criterion_6_invariants(capsys):
    failures = []
    cases = trims = 0
    for i, g in enumerate(_fuzz_graphs()):
        cases += 1
        problems = _invariant_failures(g)
        if problems:
            failures.append((i, problems))
        trims += len(traverse(g).current.history)
    report(capsys, 6, not failures, f"{cases} fuzz cases ({trims} trims), {len(failures)} with violations")
    assert not failures, failures[:5]


def test_criterion_7_strong_decomposition(capsys):
    rng = random.Random(7)
    times = []
    bad = 0
    for seed in range(6):
        pairs = 250  # 1000 nodes after splitting
        kind = ("weakly-acyclic-composed", "strongly-connected-weakly-acyclic")[seed % 2]
        g = generate(GenSpec(kind, pairs, 7 * pairs, seed, leaf_pairs=rng.choice((2, 8, 32)))).graph
        t = time.perf_counter()
        tree = decompose_strong(g)
        times.append(time.perf_counter() - t)
        bad += isinstance(tree, RegularCircuit) or bool(verify_strong_decomposition(g, tree))
    ok = max(times) < 10 and not bad
    report(capsys, 7, ok, f"(n, m) up to (1000, ~4000): slowest {max(times):.2f}s, {bad} invalid trees")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
