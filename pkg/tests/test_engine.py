import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete, disjoint_edges, graphs
from parfpt.bench import STRATEGIES, strategy
from parfpt.branching import shallow_depth_bound
from parfpt.engine import (
    NodeBudgetExceeded,
    RunConfig,
    estimate_wall_time,
    metrics_json,
    metrics_record,
    run,
    verify_witness,
)
from parfpt.generators import gnp, planted_vc
from parfpt.graph import Graph, Instance
from parfpt.kernels import BUSS, LP, Cascade, KernelSpec, buss_kernel
from parfpt.oracle import brute_force_vc
from parfpt.rules import EdgeRule, MatchingRule

SCHEDULE_KEYS = ("answer", "witness", "workUnits", "spanUnits", "treeSize", "treeDepth", "stages")


def schedule_view(config, inst, verdict, metrics):
    rec = metrics_record(config, inst, verdict, metrics)
    return {key: rec[key] for key in SCHEDULE_KEYS}


def test_triangle_edge_rule():
    verdict, m = run(RunConfig(EdgeRule()), Instance(complete(3), 2))
    assert verdict.answer == "yes"
    assert len(verdict.witness) == 2 and verify_witness(complete(3), verdict.witness)
    assert m.tree_size <= 7
    assert m.tree_depth == 2


def test_edgeless_root_only():
    verdict, m = run(RunConfig(EdgeRule()), Instance(Graph.empty(3), 0))
    assert verdict.answer == "yes" and verdict.witness == ()
    assert m.tree_size == 1


@pytest.mark.parametrize("t", [1, 3, 5])
def test_parallel_step_over_disjoint_edges(t):
    # the matching rule accepts this instance immediately, so the edge rule carries the example
    _, m = run(RunConfig(EdgeRule(), "b_star"), Instance(disjoint_edges(t), 2 * t))
    assert m.tree_size == 2 ** t + 1
    assert m.tree_depth == 1
    assert m.work_units >= 2 ** t + 1
    verdict, m = run(RunConfig(MatchingRule(), "b_star"), Instance(disjoint_edges(t), 2 * t))
    assert verdict.answer == "yes" and m.tree_size == 1


def test_witness_uses_input_ids_after_kernels():
    inst = planted_vc(60, 5, 1)
    for name in STRATEGIES:
        verdict, _ = run(strategy(name), inst)
        assert verdict.answer == "yes"
        assert verify_witness(inst.graph, verdict.witness)
        assert len(verdict.witness) <= inst.k


def test_node_budget_is_a_resource_error():
    with pytest.raises(NodeBudgetExceeded):
        run(RunConfig(EdgeRule(), node_budget=5), Instance(complete(6), 4))
    with pytest.raises(NodeBudgetExceeded):
        run(RunConfig(EdgeRule(), exec_mode="parallel", workers=2, node_budget=20), Instance(complete(7), 5))


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(EdgeRule(), branch_mode="b_two")
    with pytest.raises(ValueError):
        RunConfig(EdgeRule(), workers=0)
    with pytest.raises(ValueError):
        RunConfig(EdgeRule(), accounting="lazy")
    exp = KernelSpec("exp", buss_kernel, lambda k: 2 ** k, "edges", "", "", polynomial=False)
    with pytest.raises(ValueError):
        RunConfig(EdgeRule(), interleave_kernel=exp)


def test_fingerprint_ignores_scheduling():
    a = RunConfig(MatchingRule(), "b_star", init_kernel=Cascade((BUSS, LP)))
    b = RunConfig(MatchingRule(), "b_star", "parallel", init_kernel=Cascade((BUSS, LP)), workers=8)
    assert a.fingerprint() == b.fingerprint()
    assert a.fingerprint() != RunConfig(EdgeRule(), "b_star").fingerprint()


def test_metrics_schema_key_order():
    config = RunConfig(EdgeRule())
    inst = Instance(complete(3), 2)
    rec = metrics_record(config, inst, *run(config, inst))
    assert list(rec) == [
        "answer", "witnessSize", "witness", "k", "n", "m", "workUnits", "spanUnits",
        "treeSize", "treeDepth", "stages", "wallClockSec", "config",
    ]
    assert json.loads(metrics_json(rec)) == rec


@pytest.mark.parametrize("name", sorted(STRATEGIES))
@pytest.mark.parametrize("workers", [1, 2, 3])
def test_sequential_and_parallel_agree(name, workers):
    inst = Instance(gnp(11, 0.4, 3), 6)
    seq = strategy(name)
    par = strategy(name, exec_mode="parallel", workers=workers)
    assert schedule_view(seq, inst, *run(seq, inst)) == schedule_view(par, inst, *run(par, inst))


def test_fast_mode_keeps_the_verdict():
    for k in range(0, 8):
        inst = Instance(gnp(10, 0.5, k), k)
        expected = brute_force_vc(inst.graph, k).member
        for name in ("b1-edge", "bstar-matching"):
            for exec_mode in ("sequential", "parallel"):
                verdict, m = run(strategy(name, accounting="fast", exec_mode=exec_mode, workers=2), inst)
                assert (verdict.answer == "yes") == expected
                full = run(strategy(name), inst)[1]
                assert m.tree_size <= full.tree_size


def test_interleave_translation_on_a_path():
    # Buss at each node may force vertices; the witness must still be valid in input ids
    inst = planted_vc(90, 6, 5)
    config = RunConfig(EdgeRule(), "b_one", interleave_kernel=BUSS)
    verdict, _ = run(config, inst)
    assert verdict.answer == "yes" and verify_witness(inst.graph, verdict.witness)


def test_brent_examples_via_metrics():
    _, m = run(RunConfig(EdgeRule()), Instance(complete(4), 3))
    assert estimate_wall_time(m, 1) == m.work_units + m.span_units
    assert estimate_wall_time(m, 10 ** 9) == pytest.approx(m.span_units, abs=1e-3)


@settings(max_examples=40, deadline=None)
@given(g=graphs(max_n=10), k=st.integers(0, 7), name=st.sampled_from(sorted(STRATEGIES)))
def test_engine_matches_oracle_and_cost_identities(g, k, name):
    inst = Instance(g, k)
    verdict, m = run(strategy(name), inst)
    assert (verdict.answer == "yes") == brute_force_vc(g, k).member
    if verdict.answer == "yes":
        assert verify_witness(g, verdict.witness) and len(verdict.witness) <= k
    else:
        assert verdict.witness is None
    assert m.span_units <= m.work_units
    if m.tree_size:
        assert m.tree_size <= m.tree_work <= m.tree_size * m.max_node_work
        assert m.tree_span <= (m.tree_depth + 1) * m.max_node_span
    for p in (1, 2, 7, 64):
        est = estimate_wall_time(m, p)
        assert est >= max(m.work_units / p, m.span_units)
        assert estimate_wall_time(m, p + 1) <= est


@settings(max_examples=40, deadline=None)
@given(g=graphs(max_n=11), k=st.integers(0, 8))
def test_depth_and_size_laws(g, k):
    inst = Instance(g, k)
    _, edge_one = run(strategy("b1-edge"), inst)
    _, edge_star = run(RunConfig(EdgeRule(), "b_star"), inst)
    _, matching = run(strategy("bstar-matching"), inst)
    assert edge_one.tree_depth <= k
    assert matching.tree_depth <= shallow_depth_bound(k)
    for m in (edge_one, edge_star, matching):
        assert m.tree_size <= 2 ** (k + 1)


@settings(max_examples=30, deadline=None)
@given(g=graphs(max_n=11), k=st.integers(1, 9))
def test_b_star_branch_budget_fraction(g, k):
    seen = []

    def check(budget, s, outcome):
        for _, spent in outcome.branches:
            seen.append(spent)
            assert spent <= (1 - 1 / (s + 1)) * budget + s

    for name in ("bstar-matching", "bstar-matching-interleave"):
        run(strategy(name), Instance(g, k), on_branch=check)
