"""Engine invariants under generated streams, audited after every update."""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from builders import hub_rounds
from dynmis.engine import DynamicMIS
from dynmis.streams import gen_forest_union, gen_hub_leaf
from dynmis.verify import check_invariants, enumerate_maximal_independent_sets

PROPERTY_SETTINGS = settings(
    max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)


def drive(stream, alpha, exhaustive=False):
    e = DynamicMIS(stream.n, alpha, strict=True)
    edges = set()
    for op in stream:
        changes = e.apply_update(op)
        key = (min(op.u, op.v), max(op.u, op.v))
        edges.symmetric_difference_update({key})
        report = check_invariants(e)
        assert report.ok, f"after {op}: {report.render()}"
        assert not set(changes.added) & set(changes.removed)
        assert e.graph.max_out_degree() <= 4 * alpha
        if exhaustive:
            assert frozenset(e.mis()) in enumerate_maximal_independent_sets(stream.n, edges)
    assert set(e.graph.undirected_edges()) == edges
    assert e.stats.guarantee_failures == 0
    return e


@PROPERTY_SETTINGS
@given(st.integers(2, 10), st.integers(1, 3), st.floats(0, 0.6), st.integers(0, 2**32))
def test_tiny_streams_match_enumeration(n, k, churn, seed):
    drive(gen_forest_union(n, k, 60, churn, seed), k, exhaustive=True)


@PROPERTY_SETTINGS
@given(st.integers(20, 60), st.integers(1, 3), st.floats(0.1, 0.5), st.integers(0, 2**32))
def test_forest_streams(n, k, churn, seed):
    drive(gen_forest_union(n, k, 400, churn, seed), k)


@PROPERTY_SETTINGS
@given(st.integers(30, 120), st.integers(1, 4), st.integers(1, 3), st.integers(0, 2**32))
def test_hub_leaf_streams(n, hubs, k, seed):
    drive(gen_hub_leaf(n, hubs, k, 500, 0.25, seed), k)


@pytest.mark.parametrize("n, hubs, k, seed", [(300, 2, 1, 1), (300, 3, 1, 2), (400, 3, 2, 4)])
def test_chain_reactions_keep_invariants(n, hubs, k, seed):
    from dynmis.streams import UpdateStream

    stream = UpdateStream(n, k, hub_rounds(n, 3, seed, hubs, k))
    e = DynamicMIS(n, k, strict=True)
    process_calls = 0
    for i, op in enumerate(stream):
        e.apply_update(op)
        plan = e.last.plan
        if plan is not None:
            process_calls += plan.process_calls
        if plan is not None or i % 25 == 0:
            report = check_invariants(e)
            assert report.ok, f"after {op}: {report.render()}"
    assert process_calls > 0
    assert e.stats.guarantee_failures == 0
