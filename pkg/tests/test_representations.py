from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecp.cliques import CliquePartition, cp_exact, enumerate_partitions
from ecp.errors import CoverageError, DegenerateVertexError, DomainError
from ecp.graphs import Graph, Multigraph, complete, line_graph, paw
from ecp.line_graphs import canonical_partition
from ecp.linear_spaces import fano_lines
from ecp.representations import (
    KIND_ORDER,
    RepKind,
    SetFamily,
    augmentation_cost,
    classify,
    enumerate_min_reps,
    intersection_multigraph,
    is_uniquely_intersectable,
    monopolized_elements,
    omega_brute_force,
    omega_exact,
    partition_from_rep,
    remove_monopolized,
    rep_from_partition,
)
from strategies import graphs, multigraphs

set_families = st.lists(st.frozensets(st.integers(0, 4), min_size=1, max_size=4), min_size=1, max_size=5)


def test_intersection_multigraph_examples():
    assert intersection_multigraph(SetFamily.of([{1, 2}, {2, 3}, {1, 3}])) == complete(3).to_multigraph()
    m = intersection_multigraph(SetFamily.of([{1, 2}, {1, 2}]))
    assert m.q(0, 1) == 2
    assert intersection_multigraph(SetFamily.of([{1}, {2}])).isolated_vertices() == [0, 1]


def test_rep_from_partition_examples():
    lp, idx = line_graph(paw())
    fam = rep_from_partition(canonical_partition(paw()))
    # vy is the pendant edge; it lies in one clique only
    vy = idx.lookup(1, 3)
    assert len(fam.sets[vy]) == 1
    assert all(len(s) == 2 for v, s in enumerate(fam.sets) if v != vy)
    assert rep_from_partition(CliquePartition.of(complete(3), [(0, 1, 2)])).sets == (frozenset({0}),) * 3
    fano = rep_from_partition(CliquePartition.of(complete(7), fano_lines()))
    assert all(len(s) == 3 for s in fano.sets)
    with pytest.raises(CoverageError):
        rep_from_partition(CliquePartition.of(Graph.empty(2), [(0,)]))


def test_partition_from_rep_examples():
    assert partition_from_rep(SetFamily.of([{0}])).cliques == ((0,),)
    assert partition_from_rep(SetFamily.of([{1, 2}, {2, 3}, {1, 3}])).cliques == ((0, 1), (0, 2), (1, 2))


def test_monopolized_and_classify():
    f = SetFamily.of([{1, 2, 4}, {2, 3}, {1, 3, 5}])
    assert monopolized_elements(f) == {4, 5}
    assert remove_monopolized(f).relabel_key() == SetFamily.of([{1, 2}, {2, 3}, {1, 3}]).relabel_key()
    plain = SetFamily.of([{1, 2}, {2, 3}, {1, 3}])
    assert remove_monopolized(plain) == plain.compact()
    with pytest.raises(DegenerateVertexError) as exc:
        remove_monopolized(SetFamily.of([{1}, {2}]))
    assert exc.value.vertices == (0, 1)
    assert classify(plain) == frozenset(KIND_ORDER)
    assert classify(SetFamily.of([{1}, {1, 2}])) == {RepKind.MULTIFAMILY, RepKind.FAMILY}
    assert classify(SetFamily.of([{1}, {1}])) == {RepKind.MULTIFAMILY}
    with pytest.raises(DomainError):
        SetFamily.of([set()])


def test_augmentation_cost_examples():
    assert augmentation_cost(SetFamily.of([{1}, {1}]), "family")[0] == 1
    fam = rep_from_partition(canonical_partition(paw()))
    assert augmentation_cost(fam, "antichain")[0] == 1
    assert augmentation_cost(SetFamily.of([{0}] * 4), "uniform")[0] == 4


@given(set_families)
@settings(max_examples=100, deadline=None)
def test_augmentation_yields_requested_kind(sets):
    fam = SetFamily.of(sets)
    for kind in KIND_ORDER:
        cost, plan = augmentation_cost(fam, kind)
        out = plan.family()
        assert kind in classify(out)
        assert intersection_multigraph(out) == intersection_multigraph(fam)
        assert out.p == fam.p + cost


@given(set_families)
@settings(max_examples=100, deadline=None)
def test_family_round_trip(sets):
    fam = SetFamily.of(sets)
    q = partition_from_rep(fam)
    assert q.host == intersection_multigraph(fam)
    assert rep_from_partition(q).relabel_key() == fam.relabel_key()


@given(graphs(max_n=5))
@settings(max_examples=40, deadline=None)
def test_partition_round_trip(g):
    for q in enumerate_partitions(g, g.num_edges + g.n):
        f = rep_from_partition(q)
        assert partition_from_rep(f).cliques == q.cliques
        assert f.p == len(q)
        assert intersection_multigraph(f) == q.host


def test_complete_graph_numbers():
    for n in range(3, 7):
        assert omega_exact(complete(n), "m") == 1
        assert omega_exact(complete(n), "f") == n
        assert omega_exact(complete(n), "a") == n
    assert omega_exact(complete(4), "u") == 5


@given(graphs(max_n=5))
@settings(max_examples=40, deadline=None)
def test_multifamily_number_is_cp(g):
    assert omega_exact(g, "m") == cp_exact(g)


@given(graphs(max_n=5))
@settings(max_examples=30, deadline=None)
def test_partition_method_matches_brute_force(g):
    for kind in KIND_ORDER:
        e = omega_exact(g, kind)
        assert omega_brute_force(g, kind, e + 1) == e


@given(multigraphs(max_n=4, max_q=2))
@settings(max_examples=30, deadline=None)
def test_partition_method_matches_brute_force_on_multigraphs(m):
    for kind in KIND_ORDER:
        e = omega_exact(m, kind)
        assert omega_brute_force(m, kind, e + 1) == e


@given(graphs(max_n=5))
@settings(max_examples=30, deadline=None)
def test_min_reps_are_minimum_representations(g):
    for kind in KIND_ORDER:
        mr = enumerate_min_reps(g, kind)
        keys = set()
        for fam in mr.families():
            assert fam.p == mr.omega
            assert kind in classify(fam)
            assert intersection_multigraph(fam) == g.to_multigraph()
            keys.add(fam.relabel_key())
        # distinct plans never describe the same family
        assert len(keys) == mr.count_plan
        assert 1 <= mr.count_iso <= mr.count_plan


def test_line_graph_of_paw_counts():
    lp, _ = line_graph(paw())
    assert enumerate_min_reps(lp, "f").count_plan == 2
    mr = enumerate_min_reps(lp, "a")
    assert mr.omega == 4 and mr.count_plan >= 1 and mr.count_iso >= 1


def test_uniquely_intersectable():
    assert not is_uniquely_intersectable(complete(4), "f")
    assert is_uniquely_intersectable(complete(7), "u")
    assert not is_uniquely_intersectable(complete(4), "a", counting="plan")
    with pytest.raises(DomainError):
        is_uniquely_intersectable(complete(3), "f", counting="other")


def test_set_family_json():
    f = SetFamily.of([{3, 5}, {5}])
    assert SetFamily.from_json(f.to_json()).relabel_key() == f.relabel_key()
    with pytest.raises(DomainError):
        SetFamily.from_json('{"ground": 1, "sets": [[0, 3]]}')
