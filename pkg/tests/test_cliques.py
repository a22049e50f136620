from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import nx_graph
from ecp.cliques import (
    CliquePartition,
    classify_complete_partition,
    cp_exact,
    edge_count_conserved,
    enumerate_cliques,
    enumerate_partitions,
    is_clique_partition,
    minimum_partition,
    minimum_partitions,
)
from ecp.errors import BudgetExceeded, DomainError, PreconditionError
from ecp.graphs import Graph, Multigraph, complete, cycle, line_graph, paw
from ecp.linear_spaces import fano_lines
from strategies import graphs, multigraphs


def oracle_partitions(m: Multigraph) -> set[tuple]:
    """Every clique partition, by exhaustive choice over all nontrivial cliques.

    Written independently of the search engine: recursion on the first
    pair that still needs covering, no ordering tricks, duplicates removed
    by normalizing the result.
    """
    n = m.n
    verts = range(n)
    cliques = [
        c
        for k in range(2, n + 1)
        for c in combinations(verts, k)
        if all(m.q(u, v) > 0 for u, v in combinations(c, 2))
    ]
    need = {(u, v): m.q(u, v) for u, v in combinations(verts, 2)}
    fixed = tuple((v,) for v in verts if all(m.q(u, v) == 0 for u in verts if u != v))
    out = set()

    def rec(chosen):
        open_pairs = [p for p, r in need.items() if r > 0]
        if not open_pairs:
            out.add(tuple(sorted(chosen + list(fixed))))
            return
        p = open_pairs[0]
        for c in cliques:
            if p[0] in c and p[1] in c and all(need[q] > 0 for q in combinations(c, 2)):
                for q in combinations(c, 2):
                    need[q] -= 1
                rec(chosen + [c])
                for q in combinations(c, 2):
                    need[q] += 1

    rec([])
    return out


def test_enumerate_cliques_examples():
    assert set(enumerate_cliques(complete(3), 2)) == {(0, 1), (0, 2), (1, 2), (0, 1, 2)}
    assert enumerate_cliques(cycle(4), 3) == []
    assert len(enumerate_cliques(complete(4), 2)) == 11
    with pytest.raises(DomainError):
        enumerate_cliques(complete(3), 0)


@given(graphs(max_n=7))
@settings(max_examples=60, deadline=None)
def test_enumerate_cliques_matches_networkx(g):
    ours = enumerate_cliques(g, 1)
    assert ours == sorted(ours)
    ref = {tuple(sorted(c)) for c in nx.enumerate_all_cliques(nx_graph(g))}
    assert set(ours) == ref and len(ours) == len(ref)


def test_is_clique_partition_examples():
    k3 = complete(3)
    assert is_clique_partition(k3, [(0, 1, 2)])
    verdict = is_clique_partition(k3, [(0, 1), (1, 2)])
    assert not verdict and verdict.violation.pair == (0, 2) and verdict.violation.count == 0
    double = Multigraph(2, ((0, 2), (2, 0)))
    assert is_clique_partition(double, [(0, 1), (0, 1)])
    assert not is_clique_partition(Graph.empty(1), [])
    assert is_clique_partition(Graph.empty(1), [(0,)])


def test_cp_examples():
    assert cp_exact(complete(6)) == 1
    assert cp_exact(cycle(5)) == 5
    assert cp_exact(complete(7), nontrivial_only=True, proper_only=True) == 7
    k3 = list(enumerate_partitions(complete(3), 3, nontrivial_only=True, proper_only=True))
    assert [p.cliques for p in k3] == [((0, 1), (0, 2), (1, 2))]
    k4 = {p.cliques for p in enumerate_partitions(complete(4), 4, nontrivial_only=True, proper_only=True)}
    assert ((0, 1), (0, 2), (0, 3), (1, 2, 3)) in k4
    diamond, _ = line_graph(paw())
    threes = [p for p in enumerate_partitions(diamond, 3) if len(p) == 3]
    assert len(threes) == 2


def test_isolated_vertices_get_trivial_cliques():
    g = Graph.from_edges(3, [(0, 1)])
    p = minimum_partition(g)
    assert p.cliques == ((0, 1), (2,))
    with pytest.raises(PreconditionError):
        minimum_partition(g, nontrivial_only=True)


@given(graphs(max_n=6))
@settings(max_examples=50, deadline=None)
def test_enumeration_matches_oracle(g):
    m = g.to_multigraph()
    ours = [p.cliques for p in enumerate_partitions(g, g.num_edges + g.n)]
    assert len(ours) == len(set(ours))
    assert set(ours) == oracle_partitions(m)
    assert cp_exact(g) == min(len(p) for p in ours)
    mins = minimum_partitions(g)
    assert all(len(p) == cp_exact(g) for p in mins)
    assert len(mins) == sum(1 for p in ours if len(p) == cp_exact(g))


@given(multigraphs(max_n=4, max_q=2))
@settings(max_examples=50, deadline=None)
def test_multigraph_enumeration_matches_oracle(m):
    total = sum(m.q(u, v) for u, v in combinations(range(m.n), 2))
    ours = [p.cliques for p in enumerate_partitions(m, total + m.n)]
    assert len(ours) == len(set(ours))
    assert set(ours) == oracle_partitions(m)
    for cl in ours:
        assert is_clique_partition(m, cl)
        assert edge_count_conserved(CliquePartition.of(m, cl))


def test_classify_complete_partition():
    assert classify_complete_partition(CliquePartition.of(complete(7), fano_lines())).tag == "projective_plane"
    assert classify_complete_partition(CliquePartition.of(complete(7), fano_lines())).order == 2
    pencil = [(1, 2, 3, 4)] + [(0, i) for i in range(1, 5)]
    assert classify_complete_partition(CliquePartition.of(complete(5), pencil)).tag == "near_pencil"
    assert classify_complete_partition(CliquePartition.of(complete(4), combinations(range(4), 2))).tag == "other"
    assert classify_complete_partition(CliquePartition.of(complete(4), [(0, 1, 2, 3)])).tag == "single_clique"
    with pytest.raises(PreconditionError):
        classify_complete_partition(CliquePartition.of(cycle(4), [(0, 1), (1, 2), (2, 3), (0, 3)]))


def test_budget_exceeded_reports_partial_count():
    with pytest.raises(BudgetExceeded) as exc:
        list(enumerate_partitions(complete(6), 15, budget=50))
    assert exc.value.limit == 50 and exc.value.count is not None


def test_partition_json_round_trip():
    p = minimum_partition(line_graph(paw())[0])
    assert CliquePartition.from_json(p.host, p.to_json()) == p
