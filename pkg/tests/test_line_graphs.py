import pytest

from ecp.cliques import cp_exact, is_clique_partition, minimum_partitions
from ecp.errors import DomainError, ExclusionError
from ecp.graphs import (
    Graph,
    complete,
    compose,
    connected_graphs,
    double_star,
    line_graph,
    paw,
    path,
    star,
    windmill3,
)
from ecp.line_graphs import (
    book,
    book_order,
    canonical_partition,
    cp_linegraph_formula,
    detect_exclusions,
    find_wings,
    leaf_stats,
    omega_a_linegraph_formula,
    omega_f_linegraph_formula,
    special_case_counts,
)
from ecp.representations import enumerate_min_reps


def test_canonical_partition_examples():
    assert sorted(canonical_partition(paw()).sizes()) == [2, 2, 3]
    p3 = canonical_partition(path(3))
    assert p3.cliques == ((0, 1),)
    bowtie = canonical_partition(double_star(2, 2))
    a, b = (set(c) for c in bowtie.cliques)
    assert len(a) == len(b) == 3 and len(a & b) == 1
    with pytest.raises(DomainError):
        canonical_partition(Graph.empty(3))


def test_canonical_partition_is_valid_with_v2_cliques():
    for g in connected_graphs(6):
        if g.num_edges < 2:
            continue
        lg, _ = line_graph(g)
        p = canonical_partition(g)
        assert is_clique_partition(lg, p.cliques)
        assert len(p) == len(leaf_stats(g).v2)
        assert cp_exact(lg) <= len(p)


def test_wings():
    wings, three = find_wings(paw())
    assert len(wings) == 1 and len(three) == 1
    assert find_wings(complete(3)) == ([], [])
    two_pendants = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4)])
    wings, three = find_wings(two_pendants)
    assert len(wings) == 1 and three == []


def test_leaf_stats_examples():
    s = leaf_stats(paw())
    assert s.v2 == (0, 1, 2) and s.w3 == 1 and s.k == 1
    assert (s.attachments[0].vertex, s.attachments[0].m, s.attachments[0].t) == (1, 1, 3)
    assert s.k_prime == 0 and s.k_double_prime == 0
    s = leaf_stats(path(4))
    assert s.v2 == (1, 2) and s.k == 2 and s.k_prime == 2 and s.k_double_prime == 0
    assert all((a.m, a.t) == (1, 2) for a in s.attachments)
    s = leaf_stats(double_star(2, 2))
    assert s.k == 2 and s.k_prime == 2 and s.k_double_prime == 0
    assert all((a.m, a.t) == (2, 3) for a in s.attachments)
    with pytest.raises(DomainError):
        leaf_stats(compose(complete(2), complete(2)))


def test_plane_rule_toggle():
    # a center of degree 7 with six leaves: 7 = 2^2 + 2 + 1 points of a plane
    s7 = double_star(6, 2)
    assert leaf_stats(s7, "plane").k_double_prime == 1
    assert leaf_stats(s7, "truncated").k_double_prime == 0
    # degree 6 = 2^2 + 2: the plane with one point deleted
    s6 = double_star(5, 2)
    assert leaf_stats(s6, "plane").k_double_prime == 0
    assert leaf_stats(s6, "truncated").k_double_prime == 1
    with pytest.raises(DomainError):
        leaf_stats(s6, "other")


def test_exclusions():
    k4 = complete(4)
    assert "K4" in detect_exclusions(k4, "cp_theorem").reasons()
    assert "K4" in detect_exclusions(k4, "antichain_theorem").reasons()
    assert "star" in detect_exclusions(star(5), "family_theorem").reasons()
    assert "star" not in detect_exclusions(star(5), "cp_theorem").reasons()
    assert not detect_exclusions(paw(), "cp_theorem").excluded
    assert not detect_exclusions(paw(), "family_theorem").excluded
    assert "fig12" in detect_exclusions(paw(), "antichain_theorem").reasons()
    assert "3K2vK1" in detect_exclusions(windmill3()).reasons()
    assert detect_exclusions(book(3)).flags["W_t"] == 3
    with pytest.raises(DomainError):
        detect_exclusions(compose(complete(2), complete(2)))


def test_books():
    for t in range(2, 6):
        g = book(t)
        assert book_order(g) == t
        assert book_order(g.relabel(list(reversed(range(g.n))))) == t
    assert book_order(complete(4)) is None
    assert book_order(paw()) is None


def test_cp_formula_examples():
    assert cp_linegraph_formula(paw()) == (3, 2)
    assert cp_linegraph_formula(double_star(2, 2)) == (2, 1)
    assert cp_linegraph_formula(path(5)) == (3, 1)
    with pytest.raises(ExclusionError) as exc:
        cp_linegraph_formula(complete(4))
    assert "K4" in exc.value.report.reasons()


def test_family_formula_examples():
    assert omega_f_linegraph_formula(paw()) == (3, 2)
    assert omega_f_linegraph_formula(double_star(2, 2)) == (4, 1)
    with pytest.raises(ExclusionError):
        omega_f_linegraph_formula(star(3))


def test_antichain_formula_examples():
    assert omega_a_linegraph_formula(double_star(2, 2)) == (6, 9)
    assert omega_a_linegraph_formula(path(4)) == (4, 9)
    with pytest.raises(ExclusionError):
        omega_a_linegraph_formula(paw())


def test_special_case_counts_against_oracle():
    assert special_case_counts(complete(4)) == 2
    assert special_case_counts(windmill3()) == 3
    for g in (complete(4), windmill3(), book(2), book(3), book(4)):
        assert len(minimum_partitions(line_graph(g)[0])) == special_case_counts(g)
    with pytest.raises(DomainError):
        special_case_counts(complete(5))


def test_books_break_the_cp_count():
    # the book graphs satisfy cp = |V2| but have two minimum partitions, not 2^w3 = 1
    for t in (2, 3, 4):
        g = book(t)
        s = leaf_stats(g)
        mins = minimum_partitions(line_graph(g)[0])
        assert len(mins[0]) == len(s.v2) and s.w3 == 0 and len(mins) == 2


def test_antichain_value_on_double_stars():
    for a, b in ((2, 2), (3, 2), (2, 3)):
        g = double_star(a, b)
        mr = enumerate_min_reps(line_graph(g)[0], "a")
        assert mr.omega == omega_a_linegraph_formula(g)[0]


def test_extra_catalog_entries():
    g = path(5)
    assert not detect_exclusions(g).excluded
    report = detect_exclusions(g, catalog=[(9, path(5).relabel([4, 3, 2, 1, 0]))])
    assert report.flags["W_t"] == 9
