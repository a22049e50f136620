"""Line-graph structure: canonical partitions, wings, leaf statistics, the
closed-form clique-partition and intersection-number formulas, and
detection of the graphs those formulas exclude.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .cliques import CliquePartition
from .errors import DomainError, ExclusionError
from .graphs import Graph, complete, is_isomorphic, line_graph, windmill3
from .linear_spaces import plane_order_exists

PLANE_RULES = ("plane", "truncated")


def canonical_partition(g: Graph) -> CliquePartition:
    """Stars ``e_v`` of every vertex of degree at least two, as cliques of L(g).

    An edge whose endpoints both have degree one becomes a trivial clique
    so the result is always a valid partition.
    """
    if g.num_edges == 0:
        raise DomainError("graph has no edges")
    lg, idx = line_graph(g)
    cliques = []
    for v in range(g.n):
        if g.degree(v) >= 2:
            cliques.append([idx.lookup(v, u) for u in g.neighbors(v)])
    for i, (u, v) in enumerate(idx.edges):
        if g.degree(u) == 1 and g.degree(v) == 1:
            cliques.append([i])
    return CliquePartition.of(lg, cliques)


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    return [
        (a, b, c)
        for a, b, c in combinations(range(g.n), 3)
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)
    ]


def find_wings(g: Graph) -> tuple[list[tuple[int, int, int]], list[tuple[int, int, int]]]:
    """Wings (triangles with exactly two degree-2 vertices) and the 3-wings among them."""
    wings, three = [], []
    for tri in triangles(g):
        degs = [g.degree(x) for x in tri]
        if degs.count(2) == 2:
            wings.append(tri)
            apex = next(d for d in degs if d != 2)
            if apex == 3:
                three.append(tri)
    return wings, three


@dataclass(frozen=True)
class Attachment:
    vertex: int
    m: int  # degree-one neighbors
    t: int  # degree


@dataclass(frozen=True)
class LeafStats:
    v2: tuple[int, ...]
    w3: int
    attachments: tuple[Attachment, ...]
    k_prime: int
    k_double_prime: int

    @property
    def k(self) -> int:
        return len(self.attachments)

    def to_dict(self) -> dict:
        return {
            "v2": list(self.v2),
            "w3": self.w3,
            "attachments": [{"vertex": a.vertex, "m": a.m, "t": a.t} for a in self.attachments],
            "k": self.k,
            "k_prime": self.k_prime,
            "k_double_prime": self.k_double_prime,
        }


def _plane_with_points(t: int, rule: str) -> bool:
    """Whether ``t`` points carry a plane (rule ``plane``: ``t = k^2+k+1``)
    or a plane with one point deleted (rule ``truncated``: ``t = k^2+k``)."""
    if rule not in PLANE_RULES:
        raise DomainError(f"unknown plane rule {rule!r}")
    shift = 1 if rule == "plane" else 0
    k = 2
    while k * k + k + shift < t:
        k += 1
    return k * k + k + shift == t and plane_order_exists(k) == "yes"


def leaf_stats(g: Graph, plane_rule: str = "plane") -> LeafStats:
    if not g.is_connected():
        raise DomainError("graph must be connected")
    deg = g.degrees()
    v2 = tuple(v for v in range(g.n) if deg[v] >= 2)
    _, three = find_wings(g)
    att = []
    for v in v2:
        m = sum(1 for u in g.neighbors(v) if deg[u] == 1)
        if m:
            att.append(Attachment(v, m, deg[v]))
    kp = [a for a in att if a.t == a.m + 1]
    kpp = [a for a in kp if _plane_with_points(a.t, plane_rule)]
    return LeafStats(v2, len(three), tuple(att), len(kp), len(kpp))


# --------------------------------------------------------------------------
# exclusions


def book_order(g: Graph) -> int | None:
    """``t`` when ``g`` is the book W_t = K_2 v tK_1 (t >= 2), else None.

    W_t is a spine edge ``uv`` plus ``t`` pages, each a vertex adjacent to
    exactly ``u`` and ``v``.
    """
    t = g.n - 2
    if t < 2 or g.num_edges != 2 * t + 1:
        return None
    deg = g.degrees()
    spine = [v for v in range(g.n) if deg[v] == t + 1]
    if len(spine) != 2 or not g.has_edge(*spine):
        return None
    u, v = spine
    pages = [w for w in range(g.n) if w not in spine]
    if all(deg[w] == 2 and g.has_edge(w, u) and g.has_edge(w, v) for w in pages):
        return t
    return None


def book(t: int) -> Graph:
    if t < 2:
        raise DomainError("W_t needs t >= 2")
    edges = [(0, 1)] + [(s, w) for w in range(2, t + 2) for s in (0, 1)]
    return Graph.from_edges(t + 2, edges)


@dataclass(frozen=True)
class ExclusionReport:
    regime: str
    flags: dict = field(default_factory=dict)

    @property
    def excluded(self) -> bool:
        return bool(self.flags)

    def reasons(self) -> list[str]:
        return sorted(self.flags)

    def to_dict(self) -> dict:
        return {"regime": self.regime, "flags": {k: _jsonable(v) for k, v in sorted(self.flags.items())}}


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def is_star(g: Graph) -> bool:
    return g.is_connected() and g.num_edges >= 1 and sum(1 for d in g.degrees() if d > 1) <= 1 and g.num_edges == g.n - 1


def _leafy(g: Graph, v: int) -> bool:
    return any(g.degree(u) == 1 for u in g.neighbors(v))


def figure_signatures(g: Graph) -> dict[str, tuple]:
    """Degree/adjacency patterns of the graphs the antichain formula excludes.

    fig11: triangle {v, x, w} with d(w) = 2 and leaves hanging at both v and x;
    fig12: a wing whose third vertex carries a leaf;
    fig13: adjacent v, h both carrying leaves with two or more common
           neighbors of degree 2;
    fig14: as fig13 but only v carries leaves.
    """
    found: dict[str, tuple] = {}
    deg = g.degrees()
    wings, _ = find_wings(g)
    for tri in wings:
        apex = next(x for x in tri if deg[x] != 2)
        if _leafy(g, apex):
            found.setdefault("fig12", tri)
    for tri in triangles(g):
        for w in tri:
            if deg[w] != 2:
                continue
            v, x = (y for y in tri if y != w)
            if _leafy(g, v) and _leafy(g, x):
                found.setdefault("fig11", tri)
    for v, h in g.edges():
        common = [w for w in g.neighbors(v) if g.has_edge(w, h) and deg[w] == 2]
        if len(common) < 2:
            continue
        lv, lh = _leafy(g, v), _leafy(g, h)
        if lv and lh:
            found.setdefault("fig13", (v, h, *common))
        elif lv or lh:
            found.setdefault("fig14", (v, h, *common) if lv else (h, v, *common))
    return found


def detect_exclusions(
    g: Graph, regime: str = "cp_theorem", catalog: Iterable[tuple[int, Graph]] = ()
) -> ExclusionReport:
    """Flags for the graphs a closed-form theorem does not cover.

    Regimes: ``cp_theorem`` (minimum clique partitions), ``family_theorem``
    (adds stars) and ``antichain_theorem`` (adds the figure signatures).
    Books W_t are recognized structurally; ``catalog`` holds further
    ``(t, graph)`` entries that are flagged as W_t when isomorphic to ``g``.
    """
    if regime not in ("cp_theorem", "family_theorem", "antichain_theorem"):
        raise DomainError(f"unknown regime {regime!r}")
    if not g.is_connected():
        raise DomainError("graph must be connected")
    flags: dict = {}
    if g.num_edges == 1:
        flags["single_edge"] = g.edges()[0]
    for name, ref in (("K3", complete(3)), ("K4", complete(4)), ("3K2vK1", windmill3())):
        if g.n == ref.n and g.num_edges == ref.num_edges:
            ok, perm = is_isomorphic(g, ref)
            if ok:
                flags[name] = perm
    t = book_order(g)
    if t is not None:
        flags["W_t"] = t
    for t, ref in catalog:
        if "W_t" not in flags and g.n == ref.n and g.num_edges == ref.num_edges:
            ok, perm = is_isomorphic(g, ref, max_n=64)
            if ok:
                flags["W_t"] = t
    if regime != "cp_theorem" and is_star(g):
        flags["star"] = next(v for v in range(g.n) if g.degree(v) == g.n - 1)
    if regime == "antichain_theorem":
        flags.update(figure_signatures(g))
    return ExclusionReport(regime, flags)


# --------------------------------------------------------------------------
# closed forms


def cp_linegraph_formula(g: Graph) -> tuple[int, int]:
    """``(|V2|, 2**w3)``: size and number of minimum clique partitions of L(g)."""
    report = detect_exclusions(g, "cp_theorem")
    if report.excluded:
        raise ExclusionError(report)
    s = leaf_stats(g)
    return len(s.v2), 2 ** s.w3


def omega_f_linegraph_formula(g: Graph) -> tuple[int, int]:
    report = detect_exclusions(g, "family_theorem")
    if report.excluded:
        raise ExclusionError(report)
    s = leaf_stats(g)
    return len(s.v2) + sum(a.m - 1 for a in s.attachments), 2 ** s.w3


def omega_a_linegraph_formula(g: Graph, plane_rule: str = "plane") -> tuple[int, int]:
    report = detect_exclusions(g, "antichain_theorem")
    if report.excluded:
        raise ExclusionError(report)
    s = leaf_stats(g, plane_rule)
    kp, kpp = s.k_prime, s.k_double_prime
    return len(s.v2) + sum(a.m for a in s.attachments), 3 ** (kp - kpp) * 4**kpp


def special_case_counts(g: Graph) -> int:
    """Number of minimum clique partitions of L(g) for the excluded graphs
    K4 (2), 3K2 v K1 (3) and the W_t family (2)."""
    if g.n == 4 and is_isomorphic(g, complete(4))[0]:
        return 2
    if g.n == 7 and is_isomorphic(g, windmill3())[0]:
        return 3
    if book_order(g) is not None:
        return 2
    raise DomainError("not one of K4, 3K2 v K1, W_t")
