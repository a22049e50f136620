"""Simple graphs and multigraphs on dense vertex labels ``0..n-1``.

Adjacency of a :class:`Graph` is stored as one integer bitmask per vertex.
Both value types are immutable and hashable.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, DomainError, ValidityError

ISO_MAX_N = 12


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise IndexError(f"vertex {v} out of range for {n} vertices")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValidityError("adjacency length does not match vertex count")
        for u, mask in enumerate(self.adj):
            if mask >> u & 1:
                raise ValidityError(f"self-loop at vertex {u}")
            if mask >> self.n:
                raise ValidityError(f"vertex {u} adjacent to out-of-range vertex")
            for v in _bits(mask):
                if not self.adj[v] >> u & 1:
                    raise ValidityError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], *, strict: bool = True) -> "Graph":
        """Build a graph from vertex pairs.

        Self-loops are always rejected; repeated pairs are rejected when
        ``strict`` is true and silently merged otherwise.
        """
        adj = [0] * n
        for u, v in edges:
            _check_vertex(n, u)
            _check_vertex(n, v)
            if u == v:
                raise ValidityError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1 and strict:
                raise ValidityError(f"duplicate edge {min(u, v)} {max(u, v)}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def q(self, u: int, v: int) -> int:
        return self.adj[u] >> v & 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def components(self) -> list[list[int]]:
        left = (1 << self.n) - 1
        comps = []
        while left:
            start = left & -left
            seen, frontier = start, start
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~seen
                seen |= nxt
            comps.append(list(_bits(seen)))
            left &= ~seen
        return comps

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def to_multigraph(self) -> "Multigraph":
        return Multigraph(self.n, tuple(tuple(self.q(u, v) for v in range(self.n)) for u in range(self.n)))

    def weight_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.q(u, v) for v in range(self.n)) for u in range(self.n))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class Multigraph:
    """Vertices ``0..n-1`` with a symmetric multiplicity matrix ``mult``."""

    n: int
    mult: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.mult) != self.n or any(len(r) != self.n for r in self.mult):
            raise ValidityError("multiplicity matrix must be n x n")
        for u in range(self.n):
            if self.mult[u][u] != 0:
                raise ValidityError(f"nonzero multiplicity on diagonal at {u}")
            for v in range(u + 1, self.n):
                if self.mult[u][v] != self.mult[v][u]:
                    raise ValidityError(f"asymmetric multiplicity between {u} and {v}")
                if self.mult[u][v] < 0:
                    raise ValidityError("negative multiplicity")

    @classmethod
    def from_pairs(cls, n: int, pairs: dict[tuple[int, int], int] | Iterable[Sequence[int]]) -> "Multigraph":
        """``pairs`` maps ``(u, v)`` to a multiplicity, or is an iterable of
        pairs where each repetition adds one parallel edge."""
        m = [[0] * n for _ in range(n)]
        items = pairs.items() if isinstance(pairs, dict) else ((tuple(p), 1) for p in pairs)
        for (u, v), k in items:
            _check_vertex(n, u)
            _check_vertex(n, v)
            if u == v:
                raise ValidityError(f"self-loop at vertex {u}")
            m[u][v] += k
            m[v][u] += k
        return cls(n, tuple(tuple(r) for r in m))

    def q(self, u: int, v: int) -> int:
        return self.mult[u][v]

    def has_edge(self, u: int, v: int) -> bool:
        return self.mult[u][v] > 0

    def is_simple(self) -> bool:
        return all(x <= 1 for r in self.mult for x in r)

    def support(self) -> Graph:
        return Graph.from_edges(self.n, ((u, v) for u in range(self.n) for v in range(u + 1, self.n) if self.mult[u][v]))

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not any(self.mult[v])]

    def to_multigraph(self) -> "Multigraph":
        return self

    def weight_matrix(self) -> tuple[tuple[int, ...], ...]:
        return self.mult


def as_multigraph(host: Graph | Multigraph) -> Multigraph:
    return host.to_multigraph()


@dataclass(frozen=True)
class EdgeIndex:
    """Sorted edge list of a graph and the inverse map pair -> index."""

    edges: tuple[tuple[int, int], ...]
    index: dict = field(compare=False, hash=False, repr=False)

    @classmethod
    def of(cls, g: Graph) -> "EdgeIndex":
        edges = tuple(g.edges())
        return cls(edges, {e: i for i, e in enumerate(edges)})

    def __len__(self) -> int:
        return len(self.edges)

    def lookup(self, u: int, v: int) -> int:
        return self.index[(min(u, v), max(u, v))]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    return list(_bits(mask))


# --------------------------------------------------------------------------
# constructions


def line_graph(g: Graph) -> tuple[Graph, EdgeIndex]:
    if g.num_edges == 0:
        raise DomainError("line graph of an edgeless graph is empty")
    idx = EdgeIndex.of(g)
    at_vertex = defaultdict(list)
    for i, (u, v) in enumerate(idx.edges):
        at_vertex[u].append(i)
        at_vertex[v].append(i)
    pairs = set()
    for inc in at_vertex.values():
        pairs.update(combinations(inc, 2))
    return Graph.from_edges(len(idx), sorted(pairs)), idx


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    verts = sorted(set(s))
    for v in verts:
        _check_vertex(g.n, v)
    pos = {v: i for i, v in enumerate(verts)}
    return Graph.from_edges(
        len(verts), ((pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos)
    )


def compose(a: Graph, b: Graph, op: str = "disjoint_union") -> Graph:
    if op not in ("disjoint_union", "join"):
        raise DomainError(f"unknown composition {op!r}")
    shift = a.n
    edges = a.edges() + [(u + shift, v + shift) for u, v in b.edges()]
    if op == "join":
        edges += [(x, y + shift) for x in range(a.n) for y in range(b.n)]
    return Graph.from_edges(a.n + b.n, edges)


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def path(n: int) -> Graph:
    """Path on ``n`` vertices (``P_n``)."""
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(m: int) -> Graph:
    """``K_{1,m}`` with center 0."""
    return Graph.from_edges(m + 1, ((0, i) for i in range(1, m + 1)))


def complete_multipartite(*parts: int) -> Graph:
    owner = [i for i, p in enumerate(parts) for _ in range(p)]
    n = len(owner)
    return Graph.from_edges(n, ((u, v) for u, v in combinations(range(n), 2) if owner[u] != owner[v]))


def double_star(a: int, b: int) -> Graph:
    """Adjacent centers 0 and 1 carrying ``a`` and ``b`` leaves."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + i) for i in range(b)]
    return Graph.from_edges(2 + a + b, edges)


def paw() -> Graph:
    """Triangle u=0, v=1, w=2 with pendant y=3 on v."""
    return Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (1, 3)])


def windmill3() -> Graph:
    """``3K_2 v K_1``: three triangles sharing vertex 6."""
    three_k2 = compose(compose(complete(2), complete(2)), complete(2))
    return compose(three_k2, complete(1), "join")


# --------------------------------------------------------------------------
# isomorphism


def _isomorphisms(wa: Sequence[Sequence[int]], wb: Sequence[Sequence[int]]) -> Iterator[tuple[int, ...]]:
    """Yield every bijection ``p`` with ``wa[i][j] == wb[p[i]][p[j]]``.

    Diagonal entries act as vertex colors.
    """
    n = len(wa)
    if n != len(wb):
        return

    def sig(w, v):
        return (w[v][v], tuple(sorted(x for i, x in enumerate(w[v]) if i != v and x)))

    sa = [sig(wa, v) for v in range(n)]
    sb = [sig(wb, v) for v in range(n)]
    if sorted(sa) != sorted(sb):
        return
    class_size = Counter(sa)
    order: list[int] = []
    remaining = set(range(n))
    while remaining:
        v = max(remaining, key=lambda x: (sum(1 for p in order if wa[x][p]), -class_size[sa[x]], -x))
        order.append(v)
        remaining.remove(v)
    cands = [[b for b in range(n) if sb[b] == sa[v]] for v in order]
    mapping = [-1] * n
    used = [False] * n

    def rec(i):
        if i == n:
            yield tuple(mapping)
            return
        v = order[i]
        row_a = wa[v]
        for b in cands[i]:
            if used[b]:
                continue
            row_b = wb[b]
            if all(row_a[order[j]] == row_b[mapping[order[j]]] for j in range(i)):
                mapping[v] = b
                used[b] = True
                yield from rec(i + 1)
                used[b] = False
        mapping[v] = -1

    yield from rec(0)


def is_isomorphic(a: Graph | Multigraph, b: Graph | Multigraph, max_n: int = ISO_MAX_N):
    """Return ``(True, perm)`` with ``perm[v]`` the image of ``v``, or ``(False, None)``."""
    if max(a.n, b.n) > max_n:
        raise BudgetExceeded(max_n, max(a.n, b.n))
    for perm in _isomorphisms(a.weight_matrix(), b.weight_matrix()):
        return True, perm
    return False, None


def automorphisms(g: Graph | Multigraph) -> list[tuple[int, ...]]:
    w = g.weight_matrix()
    return list(_isomorphisms(w, w))


def invariant(g: Graph) -> tuple:
    """Cheap isomorphism invariant used to bucket graphs before exact checks."""
    deg = g.degrees()
    nbr = sorted((deg[v], tuple(sorted(deg[u] for u in g.neighbors(v)))) for v in range(g.n))
    return (g.n, g.num_edges, tuple(nbr))


def unique_up_to_isomorphism(graphs: Iterable[Graph]) -> list[Graph]:
    buckets: dict[tuple, list[Graph]] = defaultdict(list)
    out = []
    for g in graphs:
        bucket = buckets[invariant(g)]
        if any(is_isomorphic(g, h, max_n=64)[0] for h in bucket):
            continue
        bucket.append(g)
        out.append(g)
    return out


# --------------------------------------------------------------------------
# small-graph catalogues


def connected_graphs(max_edges: int) -> list[Graph]:
    """All connected graphs with 1..max_edges edges, one per isomorphism class."""
    if max_edges < 1:
        return []
    level = [complete(2)]
    out = list(level)
    for _ in range(2, max_edges + 1):
        grown = []
        for g in level:
            for u, v in combinations(range(g.n), 2):
                if not g.has_edge(u, v):
                    grown.append(Graph.from_edges(g.n, g.edges() + [(u, v)]))
            for v in range(g.n):
                grown.append(Graph.from_edges(g.n + 1, g.edges() + [(v, g.n)]))
        level = unique_up_to_isomorphism(grown)
        out.extend(level)
    return out


def graphs_without_isolated(max_edges: int) -> list[Graph]:
    """All graphs with 1..max_edges edges and no isolated vertex, up to isomorphism.

    Built as multisets of connected components, so no further
    isomorphism test is needed.
    """
    comps = connected_graphs(max_edges)
    comps.sort(key=lambda g: g.num_edges)
    out: list[Graph] = []

    def rec(start: int, budget: int, acc: list[Graph]):
        if acc:
            g = acc[0]
            for h in acc[1:]:
                g = compose(g, h)
            out.append(g)
        for i in range(start, len(comps)):
            c = comps[i]
            if c.num_edges > budget:
                break
            acc.append(c)
            rec(i, budget - c.num_edges, acc)
            acc.pop()

    rec(0, max_edges, [])
    return out


def labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on ``n`` vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pairs[i] for i in _bits(mask)))
