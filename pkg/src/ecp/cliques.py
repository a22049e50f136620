"""Cliques, clique partitions, and exact partition search.

A clique partition of a multigraph covers every vertex pair ``{u, v}``
exactly ``q(u, v)`` times, and covers each isolated vertex with a trivial
(single-vertex) clique.  The search engine branches on the
lexicographically smallest pair that is still under-covered; when the
same pair is branched on twice in a row (multiplicity > 1) the candidate
index may not decrease, which makes the enumeration duplicate-free.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

from .budget import Budget, resolve
from .errors import BudgetExceeded, DomainError, PreconditionError
from .graphs import Graph, Multigraph, as_multigraph, bits


def _normalize(cliques: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(c)) for c in cliques))


@dataclass(frozen=True)
class CliquePartition:
    """A multiset of cliques (stored sorted) together with its host."""

    cliques: tuple[tuple[int, ...], ...]
    host: Multigraph

    @classmethod
    def of(cls, host: Graph | Multigraph, cliques: Iterable[Sequence[int]]) -> "CliquePartition":
        return cls(_normalize(cliques), as_multigraph(host))

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.cliques]

    def to_dict(self) -> dict:
        return {"cliques": [list(c) for c in self.cliques]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, host: Graph | Multigraph, text: str) -> "CliquePartition":
        return cls.of(host, json.loads(text)["cliques"])


@dataclass(frozen=True)
class PartitionClass:
    tag: str  # single_clique | near_pencil | projective_plane | other
    order: int | None = None


@dataclass(frozen=True)
class Violation:
    kind: str  # "coverage", "isolated", "vertex"
    pair: tuple[int, int] | None = None
    count: int | None = None
    expected: int | None = None
    vertex: int | None = None

    def __str__(self) -> str:
        if self.kind == "coverage":
            return f"pair {self.pair} covered {self.count} times, multiplicity {self.expected}"
        if self.kind == "isolated":
            return f"isolated vertex {self.vertex} has no trivial clique"
        return f"bad clique member {self.vertex}"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    violation: Violation | None = None

    def __bool__(self) -> bool:
        return self.ok


def enumerate_cliques(g: Graph | Multigraph, min_size: int = 1) -> list[tuple[int, ...]]:
    """All cliques with at least ``min_size`` vertices, in lexicographic order."""
    if min_size < 1:
        raise DomainError("min_size must be at least 1")
    n = g.n
    nbr = [sum(1 << v for v in range(n) if v != u and g.q(u, v) > 0) for u in range(n)]
    out: list[tuple[int, ...]] = []

    def extend(current: list[int], cand: int):
        if len(current) >= min_size:
            out.append(tuple(current))
        for v in bits(cand):
            current.append(v)
            extend(current, cand & nbr[v] & ~((2 << v) - 1))
            current.pop()

    for v in range(n):
        extend([v], nbr[v] & ~((2 << v) - 1))
    return out


def is_clique_partition(host: Graph | Multigraph, cliques: Iterable[Sequence[int]]) -> Verdict:
    m = as_multigraph(host)
    n = m.n
    cover: dict[tuple[int, int], int] = {}
    in_trivial = set()
    for c in cliques:
        c = list(c)
        if not c or len(set(c)) != len(c):
            return Verdict(False, Violation("vertex", vertex=c[0] if c else None))
        for v in c:
            if not 0 <= v < n:
                return Verdict(False, Violation("vertex", vertex=v))
        if len(c) == 1:
            in_trivial.add(c[0])
        for u, v in combinations(sorted(c), 2):
            cover[(u, v)] = cover.get((u, v), 0) + 1
    for u in range(n):
        for v in range(u + 1, n):
            got = cover.get((u, v), 0)
            if got != m.q(u, v):
                return Verdict(False, Violation("coverage", (u, v), got, m.q(u, v)))
    for v in m.isolated_vertices():
        if v not in in_trivial:
            return Verdict(False, Violation("isolated", vertex=v))
    return Verdict(True)


class _PartitionSearch:
    """Depth-first search over clique partitions with a live size limit.

    ``limit`` may be lowered by the consumer between yields (branch and
    bound); it bounds the number of nontrivial cliques.
    """

    def __init__(self, host: Graph | Multigraph, nontrivial_only: bool, proper_only: bool, budget: Budget):
        m = as_multigraph(host)
        self.host = m
        self.budget = budget
        n = m.n
        isolated = m.isolated_vertices()
        if nontrivial_only and isolated:
            raise PreconditionError(f"nontrivial-only partition requested but vertices {isolated} are isolated")
        self.fixed = [(v,) for v in isolated]
        self.pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        pid = {p: i for i, p in enumerate(self.pairs)}
        self.residual = [m.q(u, v) for u, v in self.pairs]
        self.simple = all(r <= 1 for r in self.residual)
        cliques = [c for c in enumerate_cliques(m, 2) if not proper_only or len(c) <= n - 1]
        cliques.sort(key=lambda c: (-len(c), c))
        self.cliques = cliques
        self.cpairs = [[pid[p] for p in combinations(c, 2)] for c in cliques]
        self.cmask = [sum(1 << p for p in ps) for ps in self.cpairs]
        self.cnp = [len(ps) for ps in self.cpairs]
        self.cands: list[list[int]] = [[] for _ in self.pairs]
        for ci, ps in enumerate(self.cpairs):
            for p in ps:
                self.cands[p].append(ci)
        self.maxpairs = max(self.cnp, default=1)
        self.maxdeg = max((len(c) - 1 for c in cliques), default=1)
        self.vmask = [0] * n
        for i, (u, v) in enumerate(self.pairs):
            self.vmask[u] |= 1 << i
            self.vmask[v] |= 1 << i
        self.limit = 0

    def lower_bound(self, pos: int, remaining: int) -> int:
        lb = -(-remaining // self.maxpairs)
        if self.simple:
            d = self.maxdeg
            for vm in self.vmask:
                r = (pos & vm).bit_count()
                if r > lb * d:
                    lb = -(-r // d)
        return lb

    def run(self, limit: int) -> Iterator[list[int]]:
        """Yield lists of clique indices (nontrivial part only)."""
        self.limit = limit
        res = self.residual[:]
        pos = sum(1 << i for i, r in enumerate(res) if r)
        remaining = sum(res)
        chosen: list[int] = []
        tick = self.budget.tick
        cands, cmask, cpairs, cnp = self.cands, self.cmask, self.cpairs, self.cnp
        simple = self.simple

        def rec(pos: int, remaining: int, prev_pair: int, floor: int):
            tick()
            if not pos:
                yield chosen
                return
            if len(chosen) + self.lower_bound(pos, remaining) > self.limit:
                return
            p = (pos & -pos).bit_length() - 1
            start = floor if p == prev_pair else 0
            plist = cands[p]
            for k in range(start, len(plist)):
                c = plist[k]
                cm = cmask[c]
                if cm & pos != cm:
                    continue
                chosen.append(c)
                if simple:
                    yield from rec(pos ^ cm, remaining - cnp[c], p, k)
                else:
                    npos = pos
                    for q in cpairs[c]:
                        res[q] -= 1
                        if not res[q]:
                            npos &= ~(1 << q)
                    yield from rec(npos, remaining - cnp[c], p, k)
                    for q in cpairs[c]:
                        res[q] += 1
                chosen.pop()
                if len(chosen) + 1 > self.limit:
                    return

        if limit >= 0:
            yield from rec(pos, remaining, -1, 0)

    def partition(self, chosen: Sequence[int]) -> CliquePartition:
        return CliquePartition.of(self.host, [self.cliques[c] for c in chosen] + self.fixed)


def enumerate_partitions(
    host: Graph | Multigraph,
    max_size: int,
    nontrivial_only: bool = False,
    proper_only: bool = False,
    budget: Budget | int | None = None,
) -> Iterator[CliquePartition]:
    """Every valid partition with at most ``max_size`` cliques, each exactly once.

    Only the trivial cliques forced by isolated vertices are included;
    ``proper_only`` bars cliques spanning all ``n`` vertices.
    """
    if max_size < 1:
        raise DomainError("max_size must be at least 1")
    budget = resolve(budget)
    search = _PartitionSearch(host, nontrivial_only, proper_only, budget)
    count = 0
    try:
        for chosen in search.run(max_size - len(search.fixed)):
            count += 1
            yield search.partition(chosen)
    except BudgetExceeded as exc:
        raise BudgetExceeded(exc.limit, exc.nodes, count) from None


def cp_exact(
    host: Graph | Multigraph,
    nontrivial_only: bool = False,
    proper_only: bool = False,
    budget: Budget | int | None = None,
) -> int:
    return len(minimum_partition(host, nontrivial_only, proper_only, budget))


def minimum_partition(
    host: Graph | Multigraph,
    nontrivial_only: bool = False,
    proper_only: bool = False,
    budget: Budget | int | None = None,
) -> CliquePartition:
    """One partition of minimum size found by branch and bound."""
    budget = resolve(budget)
    search = _PartitionSearch(host, nontrivial_only, proper_only, budget)
    best = None
    gen = search.run(sum(search.residual))
    for chosen in gen:
        best = list(chosen)
        search.limit = len(best) - 1
    if best is None:
        raise DomainError("host admits no partition under the given restrictions")
    return search.partition(best)


def minimum_partitions(
    host: Graph | Multigraph,
    nontrivial_only: bool = False,
    proper_only: bool = False,
    budget: Budget | int | None = None,
) -> list[CliquePartition]:
    """All partitions of minimum size."""
    budget = resolve(budget)
    size = cp_exact(host, nontrivial_only, proper_only, budget)
    return [p for p in enumerate_partitions(host, size, nontrivial_only, proper_only, budget) if len(p) == size]


def is_complete_host(host: Multigraph) -> bool:
    return all(host.q(u, v) == 1 for u in range(host.n) for v in range(u + 1, host.n))


def classify_complete_partition(p: CliquePartition) -> PartitionClass:
    host = p.host
    n = host.n
    if not is_complete_host(host):
        raise PreconditionError("host is not a complete graph")
    verdict = is_clique_partition(host, p.cliques)
    if not verdict:
        raise PreconditionError(f"invalid partition: {verdict.violation}")
    if len(p) == 1:
        return PartitionClass("single_clique")
    sizes = sorted(p.sizes())
    if n >= 3 and sizes == [2] * (n - 1) + [n - 1]:
        return PartitionClass("near_pencil")
    from .linear_spaces import plane_order_of

    k = plane_order_of(n, p.cliques)
    if k is not None:
        return PartitionClass("projective_plane", k)
    return PartitionClass("other")


def edge_count_conserved(p: CliquePartition) -> bool:
    return sum(comb(len(c), 2) for c in p.cliques) == sum(
        p.host.q(u, v) for u in range(p.host.n) for v in range(u + 1, p.host.n)
    )
