"""Set representations of graphs and their correspondence with clique partitions.

Every representation splits uniquely into its non-monopolized part, which
is the image of a clique partition without trivial cliques, and a number
of fresh monopolized elements per vertex.  Fresh elements never create
intersections, so the minimum over representations of a given kind is the
minimum over partitions ``Q`` of ``|Q|`` plus the cheapest augmentation
that gives ``F(Q)`` that kind.  Augmentation costs have closed forms:

* family: sets ``S'_u = S'_v`` only if ``S_u = S_v`` and neither vertex
  received an addition, so each class of ``c`` equal sets needs ``c - 1``
  additions;
* antichain: ``S'_v`` is contained in ``S'_u`` exactly when ``v`` received
  nothing and ``S_v`` is contained in ``S_u``, so every dominated vertex
  needs one addition and that suffices;
* uniform: all sets are padded to a common size ``c``; the smallest
  admissible ``c`` is the largest base size, or one more when two
  largest sets coincide.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .budget import Budget, resolve
from .cliques import CliquePartition, _PartitionSearch, is_clique_partition
from .errors import CoverageError, DegenerateVertexError, DomainError
from .graphs import Graph, Multigraph, as_multigraph, automorphisms, bits


class RepKind(str, Enum):
    MULTIFAMILY = "multifamily"
    FAMILY = "family"
    ANTICHAIN = "antichain"
    UNIFORM = "uniform"

    @classmethod
    def parse(cls, text: "str | RepKind") -> "RepKind":
        if isinstance(text, RepKind):
            return text
        short = {"m": cls.MULTIFAMILY, "f": cls.FAMILY, "a": cls.ANTICHAIN, "u": cls.UNIFORM}
        if text in short:
            return short[text]
        return cls(text)


KIND_ORDER = (RepKind.MULTIFAMILY, RepKind.FAMILY, RepKind.ANTICHAIN, RepKind.UNIFORM)


@dataclass(frozen=True)
class SetFamily:
    """Vertex-indexed list of nonempty sets of integer elements.

    The ground set is the union of the sets, so every element occurs in
    at least one set.
    """

    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        for v, s in enumerate(self.sets):
            if not s:
                raise DomainError(f"set of vertex {v} is empty")

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(tuple(frozenset(s) for s in sets))

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def ground(self) -> list[int]:
        out = set()
        for s in self.sets:
            out |= s
        return sorted(out)

    @property
    def p(self) -> int:
        return len(self.ground)

    def columns(self) -> dict[int, frozenset[int]]:
        """Element -> set of vertices whose set contains it."""
        cols: dict[int, set[int]] = defaultdict(set)
        for v, s in enumerate(self.sets):
            for e in s:
                cols[e].add(v)
        return {e: frozenset(c) for e, c in sorted(cols.items())}

    def compact(self) -> "SetFamily":
        relabel = {e: i for i, e in enumerate(self.ground)}
        return SetFamily.of({relabel[e] for e in s} for s in self.sets)

    def relabel_key(self) -> tuple[int, ...]:
        """Invariant under renaming of elements: the sorted multiset of columns."""
        return tuple(sorted(sum(1 << v for v in col) for col in self.columns().values()))

    def to_dict(self) -> dict:
        c = self.compact()
        return {"ground": c.p, "sets": [sorted(s) for s in c.sets]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "SetFamily":
        obj = json.loads(text)
        fam = cls.of(obj["sets"])
        if "ground" in obj and any(not 0 <= e < obj["ground"] for e in fam.ground):
            raise DomainError("element outside the declared ground set")
        return fam


@dataclass(frozen=True)
class AugmentationPlan:
    """A base partition plus a count of fresh monopolized elements per vertex."""

    base: CliquePartition
    additions: tuple[int, ...]

    @property
    def ground_size(self) -> int:
        return len(self.base) + sum(self.additions)

    def family(self) -> SetFamily:
        sets = [set() for _ in range(self.base.host.n)]
        for k, clique in enumerate(self.base.cliques):
            for v in clique:
                sets[v].add(k)
        nxt = len(self.base)
        for v, a in enumerate(self.additions):
            sets[v].update(range(nxt, nxt + a))
            nxt += a
        return SetFamily.of(sets)

    def to_dict(self) -> dict:
        return {"base": self.base.to_dict()["cliques"], "additions": list(self.additions)}


# --------------------------------------------------------------------------
# the correspondence


def intersection_multigraph(f: SetFamily) -> Multigraph:
    n = f.n
    return Multigraph(
        n, tuple(tuple(0 if u == v else len(f.sets[u] & f.sets[v]) for v in range(n)) for u in range(n))
    )


def rep_from_partition(q: CliquePartition) -> SetFamily:
    """Element ``k`` stands for clique ``k``; vertex ``v`` gets ``{k : v in Q_k}``."""
    sets = [set() for _ in range(q.host.n)]
    for k, clique in enumerate(q.cliques):
        for v in clique:
            sets[v].add(k)
    missing = [v for v, s in enumerate(sets) if not s]
    if missing:
        raise CoverageError(missing)
    return SetFamily.of(sets)


def partition_from_rep(f: SetFamily) -> CliquePartition:
    """One clique per element: the vertices whose sets contain it."""
    host = intersection_multigraph(f)
    return CliquePartition.of(host, f.columns().values())


def monopolized_elements(f: SetFamily) -> set[int]:
    return {e for e, col in f.columns().items() if len(col) == 1}


def remove_monopolized(f: SetFamily) -> SetFamily:
    mono = monopolized_elements(f)
    empty = [v for v, s in enumerate(f.sets) if s <= mono]
    if empty:
        raise DegenerateVertexError(empty)
    return SetFamily.of(s - mono for s in f.sets).compact()


def classify(f: SetFamily) -> frozenset[RepKind]:
    flags = {RepKind.MULTIFAMILY}
    sets = f.sets
    if len(set(sets)) == len(sets):
        flags.add(RepKind.FAMILY)
        if not any(a <= b for i, a in enumerate(sets) for j, b in enumerate(sets) if i != j):
            flags.add(RepKind.ANTICHAIN)
        if len({len(s) for s in sets}) <= 1:
            flags.add(RepKind.UNIFORM)
    return frozenset(flags)


def _cost(masks: Sequence[int], kind: RepKind) -> tuple[int, list[int]]:
    """Minimum fresh additions per vertex for the family of bitmask sets."""
    n = len(masks)
    add = [0] * n
    if kind is RepKind.MULTIFAMILY:
        return 0, add
    if kind is RepKind.FAMILY:
        seen: dict[int, int] = {}
        for v, s in enumerate(masks):
            if s in seen:
                add[v] = 1
            else:
                seen[s] = v
        return sum(add), add
    if kind is RepKind.ANTICHAIN:
        for v, s in enumerate(masks):
            if any(u != v and s & t == s for u, t in enumerate(masks)):
                add[v] = 1
        return sum(add), add
    sizes = [s.bit_count() for s in masks]
    c = max(sizes, default=0)
    top = [s for s, k in zip(masks, sizes) if k == c]
    if len(set(top)) != len(top):
        c += 1
    add = [c - k for k in sizes]
    return sum(add), add


def augmentation_cost(base: SetFamily, kind: RepKind | str) -> tuple[int, AugmentationPlan]:
    kind = RepKind.parse(kind)
    compact = base.compact()
    masks = [sum(1 << e for e in s) for s in compact.sets]
    cost, add = _cost(masks, kind)
    plan = AugmentationPlan(partition_from_rep(compact), tuple(add))
    return cost, plan


# --------------------------------------------------------------------------
# exact intersection numbers


def _vertex_masks(search: _PartitionSearch, chosen: Sequence[int], n: int) -> list[int]:
    masks = [0] * n
    k = 0
    for c in chosen:
        for v in search.cliques[c]:
            masks[v] |= 1 << k
        k += 1
    for (v,) in search.fixed:
        masks[v] |= 1 << k
        k += 1
    return masks


def omega_exact(g: Graph | Multigraph, kind: RepKind | str, budget: Budget | int | None = None) -> int:
    """Minimum ground-set size over representations of the given kind."""
    kind = RepKind.parse(kind)
    budget = resolve(budget)
    m = as_multigraph(g)
    search = _PartitionSearch(m, False, False, budget)
    nfixed = len(search.fixed)
    best = None
    for chosen in search.run(sum(search.residual)):
        cost, _ = _cost(_vertex_masks(search, chosen, m.n), kind)
        total = len(chosen) + nfixed + cost
        if best is None or total < best:
            best = total
            search.limit = best - nfixed - 1
    return best if best is not None else 0


@dataclass(frozen=True)
class MinReps:
    """All minimum representations of one kind.

    ``plans`` holds one plan per minimum base partition; plans differing
    only by which of several identical base sets receive the fresh
    elements are the same plan.  ``classes`` are representatives of the
    coarser equivalence that also applies graph automorphisms.
    """

    kind: RepKind
    omega: int
    plans: tuple[AugmentationPlan, ...]
    classes: tuple[AugmentationPlan, ...]

    @property
    def count_plan(self) -> int:
        return len(self.plans)

    @property
    def count_iso(self) -> int:
        return len(self.classes)

    def families(self) -> list[SetFamily]:
        return [p.family() for p in self.plans]


def _iso_key(columns: Sequence[int], autos: Sequence[Sequence[int]]) -> tuple[int, ...]:
    best = None
    for perm in autos:
        key = tuple(sorted(sum(1 << perm[v] for v in bits(col)) for col in columns))
        if best is None or key < best:
            best = key
    return best


def enumerate_min_reps(g: Graph | Multigraph, kind: RepKind | str, budget: Budget | int | None = None) -> MinReps:
    kind = RepKind.parse(kind)
    budget = resolve(budget)
    m = as_multigraph(g)
    omega = omega_exact(m, kind, budget)
    search = _PartitionSearch(m, False, False, budget)
    nfixed = len(search.fixed)
    plans = []
    for chosen in search.run(omega - nfixed):
        masks = _vertex_masks(search, chosen, m.n)
        cost, add = _cost(masks, kind)
        if len(chosen) + nfixed + cost == omega:
            plans.append(AugmentationPlan(search.partition(chosen), tuple(add)))
    plans.sort(key=lambda p: (p.base.cliques, p.additions))
    autos = automorphisms(m)
    classes: dict[tuple, AugmentationPlan] = {}
    for plan in plans:
        fam = plan.family()
        cols = [sum(1 << v for v in col) for col in fam.columns().values()]
        classes.setdefault(_iso_key(cols, autos), plan)
    return MinReps(kind, omega, tuple(plans), tuple(classes.values()))


def is_uniquely_intersectable(
    g: Graph | Multigraph, kind: RepKind | str, counting: str = "iso", budget: Budget | int | None = None
) -> bool:
    """Uniqueness of the minimum representation.

    ``counting="iso"`` identifies representations related by element
    renaming and graph automorphisms; ``"plan"`` keeps vertex labels fixed.
    """
    reps = enumerate_min_reps(g, kind, budget)
    if counting == "iso":
        return reps.count_iso == 1
    if counting == "plan":
        return reps.count_plan == 1
    raise DomainError(f"unknown counting {counting!r}")


# --------------------------------------------------------------------------
# independent oracle


def omega_brute_force(
    g: Graph | Multigraph, kind: RepKind | str, max_p: int, budget: Budget | int | None = None
) -> int | None:
    """Smallest ground size ``p <= max_p`` admitting a representation, by
    direct search over set assignments; None if there is none.

    Vertices receive sets one at a time.  Elements that so far lie in the
    same vertex sets are interchangeable, so only how many of each such
    class a new set takes matters, and unused elements are taken in order.
    """
    kind = RepKind.parse(kind)
    budget = resolve(budget)
    m = as_multigraph(g)
    n = m.n
    if n == 0:
        return 0
    order = _search_order(m)
    for p in range(1, max_p + 1):
        if _assignable(m, order, kind, p, budget):
            return p
    return None


def _search_order(m: Multigraph) -> list[int]:
    n = m.n
    deg = [sum(1 for u in range(n) if m.q(u, v)) for v in range(n)]
    order: list[int] = []
    left = set(range(n))
    while left:
        v = max(left, key=lambda x: (sum(1 for u in order if m.q(u, x)), deg[x], -x))
        order.append(v)
        left.remove(v)
    return order


def _assignable(m: Multigraph, order: list[int], kind: RepKind, p: int, budget: Budget) -> bool:
    n = len(order)
    sets: list[int] = []  # element bitmask per placed position
    cols: list[int] = []  # placed-position bitmask per element

    def fits(s: int, i: int) -> bool:
        if kind is RepKind.MULTIFAMILY:
            return True
        for t in sets:
            if s == t:
                return False
            if kind is RepKind.ANTICHAIN and (s & t == s or s & t == t):
                return False
        if kind is RepKind.UNIFORM and sets and s.bit_count() != sets[0].bit_count():
            return False
        return True

    def place(i: int) -> bool:
        budget.tick()
        if i == n:
            return True
        v = order[i]
        need = [m.q(order[j], v) for j in range(i)]
        groups: dict[int, list[int]] = defaultdict(list)
        for e, col in enumerate(cols):
            groups[col].append(e)
        glist = list(groups.items())
        cap = [[0] * i for _ in range(len(glist) + 1)]
        for gi in range(len(glist) - 1, -1, -1):
            col, elems = glist[gi]
            row = cap[gi + 1][:]
            for j in bits(col):
                row[j] += len(elems)
            cap[gi] = row
        used = len(cols)
        take = [0] * len(glist)

        def choose(gi: int, rem: list[int]) -> bool:
            if gi == len(glist):
                if any(rem):
                    return False
                chosen = 0
                for (col, elems), c in zip(glist, take):
                    for e in elems[:c]:
                        chosen |= 1 << e
                if kind is RepKind.UNIFORM and sets:
                    fresh_opts = [sets[0].bit_count() - chosen.bit_count()]
                else:
                    fresh_opts = range(0, p - used + 1)
                for f in fresh_opts:
                    if f < 0 or used + f > p:
                        continue
                    s = chosen | (((1 << f) - 1) << used)
                    if not s or not fits(s, i):
                        continue
                    for e in bits(chosen):
                        cols[e] |= 1 << i
                    cols.extend([1 << i] * f)
                    sets.append(s)
                    ok = place(i + 1)
                    sets.pop()
                    del cols[used:]
                    for e in bits(chosen):
                        cols[e] &= ~(1 << i)
                    if ok:
                        return True
                return False
            col, elems = glist[gi]
            members = bits(col)
            for c in range(len(elems) + 1):
                nrem = rem[:]
                ok = True
                for j in members:
                    nrem[j] -= c
                    if nrem[j] < 0:
                        ok = False
                if not ok:
                    break
                if any(nrem[j] > cap[gi + 1][j] for j in range(i)):
                    continue
                take[gi] = c
                if choose(gi + 1, nrem):
                    return True
            take[gi] = 0
            return False

        if any(need[j] > cap[0][j] for j in range(i)):
            return False
        return choose(0, need)

    return place(0)
