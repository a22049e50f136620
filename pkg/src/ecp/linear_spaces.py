"""Finite linear spaces, near-pencils and projective planes.

A linear space on ``n`` points is the same thing as a clique partition of
``K_n`` whose cliques have between 2 and ``n - 1`` vertices: points are
vertices and lines are cliques.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .budget import Budget, resolve
from .cliques import CliquePartition, enumerate_partitions
from .errors import BudgetExceeded, DomainError, ExistenceError
from .fields import GF, prime_power
from .graphs import _isomorphisms, complete

ENUM_MAX_POINTS = 7
KNOWN_NONEXISTENT = frozenset({6, 10})


@dataclass(frozen=True)
class LinearSpace:
    n: int
    lines: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, n: int, lines: Iterable[Iterable[int]]) -> "LinearSpace":
        return cls(n, tuple(sorted(tuple(sorted(l)) for l in lines)))

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    def point_degrees(self) -> list[int]:
        deg = [0] * self.n
        for line in self.lines:
            for x in line:
                deg[x] += 1
        return deg

    def to_partition(self) -> CliquePartition:
        return CliquePartition.of(complete(self.n), self.lines)

    @classmethod
    def from_partition(cls, p: CliquePartition) -> "LinearSpace":
        return cls.of(p.host.n, p.cliques)

    def to_dict(self) -> dict:
        return {"points": self.n, "lines": [list(l) for l in self.lines]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "LinearSpace":
        obj = json.loads(text)
        return cls.of(obj["points"], obj["lines"])

    def relabel(self, perm: Sequence[int]) -> "LinearSpace":
        return LinearSpace.of(self.n, ([perm[x] for x in l] for l in self.lines))


@dataclass(frozen=True)
class ProjectivePlane:
    space: LinearSpace
    order: int

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def lines(self):
        return self.space.lines


@dataclass(frozen=True)
class SpaceVerdict:
    valid: bool
    violations: tuple[tuple[str, object], ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def verify_linear_space(n: int, lines: Iterable[Iterable[int]], allow_trivial: bool = False) -> SpaceVerdict:
    """Check axioms L1-L3, reporting each violated axiom with one witness.

    With ``allow_trivial`` the single-line space (which breaks L3) passes.
    """
    lines = [tuple(sorted(l)) for l in lines]
    violations: list[tuple[str, object]] = []
    short = [l for l in lines if len(l) < 2]
    if short:
        violations.append(("L1", short[0]))
    count: dict[tuple[int, int], int] = {}
    for l in lines:
        for x in l:
            if not 0 <= x < n:
                violations.append(("points", x))
                return SpaceVerdict(False, tuple(violations))
        for pr in combinations(l, 2):
            count[pr] = count.get(pr, 0) + 1
    bad = [pr for pr in combinations(range(n), 2) if count.get(pr, 0) != 1]
    if bad:
        violations.append(("L2", bad[0]))
    long = [l for l in lines if len(l) > n - 1]
    if long and not (allow_trivial and len(lines) == 1):
        violations.append(("L3", long[0]))
    return SpaceVerdict(not violations, tuple(violations))


def near_pencil(n: int) -> LinearSpace:
    if n < 3:
        raise DomainError("a near-pencil needs at least 3 points")
    return LinearSpace.of(n, [tuple(range(1, n))] + [(0, i) for i in range(1, n)])


def plane_order_exists(k: int) -> str:
    """'yes' for prime powers, 'no' for 6 and 10, otherwise 'unknown'."""
    if k < 2:
        raise DomainError("plane orders start at 2")
    if k in KNOWN_NONEXISTENT:
        return "no"
    if prime_power(k) is not None:
        return "yes"
    return "unknown"


def _normalized_vectors(field: GF) -> list[tuple[int, int, int]]:
    q = field.q
    vecs = []
    for a in range(q):
        for b in range(q):
            vecs.append((1, a, b))
    for b in range(q):
        vecs.append((0, 1, b))
    vecs.append((0, 0, 1))
    return vecs


def projective_plane(k: int) -> ProjectivePlane:
    """PG(2, k): points are 1-dimensional subspaces of GF(k)^3, lines are
    the 2-dimensional ones (given by their normal vectors)."""
    status = plane_order_exists(k)
    if status != "yes":
        raise ExistenceError(k, status)
    try:
        field = GF(k)
    except DomainError:
        raise ExistenceError(k, "unsupported field") from None
    pts = _normalized_vectors(field)
    add, mul = field.add, field.mul
    lines = []
    for a in pts:
        line = []
        for i, x in enumerate(pts):
            dot = add(add(mul(a[0], x[0]), mul(a[1], x[1])), mul(a[2], x[2]))
            if dot == 0:
                line.append(i)
        lines.append(line)
    plane = ProjectivePlane(LinearSpace.of(len(pts), lines), k)
    problems = verify_projective_plane(plane)
    if problems:
        raise AssertionError(f"PG(2,{k}) construction failed: {problems}")
    return plane


def _has_quadrangle(n: int, lines: Sequence[Sequence[int]]) -> bool:
    line_of = {}
    for i, l in enumerate(lines):
        for pr in combinations(l, 2):
            line_of[pr] = i
    for quad in combinations(range(n), 4):
        # a < b < c, so (a, b) and (a, c) are both keys when L2 holds
        if all(
            line_of.get((a, b), -1) != line_of.get((a, c), -2)
            for a, b, c in combinations(quad, 3)
        ):
            return True
    return False


def verify_projective_plane(plane: ProjectivePlane) -> list[str]:
    """Return a list of failed invariants (empty when all hold)."""
    n, lines, k = plane.n, plane.lines, plane.order
    problems = []
    if not verify_linear_space(n, lines):
        problems.append("not a linear space")
    if n != k * k + k + 1:
        problems.append("point count")
    if len(lines) != n:
        problems.append("line count")
    if any(len(l) != k + 1 for l in lines):
        problems.append("line size")
    if any(d != k + 1 for d in LinearSpace(n, lines).point_degrees()):
        problems.append("point degree")
    sets = [set(l) for l in lines]
    if any(len(a & b) != 1 for a, b in combinations(sets, 2)):
        problems.append("P1")
    if not _has_quadrangle(n, lines):
        problems.append("P2")
    return problems


def plane_order_of(n: int, lines: Sequence[Sequence[int]]) -> int | None:
    """Order ``k`` if the lines on ``n`` points form a projective plane, else None."""
    k = 2
    while k * k + k + 1 < n:
        k += 1
    if k * k + k + 1 != n:
        return None
    plane = ProjectivePlane(LinearSpace.of(n, lines), k)
    return None if verify_projective_plane(plane) else k


def fano_lines() -> list[tuple[int, ...]]:
    """The seven lines abc, cde, afe, agd, bge, fgc, bdf with a..g -> 0..6."""
    names = ["abc", "cde", "afe", "agd", "bge", "fgc", "bdf"]
    return [tuple(sorted("abcdefg".index(ch) for ch in line)) for line in names]


def delete_point(plane: ProjectivePlane | LinearSpace, x: int) -> LinearSpace:
    """Remove point ``x`` from every line; remaining points are renumbered in order."""
    space = plane.space if isinstance(plane, ProjectivePlane) else plane
    if not 0 <= x < space.n:
        raise DomainError(f"point {x} not in the space")
    shift = lambda p: p - (p > x)
    return LinearSpace.of(space.n - 1, ([shift(p) for p in l if p != x] for l in space.lines))


def incidence_matrix(space: LinearSpace) -> tuple[tuple[int, ...], ...]:
    """Point/line incidence graph as a colored weight matrix (points 1, lines 2 on the diagonal)."""
    n, m = space.n, len(space.lines)
    w = [[0] * (n + m) for _ in range(n + m)]
    for i in range(n):
        w[i][i] = 1
    for j, line in enumerate(space.lines):
        w[n + j][n + j] = 2
        for x in line:
            w[x][n + j] = w[n + j][x] = 1
    return tuple(tuple(r) for r in w)


def isomorphic_spaces(a: LinearSpace, b: LinearSpace) -> tuple[bool, tuple[int, ...] | None]:
    """Incidence isomorphism test; the witness maps points of ``a`` to points of ``b``."""
    if a.n != b.n or len(a.lines) != len(b.lines) or sorted(map(len, a.lines)) != sorted(map(len, b.lines)):
        return False, None
    for perm in _isomorphisms(incidence_matrix(a), incidence_matrix(b)):
        return True, perm[: a.n]
    return False, None


def point_automorphisms(space: LinearSpace) -> list[tuple[int, ...]]:
    w = incidence_matrix(space)
    return [p[: space.n] for p in _isomorphisms(w, w)]


def canonical_space(space: LinearSpace) -> LinearSpace:
    """Lexicographically least relabeling over all point permutations."""
    return min((space.relabel(p) for p in permutations(range(space.n))), key=lambda s: s.lines)


def enumerate_linear_spaces(
    n: int, l: int, budget: Budget | int | None = None, labeled: bool = False
) -> list[LinearSpace]:
    """All linear spaces with ``n`` points and exactly ``l`` lines.

    One canonical representative per isomorphism class, or every labeled
    space when ``labeled`` is set.
    """
    if n > ENUM_MAX_POINTS:
        raise BudgetExceeded(ENUM_MAX_POINTS, n)
    if n < 3 or l < 1:
        return []
    budget = resolve(budget)
    found = [
        LinearSpace.from_partition(p)
        for p in enumerate_partitions(complete(n), l, nontrivial_only=True, proper_only=True, budget=budget)
        if len(p) == l
    ]
    if labeled:
        return sorted(found, key=lambda s: s.lines)
    reps: list[LinearSpace] = []
    for s in found:
        if not any(isomorphic_spaces(s, r)[0] for r in reps):
            reps.append(s)
    return sorted((canonical_space(r) for r in reps), key=lambda s: s.lines)


@dataclass(frozen=True)
class BridgesClass:
    tag: str  # truncated_plane | n5_exception | other
    order: int | None = None


def bridges_classify(s: LinearSpace) -> BridgesClass:
    if not verify_linear_space(s.n, s.lines):
        raise DomainError("not a linear space")
    if len(s.lines) != s.n + 1:
        raise DomainError(f"expected n + 1 = {s.n + 1} lines, got {len(s.lines)}")
    if s.n == 5:
        census = enumerate_linear_spaces(5, 6)
        if any(isomorphic_spaces(s, c)[0] for c in census):
            return BridgesClass("n5_exception")
        return BridgesClass("other")
    k = 2
    while k * k + k < s.n:
        k += 1
    if k * k + k == s.n and plane_order_exists(k) == "yes":
        try:
            truncated = delete_point(projective_plane(k), 0)
        except ExistenceError:
            return BridgesClass("other")
        if isomorphic_spaces(s, truncated)[0]:
            return BridgesClass("truncated_plane", k)
    return BridgesClass("other")
