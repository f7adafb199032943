"""Quasimetric functions into finite MVSs and the topologies they induce.

Point subsets are bitmasks: bit ``x`` is set when point ``x`` belongs to
the subset.  Open balls are ``B(x, m) = {y : f(x, y) ◁ m}`` for ``m != e``
and form a neighbourhood base at ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import FiniteMvs, commutativity_witness, mutual_order_congruence
from .errors import (
    BudgetExceeded,
    DomainMismatch,
    InvalidTopology,
    NeutralRadius,
    NotAQuasimetric,
    NotCommutative,
    PointSetMismatch,
)
from .morphisms import MvsMap, canonical_projection

DEFAULT_SEARCH_BUDGET = 2 ** 24
MAX_POINTS = 16


def mask(points: Iterable[int]) -> int:
    out = 0
    for p in points:
        out |= 1 << p
    return out


def members(m: int) -> frozenset[int]:
    return frozenset(i for i in range(m.bit_length()) if m >> i & 1)


@dataclass(frozen=True)
class QuasimetricReport:
    f1_holds: bool
    f2_holds: bool
    f3_holds: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def is_quasimetric(self) -> bool:
        return self.f1_holds and self.f2_holds

    def describe(self) -> str:
        parts = [f"{k} fails at {v}" for k, v in sorted(self.witnesses.items())]
        return "; ".join(parts) or "f1, f2, f3 hold"


@dataclass(frozen=True)
class QuasimetricTable:
    """A candidate function ``X × X -> M``; validity is checked on demand."""

    points: tuple[str, ...]
    mvs: FiniteMvs
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "values", tuple(tuple(int(v) for v in row) for row in self.values))
        n = len(self.points)
        if len(set(self.points)) != n:
            raise ValueError("point names must be distinct")
        if len(self.values) != n or any(len(row) != n for row in self.values):
            raise ValueError("value table not square")
        if any(not 0 <= v < self.mvs.size for row in self.values for v in row):
            raise ValueError("value outside the MVS carrier")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def symmetric(self) -> bool:
        return all(self.values[x][y] == self.values[y][x]
                   for x in range(self.n) for y in range(x + 1, self.n))


def check_quasimetric(q: QuasimetricTable) -> QuasimetricReport:
    """Flags for (f1) triangle inequality, (f2) zero diagonal and (f3) symmetry."""
    M, f, n = q.mvs, q.values, q.n
    w: dict[str, tuple] = {}
    f1 = next(((x, y, z) for x in range(n) for y in range(n) for z in range(n)
               if not M.leq(f[x][z], M.table[f[x][y]][f[y][z]])), None)
    if f1 is not None:
        w["f1"] = f1
    f2 = next((x for x in range(n) if f[x][x] != 0), None)
    if f2 is not None:
        w["f2"] = (f2,)
    f3 = next(((x, y) for x in range(n) for y in range(n) if f[x][y] != f[y][x]), None)
    if f3 is not None:
        w["f3"] = f3
    return QuasimetricReport("f1" not in w, "f2" not in w, "f3" not in w, w)


def require_quasimetric(q: QuasimetricTable) -> None:
    report = check_quasimetric(q)
    if not report.is_quasimetric:
        raise NotAQuasimetric(report)


def _ball_mask(q: QuasimetricTable, x: int, m: int) -> int:
    lt = q.mvs.lt
    row = q.values[x]
    return mask(y for y in range(q.n) if lt(row[y], m))


def open_ball(q: QuasimetricTable, x: int, m: int) -> frozenset[int]:
    if m == 0:
        raise NeutralRadius("ball radius must differ from the neutral element")
    return members(_ball_mask(q, x, m))


def balls(q: QuasimetricTable, x: int) -> list[int]:
    """Ball masks at ``x`` indexed by radius ``1 .. card(M)-1``."""
    return [_ball_mask(q, x, m) for m in q.mvs.nonzero]


@dataclass(frozen=True)
class FiniteTopology:
    points: tuple[str, ...]
    opens: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "opens", frozenset(self.opens))
        if len(self.points) > MAX_POINTS:
            raise InvalidTopology(f"at most {MAX_POINTS} points supported")
        full = (1 << self.n) - 1
        if 0 not in self.opens or full not in self.opens:
            raise InvalidTopology("must contain the empty set and the whole space")
        for u in self.opens:
            if u & ~full:
                raise InvalidTopology(f"open set {u:#b} has points outside the space")
        for u in self.opens:
            for v in self.opens:
                if u | v not in self.opens or u & v not in self.opens:
                    raise InvalidTopology("not closed under pairwise union and intersection")

    @property
    def n(self) -> int:
        return len(self.points)

    def open_sets(self) -> list[frozenset[int]]:
        return [members(u) for u in sorted(self.opens)]

    def minimal_neighbourhood(self, x: int) -> int:
        full = (1 << self.n) - 1
        out = full
        for u in self.opens:
            if u >> x & 1:
                out &= u
        return out

    @classmethod
    def discrete(cls, points: Sequence[str]) -> "FiniteTopology":
        return cls(tuple(points), frozenset(range(1 << len(points))))

    @classmethod
    def indiscrete(cls, points: Sequence[str]) -> "FiniteTopology":
        return cls(tuple(points), frozenset({0, (1 << len(points)) - 1}))


def _opens_from_balls(n: int, ball_lists: list[list[int]]) -> frozenset[int]:
    # U is open iff every x in U has some ball inside U
    opens = []
    for u in range(1 << n):
        if all(any(b & ~u == 0 for b in ball_lists[x]) for x in range(n) if u >> x & 1):
            opens.append(u)
    return frozenset(opens)


def induced_topology(q: QuasimetricTable) -> FiniteTopology:
    require_quasimetric(q)
    if q.n > MAX_POINTS:
        raise InvalidTopology(f"at most {MAX_POINTS} points supported")
    ball_lists = [sorted(set(balls(q, x))) for x in range(q.n)]
    return FiniteTopology(q.points, _opens_from_balls(q.n, ball_lists))


def ball_directedness_witness(q: QuasimetricTable) -> tuple[int, int, int] | None:
    """Least ``(x, m1, m2)`` with no ball at ``x`` inside ``B(x,m1) ∩ B(x,m2)``."""
    for x in range(q.n):
        bs = balls(q, x)
        for i, b1 in enumerate(bs):
            for j, b2 in enumerate(bs):
                meet = b1 & b2
                if not any(b & ~meet == 0 for b in bs):
                    return (x, i + 1, j + 1)
    return None


def all_neutral(points: Sequence[str], M: FiniteMvs) -> QuasimetricTable:
    n = len(points)
    return QuasimetricTable(tuple(points), M, tuple((0,) * n for _ in range(n)))


def canonical_quasimetric(M: FiniteMvs) -> QuasimetricTable:
    """On ``X = M``: ``f(m, n) = e`` if ``n ⊴ m``, else ``n``."""
    if not M.commutative:
        raise NotCommutative(commutativity_witness(M.table))
    leq = M.leq
    values = tuple(tuple(0 if leq(b, a) else b for b in M.elements) for a in M.elements)
    q = QuasimetricTable(M.names, M, values)
    require_quasimetric(q)
    return q


def _same_points(q1: QuasimetricTable, q2: QuasimetricTable) -> None:
    if q1.points != q2.points:
        raise PointSetMismatch(f"{q1.points} vs {q2.points}")


def is_finer(q2: QuasimetricTable, q1: QuasimetricTable) -> bool:
    """True when the topology of ``q1`` is contained in that of ``q2``."""
    _same_points(q1, q2)
    return induced_topology(q1).opens <= induced_topology(q2).opens


def are_equivalent(q1: QuasimetricTable, q2: QuasimetricTable) -> bool:
    _same_points(q1, q2)
    return induced_topology(q1).opens == induced_topology(q2).opens


def transform(h: MvsMap, q: QuasimetricTable) -> QuasimetricTable:
    """Pointwise composite ``h ∘ f``."""
    if q.mvs != h.domain:
        raise DomainMismatch("table values do not live in the domain of h")
    require_quasimetric(q)
    out = QuasimetricTable(q.points, h.codomain,
                           tuple(tuple(h.mapping[v] for v in row) for row in q.values))
    require_quasimetric(out)
    return out


def quotient_metrize(q: QuasimetricTable) -> QuasimetricTable:
    """Re-express ``q`` over the partially ordered quotient of its MVS.

    The MVS must be commutative; it is divided by the mutual-order
    congruence and the table pushed through the class map.  The induced
    topology is unchanged.
    """
    proj = canonical_projection(q.mvs, mutual_order_congruence(q.mvs))
    out = transform(proj, q)
    if not are_equivalent(q, out):
        raise AssertionError("quotient changed the induced topology")
    return out


def search_metrizable(
    T: FiniteTopology,
    M: FiniteMvs,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
    symmetric: bool = False,
) -> QuasimetricTable | None:
    """Find the lexicographically first quasimetric into ``M`` inducing ``T``.

    Off-diagonal cells are filled row-major with values in ascending id
    order.  Partial tables are cut when an (f1) triple with all three cells
    assigned fails, or when a completed row has its smallest ball outside
    the minimal open neighbourhood of that point in ``T``.  With
    ``symmetric`` only metric functions are considered.
    """
    n, k = T.n, M.size
    cells = [(x, y) for x in range(n) for y in range(n) if x != y and (not symmetric or x < y)]
    if k ** len(cells) > budget:
        raise BudgetExceeded(f"{k}^{len(cells)} candidate tables exceed budget {budget}")
    leq, lt, t = M.leq, M.lt, M.table
    f = [[0] * n for _ in range(n)]
    assigned = [[x == y for y in range(n)] for x in range(n)]
    minimal = [T.minimal_neighbourhood(x) for x in range(n)]
    last_cell_of_row = {}
    for idx, (x, y) in enumerate(cells):
        last_cell_of_row[x] = idx

    def triangle_ok(a: int, b: int) -> bool:
        # every triple reading cell (a, b) whose cells are all assigned
        for c in range(n):
            for (x, y, z) in ((a, b, c), (a, c, b), (c, a, b)):
                if assigned[x][z] and assigned[x][y] and assigned[y][z]:
                    if not leq(f[x][z], t[f[x][y]][f[y][z]]):
                        return False
        return True

    def row_ok(x: int) -> bool:
        row = f[x]
        smallest = mask(range(n))
        for m in M.nonzero:
            smallest &= mask(y for y in range(n) if lt(row[y], m))
        return smallest & ~minimal[x] == 0

    def place(x: int, y: int, v: int) -> None:
        f[x][y] = v
        assigned[x][y] = True
        if symmetric:
            f[y][x] = v
            assigned[y][x] = True

    def clear(x: int, y: int) -> None:
        assigned[x][y] = False
        if symmetric:
            assigned[y][x] = False

    def rows_done_ok(idx: int) -> bool:
        x, y = cells[idx]
        if symmetric:
            # row r is complete once all cells (r', r) with r' < r and (r, c) are placed
            done = [r for r in range(n) if all(assigned[r])]
            return all(row_ok(r) for r in done)
        return last_cell_of_row.get(x) != idx or row_ok(x)

    def extend(idx: int) -> bool:
        if idx == len(cells):
            q = QuasimetricTable(T.points, M, tuple(tuple(r) for r in f))
            return induced_topology(q).opens == T.opens
        x, y = cells[idx]
        for v in M.elements:
            place(x, y, v)
            ok = triangle_ok(x, y) and (not symmetric or triangle_ok(y, x))
            if ok and rows_done_ok(idx) and extend(idx + 1):
                return True
            clear(x, y)
        return False

    if n == 1 or not cells:
        q = all_neutral(T.points, M)
        return q if induced_topology(q).opens == T.opens else None
    if extend(0):
        return QuasimetricTable(T.points, M, tuple(tuple(r) for r in f))
    return None
