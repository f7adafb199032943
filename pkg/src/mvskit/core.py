"""Finite metric value sets given by operation tables.

A metric value set (MVS) is a finite set with an associative operation that
has a neutral element ``e`` (M2), no nontrivial decomposition of ``e`` (M3)
and a common left divisor for every pair of non-neutral elements (M4).
Elements are plain integer ids; after validation id 0 is always ``e``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    AxiomViolation,
    NeutralClassNotTrivial,
    NotACongruence,
    NotASubMvs,
    NotCommutative,
    SizeExceeded,
)

MAX_CARRIER = 64

Table = tuple[tuple[int, ...], ...]


def _freeze(table: Iterable[Iterable[int]]) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


@dataclass(frozen=True)
class RawTable:
    """An unchecked finite magma: ``table[i][j]`` is the id of ``i + j``."""

    names: tuple[str, ...]
    table: Table

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "table", _freeze(self.table))
        n = len(self.names)
        if len(set(self.names)) != n or any(not name for name in self.names):
            raise ValueError("element names must be distinct and nonempty")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("table not square")
        for row in self.table:
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"table entry {v} out of range")

    @property
    def size(self) -> int:
        return len(self.names)

    @classmethod
    def from_function(cls, names: Sequence[str], op) -> "RawTable":
        """Build a table from ``op(i, j) -> id``."""
        n = len(names)
        return cls(tuple(names), tuple(tuple(op(i, j) for j in range(n)) for i in range(n)))


@dataclass(frozen=True)
class AxiomReport:
    card_ok: bool
    m1_holds: bool
    m2_holds: bool
    m3_holds: bool
    m4_holds: bool
    witnesses: dict = field(default_factory=dict)
    neutral: int | None = None

    @property
    def ok(self) -> bool:
        return self.card_ok and self.m1_holds and self.m2_holds and self.m3_holds and self.m4_holds

    def failed_axioms(self) -> list[str]:
        flags = [("card", self.card_ok), ("M1", self.m1_holds), ("M2", self.m2_holds),
                 ("M3", self.m3_holds), ("M4", self.m4_holds)]
        return [name for name, holds in flags if not holds]


def _associativity_witness(t: Table) -> tuple[int, int, int] | None:
    n = len(t)
    for a in range(n):
        ta = t[a]
        for b in range(n):
            tab = t[ta[b]]
            tb = t[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    return (a, b, c)
    return None


def _neutral_candidates(t: Table) -> list[int]:
    n = len(t)
    ident = tuple(range(n))
    return [e for e in range(n) if t[e] == ident and all(t[x][e] == x for x in range(n))]


def _right_multiples(t: Table) -> list[set[int]]:
    # row m as a set: every n with m ⊴ n
    return [set(row) for row in t]


def check_axioms(raw: RawTable) -> AxiomReport:
    """Exhaustively check (M1)-(M4) and the cardinality condition.

    Witnesses are the lexicographically smallest failing tuples.  (M3) and
    (M4) need a neutral element; without one they are reported as failing
    with an empty witness.
    """
    t = raw.table
    n = raw.size
    witnesses: dict[str, tuple] = {}

    card_ok = n >= 2
    if not card_ok:
        witnesses["card"] = (n,)

    assoc = _associativity_witness(t)
    if assoc is not None:
        witnesses["M1"] = assoc

    candidates = _neutral_candidates(t)
    neutral = candidates[0] if candidates else None
    if neutral is None:
        # for each candidate i, the smallest x refuting i as neutral
        witnesses["M2"] = tuple(
            next(x for x in range(n) if t[i][x] != x or t[x][i] != x) for i in range(n)
        )
        witnesses["M3"] = ()
        witnesses["M4"] = ()
    else:
        e = neutral
        m3 = next(((a, b) for a in range(n) for b in range(n)
                   if t[a][b] == e and (a != e or b != e)), None)
        if m3 is not None:
            witnesses["M3"] = m3
        mult = _right_multiples(t)
        divisors = [mult[c] for c in range(n) if c != e]
        nonzero = [m for m in range(n) if m != e]
        m4 = next(((a, b) for a in nonzero for b in nonzero
                   if not any(a in d and b in d for d in divisors)), None)
        if m4 is not None:
            witnesses["M4"] = m4

    return AxiomReport(
        card_ok=card_ok,
        m1_holds="M1" not in witnesses,
        m2_holds="M2" not in witnesses,
        m3_holds="M3" not in witnesses,
        m4_holds="M4" not in witnesses,
        witnesses=witnesses,
        neutral=neutral,
    )


@dataclass(frozen=True)
class ElemRelation:
    """A binary relation on ``range(size)`` stored as a boolean matrix."""

    size: int
    bits: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(tuple(bool(b) for b in row) for row in self.bits))
        if len(self.bits) != self.size or any(len(row) != self.size for row in self.bits):
            raise ValueError("relation matrix must be size x size")

    @classmethod
    def from_predicate(cls, size: int, pred) -> "ElemRelation":
        return cls(size, tuple(tuple(pred(i, j) for j in range(size)) for i in range(size)))

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]]) -> "ElemRelation":
        s = set(pairs)
        return cls.from_predicate(size, lambda i, j: (i, j) in s)

    @classmethod
    def identity(cls, size: int) -> "ElemRelation":
        return cls.from_predicate(size, lambda i, j: i == j)

    @classmethod
    def from_classes(cls, size: int, classes: Iterable[Iterable[int]]) -> "ElemRelation":
        label = list(range(size))
        for k, cl in enumerate(classes):
            for m in cl:
                label[m] = size + k
        return cls.from_predicate(size, lambda i, j: label[i] == label[j])

    @classmethod
    def from_labels(cls, labels: Sequence) -> "ElemRelation":
        return cls.from_predicate(len(labels), lambda i, j: labels[i] == labels[j])

    def __contains__(self, pair) -> bool:
        i, j = pair
        return self.bits[i][j]

    def __call__(self, i: int, j: int) -> bool:
        return self.bits[i][j]

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.size) for j in range(self.size) if self.bits[i][j]]

    def is_reflexive(self) -> bool:
        return all(self.bits[i][i] for i in range(self.size))

    def is_symmetric(self) -> bool:
        return all(self.bits[i][j] == self.bits[j][i]
                   for i in range(self.size) for j in range(i + 1, self.size))

    def is_transitive(self) -> bool:
        b = self.bits
        r = range(self.size)
        return all(b[i][k] for i in r for j in r if b[i][j] for k in r if b[j][k])

    def is_equivalence(self) -> bool:
        return self.is_reflexive() and self.is_symmetric() and self.is_transitive()

    def is_subset(self, other: "ElemRelation") -> bool:
        return all(other.bits[i][j] for i, j in self.pairs())

    def class_of(self, m: int) -> frozenset[int]:
        return frozenset(j for j in range(self.size) if self.bits[m][j])

    def classes(self) -> list[tuple[int, ...]]:
        """Equivalence classes ordered by smallest member (equivalences only)."""
        seen: set[int] = set()
        out = []
        for m in range(self.size):
            if m not in seen:
                cl = tuple(sorted(self.class_of(m)))
                seen.update(cl)
                out.append(cl)
        return out


def _leq_relation(t: Table) -> ElemRelation:
    mult = _right_multiples(t)
    return ElemRelation.from_predicate(len(t), lambda a, b: b in mult[a])


def _lt_relation(t: Table) -> ElemRelation:
    n = len(t)
    strict = [set(t[a][k] for k in range(1, n)) for a in range(n)]
    return ElemRelation.from_predicate(n, lambda a, b: b in strict[a])


@dataclass(frozen=True)
class FiniteMvs:
    """A validated metric value set whose neutral element is id 0.

    Use :func:`validate` to build one from an arbitrary :class:`RawTable`;
    the constructor itself re-checks every axiom.
    """

    names: tuple[str, ...]
    table: Table
    leq: ElemRelation = field(init=False, repr=False, compare=False)
    lt: ElemRelation = field(init=False, repr=False, compare=False)
    commutative: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        raw = RawTable(self.names, self.table)
        object.__setattr__(self, "names", raw.names)
        object.__setattr__(self, "table", raw.table)
        report = check_axioms(raw)
        if not report.ok:
            raise AxiomViolation(report)
        if report.neutral != 0:
            raise ValueError("neutral element must have id 0; use validate() to relabel")
        object.__setattr__(self, "leq", _leq_relation(raw.table))
        object.__setattr__(self, "lt", _lt_relation(raw.table))
        object.__setattr__(self, "commutative", commutativity_witness(raw.table) is None)

    neutral = 0

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(len(self.names))

    @property
    def nonzero(self) -> range:
        return range(1, len(self.names))

    def add(self, a: int, b: int) -> int:
        return self.table[a][b]

    def sum(self, terms: Iterable[int]) -> int:
        acc = 0
        for m in terms:
            acc = self.table[acc][m]
        return acc

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown element {name!r}") from None

    def raw(self) -> RawTable:
        return RawTable(self.names, self.table)


def commutativity_witness(t: Table) -> tuple[int, int] | None:
    n = len(t)
    return next(((a, b) for a in range(n) for b in range(a + 1, n) if t[a][b] != t[b][a]), None)


def validate(raw: RawTable, max_size: int = MAX_CARRIER) -> FiniteMvs:
    """Check the axioms and return the MVS with its neutral element moved to id 0.

    The remaining elements keep their relative order.
    """
    if raw.size > max_size:
        raise SizeExceeded(f"carrier has {raw.size} elements, cap is {max_size}")
    report = check_axioms(raw)
    if not report.ok:
        raise AxiomViolation(report)
    e = report.neutral
    order = [e] + [m for m in range(raw.size) if m != e]
    pos = {old: new for new, old in enumerate(order)}
    table = tuple(tuple(pos[raw.table[a][b]] for b in order) for a in order)
    return FiniteMvs(tuple(raw.names[m] for m in order), table)


def relabel(M: FiniteMvs, perm: Sequence[int], names: Sequence[str] | None = None) -> FiniteMvs:
    """Isomorphic copy of ``M`` where old id ``m`` becomes ``perm[m]`` (``perm[0]`` must be 0)."""
    n = M.size
    if sorted(perm) != list(range(n)) or perm[0] != 0:
        raise ValueError("perm must be a permutation fixing 0")
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    table = tuple(tuple(perm[M.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
    if names is None:
        names = tuple(M.names[inv[a]] for a in range(n))
    return FiniteMvs(tuple(names), table)


class OrderClass(enum.Enum):
    NOT_ANTISYMMETRIC = "not antisymmetric"
    PARTIALLY_ORDERED = "partially ordered"
    TOTALLY_ORDERED = "totally ordered"


def antisymmetry_witness(M: FiniteMvs) -> tuple[int, int] | None:
    """Smallest pair ``m < n`` with ``m ⊴ n`` and ``n ⊴ m``."""
    leq = M.leq
    return next(((a, b) for a in M.elements for b in range(a + 1, M.size)
                 if leq(a, b) and leq(b, a)), None)


def order_class(M: FiniteMvs) -> OrderClass:
    if antisymmetry_witness(M) is not None:
        return OrderClass.NOT_ANTISYMMETRIC
    leq = M.leq
    total = all(leq(a, b) or leq(b, a) for a in M.elements for b in M.elements)
    return OrderClass.TOTALLY_ORDERED if total else OrderClass.PARTIALLY_ORDERED


@dataclass(frozen=True)
class CongruenceCheck:
    holds: bool
    reason: str = ""
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_congruence(M: FiniteMvs | RawTable, R: ElemRelation) -> CongruenceCheck:
    """Check that ``R`` is an equivalence compatible with the operation.

    On failure the witness is the smallest reflexivity, symmetry or
    transitivity counterexample, or else the lexicographically smallest
    ``(m, m', n, n')`` with ``m R m'``, ``n R n'`` but not ``(m+n) R (m'+n')``.
    """
    n = len(M.table)
    if R.size != n:
        return CongruenceCheck(False, "size mismatch", (R.size, n))
    b = R.bits
    for i in range(n):
        if not b[i][i]:
            return CongruenceCheck(False, "not reflexive", (i,))
    for i in range(n):
        for j in range(n):
            if b[i][j] and not b[j][i]:
                return CongruenceCheck(False, "not symmetric", (i, j))
    for i in range(n):
        for j in range(n):
            if b[i][j]:
                for k in range(n):
                    if b[j][k] and not b[i][k]:
                        return CongruenceCheck(False, "not transitive", (i, j, k))
    t = M.table
    related = [[j for j in range(n) if b[i][j]] for i in range(n)]
    for m in range(n):
        for m2 in related[m]:
            for k in range(n):
                for k2 in related[k]:
                    if not b[t[m][k]][t[m2][k2]]:
                        return CongruenceCheck(False, "not compatible with +", (m, m2, k, k2))
    return CongruenceCheck(True)


def quotient_table(M: FiniteMvs, R: ElemRelation) -> tuple[RawTable, tuple[int, ...]]:
    """The quotient magma ``M/R`` and the class map, for any congruence ``R``.

    Classes are numbered by their smallest member, so the class of ``e`` is 0.
    The result need not be an MVS when the class of ``e`` is not ``{e}``.
    """
    check = is_congruence(M, R)
    if not check:
        raise NotACongruence(check.reason, check.witness)
    classes = R.classes()
    class_map = [0] * M.size
    for k, cl in enumerate(classes):
        for m in cl:
            class_map[m] = k
    reps = [cl[0] for cl in classes]
    table = tuple(tuple(class_map[M.table[a][b]] for b in reps) for a in reps)
    names = tuple(M.names[r] for r in reps)
    return RawTable(names, table), tuple(class_map)


def quotient(M: FiniteMvs, R: ElemRelation) -> tuple[FiniteMvs, tuple[int, ...]]:
    """Quotient MVS ``M/R`` with ``[m] + [n] = [m + n]`` and the class map.

    Only formed when the class of ``e`` is ``{e}``; each class is named after
    its smallest member.
    """
    if R.size == M.size and R.is_equivalence():
        e_class = R.class_of(0)
        if e_class != {0}:
            raise NeutralClassNotTrivial(e_class)
    raw, class_map = quotient_table(M, R)
    return FiniteMvs(raw.names, raw.table), class_map


def mutual_order_congruence(M: FiniteMvs) -> ElemRelation:
    """``m R n`` iff ``m ⊴ n`` and ``n ⊴ m``; a congruence for commutative ``M``."""
    if not M.commutative:
        raise NotCommutative(commutativity_witness(M.table))
    leq = M.leq
    return ElemRelation.from_predicate(M.size, lambda a, b: leq(a, b) and leq(b, a))


@dataclass(frozen=True)
class SubMvsCheck:
    holds: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.holds


def is_sub_mvs(M: FiniteMvs, subset: Iterable[int]) -> SubMvsCheck:
    sub = sorted(set(subset))
    if any(not 0 <= m < M.size for m in sub):
        return SubMvsCheck(False, "subset not contained in the carrier")
    if 0 not in sub:
        return SubMvsCheck(False, "does not contain the neutral element")
    if len(sub) < 2:
        return SubMvsCheck(False, "card < 2")
    members = set(sub)
    for a in sub:
        for b in sub:
            if M.table[a][b] not in members:
                return SubMvsCheck(False, f"not closed under +: {M.names[a]}+{M.names[b]}")
    nonzero = [m for m in sub if m != 0]
    divides = {c: {M.table[c][k] for k in sub} for c in nonzero}
    for a in nonzero:
        for b in nonzero:
            if not any(a in d and b in d for d in divides.values()):
                return SubMvsCheck(False, f"(M4) fails for {M.names[a]}, {M.names[b]}")
    return SubMvsCheck(True)


def submvs(M: FiniteMvs, subset: Iterable[int]) -> tuple[FiniteMvs, tuple[int, ...]]:
    """Restrict ``M`` to a sub-MVS; returns it with the embedding of its ids into ``M``."""
    sub = sorted(set(subset))
    check = is_sub_mvs(M, sub)
    if not check:
        raise NotASubMvs(check.reason)
    pos = {m: i for i, m in enumerate(sub)}
    table = tuple(tuple(pos[M.table[a][b]] for b in sub) for a in sub)
    return FiniteMvs(tuple(M.names[m] for m in sub), table), tuple(sub)


def _fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    for k in itertools.count(1):
        cand = f"{base}{k}"
        if cand not in taken:
            return cand
    raise AssertionError  # unreachable


def adjoin_infinity(M: FiniteMvs) -> tuple[FiniteMvs, tuple[int, ...]]:
    """Extend ``M`` by an absorbing element ``inf``.

    Returns ``M_inf`` (with ``inf`` as the last id) and the inclusion map,
    which is the identity on the ids of ``M``.
    """
    n = M.size
    inf = n
    table = tuple(M.table[a] + (inf,) for a in range(n)) + ((inf,) * (n + 1),)
    names = M.names + (_fresh_name("inf", M.names),)
    extended = FiniteMvs(names, table)
    inclusion = tuple(range(n))
    assert is_sub_mvs(extended, inclusion)
    assert all(extended.leq(m, inf) for m in range(1, n + 1))
    return extended, inclusion
