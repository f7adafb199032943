"""Words, one-step relations ``ab ~ c`` and a bounded word-problem engine.

Words are tuples of letter names; the empty tuple is the empty word.  The
equivalence generated by a set of relations is explored on all words up to
a length bound.  A class that no one-step move can leave within the bound
is *exact*: it is the complete equivalence class, which lets the engine
refute as well as prove.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from ._search import monoid_tables
from .core import FiniteMvs
from .errors import AlphabetMismatch, BoundTooSmall, SizeExceeded

Word = tuple[str, ...]
Relation = tuple[str, str, str]

DEFAULT_NODE_BUDGET = 2 ** 20


@dataclass(frozen=True)
class Presentation:
    letters: tuple[str, ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise ValueError("alphabet must be nonempty")
        if len(set(letters)) != len(letters) or any(not a for a in letters):
            raise ValueError("letters must be distinct and nonempty")
        rels = []
        for rel in self.relations:
            rel = tuple(rel)
            if len(rel) != 3 or any(x not in letters for x in rel):
                raise ValueError(f"relation {rel} uses letters outside the alphabet")
            if rel not in rels:
                rels.append(rel)
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "relations", tuple(rels))

    def check_word(self, w: Iterable[str]) -> Word:
        w = tuple(w)
        bad = [x for x in w if x not in self.letters]
        if bad:
            raise AlphabetMismatch(f"letters {bad} not in alphabet {self.letters}")
        return w


def concat(u: Sequence[str], v: Sequence[str], alphabet: Sequence[str] | None = None) -> Word:
    if alphabet is not None:
        allowed = set(alphabet)
        if not set(u) <= allowed or not set(v) <= allowed:
            raise AlphabetMismatch("words use letters outside the alphabet")
    return tuple(u) + tuple(v)


def neighbours(w: Word, relations: Iterable[Relation]) -> Iterator[tuple[Word, Relation]]:
    """All one-step moves from ``w``: ``ab -> c`` and ``c -> ab`` at one position."""
    for rel in relations:
        a, b, c = rel
        for i in range(len(w) - 1):
            if w[i] == a and w[i + 1] == b:
                yield w[:i] + (c,) + w[i + 2:], rel
        for i, x in enumerate(w):
            if x == c:
                yield w[:i] + (a, b) + w[i + 1:], rel


def one_step(u: Sequence[str], v: Sequence[str], rel: Relation) -> bool:
    u, v = tuple(u), tuple(v)
    return u == v or any(w == v for w, _ in neighbours(u, [tuple(rel)]))


def _check_bound(bound: int) -> None:
    if bound < 2:
        raise BoundTooSmall(f"bound must be at least 2, got {bound}")


@dataclass(frozen=True)
class ChainStep:
    source: Word
    target: Word
    relation: Relation


class BoundedCongruence:
    """Union-find partition of all words of length at most ``bound``."""

    def __init__(self, presentation: Presentation, bound: int, budget: int = DEFAULT_NODE_BUDGET):
        _check_bound(bound)
        k = len(presentation.letters)
        total = sum(k ** i for i in range(bound + 1))
        if total > budget:
            raise SizeExceeded(f"{total} words up to length {bound} exceed budget {budget}")
        self.presentation = presentation
        self.bound = bound
        self.words: list[Word] = [
            w for n in range(bound + 1) for w in itertools.product(presentation.letters, repeat=n)
        ]
        self.index = {w: i for i, w in enumerate(self.words)}
        parent = list(range(len(self.words)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        shorten: dict[tuple[str, str], list[str]] = {}
        lengthen: dict[str, list[Relation]] = {}
        for a, b, c in presentation.relations:
            shorten.setdefault((a, b), []).append(c)
            lengthen.setdefault(c, []).append((a, b, c))
        leaks = [False] * len(self.words)
        for i, w in enumerate(self.words):
            for p in range(len(w) - 1):
                for c in shorten.get((w[p], w[p + 1]), ()):
                    j = self.index[w[:p] + (c,) + w[p + 2:]]
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        # keep the smaller id as root so roots are class minima
                        if ri < rj:
                            parent[rj] = ri
                        else:
                            parent[ri] = rj
            if len(w) == bound and any(x in lengthen for x in w):
                leaks[i] = True

        roots = [find(i) for i in range(len(self.words))]
        root_to_class: dict[int, int] = {}
        self._class_of: list[int] = []
        for r in roots:
            self._class_of.append(root_to_class.setdefault(r, len(root_to_class)))
        self._members: list[list[int]] = [[] for _ in root_to_class]
        for i, cid in enumerate(self._class_of):
            self._members[cid].append(i)
        self._exact = [not any(leaks[i] for i in ms) for ms in self._members]

    @property
    def num_classes(self) -> int:
        return len(self._members)

    def class_id(self, w: Sequence[str]) -> int:
        w = tuple(w)
        if w not in self.index:
            self.presentation.check_word(w)
            raise ValueError(f"word of length {len(w)} exceeds bound {self.bound}")
        return self._class_of[self.index[w]]

    def members(self, cid: int) -> list[Word]:
        return [self.words[i] for i in self._members[cid]]

    def representative(self, cid: int) -> Word:
        """Shortest, then alphabetically first, member."""
        return self.words[self._members[cid][0]]

    def is_exact(self, cid: int) -> bool:
        return self._exact[cid]

    def same_class(self, u: Sequence[str], v: Sequence[str]) -> bool:
        return self.class_id(u) == self.class_id(v)

    def classes(self) -> list[list[Word]]:
        return [self.members(c) for c in range(self.num_classes)]

    def chain(self, u: Sequence[str], v: Sequence[str]) -> list[ChainStep] | None:
        """A shortest chain of one-step moves from ``u`` to ``v`` inside the bound."""
        u, v = tuple(u), tuple(v)
        if not self.same_class(u, v):
            return None
        prev: dict[Word, tuple[Word, Relation] | None] = {u: None}
        queue = deque([u])
        rels = self.presentation.relations
        while queue:
            w = queue.popleft()
            if w == v:
                break
            for nxt, rel in neighbours(w, rels):
                if len(nxt) <= self.bound and nxt not in prev:
                    prev[nxt] = (w, rel)
                    queue.append(nxt)
        steps = []
        w = v
        while prev[w] is not None:
            src, rel = prev[w]
            steps.append(ChainStep(src, w, rel))
            w = src
        return steps[::-1]


def close(presentation: Presentation, bound: int, budget: int = DEFAULT_NODE_BUDGET) -> BoundedCongruence:
    return BoundedCongruence(presentation, bound, budget)


class Verdict(enum.Enum):
    PROVED = "PROVED"
    REFUTED = "REFUTED"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Tri:
    verdict: Verdict
    message: str = ""
    certificate: object = None

    def __bool__(self) -> bool:
        raise TypeError("Tri is three-valued; compare .verdict instead")


@dataclass(frozen=True)
class ExactClass:
    word: Word
    members: tuple[Word, ...]


@dataclass(frozen=True)
class SeparatingModel:
    """A finite monoid (identity 0) and letter images satisfying every relation."""

    table: tuple[tuple[int, ...], ...]
    assignment: Mapping[str, int]
    left_value: int
    right_value: int

    def evaluate(self, w: Sequence[str]) -> int:
        acc = 0
        for x in w:
            acc = self.table[acc][self.assignment[x]]
        return acc

    def satisfies(self, presentation: Presentation) -> bool:
        t, g = self.table, self.assignment
        return all(t[g[a]][g[b]] == g[c] for a, b, c in presentation.relations)


def find_separating_model(
    presentation: Presentation, u: Sequence[str], v: Sequence[str], max_size: int
) -> SeparatingModel | None:
    """Smallest finite monoid model of the relations that tells ``u`` and ``v`` apart.

    Monoids are tried by ascending size, tables in lexicographic order and
    letter assignments in lexicographic order; the first separation wins.
    """
    u = presentation.check_word(u)
    v = presentation.check_word(v)
    letters = presentation.letters
    pos = {x: i for i, x in enumerate(letters)}
    # relations become checkable once their last letter (in alphabet order) is assigned
    ready: dict[int, list[Relation]] = {}
    for rel in presentation.relations:
        ready.setdefault(max(pos[x] for x in rel), []).append(rel)

    def evaluate(t, g, w) -> int:
        acc = 0
        for x in w:
            acc = t[acc][g[x]]
        return acc

    for size in range(1, max_size + 1):
        for t in monoid_tables(size):
            g: dict[str, int] = {}

            def assign(k: int):
                if k == len(letters):
                    lu, lv = evaluate(t, g, u), evaluate(t, g, v)
                    if lu != lv:
                        return SeparatingModel(t, dict(g), lu, lv)
                    return None
                for val in range(size):
                    g[letters[k]] = val
                    if all(t[g[a]][g[b]] == g[c] for a, b, c in ready.get(k, ())):
                        found = assign(k + 1)
                        if found is not None:
                            return found
                del g[letters[k]]
                return None

            found = assign(0)
            if found is not None:
                return found
    return None


def words_equal(
    presentation: Presentation,
    u: Sequence[str],
    v: Sequence[str],
    bound: int,
    *,
    max_model_size: int = 0,
    budget: int = DEFAULT_NODE_BUDGET,
) -> Tri:
    """Semi-decide whether ``u`` and ``v`` are related.

    PROVED comes with a chain of one-step moves.  REFUTED comes with an
    exact class containing one word but not the other, or, when
    ``max_model_size`` is positive and the closure is inconclusive, with a
    separating monoid model.
    """
    u = presentation.check_word(u)
    v = presentation.check_word(v)
    if max(len(u), len(v)) > bound:
        raise BoundTooSmall(f"words longer than bound {bound}")
    bc = close(presentation, bound, budget)
    cu, cv = bc.class_id(u), bc.class_id(v)
    if cu == cv:
        return Tri(Verdict.PROVED, "same class", bc.chain(u, v))
    for w, cid in ((v, cv), (u, cu)):
        if bc.is_exact(cid):
            return Tri(Verdict.REFUTED, f"class of {format_word(w, presentation)} is exact and disjoint",
                       ExactClass(w, tuple(bc.members(cid))))
    if max_model_size > 0:
        model = find_separating_model(presentation, u, v, max_model_size)
        if model is not None:
            return Tri(Verdict.REFUTED, f"separated by a monoid model of size {len(model.table)}", model)
    return Tri(Verdict.UNKNOWN, f"no conclusion within bound {bound}")


@dataclass(frozen=True)
class CommonPrefix:
    letter: str
    left_rest: Word
    right_rest: Word


def check_m4(presentation: Presentation, bound: int, budget: int = DEFAULT_NODE_BUDGET) -> Tri:
    """Test whether every pair of letters has a common left factor letter.

    For letters ``a != b`` look for ``c`` and words ``ū``, ``v̄`` with ``cū``
    in the class of ``a`` and ``cv̄`` in the class of ``b``.  PROVED carries
    one witness per pair; REFUTED needs both classes of a failing pair exact.
    """
    bc = close(presentation, bound, budget)
    letters = presentation.letters
    firsts: dict[int, dict[str, Word]] = {}

    def first_letters(cid: int) -> dict[str, Word]:
        if cid not in firsts:
            out: dict[str, Word] = {}
            for w in bc.members(cid):
                if w and w[0] not in out:
                    out[w[0]] = w[1:]
            firsts[cid] = out
        return firsts[cid]

    witnesses = {}
    undecided = None
    for a, b in itertools.combinations(letters, 2):
        ca, cb = bc.class_id((a,)), bc.class_id((b,))
        fa, fb = first_letters(ca), first_letters(cb)
        common = [c for c in letters if c in fa and c in fb]
        if common:
            c = common[0]
            witnesses[(a, b)] = CommonPrefix(c, fa[c], fb[c])
        elif bc.is_exact(ca) and bc.is_exact(cb):
            return Tri(Verdict.REFUTED, f"no common left factor for {a}, {b}", (a, b))
        elif undecided is None:
            undecided = (a, b)
    if undecided is not None:
        return Tri(Verdict.UNKNOWN, f"pair {undecided[0]}, {undecided[1]} undecided within bound {bound}",
                   undecided)
    return Tri(Verdict.PROVED, "every pair of letters has a common left factor", witnesses)


def present_mvs(M: FiniteMvs) -> Presentation:
    """Letters are the non-neutral elements, relations ``m1 m2 ~ m1+m2``."""
    names = M.names
    rels = [(names[a], names[b], names[M.table[a][b]]) for a in M.nonzero for b in M.nonzero]
    return Presentation(tuple(names[m] for m in M.nonzero), tuple(rels))


def eval_word(M: FiniteMvs, assignment: Mapping[str, int], w: Sequence[str]) -> int:
    acc = 0
    for x in w:
        acc = M.table[acc][assignment[x]]
    return acc


@dataclass(frozen=True)
class RepresentationCheck:
    holds: bool
    reason: str = ""
    classes: Mapping[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def verify_representation(M: FiniteMvs, bound: int = 4, budget: int = DEFAULT_NODE_BUDGET) -> RepresentationCheck:
    """Check that ``M`` is the word quotient of its own addition table.

    ``classes`` maps each element name to the class of its one-letter word
    (the empty word for ``e``).
    """
    P = present_mvs(M)
    bc = close(P, bound, budget)
    rep_word = {m: ((M.names[m],) if m else ()) for m in M.elements}
    classes = {M.names[m]: bc.class_id(rep_word[m]) for m in M.elements}
    short = set(classes.values())
    if len(short) != M.size:
        return RepresentationCheck(False, "two elements share a class", classes)
    for w in bc.words:
        if bc.class_id(w) not in short:
            return RepresentationCheck(False, f"word {format_word(w, P)} reaches no short word", classes)
    for a in M.elements:
        for b in M.elements:
            if bc.class_id(rep_word[a] + rep_word[b]) != bc.class_id(rep_word[M.table[a][b]]):
                return RepresentationCheck(
                    False, f"[{M.names[a]}][{M.names[b]}] != [{M.names[M.table[a][b]]}]", classes)
    return RepresentationCheck(True, "", classes)


def parse_word(text: str, presentation: Presentation) -> Word:
    """Read ``abcd`` (single-character letters) or ``x1,x2`` (otherwise); ``0`` is empty."""
    text = text.strip()
    single = all(len(x) == 1 for x in presentation.letters)
    if text in ("", "0") and "0" not in presentation.letters:
        return ()
    if text == "":
        return ()
    parts = list(text) if single and "," not in text else [p.strip() for p in text.split(",") if p.strip()]
    return presentation.check_word(parts)


def format_word(w: Sequence[str], presentation: Presentation | None = None) -> str:
    if not w:
        return "0"
    single = all(len(x) == 1 for x in (presentation.letters if presentation else w))
    return "".join(w) if single else ",".join(w)
