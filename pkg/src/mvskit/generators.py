"""Seeded random structures for property checks."""

from __future__ import annotations

import random
from typing import Iterator

from ._search import monoid_tables
from .core import (
    ElemRelation,
    FiniteMvs,
    RawTable,
    adjoin_infinity,
    check_axioms,
    is_congruence,
    relabel,
    validate,
)
from .morphisms import MvsMap, canonical_projection, compose, inclusion
from .topology import QuasimetricTable, check_quasimetric


def random_mvs(rng: random.Random, max_size: int = 6, *, min_size: int = 2,
               commutative: bool = False, attempts: int = 200) -> FiniteMvs:
    """A random MVS with ``min_size <= card <= max_size``.

    Draws the first monoid table of a randomised backtracking search (no
    zero divisors, so (M3) holds) and retries until (M4) holds too.
    """
    for _ in range(attempts):
        n = rng.randint(min_size, max_size)
        table = next(monoid_tables(n, commutative=commutative, no_zero_divisors=True, rng=rng))
        names = tuple("e" if i == 0 else f"m{i}" for i in range(n))
        raw = RawTable(names, table)
        if check_axioms(raw).ok:
            return validate(raw)
    raise RuntimeError("no MVS found; raise attempts")


def set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]
        yield [[first]] + part


def congruences(M: FiniteMvs, *, trivial_neutral: bool = True) -> list[ElemRelation]:
    """Every congruence of ``M`` (with ``[e] = {e}`` unless told otherwise)."""
    out = []
    if trivial_neutral:
        parts = ([[0]] + p for p in set_partitions(list(M.nonzero)))
    else:
        parts = set_partitions(list(M.elements))
    for part in parts:
        R = ElemRelation.from_classes(M.size, part)
        if is_congruence(M, R):
            out.append(R)
    return out


def random_congruence(rng: random.Random, M: FiniteMvs, *, trivial_neutral: bool = True) -> ElemRelation:
    return rng.choice(congruences(M, trivial_neutral=trivial_neutral))


def random_relabel(rng: random.Random, M: FiniteMvs) -> MvsMap:
    """An isomorphism from ``M`` onto a shuffled copy of itself."""
    rest = list(M.nonzero)
    rng.shuffle(rest)
    perm = [0] + rest
    copy = relabel(M, perm, names=tuple("e" if i == 0 else f"n{i}" for i in M.elements))
    return MvsMap(M, copy, tuple(perm))


def random_hom(rng: random.Random, M: FiniteMvs) -> MvsMap:
    """Projection onto a random quotient, relabelled, sometimes pushed into ``Q_inf``."""
    h = canonical_projection(M, random_congruence(rng, M))
    h = compose(random_relabel(rng, h.codomain), h)
    if rng.random() < 0.5:
        big, emb = adjoin_infinity(h.codomain)
        h = compose(inclusion(h.codomain, big, emb), h)
    return h


def random_quasimetric(rng: random.Random, M: FiniteMvs, n_points: int, *,
                       attempts: int = 500) -> QuasimetricTable:
    """Rejection-sample a quasimetric table; falls back to the all-``e`` table."""
    points = tuple(f"x{i}" for i in range(n_points))
    for _ in range(attempts):
        values = tuple(tuple(0 if x == y else rng.randrange(M.size) for y in range(n_points))
                       for x in range(n_points))
        q = QuasimetricTable(points, M, values)
        if check_quasimetric(q).is_quasimetric:
            return q
    return QuasimetricTable(points, M, tuple((0,) * n_points for _ in range(n_points)))
