"""Backtracking enumeration of finite monoid tables.

Shared by the separating-model search and the random MVS generators.
"""

from __future__ import annotations

import random
from typing import Iterator

UNSET = -1


def _consistent(t: list[list[int]], i: int, j: int, n: int) -> bool:
    """Check every associativity triple that reads cell (i, j) and is fully assigned."""

    def ok(a: int, b: int, c: int) -> bool:
        ab = t[a][b]
        bc = t[b][c]
        if ab == UNSET or bc == UNSET:
            return True
        lhs = t[ab][c]
        rhs = t[a][bc]
        return lhs == UNSET or rhs == UNSET or lhs == rhs

    for x in range(n):
        if not ok(i, j, x) or not ok(x, i, j):
            return False
    for a in range(n):
        row = t[a]
        for b in range(n):
            if row[b] == i and not ok(a, b, j):
                return False
            if row[b] == j and not ok(i, a, b):
                return False
    return True


def monoid_tables(
    n: int,
    *,
    commutative: bool = False,
    no_zero_divisors: bool = False,
    rng: random.Random | None = None,
) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield every associative table on ``range(n)`` with identity 0.

    Cells are filled row-major; without ``rng`` values are tried in
    ascending order, so tables come out in lexicographic order.  With
    ``no_zero_divisors`` no product of two non-identity elements is 0.
    """
    if n < 1:
        return
    t = [[UNSET] * n for _ in range(n)]
    for x in range(n):
        t[0][x] = x
        t[x][0] = x
    cells = [(i, j) for i in range(1, n) for j in range(1, n) if not commutative or i <= j]
    values = list(range(1, n)) if no_zero_divisors else list(range(n))

    def extend(k: int):
        if k == len(cells):
            yield tuple(tuple(row) for row in t)
            return
        i, j = cells[k]
        order = values[:]
        if rng is not None:
            rng.shuffle(order)
        for v in order:
            t[i][j] = v
            t[j][i] = v if commutative else t[j][i]
            if _consistent(t, i, j, n) and (not commutative or i == j or _consistent(t, j, i, n)):
                yield from extend(k + 1)
        t[i][j] = UNSET
        if commutative:
            t[j][i] = UNSET

    yield from extend(0)
