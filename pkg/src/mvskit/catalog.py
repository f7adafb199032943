"""Small named structures used in documentation, tests and fixture files."""

from __future__ import annotations

from .core import FiniteMvs, RawTable, validate
from .words import Presentation


def max_chain(k: int = 2) -> FiniteMvs:
    """``({0, ..., k-1}, max)``."""
    names = tuple(str(i) for i in range(k))
    return validate(RawTable.from_function(names, max))


def saturating(cap: int = 2) -> FiniteMvs:
    """``({0, ..., cap}, min(a + b, cap))``."""
    names = tuple(str(i) for i in range(cap + 1))
    return validate(RawTable.from_function(names, lambda a, b: min(a + b, cap)))


def m_ab() -> FiniteMvs:
    """``{e, a, b}`` with ``a+a = b``, ``a+b = b+a = a``, ``b+b = b``; not antisymmetric."""
    e, a, b = 0, 1, 2
    return validate(RawTable(("e", "a", "b"), ((e, a, b), (a, b, a), (b, a, b))))


def z2_raw() -> RawTable:
    return RawTable(("0", "1"), ((0, 1), (1, 0)))


def left_projection_raw() -> RawTable:
    """``{e, a, b}`` where ``x + y = x`` for ``x != e``; fails (M4) only."""
    return RawTable(("e", "a", "b"), ((0, 1, 2), (1, 1, 1), (2, 2, 2)))


M_MAX2 = max_chain(2)
M_SAT3 = saturating(2)
M_AB = m_ab()

P_ABCD = Presentation(("a", "b", "c", "d"), (("a", "b", "c"), ("a", "d", "b"), ("b", "c", "a")))
P_AB = Presentation(("a", "b"), (("a", "b", "b"),))
P_FREE2 = Presentation(("a", "b"), ())
P_ONE_X = Presentation(("1", "x", "y"), (("1", "x", "x"), ("1", "y", "y")))
P5 = Presentation(
    ("1", "a", "b", "c", "d"),
    (("1", "a", "a"), ("1", "b", "b"), ("1", "c", "c"), ("1", "d", "d"),
     ("a", "b", "c"), ("b", "a", "d")),
)
