"""Homomorphisms between finite metric value sets."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .core import (
    ElemRelation,
    FiniteMvs,
    is_congruence,
    is_sub_mvs,
    quotient,
    submvs,
)
from .errors import (
    DomainMismatch,
    H1Violation,
    H2Violation,
    NotBijective,
)


def hom_violation(domain: FiniteMvs, codomain: FiniteMvs, mapping: Sequence[int]):
    """Return the first violated condition as an exception instance, or None.

    (H1) is checked before (H2); witnesses are lexicographically least.
    """
    if len(mapping) != domain.size or any(not 0 <= v < codomain.size for v in mapping):
        raise ValueError("mapping must send every domain id to a codomain id")
    for m in domain.elements:
        if (mapping[m] == 0) != (m == 0):
            return H1Violation(m)
    for a in domain.elements:
        for b in domain.elements:
            if mapping[domain.table[a][b]] != codomain.table[mapping[a]][mapping[b]]:
                return H2Violation(a, b)
    return None


@dataclass(frozen=True)
class MvsMap:
    """A homomorphism; construction fails unless (H1) and (H2) hold."""

    domain: FiniteMvs
    codomain: FiniteMvs
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(v) for v in self.mapping))
        err = hom_violation(self.domain, self.codomain, self.mapping)
        if err is not None:
            raise err

    def __call__(self, m: int) -> int:
        return self.mapping[m]

    @property
    def is_bijective(self) -> bool:
        return self.domain.size == self.codomain.size and len(set(self.mapping)) == self.domain.size


def make_hom(domain: FiniteMvs, codomain: FiniteMvs, mapping: Sequence[int]) -> MvsMap:
    return MvsMap(domain, codomain, tuple(mapping))


def identity(M: FiniteMvs) -> MvsMap:
    return MvsMap(M, M, tuple(M.elements))


def inclusion(sub: FiniteMvs, M: FiniteMvs, embedding: Sequence[int]) -> MvsMap:
    return MvsMap(sub, M, tuple(embedding))


def compose(g: MvsMap, h: MvsMap) -> MvsMap:
    """``g ∘ h``: apply ``h`` first."""
    if h.codomain != g.domain:
        raise DomainMismatch("codomain of h differs from domain of g")
    return MvsMap(h.domain, g.codomain, tuple(g.mapping[v] for v in h.mapping))


def image(h: MvsMap) -> frozenset[int]:
    img = frozenset(h.mapping)
    assert is_sub_mvs(h.codomain, img)
    return img


def kernel(h: MvsMap) -> ElemRelation:
    return ElemRelation.from_labels(h.mapping)


def is_fine(h: MvsMap) -> tuple[bool, int | None]:
    """Every non-neutral codomain element must dominate some nonzero image.

    Returns ``(True, None)`` or ``(False, m2)`` for the least unserved ``m2``.
    """
    leq = h.codomain.leq
    images = {h.mapping[m] for m in h.domain.nonzero}
    for m2 in h.codomain.nonzero:
        if not any(leq(v, m2) for v in images):
            return False, m2
    return True, None


def _profile(M: FiniteMvs, m: int) -> tuple:
    leq, lt = M.leq, M.lt
    return (
        sum(leq(m, k) for k in M.elements),
        sum(leq(k, m) for k in M.elements),
        sum(lt(m, k) for k in M.elements),
        sum(lt(k, m) for k in M.elements),
        M.table[m][m] == m,
        lt(m, m),
    )


def find_isomorphism(M: FiniteMvs, N: FiniteMvs) -> MvsMap | None:
    """Lexicographically first isomorphism ``M -> N``, or None.

    Backtracks over bijections fixing the neutral element; an element can
    only go to one with the same ⊴/◁ degree profile.
    """
    n = M.size
    if n != N.size or M.commutative != N.commutative:
        return None
    pm = [_profile(M, m) for m in M.elements]
    pn = [_profile(N, m) for m in N.elements]
    if Counter(pm) != Counter(pn):
        return None
    mapping = [-1] * n
    mapping[0] = 0
    used = [False] * n
    used[0] = True

    def consistent(k: int) -> bool:
        # H2 on pairs whose operands are assigned and whose sum is assigned
        for a in range(k + 1):
            for b in range(k + 1):
                if a != k and b != k:
                    continue
                s = M.table[a][b]
                if mapping[s] != -1 and mapping[s] != N.table[mapping[a]][mapping[b]]:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        for cand in range(1, n):
            if not used[cand] and pn[cand] == pm[k]:
                mapping[k] = cand
                used[cand] = True
                if consistent(k) and extend(k + 1):
                    return True
                used[cand] = False
                mapping[k] = -1
        return False

    if not extend(1):
        return None
    return MvsMap(M, N, tuple(mapping))


def invert(h: MvsMap) -> MvsMap:
    if not h.is_bijective:
        raise NotBijective("homomorphism is not a bijection")
    inv = [0] * h.domain.size
    for m, v in enumerate(h.mapping):
        inv[v] = m
    return MvsMap(h.codomain, h.domain, tuple(inv))


def canonical_projection(M: FiniteMvs, R: ElemRelation) -> MvsMap:
    """The class map ``m -> [m]`` onto ``M/R``."""
    Q, class_map = quotient(M, R)
    return MvsMap(M, Q, class_map)


@dataclass(frozen=True)
class FirstIsomorphism:
    """``h = include ∘ iso ∘ project`` for a homomorphism ``h``."""

    project: MvsMap
    iso: MvsMap
    include: MvsMap


def first_isomorphism(h: MvsMap) -> FirstIsomorphism:
    """Build ``h*: M/ker(h) -> h(M)``, ``[m] -> h(m)``, and the maps around it."""
    ker = kernel(h)
    assert is_congruence(h.domain, ker)
    project = canonical_projection(h.domain, ker)
    img, embedding = submvs(h.codomain, image(h))
    pos = {v: i for i, v in enumerate(embedding)}
    reps = [cl[0] for cl in ker.classes()]
    star = MvsMap(project.codomain, img, tuple(pos[h.mapping[r]] for r in reps))
    if not star.is_bijective:
        raise AssertionError("h* is not bijective")
    return FirstIsomorphism(project, star, inclusion(img, h.codomain, embedding))
