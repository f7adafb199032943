import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from mvskit.catalog import M_AB, M_MAX2, M_SAT3, max_chain
from mvskit.core import adjoin_infinity, mutual_order_congruence
from mvskit.errors import (
    BudgetExceeded,
    DomainMismatch,
    InvalidTopology,
    NeutralRadius,
    NotAQuasimetric,
    NotCommutative,
    PointSetMismatch,
)
from mvskit.generators import random_quasimetric
from mvskit.morphisms import canonical_projection, identity, inclusion
from mvskit.topology import (
    FiniteTopology,
    QuasimetricTable,
    all_neutral,
    ball_directedness_witness,
    canonical_quasimetric,
    check_quasimetric,
    induced_topology,
    is_finer,
    are_equivalent,
    mask,
    members,
    open_ball,
    quotient_metrize,
    search_metrizable,
    transform,
)
from test_core import NONCOMM

PTS3 = ("x", "y", "z")
SIERPINSKI = FiniteTopology(("p", "q"), frozenset({0, mask([0]), mask([0, 1])}))


def discrete_sat3():
    return QuasimetricTable(PTS3, M_SAT3, ((0, 2, 2), (2, 0, 2), (2, 2, 0)))


def test_mask_members_roundtrip():
    assert mask([0, 2]) == 0b101
    assert members(0b101) == {0, 2}
    assert members(0) == frozenset()


def test_canonical_sat3_values():
    q = canonical_quasimetric(M_SAT3)
    assert q.values == ((0, 1, 2), (0, 0, 2), (0, 0, 0))
    report = check_quasimetric(q)
    assert report.f1_holds and report.f2_holds and not report.f3_holds
    assert report.witnesses["f3"] == (0, 1)


def test_canonical_sat3_topology():
    T = induced_topology(canonical_quasimetric(M_SAT3))
    assert set(T.open_sets()) == {frozenset(), frozenset({0}), frozenset({0, 1}), frozenset({0, 1, 2})}


def test_canonical_balls():
    q = canonical_quasimetric(M_SAT3)
    assert open_ball(q, 0, 1) == {0}
    assert open_ball(q, 1, 1) == {0, 1}
    assert open_ball(q, 2, 2) == {0, 1, 2}
    with pytest.raises(NeutralRadius):
        open_ball(q, 0, 0)


def test_canonical_requires_commutative():
    with pytest.raises(NotCommutative):
        canonical_quasimetric(NONCOMM)


def test_canonical_is_quasimetric_on_m_ab():
    q = canonical_quasimetric(M_AB)
    assert oracles.is_quasimetric(M_AB.table, q.values)


def test_f2_failure():
    q = QuasimetricTable(("x", "y"), M_MAX2, ((1, 0), (0, 0)))
    report = check_quasimetric(q)
    assert not report.f2_holds and report.witnesses["f2"] == (0,)
    with pytest.raises(NotAQuasimetric):
        induced_topology(q)


def test_f1_failure():
    # SAT3: f(x,z) = 2 but f(x,y) + f(y,z) = 0
    q = QuasimetricTable(PTS3, M_SAT3, ((0, 0, 2), (0, 0, 0), (0, 0, 0)))
    report = check_quasimetric(q)
    assert not report.f1_holds and report.witnesses["f1"] == (0, 1, 2)
    assert not oracles.is_quasimetric(M_SAT3.table, q.values)


def test_discrete_and_indiscrete():
    assert induced_topology(discrete_sat3()).opens == FiniteTopology.discrete(PTS3).opens
    assert induced_topology(all_neutral(PTS3, M_SAT3)).opens == FiniteTopology.indiscrete(PTS3).opens


def test_induced_topology_matches_oracle():
    rng = random.Random(8)
    for M in (M_SAT3, M_AB, M_MAX2, max_chain(3)):
        for n in (1, 2, 3, 4):
            for _ in range(10):
                q = random_quasimetric(rng, M, n)
                assert oracles.is_quasimetric(M.table, q.values)
                got = set(induced_topology(q).open_sets())
                assert got == oracles.induced_opens(M.table, q.values)
                assert ball_directedness_witness(q) is None


def test_topology_validation():
    with pytest.raises(InvalidTopology):
        FiniteTopology(("a", "b"), frozenset({0, 1}))
    with pytest.raises(InvalidTopology):
        FiniteTopology(("a", "b"), frozenset({0, 1, 2, 3}) - {0})
    with pytest.raises(InvalidTopology):
        FiniteTopology(("a", "b", "c"), frozenset({0, 1, 2, 7}))  # union {a,b} missing
    assert SIERPINSKI.minimal_neighbourhood(1) == 0b11
    assert SIERPINSKI.minimal_neighbourhood(0) == 0b01


def test_is_finer():
    d, a = discrete_sat3(), all_neutral(PTS3, M_SAT3)
    assert is_finer(d, a) and not is_finer(a, d)
    assert are_equivalent(d, d) and not are_equivalent(a, d)
    with pytest.raises(PointSetMismatch):
        is_finer(d, all_neutral(("x", "y"), M_SAT3))


def test_transform_identity_and_infinity():
    q = canonical_quasimetric(M_SAT3)
    assert transform(identity(M_SAT3), q) == q
    big, emb = adjoin_infinity(M_SAT3)
    q_inf = transform(inclusion(M_SAT3, big, emb), q)
    assert are_equivalent(q, QuasimetricTable(q.points, M_SAT3, q.values))
    assert set(induced_topology(q_inf).open_sets()) == set(induced_topology(q).open_sets())
    with pytest.raises(DomainMismatch):
        transform(identity(M_AB), q)


def test_quotient_metrize():
    q = canonical_quasimetric(M_AB)
    out = quotient_metrize(q)
    assert out.mvs.size == 2
    assert are_equivalent(q, out)
    proj = canonical_projection(M_AB, mutual_order_congruence(M_AB))
    assert out.values == tuple(tuple(proj.mapping[v] for v in row) for row in q.values)


def test_search_sierpinski():
    assert search_metrizable(SIERPINSKI, M_MAX2) is None
    q = search_metrizable(SIERPINSKI, M_SAT3)
    assert q.values == ((0, 1), (0, 0))
    assert induced_topology(q).opens == SIERPINSKI.opens


def _first_by_enumeration(T, M, symmetric=False):
    for f in oracles.all_quasimetrics(M.table, T.n):
        if symmetric and any(f[x][y] != f[y][x] for x in range(T.n) for y in range(T.n)):
            continue
        if oracles.induced_opens(M.table, f) == set(T.open_sets()):
            return tuple(tuple(r) for r in f)
    return None


def _all_topologies(n):
    pts = tuple(str(i) for i in range(n))
    full = (1 << n) - 1
    middle = list(range(1, full))
    out = []
    for bits in range(1 << len(middle)):
        opens = {0, full} | {middle[i] for i in range(len(middle)) if bits >> i & 1}
        if all(u | v in opens and u & v in opens for u in opens for v in opens):
            out.append(FiniteTopology(pts, frozenset(opens)))
    return out


@pytest.mark.parametrize("M", [M_MAX2, M_SAT3, M_AB])
def test_search_matches_enumeration(M):
    for n in (2, 3):
        for T in _all_topologies(n):
            q = search_metrizable(T, M)
            expected = _first_by_enumeration(T, M)
            assert (q.values if q else None) == expected


def test_search_symmetric_flag():
    for T in _all_topologies(3):
        q = search_metrizable(T, M_SAT3, symmetric=True)
        expected = _first_by_enumeration(T, M_SAT3, symmetric=True)
        assert (q.values if q else None) == expected
        if q is not None:
            assert q.symmetric
    assert search_metrizable(SIERPINSKI, M_SAT3, symmetric=True) is None


def test_search_budget():
    with pytest.raises(BudgetExceeded):
        search_metrizable(FiniteTopology.discrete([str(i) for i in range(6)]), M_SAT3, budget=1000)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32))
def test_random_tables_topology_axioms(seed):
    rng = random.Random(seed)
    q = random_quasimetric(rng, M_SAT3, 3)
    T = induced_topology(q)  # constructor validates union and intersection closure
    for x in range(3):
        assert T.minimal_neighbourhood(x) >> x & 1


def test_constant_one_is_discrete():
    q = QuasimetricTable(PTS3, M_SAT3, ((0, 1, 1), (1, 0, 1), (1, 1, 0)))
    assert open_ball(q, 0, 1) == {0}
    assert induced_topology(q).opens == FiniteTopology.discrete(PTS3).opens


def test_all_neutral_axioms_hold():
    report = check_quasimetric(all_neutral(PTS3, M_SAT3))
    assert report.f1_holds and report.f2_holds and report.f3_holds
