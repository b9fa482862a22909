import pytest
from hypothesis import given, strategies as st

from tautzero.tnumbers import (
    INFINITY,
    RATIONALLY_CONNECTED_NMAX,
    BoundStep,
    FiniteAbelianGroup,
    NoBaseCase,
    Provenance,
    TBound,
    TBoundTable,
    TNumberError,
    UnstableInput,
    dominance_holds,
    replay,
    t_upper_bound,
    trade_points,
    verify_recursion_consistency,
)

FIGURE = {0: INFINITY, 1: 10, 2: 12, 3: 14, 4: 15, 5: 12, 6: 15, 7: 11,
          8: 8, 9: 9, 10: 3, 11: 10, 12: 1, 13: 0, 14: 2, 15: 0}


def test_base_table():
    assert RATIONALLY_CONNECTED_NMAX == FIGURE


def test_table_json_base():
    base = TBoundTable.build(0, 3).as_dict()["base"]
    assert base == {str(g): ("inf" if v == INFINITY else v) for g, v in FIGURE.items()}


def test_rationally_connected_cells_are_one():
    for g, top in FIGURE.items():
        hi = 30 if top == INFINITY else int(top)
        for n in range(0, hi + 1):
            if 2 * g - 2 + n > 0:
                b = t_upper_bound(g, n)
                assert b.bound == 1
                assert [s.kind for s in b.provenance] == [Provenance.RATIONALLY_CONNECTED]


def test_examples():
    assert t_upper_bound(1, 10).bound == 1
    b = t_upper_bound(1, 11)
    assert b.bound == 2 and b.base_n == 10 and b.provenance[-1].m == 1
    b = t_upper_bound(13, 5)
    assert b.bound == 66 and b.base_n == 0 and b.provenance[-1].m == 5


def brute_best_bound(g, n):
    """Minimum over every stable base n0 <= min(n, n_max) and every way of
    splitting n - n0 into recursion steps."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def best_from(n0, target):
        if n0 == target:
            return 1
        return min((g * m + 1) * best_from(n0 + m, target) for m in range(1, target - n0 + 1))

    top = FIGURE[g]
    bases = [n0 for n0 in range(0, n + 1) if n0 <= top and 2 * g - 2 + n0 > 0]
    return min(best_from(n0, n) for n0 in bases)


@pytest.mark.parametrize("g", range(0, 16))
def test_single_application_is_optimal(g):
    for n in range(0, 22):
        if 2 * g - 2 + n > 0:
            assert t_upper_bound(g, n).bound == brute_best_bound(g, n)


def test_dominance_scan():
    for g in range(0, 16):
        for m1 in range(0, 21):
            for m2 in range(0, 21 - m1):
                assert dominance_holds(g, m1, m2)


@pytest.mark.parametrize("g, n", [(0, 2), (1, 0), (0, 0), (-1, 4)])
def test_unstable(g, n):
    with pytest.raises(UnstableInput):
        t_upper_bound(g, n)


def test_no_base_beyond_table():
    with pytest.raises(NoBaseCase):
        t_upper_bound(16, 3)


def test_replay_matches():
    for g in range(0, 16):
        for n in range(0, 25):
            if 2 * g - 2 + n > 0:
                b = t_upper_bound(g, n)
                assert replay(b) == b.bound


def test_replay_detects_tampering():
    b = t_upper_bound(13, 5)
    bad = TBound(13, 5, 66, (b.provenance[0], BoundStep(Provenance.RECURSION, 13, 5, 67, 5, 66)))
    with pytest.raises(TNumberError):
        replay(bad)
    with pytest.raises(TNumberError):
        replay(TBound(13, 5, 1, (BoundStep(Provenance.DEGREE, 13, 5, 1),)))


@pytest.mark.parametrize("g_max, n_scan", [(1, 20), (0, 30), (13, 10), (15, 20)])
def test_recursion_consistency(g_max, n_scan):
    rep = verify_recursion_consistency(g_max, n_scan)
    assert rep.passed and rep.checked > 0


def test_genus_zero_all_one():
    assert all(t_upper_bound(0, n).bound == 1 for n in range(3, 200))


def test_trade_z7_example():
    tr = trade_points(FiniteAbelianGroup((7,)), 0, [3, 5])
    assert tr.tuples == (((3,), (5,)), ((4,), (5,)), ((0,), (4,)))
    assert tr.coordinate_sums() == [(0,), (0,)]
    assert tr.check() == []


def test_trade_m1_is_negation():
    G = FiniteAbelianGroup((2, 3))
    for x in [(0, 0), (1, 0), (1, 2), (0, 1)]:
        tr = trade_points(G, (0, 0), [x])
        assert tr.tuples[1] == (G.neg(x),)
        assert tr.check() == []


def test_trade_anchor_constant_is_fixed():
    G = FiniteAbelianGroup((5, 4))
    a = (3, 1)
    tr = trade_points(G, a, [a] * 4)
    assert all(Q == (a,) * 4 for Q in tr.tuples)


@st.composite
def groups(draw, max_order=10**4):
    orders = []
    total = 1
    for _ in range(draw(st.integers(1, 4))):
        o = draw(st.integers(1, max(1, max_order // total)))
        orders.append(o)
        total *= o
    if total < 2:
        orders[0] = 2
    return FiniteAbelianGroup(tuple(orders))


def element(G):
    return st.tuples(*(st.integers(0, o - 1) for o in G.orders))


@given(st.data())
def test_trade_coordinate_sums(data):
    G = data.draw(groups())
    anchor = data.draw(element(G))
    m = data.draw(st.integers(1, 8))
    start = data.draw(st.lists(element(G), min_size=m, max_size=m))
    tr = trade_points(G, anchor, start)
    assert len(tr.tuples) == m + 1
    for i in range(m):
        for axis, order in enumerate(G.orders):
            s = sum(Q[i][axis] for Q in tr.tuples)
            assert (s - (m + 1) * anchor[axis]) % order == 0
    for st_ in tr.steps:
        assert tr.tuples[st_.stage][:st_.stage - 1] == (anchor,) * (st_.stage - 1)
    assert tr.check() == []


def test_group_parse():
    assert FiniteAbelianGroup.parse("2x3").orders == (2, 3)
    assert FiniteAbelianGroup.parse("7").orders == (7,)
    assert FiniteAbelianGroup.parse("2,3").orders == (2, 3)
    with pytest.raises(ValueError):
        FiniteAbelianGroup.parse("two")
