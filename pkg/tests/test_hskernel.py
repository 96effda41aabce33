import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynfpt.errors import NoSuchSet, ParameterError, SetTooLarge
from dynfpt.hskernel import GoodSetIndex, nu, size_bound, solve_hs
from dynfpt.oracle import minimal_good, oracle_goodsets, oracle_goodsets_alt, oracle_hs


def build(family, k, d) -> GoodSetIndex:
    idx = GoodSetIndex(k, d)
    for s in family:
        idx.insert(s)
    return idx


def flags_match(idx: GoodSetIndex, table: dict) -> None:
    for s, row in table.items():
        assert idx.flags(s) == row, sorted(s)


def test_nu_table():
    assert [nu(r, 2) for r in range(4)] == [1, 3, 18, 162]
    assert size_bound(1, 2) == pytest.approx(2 * 2 * 4)


def test_empty():
    idx = GoodSetIndex(2, 3)
    assert idx.kernel == set() and idx.query() == frozenset()
    assert GoodSetIndex.static_build([], 2, 3).kernel == set()


def test_single_pair():
    idx = build([{"a", "b"}], 1, 2)
    assert idx.kernel == {frozenset("ab")}
    assert GoodSetIndex.static_build([{"a", "b"}], 1, 2).kernel == {frozenset("ab")}


def test_sunflower_matches_evaluator():
    k, d = 1, 3
    family = [frozenset({"a", f"x{i}", f"y{i}"}) for i in range(k + 2)]
    idx = build(family, k, d)
    table = oracle_goodsets(family, k, d)
    assert idx.kernel == minimal_good(table)
    assert GoodSetIndex.static_build(family, k, d).kernel == idx.kernel
    flags_match(idx, table)


def test_insert_delete_round_trip():
    empty = GoodSetIndex(2, 3).snapshot()
    idx = GoodSetIndex(2, 3)
    idx.insert({1, 2})
    idx.delete({1, 2})
    assert idx.snapshot() == empty
    for s in ({1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {1, 8}):
        idx.insert(s)
    for s in ({1, 8}, {1, 6, 7}, {1, 2, 3}, {1, 4, 5}):
        idx.delete(s)
    assert idx.snapshot() == empty


def test_query_examples():
    assert build([{"a", "b"}, {"c", "d"}], 1, 2).query() is None
    idx = build([set("abc"), set("ade"), set("afg")], 1, 3)
    assert idx.query() == frozenset("a")


def test_errors():
    idx = GoodSetIndex(1, 2)
    with pytest.raises(SetTooLarge):
        idx.insert({1, 2, 3})
    with pytest.raises(NoSuchSet):
        idx.delete({1, 2})
    with pytest.raises(ParameterError):
        GoodSetIndex(1, 5)
    with pytest.raises(ParameterError):
        GoodSetIndex(9, 2)


def test_downins_without_supersets_touches_only_itself():
    idx = GoodSetIndex(1, 3)
    idx.trace = []
    idx.insert({1, 2, 3})
    assert idx.trace == [("DOWNINS", 3, (1, 2, 3))]


def test_threshold_crossing_sends_upweak():
    # nu(1) = 2 at k = 1: {0} becomes good once two strong pairs contain it
    idx = GoodSetIndex(1, 2)
    idx.insert({0, 1})
    idx.trace = []
    idx.insert({0, 2})
    names = [c[0] for c in idx.trace]
    assert names.count("UPWEAK") == 2
    assert ("UPWEAK", 2, 1, (0, 1)) in idx.trace and ("UPWEAK", 2, 1, (0, 2)) in idx.trace
    assert idx.kernel == {frozenset({0})}


def random_family_ops(universe: int, d: int, ops: int, seed: int):
    rng = random.Random(seed)
    family: set[frozenset] = set()
    for _ in range(ops):
        if family and rng.random() < 0.4:
            s = rng.choice(sorted(family, key=sorted))
            family.discard(s)
            yield "-", s, family
        else:
            s = frozenset(rng.sample(range(universe), rng.randint(1, d)))
            if s in family:
                continue
            family.add(s)
            yield "+", s, family


def test_400_ops_two_oracles():
    k, d = 2, 3
    idx = GoodSetIndex(k, d)
    for op, s, family in random_family_ops(10, d, 400, 1):
        (idx.insert if op == "+" else idx.delete)(s)
        idx.check()
        table = oracle_goodsets(family, k, d)
        assert idx.kernel == minimal_good(table)
        got = idx.query()
        want = oracle_hs(family, k)
        assert (got is None) == (want is None)
        if got is not None:
            assert len(got) <= k and all(s & got for s in family)


def test_flags_equal_definition_small_k():
    # k = 1 makes nu small enough for deep goodness to occur
    k, d = 1, 3
    idx = GoodSetIndex(k, d)
    for step, (op, s, family) in enumerate(random_family_ops(7, d, 250, 3)):
        (idx.insert if op == "+" else idx.delete)(s)
        if step % 5 == 0:
            table = oracle_goodsets(family, k, d)
            flags_match(idx, table)
            assert table == oracle_goodsets_alt(family, k, d)
            assert idx.snapshot() == GoodSetIndex.static_build(family, k, d).snapshot()


def test_depth_bound():
    for k, d in ((1, 3), (2, 3), (1, 2), (3, 3), (1, 4)):
        idx = GoodSetIndex(k, d)
        for op, s, _ in random_family_ops(8, d, 300, k * 10 + d):
            (idx.insert if op == "+" else idx.delete)(s)
        assert idx.max_depth <= d <= k * d


def test_size_bounds_when_solvable():
    k, d = 2, 3
    idx = GoodSetIndex(k, d)
    for op, s, family in random_family_ops(12, d, 300, 8):
        (idx.insert if op == "+" else idx.delete)(s)
        if oracle_hs(family, k) is not None:
            assert len(idx.kernel) <= size_bound(k, d)
            assert len(idx.universe()) <= d * len(idx.kernel)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 6), min_size=1, max_size=3), max_size=14), st.integers(0, 3))
def test_solve_hs_exact(sets, k):
    got = solve_hs(sets, k)
    want = oracle_hs(set(sets), k)
    assert (got is None) == (want is None)
    if got is not None:
        assert len(got) <= k and all(s & got for s in sets)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 5), min_size=1, max_size=3), max_size=12, unique=True))
def test_kernel_is_minimal(sets):
    idx = build(sets, 1, 3)
    for s in idx.kernel:
        assert not any(idx.flags(a)["isgood"] for a in map(frozenset, _proper_subsets(s)))


def _proper_subsets(s):
    items = sorted(s)
    for mask in range(1, (1 << len(items)) - 1):
        yield [items[i] for i in range(len(items)) if mask >> i & 1]
