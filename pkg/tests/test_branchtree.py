import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chisquare

from dynfpt.branchtree import BranchTree
from dynfpt.errors import DuplicateSet, NoSuchSet, ParameterError, SetTooLarge
from dynfpt.oracle import oracle_hs


def hits(family, xs) -> bool:
    return all(s & xs for s in family)


def test_single_edge():
    t = BranchTree(1, 2, seed=0)
    t.insert({"a", "b"})
    assert t.root.witness == frozenset("ab")
    assert len(t.leaves()) == 2
    assert t.query() in (frozenset("a"), frozenset("b"))
    t.delete({"a", "b"})
    assert t.query() == frozenset()
    assert t.root.is_leaf()


def test_disjoint_sets_force_no():
    k = 3
    t = BranchTree(k, 3, seed=1)
    for i in range(k + 1):
        t.insert({3 * i, 3 * i + 1, 3 * i + 2})
    assert t.query() is None
    t.check()


def test_small_queries():
    assert BranchTree(2, 2).query() == frozenset()
    tri = BranchTree(1, 2)
    for e in ((0, 1), (1, 2), (0, 2)):
        tri.insert(e)
    assert tri.query() is None
    t = BranchTree(1, 3)
    t.insert("abc")
    t.insert("ade")
    assert t.query() == frozenset("a")


def test_errors():
    t = BranchTree(1, 2)
    with pytest.raises(SetTooLarge):
        t.insert({1, 2, 3})
    t.insert({1, 2})
    with pytest.raises(DuplicateSet):
        t.insert({2, 1})
    with pytest.raises(NoSuchSet):
        t.delete({1, 3})
    with pytest.raises(ParameterError):
        BranchTree(2, 7)


def test_delete_of_non_witness_rebuilds_nothing():
    t = BranchTree(2, 2, seed=5)
    for e in ((0, 1), (2, 3), (4, 5), (6, 7)):
        t.insert(e)
    witnesses = set()
    stack = [t.root]
    while stack:
        x = stack.pop()
        if x.witness is not None:
            witnesses.add(x.witness)
            stack.extend(x.children.values())
    spare = next(s for s in map(frozenset, ((0, 1), (2, 3), (4, 5), (6, 7))) if s not in witnesses)
    built, rebuilt = t.nodes_built, t.rebuilds
    t.delete(spare)
    assert (t.nodes_built, t.rebuilds) == (built, rebuilt)
    t.check()


def test_random_ops_against_oracle():
    rng = random.Random(2)
    universe = list(range(12))
    t = BranchTree(3, 3, seed=9)
    family: set[frozenset] = set()
    for _ in range(200):
        if family and rng.random() < 0.4:
            s = rng.choice(sorted(family, key=sorted))
            t.delete(s)
            family.discard(s)
        else:
            s = frozenset(rng.sample(universe, rng.randint(1, 3)))
            if s in family:
                continue
            t.insert(s)
            family.add(s)
        t.check()
        got = t.query()
        want = oracle_hs(family, 3)
        assert (got is None) == (want is None)
        if got is not None:
            assert len(got) <= 3 and hits(family, got)


def test_answers_do_not_depend_on_seed():
    rng = random.Random(4)
    ops = []
    family: set[frozenset] = set()
    for _ in range(120):
        if family and rng.random() < 0.35:
            s = rng.choice(sorted(family, key=sorted))
            family.discard(s)
            ops.append(("-", s))
        else:
            s = frozenset(rng.sample(range(9), 2))
            if s not in family:
                family.add(s)
                ops.append(("+", s))
    answers = []
    for seed in range(50):
        t = BranchTree(2, 2, seed=seed)
        row = []
        for op, s in ops:
            (t.insert if op == "+" else t.delete)(s)
            row.append(t.query() is None)
        answers.append(row)
    assert all(row == answers[0] for row in answers)


def root_witness_counts(seeds: int) -> list[int]:
    edges = [frozenset((2 * i, 2 * i + 1)) for i in range(5)]
    counts = [0] * 5
    for seed in range(seeds):
        t = BranchTree(2, 2, seed=seed)
        for e in edges:
            t.insert(e)
        counts[edges.index(t.root.witness)] += 1
    return counts


def test_root_witness_uniform():
    counts = root_witness_counts(10_000)
    assert chisquare(counts).pvalue > 0.01


@settings(max_examples=40, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 6), min_size=1, max_size=2), max_size=15), st.integers(0, 3))
def test_yes_pointer_consistent(sets, k):
    t = BranchTree(k, 2, seed=len(sets))
    family = set()
    for s in sets:
        if s in family:
            t.delete(s)
            family.discard(s)
        else:
            t.insert(s)
            family.add(s)
    t.check()
    assert (t.query() is None) == (oracle_hs(family, k) is None)
