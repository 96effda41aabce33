import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynfpt import vckernel
from dynfpt.errors import DuplicateEdge, NoSuchEdge, ParameterError
from dynfpt.oracle import _induced_connected, oracle_cvc, oracle_eds, oracle_vc
from dynfpt.vckernel import CvcKernel, EdsKernel, VcKernel, scratch_vc, solve_vc

VARIANTS = ["worstcase", "amortized"]


def covers(edges, xs) -> bool:
    return all(a in xs or b in xs for a, b in edges)


def test_first_edge_enters_kernel(vc_backend):
    kv = VcKernel(4, 2, backend=vc_backend)
    kv.insert_edge(0, 1)
    assert kv.kernel_edges() == {(0, 1)}
    kv.delete_edge(0, 1)
    assert kv.kernel_edges() == set()


def test_star_center_selects_all(vc_backend):
    kv = VcKernel(6, 3, "worstcase", backend=vc_backend)
    for leaf in range(1, 5):
        kv.insert_edge(0, leaf)
    assert kv.selecting() == [0]
    assert kv.nsel[0] == 4
    assert not kv.R[0]
    kv.check()


def test_worstcase_promotion_on_delete(vc_backend):
    kv = VcKernel(6, 2, "worstcase", backend=vc_backend)
    for leaf in range(1, 5):
        kv.insert_edge(0, leaf)
    assert kv.nsel[0] == 3 and len(kv.R[0]) == 1
    selected = next(y for y, e in kv.adj[0].items() if kv._sel(e, 0))
    kv.delete_edge(0, selected)
    assert kv.nsel[0] == 3 and not kv.R[0]
    kv.check()


def test_k5_with_k1_is_no(vc_backend):
    kv = VcKernel(5, 1, backend=vc_backend)
    for a, b in combinations(range(5), 2):
        kv.insert_edge(a, b)
    assert len(kv.kernel_edges()) > 4
    assert kv.query() is None


@pytest.mark.parametrize("variant", VARIANTS)
def test_small_queries(variant, vc_backend):
    assert VcKernel(0, 0, variant, backend=vc_backend).query() == frozenset()
    kv = VcKernel(3, 1, variant, backend=vc_backend)
    for a, b in ((0, 1), (1, 2), (0, 2)):
        kv.insert_edge(a, b)
    assert kv.query() is None
    kv2 = VcKernel(3, 2, variant, backend=vc_backend)
    for a, b in ((0, 1), (1, 2), (0, 2)):
        kv2.insert_edge(a, b)
    got = kv2.query()
    assert len(got) == 2 and covers([(0, 1), (1, 2), (0, 2)], got)


def test_errors(vc_backend):
    kv = VcKernel(3, 1, backend=vc_backend)
    kv.insert_edge(0, 1)
    with pytest.raises(DuplicateEdge):
        kv.insert_edge(1, 0)
    with pytest.raises(NoSuchEdge):
        kv.delete_edge(1, 2)
    with pytest.raises(ParameterError):
        VcKernel(3, -1)
    with pytest.raises(ParameterError):
        VcKernel(3, 1, "eager")


def random_ops(n: int, ops: int, seed: int, dense: float = 0.5):
    rng = random.Random(seed)
    present: set[tuple[int, int]] = set()
    for _ in range(ops):
        a, b = rng.sample(range(n), 2)
        e = (min(a, b), max(a, b))
        if e in present:
            present.discard(e)
            yield "-", e
        elif rng.random() < dense or not present:
            present.add(e)
            yield "+", e
        else:
            e = rng.choice(sorted(present))
            present.discard(e)
            yield "-", e


@pytest.mark.parametrize("variant", VARIANTS)
def test_vc_against_oracle(variant, vc_backend):
    n, k = 12, 3
    kv = VcKernel(n, k, variant, backend=vc_backend)
    present: set[tuple[int, int]] = set()
    bound = k * (k + 1) if variant == "worstcase" else 2 * k * (k + 1)
    for op, e in random_ops(n, 300, 1, dense=0.45):
        (kv.insert_edge if op == "+" else kv.delete_edge)(*e)
        (present.add if op == "+" else present.discard)(e)
        kv.check()
        got = kv.query()
        want = oracle_vc(n, present, k)
        assert (got is None) == (want is None)
        if got is not None:
            assert len(got) <= k and covers(present, got)
            assert len(kv.kernel_edges()) <= bound


@pytest.mark.parametrize("variant", VARIANTS)
def test_backends_identical(variant):
    if vckernel.CCore is None:
        pytest.skip("compiled core not built")
    a = VcKernel(30, 2, variant, backend="py")
    b = VcKernel(30, 2, variant, backend="c")
    for op, e in random_ops(30, 3000, 4, dense=0.7):
        for kv in (a, b):
            (kv.insert_edge if op == "+" else kv.delete_edge)(*e)
        assert a.kernel_edges() == b.kernel_edges()
        assert a.mutations == b.mutations
        assert a.query() == b.query()


def test_worstcase_mutations_per_update(vc_backend):
    # each update touches O(k) records
    for k in (1, 2, 4):
        kv = VcKernel(20, k, "worstcase", backend=vc_backend)
        last = 0
        for op, e in random_ops(20, 2000, k, dense=0.7):
            (kv.insert_edge if op == "+" else kv.delete_edge)(*e)
            assert kv.mutations - last <= 8 * (k + 1)
            last = kv.mutations


def test_scratch_agrees():
    for op_seed in range(3):
        present = set()
        for op, e in random_ops(10, 150, op_seed):
            (present.add if op == "+" else present.discard)(e)
            got = scratch_vc(present, 10, 2)
            want = oracle_vc(10, present, 2)
            assert (got is None) == (want is None)
            if got is not None:
                assert covers(present, got) and len(got) <= 2


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=20), st.integers(0, 4))
def test_solve_vc_exact(pairs, k):
    edges = sorted({(min(a, b), max(a, b)) for a, b in pairs if a != b})
    got = solve_vc(edges, k)
    want = oracle_vc(8, edges, k)
    assert (got is None) == (want is None)
    if got is not None:
        assert covers(edges, got) and len(got) <= k


# -- connected vertex cover ---------------------------------------------------

def build(cls, n, k, edges):
    s = cls(n, k)
    for e in edges:
        s.insert_edge(*e)
    return s


def test_cvc_examples():
    star = build(CvcKernel, 5, 1, [(0, i) for i in range(1, 5)])
    assert star.query() == frozenset({0})
    p4 = build(CvcKernel, 4, 2, [(0, 1), (1, 2), (2, 3)])
    assert p4.query() == frozenset({1, 2})
    two = build(CvcKernel, 4, 2, [(0, 1), (2, 3)])
    assert two.query() is None


def test_cvc_against_oracle():
    n, k = 12, 3
    for seed in range(2):
        s = CvcKernel(n, k)
        present: set[tuple[int, int]] = set()
        for op, e in random_ops(n, 200, seed + 10, dense=0.4):
            (s.insert_edge if op == "+" else s.delete_edge)(*e)
            (present.add if op == "+" else present.discard)(e)
            s.check()
            got = s.query()
            want = oracle_cvc(n, present, k)
            assert (got is None) == (want is None)
            if got is not None:
                assert covers(present, got) and len(got) <= k
                assert _induced_connected(got, present)


# -- edge dominating set --------------------------------------------------------

def test_eds_examples():
    assert EdsKernel(0, 0).query() == frozenset()
    tri = build(EdsKernel, 3, 1, [(0, 1), (1, 2), (0, 2)])
    got = tri.query()
    assert got is not None and len(got) == 1
    p5 = build(EdsKernel, 5, 1, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert p5.query() is None


def test_eds_against_oracle():
    n, k = 10, 2
    s = EdsKernel(n, k)
    present: set[tuple[int, int]] = set()
    for op, e in random_ops(n, 250, 3, dense=0.4):
        (s.insert_edge if op == "+" else s.delete_edge)(*e)
        (present.add if op == "+" else present.discard)(e)
        got = s.query()
        want = oracle_eds(n, present, k)
        assert (got is None) == (want is None)
        if got is not None:
            ends = {x for e in got for x in e}
            assert len(got) <= k and got <= present and covers(present, ends)
