import math
import random
from collections import deque

import pytest

from dynfpt import linkcut
from dynfpt.errors import NoSuchTreeEdge, NotConnected, SameNode, WouldCreateCycle
from dynfpt.linkcut import LinkCutForest


class NaiveForest:
    def __init__(self):
        self.adj: list[set[int]] = []

    def maketree(self) -> int:
        self.adj.append(set())
        return len(self.adj) - 1

    def path(self, a: int, b: int) -> list[int] | None:
        prev = {a: None}
        q = deque([a])
        while q:
            x = q.popleft()
            if x == b:
                out = []
                while x is not None:
                    out.append(x)
                    x = prev[x]
                return out[::-1]
            for y in self.adj[x]:
                if y not in prev:
                    prev[y] = x
                    q.append(y)
        return None

    def connected(self, a: int, b: int) -> bool:
        return self.path(a, b) is not None

    def link(self, a, b):
        self.adj[a].add(b)
        self.adj[b].add(a)

    def cut(self, a, b):
        self.adj[a].discard(b)
        self.adj[b].discard(a)


def test_fresh_nodes_disconnected(lct_backend):
    f = LinkCutForest(lct_backend)
    a, b = f.maketree(), f.maketree()
    assert not f.connected(a, b)
    assert f.connected(a, a)


def test_link_cycle_rejected(lct_backend):
    f = LinkCutForest(lct_backend)
    a, b, c = (f.maketree() for _ in range(3))
    f.link(a, b)
    f.link(b, c)
    with pytest.raises(WouldCreateCycle):
        f.link(a, c)


def test_chain_of_ten(lct_backend):
    f = LinkCutForest(lct_backend)
    naive = NaiveForest()
    for _ in range(11):
        f.maketree()
        naive.maketree()
    for i in range(10):
        f.link(i, i + 1)
        naive.link(i, i + 1)
    for a in range(11):
        for b in range(11):
            assert f.connected(a, b) == naive.connected(a, b)


def test_cut_absent_edge(lct_backend):
    f = LinkCutForest(lct_backend)
    a, b, c = (f.maketree() for _ in range(3))
    f.link(a, b)
    f.link(b, c)
    with pytest.raises(NoSuchTreeEdge):
        f.cut(a, c)
    f.cut(a, b)
    assert not f.connected(a, c)


def test_after(lct_backend):
    f = LinkCutForest(lct_backend)
    a, x, b = (f.maketree() for _ in range(3))
    f.link(a, x)
    f.link(x, b)
    assert f.after(a, b) == x
    f.cut(x, b)
    f.link(a, b)
    assert f.after(a, b) == b
    with pytest.raises(SameNode):
        f.after(a, a)


def test_nca_star(lct_backend):
    f = LinkCutForest(lct_backend)
    r, a, b, c = (f.maketree() for _ in range(4))
    for x in (a, b, c):
        f.link(r, x)
    f.evert(r)
    assert f.nca(a, b) == r
    assert f.nca(a, a) == a
    assert f.findroot(c) == r
    d = f.maketree()
    with pytest.raises(NotConnected):
        f.nca(a, d)


def _differential(backend: str, n: int, ops: int, seed: int) -> LinkCutForest:
    rng = random.Random(seed)
    f = LinkCutForest(backend)
    naive = NaiveForest()
    for _ in range(n):
        f.maketree()
        naive.maketree()
    edges: list[tuple[int, int]] = []
    for _ in range(ops):
        r = rng.random()
        a, b = rng.randrange(n), rng.randrange(n)
        if r < 0.4 and a != b:
            if naive.connected(a, b):
                with pytest.raises(WouldCreateCycle):
                    f.link(a, b)
            else:
                f.link(a, b)
                naive.link(a, b)
                edges.append((a, b))
        elif r < 0.6 and edges:
            a, b = edges.pop(rng.randrange(len(edges)))
            f.cut(b, a) if rng.random() < 0.5 else f.cut(a, b)
            naive.cut(a, b)
        elif r < 0.7:
            f.evert(a)
        elif r < 0.85:
            assert f.connected(a, b) == naive.connected(a, b)
        elif a != b:
            p = naive.path(a, b)
            if p is None:
                with pytest.raises(NotConnected):
                    f.after(a, b)
            else:
                assert f.after(a, b) == p[1]
                r0 = rng.choice(p)
                f.evert(r0)
                # with r0 on the a-b path, the nca is r0 itself
                assert f.nca(a, b) == r0
    return f


def test_differential_small(lct_backend):
    for seed in range(5):
        _differential(lct_backend, 30, 2000, seed)


def test_differential_1e4_ops(lct_backend):
    _differential(lct_backend, 1000, 10_000, 7)


def test_rotation_bound(lct_backend):
    # amortized O(log n) per operation: a generous constant, fixed once
    n, ops = 1000, 10_000
    f = LinkCutForest(lct_backend)
    for _ in range(n):
        f.maketree()
    rng = random.Random(3)
    edges = []
    for _ in range(ops):
        a, b = rng.randrange(n), rng.randrange(n)
        if rng.random() < 0.6 and a != b and not f.connected(a, b):
            f.link(a, b)
            edges.append((a, b))
        elif edges:
            f.cut(*edges.pop(rng.randrange(len(edges))))
    assert f.rotations <= 20 * ops * math.log2(n)


def test_backends_agree_on_rotations():
    if linkcut.CCore is None:
        pytest.skip("compiled core not built")
    counts = []
    for be in ("py", "c"):
        f = _differential(be, 50, 1500, 11)
        counts.append(f.rotations)
    assert counts[0] == counts[1]
