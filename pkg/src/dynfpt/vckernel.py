"""Dynamic kernels for Vertex Cover, Connected Vertex Cover and Edge Dominating Set.

The vertex-cover kernel keeps an edge set E' with the property that a graph
has a vertex cover of size <= k iff E' does, and every such cover of E'
covers the whole graph. High-degree vertices *select* a bounded number of
incident edges; their remaining edges wait in an ordered list ``R[v]``.

Two variants share the code:

* ``"worstcase"``: a vertex is high iff its degree is >= k+1 and then selects
  exactly k+1 edges. Each update touches O(k) fields.
* ``"amortized"``: a vertex starts selecting (creates ``R[v]``) once its degree
  reaches 2k+1 and keeps doing so until its degree falls back to k. It then
  selects up to 2k+1 edges, so an update touches O(1) fields amortized.

``mutations`` counts every write to the kernel bookkeeping (selection flags,
R-list membership, R-list creation/removal and E' membership).
"""
from __future__ import annotations

import os
from itertools import combinations
from typing import Iterable, Iterator

from ._vc_py import VcCore as PyCore
from .errors import DuplicateEdge, LoopForbidden, NoSuchEdge, ParameterError, VertexOutOfRange

try:
    from ._vc_c import VcCore as CCore
except ImportError:  # extension not built
    CCore = None

BACKEND = "c" if CCore is not None and not os.environ.get("DYNFPT_PURE") else "py"

Edge = tuple[int, int]


def _key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


# -- static solvers ---------------------------------------------------------

def _branch_covers(edges: list[Edge], budget: int) -> Iterator[frozenset]:
    """Yield vertex covers of ``edges`` of size <= budget.

    Every minimal cover of size <= budget is contained in some yielded set.
    Vertices whose degree exceeds the remaining budget are forced.
    """

    def rec(es: list[Edge], b: int, chosen: frozenset) -> Iterator[frozenset]:
        if not es:
            yield chosen
            return
        if b == 0:
            return
        deg: dict[int, int] = {}
        for a, c in es:
            deg[a] = deg.get(a, 0) + 1
            deg[c] = deg.get(c, 0) + 1
        if len(es) > b * max(deg.values()):
            return
        forced = [x for x, dx in deg.items() if dx > b]
        if forced:
            x = forced[0]
            yield from rec([e for e in es if x not in e], b - 1, chosen | {x})
            return
        a, c = es[0]
        yield from rec([e for e in es if a not in e], b - 1, chosen | {a})
        yield from rec([e for e in es if c not in e], b - 1, chosen | {c})

    yield from rec(list(edges), budget, frozenset())


def solve_vc(edges: Iterable[Edge], k: int) -> frozenset | None:
    """Vertex cover of size <= k by bounded branching, or None."""
    for cover in _branch_covers(list(edges), k):
        return cover
    return None


def _connected_set(xs: frozenset, adj: dict[int, set[int]]) -> bool:
    if len(xs) <= 1:
        return True
    start = next(iter(xs))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y in xs and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(xs)


def solve_cvc(vertices: Iterable[int], edges: list[Edge], k: int,
              forced: frozenset = frozenset()) -> frozenset | None:
    """Connected vertex cover of size <= k containing ``forced``, or None.

    Branches to a cover, then tries every way of adding the remaining budget
    of connector vertices.
    """
    if not edges:
        return frozenset()
    adj: dict[int, set[int]] = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    rest = [e for e in edges if e[0] not in forced and e[1] not in forced]
    pool = sorted(set(vertices))
    seen: set[frozenset] = set()
    for cover in _branch_covers(rest, k - len(forced)):
        base = cover | forced
        if base in seen:
            continue
        seen.add(base)
        others = [x for x in pool if x not in base]
        for extra in range(k - len(base) + 1):
            for add in combinations(others, extra):
                xs = base | frozenset(add)
                if _connected_set(xs, adj):
                    return xs
    return None


def _max_matching(vs: list[int], adj: dict[int, set[int]]) -> list[Edge]:
    best: list[Edge] = []

    def rec(i: int, used: set[int], cur: list[Edge]) -> None:
        nonlocal best
        if len(cur) + (len(vs) - i) // 2 + 1 <= len(best):
            return
        if len(cur) > len(best):
            best = list(cur)
        if i >= len(vs):
            return
        x = vs[i]
        if x not in used:
            for y in vs[i + 1:]:
                if y not in used and y in adj.get(x, ()):
                    used.add(x)
                    used.add(y)
                    cur.append((x, y))
                    rec(i + 1, used, cur)
                    cur.pop()
                    used.discard(x)
                    used.discard(y)
        rec(i + 1, used, cur)

    rec(0, set(), [])
    return best


def solve_eds(edges: list[Edge], k: int) -> frozenset | None:
    """Edge dominating set of size <= k, or None.

    Endpoints of an EDS form a vertex cover C, and the cheapest EDS with
    endpoint set containing C has |C| - nu(G[C]) edges. That quantity never
    shrinks when C grows, so trying the covers produced by branching suffices.
    """
    if not edges:
        return frozenset()
    adj: dict[int, set[int]] = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    best: frozenset | None = None
    for cover in _branch_covers(edges, 2 * k):
        vs = sorted(cover)
        match = _max_matching(vs, adj)
        cost = len(vs) - len(match)
        if cost > k or (best is not None and cost >= len(best)):
            continue
        out = {_key(a, b) for a, b in match}
        matched = {x for e in match for x in e}
        for x in vs:
            if x not in matched:
                out.add(_key(x, min(adj[x])))
        best = frozenset(out)
    return best


# -- vertex cover kernel ----------------------------------------------------

class VcKernel:
    """Dynamic Buss-style kernel for Vertex Cover with parameter ``k``.

    Instances are built on the compiled update core when it is available
    (``backend="c"``), else on the pure-Python one.
    """

    def __new__(cls, n: int, k: int, variant: str = "amortized", backend: str | None = None):
        if cls is VcKernel:
            backend = backend or BACKEND
            if backend == "c" and CCore is None:
                raise RuntimeError("compiled vertex-cover core is not available")
            cls = _VcKernelC if backend == "c" else _VcKernelPy
        return super().__new__(cls)

    def __init__(self, n: int, k: int, variant: str = "amortized", backend: str | None = None):
        if k < 0:
            raise ParameterError("k must be nonnegative")
        if variant not in ("worstcase", "amortized"):
            raise ParameterError(f"unknown variant {variant!r}")
        self._setup(n, k, variant)
        self.backend = "c" if isinstance(self, _VcKernelC) else "py"

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    # -- queries -------------------------------------------------------
    def kernel_edges(self) -> set[Edge]:
        return set(self.kedges)

    def kernel_vertex_count(self) -> int:
        return self.kverts

    def selecting(self) -> list[int]:
        """Vertices that currently keep an R list (high, or medium looking high)."""
        return [v for v in range(self.n) if self.R[v] is not None]

    def over_bound(self) -> bool:
        return len(self.kedges) > self.max_edges or self.kverts > self.max_vertices

    def query(self) -> frozenset | None:
        if self.over_bound():
            return None
        return solve_vc(sorted(self.kedges), self.k)

    def check(self) -> None:
        """Assert the kernel invariants against a recount."""
        k = self.k
        for x in range(self.n):
            deg = len(self.adj[x])
            sel = sum(1 for e in self.adj[x].values() if self._sel(e, x))
            assert sel == self.nsel[x]
            rx = self.R[x]
            if self.variant == "worstcase":
                assert (rx is not None) == (deg >= k + 1)
            else:
                if deg <= k:
                    assert rx is None
                if deg >= 2 * k + 1:
                    assert rx is not None
            if rx is None:
                assert sel == 0
            else:
                assert sel == min(deg, self.cap)
                assert len(rx) == deg - sel
                for y in rx:
                    assert not self._sel(self.adj[x][y], x)
        want = set()
        for x in range(self.n):
            for y, e in self.adj[x].items():
                if x < y:
                    hu = self.R[e.u] is not None
                    hv = self.R[e.v] is not None
                    if (not hu and not hv) or (hu and e.sel_u) or (hv and e.sel_v):
                        want.add((x, y))
        assert want == self.kedges
        assert self.kverts == len({x for e in want for x in e})


class _VcKernelPy(VcKernel, PyCore):
    pass


if CCore is not None:
    class _VcKernelC(VcKernel, CCore):
        pass
else:
    class _VcKernelC:  # placeholder so isinstance checks work
        pass


def scratch_vc(edges: Iterable[Edge], n: int, k: int) -> frozenset | None:
    """Rebuild the Buss kernel from the edge list and solve it (baseline)."""
    es = list(edges)
    deg = [0] * n
    for a, b in es:
        deg[a] += 1
        deg[b] += 1
    high = frozenset(v for v in range(n) if deg[v] > k)
    if len(high) > k:
        return None
    rest = [e for e in es if e[0] not in high and e[1] not in high]
    kk = k - len(high)
    if len(rest) > kk * k:
        return None
    sub = solve_vc(rest, kk)
    return None if sub is None else sub | high


# -- connected vertex cover --------------------------------------------------

class CvcKernel:
    """Dynamic kernel for Connected Vertex Cover.

    S holds the vertices of degree > k. For v outside S, ``dgs[v]`` counts
    neighbours outside S; ``L`` holds those with ``dgs > 0``. Every other
    non-isolated vertex q outside S has all neighbours in S and sits in the
    bucket ``LY[N(q)]``. Buckets are keyed by the exact neighbour set, which
    has at most k members, so one update re-files O(k) vertices whatever
    the size of S.
    """

    def __init__(self, n: int, k: int):
        if k < 0:
            raise ParameterError("k must be nonnegative")
        self.n = n
        self.k = k
        self.N: list[dict[int, None]] = [dict() for _ in range(n)]
        self.S: set[int] = set()
        self.dgs = [0] * n
        self.L: set[int] = set()
        self.LY: dict[frozenset, dict[int, None]] = {}
        self.qkey: list[frozenset | None] = [None] * n
        self.low_edges = 0  # edges with both ends outside S
        self.mutations = 0

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(v)

    def _file(self, q: int) -> None:
        """Re-place a vertex outside S into L or the right bucket."""
        old = self.qkey[q]
        if old is not None:
            b = self.LY[old]
            del b[q]
            if not b:
                del self.LY[old]
            self.qkey[q] = None
            self.mutations += 1
        if q in self.S:
            self.L.discard(q)
            return
        if self.dgs[q] > 0:
            if q not in self.L:
                self.L.add(q)
                self.mutations += 1
            return
        if q in self.L:
            self.L.discard(q)
            self.mutations += 1
        if self.N[q]:
            key = frozenset(self.N[q])
            self.LY.setdefault(key, {})[q] = None
            self.qkey[q] = key
            self.mutations += 1

    def _enter_s(self, x: int) -> None:
        self.S.add(x)
        self.mutations += 1
        for a in self.N[x]:
            if a not in self.S:
                self.dgs[a] -= 1
                self.low_edges -= 1
                self._file(a)
        self.dgs[x] = 0
        self._file(x)

    def _leave_s(self, x: int) -> None:
        self.S.discard(x)
        self.mutations += 1
        c = 0
        for a in self.N[x]:
            if a not in self.S:
                self.dgs[a] += 1
                self.low_edges += 1
                c += 1
                self._file(a)
        self.dgs[x] = c
        self._file(x)

    def insert_edge(self, x: int, y: int) -> None:
        self._check(x)
        self._check(y)
        if x == y:
            raise LoopForbidden(x)
        if y in self.N[x]:
            raise DuplicateEdge(_key(x, y))
        self.N[x][y] = None
        self.N[y][x] = None
        if x not in self.S and y not in self.S:
            self.dgs[x] += 1
            self.dgs[y] += 1
            self.low_edges += 1
        for z in (x, y):
            if z not in self.S and len(self.N[z]) > self.k:
                self._enter_s(z)
        for z in (x, y):
            if z not in self.S:
                self._file(z)

    def delete_edge(self, x: int, y: int) -> None:
        self._check(x)
        self._check(y)
        if y not in self.N[x]:
            raise NoSuchEdge(_key(x, y))
        del self.N[x][y]
        del self.N[y][x]
        if x not in self.S and y not in self.S:
            self.dgs[x] -= 1
            self.dgs[y] -= 1
            self.low_edges -= 1
        for z in (x, y):
            if z in self.S and len(self.N[z]) <= self.k:
                self._leave_s(z)
        for z in (x, y):
            if z not in self.S:
                self._file(z)

    def kernel_vertices(self) -> set[int]:
        ks = set(self.S) | self.L
        for s in self.S:
            for i, a in enumerate(self.N[s]):
                if i > self.k:
                    break
                ks.add(a)
        for bucket in self.LY.values():
            ks.add(next(iter(bucket)))
        return ks

    def query(self) -> frozenset | None:
        k = self.k
        if len(self.S) > k or self.low_edges > k * k:
            return None
        ks = self.kernel_vertices()
        edges = []
        for a in ks:
            for b in self.N[a]:
                if a < b and b in ks:
                    edges.append((a, b))
        return solve_cvc(ks, edges, k, frozenset(self.S))

    def check(self) -> None:
        for v in range(self.n):
            assert (v in self.S) == (len(self.N[v]) > self.k)
            if v in self.S:
                continue
            d = sum(1 for a in self.N[v] if a not in self.S)
            assert d == self.dgs[v]
            assert (v in self.L) == (d > 0)
            if d == 0 and self.N[v]:
                assert self.qkey[v] == frozenset(self.N[v])
                assert v in self.LY[self.qkey[v]]
            else:
                assert self.qkey[v] is None
        assert sum(len(b) for b in self.LY.values()) == sum(1 for q in self.qkey if q is not None)


# -- edge dominating set ------------------------------------------------------

class EdsKernel:
    """Edge Dominating Set through a worst-case VC kernel with parameter 2k."""

    def __init__(self, n: int, k: int):
        if k < 0:
            raise ParameterError("k must be nonnegative")
        self.k = k
        self.vc = VcKernel(n, 2 * k, "worstcase")

    @property
    def mutations(self) -> int:
        return self.vc.mutations

    def insert_edge(self, u: int, v: int) -> None:
        self.vc.insert_edge(u, v)

    def delete_edge(self, u: int, v: int) -> None:
        self.vc.delete_edge(u, v)

    def query(self) -> frozenset | None:
        k = self.k
        vc = self.vc
        high = vc.selecting()  # degree > 2k
        if len(high) > 2 * k:
            return None
        hs = set(high)
        kv = {x for e in vc.kedges for x in e} - hs
        if len(kv) > 4 * k * k + 2 * k:
            return None
        edges = set()
        for a in kv:
            for b in vc.adj[a]:
                if b in kv or b in hs:
                    edges.add(_key(a, b))
        for a, b in combinations(high, 2):
            if b in vc.adj[a]:
                edges.add(_key(a, b))
        return solve_eds(sorted(edges), k)
