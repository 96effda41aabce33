"""Dynamic Max Leaf Spanning Tree.

A vertex is *useless* when it has degree 2 and both neighbours have degree
2. Maximal runs of useless vertices are contracted into single edges of the
resolved graph G*; each such edge keeps its run as a chain. A component that
is a bare cycle has no non-useless vertex to hang a chain on and stays
uncontracted.

Only vertices of degree 2 sit next to a chain, so G* is simple, and a tree
of G* with l leaves lifts to a tree of G with l leaves: a G* edge in the
tree takes its whole chain, a non-tree G* edge takes its chain minus the
final G-edge. The structure keeps a spanning forest T* of G* (dynamic
connectivity), the lifted forest T of G, and a link/cut copy D of T.

Queries follow the kernel: disconnected means no tree; a vertex of degree
>= k gives a star-based tree built from T with ``after``; otherwise a BFS
ball S of G* (or all of G* when it is small) is solved exactly and merged
into T.
"""
from __future__ import annotations

from collections import deque

from .dynconn import ConnectivityForest
from .errors import DuplicateEdge, LoopForbidden, NoSuchEdge, ParameterError, VertexOutOfRange
from .linkcut import LinkCutForest

NOT_CONNECTED = "NotConnected"
NO_TREE = "NoTree"


def kernel_threshold(k: int) -> int:
    return 4 * k * k + 12 * k + 8


class _Chain:
    """A G* edge: endpoints a, b and the contracted run between them (a side first)."""

    __slots__ = ("a", "b", "inner")

    def __init__(self, a: int, b: int, inner: list[int]):
        self.a = a
        self.b = b
        self.inner = inner

    def path(self) -> list[int]:
        return [self.a, *self.inner, self.b]

    def final(self) -> tuple[int, int]:
        return (self.inner[-1] if self.inner else self.a), self.b


class DynamicMlst:
    def __init__(self, n: int, k: int, backend: str | None = None):
        if k < 0:
            raise ParameterError("k must be nonnegative")
        self.n = n
        self.k = k
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.m = 0
        # degree index
        self.bydeg: list[set[int]] = [set(range(n))] + [set() for _ in range(max(n - 1, 0))]
        self.maxdeg = 0
        # G*
        self.conn = ConnectivityForest(n, backend=backend)
        self.rec: dict[int, _Chain] = {}
        self.chain_of: list[int | None] = [None] * n
        self.gsadj: list[dict[int, int]] = [dict() for _ in range(n)]  # rid -> other end
        self.direct: dict[tuple[int, int], int] = {}
        self.cyc = [False] * n
        # T and D
        self.tadj: list[set[int]] = [set() for _ in range(n)]
        self.tcount = 0
        self.D = LinkCutForest(backend)
        for _ in range(n):
            self.D.maketree()
        self.walk_steps = 0
        self.fallbacks = 0

    # -- small helpers -------------------------------------------------------
    def _useless(self, x: int) -> bool:
        adj = self.adj
        if len(adj[x]) != 2:
            return False
        return all(len(adj[w]) == 2 for w in adj[x])

    def _set_deg(self, x: int, old: int, new: int) -> None:
        self.bydeg[old].discard(x)
        self.bydeg[new].add(x)
        if new > self.maxdeg:
            self.maxdeg = new
        while self.maxdeg and not self.bydeg[self.maxdeg]:
            self.maxdeg -= 1

    def _t_add(self, x: int, y: int) -> None:
        self.tadj[x].add(y)
        self.tadj[y].add(x)
        self.tcount += 1
        self.D.link(x, y)

    def _t_remove(self, x: int, y: int) -> None:
        self.tadj[x].discard(y)
        self.tadj[y].discard(x)
        self.tcount -= 1
        self.D.cut(x, y)

    def in_gstar(self, x: int) -> bool:
        return self.chain_of[x] is None

    # -- G* edges ------------------------------------------------------------------
    def _create(self, a: int, b: int, inner: list[int]) -> None:
        rid = self.conn.conn_insert(a, b)
        ch = _Chain(a, b, inner)
        self.rec[rid] = ch
        for c in inner:
            self.chain_of[c] = rid
        self.gsadj[a][rid] = b
        self.gsadj[b][rid] = a
        if not inner:
            self.direct[(min(a, b), max(a, b))] = rid
        p = ch.path()
        for i in range(len(p) - 2):
            self._t_add(p[i], p[i + 1])
        if self.conn.is_tree_edge(rid):
            self._t_add(*ch.final())

    def _dissolve(self, rid: int, loose_edges: list[tuple[int, int]]) -> None:
        ch = self.rec.pop(rid)
        p = ch.path()
        self.walk_steps += len(p)
        for i in range(len(p) - 2):
            self._t_remove(p[i], p[i + 1])
        if self.conn.is_tree_edge(rid):
            self._t_remove(*ch.final())
        for c in ch.inner:
            self.chain_of[c] = None
        del self.gsadj[ch.a][rid]
        del self.gsadj[ch.b][rid]
        if not ch.inner:
            del self.direct[(min(ch.a, ch.b), max(ch.a, ch.b))]
        rep = self.conn.delete_id(rid)
        if rep is not None:
            self._t_add(*self.rec[rep].final())
        for i in range(len(p) - 1):
            loose_edges.append((p[i], p[i + 1]))

    def _covering(self, x: int, y: int) -> int | None:
        if self.chain_of[x] is not None:
            return self.chain_of[x]
        if self.chain_of[y] is not None:
            return self.chain_of[y]
        return self.direct.get((min(x, y), max(x, y)))

    def _dissolve_cycle(self, x: int, loose: list[tuple[int, int]]) -> None:
        """Dissolve every direct edge of the bare cycle through ``x``."""
        todo = [x]
        while todo:
            y = todo.pop()
            if not self.cyc[y]:
                continue
            self.cyc[y] = False
            for rid, z in list(self.gsadj[y].items()):
                if rid in self.rec:
                    self._dissolve(rid, loose)
                todo.append(z)

    def _walk(self, x: int, y: int) -> None:
        """Create the G* edge (or bare cycle) containing G-edge (x, y)."""
        useless = self._useless
        fwd = [x, y]
        prev, cur = x, y
        while useless(cur):
            a, b = self.adj[cur]
            nxt = b if a == prev else a
            if nxt == x:
                self._make_cycle(fwd)
                return
            fwd.append(nxt)
            prev, cur = cur, nxt
        back: list[int] = []
        prev, cur = y, x
        while useless(cur):
            a, b = self.adj[cur]
            nxt = b if a == prev else a
            back.append(nxt)
            prev, cur = cur, nxt
        path = back[::-1] + fwd
        self.walk_steps += len(path)
        assert path[0] != path[-1]
        self._create(path[0], path[-1], path[1:-1])

    def _make_cycle(self, cyc: list[int]) -> None:
        self.walk_steps += len(cyc)
        for v in cyc:
            self.cyc[v] = True
        for i in range(len(cyc)):
            self._create(cyc[i], cyc[(i + 1) % len(cyc)], [])

    # -- updates -------------------------------------------------------------------
    def _check_pair(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise VertexOutOfRange((u, v))
        if u == v:
            raise LoopForbidden(u)

    def insert_edge(self, u: int, v: int) -> None:
        self._check_pair(u, v)
        if v in self.adj[u]:
            raise DuplicateEdge((min(u, v), max(u, v)))
        self._update(u, v, +1)

    def delete_edge(self, u: int, v: int) -> None:
        self._check_pair(u, v)
        if v not in self.adj[u]:
            raise NoSuchEdge((min(u, v), max(u, v)))
        self._update(u, v, -1)

    def _update(self, u: int, v: int, sign: int) -> None:
        adj = self.adj
        cand = {u, v}
        for x in (u, v):
            d = len(adj[x])
            if d == 2 or d + sign == 2:
                cand.update(adj[x])
        loose: list[tuple[int, int]] = []
        if sign < 0:
            rid = self._covering(u, v)
            if rid in self.rec:
                self._dissolve(rid, loose)
        for x in sorted(cand):
            if self.cyc[x]:
                self._dissolve_cycle(x, loose)
            elif self.chain_of[x] is not None:
                self._dissolve(self.chain_of[x], loose)
            else:
                d = len(adj[x])
                dd = d + (sign if x in (u, v) else 0)
                if d == 2 or dd == 2:
                    for rid in list(self.gsadj[x]):
                        if rid in self.rec:
                            self._dissolve(rid, loose)
        # apply to G
        for x, y in ((u, v), (v, u)):
            d = len(adj[x])
            if sign > 0:
                adj[x].add(y)
            else:
                adj[x].discard(y)
            self._set_deg(x, d, d + sign)
        self.m += sign
        if sign > 0:
            loose.append((u, v))
        for x, y in loose:
            if y in adj[x] and self._covering(x, y) is None:
                self._walk(x, y)

    # -- queries ----------------------------------------------------------------------
    def connected(self) -> bool:
        return self.n <= 1 or self.tcount == self.n - 1

    def tree_edges(self) -> list[tuple[int, int]]:
        return sorted((x, y) for x in range(self.n) for y in self.tadj[x] if x < y)

    def gstar_vertices(self) -> list[int]:
        return [x for x in range(self.n) if self.chain_of[x] is None]

    def gstar_edges(self) -> list[tuple[int, int, frozenset]]:
        return sorted((min(c.a, c.b), max(c.a, c.b), frozenset(c.inner)) for c in self.rec.values())

    def query(self) -> str | list[tuple[int, int]]:
        """NOT_CONNECTED, NO_TREE, or the edges of a spanning tree with >= k leaves."""
        n, k = self.n, self.k
        if not self.connected():
            return NOT_CONNECTED
        if n == 1:
            return [] if k <= 0 else NO_TREE
        if k > n:
            return NO_TREE
        if k <= 2:
            return self.tree_edges()
        if self.maxdeg >= k:
            return self._star_tree()
        if self.maxdeg <= 2:
            return NO_TREE  # a path or a cycle: every spanning tree is a path
        return self._kernel_tree()

    def _star_tree(self) -> list[tuple[int, int]]:
        v = next(iter(self.bydeg[self.maxdeg]))
        D = self.D
        added: list[tuple[int, int]] = []
        removed: list[tuple[int, int]] = []
        for y in sorted(self.adj[v])[: self.k]:
            if D.has_edge(y, v):
                continue
            w = D.after(y, v)
            D.cut(y, w)
            removed.append((y, w))
            D.link(y, v)
            added.append((y, v))
        return self._materialize(added, removed)

    def _materialize(self, added, removed) -> list[tuple[int, int]]:
        """T with the given changes applied; D is put back the way it was."""
        D = self.D
        for x, y in reversed(added):
            D.cut(x, y)
        for x, y in removed:
            D.link(x, y)
        out = {(min(x, y), max(x, y)) for x in range(self.n) for y in self.tadj[x]}
        out.difference_update((min(x, y), max(x, y)) for x, y in removed)
        out.update((min(x, y), max(x, y)) for x, y in added)
        return sorted(out)

    def _ball(self) -> set[int]:
        """BFS ball S of G*: S' of the threshold size plus everything within distance 2."""
        gs = self.gsadj
        verts = [x for x in range(self.n) if self.chain_of[x] is None]
        need = kernel_threshold(self.k)
        if len(verts) < need:
            return set(verts)
        r = verts[0]
        seen = {r: 0}
        order = [r]
        dq = deque([r])
        while dq and len(order) < need:
            x = dq.popleft()
            for y in sorted(gs[x].values()):
                if y not in seen:
                    seen[y] = 0
                    order.append(y)
                    dq.append(y)
        S = set(order)
        frontier = set(order)
        for _ in range(2):
            nxt = {y for x in frontier for y in gs[x].values()} - S
            S |= nxt
            frontier = nxt
        return S

    def _kernel_tree(self) -> str | list[tuple[int, int]]:
        S = self._ball()
        got = self._solve_ball(S)
        if got is None and len(S) < len(self.gstar_vertices()):
            self.fallbacks += 1
            S = set(self.gstar_vertices())
            got = self._solve_ball(S)
        if got is None:
            return NO_TREE
        return self._extend(got)

    def _solve_ball(self, S: set[int]) -> list[int] | None:
        """Record ids of a subtree of G*[S] with at least k leaves, or None.

        Branching from each root r: a free leaf either stays a leaf or becomes
        internal and adopts all of its neighbours not yet in the tree.
        """
        k = self.k
        nbr = {x: sorted((y, rid) for rid, y in self.gsadj[x].items() if y in S) for x in S}
        for r in sorted(S):
            if len(nbr[r]) == 0:
                continue
            seen = {r} | {y for y, _ in nbr[r]}
            edges = [rid for _, rid in nbr[r]]
            free = [y for y, _ in nbr[r]]
            got = self._grow(nbr, seen, edges, free, 1 if len(free) == 1 else 0, k)
            if got is not None:
                return got
        return None

    def _grow(self, nbr, seen: set[int], edges: list[int], free: list[int], fixed: int,
              k: int) -> list[int] | None:
        if len(free) + fixed >= k:
            return list(edges)
        if not free:
            return None
        v = free.pop()
        out = [(y, rid) for y, rid in nbr[v] if y not in seen]
        if out:
            for y, rid in out:
                seen.add(y)
                edges.append(rid)
            got = self._grow(nbr, seen, edges, free + [y for y, _ in out], fixed, k)
            del edges[len(edges) - len(out):]
            for y, _ in out:
                seen.discard(y)
            if got is not None:
                free.append(v)
                return got
        got = self._grow(nbr, seen, edges, free, fixed + 1, k)
        free.append(v)
        return got

    def _extend(self, ids: list[int]) -> list[tuple[int, int]]:
        """Lift a G* subtree to G and grow it to a spanning tree by pendant edges.

        Hanging a new vertex off a leaf trades one leaf for another, so the
        leaf count never drops below that of the subtree.
        """
        adj = self.adj
        out: list[tuple[int, int]] = []
        inside: set[int] = set()
        for rid in ids:
            p = self.rec[rid].path()
            inside.update(p)
            out.extend((min(p[i], p[i + 1]), max(p[i], p[i + 1])) for i in range(len(p) - 1))
        dq = deque(sorted(inside))
        while dq:
            x = dq.popleft()
            for y in sorted(adj[x]):
                if y not in inside:
                    inside.add(y)
                    out.append((min(x, y), max(x, y)))
                    dq.append(y)
        return sorted(out)

    # -- verification -------------------------------------------------------------------
    def check(self) -> None:
        """Full-scan check of G*, the T/T* correspondence and D."""
        verts, edges = resolve_static(self.n, [(x, y) for x in range(self.n) for y in self.adj[x] if x < y])
        assert verts == self.gstar_vertices(), (verts, self.gstar_vertices())
        assert edges == self.gstar_edges()
        want: set[tuple[int, int]] = set()
        for rid, ch in self.rec.items():
            p = ch.path()
            for i in range(len(p) - 2):
                want.add((min(p[i], p[i + 1]), max(p[i], p[i + 1])))
            f = ch.final()
            if self.conn.is_tree_edge(rid):
                want.add((min(f), max(f)))
        assert want == set(self.tree_edges())
        for x, y in want:
            assert self.D.has_edge(x, y)
        assert self.tcount == len(want)
        for d, bucket in enumerate(self.bydeg):
            for x in bucket:
                assert len(self.adj[x]) == d
        assert self.maxdeg == max((len(a) for a in self.adj), default=0)


def resolve_static(n: int, edges) -> tuple[list[int], list[tuple[int, int, frozenset]]]:
    """Resolved graph computed from scratch: (G* vertices, [(a, b, chain set)])."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    useless = [len(adj[x]) == 2 and all(len(adj[w]) == 2 for w in adj[x]) for x in range(n)]
    # bare cycles: components where every vertex is useless
    comp = [-1] * n
    bare = []
    for s in range(n):
        if comp[s] != -1:
            continue
        comp[s] = s
        stack = [s]
        members = []
        while stack:
            x = stack.pop()
            members.append(x)
            for y in adj[x]:
                if comp[y] == -1:
                    comp[y] = s
                    stack.append(y)
        if all(useless[x] for x in members) and adj[s]:
            bare.extend(members)
    for x in bare:
        useless[x] = False
    verts = [x for x in range(n) if not useless[x]]
    out = []
    for a in verts:
        for y in adj[a]:
            inner = []
            prev, cur = a, y
            while useless[cur]:
                inner.append(cur)
                nxt = next(w for w in adj[cur] if w != prev)
                prev, cur = cur, nxt
            b = cur
            if (a, inner[:1]) <= (b, inner[-1:]):
                out.append((min(a, b), max(a, b), frozenset(inner)))
    return verts, sorted(out)
