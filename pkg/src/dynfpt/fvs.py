"""Dynamic Feedback Vertex Set.

Two layers:

``ResolvedGraph`` keeps G*, the multigraph left after exhaustively deleting
degree-1 vertices and contracting degree-2 vertices (loops and parallel
edges may appear). Contracted material lives in a link/cut forest D: every
G* vertex x owns a tree T_x anchored at its copy x_x, and every G* edge e
owns a tree L_e whose two leaves are copies of its endpoints. A contracted
vertex is a single node of D. Each tree is kept rooted at its anchor so the
owner of a contracted vertex is found with one ``findroot``.

``FvsLevel`` is the branching structure A_k. Level 0 detects cycles with a
ConnectivityForest. Level k >= 1 resolves its input graph, picks the branch
set B = B_H (G* degree >= delta at rebuild time, delta = m*/(6k+1)) plus the
loop vertices B_L, and runs one level-(k-1) child on G* - v for every v in B.
Children see the G*-edge changes caused by each update; the level rebuilds
its branch set after more than delta such changes, or when a loop shows up
at a vertex outside B.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable

from .dynconn import ConnectivityForest
from .errors import DuplicateEdge, LoopForbidden, NoSuchEdge, ParameterError, VertexOutOfRange
from .linkcut import LinkCutForest

Change = tuple[str, int, int]


class ResolvedGraph:
    """Resolved multigraph G* of a dynamic multigraph H on ``range(n)``."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), backend: str | None = None):
        self.n = n
        self.D = LinkCutForest(backend)
        self._free: list[int] = []
        self.node_v: list[int] = []  # D node -> vertex it copies
        self.anchor: dict[int, tuple[str, int]] = {}
        self.alive = [True] * n
        self.tx: list[int] = [self._new(v) for v in range(n)]
        for v in range(n):
            self.anchor[self.tx[v]] = ("T", v)
        self.pos: list[int] = list(self.tx)
        self.gadj: list[dict[int, int]] = [dict() for _ in range(n)]
        self.gdeg = [0] * n
        self.loops = [0] * n
        self.loop_vertices: set[int] = set()
        self.edges: dict[int, list[int]] = {}  # eid -> [a, b, ca, cb]
        self.m = 0
        self._next = 0
        self.changes: list[Change] = []
        self.raw_changes = 0
        for a, b in edges:
            ca = self._new(a)
            cb = self._new(b)
            self.D.link(ca, cb)
            self._add_gedge(a, b, ca, cb)
        self._simplify(range(n))
        self.changes = []

    # -- D helpers -------------------------------------------------------
    def _new(self, v: int) -> int:
        if self._free:
            x = self._free.pop()
            self.node_v[x] = v
            return x
        x = self.D.maketree()
        self.node_v.append(v)
        return x

    def _release(self, x: int) -> None:
        self.anchor.pop(x, None)
        self._free.append(x)

    def owner(self, u: int) -> tuple[str, int]:
        """The G* element (T_v or L_e) holding contracted vertex ``u``."""
        return self.anchor[self.D.findroot(self.pos[u])]

    # -- G* edge bookkeeping ---------------------------------------------
    def _add_gedge(self, a: int, b: int, ca: int, cb: int) -> int:
        eid = self._next
        self._next += 1
        self.edges[eid] = [a, b, ca, cb]
        self.anchor[ca] = ("L", eid)
        self.D.evert(ca)
        self.gadj[a][eid] = b
        self.gdeg[a] += 1
        if a == b:
            self.gdeg[a] += 1
            self.loops[a] += 1
            self.loop_vertices.add(a)
        else:
            self.gadj[b][eid] = a
            self.gdeg[b] += 1
        self.m += 1
        self.changes.append(("+", a, b))
        return eid

    def _remove_gedge(self, eid: int) -> list[int]:
        rec = self.edges.pop(eid)
        a, b, ca, _ = rec
        self.anchor.pop(ca, None)
        del self.gadj[a][eid]
        self.gdeg[a] -= 1
        if a == b:
            self.gdeg[a] -= 1
            self.loops[a] -= 1
            if not self.loops[a]:
                self.loop_vertices.discard(a)
        else:
            del self.gadj[b][eid]
            self.gdeg[b] -= 1
        self.m -= 1
        self.changes.append(("-", a, b))
        return rec

    def _ends(self, eid: int, v: int) -> tuple[int, int, int]:
        """(v's copy, other endpoint, other endpoint's copy) for edge ``eid``."""
        a, b, ca, cb = self.edges[eid]
        if a == v:
            return ca, b, cb
        return cb, a, ca

    # -- reintroduction ----------------------------------------------------
    def _make_alive(self, u: int, node: int) -> None:
        self.alive[u] = True
        self.tx[u] = node
        self.pos[u] = node
        self.anchor[node] = ("T", u)

    def reintroduce(self, u: int, touched: set[int]) -> None:
        """Put contracted vertex ``u`` back into G*."""
        while not self.alive[u]:
            kind, ident = self.owner(u)
            if kind == "T":
                self._split_tree(u, ident)
                touched.update((u, ident))
                return
            D = self.D
            uu = self.pos[u]
            a, b, ca, cb = self.edges[ident]
            D.evert(uu)
            z = D.nca(ca, cb)
            zv = self.node_v[z]
            self._split_path(zv, ident)
            touched.update((zv, a, b))
            # if u was off the path it now sits in T_zv; loop once more

    def _split_tree(self, u: int, v: int) -> None:
        """u lies in T_v: peel off T_u and a new edge L_{u,v}."""
        D = self.D
        uu = self.pos[u]
        vv = self.tx[v]
        w = D.parent(uu)
        D.cut(uu, w)
        cu = self._new(u)
        cv = self._new(v)
        if w == vv:
            D.link(cu, cv)
        else:
            x = D.after(vv, w)
            D.cut(vv, x)
            D.link(cu, w)
            D.link(cv, x)
        self._make_alive(u, uu)
        D.evert(uu)
        D.evert(vv)
        self._add_gedge(u, v, cu, cv)

    def _split_path(self, u: int, eid: int) -> None:
        """u lies on the leaf-to-leaf path of L_eid: subdivide that edge at u."""
        D = self.D
        uu = self.pos[u]
        a, b, ca, cb = self._remove_gedge(eid)
        b1 = D.after(uu, ca)
        b2 = D.after(uu, cb)
        D.cut(uu, b1)
        D.cut(uu, b2)
        c1 = self._new(u)
        c2 = self._new(u)
        D.link(c1, b1)
        D.link(c2, b2)
        self._make_alive(u, uu)
        D.evert(uu)
        self._add_gedge(u, a, c1, ca)
        self._add_gedge(u, b, c2, cb)

    # -- simplification ----------------------------------------------------
    def _absorb(self, keep: int, leaf: int, toward: int) -> None:
        """Merge leaf copy ``leaf`` into ``keep``: its one neighbour moves over."""
        D = self.D
        p = D.after(leaf, toward)
        D.cut(leaf, p)
        D.link(keep, p)
        self._release(leaf)

    def _simplify(self, work: Iterable[int]) -> None:
        stack = sorted(set(work), reverse=True)
        while stack:
            v = stack.pop()
            if not self.alive[v]:
                continue
            deg = self.gdeg[v]
            if deg == 1:
                (eid, x), = self.gadj[v].items()
                cv, _, cx = self._ends(eid, v)
                vv = self.tx[v]
                self._remove_gedge(eid)
                self._absorb(vv, cv, cx)
                self._absorb(self.tx[x], cx, vv)
                self.D.evert(self.tx[x])
                self._contract(v)
                stack.append(x)
            elif deg == 2 and not self.loops[v]:
                (e1, x), (e2, y) = self.gadj[v].items()
                cv1, _, cx = self._ends(e1, v)
                cv2, _, cy = self._ends(e2, v)
                vv = self.tx[v]
                self._remove_gedge(e1)
                self._remove_gedge(e2)
                self._absorb(vv, cv1, cx)
                self._absorb(vv, cv2, cy)
                self._contract(v)
                self._add_gedge(x, y, cx, cy)
                stack.append(x)
                if y != x:
                    stack.append(y)

    def _contract(self, v: int) -> None:
        vv = self.tx[v]
        self.anchor.pop(vv, None)
        self.alive[v] = False
        self.pos[v] = vv
        self.tx[v] = -1

    # -- updates on H --------------------------------------------------------
    def insert(self, a: int, b: int) -> list[Change]:
        self.changes = []
        touched = {a, b}
        self.reintroduce(a, touched)
        self.reintroduce(b, touched)
        ca = self._new(a)
        cb = self._new(b)
        self.D.link(ca, cb)
        self._add_gedge(a, b, ca, cb)
        self._simplify(touched)
        return self._net()

    def delete(self, a: int, b: int) -> list[Change]:
        self.changes = []
        touched = {a, b}
        self.reintroduce(a, touched)
        self.reintroduce(b, touched)
        for eid, other in self.gadj[a].items():
            if other != b:
                continue
            _, _, ca, cb = self.edges[eid]
            if self.D.has_edge(ca, cb):
                self._remove_gedge(eid)
                self.D.cut(ca, cb)
                self._release(ca)
                self._release(cb)
                break
            self.D.evert(ca)  # has_edge may have re-rooted L_eid
        else:
            raise NoSuchEdge((a, b))
        self._simplify(touched)
        return self._net()

    def _net(self) -> list[Change]:
        """Net G* difference of the last update: removals first, then additions.

        Transient edges (split off and merged back within one update) cancel.
        ``raw_changes`` keeps the count of primitive edge operations.
        """
        self.raw_changes = len(self.changes)
        plus = Counter((min(a, b), max(a, b)) for op, a, b in self.changes if op == "+")
        minus = Counter((min(a, b), max(a, b)) for op, a, b in self.changes if op == "-")
        out: list[Change] = [("-", a, b) for (a, b), c in sorted((minus - plus).items()) for _ in range(c)]
        out += [("+", a, b) for (a, b), c in sorted((plus - minus).items()) for _ in range(c)]
        return out

    # -- inspection ------------------------------------------------------------
    def gedges(self) -> list[tuple[int, int]]:
        return sorted((min(r[0], r[1]), max(r[0], r[1])) for r in self.edges.values())

    def vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.alive[v]]

    def check(self) -> None:
        """Assert resolved-ness and that D's trees sit on their anchors."""
        for v in range(self.n):
            if not self.alive[v]:
                kind, _ = self.owner(v)
                assert kind in ("T", "L")
                continue
            assert self.D.findroot(self.tx[v]) == self.tx[v]
            deg = self.gdeg[v]
            assert deg == sum(2 if o == v else 1 for o in self.gadj[v].values())
            assert deg not in (1,) and not (deg == 2 and not self.loops[v])
        for eid, (a, b, ca, cb) in self.edges.items():
            assert self.D.findroot(ca) == ca and self.D.connected(ca, cb)
            assert self.node_v[ca] == a and self.node_v[cb] == b


def resolve_static(n: int, edges: Iterable[tuple[int, int]]) -> tuple[list[int], list[tuple[int, int]]]:
    """Resolved graph by plain multigraph surgery (no D), for cross-checks.

    Returns (vertices, edge list) with edges as sorted pairs.
    """
    adj: list[dict[int, int]] = [dict() for _ in range(n)]  # v -> {eid: other}
    ends: dict[int, tuple[int, int]] = {}
    nxt = 0
    for a, b in edges:
        ends[nxt] = (a, b)
        adj[a][nxt] = b
        if a != b:
            adj[b][nxt] = a
        nxt += 1
    alive = [True] * n

    def deg(v: int) -> int:
        return sum(2 if o == v else 1 for o in adj[v].values())

    stack = list(range(n))
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        dv = deg(v)
        if dv == 1:
            (eid, x), = adj[v].items()
            del adj[v][eid]
            del adj[x][eid]
            del ends[eid]
            alive[v] = False
            stack.append(x)
        elif dv == 2 and all(o != v for o in adj[v].values()):
            (e1, x), (e2, y) = adj[v].items()
            for e, o in ((e1, x), (e2, y)):
                del adj[v][e]
                del adj[o][e]
                del ends[e]
            alive[v] = False
            ends[nxt] = (x, y)
            adj[x][nxt] = y
            if x != y:
                adj[y][nxt] = x
            nxt += 1
            stack.extend((x, y))
    verts = [v for v in range(n) if alive[v]]
    return verts, sorted((min(a, b), max(a, b)) for a, b in ends.values())


class FvsLevel:
    """Dynamic FVS structure with parameter ``k`` over a multigraph on ``range(n)``."""

    def __init__(self, n: int, k: int, edges: Iterable[tuple[int, int]] = (),
                 backend: str | None = None, stats: dict | None = None):
        if k < 0:
            raise ParameterError("k must be nonnegative")
        self.n = n
        self.k = k
        self.backend = backend
        self.stats = stats if stats is not None else {"rebuilds": 0, "max_changes": 0, "max_raw_changes": 0, "max_bh": 0, "levels": 0}
        self.stats["levels"] += 1
        if k == 0:
            self.conn = ConnectivityForest(n, backend=backend)
            self.comps = n
            for a, b in edges:
                self._apply0("+", a, b)
            return
        self.R = ResolvedGraph(n, edges, backend)
        self._rebuild_branch()

    # -- level 0 ---------------------------------------------------------------
    def _apply0(self, op: str, a: int, b: int) -> None:
        conn = self.conn
        if op == "+":
            if not conn.connected(a, b):
                self.comps -= 1
            conn.conn_insert(a, b)
        else:
            conn.conn_delete(a, b)
            if not conn.connected(a, b):
                self.comps += 1

    def has_cycle(self) -> bool:
        # cyclomatic number m - n + c is positive iff some component has a cycle
        return self.conn.m - self.n + self.comps > 0

    # -- branching ---------------------------------------------------------------
    def _rebuild_branch(self) -> None:
        R = self.R
        self.stats["rebuilds"] += 1
        self.mstar = R.m
        self.delta = R.m / (6 * self.k + 1)
        thr = max(self.delta, 1)
        self.BH = sorted(v for v in range(self.n) if R.alive[v] and R.gdeg[v] >= thr)
        self.BL = sorted(R.loop_vertices)
        if len(self.BH) > self.stats["max_bh"]:
            self.stats["max_bh"] = len(self.BH)
        self.since = 0
        if len(self.BL) > self.k:
            self.B = []
            self.children = None
            return
        self.B = sorted(set(self.BH) | set(self.BL))
        self.Bset = set(self.B)
        es = R.gedges()
        self.children = {
            v: FvsLevel(self.n, self.k - 1, [e for e in es if v not in e], self.backend, self.stats)
            for v in self.B
        }

    def apply(self, op: str, a: int, b: int) -> None:
        """Apply one change of the input multigraph (``op`` is '+' or '-')."""
        if self.k == 0:
            self._apply0(op, a, b)
            return
        R = self.R
        changes = R.insert(a, b) if op == "+" else R.delete(a, b)
        if len(changes) > self.stats["max_changes"]:
            self.stats["max_changes"] = len(changes)
        if R.raw_changes > self.stats["max_raw_changes"]:
            self.stats["max_raw_changes"] = R.raw_changes
        self.since += len(changes)
        if self.children is None:
            if len(R.loop_vertices) <= self.k:
                self._rebuild_branch()
            return
        if self.since > self.delta or not R.loop_vertices <= self.Bset:
            self._rebuild_branch()
            return
        for v, child in self.children.items():
            for cop, x, y in changes:
                if x != v and y != v:
                    child.apply(cop, x, y)

    def query(self) -> frozenset | None:
        if self.k == 0:
            return None if self.has_cycle() else frozenset()
        if self.children is None:
            return None
        if self.R.m == 0:
            return frozenset()
        for v in self.B:
            sub = self.children[v].query()
            if sub is not None:
                return sub | {v}
        return None


class DynamicFvs:
    """Feedback Vertex Set on a simple graph under edge insertions and deletions."""

    def __init__(self, n: int, k: int, backend: str | None = None):
        self.n = n
        self.k = k
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.root = FvsLevel(n, k, (), backend)

    @property
    def stats(self) -> dict:
        return self.root.stats

    def _check(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise VertexOutOfRange((u, v))
        if u == v:
            raise LoopForbidden(u)

    def insert_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        if v in self.adj[u]:
            raise DuplicateEdge((min(u, v), max(u, v)))
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.root.apply("+", u, v)

    def delete_edge(self, u: int, v: int) -> None:
        self._check(u, v)
        if v not in self.adj[u]:
            raise NoSuchEdge((min(u, v), max(u, v)))
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.root.apply("-", u, v)

    def query(self) -> frozenset | None:
        return self.root.query()

    def rebuild(self) -> None:
        """Re-resolve from the original edge list and rebuild every level."""
        es = [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]
        self.root = FvsLevel(self.n, self.k, es, self.root.backend, self.root.stats)
