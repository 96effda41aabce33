"""Fully dynamic connectivity with a maintained spanning forest.

Deterministic level scheme: every edge has a level; tree edges of level >= i
form the Euler-tour forest F_i. Deleting a tree edge searches levels from the
edge's level down to 0 for a replacement, promoting scanned edges of the
smaller side one level up. Component aggregates (vertex count, edge count and
a caller-supplied vertex weight) ride on the level-0 tours.
"""
from __future__ import annotations

import os

from ._ett_py import ETTCore as PyETT
from .errors import NoSuchEdge, UnknownComponent, VertexOutOfRange

try:
    from ._ett_c import ETTCore as CETT
except ImportError:  # extension not built
    CETT = None

BACKEND = "c" if CETT is not None and not os.environ.get("DYNFPT_PURE") else "py"
DEBUG = bool(os.environ.get("DYNFPT_DEBUG"))


class ConnectivityForest:
    """Dynamic connectivity over vertices ``range(n)``; loops and parallel edges allowed."""

    def __init__(self, n: int, backend: str | None = None, debug: bool | None = None):
        if n < 0:
            raise ValueError("n must be nonnegative")
        backend = backend or BACKEND
        if backend == "c" and CETT is None:
            raise RuntimeError("compiled Euler-tour core is not available")
        self.backend = backend
        self.core = CETT() if backend == "c" else PyETT()
        self.n = n
        self.debug = DEBUG if debug is None else debug
        self.maxlevel = max(0, n.bit_length() - 1)
        self._vn: list[list[int]] = [[-1] * n for _ in range(self.maxlevel + 1)]
        self._vnode0 = self._vn[0]
        for v in range(n):
            self._vnode0[v] = self.core.new_node(1)
        self._owner: dict[int, int] = {}  # vertex node -> vertex
        for v in range(n):
            self._owner[self._vnode0[v]] = v
        self._arc_edge: dict[int, int] = {}  # arc node -> edge id
        # edge id -> [u, v, level, tree?, arcs per level]
        self._edges: dict[int, list] = {}
        self._pair: dict[tuple[int, int], list[int]] = {}
        self._nt: list[dict[int, set[int]]] = [dict() for _ in range(self.maxlevel + 1)]
        self._ntdeg = [0] * n
        self._next = 0
        self.m = 0
        self.replacement_scans = 0
        self.level_pushes = 0

    # -- internals -----------------------------------------------------
    def _node(self, i: int, v: int) -> int:
        row = self._vn[i]
        x = row[v]
        if x == -1:
            x = self.core.new_node(1)
            row[v] = x
            self._owner[x] = v
        return x

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(v)

    def _set_w(self, i: int, v: int) -> None:
        s = self._nt[i].get(v)
        self.core.set_vals(self._node(i, v), w=len(s) if s else 0)

    def _nt_add(self, i: int, eid: int, u: int, v: int) -> None:
        nt = self._nt[i]
        nt.setdefault(u, set()).add(eid)
        self._set_w(i, u)
        if v != u:
            nt.setdefault(v, set()).add(eid)
            self._set_w(i, v)

    def _nt_remove(self, i: int, eid: int, u: int, v: int) -> None:
        nt = self._nt[i]
        nt[u].discard(eid)
        self._set_w(i, u)
        if v != u:
            nt[v].discard(eid)
            self._set_w(i, v)

    def _ntdeg_add(self, u: int, v: int, delta: int) -> None:
        self._ntdeg[u] += delta
        self._ntdeg[v] += delta
        self.core.set_vals(self._vnode0[u], d=self._ntdeg[u])
        if v != u:
            self.core.set_vals(self._vnode0[v], d=self._ntdeg[v])

    def _link_levels(self, eid: int, top: int) -> None:
        """Add tree edge ``eid`` to F_0..F_top with its level flag at ``top``."""
        rec = self._edges[eid]
        u, v = rec[0], rec[1]
        arcs = rec[4]
        core = self.core
        for i in range(len(arcs), top + 1):
            a1 = core.new_node(0)
            a2 = core.new_node(0)
            self._arc_edge[a1] = eid
            self._arc_edge[a2] = eid
            core.link(self._node(i, u), self._node(i, v), a1, a2)
            arcs.append((a1, a2))
        core.set_vals(arcs[top][0], t=1)

    # -- public API ----------------------------------------------------
    def conn_insert(self, u: int, v: int) -> int:
        """Insert edge {u, v}; returns its edge id."""
        self._check(u)
        self._check(v)
        eid = self._next
        self._next += 1
        key = (u, v) if u <= v else (v, u)
        self._pair.setdefault(key, []).append(eid)
        self.m += 1
        if u != v and not self.core.connected(self._vnode0[u], self._vnode0[v]):
            self._edges[eid] = [u, v, 0, True, []]
            self._link_levels(eid, 0)
        else:
            self._edges[eid] = [u, v, 0, False, []]
            self._nt_add(0, eid, u, v)
            self._ntdeg_add(u, v, 1)
        return eid

    def conn_delete(self, u: int, v: int) -> int | None:
        """Delete the most recently inserted copy of edge {u, v}."""
        key = (u, v) if u <= v else (v, u)
        copies = self._pair.get(key)
        if not copies:
            raise NoSuchEdge(key)
        return self.delete_id(copies[-1])

    def delete_id(self, eid: int) -> int | None:
        """Delete edge ``eid``; returns the id of the replacement tree edge, if any."""
        rec = self._edges.pop(eid, None)
        if rec is None:
            raise NoSuchEdge(eid)
        u, v, lvl, tree, arcs = rec
        key = (u, v) if u <= v else (v, u)
        copies = self._pair[key]
        copies.remove(eid)
        if not copies:
            del self._pair[key]
        self.m -= 1
        if not tree:
            self._nt_remove(lvl, eid, u, v)
            self._ntdeg_add(u, v, -1)
            return None
        core = self.core
        for a1, a2 in arcs:
            core.cut(a1, a2)
            del self._arc_edge[a1]
            del self._arc_edge[a2]
            core.free_node(a1)
            core.free_node(a2)
        rep = self._replace(u, v, lvl)
        if self.debug:
            self.check_levels()
        return rep

    def _replace(self, u: int, v: int, lvl: int) -> int | None:
        core = self.core
        for i in range(lvl, -1, -1):
            nu = self._node(i, u)
            nv = self._node(i, v)
            small = nu if core.size(nu) <= core.size(nv) else nv
            # promote the smaller side's level-i tree edges
            while True:
                a = core.find_t(small)
                if a == -1:
                    break
                eid = self._arc_edge[a]
                core.set_vals(a, t=0)
                rec = self._edges[eid]
                rec[2] = i + 1
                self._link_levels(eid, i + 1)
                self.level_pushes += 1
            # scan the smaller side's level-i non-tree edges
            nt = self._nt[i]
            while True:
                x = core.find_w(small)
                if x == -1:
                    break
                a = self._owner[x]
                for eid in list(nt[a]):
                    self.replacement_scans += 1
                    rec = self._edges[eid]
                    b = rec[1] if rec[0] == a else rec[0]
                    if not core.connected(self._node(i, b), small):
                        self._nt_remove(i, eid, rec[0], rec[1])
                        self._ntdeg_add(rec[0], rec[1], -1)
                        rec[3] = True
                        self._link_levels(eid, i)
                        return eid
                    self._nt_remove(i, eid, rec[0], rec[1])
                    rec[2] = i + 1
                    self._nt_add(i + 1, eid, rec[0], rec[1])
                    self.level_pushes += 1
        return None

    def connected(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return self.core.connected(self._vnode0[u], self._vnode0[v])

    def component_of(self, u: int) -> int:
        """Canonical vertex: the first vertex of u's level-0 Euler tour."""
        self._check(u)
        return self._owner[self.core.first_vertex(self._vnode0[u])]

    def component_stats(self, cid: int) -> tuple[int, int]:
        """(vertex count, edge count) of the component named ``cid``."""
        if not 0 <= cid < self.n or self.component_of(cid) != cid:
            raise UnknownComponent(cid)
        x = self._vnode0[cid]
        size = self.core.size(x)
        nontree, _ = self.core.sums(x)
        return size, size - 1 + nontree // 2

    def stats_of(self, u: int) -> tuple[int, int]:
        """(vertex count, edge count) of the component containing ``u``."""
        self._check(u)
        x = self._vnode0[u]
        size = self.core.size(x)
        nontree, _ = self.core.sums(x)
        return size, size - 1 + nontree // 2

    def set_weight(self, v: int, w: int) -> None:
        self._check(v)
        self.core.set_vals(self._vnode0[v], x=w)

    def weight_of(self, u: int) -> int:
        """Sum of caller weights over the component containing ``u``."""
        _, sx = self.core.sums(self._vnode0[u])
        return sx

    def component_vertices(self, u: int) -> list[int]:
        self._check(u)
        return sorted(self._owner[x] for x in self.core.vertices(self._vnode0[u]))

    def is_tree_edge(self, eid: int) -> bool:
        return self._edges[eid][3]

    def edge_level(self, eid: int) -> int:
        return self._edges[eid][2]

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u <= v else (v, u)
        return key in self._pair

    def edge_ids(self, u: int, v: int) -> list[int]:
        key = (u, v) if u <= v else (v, u)
        return list(self._pair.get(key, ()))

    def endpoints(self, eid: int) -> tuple[int, int]:
        rec = self._edges[eid]
        return rec[0], rec[1]

    def tree_edges(self) -> list[tuple[int, int]]:
        return sorted((r[0], r[1]) for r in self._edges.values() if r[3])

    def check_levels(self) -> None:
        """Assert the level invariant: trees of F_i have at most n/2^i vertices."""
        core = self.core
        for i in range(1, self.maxlevel + 1):
            cap = self.n / (1 << i)
            for x in self._vn[i]:
                if x != -1:
                    assert core.size(x) <= cap, (i, core.size(x), cap)
        for rec in self._edges.values():
            assert rec[2] <= self.maxlevel


def new_connectivity(n: int, **kw) -> ConnectivityForest:
    return ConnectivityForest(n, **kw)
