"""Pure-Python update core of the vertex-cover kernel."""
from __future__ import annotations

from .errors import DuplicateEdge, LoopForbidden, NoSuchEdge, VertexOutOfRange


class Rec:
    __slots__ = ("u", "v", "sel_u", "sel_v", "in_e")

    def __init__(self, u: int, v: int):
        self.u = u
        self.v = v
        self.sel_u = False
        self.sel_v = False
        self.in_e = False


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class VcCore:
    def _setup(self, n: int, k: int, variant: str) -> None:
        self.n = n
        self.k = k
        self.variant = variant
        if variant == "worstcase":
            self.create_at = k + 1
            self.cap = k + 1
            self.max_edges = k * (k + 1)
            self.max_vertices = k * (k + 2)
        else:
            self.create_at = 2 * k + 1
            self.cap = 2 * k + 1
            self.max_edges = 2 * k * (k + 1)
            self.max_vertices = 2 * k * (k + 2)
        self.adj: list[dict[int, Rec]] = [dict() for _ in range(n)]
        self.R: list[dict[int, None] | None] = [None] * n
        self.nsel = [0] * n
        self.kdeg = [0] * n  # degree inside E'
        self.kedges: set[tuple[int, int]] = set()
        self.kverts = 0
        self.mutations = 0

    # -- bookkeeping ---------------------------------------------------
    def _refresh(self, e: Rec) -> None:
        u = e.u
        v = e.v
        hu = self.R[u] is not None
        hv = self.R[v] is not None
        want = (not hu and not hv) or (hu and e.sel_u) or (hv and e.sel_v)
        if want == e.in_e:
            return
        if not want:
            self._refresh_removed(e)
            return
        e.in_e = True
        self.mutations += 1
        self.kedges.add((u, v) if u < v else (v, u))
        kdeg = self.kdeg
        for x in (u, v):
            kdeg[x] += 1
            if kdeg[x] == 1:
                self.kverts += 1

    def _set_sel(self, e: Rec, x: int, val: bool) -> None:
        if x == e.u:
            if e.sel_u == val:
                return
            e.sel_u = val
        else:
            if e.sel_v == val:
                return
            e.sel_v = val
        self.nsel[x] += 1 if val else -1
        self.mutations += 1

    @staticmethod
    def _sel(e: Rec, x: int) -> bool:
        return e.sel_u if x == e.u else e.sel_v

    def _start_selecting(self, x: int) -> None:
        self.R[x] = {}
        self.mutations += 1
        for e in self.adj[x].values():
            self._set_sel(e, x, True)
            self._refresh(e)

    def _stop_selecting(self, x: int) -> None:
        self.R[x] = None
        self.mutations += 1
        for e in self.adj[x].values():
            self._set_sel(e, x, False)
            self._refresh(e)

    # -- updates -------------------------------------------------------
    def insert_edge(self, u: int, v: int) -> None:
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange((u, v))
        if u == v:
            raise LoopForbidden(u)
        au = self.adj[u]
        av = self.adj[v]
        if v in au:
            raise DuplicateEdge(_key(u, v))
        e = Rec(u, v)
        au[v] = e
        av[u] = e
        R = self.R
        if (R[u] is None and R[v] is None and len(au) < self.create_at
                and len(av) < self.create_at):
            # both ends stay unselecting: the edge simply joins E'
            self._refresh(e)
            return
        for x, y in ((u, v), (v, u)):
            rx = self.R[x]
            if rx is not None:
                if self.nsel[x] < self.cap:
                    self._set_sel(e, x, True)
                else:
                    rx[y] = None
                    self.mutations += 1
            elif len(self.adj[x]) >= self.create_at:
                self._start_selecting(x)
        self._refresh(e)

    def delete_edge(self, u: int, v: int) -> None:
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange((u, v))
        e = self.adj[u].get(v)
        if e is None:
            raise NoSuchEdge(_key(u, v))
        del self.adj[u][v]
        del self.adj[v][u]
        R = self.R
        if R[u] is None and R[v] is None:
            self._refresh_removed(e)
            return
        for x, y in ((u, v), (v, u)):
            rx = self.R[x]
            if rx is None:
                continue
            if self._sel(e, x):
                self._set_sel(e, x, False)
                if rx:
                    z = next(iter(rx))
                    del rx[z]
                    f = self.adj[x][z]
                    self._set_sel(f, x, True)
                    self.mutations += 1
                    self._refresh(f)
            else:
                del rx[y]
                self.mutations += 1
            if len(self.adj[x]) <= self.k:
                self._stop_selecting(x)
        if e.in_e:
            self._refresh_removed(e)

    def _refresh_removed(self, e: Rec) -> None:
        u = e.u
        v = e.v
        e.in_e = False
        self.mutations += 1
        self.kedges.discard((u, v) if u < v else (v, u))
        kdeg = self.kdeg
        for x in (u, v):
            kdeg[x] -= 1
            if kdeg[x] == 0:
                self.kverts -= 1

