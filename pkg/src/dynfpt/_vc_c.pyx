# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled update core of the vertex-cover kernel; mirrors dynfpt._vc_py.VcCore."""
from libc.stdlib cimport calloc, free

from .errors import DuplicateEdge, LoopForbidden, NoSuchEdge, VertexOutOfRange


cdef class Rec:
    cdef public long long u
    cdef public long long v
    cdef public bint sel_u
    cdef public bint sel_v
    cdef public bint in_e

    def __cinit__(self, long long u, long long v):
        self.u = u
        self.v = v


cdef inline tuple _key(long long u, long long v):
    return (u, v) if u < v else (v, u)


cdef class VcCore:
    cdef public long long n
    cdef public long long k
    cdef public long long create_at
    cdef public long long cap
    cdef public long long max_edges
    cdef public long long max_vertices
    cdef public long long kverts
    cdef public long long mutations
    cdef public str variant
    cdef public list adj
    cdef public list R
    cdef public set kedges
    cdef int *_nsel
    cdef int *_kdeg

    def __cinit__(self, *args, **kwargs):
        self._nsel = NULL
        self._kdeg = NULL

    def __dealloc__(self):
        free(self._nsel)
        free(self._kdeg)

    def _setup(self, long long n, long long k, str variant):
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
        self.adj = [dict() for _ in range(n)]
        self.R = [None] * n
        self._nsel = <int *> calloc(max(n, 1), sizeof(int))
        self._kdeg = <int *> calloc(max(n, 1), sizeof(int))
        if self._nsel == NULL or self._kdeg == NULL:
            raise MemoryError()
        self.kedges = set()
        self.kverts = 0
        self.mutations = 0

    @property
    def nsel(self):
        return [self._nsel[i] for i in range(self.n)]

    @property
    def kdeg(self):
        return [self._kdeg[i] for i in range(self.n)]

    # -- bookkeeping ---------------------------------------------------
    cdef void _refresh(self, Rec e):
        cdef long long u = e.u, v = e.v
        cdef bint hu = self.R[u] is not None
        cdef bint hv = self.R[v] is not None
        cdef bint want = (not hu and not hv) or (hu and e.sel_u) or (hv and e.sel_v)
        if want == e.in_e:
            return
        if not want:
            self._refresh_removed(e)
            return
        e.in_e = True
        self.mutations += 1
        self.kedges.add(_key(u, v))
        self._kdeg[u] += 1
        if self._kdeg[u] == 1:
            self.kverts += 1
        self._kdeg[v] += 1
        if self._kdeg[v] == 1:
            self.kverts += 1

    cdef void _refresh_removed(self, Rec e):
        cdef long long u = e.u, v = e.v
        e.in_e = False
        self.mutations += 1
        self.kedges.discard(_key(u, v))
        self._kdeg[u] -= 1
        if self._kdeg[u] == 0:
            self.kverts -= 1
        self._kdeg[v] -= 1
        if self._kdeg[v] == 0:
            self.kverts -= 1

    cdef void _set_sel(self, Rec e, long long x, bint val):
        if x == e.u:
            if e.sel_u == val:
                return
            e.sel_u = val
        else:
            if e.sel_v == val:
                return
            e.sel_v = val
        self._nsel[x] += 1 if val else -1
        self.mutations += 1

    @staticmethod
    def _sel(Rec e, long long x):
        return e.sel_u if x == e.u else e.sel_v

    cdef void _start_selecting(self, long long x):
        cdef Rec e
        self.R[x] = {}
        self.mutations += 1
        for e in (<dict> self.adj[x]).values():
            self._set_sel(e, x, True)
            self._refresh(e)

    cdef void _stop_selecting(self, long long x):
        cdef Rec e
        self.R[x] = None
        self.mutations += 1
        for e in (<dict> self.adj[x]).values():
            self._set_sel(e, x, False)
            self._refresh(e)

    # -- updates -------------------------------------------------------
    cpdef insert_edge(self, long long u, long long v):
        cdef long long n = self.n, x, y
        cdef dict au, av
        cdef Rec e
        cdef object rx
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
        if (self.R[u] is None and self.R[v] is None and len(au) < self.create_at
                and len(av) < self.create_at):
            self._refresh(e)
            return
        for x, y in ((u, v), (v, u)):
            rx = self.R[x]
            if rx is not None:
                if self._nsel[x] < self.cap:
                    self._set_sel(e, x, True)
                else:
                    (<dict> rx)[y] = None
                    self.mutations += 1
            elif len(<dict> self.adj[x]) >= self.create_at:
                self._start_selecting(x)
        self._refresh(e)

    cpdef delete_edge(self, long long u, long long v):
        cdef long long n = self.n, x, y, z
        cdef Rec e, f
        cdef object rx
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange((u, v))
        e = (<dict> self.adj[u]).get(v)
        if e is None:
            raise NoSuchEdge(_key(u, v))
        del (<dict> self.adj[u])[v]
        del (<dict> self.adj[v])[u]
        if self.R[u] is None and self.R[v] is None:
            self._refresh_removed(e)
            return
        for x, y in ((u, v), (v, u)):
            rx = self.R[x]
            if rx is None:
                continue
            if (e.sel_u if x == e.u else e.sel_v):
                self._set_sel(e, x, False)
                if rx:
                    z = next(iter(<dict> rx))
                    del (<dict> rx)[z]
                    f = (<dict> self.adj[x])[z]
                    self._set_sel(f, x, True)
                    self.mutations += 1
                    self._refresh(f)
            else:
                del (<dict> rx)[y]
                self.mutations += 1
            if len(<dict> self.adj[x]) <= self.k:
                self._stop_selecting(x)
        if e.in_e:
            self._refresh_removed(e)
