# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Euler-tour forest core; mirrors dynfpt._ett_py.ETTCore."""
from libc.stdlib cimport malloc, realloc, free



cdef class ETTCore:
    cdef int *L
    cdef int *R
    cdef int *P
    cdef long *ISV
    cdef long *W
    cdef long *T
    cdef long *D
    cdef long *X
    cdef long *SZ
    cdef long *SW
    cdef long *ST
    cdef long *SD
    cdef long *SX
    cdef int n
    cdef int cap
    cdef list free_list

    def __cinit__(self):
        self.cap = 64
        self.n = 0
        self.free_list = []
        self.L = <int *> malloc(self.cap * sizeof(int))
        self.R = <int *> malloc(self.cap * sizeof(int))
        self.P = <int *> malloc(self.cap * sizeof(int))
        self.ISV = <long *> malloc(self.cap * sizeof(long))
        self.W = <long *> malloc(self.cap * sizeof(long))
        self.T = <long *> malloc(self.cap * sizeof(long))
        self.D = <long *> malloc(self.cap * sizeof(long))
        self.X = <long *> malloc(self.cap * sizeof(long))
        self.SZ = <long *> malloc(self.cap * sizeof(long))
        self.SW = <long *> malloc(self.cap * sizeof(long))
        self.ST = <long *> malloc(self.cap * sizeof(long))
        self.SD = <long *> malloc(self.cap * sizeof(long))
        self.SX = <long *> malloc(self.cap * sizeof(long))

    def __dealloc__(self):
        free(self.L); free(self.R); free(self.P)
        free(self.ISV); free(self.W); free(self.T); free(self.D); free(self.X)
        free(self.SZ); free(self.SW); free(self.ST); free(self.SD); free(self.SX)

    cdef void _grow(self):
        self.cap *= 2
        self.L = <int *> realloc(self.L, self.cap * sizeof(int))
        self.R = <int *> realloc(self.R, self.cap * sizeof(int))
        self.P = <int *> realloc(self.P, self.cap * sizeof(int))
        self.ISV = <long *> realloc(self.ISV, self.cap * sizeof(long))
        self.W = <long *> realloc(self.W, self.cap * sizeof(long))
        self.T = <long *> realloc(self.T, self.cap * sizeof(long))
        self.D = <long *> realloc(self.D, self.cap * sizeof(long))
        self.X = <long *> realloc(self.X, self.cap * sizeof(long))
        self.SZ = <long *> realloc(self.SZ, self.cap * sizeof(long))
        self.SW = <long *> realloc(self.SW, self.cap * sizeof(long))
        self.ST = <long *> realloc(self.ST, self.cap * sizeof(long))
        self.SD = <long *> realloc(self.SD, self.cap * sizeof(long))
        self.SX = <long *> realloc(self.SX, self.cap * sizeof(long))

    def new_node(self, long isv):
        cdef int i
        if self.free_list:
            i = self.free_list.pop()
        else:
            if self.n == self.cap:
                self._grow()
            i = self.n
            self.n += 1
        self.L[i] = -1
        self.R[i] = -1
        self.P[i] = -1
        self.ISV[i] = isv
        self.SZ[i] = isv
        self.W[i] = 0; self.T[i] = 0; self.D[i] = 0; self.X[i] = 0
        self.SW[i] = 0; self.ST[i] = 0; self.SD[i] = 0; self.SX[i] = 0
        return i

    def free_node(self, int i):
        self.free_list.append(i)

    cdef inline void _upd(self, int i):
        cdef int a = self.L[i]
        cdef int b = self.R[i]
        cdef long sz = self.ISV[i], sw = self.W[i], st = self.T[i]
        cdef long sd = self.D[i], sx = self.X[i]
        if a != -1:
            sz += self.SZ[a]; sw += self.SW[a]; st += self.ST[a]
            sd += self.SD[a]; sx += self.SX[a]
        if b != -1:
            sz += self.SZ[b]; sw += self.SW[b]; st += self.ST[b]
            sd += self.SD[b]; sx += self.SX[b]
        self.SZ[i] = sz; self.SW[i] = sw; self.ST[i] = st
        self.SD[i] = sd; self.SX[i] = sx

    cdef void _rotate(self, int x):
        cdef int y = self.P[x]
        cdef int z = self.P[y]
        cdef int b
        if self.L[y] == x:
            b = self.R[x]
            self.L[y] = b
            self.R[x] = y
        else:
            b = self.L[x]
            self.R[y] = b
            self.L[x] = y
        if b != -1:
            self.P[b] = y
        self.P[y] = x
        self.P[x] = z
        if z != -1:
            if self.L[z] == y:
                self.L[z] = x
            else:
                self.R[z] = x
        self._upd(y)
        self._upd(x)

    cdef void _splay(self, int x):
        cdef int y, z
        while self.P[x] != -1:
            y = self.P[x]
            z = self.P[y]
            if z != -1:
                if (self.L[z] == y) == (self.L[y] == x):
                    self._rotate(y)
                else:
                    self._rotate(x)
            self._rotate(x)

    def splay(self, int x):
        self._splay(x)

    cdef int _join(self, int a, int b):
        cdef int m
        if a == -1:
            return b
        if b == -1:
            return a
        m = a
        while self.R[m] != -1:
            m = self.R[m]
        self._splay(m)
        self.R[m] = b
        self.P[b] = m
        self._upd(m)
        return m

    cdef int _reroot(self, int v):
        self._splay(v)
        cdef int a = self.L[v]
        if a == -1:
            return v
        self.L[v] = -1
        self.P[a] = -1
        self._upd(v)
        return self._join(v, a)

    def reroot(self, int v):
        return self._reroot(v)

    def connected(self, int a, int b):
        if a == b:
            return True
        self._splay(a)
        self._splay(b)
        return self.P[a] != -1

    def root_of(self, int a):
        self._splay(a)
        return a

    def size(self, int a):
        self._splay(a)
        return self.SZ[a]

    def sums(self, int a):
        self._splay(a)
        return self.SD[a], self.SX[a]

    def link(self, int u, int v, int a1, int a2):
        cdef int ru = self._reroot(u)
        cdef int rv = self._reroot(v)
        self._join(self._join(self._join(ru, a1), rv), a2)

    cdef bint _before(self, int a, int b):
        self._splay(a)
        self._splay(b)
        cdef int x = a
        cdef int prev = -1
        while x != b:
            prev = x
            x = self.P[x]
        return self.L[b] == prev

    def cut(self, int a1, int a2):
        cdef int t, x, rest, y, z
        if not self._before(a1, a2):
            t = a1; a1 = a2; a2 = t
        self._splay(a1)
        x = self.L[a1]
        rest = self.R[a1]
        if x != -1:
            self.P[x] = -1
        self.P[rest] = -1
        self.L[a1] = -1
        self.R[a1] = -1
        self._upd(a1)
        self._splay(a2)
        y = self.L[a2]
        z = self.R[a2]
        if y != -1:
            self.P[y] = -1
        if z != -1:
            self.P[z] = -1
        self.L[a2] = -1
        self.R[a2] = -1
        self._upd(a2)
        self._join(x, z)

    def set_vals(self, int i, w=None, t=None, d=None, x=None):
        self._splay(i)
        if w is not None:
            self.W[i] = w
        if t is not None:
            self.T[i] = t
        if d is not None:
            self.D[i] = d
        if x is not None:
            self.X[i] = x
        self._upd(i)

    cdef int _find(self, int a, int which):
        cdef long *agg
        cdef long *own
        if which == 0:
            agg = self.SW; own = self.W
        elif which == 1:
            agg = self.ST; own = self.T
        else:
            agg = self.SZ; own = self.ISV
        self._splay(a)
        if agg[a] == 0:
            return -1
        cdef int x = a
        cdef int y
        while True:
            y = self.L[x]
            if y != -1 and agg[y] > 0:
                x = y
                continue
            if own[x] > 0:
                break
            x = self.R[x]
        self._splay(x)
        return x

    def find_w(self, int a):
        return self._find(a, 0)

    def find_t(self, int a):
        return self._find(a, 1)

    def first_vertex(self, int a):
        return self._find(a, 2)

    def vertices(self, int a):
        self._splay(a)
        out = []
        stack = []
        cdef int x = a
        while stack or x != -1:
            while x != -1:
                stack.append(x)
                x = self.L[x]
            x = stack.pop()
            if self.ISV[x]:
                out.append(x)
            x = self.R[x]
        return out

    # read access used by the Python layer
    def isv_of(self, int i):
        return self.ISV[i]
