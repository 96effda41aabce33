# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled splay-based link/cut core; mirrors dynfpt._lct_py.LCTCore."""
from libc.stdlib cimport malloc, realloc, free


cdef class LCTCore:
    cdef int *L
    cdef int *R
    cdef int *P
    cdef char *REV
    cdef int n
    cdef int cap
    cdef int *stack
    cdef public long long rotations

    def __cinit__(self):
        self.cap = 16
        self.n = 0
        self.L = <int *> malloc(self.cap * sizeof(int))
        self.R = <int *> malloc(self.cap * sizeof(int))
        self.P = <int *> malloc(self.cap * sizeof(int))
        self.REV = <char *> malloc(self.cap * sizeof(char))
        self.stack = <int *> malloc(self.cap * sizeof(int))
        self.rotations = 0
        if not (self.L and self.R and self.P and self.REV and self.stack):
            raise MemoryError()

    def __dealloc__(self):
        free(self.L)
        free(self.R)
        free(self.P)
        free(self.REV)
        free(self.stack)

    cdef void _grow(self):
        self.cap *= 2
        self.L = <int *> realloc(self.L, self.cap * sizeof(int))
        self.R = <int *> realloc(self.R, self.cap * sizeof(int))
        self.P = <int *> realloc(self.P, self.cap * sizeof(int))
        self.REV = <char *> realloc(self.REV, self.cap * sizeof(char))
        self.stack = <int *> realloc(self.stack, self.cap * sizeof(int))

    def make(self):
        if self.n == self.cap:
            self._grow()
        cdef int i = self.n
        self.L[i] = -1
        self.R[i] = -1
        self.P[i] = -1
        self.REV[i] = 0
        self.n += 1
        return i

    def size(self):
        return self.n

    cdef inline bint _isroot(self, int x):
        cdef int q = self.P[x]
        return q == -1 or (self.L[q] != x and self.R[q] != x)

    cdef inline void _push(self, int x):
        cdef int a, b
        if self.REV[x]:
            a = self.L[x]
            b = self.R[x]
            self.L[x] = b
            self.R[x] = a
            if a != -1:
                self.REV[a] ^= 1
            if b != -1:
                self.REV[b] ^= 1
            self.REV[x] = 0

    cdef void _rotate(self, int x):
        cdef int y = self.P[x]
        cdef int z = self.P[y]
        cdef int b
        if z != -1:
            if self.L[z] == y:
                self.L[z] = x
            elif self.R[z] == y:
                self.R[z] = x
        self.P[x] = z
        if self.L[y] == x:
            b = self.R[x]
            self.L[y] = b
            if b != -1:
                self.P[b] = y
            self.R[x] = y
        else:
            b = self.L[x]
            self.R[y] = b
            if b != -1:
                self.P[b] = y
            self.L[x] = y
        self.P[y] = x
        self.rotations += 1

    cdef void _splay(self, int x):
        cdef int top = 0
        cdef int y = x
        cdef int z
        self.stack[top] = y
        top += 1
        while not self._isroot(y):
            y = self.P[y]
            self.stack[top] = y
            top += 1
        while top > 0:
            top -= 1
            self._push(self.stack[top])
        while not self._isroot(x):
            y = self.P[x]
            if not self._isroot(y):
                z = self.P[y]
                if (self.L[z] == y) == (self.L[y] == x):
                    self._rotate(y)
                else:
                    self._rotate(x)
            self._rotate(x)

    cdef int _access(self, int x):
        cdef int last = -1
        cdef int y = x
        while y != -1:
            self._splay(y)
            self.R[y] = last
            last = y
            y = self.P[y]
        self._splay(x)
        return last

    def access(self, int x):
        return self._access(x)

    def evert(self, int x):
        self._access(x)
        self.REV[x] ^= 1

    cdef int _findroot(self, int x):
        self._access(x)
        cdef int y = x
        self._push(y)
        while self.L[y] != -1:
            y = self.L[y]
            self._push(y)
        self._splay(y)
        return y

    def findroot(self, int x):
        return self._findroot(x)

    def connected(self, int a, int b):
        if a == b:
            return True
        return self._findroot(a) == self._findroot(b)

    def link(self, int a, int b):
        self._access(a)
        self.REV[a] ^= 1
        self.P[a] = b

    def cut(self, int a, int b):
        self._access(a)
        self.REV[a] ^= 1
        self._access(b)
        if self.L[b] != a:
            return False
        self._push(a)
        if self.R[a] != -1:
            return False
        self.L[b] = -1
        self.P[a] = -1
        return True

    cdef int _pred(self, int x):
        cdef int y = self.L[x]
        if y == -1:
            return -1
        self._push(y)
        while self.R[y] != -1:
            y = self.R[y]
            self._push(y)
        self._splay(y)
        return y

    def pred(self, int x):
        return self._pred(x)

    def after(self, int a, int b):
        self._access(b)
        self.REV[b] ^= 1
        self._access(a)
        return self._pred(a)

    def parent(self, int x):
        self._access(x)
        return self._pred(x)

    def nca(self, int a, int b):
        self._access(a)
        return self._access(b)
