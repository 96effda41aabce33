"""Pure-Python Euler-tour forest core over splay trees (array layout, -1 = nil).

A tour holds one marker node per vertex plus two arc nodes per tree edge.
Each node carries own values ``isv`` (vertex marker), ``w`` (level-local
non-tree count), ``t`` (level tree-edge flag), ``d`` (non-tree degree) and
``x`` (caller weight); subtree sums are kept for all five.
"""


class ETTCore:
    def __init__(self) -> None:
        self.l: list[int] = []
        self.r: list[int] = []
        self.p: list[int] = []
        self.isv: list[int] = []
        self.w: list[int] = []
        self.t: list[int] = []
        self.d: list[int] = []
        self.x: list[int] = []
        self.sz: list[int] = []
        self.sw: list[int] = []
        self.st: list[int] = []
        self.sd: list[int] = []
        self.sx: list[int] = []
        self.free: list[int] = []

    def new_node(self, isv: int) -> int:
        if self.free:
            i = self.free.pop()
            self.l[i] = self.r[i] = self.p[i] = -1
            self.isv[i] = self.sz[i] = isv
            self.w[i] = self.t[i] = self.d[i] = self.x[i] = 0
            self.sw[i] = self.st[i] = self.sd[i] = self.sx[i] = 0
            return i
        i = len(self.l)
        for arr in (self.l, self.r, self.p):
            arr.append(-1)
        self.isv.append(isv)
        self.sz.append(isv)
        for arr in (self.w, self.t, self.d, self.x, self.sw, self.st, self.sd, self.sx):
            arr.append(0)
        return i

    def free_node(self, i: int) -> None:
        self.free.append(i)

    def isv_of(self, i: int) -> int:
        return self.isv[i]

    def _upd(self, i: int) -> None:
        a = self.l[i]
        b = self.r[i]
        sz = self.isv[i]
        sw = self.w[i]
        st = self.t[i]
        sd = self.d[i]
        sx = self.x[i]
        if a != -1:
            sz += self.sz[a]
            sw += self.sw[a]
            st += self.st[a]
            sd += self.sd[a]
            sx += self.sx[a]
        if b != -1:
            sz += self.sz[b]
            sw += self.sw[b]
            st += self.st[b]
            sd += self.sd[b]
            sx += self.sx[b]
        self.sz[i] = sz
        self.sw[i] = sw
        self.st[i] = st
        self.sd[i] = sd
        self.sx[i] = sx

    def _rotate(self, x: int) -> None:
        l, r, p = self.l, self.r, self.p
        y = p[x]
        z = p[y]
        if l[y] == x:
            b = r[x]
            l[y] = b
            r[x] = y
        else:
            b = l[x]
            r[y] = b
            l[x] = y
        if b != -1:
            p[b] = y
        p[y] = x
        p[x] = z
        if z != -1:
            if l[z] == y:
                l[z] = x
            else:
                r[z] = x
        self._upd(y)
        self._upd(x)

    def splay(self, x: int) -> None:
        p, l = self.p, self.l
        while p[x] != -1:
            y = p[x]
            z = p[y]
            if z != -1:
                if (l[z] == y) == (l[y] == x):
                    self._rotate(y)
                else:
                    self._rotate(x)
            self._rotate(x)

    def _first(self, x: int) -> int:
        while self.l[x] != -1:
            x = self.l[x]
        return x

    def _last(self, x: int) -> int:
        while self.r[x] != -1:
            x = self.r[x]
        return x

    def _join(self, a: int, b: int) -> int:
        """Concatenate splay trees rooted at a and b; returns new root."""
        if a == -1:
            return b
        if b == -1:
            return a
        m = self._last(a)
        self.splay(m)
        self.r[m] = b
        self.p[b] = m
        self._upd(m)
        return m

    def reroot(self, v: int) -> int:
        """Rotate the tour so vertex marker ``v`` comes first; returns root."""
        self.splay(v)
        a = self.l[v]
        if a == -1:
            return v
        self.l[v] = -1
        self.p[a] = -1
        self._upd(v)
        return self._join(v, a)

    def connected(self, a: int, b: int) -> bool:
        if a == b:
            return True
        self.splay(a)
        self.splay(b)
        return self.p[a] != -1

    def root_of(self, a: int) -> int:
        self.splay(a)
        return a

    def size(self, a: int) -> int:
        self.splay(a)
        return self.sz[a]

    def sums(self, a: int) -> tuple[int, int]:
        """(non-tree degree sum, caller weight sum) over the tour of ``a``."""
        self.splay(a)
        return self.sd[a], self.sx[a]

    def link(self, u: int, v: int, a1: int, a2: int) -> None:
        ru = self.reroot(u)
        rv = self.reroot(v)
        self._join(self._join(self._join(ru, a1), rv), a2)

    def _before(self, a: int, b: int) -> bool:
        """Whether node a precedes node b in their common tour."""
        self.splay(a)
        self.splay(b)
        x = a
        prev = -1
        while x != b:
            prev = x
            x = self.p[x]
        return self.l[b] == prev

    def cut(self, a1: int, a2: int) -> None:
        if not self._before(a1, a2):
            a1, a2 = a2, a1
        # tour = X a1 Y a2 Z  ->  X Z  and  Y
        self.splay(a1)
        x = self.l[a1]
        rest = self.r[a1]
        if x != -1:
            self.p[x] = -1
        self.p[rest] = -1
        self.l[a1] = self.r[a1] = -1
        self._upd(a1)
        self.splay(a2)
        y = self.l[a2]
        z = self.r[a2]
        if y != -1:
            self.p[y] = -1
        if z != -1:
            self.p[z] = -1
        self.l[a2] = self.r[a2] = -1
        self._upd(a2)
        self._join(x, z)

    def set_vals(self, i: int, w: int | None = None, t: int | None = None,
                 d: int | None = None, x: int | None = None) -> None:
        self.splay(i)
        if w is not None:
            self.w[i] = w
        if t is not None:
            self.t[i] = t
        if d is not None:
            self.d[i] = d
        if x is not None:
            self.x[i] = x
        self._upd(i)

    def _find(self, a: int, agg: list[int], own: list[int]) -> int:
        self.splay(a)
        if agg[a] == 0:
            return -1
        x = a
        while True:
            y = self.l[x]
            if y != -1 and agg[y] > 0:
                x = y
                continue
            if own[x] > 0:
                break
            x = self.r[x]
        self.splay(x)
        return x

    def find_w(self, a: int) -> int:
        return self._find(a, self.sw, self.w)

    def find_t(self, a: int) -> int:
        return self._find(a, self.st, self.t)

    def first_vertex(self, a: int) -> int:
        """Leftmost vertex marker of the tour containing ``a``."""
        return self._find(a, self.sz, self.isv)

    def vertices(self, a: int) -> list[int]:
        """All vertex markers in the tour of ``a`` (in tour order)."""
        self.splay(a)
        out = []
        stack = []
        x = a
        while stack or x != -1:
            while x != -1:
                stack.append(x)
                x = self.l[x]
            x = stack.pop()
            if self.isv[x]:
                out.append(x)
            x = self.r[x]
        return out
