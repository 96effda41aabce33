"""Pure-Python splay-based link/cut core (array layout, -1 = nil)."""


class LCTCore:
    __slots__ = ("l", "r", "p", "rev", "rotations")

    def __init__(self) -> None:
        self.l: list[int] = []
        self.r: list[int] = []
        self.p: list[int] = []
        self.rev: list[bool] = []
        self.rotations = 0

    def make(self) -> int:
        i = len(self.p)
        self.l.append(-1)
        self.r.append(-1)
        self.p.append(-1)
        self.rev.append(False)
        return i

    def size(self) -> int:
        return len(self.p)

    def _isroot(self, x: int) -> bool:
        q = self.p[x]
        return q == -1 or (self.l[q] != x and self.r[q] != x)

    def _push(self, x: int) -> None:
        if self.rev[x]:
            a = self.l[x]
            b = self.r[x]
            self.l[x] = b
            self.r[x] = a
            if a != -1:
                self.rev[a] = not self.rev[a]
            if b != -1:
                self.rev[b] = not self.rev[b]
            self.rev[x] = False

    def _rotate(self, x: int) -> None:
        l, r, p = self.l, self.r, self.p
        y = p[x]
        z = p[y]
        if z != -1:
            if l[z] == y:
                l[z] = x
            elif r[z] == y:
                r[z] = x
        p[x] = z
        if l[y] == x:
            b = r[x]
            l[y] = b
            if b != -1:
                p[b] = y
            r[x] = y
        else:
            b = l[x]
            r[y] = b
            if b != -1:
                p[b] = y
            l[x] = y
        p[y] = x
        self.rotations += 1

    def _splay(self, x: int) -> None:
        l, r, p = self.l, self.r, self.p
        stack = [x]
        y = x
        while True:
            q = p[y]
            if q == -1 or (l[q] != y and r[q] != y):
                break
            y = q
            stack.append(y)
        for y in reversed(stack):
            self._push(y)
        while True:
            y = p[x]
            if y == -1 or (l[y] != x and r[y] != x):
                return
            z = p[y]
            if z != -1 and (l[z] == y or r[z] == y):
                if (l[z] == y) == (l[y] == x):
                    self._rotate(y)
                else:
                    self._rotate(x)
            self._rotate(x)

    def access(self, x: int) -> int:
        last = -1
        y = x
        while y != -1:
            self._splay(y)
            self.r[y] = last
            last = y
            y = self.p[y]
        self._splay(x)
        return last

    def evert(self, x: int) -> None:
        self.access(x)
        self.rev[x] = not self.rev[x]

    def findroot(self, x: int) -> int:
        self.access(x)
        y = x
        self._push(y)
        while self.l[y] != -1:
            y = self.l[y]
            self._push(y)
        self._splay(y)
        return y

    def connected(self, a: int, b: int) -> bool:
        if a == b:
            return True
        return self.findroot(a) == self.findroot(b)

    def link(self, a: int, b: int) -> None:
        # caller guarantees a and b lie in different trees
        self.evert(a)
        self.p[a] = b

    def cut(self, a: int, b: int) -> bool:
        self.evert(a)
        self.access(b)
        if self.l[b] != a:
            return False
        self._push(a)
        if self.r[a] != -1:
            return False
        self.l[b] = -1
        self.p[a] = -1
        return True

    def pred(self, x: int) -> int:
        """Predecessor of splay-root ``x`` in its preferred path, or -1."""
        y = self.l[x]
        if y == -1:
            return -1
        self._push(y)
        while self.r[y] != -1:
            y = self.r[y]
            self._push(y)
        self._splay(y)
        return y

    def after(self, a: int, b: int) -> int:
        self.evert(b)
        self.access(a)
        return self.pred(a)

    def parent(self, x: int) -> int:
        self.access(x)
        return self.pred(x)

    def nca(self, a: int, b: int) -> int:
        self.access(a)
        return self.access(b)
