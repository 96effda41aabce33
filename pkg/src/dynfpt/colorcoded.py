"""Color-coding structures: undirected k-Path and Dense Subgraph in bounded-degree graphs.

Both keep a family of vertex colorings and, per coloring, several
ConnectivityForest instances that each see only the edges relevant to one
color pattern. Updates fan out to the members whose pattern the edge fits.

Colorings come from ``ColoringFamily``. Exhaustive mode guarantees that
every set of ``colors`` vertices is rainbow under some member, which makes
answers exact; randomized mode draws ceil(e^c * ln(1/eps)) uniform colorings,
giving one-sided error at most eps per query.
"""
from __future__ import annotations

import math
import random
from collections import deque
from functools import lru_cache
from itertools import combinations, permutations

from .dynconn import ConnectivityForest
from .errors import (DegreeBoundViolated, DuplicateEdge, LoopForbidden, NoSuchEdge,
                     ParameterError, VertexOutOfRange)

EXHAUSTIVE_MAX_N = 12
DEFAULT_MEMBER_CAP = 200_000


class ColoringFamily:
    """A list of colorings ``range(n) -> range(colors)``."""

    def __init__(self, n: int, colors: int, mode: str = "exhaustive", epsilon: float = 1e-6,
                 seed: int = 0):
        if colors < 1:
            raise ParameterError("need at least one color")
        self.n = n
        self.colors = colors
        self.mode = mode
        self.epsilon = epsilon
        self.seed = seed
        rng = random.Random(seed)
        if mode == "exhaustive":
            if n > EXHAUSTIVE_MAX_N:
                raise ParameterError(f"exhaustive mode needs n <= {EXHAUSTIVE_MAX_N}")
            self.colorings = _covering_family(n, colors, rng)
        elif mode == "randomized":
            if not 0 < epsilon < 1:
                raise ParameterError("epsilon must lie in (0, 1)")
            size = math.ceil(math.exp(colors) * math.log(1 / epsilon))
            self.colorings = [tuple(rng.randrange(colors) for _ in range(n)) for _ in range(size)]
        else:
            raise ParameterError(f"unknown mode {mode!r}")

    def __len__(self) -> int:
        return len(self.colorings)

    def rainbow_somewhere(self, xs) -> bool:
        xs = list(xs)
        return any(len({h[x] for x in xs}) == len(xs) for h in self.colorings)


def _covering_family(n: int, c: int, rng: random.Random) -> list[tuple[int, ...]]:
    """Colorings under which every c-subset of range(n) is rainbow somewhere.

    Greedy set cover over the c-subsets, with candidates drawn from a seeded
    pool of balanced random colorings.
    """
    if c >= n:
        return [tuple(range(n))]
    uncovered = {sum(1 << x for x in xs) for xs in combinations(range(n), c)}
    base = [i % c for i in range(n)]
    family = []
    while uncovered:
        best, best_hit = None, set()
        for _ in range(48):
            h = base[:]
            rng.shuffle(h)
            hit = {s for s in uncovered if _rainbow_mask(s, h)}
            if len(hit) > len(best_hit):
                best, best_hit = tuple(h), hit
        if best is not None:
            family.append(best)
            uncovered -= best_hit
    return family


def _rainbow_mask(mask: int, h: list[int]) -> bool:
    seen = 0
    x = 0
    while mask:
        if mask & 1:
            bit = 1 << h[x]
            if seen & bit:
                return False
            seen |= bit
        mask >>= 1
        x += 1
    return True


@lru_cache(maxsize=None)
def _orders(k: int) -> tuple[tuple[int, ...], ...]:
    """Color orders up to reversal (a path read backwards uses the reversed order)."""
    return tuple(p for p in permutations(range(k)) if k < 2 or p[0] < p[-1])


class _Graph:
    """Simple undirected graph with argument checks shared by both structures."""

    def __init__(self, n: int):
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]

    def check_new(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise VertexOutOfRange((u, v))
        if u == v:
            raise LoopForbidden(u)
        if v in self.adj[u]:
            raise DuplicateEdge((min(u, v), max(u, v)))

    def check_old(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise VertexOutOfRange((u, v))
        if v not in self.adj[u]:
            raise NoSuchEdge((min(u, v), max(u, v)))


class KPath:
    """Does the graph contain a simple path on k vertices?

    Member (i, order) holds the edges whose two colors are consecutive in
    ``order`` plus a source s joined to the first color class and a sink t
    joined to the last; s and t are connected iff some walk climbs through
    every color, and the shortest such walk is a simple path on >= k vertices.
    """

    def __init__(self, n: int, k: int, mode: str = "exhaustive", epsilon: float = 1e-6,
                 seed: int = 0, member_cap: int = DEFAULT_MEMBER_CAP, backend: str | None = None):
        if k < 0:
            raise ParameterError("k must be nonnegative")
        self.g = _Graph(n)
        self.n = n
        self.k = k
        self.trivial = k <= 1 or k > n
        self.members: list[tuple[int, tuple[int, ...], ConnectivityForest]] = []
        self.by_pair: list[dict[tuple[int, int], list[int]]] = []
        self.yes: set[int] = set()
        self.updates = 0
        if self.trivial:
            self.family = None
            return
        self.family = ColoringFamily(n, k, mode, epsilon, seed)
        orders = _orders(k)
        if len(self.family) * len(orders) > member_cap:
            raise ParameterError("member cap exceeded")
        s, t = n, n + 1
        for i, h in enumerate(self.family.colorings):
            pairs: dict[tuple[int, int], list[int]] = {}
            for order in orders:
                idx = len(self.members)
                f = ConnectivityForest(n + 2, backend=backend)
                for x in range(n):
                    if h[x] == order[0]:
                        f.conn_insert(s, x)
                    if h[x] == order[-1]:
                        f.conn_insert(x, t)
                self.members.append((i, order, f))
                for j in range(k - 1):
                    a, b = order[j], order[j + 1]
                    pairs.setdefault((min(a, b), max(a, b)), []).append(idx)
            self.by_pair.append(pairs)

    def _fan(self, u: int, v: int, insert: bool) -> None:
        for i, h in enumerate(self.family.colorings):
            a, b = h[u], h[v]
            if a == b:
                continue
            for idx in self.by_pair[i].get((min(a, b), max(a, b)), ()):
                f = self.members[idx][2]
                if insert:
                    f.conn_insert(u, v)
                else:
                    f.conn_delete(u, v)
                self.updates += 1
                if f.connected(self.n, self.n + 1):
                    self.yes.add(idx)
                else:
                    self.yes.discard(idx)

    def insert_edge(self, u: int, v: int) -> None:
        g = self.g
        g.check_new(u, v)
        g.adj[u].add(v)
        g.adj[v].add(u)
        if not self.trivial:
            self._fan(u, v, True)

    def delete_edge(self, u: int, v: int) -> None:
        g = self.g
        g.check_old(u, v)
        g.adj[u].discard(v)
        g.adj[v].discard(u)
        if not self.trivial:
            self._fan(u, v, False)

    def query(self) -> bool:
        if self.trivial:
            return self.k <= self.n
        return bool(self.yes)

    def member_edges(self, idx: int) -> set[tuple[int, int]]:
        """Graph edges that belong to member ``idx`` by the color rule."""
        i, order, _ = self.members[idx]
        h = self.family.colorings[i]
        pos = {c: j for j, c in enumerate(order)}
        return {(u, v) for u in range(self.n) for v in self.g.adj[u]
                if u < v and abs(pos.get(h[u], -9) - pos.get(h[v], -9)) == 1}

    def witness(self) -> list[int] | None:
        """A simple path on k vertices, found by BFS in a member where s reaches t."""
        if self.trivial:
            return list(range(self.k)) if self.k <= self.n else None
        if not self.yes:
            return None
        idx = min(self.yes)
        i, order, _ = self.members[idx]
        h = self.family.colorings[i]
        pos = {c: j for j, c in enumerate(order)}
        k = self.k
        starts = [x for x in range(self.n) if pos.get(h[x]) == 0]
        prev = {x: -1 for x in starts}
        dq = deque(starts)
        while dq:
            x = dq.popleft()
            if pos.get(h[x]) == k - 1:
                path = []
                while x != -1:
                    path.append(x)
                    x = prev[x]
                return path[::-1][:k] if len(path) >= k else None
            px = pos[h[x]]
            for y in sorted(self.g.adj[x]):
                py = pos.get(h[y])
                if y not in prev and py is not None and abs(py - px) == 1:
                    prev[y] = x
                    dq.append(y)
        return None


def partitions(k: int, largest: int | None = None):
    """Partitions of k into nonincreasing positive parts."""
    if largest is None:
        largest = k
    if k == 0:
        yield ()
        return
    for p in range(min(k, largest), 0, -1):
        for rest in partitions(k - p, p):
            yield (p,) + rest


class _DenseMember:
    __slots__ = ("U", "inL", "conn", "A", "reg", "best", "w")

    def __init__(self, U: frozenset, inL: list[bool], conn: ConnectivityForest, k: int, cap_e: int):
        self.U = U
        self.inL = inL
        self.conn = conn
        self.A: list[list[set[int]]] = [[set() for _ in range(cap_e + 1)] for _ in range(k + 1)]
        self.reg: dict[int, tuple[int, int]] = {}
        self.best: tuple[int, tuple[int, ...]] | None = None
        self.w = [0] * len(inL)  # edges from an L-vertex into R


class DenseSubgraph:
    """Maximum number of edges induced by k vertices, for graphs of max degree <= delta.

    One member per (coloring, k-set U of colors); the member sees G[L] for
    L = h^{-1}(U) and files every L-component with at most k vertices in
    A[size][internal edges]. Components are separate, so a union of filed
    components induces exactly the sum of their internal edges. When
    C and its neighbourhood are rainbow, C is such a union for U = h(C).
    ``mC`` (internal plus L-to-R edges) is kept as a per-vertex weight.
    """

    def __init__(self, n: int, k: int, delta: int, mode: str = "exhaustive", epsilon: float = 1e-6,
                 seed: int = 0, member_cap: int = DEFAULT_MEMBER_CAP, backend: str | None = None):
        if k < 0 or delta < 0:
            raise ParameterError("k and delta must be nonnegative")
        self.g = _Graph(n)
        self.n = n
        self.k = k
        self.delta = delta
        self.kp = k * (delta + 1)
        self.members: list[_DenseMember] = []
        self.by_color: list[list[list[int]]] = []
        self.updates = 0
        self.trivial = k == 0 or k > n
        if self.trivial:
            self.family = None
            return
        self.family = ColoringFamily(n, self.kp, mode, epsilon, seed)
        used = [sorted(set(h)) for h in self.family.colorings]
        total = sum(math.comb(len(u), k) for u in used)
        if total > member_cap:
            raise ParameterError("member cap exceeded")
        cap_e = k * delta
        for i, h in enumerate(self.family.colorings):
            col: list[list[int]] = [[] for _ in range(self.kp)]
            for U in combinations(used[i], k):
                Us = frozenset(U)
                inL = [h[x] in Us for x in range(n)]
                mem = _DenseMember(Us, inL, ConnectivityForest(n, backend=backend), k, cap_e)
                idx = len(self.members)
                self.members.append(mem)
                for c in U:
                    col[c].append(idx)
                for x in range(n):
                    if inL[x]:
                        self._file(mem, x)
            self.by_color.append(col)

    # -- A matrix ----------------------------------------------------------
    def _unfile(self, mem: _DenseMember, x: int) -> None:
        name = mem.conn.component_of(x)
        key = mem.reg.pop(name, None)
        if key is not None:
            mem.A[key[0]][key[1]].discard(name)

    def _file(self, mem: _DenseMember, x: int) -> None:
        name = mem.conn.component_of(x)
        if name in mem.reg:
            return
        size, inner = mem.conn.stats_of(x)
        if size <= self.k:
            mem.reg[name] = (size, inner)
            mem.A[size][inner].add(name)

    def _members_of(self, u: int, v: int) -> list[int]:
        out: set[int] = set()
        for i, h in enumerate(self.family.colorings):
            out.update(self.by_color[i][h[u]])
            out.update(self.by_color[i][h[v]])
        return sorted(out)

    def _apply(self, u: int, v: int, insert: bool) -> None:
        sign = 1 if insert else -1
        for idx in self._members_of(u, v):
            mem = self.members[idx]
            self.updates += 1
            mem.best = None
            lu, lv = mem.inL[u], mem.inL[v]
            if lu and lv:
                self._unfile(mem, u)
                self._unfile(mem, v)
                if insert:
                    mem.conn.conn_insert(u, v)
                else:
                    mem.conn.conn_delete(u, v)
                self._file(mem, u)
                self._file(mem, v)
            else:
                x = u if lu else v
                mem.w[x] += sign
                mem.conn.set_weight(x, mem.w[x])

    def insert_edge(self, u: int, v: int) -> None:
        g = self.g
        g.check_new(u, v)
        if len(g.adj[u]) >= self.delta or len(g.adj[v]) >= self.delta:
            raise DegreeBoundViolated((u, v))
        g.adj[u].add(v)
        g.adj[v].add(u)
        if not self.trivial:
            self._apply(u, v, True)

    def delete_edge(self, u: int, v: int) -> None:
        g = self.g
        g.check_old(u, v)
        g.adj[u].discard(v)
        g.adj[v].discard(u)
        if not self.trivial:
            self._apply(u, v, False)

    # -- queries -------------------------------------------------------------
    def _member_best(self, mem: _DenseMember) -> tuple[int, tuple[int, ...]] | None:
        if mem.best is not None:
            return mem.best if mem.best[0] >= 0 else None
        k = self.k
        ranked: dict[int, list[tuple[int, int]]] = {}
        for size in range(1, k + 1):
            row = mem.A[size]
            ranked[size] = [(e, name) for e in range(len(row) - 1, -1, -1) for name in sorted(row[e])][:k // size]
        best: tuple[int, tuple[int, ...]] = (-1, ())
        for parts in partitions(k):
            need: dict[int, int] = {}
            for p in parts:
                need[p] = need.get(p, 0) + 1
            total = 0
            names: list[int] = []
            for size, c in need.items():
                got = ranked[size][:c]
                if len(got) < c:
                    break
                total += sum(e for e, _ in got)
                names.extend(name for _, name in got)
            else:
                if total > best[0]:
                    best = (total, tuple(names))
        mem.best = best
        return best if best[0] >= 0 else None

    def query(self) -> tuple[int, frozenset] | None:
        """(max induced edges, witness set); None when k > n or nothing was found."""
        if self.k == 0:
            return 0, frozenset()
        if self.k > self.n:
            return None
        best = None
        where = None
        for mem in self.members:
            got = self._member_best(mem)
            if got is not None and (best is None or got[0] > best[0]):
                best, where = got, mem
        if best is None:
            return None
        verts: set[int] = set()
        for name in best[1]:
            verts.update(where.conn.component_vertices(name))
        return best[0], frozenset(verts)

    def mC(self, idx: int, name: int) -> int:
        """Internal plus L-to-R edge count of a filed component."""
        mem = self.members[idx]
        _, inner = mem.conn.stats_of(name)
        return inner + mem.conn.weight_of(name)

    def check(self) -> None:
        """Per-member scan: filing, stats and weights against a recount."""
        adj = self.g.adj
        for mem in self.members:
            L = [x for x in range(self.n) if mem.inL[x]]
            seen: set[int] = set()
            filed: set[int] = set()
            for x in L:
                if x in seen:
                    continue
                comp = set(mem.conn.component_vertices(x))
                seen |= comp
                assert all(mem.inL[y] for y in comp)
                inner = sum(1 for a in comp for b in adj[a] if b in comp) // 2
                out = sum(1 for a in comp for b in adj[a] if not mem.inL[b])
                name = mem.conn.component_of(x)
                assert mem.conn.stats_of(x) == (len(comp), inner)
                assert mem.conn.weight_of(x) == out
                if len(comp) <= self.k:
                    assert mem.reg[name] == (len(comp), inner)
                    assert name in mem.A[len(comp)][inner]
                    filed.add(name)
            assert set(mem.reg) == filed
            assert sum(len(c) for row in mem.A for c in row) == len(filed)
