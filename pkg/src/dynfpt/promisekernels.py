"""Promise-model kernels: Edge Clique Cover and Point Line Cover.

Both structures are only fast while a solution of size g(k) exists. Outside
that window they keep working but flag themselves ``degraded`` and answer
``UNKNOWN`` until their maintained sets shrink back within the promised
bounds. Definitive answers are exact either way.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable

from .errors import (DuplicateEdge, DuplicatePoint, LoopForbidden, NoSuchEdge, NoSuchPoint,
                     ParameterError, VertexOutOfRange)

UNKNOWN = "UNKNOWN"
MAX_G = 4


class _Class:
    """A vertex of the reduced graph: a class of closed-neighbourhood twins."""

    __slots__ = ("name", "members", "nbrs")

    def __init__(self, first: int):
        self.name = first
        self.members: dict[int, None] = {first: None}
        self.nbrs: set[_Class] = set()

    def any(self) -> int:
        return self.name

    def __repr__(self) -> str:
        return f"_Class({self.name}, {sorted(self.members)})"


class EdgeCliqueCover:
    """Reduced graph G*: no isolated vertices, no two vertices with N[u] = N[v]."""

    def __init__(self, n: int, k: int, g: int | None = None):
        g = k if g is None else g
        if not 0 <= k <= g <= MAX_G:
            raise ParameterError(f"need 0 <= k <= g <= {MAX_G}")
        self.n = n
        self.k = k
        self.g = g
        self.limit = 1 << g
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.p: list[_Class | None] = [None] * n
        self.nodes: dict[_Class, None] = {}
        self.cover: list[frozenset[_Class]] | None = None
        self._fresh = False

    @property
    def degraded(self) -> bool:
        return len(self.nodes) > self.limit

    # -- maintenance -------------------------------------------------------
    def _remove(self, u: int) -> None:
        c = self.p[u]
        if c is None:
            return
        self.p[u] = None
        del c.members[u]
        if not c.members:
            for y in c.nbrs:
                y.nbrs.discard(c)
            del self.nodes[c]
        elif c.name == u:
            c.name = next(iter(c.members))

    def _place(self, u: int, pending: int | None) -> None:
        """Put u back; ``pending`` is a vertex of the update not placed yet."""
        adj_u = self.adj[u]
        if not adj_u:
            return
        near = {c for c in self.nodes if c.any() in adj_u}
        want_pending = pending is not None and pending in adj_u
        for x in near:
            if x.nbrs == near - {x} and (pending is None or (x.any() in self.adj[pending]) == want_pending):
                x.members[u] = None
                self.p[u] = x
                return
        c = _Class(u)
        self.p[u] = c
        self.nodes[c] = None
        c.nbrs = near
        for y in near:
            y.nbrs.add(c)

    def _update(self, a: int, b: int, insert: bool) -> None:
        self._remove(a)
        self._remove(b)
        if insert:
            self.adj[a].add(b)
            self.adj[b].add(a)
        else:
            self.adj[a].discard(b)
            self.adj[b].discard(a)
        self._place(a, b)
        self._place(b, None)
        self._fresh = False

    def _check_pair(self, a: int, b: int) -> None:
        if not (0 <= a < self.n and 0 <= b < self.n):
            raise VertexOutOfRange((a, b))
        if a == b:
            raise LoopForbidden(a)

    def insert_edge(self, a: int, b: int) -> None:
        self._check_pair(a, b)
        if b in self.adj[a]:
            raise DuplicateEdge((min(a, b), max(a, b)))
        self._update(a, b, True)

    def delete_edge(self, a: int, b: int) -> None:
        self._check_pair(a, b)
        if b not in self.adj[a]:
            raise NoSuchEdge((min(a, b), max(a, b)))
        self._update(a, b, False)

    def rebuild(self) -> None:
        """Recompute G* from G by grouping vertices on N[v]."""
        self.p = [None] * self.n
        self.nodes = {}
        groups: dict[frozenset, _Class] = {}
        for u in range(self.n):
            if not self.adj[u]:
                continue
            key = frozenset(self.adj[u] | {u})
            c = groups.get(key)
            if c is None:
                c = groups[key] = _Class(u)
                self.nodes[c] = None
            else:
                c.members[u] = None
            self.p[u] = c
        for c in self.nodes:
            c.nbrs = {self.p[y] for y in self.adj[c.name]} - {c}
        self._fresh = False

    # -- queries -------------------------------------------------------------------
    def reduced(self) -> tuple[set[frozenset], set[frozenset]]:
        """(classes, edges between classes), both as frozensets of G vertices."""
        classes = {frozenset(c.members) for c in self.nodes}
        edges = {frozenset((frozenset(c.members), frozenset(d.members)))
                 for c in self.nodes for d in c.nbrs}
        return classes, edges

    def query(self):
        """List of cliques (vertex sets) covering every edge, None, or UNKNOWN."""
        if self.degraded:
            return UNKNOWN
        if not self._fresh:
            self.cover = solve_reduced_ecc(list(self.nodes), self.k)
            self._fresh = True
        if self.cover is None:
            return None
        return [frozenset(v for c in cl for v in c.members) for cl in self.cover]

    def cliques_of(self, v: int) -> list[int]:
        """Indices of the cliques of the last cover that contain vertex v."""
        got = self.query()
        if not isinstance(got, list):
            return []
        c = self.p[v]
        return [i for i, cl in enumerate(self.cover) if c in cl]

    def members_of(self, i: int) -> list[int]:
        got = self.query()
        if not isinstance(got, list):
            return []
        return sorted(v for c in self.cover[i] for v in c.members)


def solve_reduced_ecc(nodes: list[_Class], k: int) -> list[frozenset[_Class]] | None:
    """Cover every G* edge, and every class of >= 2 vertices, with <= k cliques.

    Branch on the first uncovered item: extend an existing clique by its
    endpoints if that keeps it a clique, or open a new clique.
    """
    order = {c: i for i, c in enumerate(nodes)}
    items: list[tuple[_Class, _Class]] = []
    for c in nodes:
        if len(c.members) >= 2:
            items.append((c, c))
        for d in c.nbrs:
            if order[c] < order[d]:
                items.append((c, d))
    cliques: list[set[_Class]] = []

    def covered(it) -> bool:
        a, b = it
        return any(a in cl and b in cl for cl in cliques)

    def fits(cl: set[_Class], x: _Class) -> bool:
        return x in cl or all(y in x.nbrs for y in cl)

    def rec(i: int) -> bool:
        while i < len(items) and covered(items[i]):
            i += 1
        if i == len(items):
            return True
        a, b = items[i]
        for cl in cliques:
            if fits(cl, a) and fits(cl, b):
                added = [x for x in (a, b) if x not in cl]
                cl.update(added)
                if rec(i + 1):
                    return True
                cl.difference_update(added)
        if len(cliques) < k:
            cliques.append({a, b})
            if rec(i + 1):
                return True
            cliques.pop()
        return False

    if rec(0):
        return [frozenset(cl) for cl in cliques]
    return None


def reduce_static(n: int, edges: Iterable[tuple[int, int]]) -> tuple[set[frozenset], set[frozenset]]:
    """Reduced graph from scratch: twin classes of non-isolated vertices and their edges."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    groups: dict[frozenset, set[int]] = {}
    for v in range(n):
        if adj[v]:
            groups.setdefault(frozenset(adj[v] | {v}), set()).add(v)
    classes = {frozenset(s) for s in groups.values()}
    where = {v: c for c in classes for v in c}
    cedges = {frozenset((where[a], where[b])) for a in range(n) for b in adj[a] if where[a] != where[b]}
    return classes, cedges


# -- Point Line Cover ------------------------------------------------------

Point = tuple[Fraction, Fraction]
Line = tuple[int, int, int]


def as_point(p) -> Point:
    return Fraction(p[0]), Fraction(p[1])


def _canon(a: Fraction, b: Fraction, c: Fraction) -> Line:
    """Integer (a, b, c), gcd 1, first nonzero of (a, b) positive."""
    den = 1
    for f in (a, b, c):
        den = den * f.denominator // gcd(den, f.denominator)
    ia, ib, ic = int(a * den), int(b * den), int(c * den)
    g = gcd(gcd(ia, ib), ic)
    ia, ib, ic = ia // g, ib // g, ic // g
    if ia < 0 or (ia == 0 and ib < 0):
        ia, ib, ic = -ia, -ib, -ic
    return ia, ib, ic


def line_of(p: Point, q: Point) -> Line:
    """The line a*x + b*y = c through two distinct points."""
    a = q[1] - p[1]
    b = p[0] - q[0]
    return _canon(a, b, a * p[0] + b * p[1])


def lone_line(p: Point) -> Line:
    """Horizontal line through a single point."""
    return _canon(Fraction(0), Fraction(1), p[1])


def on(line: Line, p: Point) -> bool:
    a, b, c = line
    return a * p[0] + b * p[1] == c


class PointLineCover:
    """L_H: lines with >= g+1 points; P': the points on no L_H line."""

    def __init__(self, k: int, g: int | None = None):
        g = k if g is None else g
        if not 0 <= k <= g:
            raise ParameterError("need 0 <= k <= g")
        self.k = k
        self.g = g
        self.LH: dict[Line, set[Point]] = {}
        self.P: set[Point] = set()
        self.where: dict[Point, Line | None] = {}
        self.tests = 0

    @property
    def degraded(self) -> bool:
        return len(self.LH) > self.g or len(self.P) > self.g * self.g

    def __len__(self) -> int:
        return len(self.where)

    def _place(self, p: Point) -> None:
        for ln, pts in self.LH.items():
            self.tests += 1
            if on(ln, p):
                pts.add(p)
                self.where[p] = ln
                return
        self.P.add(p)
        self.where[p] = None
        seen: set[Line] = set()
        for q in self.P:
            if q == p:
                continue
            ln = line_of(p, q)
            if ln in seen:
                continue
            seen.add(ln)
            self.tests += len(self.P)
            pts = {r for r in self.P if on(ln, r)}
            if len(pts) >= self.g + 1:
                self.P -= pts
                self.LH[ln] = pts
                for r in pts:
                    self.where[r] = ln
                return

    def insert_point(self, p) -> None:
        p = as_point(p)
        if p in self.where:
            raise DuplicatePoint(p)
        self._place(p)

    def delete_point(self, p) -> None:
        p = as_point(p)
        if p not in self.where:
            raise NoSuchPoint(p)
        ln = self.where.pop(p)
        if ln is None:
            self.P.discard(p)
            return
        pts = self.LH[ln]
        pts.discard(p)
        if len(pts) <= self.g:
            del self.LH[ln]
            for r in sorted(pts):
                self._place(r)

    def rebuild(self) -> None:
        pts = sorted(self.where)
        self.LH = {}
        self.P = set()
        self.where = {}
        for p in pts:
            self._place(p)

    def query(self):
        """A set of <= k lines covering every point, None, or UNKNOWN."""
        if self.degraded:
            return UNKNOWN
        if len(self.LH) > self.k:
            return None
        rest = cover_points(sorted(self.P), self.k - len(self.LH))
        if rest is None:
            return None
        return set(self.LH) | rest


def cover_points(pts: list[Point], budget: int) -> set[Line] | None:
    """Branch on the first uncovered point: a line through it and another point,
    or a lone line when it is the last point left."""
    if not pts:
        return set()
    if budget == 0:
        return None
    p = pts[0]
    if len(pts) == 1:
        return {lone_line(p)}
    tried: set[Line] = set()
    for q in pts[1:]:
        ln = line_of(p, q)
        if ln in tried:
            continue
        tried.add(ln)
        got = cover_points([r for r in pts if not on(ln, r)], budget - 1)
        if got is not None:
            return got | {ln}
    return None
