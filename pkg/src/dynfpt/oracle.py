"""Exhaustive reference solvers on static snapshots.

Nothing here touches the dynamic structures; every answer comes from direct
enumeration over subsets, paths or spanning trees.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

from .errors import InstanceTooLarge

MAX_N = 20
MAX_SETS = 1 << 12
MAX_POINTS = 12


@dataclass(frozen=True)
class OracleInstance:
    problem: str
    n: int = 0
    edges: tuple = ()
    family: tuple = ()
    points: tuple = ()
    k: int = 0
    d: int = 0
    delta: int = 0
    extra: dict = field(default_factory=dict, compare=False, hash=False)


def _cap_graph(n: int) -> None:
    if n > MAX_N:
        raise InstanceTooLarge(f"n={n} > {MAX_N}")


class _DSU:
    def __init__(self, items):
        self.p = {x: x for x in items}

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        self.p[a] = b
        return True


def _covers(edges, xs) -> bool:
    return all(u in xs or v in xs for u, v in edges)


def _vertices_of(edges) -> list[int]:
    return sorted({x for e in edges for x in e})


def oracle_vc(n: int, edges, k: int):
    """A vertex cover of size <= k, or None."""
    _cap_graph(n)
    edges = [tuple(e) for e in edges]
    verts = _vertices_of(edges)
    for size in range(0, k + 1):
        for xs in combinations(verts, size):
            s = set(xs)
            if _covers(edges, s):
                return s
    return None


def _induced_connected(xs, edges) -> bool:
    xs = set(xs)
    if len(xs) <= 1:
        return True
    dsu = _DSU(xs)
    comps = len(xs)
    for u, v in edges:
        if u in xs and v in xs and dsu.union(u, v):
            comps -= 1
    return comps == 1


def oracle_cvc(n: int, edges, k: int):
    """A connected vertex cover of size <= k, or None."""
    _cap_graph(n)
    edges = [tuple(e) for e in edges]
    if not edges:
        return set()
    verts = _vertices_of(edges)
    for size in range(1, k + 1):
        for xs in combinations(verts, size):
            s = set(xs)
            if _covers(edges, s) and _induced_connected(s, edges):
                return s
    return None


def oracle_eds(n: int, edges, k: int):
    """An edge dominating set with <= k edges, or None."""
    _cap_graph(n)
    edges = sorted({(min(e), max(e)) for e in edges})
    for size in range(0, k + 1):
        for es in combinations(edges, size):
            ends = {x for e in es for x in e}
            if _covers(edges, ends):
                return set(es)
    return None


def oracle_hs(family, k: int):
    """A hitting set of size <= k, or None."""
    family = [frozenset(s) for s in family]
    if len(family) > MAX_SETS:
        raise InstanceTooLarge(f"|F|={len(family)}")
    if any(not s for s in family):
        return None
    universe = sorted(set().union(*family)) if family else []
    if len(universe) > MAX_N + 12:
        raise InstanceTooLarge(f"|U|={len(universe)}")
    for size in range(0, k + 1):
        for xs in combinations(universe, size):
            s = set(xs)
            if all(s & f for f in family):
                return s
    return None


def is_forest(vertices, edges) -> bool:
    dsu = _DSU(vertices)
    for u, v in edges:
        if not dsu.union(u, v):
            return False
    return True


def oracle_fvs(n: int, edges, k: int):
    """A feedback vertex set of size <= k, or None. Multi-edges and loops allowed."""
    _cap_graph(n)
    edges = [tuple(e) for e in edges]
    for size in range(0, k + 1):
        for xs in combinations(range(n), size):
            s = set(xs)
            rest = [e for e in edges if e[0] not in s and e[1] not in s]
            if is_forest(range(n), rest):
                return s
    return None


def _connected(n: int, edges) -> bool:
    if n <= 1:
        return True
    dsu = _DSU(range(n))
    comps = n
    for u, v in edges:
        if dsu.union(u, v):
            comps -= 1
    return comps == 1


def oracle_mlst(n: int, edges, k: int):
    """'NotConnected', 'NoTree', or a spanning tree (edge list) with >= k leaves.

    Spanning trees are enumerated by include/exclude recursion over edges,
    pruned when too few vertices can still end up as leaves.
    """
    _cap_graph(n)
    edges = sorted({(min(e), max(e)) for e in edges if e[0] != e[1]})
    if not _connected(n, edges):
        return "NotConnected"
    if n == 1:
        return [] if k <= 0 else "NoTree"
    if k > n:
        return "NoTree"
    deg = [0] * n
    chosen: list[tuple[int, int]] = []
    m = len(edges)

    def still_spanning(i: int) -> bool:
        return _connected(n, chosen + edges[i:])

    def rec(i: int, parts: _DSUList):
        if len(chosen) == n - 1:
            leaves = sum(1 for x in deg if x == 1)
            return list(chosen) if leaves >= k else None
        if i == m:
            return None
        if n - sum(1 for x in deg if x >= 2) < k:
            return None
        u, v = edges[i]
        if parts.find(u) != parts.find(v):
            snap = parts.copy()
            parts.union(u, v)
            chosen.append((u, v))
            deg[u] += 1
            deg[v] += 1
            got = rec(i + 1, parts)
            deg[u] -= 1
            deg[v] -= 1
            chosen.pop()
            parts.restore(snap)
            if got is not None:
                return got
        if still_spanning(i + 1):
            return rec(i + 1, parts)
        return None

    got = rec(0, _DSUList(n))
    return got if got is not None else "NoTree"


class _DSUList:
    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, x: int) -> int:
        while self.p[x] != x:
            x = self.p[x]
        return x

    def union(self, a: int, b: int) -> None:
        self.p[self.find(a)] = self.find(b)

    def copy(self) -> list[int]:
        return list(self.p)

    def restore(self, snap: list[int]) -> None:
        self.p = snap


def oracle_kpath(n: int, edges, k: int) -> bool:
    """Whether a simple path on k vertices exists."""
    _cap_graph(n)
    if k <= 0:
        return True
    if k > n:
        return False
    adj = [set() for _ in range(n)]
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    seen = [False] * n

    def dfs(x: int, length: int) -> bool:
        if length == k:
            return True
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                if dfs(y, length + 1):
                    return True
                seen[y] = False
        return False

    for s in range(n):
        seen[s] = True
        if dfs(s, 1):
            return True
        seen[s] = False
    return False


def oracle_densesub(n: int, edges, k: int):
    """(max induced edge count, witness) over all k-vertex subsets; None if k > n."""
    _cap_graph(n)
    if k > n:
        return None
    es = {(min(e), max(e)) for e in edges if e[0] != e[1]}
    best = (-1, None)
    for xs in combinations(range(n), k):
        s = set(xs)
        c = sum(1 for u, v in es if u in s and v in s)
        if c > best[0]:
            best = (c, s)
    return best


def _maximal_cliques(n: int, adj) -> list[frozenset]:
    out = []

    def bk(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        for v in list(p):
            bk(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    bk(set(), set(range(n)), set())
    return out


def oracle_ecc(n: int, edges, k: int):
    """An edge clique cover with <= k cliques (list of vertex sets), or None."""
    _cap_graph(n)
    es = sorted({(min(e), max(e)) for e in edges if e[0] != e[1]})
    if not es:
        return []
    adj = [set() for _ in range(n)]
    for u, v in es:
        adj[u].add(v)
        adj[v].add(u)
    cliques = [c for c in _maximal_cliques(n, adj) if len(c) >= 2]

    def rec(uncovered: list, budget: int, picked: list):
        if not uncovered:
            return list(picked)
        if budget == 0:
            return None
        u, v = uncovered[0]
        for c in cliques:
            if u in c and v in c:
                rest = [e for e in uncovered if not (e[0] in c and e[1] in c)]
                picked.append(set(c))
                got = rec(rest, budget - 1, picked)
                picked.pop()
                if got is not None:
                    return got
        return None

    return rec(es, k, [])


def line_through(p, q) -> tuple:
    """Canonical (a, b, c) with a*x + b*y = c through two distinct points."""
    (x1, y1), (x2, y2) = p, q
    a = Fraction(y2) - Fraction(y1)
    b = Fraction(x1) - Fraction(x2)
    c = a * Fraction(x1) + b * Fraction(y1)
    return _normalize(a, b, c)


def _normalize(a: Fraction, b: Fraction, c: Fraction) -> tuple:
    from math import gcd

    den = 1
    for f in (a, b, c):
        den = den * f.denominator // gcd(den, f.denominator)
    ia, ib, ic = int(a * den), int(b * den), int(c * den)
    g = gcd(gcd(abs(ia), abs(ib)), abs(ic)) or 1
    ia, ib, ic = ia // g, ib // g, ic // g
    if ia < 0 or (ia == 0 and ib < 0):
        ia, ib, ic = -ia, -ib, -ic
    return ia, ib, ic


def on_line(line: tuple, p) -> bool:
    a, b, c = line
    return a * Fraction(p[0]) + b * Fraction(p[1]) == c


def oracle_plc(points, k: int):
    """A set of <= k lines covering all points, or None."""
    pts = list(dict.fromkeys((Fraction(x), Fraction(y)) for x, y in points))
    if len(pts) > MAX_POINTS:
        raise InstanceTooLarge(f"{len(pts)} points")

    def rec(unc: list, budget: int, picked: list):
        if not unc:
            return list(picked)
        if budget == 0:
            return None
        p = unc[0]
        options = []
        for q in unc[1:]:
            ln = line_through(p, q)
            if ln not in options:
                options.append(ln)
        # a line through p alone: horizontal through p unless it hits others
        options.append(_normalize(Fraction(0), Fraction(1), p[1]))
        for ln in options:
            rest = [q for q in unc if not on_line(ln, q)]
            picked.append(ln)
            got = rec(rest, budget - 1, picked)
            picked.pop()
            if got is not None:
                return got
        return None

    return rec(pts, k, [])


# -- good-set evaluators ------------------------------------------------

def nu(r: int, k: int) -> int:
    return factorial(r) * (k + 1) ** r


def _subsets_of_family(family) -> set:
    out = set()
    for s in family:
        items = sorted(s)
        for size in range(1, len(items) + 1):
            for c in combinations(items, size):
                out.add(frozenset(c))
    return out


def oracle_goodsets(family, k: int, d: int) -> dict:
    """Flag table by literal induction: size from d down to 1, then r upward.

    Returns ``{S: {"good": {r: bool}, "strong": {r: bool}, "isgood": bool}}``
    for every nonempty subset of a member of ``family``. Members of the family
    count as good at every level r, whatever their size.
    """
    family = {frozenset(s) for s in family}
    if len(family) > (1 << 10) or d > 3:
        raise InstanceTooLarge("goodsets oracle caps |F| <= 2^10 and d <= 3")
    subs = _subsets_of_family(family)
    by_size: dict[int, list] = {}
    for s in subs:
        by_size.setdefault(len(s), []).append(s)
    good: dict = {}
    strong: dict = {}
    isgood: dict = {}

    def good_at(a, j) -> bool:
        return a in family or good.get((a, j), False)

    for size in range(d, 0, -1):
        level = by_size.get(size, [])
        for r in range(1, d - size + 1):
            for s in level:
                sups = [t for t in by_size.get(size + r, []) if s < t]
                cnt = 0
                for t in sups:
                    if not isgood[t]:
                        continue
                    ok = True
                    for j in range(1, r):
                        for a in combinations(sorted(t), size + r - j):
                            if good_at(frozenset(a), j):
                                ok = False
                                break
                        if not ok:
                            break
                    if ok:
                        cnt += 1
                good[(s, r)] = cnt >= nu(r, k)
        for s in level:
            isgood[s] = s in family or any(good.get((s, r), False) for r in range(1, d - size + 1))
    table = {}
    for s in subs:
        size = len(s)
        g = {r: good_at(s, r) for r in range(1, d - size + 1)}
        st = {}
        for r in range(1, max(1, size - 1) + 1):
            ok = isgood[s]
            for j in range(1, r):
                if not ok:
                    break
                for a in combinations(sorted(s), size - j):
                    if a and good_at(frozenset(a), j):
                        ok = False
                        break
            st[r] = ok
        table[s] = {"good": g, "strong": st, "isgood": isgood[s]}
    return table


def oracle_goodsets_alt(family, k: int, d: int) -> dict:
    """Second evaluator: memoised top-down recursion on the definition."""
    family = {frozenset(s) for s in family}
    if len(family) > (1 << 10) or d > 3:
        raise InstanceTooLarge("goodsets oracle caps |F| <= 2^10 and d <= 3")
    subs = _subsets_of_family(family)
    supers: dict = {}
    for t in subs:
        for a in subs:
            if a < t:
                supers.setdefault((a, len(t) - len(a)), []).append(t)
    memo_g: dict = {}
    memo_s: dict = {}

    def is_lr_good(s, r) -> bool:
        if s in family:
            return True
        if len(s) + r > d:
            return False
        key = (s, r)
        if key not in memo_g:
            cnt = sum(1 for t in supers.get((s, r), ()) if is_strong(t, r))
            memo_g[key] = cnt >= nu(r, k)
        return memo_g[key]

    def is_good(s) -> bool:
        return s in family or any(is_lr_good(s, r) for r in range(1, d - len(s) + 1))

    def is_strong(t, r) -> bool:
        key = (t, r)
        if key not in memo_s:
            res = is_good(t)
            if res:
                for a in subs:
                    j = len(t) - len(a)
                    if a < t and 1 <= j <= r - 1 and is_lr_good(a, j):
                        res = False
                        break
            memo_s[key] = res
        return memo_s[key]

    table = {}
    for s in subs:
        size = len(s)
        table[s] = {
            "good": {r: is_lr_good(s, r) for r in range(1, d - size + 1)},
            "strong": {r: is_strong(s, r) for r in range(1, max(1, size - 1) + 1)},
            "isgood": is_good(s),
        }
    return table


def minimal_good(table: dict) -> set:
    good = {s for s, row in table.items() if row["isgood"]}
    return {s for s in good if not any(a < s for a in good)}


def solve(inst: OracleInstance):
    """Dispatch on ``inst.problem``."""
    p = inst.problem
    if p == "vc":
        return oracle_vc(inst.n, inst.edges, inst.k)
    if p == "cvc":
        return oracle_cvc(inst.n, inst.edges, inst.k)
    if p == "eds":
        return oracle_eds(inst.n, inst.edges, inst.k)
    if p == "hs":
        return oracle_hs(inst.family, inst.k)
    if p == "fvs":
        return oracle_fvs(inst.n, inst.edges, inst.k)
    if p == "mlst":
        return oracle_mlst(inst.n, inst.edges, inst.k)
    if p == "kpath":
        return oracle_kpath(inst.n, inst.edges, inst.k)
    if p == "densesub":
        return oracle_densesub(inst.n, inst.edges, inst.k)
    if p == "ecc":
        return oracle_ecc(inst.n, inst.edges, inst.k)
    if p == "plc":
        return oracle_plc(inst.points, inst.k)
    raise ValueError(f"unknown problem {p!r}")
