"""Dynamic good-set kernel for d-Hitting Set.

Notation, for a family F of sets of size <= d and parameter k:

* nu(r) = r! (k+1)^r.
* S is *(|S|, r)-good* if S is in F, or S lies in at least nu(r) supersets of
  size |S|+r that are (|S|+r, r)-strong. S is *good* if it is good for some r.
* T is *(|T|, r)-strong* if T is good and has no subset A of size |T|-j that
  is (|A|, j)-good for some j in 1..r-1.

Every good set meets every hitting set of size <= k, so the minimal good
sets F' form a kernel. For each subset S we keep the list L[S, r] of its
(|S|+r, r)-strong supersets of size |S|+r; S is count-good at r iff
``len(L[S, r]) >= nu(r)``.

Updates run the four propagation procedures as handlers on a priority
worklist. A node is either G(S, r) ("is S count-good at r") or T(T, r)
("is T strong at r"); every node depends only on nodes with a strictly
smaller key, so one pass in key order re-evaluates each affected node once:

* DOWNINS / DOWNDEL: S became good / stopped being good; its strong flags
  are re-evaluated, which moves it in or out of the lists of its subsets.
* UPWEAK / UPSTRONG: a subset of T became / stopped being good at level i;
  T's strong flags above i are re-evaluated.

F' is reconciled once the cascade has settled, in order of non-decreasing
size, using the pre-update lists for sets that became good.
"""
from __future__ import annotations

import heapq
from itertools import combinations
from math import factorial
from typing import Hashable, Iterable

from .errors import DuplicateSet, EmptySet, NoSuchSet, ParameterError, SetTooLarge

MAX_D = 4
MAX_K = 8


def nu(r: int, k: int) -> int:
    return factorial(r) * (k + 1) ** r


def size_bound(k: int, d: int) -> float:
    """Upper bound on |F'| whenever a hitting set of size <= k exists."""
    if d == 1:
        return float(k)
    return (1 + 2 / ((k + 1) * (d - 1))) * factorial(d) * (k + 1) ** d


def _canon(s: frozenset) -> tuple:
    return tuple(sorted(s))


class _Rec:
    __slots__ = ("key", "member", "L", "gflag", "sflag", "removed")

    def __init__(self, key: frozenset, d: int):
        self.key = key
        self.member = False
        # L[r]: strong superset -> epoch in which it was listed
        self.L: list[dict[frozenset, int]] = [dict() for _ in range(d + 1)]
        self.gflag = [False] * (d + 1)
        self.sflag = [False] * (d + 1)
        # r -> (superset, listing epoch) dropped from L[r] during the current update
        self.removed: dict[int, list[tuple[frozenset, int]]] = {}

    def isgood(self) -> bool:
        return self.member or any(self.gflag)

    def trivial(self) -> bool:
        return not (self.member or any(self.gflag) or any(self.sflag) or any(self.L))


class GoodSetIndex:
    """Good-set kernel for d-Hitting Set with parameter ``k``."""

    def __init__(self, k: int, d: int):
        if not 1 <= d <= MAX_D:
            raise ParameterError(f"d must be in 1..{MAX_D}")
        if not 0 <= k <= MAX_K:
            raise ParameterError(f"k must be in 0..{MAX_K}")
        self.k = k
        self.d = d
        self.nu = [0] + [nu(r, k) for r in range(1, d + 1)]
        self.recs: dict[frozenset, _Rec] = {}
        self.family: set[frozenset] = set()
        self.kernel: set[frozenset] = set()  # F'
        self.epoch = 0
        self.mutations = 0
        self.max_depth = 0
        self.trace: list[tuple] | None = None  # set to [] to record handler calls
        self._heap: list = []
        self._queued: dict[tuple, int] = {}
        self._changed: dict[frozenset, bool] = {}  # set -> isgood before update
        self._touched: set[frozenset] = set()

    # -- record access ---------------------------------------------------
    def _rec(self, s: frozenset) -> _Rec:
        r = self.recs.get(s)
        if r is None:
            r = _Rec(s, self.d)
            self.recs[s] = r
        self._touched.add(s)
        return r

    def _good_at(self, s: frozenset, r: int) -> bool:
        rec = self.recs.get(s)
        return rec is not None and (rec.member or rec.gflag[r])

    def _isgood(self, s: frozenset) -> bool:
        rec = self.recs.get(s)
        return rec is not None and rec.isgood()

    def _max_strong(self, size: int) -> int:
        return max(1, size - 1)

    # -- worklist --------------------------------------------------------
    def _push(self, kind: int, s: frozenset, r: int, depth: int) -> None:
        # kind 1 = G(S, r), kind 0 = T(T, r)
        m = len(s) + r if kind == 1 else len(s)
        node = (-m, r, kind, _canon(s))
        old = self._queued.get(node)
        if old is None:
            self._queued[node] = depth
            heapq.heappush(self._heap, node)
        elif depth > old:
            self._queued[node] = depth

    def _note_change(self, rec: _Rec, was_good: bool) -> None:
        if rec.key not in self._changed:
            self._changed[rec.key] = was_good

    def _run(self) -> None:
        heap = self._heap
        while heap:
            node = heapq.heappop(heap)
            depth = self._queued.pop(node)
            _, r, kind, canon = node
            s = frozenset(canon)
            if kind == 1:
                self._eval_good(s, r, depth)
            else:
                self._eval_strong(s, r, depth)

    def _eval_good(self, s: frozenset, r: int, depth: int) -> None:
        rec = self.recs.get(s)
        cnt = len(rec.L[r]) if rec is not None else 0
        new = cnt >= self.nu[r]
        if rec is None or rec.gflag[r] == new:
            return
        was_at = rec.member or rec.gflag[r]
        was_good = rec.isgood()
        rec.gflag[r] = new
        self.mutations += 1
        self._touched.add(s)
        depth += 1
        self.max_depth = max(self.max_depth, depth)
        if (rec.member or new) != was_at:
            for t in list(rec.L[r]):
                if new:
                    self._upweak(t, r, depth)
                else:
                    self._upstrong(t, r, depth)
        if rec.isgood() != was_good:
            self._note_change(rec, was_good)
            if was_good:
                self._downdel(s, depth)
            else:
                self._downins(s, depth)

    def _eval_strong(self, t: frozenset, r: int, depth: int) -> None:
        rec = self.recs.get(t)
        new = self._isgood(t)
        if new:
            size = len(t)
            for j in range(1, r):
                if any(self._good_at(frozenset(a), j) for a in combinations(t, size - j)):
                    new = False
                    break
        old = rec.sflag[r] if rec is not None else False
        if new == old:
            return
        rec = self._rec(t)
        rec.sflag[r] = new
        self.mutations += 1
        if r >= len(t):
            return
        for a in combinations(t, len(t) - r):
            fa = frozenset(a)
            arec = self._rec(fa)
            if new:
                arec.L[r][t] = self.epoch
            else:
                ep = arec.L[r].pop(t)
                arec.removed.setdefault(r, []).append((t, ep))
            self.mutations += 1
            self._push(1, fa, r, depth)

    # the four procedures ----------------------------------------------
    def _downins(self, s: frozenset, depth: int) -> None:
        """S became good: its strong flags (hence its subsets' lists) may change."""
        if self.trace is not None:
            self.trace.append(("DOWNINS", len(s), _canon(s)))
        for r in range(1, self._max_strong(len(s)) + 1):
            self._push(0, s, r, depth)

    def _downdel(self, s: frozenset, depth: int) -> None:
        """S stopped being good."""
        if self.trace is not None:
            self.trace.append(("DOWNDEL", len(s), _canon(s)))
        for r in range(1, self._max_strong(len(s)) + 1):
            self._push(0, s, r, depth)

    def _upweak(self, t: frozenset, i: int, depth: int) -> None:
        """A size-(|T|-i) subset of T became (., i)-good: T loses strongness above i."""
        if self.trace is not None:
            self.trace.append(("UPWEAK", len(t), i, _canon(t)))
        for r in range(i + 1, self._max_strong(len(t)) + 1):
            self._push(0, t, r, depth)

    def _upstrong(self, t: frozenset, i: int, depth: int) -> None:
        """A size-(|T|-i) subset of T stopped being (., i)-good."""
        if self.trace is not None:
            self.trace.append(("UPSTRONG", len(t), i, _canon(t)))
        for r in range(i + 1, self._max_strong(len(t)) + 1):
            self._push(0, t, r, depth)

    # -- updates -----------------------------------------------------------
    def _normalize(self, q: Iterable[Hashable]) -> frozenset:
        f = frozenset(q)
        if not f:
            raise EmptySet()
        if len(f) > self.d:
            raise SetTooLarge(len(f))
        return f

    def insert(self, q: Iterable[Hashable]) -> None:
        f = self._normalize(q)
        if f in self.family:
            raise DuplicateSet(_canon(f))
        self.family.add(f)
        self._set_member(f, True)

    def delete(self, q: Iterable[Hashable]) -> None:
        f = frozenset(q)
        if f not in self.family:
            raise NoSuchSet(_canon(f))
        self.family.discard(f)
        self._set_member(f, False)

    def _set_member(self, f: frozenset, val: bool) -> None:
        self.epoch += 1
        rec = self._rec(f)
        was_good = rec.isgood()
        was_at = [rec.member or g for g in rec.gflag]
        rec.member = val
        self.mutations += 1
        for r in range(1, self.d - len(f) + 1):
            if (val or rec.gflag[r]) != was_at[r]:
                for t in list(rec.L[r]):
                    if val:
                        self._upweak(t, r, 1)
                    else:
                        self._upstrong(t, r, 1)
        if rec.isgood() != was_good:
            self._note_change(rec, was_good)
            if val:
                self._downins(f, 1)
            else:
                self._downdel(f, 1)
        self.max_depth = max(self.max_depth, 1)
        self._run()
        self._reconcile()
        self._finish()

    # -- F' maintenance ----------------------------------------------------
    def _old_list(self, rec: _Rec, r: int) -> list[frozenset]:
        """L[S, r] as it was before the current update."""
        out = [t for t, ep in rec.L[r].items() if ep < self.epoch]
        out.extend(t for t, ep in rec.removed.get(r, ()) if ep < self.epoch)
        return out

    def _has_good_subset(self, s: frozenset) -> bool:
        for size in range(1, len(s)):
            for a in combinations(s, size):
                if self._isgood(frozenset(a)):
                    return True
        return False

    def _kernel_add(self, s: frozenset) -> None:
        if s not in self.kernel:
            self.kernel.add(s)
            self.mutations += 1

    def _kernel_remove(self, s: frozenset) -> None:
        if s in self.kernel:
            self.kernel.discard(s)
            self.mutations += 1

    def _reconcile(self) -> None:
        order = sorted(self._changed, key=lambda s: (len(s), _canon(s)))
        for s in order:
            was_good = self._changed[s]
            rec = self.recs[s]
            if rec.isgood():
                if self._has_good_subset(s):
                    self._kernel_remove(s)
                    continue
                self._kernel_add(s)
                if not was_good:
                    for r in range(1, self.d - len(s) + 1):
                        for t in self._old_list(rec, r):
                            self._kernel_remove(t)
            else:
                self._kernel_remove(s)
                if not was_good or self._has_good_subset(s):
                    continue
                for r in range(1, self.d - len(s) + 1):
                    for t in rec.L[r]:
                        if not self._has_good_subset(t):
                            self._kernel_add(t)

    def _finish(self) -> None:
        for s in self._touched:
            rec = self.recs.get(s)
            if rec is None:
                continue
            rec.removed.clear()
            if rec.trivial():
                del self.recs[s]
        self._touched.clear()
        self._changed.clear()

    # -- static construction --------------------------------------------
    @classmethod
    def static_build(cls, family: Iterable[Iterable[Hashable]], k: int, d: int) -> GoodSetIndex:
        """Build the index in d sweeps, from the largest subsets down."""
        idx = cls(k, d)
        fam = set()
        for q in family:
            f = idx._normalize(q)
            if f in fam:
                raise DuplicateSet(_canon(f))
            fam.add(f)
        idx.family = fam
        by_size: dict[int, set[frozenset]] = {}
        for f in fam:
            for size in range(1, len(f) + 1):
                for a in combinations(f, size):
                    by_size.setdefault(size, set()).add(frozenset(a))
        for f in fam:
            idx._rec(f).member = True
        good_by_size: dict[int, list[frozenset]] = {}
        for size in range(d, 0, -1):
            for r in range(1, d - size + 1):
                # strong flags at r for good sets of size size+r, then counters
                for t in sorted(good_by_size.get(size + r, ()), key=_canon):
                    strong = True
                    for j in range(1, r):
                        if any(idx._good_at(frozenset(a), j) for a in combinations(t, size + r - j)):
                            strong = False
                            break
                    if strong:
                        trec = idx._rec(t)
                        trec.sflag[r] = True
                        for a in combinations(t, size):
                            idx._rec(frozenset(a)).L[r][t] = 0
                for s in by_size.get(size, ()):
                    rec = idx.recs.get(s)
                    if rec is not None and len(rec.L[r]) >= idx.nu[r]:
                        rec.gflag[r] = True
            good_by_size[size] = [s for s in by_size.get(size, ()) if idx._isgood(s)]
        # singletons carry a strong flag at r = 1 that no list consumes
        for t in good_by_size.get(1, ()):
            idx._rec(t).sflag[1] = True
        goods = [s for size in good_by_size for s in good_by_size[size]]
        idx.kernel = {s for s in goods if not idx._has_good_subset(s)}
        idx._touched.clear()
        for s in [s for s, rec in idx.recs.items() if rec.trivial()]:
            del idx.recs[s]
        return idx

    # -- queries -----------------------------------------------------------
    def universe(self) -> set:
        return {x for s in self.kernel for x in s}

    def query(self) -> frozenset | None:
        if len(self.kernel) > size_bound(self.k, self.d):
            return None
        return solve_hs(self.kernel, self.k)

    def flags(self, s: Iterable[Hashable]) -> dict:
        """Flag row for ``s`` in the layout used by the definitional evaluators."""
        s = frozenset(s)
        size = len(s)
        rec = self.recs.get(s)
        good = {r: self._good_at(s, r) for r in range(1, self.d - size + 1)}
        strong = {r: bool(rec and rec.sflag[r]) for r in range(1, self._max_strong(size) + 1)}
        return {"good": good, "strong": strong, "isgood": self._isgood(s)}

    def snapshot(self) -> tuple:
        """Canonical serialization of the whole index."""
        rows = []
        for s in sorted(self.recs, key=lambda x: (len(x), _canon(x))):
            rec = self.recs[s]
            rows.append((
                _canon(s), rec.member, tuple(rec.gflag), tuple(rec.sflag),
                tuple(tuple(sorted(_canon(t) for t in lst)) for lst in rec.L),
            ))
        return (tuple(rows), tuple(sorted(_canon(s) for s in self.kernel)))

    def check(self) -> None:
        for s, rec in self.recs.items():
            for r in range(1, self.d + 1):
                assert rec.gflag[r] == (len(rec.L[r]) >= self.nu[r])
                for t in rec.L[r]:
                    assert self.recs[t].sflag[r] and len(t) == len(s) + r and s < t
            assert not rec.removed
        goods = [s for s, rec in self.recs.items() if rec.isgood()]
        want = {s for s in goods if not self._has_good_subset(s)}
        assert want == self.kernel


def solve_hs(family: Iterable[frozenset], k: int) -> frozenset | None:
    """Hitting set of size <= k by branching on the smallest unhit set."""
    sets = sorted(family, key=lambda s: (len(s), _canon(s)))

    def rec(unhit: list[frozenset], b: int, chosen: frozenset) -> frozenset | None:
        if not unhit:
            return chosen
        if b == 0:
            return None
        pivot = min(unhit, key=len)
        for x in sorted(pivot, key=repr):
            res = rec([s for s in unhit if x not in s], b - 1, chosen | {x})
            if res is not None:
                return res
        return None

    return rec(sets, k, frozenset())
