"""Randomized dynamic branching tree for d-Hitting Set (Vertex Cover is d = 2).

Each internal node at depth i < k holds a witness drawn uniformly from its
sub-instance (the sets not hit by the elements chosen on the path from the
root) and has one child per witness element. A leaf is a yes-leaf iff its
sub-instance is empty. Answers never depend on the random choices; only the
amount of rebuilding does, and the expected bounds assume the update
sequence is fixed independently of the seed.
"""
from __future__ import annotations

import random
from typing import Hashable, Iterable

from .errors import DuplicateSet, EmptySet, NoSuchSet, ParameterError, SetTooLarge

MAX_ARITY = 6


class _Bag:
    """Set of frozensets with O(1) uniform sampling."""

    __slots__ = ("items", "pos")

    def __init__(self, items: Iterable[frozenset] = ()):
        self.items: list[frozenset] = []
        self.pos: dict[frozenset, int] = {}
        for s in items:
            self.add(s)

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, s: frozenset) -> bool:
        return s in self.pos

    def add(self, s: frozenset) -> None:
        self.pos[s] = len(self.items)
        self.items.append(s)

    def remove(self, s: frozenset) -> None:
        i = self.pos.pop(s)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def sample(self, rng: random.Random) -> frozenset:
        return self.items[rng.randrange(len(self.items))]


class BranchNode:
    __slots__ = ("depth", "sub", "witness", "children", "yes", "parent", "label")

    def __init__(self, depth: int, sub: _Bag, parent: BranchNode | None = None,
                 label: Hashable = None):
        self.depth = depth
        self.sub = sub
        self.parent = parent
        self.label = label  # element chosen on the edge from the parent
        self.witness: frozenset | None = None
        self.children: dict[Hashable, BranchNode] = {}
        self.yes = 0  # number of yes-leaves below

    @property
    def x(self) -> int:
        return len(self.sub)

    def is_leaf(self) -> bool:
        return self.witness is None


class BranchTree:
    """Depth-k branching tree over a dynamic family of sets of size <= d."""

    def __init__(self, k: int, d: int = 2, seed: int = 0):
        if k < 0:
            raise ParameterError("k must be nonnegative")
        if not 1 <= d <= MAX_ARITY:
            raise ParameterError(f"arity must be in 1..{MAX_ARITY}")
        self.k = k
        self.d = d
        self.rng = random.Random(seed)
        self.root = BranchNode(0, _Bag())
        self.root.yes = 1
        self.yes_leaf: BranchNode | None = self.root
        self.nodes_built = 0
        self.rebuilds = 0
        self.bookkeeping = 0

    def __len__(self) -> int:
        return len(self.root.sub)

    def __contains__(self, s: Iterable) -> bool:
        return frozenset(s) in self.root.sub

    # -- construction --------------------------------------------------
    def _build(self, t: BranchNode, witness: frozenset | None = None) -> None:
        """(Re)build the subtree below ``t``; the witness is drawn unless given."""
        self.nodes_built += 1
        t.children = {}
        if not t.sub or t.depth == self.k:
            t.witness = None
            t.yes = 0 if t.sub else 1
            return
        w = witness if witness is not None else t.sub.sample(self.rng)
        t.witness = w
        yes = 0
        for e in sorted(w, key=repr):
            c = BranchNode(t.depth + 1, _Bag(s for s in t.sub.items if e not in s), t, e)
            self._build(c)
            t.children[e] = c
            yes += c.yes
        t.yes = yes

    def _normalize(self, s: Iterable) -> frozenset:
        f = frozenset(s)
        if not f:
            raise EmptySet()
        if len(f) > self.d:
            raise SetTooLarge(len(f))
        return f

    # -- updates -------------------------------------------------------
    def insert(self, s: Iterable) -> None:
        f = self._normalize(s)
        if f in self.root.sub:
            raise DuplicateSet(sorted(f, key=repr))
        self._insert(self.root, f)
        self._repair()

    def _insert(self, t: BranchNode, f: frozenset) -> None:
        x = len(t.sub)
        t.sub.add(f)
        self.bookkeeping += 1
        if t.depth == self.k:
            t.yes = 0
            return
        if t.witness is None or self.rng.randrange(x + 1) == 0:
            self.rebuilds += 1
            self._build(t, f)
            return
        yes = 0
        for e, c in t.children.items():
            if e not in f:
                self._insert(c, f)
            yes += c.yes
        t.yes = yes

    def delete(self, s: Iterable) -> None:
        f = frozenset(s)
        if f not in self.root.sub:
            raise NoSuchSet(sorted(f, key=repr))
        self._delete(self.root, f)
        self._repair()

    def _delete(self, t: BranchNode, f: frozenset) -> None:
        t.sub.remove(f)
        self.bookkeeping += 1
        if t.witness is None:
            t.yes = 0 if t.sub else 1
            return
        if t.witness == f:
            self.rebuilds += 1
            self._build(t)
            return
        yes = 0
        for e, c in t.children.items():
            if e not in f:
                self._delete(c, f)
            yes += c.yes
        t.yes = yes

    def _repair(self) -> None:
        """Re-point ``yes_leaf`` by descending along positive yes-counts."""
        t = self.root
        if t.yes == 0:
            self.yes_leaf = None
            return
        while t.witness is not None:
            for c in t.children.values():
                if c.yes:
                    t = c
                    break
        self.yes_leaf = t

    # -- queries -------------------------------------------------------
    def query(self) -> frozenset | None:
        """Elements on the path from the root to a yes-leaf, or None."""
        t = self.yes_leaf
        if t is None:
            return None
        out = set()
        while t.parent is not None:
            out.add(t.label)
            t = t.parent
        return frozenset(out)

    def leaves(self) -> list[BranchNode]:
        out = []
        stack = [self.root]
        while stack:
            t = stack.pop()
            if t.witness is None:
                out.append(t)
            else:
                stack.extend(t.children.values())
        return out

    def check(self) -> None:
        """Assert structural invariants by a full scan."""
        stack = [(self.root, self.root.sub.items)]
        while stack:
            t, parent_sub = stack.pop()
            assert set(t.sub.items) <= set(parent_sub)
            if t.witness is None:
                assert t.yes == (0 if t.sub else 1)
                assert not t.sub or t.depth == self.k
                continue
            assert t.witness in t.sub
            assert t.depth < self.k
            assert set(t.children) == set(t.witness)
            assert t.yes == sum(c.yes for c in t.children.values())
            for e, c in t.children.items():
                assert set(c.sub.items) == {s for s in t.sub.items if e not in s}
                stack.append((c, t.sub.items))
        assert (self.yes_leaf is None) == (not any(t.yes for t in self.leaves()))

