"""Dynamic rooted forest (link/cut trees over splay-tree path decompositions).

The compiled core is used when it was built; set ``DYNFPT_PURE=1`` to force
the pure-Python core.
"""
from __future__ import annotations

import os

from ._lct_py import LCTCore as PyCore
from .errors import NoSuchTreeEdge, NotConnected, SameNode, UnknownHandle, WouldCreateCycle

try:
    from ._lct_c import LCTCore as CCore
except ImportError:  # extension not built
    CCore = None

BACKEND = "c" if CCore is not None and not os.environ.get("DYNFPT_PURE") else "py"


def make_core(backend: str | None = None):
    backend = backend or BACKEND
    if backend == "c":
        if CCore is None:
            raise RuntimeError("compiled link/cut core is not available")
        return CCore()
    return PyCore()


class LinkCutForest:
    """Forest supporting maketree, link, cut, evert, after and nca.

    Node handles are consecutive integers. The root of a tree is unspecified
    after any operation other than :meth:`evert`.
    """

    def __init__(self, backend: str | None = None):
        self._core = make_core(backend)
        self.backend = backend or BACKEND

    def __len__(self) -> int:
        return self._core.size()

    @property
    def rotations(self) -> int:
        return self._core.rotations

    def _check(self, a: int) -> None:
        if not 0 <= a < self._core.size():
            raise UnknownHandle(a)

    def maketree(self) -> int:
        return self._core.make()

    def connected(self, a: int, b: int) -> bool:
        self._check(a)
        self._check(b)
        return self._core.connected(a, b)

    def link(self, a: int, b: int) -> None:
        self._check(a)
        self._check(b)
        if self._core.connected(a, b):
            raise WouldCreateCycle((a, b))
        self._core.link(a, b)

    def cut(self, a: int, b: int) -> None:
        self._check(a)
        self._check(b)
        if a == b or not self._core.cut(a, b):
            raise NoSuchTreeEdge((a, b))

    def has_edge(self, a: int, b: int) -> bool:
        """Whether ``a`` and ``b`` are adjacent in the forest."""
        self._check(a)
        self._check(b)
        if a == b or not self._core.connected(a, b):
            return False
        return self._core.after(a, b) == b

    def evert(self, a: int) -> None:
        self._check(a)
        self._core.evert(a)

    def after(self, a: int, b: int) -> int:
        """First node after ``a`` on the tree path from ``a`` to ``b``."""
        self._check(a)
        self._check(b)
        if a == b:
            raise SameNode(a)
        if not self._core.connected(a, b):
            raise NotConnected((a, b))
        return self._core.after(a, b)

    def nca(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if not self._core.connected(a, b):
            raise NotConnected((a, b))
        return self._core.nca(a, b)

    def findroot(self, a: int) -> int:
        self._check(a)
        return self._core.findroot(a)

    def parent(self, a: int) -> int | None:
        self._check(a)
        p = self._core.parent(a)
        return None if p < 0 else p
