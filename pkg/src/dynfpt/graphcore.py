"""Dynamic undirected multigraph with edge handles and an update-event model."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from .errors import DuplicateEdge, LoopForbidden, UnknownHandle, VertexOutOfRange


class EventKind(Enum):
    EdgeInsert = "EdgeInsert"
    EdgeDelete = "EdgeDelete"
    SetInsert = "SetInsert"
    SetDelete = "SetDelete"
    PointInsert = "PointInsert"
    PointDelete = "PointDelete"
    LineInsert = "LineInsert"
    LineDelete = "LineDelete"
    TerminalActivate = "TerminalActivate"
    TerminalDeactivate = "TerminalDeactivate"


@dataclass(frozen=True)
class UpdateEvent:
    kind: EventKind
    payload: tuple = ()


@dataclass
class EventLog:
    """Append-only record of applied updates."""

    events: list = field(default_factory=list)

    def append(self, ev: UpdateEvent) -> None:
        self.events.append(ev)

    def __iter__(self) -> Iterator[UpdateEvent]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)


class DynGraph:
    """Undirected multigraph over the fixed vertex set ``range(n)``.

    Every inserted edge copy gets a fresh integer handle; deletions name
    handles so parallel copies stay unambiguous. A self-loop adds 2 to the
    degree of its vertex.
    """

    def __init__(self, n: int, allows_multi: bool = False, allows_loops: bool = False):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.n = n
        self.allows_multi = allows_multi
        self.allows_loops = allows_loops
        self.adj: list[dict[int, int]] = [dict() for _ in range(n)]
        self.degree = [0] * n
        self.m = 0
        self._ends: dict[int, tuple[int, int]] = {}
        self._pair: dict[tuple[int, int], list[int]] = {}
        self._next = 0

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(v)

    def insert_edge(self, u: int, v: int) -> int:
        self._check(u)
        self._check(v)
        if u == v and not self.allows_loops:
            raise LoopForbidden((u, v))
        key = (u, v) if u <= v else (v, u)
        copies = self._pair.get(key)
        if copies and not self.allows_multi:
            raise DuplicateEdge(key)
        h = self._next
        self._next += 1
        self._ends[h] = key
        if copies is None:
            self._pair[key] = [h]
        else:
            copies.append(h)
        self.adj[u][h] = v
        self.adj[v][h] = u
        self.degree[u] += 1
        self.degree[v] += 1
        self.m += 1
        return h

    def delete_edge(self, h: int) -> tuple[int, int]:
        key = self._ends.pop(h, None)
        if key is None:
            raise UnknownHandle(h)
        u, v = key
        copies = self._pair[key]
        copies.remove(h)
        if not copies:
            del self._pair[key]
        del self.adj[u][h]
        self.adj[v].pop(h, None)
        self.degree[u] -= 1
        self.degree[v] -= 1
        self.m -= 1
        return key

    def endpoints(self, h: int) -> tuple[int, int]:
        try:
            return self._ends[h]
        except KeyError:
            raise UnknownHandle(h) from None

    def has_handle(self, h: int) -> bool:
        return h in self._ends

    def handles_between(self, u: int, v: int) -> list[int]:
        key = (u, v) if u <= v else (v, u)
        return list(self._pair.get(key, ()))

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u <= v else (v, u)
        return key in self._pair

    def latest_handle(self, u: int, v: int) -> int | None:
        key = (u, v) if u <= v else (v, u)
        copies = self._pair.get(key)
        return copies[-1] if copies else None

    def neighbors(self, v: int) -> list[int]:
        """Neighbors with multiplicity; a loop lists ``v`` once."""
        return list(self.adj[v].values())

    def incident(self, v: int) -> list[tuple[int, int]]:
        return list(self.adj[v].items())

    def edges(self) -> list[tuple[int, int]]:
        return [self._ends[h] for h in sorted(self._ends)]

    def handles(self) -> list[int]:
        return sorted(self._ends)

    def recount_degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self._ends.values():
            deg[u] += 1
            deg[v] += 1
        return deg

    def check(self) -> None:
        assert self.degree == self.recount_degrees()
        assert 2 * self.m == sum(self.degree)
        assert self.m == len(self._ends) >= 0


def new_graph(n: int, allows_multi: bool = False, allows_loops: bool = False) -> DynGraph:
    return DynGraph(n, allows_multi, allows_loops)
