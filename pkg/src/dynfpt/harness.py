"""Trace replay, workload generation and benchmarking.

Trace format, one event per line, LF line ends, single spaces between fields::

    n <count>              header, required first
    + <u> <v>              edge insert
    - <u> <v>              edge delete (multigraphs: the latest parallel copy)
    S+ <e1> <e2> ...       set insert
    S- <e1> <e2> ...       set delete
    P+ <px>/<qx> <py>/<qy> point insert
    P- <px>/<qx> <py>/<qy> point delete
    ? <k>                  query
    # ...                  comment

Query output is ``YES <size>`` followed by one witness line (``V``, ``E``,
``C`` or ``L``), or ``NO``, or ``UNKNOWN`` when a promise structure is
degraded.

Exit codes: 0 success, 2 parse or input error, 3 oracle mismatch, 4 promise
violation.
"""
from __future__ import annotations

import argparse
import hashlib
import os
import random
import re
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable

from . import oracle
from .branchtree import BranchTree
from .colorcoded import EXHAUSTIVE_MAX_N, DenseSubgraph, KPath
from .errors import (DegreeBoundViolated, DuplicateEdge, DuplicatePoint, DuplicateSet, DynFptError,
                     EmptySet, LoopForbidden, NoSuchEdge, NoSuchPoint, NoSuchSet, OracleMismatch,
                     ParseError, PromiseViolated, SetTooLarge, UnsatisfiableParameters,
                     VertexOutOfRange)
from .fvs import DynamicFvs
from .hskernel import GoodSetIndex, solve_hs
from .mlst import NO_TREE, NOT_CONNECTED, DynamicMlst
from .promisekernels import UNKNOWN, EdgeCliqueCover, PointLineCover, as_point, lone_line, on
from .vckernel import CvcKernel, EdsKernel, VcKernel, scratch_vc, solve_cvc, solve_eds

SEED_ENV = "DYNFPT_SEED"
EXIT_OK, EXIT_PARSE, EXIT_MISMATCH, EXIT_PROMISE = 0, 2, 3, 4

# -- traces -------------------------------------------------------------------

_INT = re.compile(r"0|[1-9][0-9]*")
_RAT = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")


@dataclass
class Event:
    kind: str
    args: tuple
    line: int = field(default=0, compare=False)

    def text(self) -> str:
        if self.kind == "#":
            return "#" + self.args[0]
        return " ".join([self.kind, *map(str, self.args)])


@dataclass
class Trace:
    n: int | None
    events: list[Event] = field(default_factory=list)

    def serialize(self) -> str:
        if self.n is None:
            return ""
        return "".join(f"{x}\n" for x in [f"n {self.n}", *(e.text() for e in self.events)])


def _ints(tokens: list[str], lineno: int) -> tuple[int, ...]:
    for t in tokens:
        if not _INT.fullmatch(t):
            raise ParseError(lineno, f"bad integer {t!r}")
    return tuple(int(t) for t in tokens)


def parse(text: str) -> Trace:
    """Strict parser: anything that would not serialize back byte for byte is rejected."""
    if text == "":
        return Trace(None)
    if not text.endswith("\n"):
        raise ParseError(text.count("\n") + 1, "missing final newline")
    lines = text[:-1].split("\n")
    head = lines[0].split(" ")
    if len(head) != 2 or head[0] != "n" or not _INT.fullmatch(head[1]):
        raise ParseError(1, "expected header 'n <count>'")
    trace = Trace(int(head[1]))
    for i, raw in enumerate(lines[1:], start=2):
        if raw.startswith("#"):
            trace.events.append(Event("#", (raw[1:],), i))
            continue
        parts = raw.split(" ")
        kind, rest = parts[0], parts[1:]
        if "\r" in raw or "\t" in raw or "" in parts:
            raise ParseError(i, "fields must be separated by single spaces")
        if kind in ("+", "-"):
            if len(rest) != 2:
                raise ParseError(i, "edge events take two endpoints")
            args = _ints(rest, i)
        elif kind in ("S+", "S-"):
            if not rest:
                raise ParseError(i, "set events need at least one element")
            args = _ints(rest, i)
        elif kind in ("P+", "P-"):
            if len(rest) != 2 or not all(_RAT.fullmatch(t) for t in rest):
                raise ParseError(i, "point events take two rationals p/q")
            args = tuple(rest)
        elif kind == "?":
            if len(rest) != 1:
                raise ParseError(i, "query takes one parameter")
            args = _ints(rest, i)
        else:
            raise ParseError(i, f"unknown event {kind!r}")
        trace.events.append(Event(kind, args, i))
    return trace


def read_trace(path: str) -> Trace:
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError:
        raise ParseError(1, "trace must be ASCII") from None
    return parse(text)


# -- answers --------------------------------------------------------------------

@dataclass(frozen=True)
class Answer:
    token: str  # YES / NO / UNKNOWN
    size: int = 0
    witness: str | None = None
    value: int | None = None  # optimisation value that strategies must agree on

    def lines(self) -> list[str]:
        if self.token != "YES":
            return [self.token]
        return [f"YES {self.size}", self.witness]

    def key(self) -> str:
        """What the digest and the oracle comparison look at."""
        return self.token if self.value is None else f"{self.token} {self.value}"


NO = Answer("NO")


def _pair(e) -> str:
    a, b = e
    return f"{min(a, b)}-{max(a, b)}"


def vertex_answer(xs) -> Answer:
    if xs is None:
        return NO
    xs = sorted(xs)
    return Answer("YES", len(xs), " ".join(["V", *map(str, xs)]))


def edge_answer(es, size: int | None = None) -> Answer:
    if es is None:
        return NO
    es = sorted((min(e), max(e)) for e in es)
    return Answer("YES", len(es) if size is None else size, " ".join(["E", *map(_pair, es)]))


def _leaves(edges) -> int:
    deg = Counter(x for e in edges for x in e)
    return sum(1 for d in deg.values() if d == 1)


def mlst_answer(got, n: int) -> Answer:
    if got in (NOT_CONNECTED, NO_TREE) or got is None:
        return NO
    return edge_answer(got, _leaves(got) if n > 1 else n)


def path_answer(path, ok: bool) -> Answer:
    if not ok:
        return NO
    return Answer("YES", len(path), " ".join(["V", *map(str, path)]))


def dense_answer(got) -> Answer:
    if got is None:
        return NO
    m, xs = got
    xs = sorted(xs)
    return Answer("YES", m, " ".join(["V", *map(str, xs)]), value=m)


def ecc_answer(got) -> Answer:
    if got == UNKNOWN:
        return Answer(UNKNOWN)
    if got is None:
        return NO
    cl = sorted(sorted(c) for c in got)
    return Answer("YES", len(cl), " ".join(["C", *(",".join(map(str, c)) for c in cl)]))


def plc_answer(got) -> Answer:
    if got == UNKNOWN:
        return Answer(UNKNOWN)
    if got is None:
        return NO
    lines = sorted(got)
    return Answer("YES", len(lines), " ".join(["L", *(f"{a} {b} {c}" for a, b, c in lines)]))


# -- instance state ---------------------------------------------------------------

class Instance:
    """The current input, validated independently of any strategy."""

    def __init__(self, problem: "Problem", n: int, sampling: bool = False):
        self.problem = problem
        self.n = n
        self.count: dict[tuple[int, int], int] = {}  # parallel copies are indistinguishable
        self.deg = [0] * n
        self.sampling = sampling
        self._pool: list[tuple[int, int]] = []  # distinct edges, kept only when sampling
        self._pos: dict[tuple[int, int], int] = {}
        self.family: set[frozenset] = set()
        self.points: set = set()
        self._graph = problem.kind == "graph"
        self._cap = problem.opts["delta"] if problem.name == "densesub" else None

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [e for e, c in self.count.items() for _ in range(c)]

    @property
    def m(self) -> int:
        return sum(self.count.values())

    def _vertex(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise VertexOutOfRange(x)

    def _edge(self, ev: Event) -> tuple[int, int]:
        p = self.problem
        if not self._graph:
            raise ParseError(ev.line, f"edge event in a {p.name} trace")
        u, v = ev.args
        n = self.n
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange((u, v))
        if u == v and not p.loops:
            raise LoopForbidden(u)
        key = (u, v) if u < v else (v, u)
        count = self.count
        deg = self.deg
        c = count.get(key, 0)
        if ev.kind == "+":
            if c and not p.multi:
                raise DuplicateEdge(key)
            if self._cap is not None and max(deg[u], deg[v]) >= self._cap:
                raise DegreeBoundViolated(key)
            count[key] = c + 1
            if self.sampling and not c:
                self._pos[key] = len(self._pool)
                self._pool.append(key)
            deg[u] += 1
            deg[v] += 1
        else:
            if not c:
                raise NoSuchEdge(key)
            if c > 1:
                count[key] = c - 1
            else:
                del count[key]
                if self.sampling:
                    i = self._pos.pop(key)
                    last = self._pool.pop()
                    if last != key:
                        self._pool[i] = last
                        self._pos[last] = i
            deg[u] -= 1
            deg[v] -= 1
        return u, v

    def apply(self, ev: Event):
        """Validate and record ``ev``; returns the normalized payload."""
        p = self.problem
        kind = ev.kind
        if kind == "+" or kind == "-":
            return self._edge(ev)
        if kind in ("S+", "S-"):
            if p.kind != "sets":
                raise ParseError(ev.line, f"set event in a {p.name} trace")
            s = frozenset(ev.args)
            for x in s:
                self._vertex(x)
            if len(s) != len(ev.args):
                raise ParseError(ev.line, "repeated set element")
            if len(s) > p.opts["d"]:
                raise SetTooLarge(len(s))
            if kind == "S+":
                if s in self.family:
                    raise DuplicateSet(sorted(s))
                self.family.add(s)
            else:
                if s not in self.family:
                    raise NoSuchSet(sorted(s))
                self.family.discard(s)
            return s
        if kind in ("P+", "P-"):
            if p.kind != "points":
                raise ParseError(ev.line, f"point event in a {p.name} trace")
            pt = as_point(tuple(Fraction(t) for t in ev.args))
            if kind == "P+":
                if pt in self.points:
                    raise DuplicatePoint(pt)
                self.points.add(pt)
            else:
                if pt not in self.points:
                    raise NoSuchPoint(pt)
                self.points.discard(pt)
            return pt
        raise ParseError(ev.line, f"unexpected event {kind!r}")

    def random_edge(self, rng: random.Random) -> tuple[int, int]:
        return self._pool[rng.randrange(len(self._pool))]

    def updates(self) -> list[tuple[str, object]]:
        """Insert events that rebuild the current state from empty."""
        if self.problem.kind == "graph":
            return [("+", e) for e in self.edges]
        if self.problem.kind == "sets":
            return [("S+", s) for s in sorted(self.family, key=sorted)]
        return [("P+", p) for p in sorted(self.points)]


# -- strategies -----------------------------------------------------------------------

class Strategy:
    """One dynamic structure for a fixed k, fed with normalized updates."""

    def __init__(self, inst: Instance, k: int):
        self.inst = inst
        self.k = k

    def update(self, kind: str, payload) -> None:
        raise NotImplementedError

    def answer(self) -> Answer:
        raise NotImplementedError

    def counters(self) -> dict[str, int]:
        return {}


class _EdgeStrategy(Strategy):
    def make(self):
        raise NotImplementedError

    def __init__(self, inst: Instance, k: int):
        super().__init__(inst, k)
        self.s = self.make()
        self._ins = self.s.insert_edge
        self._del = self.s.delete_edge
        for kind, e in inst.updates():
            self.update(kind, e)

    def update(self, kind: str, e) -> None:
        (self._ins if kind == "+" else self._del)(*e)


class VcStrategy(_EdgeStrategy):
    variant = "amortized"

    def make(self):
        return VcKernel(self.inst.n, self.k, self.variant)

    def answer(self) -> Answer:
        return vertex_answer(self.s.query())

    def counters(self) -> dict[str, int]:
        return {"mutations": self.s.mutations}


class VcWorstStrategy(VcStrategy):
    variant = "worstcase"


class CvcStrategy(_EdgeStrategy):
    def make(self):
        return CvcKernel(self.inst.n, self.k)

    def answer(self) -> Answer:
        return vertex_answer(self.s.query())


class EdsStrategy(_EdgeStrategy):
    def make(self):
        return EdsKernel(self.inst.n, self.k)

    def answer(self) -> Answer:
        return edge_answer(self.s.query())

    def counters(self) -> dict[str, int]:
        return {"mutations": self.s.mutations}


class FvsStrategy(_EdgeStrategy):
    def make(self):
        return DynamicFvs(self.inst.n, self.k)

    def answer(self) -> Answer:
        return vertex_answer(self.s.query())

    def counters(self) -> dict[str, int]:
        st = self.s.stats
        return {key: st[key] for key in ("rebuilds", "max_changes", "max_bh")}


class MlstStrategy(_EdgeStrategy):
    def make(self):
        return DynamicMlst(self.inst.n, self.k)

    def answer(self) -> Answer:
        return mlst_answer(self.s.query(), self.inst.n)

    def counters(self) -> dict[str, int]:
        return {"walk_steps": self.s.walk_steps, "fallbacks": self.s.fallbacks}


class KPathStrategy(_EdgeStrategy):
    mode = "exhaustive"

    def make(self):
        o = self.inst.problem.opts
        return KPath(self.inst.n, self.k, self.mode, o["epsilon"], o["seed"])

    def answer(self) -> Answer:
        ok = self.s.query()
        return path_answer(self.s.witness() if ok else None, ok)

    def counters(self) -> dict[str, int]:
        return {"member_updates": self.s.updates}


class KPathRandStrategy(KPathStrategy):
    mode = "randomized"


class DenseStrategy(_EdgeStrategy):
    def make(self):
        o = self.inst.problem.opts
        mode = "exhaustive" if self.inst.n <= EXHAUSTIVE_MAX_N else "randomized"
        return DenseSubgraph(self.inst.n, self.k, o["delta"], mode, o["epsilon"], o["seed"])

    def answer(self) -> Answer:
        return dense_answer(self.s.query())

    def counters(self) -> dict[str, int]:
        return {"member_updates": self.s.updates}


class EccStrategy(_EdgeStrategy):
    def make(self):
        g = max(self.k, self.inst.problem.opts["g"] or self.k)
        return EdgeCliqueCover(self.inst.n, self.k, g)

    def answer(self) -> Answer:
        return ecc_answer(self.s.query())


class PlcStrategy(Strategy):
    def __init__(self, inst: Instance, k: int):
        super().__init__(inst, k)
        g = max(k, inst.problem.opts["g"] or k)
        self.s = PointLineCover(k, g)
        for kind, p in inst.updates():
            self.update(kind, p)

    def update(self, kind: str, p) -> None:
        if kind == "P+":
            self.s.insert_point(p)
        else:
            self.s.delete_point(p)

    def answer(self) -> Answer:
        return plc_answer(self.s.query())

    def counters(self) -> dict[str, int]:
        return {"line_tests": self.s.tests}


class _SetStrategy(Strategy):
    def __init__(self, inst: Instance, k: int):
        super().__init__(inst, k)
        self.s = self.make()
        for kind, s in inst.updates():
            self.update(kind, s)

    def update(self, kind: str, s) -> None:
        if kind == "S+":
            self.s.insert(s)
        else:
            self.s.delete(s)

    def answer(self) -> Answer:
        return vertex_answer(self.s.query())


class HsStrategy(_SetStrategy):
    def make(self):
        return GoodSetIndex(self.k, self.inst.problem.opts["d"])

    def counters(self) -> dict[str, int]:
        return {"mutations": self.s.mutations}


class BranchSetStrategy(_SetStrategy):
    def make(self):
        o = self.inst.problem.opts
        return BranchTree(self.k, o["d"], o["seed"])

    def counters(self) -> dict[str, int]:
        return {"nodes_built": self.s.nodes_built, "rebuilds": self.s.rebuilds}


class BranchVcStrategy(BranchSetStrategy):
    """Vertex Cover as 2-Hitting Set over the edge sets."""

    def __init__(self, inst: Instance, k: int):
        Strategy.__init__(self, inst, k)
        self.s = BranchTree(k, 2, inst.problem.opts["seed"])
        for kind, e in inst.updates():
            self.update(kind, e)

    def update(self, kind: str, e) -> None:
        super().update("S+" if kind == "+" else "S-", frozenset(e))


class Scratch(Strategy):
    """Recompute from the current instance at every query."""

    def __init__(self, inst: Instance, k: int, solve: Callable[[Instance, int], Answer]):
        super().__init__(inst, k)
        self.solve = solve
        self.queries = 0

    def update(self, kind: str, payload) -> None:
        pass

    def answer(self) -> Answer:
        self.queries += 1
        return self.solve(self.inst, self.k)


def static_kpath(n: int, edges, k: int) -> list[int] | None:
    """DFS for a simple path on k vertices."""
    if k <= 0:
        return []
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in set(edges):
        adj[a].append(b)
        adj[b].append(a)
    path: list[int] = []
    on_path = [False] * n

    def dfs(x: int) -> bool:
        path.append(x)
        on_path[x] = True
        if len(path) == k:
            return True
        for y in sorted(adj[x]):
            if not on_path[y] and dfs(y):
                return True
        path.pop()
        on_path[x] = False
        return False

    for s in range(n):
        if dfs(s):
            return path
    return None


def _rebuilt(cls) -> Callable[[Instance, int], Answer]:
    """Scratch solver: build a fresh structure of ``cls`` and query it once."""
    return lambda inst, k: cls(inst, k).answer()


def _scratch_vc(inst: Instance, k: int) -> Answer:
    return vertex_answer(scratch_vc(inst.edges, inst.n, k))


def _scratch_cvc(inst: Instance, k: int) -> Answer:
    es = sorted(set(inst.edges))
    return vertex_answer(solve_cvc(sorted({x for e in es for x in e}), es, k))


def _scratch_eds(inst: Instance, k: int) -> Answer:
    return edge_answer(solve_eds(sorted(set(inst.edges)), k))


def _scratch_hs(inst: Instance, k: int) -> Answer:
    return vertex_answer(solve_hs(inst.family, k))


def _scratch_kpath(inst: Instance, k: int) -> Answer:
    if k > inst.n:
        return NO
    path = static_kpath(inst.n, inst.edges, k)
    return path_answer(path, path is not None)


# -- problems ------------------------------------------------------------------------

@dataclass
class Problem:
    name: str
    kind: str  # graph / sets / points
    strategies: dict[str, type | Callable]
    default: str
    scratch: Callable[[Instance, int], Answer]
    multi: bool = False
    loops: bool = False
    opts: dict = field(default_factory=dict)

    def make(self, strategy: str, inst: Instance, k: int) -> Strategy:
        if strategy == "scratch":
            return Scratch(inst, k, self.scratch)
        return self.strategies[strategy](inst, k)


def problems(opts: dict | None = None) -> dict[str, Problem]:
    o = {"d": 3, "delta": 3, "g": None, "epsilon": 1e-6, "seed": 0}
    o.update(opts or {})
    return {
        "vc": Problem("vc", "graph", {"kernel-amortized": VcStrategy, "kernel-worstcase": VcWorstStrategy,
                                      "branchtree": BranchVcStrategy}, "kernel-amortized", _scratch_vc,
                      opts=o),
        "cvc": Problem("cvc", "graph", {"kernel-worstcase": CvcStrategy}, "kernel-worstcase",
                       _scratch_cvc, opts=o),
        "eds": Problem("eds", "graph", {"kernel-worstcase": EdsStrategy}, "kernel-worstcase",
                       _scratch_eds, opts=o),
        "hs": Problem("hs", "sets", {"hskernel": HsStrategy, "branchtree": BranchSetStrategy}, "hskernel",
                      _scratch_hs, opts=o),
        "fvs": Problem("fvs", "graph", {"fvs": FvsStrategy}, "fvs", _rebuilt(FvsStrategy), opts=o),
        "mlst": Problem("mlst", "graph", {"mlst": MlstStrategy}, "mlst", _rebuilt(MlstStrategy), opts=o),
        "kpath": Problem("kpath", "graph", {"kpath-exh": KPathStrategy, "kpath-rand": KPathRandStrategy},
                         "kpath-exh", _scratch_kpath, opts=o),
        "densesub": Problem("densesub", "graph", {"densesub": DenseStrategy}, "densesub",
                            _rebuilt(DenseStrategy), opts=o),
        "ecc": Problem("ecc", "graph", {"ecc": EccStrategy}, "ecc", _rebuilt(EccStrategy), opts=o),
        "plc": Problem("plc", "points", {"plc": PlcStrategy}, "plc", _rebuilt(PlcStrategy), opts=o),
    }


PROBLEMS = tuple(problems())
STRATEGIES = ("kernel-worstcase", "kernel-amortized", "branchtree", "hskernel", "fvs", "mlst", "kpath-exh",
              "kpath-rand", "densesub", "ecc", "plc", "scratch")


# -- oracle checks --------------------------------------------------------------------

def oracle_answer(inst: Instance, k: int) -> Answer:
    p = inst.problem.name
    n, es = inst.n, list(inst.edges)
    if p == "vc":
        return vertex_answer(oracle.oracle_vc(n, es, k))
    if p == "cvc":
        return vertex_answer(oracle.oracle_cvc(n, es, k))
    if p == "eds":
        return edge_answer(oracle.oracle_eds(n, es, k))
    if p == "hs":
        return vertex_answer(oracle.oracle_hs(inst.family, k))
    if p == "fvs":
        return vertex_answer(oracle.oracle_fvs(n, es, k))
    if p == "mlst":
        return mlst_answer(oracle.oracle_mlst(n, es, k), n)
    if p == "kpath":
        ok = oracle.oracle_kpath(n, es, k)
        return Answer("YES", k, "") if ok else NO
    if p == "densesub":
        return dense_answer(oracle.oracle_densesub(n, es, k))
    if p == "ecc":
        return ecc_answer(oracle.oracle_ecc(n, es, k))
    if p == "plc":
        return plc_answer(oracle.oracle_plc(sorted(inst.points), k))
    raise ValueError(p)


def _tokens(ans: Answer) -> list[str]:
    return ans.witness.split(" ")[1:] if ans.witness else []


def validate(inst: Instance, k: int, ans: Answer) -> str | None:
    """Independent check of a YES witness; returns a complaint or None."""
    if ans.token != "YES":
        return None
    p = inst.problem.name
    es = set(inst.edges)
    toks = _tokens(ans)
    if p in ("vc", "cvc", "fvs", "hs"):
        xs = {int(t) for t in toks}
        if len(xs) > k:
            return "witness too large"
        if p == "hs":
            return None if all(s & xs for s in inst.family) else "set not hit"
        if p == "fvs":
            rest = [e for e in inst.edges if e[0] not in xs and e[1] not in xs]
            return None if oracle.is_forest(range(inst.n), rest) else "cycle remains"
        if not all(a in xs or b in xs for a, b in es):
            return "edge not covered"
        if p == "cvc" and not oracle._induced_connected(xs, es):
            return "cover not connected"
        return None
    if p in ("eds", "mlst"):
        pairs = [tuple(map(int, t.split("-"))) for t in toks]
        if not all(e in es for e in pairs):
            return "witness edge not in graph"
        if p == "eds":
            ends = {x for e in pairs for x in e}
            if len(pairs) > k or not all(a in ends or b in ends for a, b in es):
                return "edge not dominated"
            return None
        if len(pairs) != inst.n - 1 or not oracle.is_forest(range(inst.n), pairs):
            return "not a spanning tree"
        return None if _leaves(pairs) >= k or inst.n <= 1 else "too few leaves"
    if p == "kpath":
        path = [int(t) for t in toks]
        if len(path) != k or len(set(path)) != k:
            return "path has wrong length"
        ok = all((min(a, b), max(a, b)) in es for a, b in zip(path, path[1:]))
        return None if ok else "path uses a non-edge"
    if p == "densesub":
        xs = {int(t) for t in toks}
        got = sum(1 for a, b in es if a in xs and b in xs)
        return None if len(xs) == k and got == ans.value else "witness does not induce the value"
    if p == "ecc":
        cl = [set(map(int, t.split(","))) for t in toks]
        if len(cl) > k or not all((min(a, b), max(a, b)) in es for c in cl for a, b in combinations(c, 2)):
            return "not a clique cover"
        return None if all(any(a in c and b in c for c in cl) for a, b in es) else "edge not covered"
    if p == "plc":
        nums = list(map(int, toks))
        lines = [tuple(nums[i:i + 3]) for i in range(0, len(nums), 3)]
        if len(lines) > k:
            return "too many lines"
        return None if all(any(on(ln, q) for ln in lines) for q in inst.points) else "point not covered"
    return None


# -- replay -------------------------------------------------------------------------------

@dataclass
class Report:
    problem: str
    strategy: str
    ops: int = 0
    queries: int = 0
    elapsed: float = 0.0
    hist: Counter = field(default_factory=Counter)  # b -> count of latencies below 2**b us
    counters: dict = field(default_factory=dict)
    digest_lines: list[str] = field(default_factory=list)
    unknown_steps: list[int] = field(default_factory=list)

    @property
    def digest(self) -> str:
        h = hashlib.sha256("\n".join(self.digest_lines).encode())
        return h.hexdigest()[:16]

    def items(self) -> list[tuple[str, object]]:
        out: list[tuple[str, object]] = [("problem", self.problem), ("strategy", self.strategy),
                                         ("ops", self.ops), ("queries", self.queries),
                                         ("elapsed_s", f"{self.elapsed:.6f}"), ("digest", self.digest),
                                         ("unknown", len(self.unknown_steps))]
        out += [(f"counter.{key}", val) for key, val in sorted(self.counters.items())]
        out += [(f"latency_us_lt_{1 << b}", c) for b, c in sorted(self.hist.items())]
        return out

    def dump(self) -> str:
        return "".join(f"{key}={val}\n" for key, val in self.items())


def replay(trace: Trace, problem: str, strategy: str | None = None, *, check_oracle: bool = False,
           seed: int | None = None, epsilon: float = 1e-6, opts: dict | None = None,
           out: Callable[[str], None] | None = None) -> Report:
    """Apply every event in order; raises on bad input, oracle mismatch or degraded answers."""
    o = dict(opts or {})
    o["seed"] = _default_seed() if seed is None else seed
    o["epsilon"] = epsilon
    prob = problems(o)[problem]
    strategy = strategy or prob.default
    if strategy != "scratch" and strategy not in prob.strategies:
        raise UnsatisfiableParameters(f"strategy {strategy!r} does not solve {problem}")
    rep = Report(problem, strategy)
    if trace.n is None:
        return rep
    inst = Instance(prob, trace.n)
    built: dict[int, Strategy] = {}
    updaters: list[Callable] = []
    hist = rep.hist
    clock = time.perf_counter
    step = 0
    t_all = clock()
    for ev in trace.events:
        kind = ev.kind
        if kind == "#":
            continue
        step += 1
        t0 = clock()
        if kind == "?":
            k = ev.args[0]
            s = built.get(k)
            if s is None:
                s = built[k] = prob.make(strategy, inst, k)
                updaters.append(s.update)
            ans = s.answer()
            rep.queries += 1
            hist[int((clock() - t0) * 1e6).bit_length()] += 1
            rep.digest_lines.append(f"{k} {ans.key()}")
            if out is not None:
                for line in ans.lines():
                    out(line)
            if ans.token == UNKNOWN:
                rep.unknown_steps.append(step)
            elif check_oracle:
                want = oracle_answer(inst, k)
                if want.key() != ans.key():
                    raise OracleMismatch(step, ans.key(), want.key())
                bad = validate(inst, k, ans)
                if bad is not None:
                    raise OracleMismatch(step, ans.lines(), bad)
            continue
        try:
            payload = inst._edge(ev) if kind == "+" or kind == "-" else inst.apply(ev)
            for up in updaters:
                up(kind, payload)
        except ParseError:
            raise
        except DynFptError as exc:
            exc.step = step
            raise
        hist[int((clock() - t0) * 1e6).bit_length()] += 1
    rep.ops = step - rep.queries
    rep.elapsed = time.perf_counter() - t_all
    for k, s in sorted(built.items()):
        for key, val in s.counters().items():
            rep.counters[f"{key}" if len(built) == 1 else f"k{k}.{key}"] = val
    return rep


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise UnsatisfiableParameters(f"{SEED_ENV} must be an integer") from None


# -- generators --------------------------------------------------------------------------

def _target_edges(problem: str, n: int, k: int, delta: int) -> int:
    if problem in ("vc", "cvc", "eds"):
        return 2 * k + 2
    if problem == "fvs":
        return n + k
    if problem == "mlst":
        return (8 * n) // 5
    if problem == "kpath":
        return max(1, (3 * n) // 5)
    if problem == "densesub":
        return (delta * n) // 2
    return n


def _inverse(ev: Event) -> Event:
    flip = {"+": "-", "-": "+", "S+": "S-", "S-": "S+", "P+": "P-", "P-": "P+"}
    return Event(flip[ev.kind], ev.args)


def _fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _propose(rng: random.Random, inst: Instance, problem: str, k: int, model: str, opts: dict) -> Event:
    n = inst.n
    p = inst.problem
    if p.kind == "points":
        target = 2 * max(opts["g"] or k, 1) + 3
        if inst.points and (len(inst.points) >= target or rng.random() < 0.35):
            pt = rng.choice(sorted(inst.points))
            return Event("P-", tuple(_fmt_rat(c) for c in pt))
        x = Fraction(rng.randrange(0, 12), rng.choice((1, 2)))
        y = Fraction(rng.randrange(0, 12), rng.choice((1, 2)))
        return Event("P+", (_fmt_rat(x), _fmt_rat(y)))
    if p.kind == "sets":
        target = 2 * k + 3
        if inst.family and (len(inst.family) >= target or rng.random() < 0.4):
            fam = sorted(inst.family, key=sorted)
            if model == "adversarial":
                hot = Counter(x for s in fam for x in s).most_common(1)[0][0]
                fam = [s for s in fam if hot in s] or fam
            return Event("S-", tuple(sorted(rng.choice(fam))))
        size = rng.randint(1, opts["d"])
        elems = rng.sample(range(n), min(size, n))
        if model == "adversarial" and inst.family and rng.random() < 0.7:
            hot = Counter(x for s in inst.family for x in s).most_common(1)[0][0]
            if hot not in elems:
                elems[0] = hot
        return Event("S+", tuple(sorted(elems)))
    if model == "adversarial" and rng.random() < 0.7:
        deg = inst.deg
        hub = max(range(n), key=lambda x: (deg[x], -x))
        x = rng.choice([y for y in range(n) if y != hub])
        key = (min(hub, x), max(hub, x))
        return Event("-" if key in inst.count else "+", key)
    m = len(inst._pool)
    if opts.get("insert_prob") is not None:
        delete = m and rng.random() >= opts["insert_prob"]
    else:
        grow = m < _target_edges(problem, n, k, opts["delta"])
        delete = m and rng.random() < (0.3 if grow else 0.7)
    if delete:
        return Event("-", inst.random_edge(rng))
    a, b = rng.sample(range(n), 2)
    return Event("+", (min(a, b), max(a, b)))


def gen(problem: str, n: int, k: int, ops: int, model: str = "random", seed: int | None = None,
        *, d: int = 3, delta: int = 3, g: int | None = None, query_every: int = 1,
        insert_prob: float | None = None) -> Trace:
    """A deterministic trace; the promise model certifies every prefix with the oracle."""
    seed = _default_seed() if seed is None else seed
    if problem not in PROBLEMS:
        raise UnsatisfiableParameters(f"unknown problem {problem!r}")
    if model not in ("random", "adversarial", "promise"):
        raise UnsatisfiableParameters(f"unknown model {model!r}")
    if n < 0 or k < 0 or ops < 0 or query_every < 1:
        raise UnsatisfiableParameters("n, k and ops must be nonnegative, query_every positive")
    prob = problems({"d": d, "delta": delta, "g": g})[problem]
    if prob.kind == "graph" and n < 2 and ops > 0:
        raise UnsatisfiableParameters("graph workloads need n >= 2")
    if prob.kind == "sets" and n < 1 and ops > 0:
        raise UnsatisfiableParameters("set workloads need a nonempty universe")
    if model == "promise" and prob.kind != "points" and n > oracle.MAX_N:
        raise UnsatisfiableParameters(f"promise certification needs n <= {oracle.MAX_N}")
    gk = k if g is None else g
    if model == "promise" and gk < k:
        raise UnsatisfiableParameters("g must be at least k")
    if insert_prob is not None and not 0 <= insert_prob <= 1:
        raise UnsatisfiableParameters("insert_prob must lie in [0, 1]")
    rng = random.Random(seed)
    opts = {"d": d, "delta": delta, "g": g, "insert_prob": insert_prob}
    header = f" gen {problem} n={n} k={k} ops={ops} model={model} seed={seed}"
    if prob.kind == "sets":
        header += f" d={d}"
    if problem == "densesub":
        header += f" delta={delta}"
    if model == "promise" or (g is not None and problem in ("ecc", "plc")):
        header += f" g={gk}"
    if insert_prob is not None:
        header += f" insert_prob={insert_prob}"
    trace = Trace(n if prob.kind != "points" else 0, [Event("#", (header,))])
    inst = Instance(prob, n, sampling=True)
    last: Event | None = None
    for i in range(ops):
        for _ in range(200):
            ev = _propose(rng, inst, problem, k, model, opts)
            try:
                inst.apply(ev)
            except DynFptError:
                continue
            if model == "promise" and oracle_answer(inst, gk).token != "YES":
                inst.apply(_inverse(ev))
                continue
            break
        else:
            if last is None:
                raise UnsatisfiableParameters("no valid update found")
            ev = _inverse(last)  # undoing the previous step returns to a certified state
            inst.apply(ev)
        trace.events.append(ev)
        last = ev
        if (i + 1) % query_every == 0:
            trace.events.append(Event("?", (k,)))
    return trace


# -- bench ----------------------------------------------------------------------------------

def bench(trace: Trace, problem: str, strategies: Iterable[str], **kw) -> list[Report]:
    """Replay each strategy; raise OracleMismatch when digests disagree."""
    reports = [replay(trace, problem, s, **kw) for s in strategies]
    base = reports[0]
    for rep in reports[1:]:
        if rep.digest != base.digest:
            step = next((i for i, (a, b) in enumerate(zip(base.digest_lines, rep.digest_lines))
                         if a != b), min(len(base.digest_lines), len(rep.digest_lines)))
            got = rep.digest_lines[step] if step < len(rep.digest_lines) else None
            want = base.digest_lines[step] if step < len(base.digest_lines) else None
            raise OracleMismatch(step + 1, (rep.strategy, got), (base.strategy, want))
    return reports


def _percentile(hist: Counter, q: float) -> int:
    total = sum(hist.values())
    if not total:
        return 0
    need = q * total
    seen = 0
    for b in sorted(hist):
        seen += hist[b]
        if seen >= need:
            return 1 << b
    return 1 << max(hist)


def format_table(reports: list[Report]) -> str:
    base = reports[-1].elapsed
    rows = [("strategy", "ops", "queries", "seconds", "speedup_vs_last", "p50_us", "p99_us", "digest")]
    for r in reports:
        speed = f"{base / r.elapsed:.2f}" if r.elapsed else "-"
        rows.append((r.strategy, str(r.ops), str(r.queries), f"{r.elapsed:.3f}", speed,
                     str(_percentile(r.hist, 0.5)), str(_percentile(r.hist, 0.99)), r.digest))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    for r in reports:
        for key, val in sorted(r.counters.items()):
            lines.append(f"{r.strategy}.{key}={val}")
    return "\n".join(lines) + "\n"


# -- CLI ----------------------------------------------------------------------------------------

def _add_problem_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, default=3, help="set size bound for hs")
    p.add_argument("--delta", type=int, default=3, help="degree bound for densesub")
    p.add_argument("--g", type=int, default=None, help="promise bound g(k) for ecc and plc")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dynfpt", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("replay", help="apply a trace and print query answers")
    r.add_argument("trace")
    r.add_argument("--problem", required=True, choices=PROBLEMS)
    r.add_argument("--strategy", choices=STRATEGIES)
    r.add_argument("--check-oracle", action="store_true")
    r.add_argument("--seed", type=int)
    r.add_argument("--epsilon", type=float, default=1e-6)
    r.add_argument("--report", help="write a key=value report here")
    _add_problem_opts(r)

    g = sub.add_parser("gen", help="write a workload trace to stdout")
    g.add_argument("problem", choices=PROBLEMS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--ops", type=int, required=True)
    g.add_argument("--model", default="random", choices=("random", "adversarial", "promise"))
    g.add_argument("--seed", type=int)
    g.add_argument("--query-every", type=int, default=1)
    g.add_argument("--insert-prob", type=float, help="graph problems: insert with this probability")
    g.add_argument("-o", "--output")
    _add_problem_opts(g)

    b = sub.add_parser("bench", help="compare strategies on one trace")
    b.add_argument("trace")
    b.add_argument("--problem", required=True, choices=PROBLEMS)
    b.add_argument("strategies", nargs="+", choices=STRATEGIES)
    b.add_argument("--seed", type=int)
    b.add_argument("--epsilon", type=float, default=1e-6)
    b.add_argument("--report", help="write key=value reports here")
    _add_problem_opts(b)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    opts = {"d": args.d, "delta": args.delta, "g": args.g}
    try:
        if args.cmd == "gen":
            tr = gen(args.problem, args.n, args.k, args.ops, args.model, args.seed, d=args.d,
                     delta=args.delta, g=args.g, query_every=args.query_every,
                     insert_prob=args.insert_prob)
            text = tr.serialize()
            if args.output:
                with open(args.output, "w", newline="\n") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return EXIT_OK
        trace = read_trace(args.trace)
        if args.cmd == "replay":
            rep = replay(trace, args.problem, args.strategy, check_oracle=args.check_oracle, seed=args.seed,
                         epsilon=args.epsilon, opts=opts, out=print)
            reports = [rep]
            sys.stderr.write(f"{rep.problem}/{rep.strategy}: {rep.ops} updates, {rep.queries} queries, "
                             f"{rep.elapsed:.3f}s, digest {rep.digest}\n")
        else:
            reports = bench(trace, args.problem, args.strategies, seed=args.seed, epsilon=args.epsilon,
                            opts=opts)
            sys.stdout.write(format_table(reports))
        if args.report:
            with open(args.report, "w") as fh:
                fh.write("\n".join(r.dump() for r in reports))
        unknown = [s for r in reports for s in r.unknown_steps]
        if unknown:
            raise PromiseViolated(f"step {unknown[0]}: degraded state answered UNKNOWN")
        return EXIT_OK
    except ParseError as exc:
        sys.stderr.write(f"ParseError: {exc}\n")
        return EXIT_PARSE
    except OracleMismatch as exc:
        sys.stderr.write(f"OracleMismatch: {exc}\n")
        return EXIT_MISMATCH
    except PromiseViolated as exc:
        sys.stderr.write(f"PromiseViolated: {exc}\n")
        return EXIT_PROMISE
    except (DynFptError, OSError) as exc:
        step = getattr(exc, "step", None)
        where = f" at step {step}" if step is not None else ""
        sys.stderr.write(f"{type(exc).__name__}{where}: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
