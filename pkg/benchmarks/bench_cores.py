"""Time the compiled cores against their pure-Python twins on identical workloads.

    python benchmarks/bench_cores.py [--ops N] [--seed S]

Each row replays the same random operation stream on both backends and
checks that their counters agree before reporting the speedup.
"""
from __future__ import annotations

import argparse
import random
import time

from dynfpt import dynconn, linkcut, vckernel
from dynfpt.dynconn import ConnectivityForest
from dynfpt.harness import bench, gen
from dynfpt.linkcut import LinkCutForest
from dynfpt.vckernel import VcKernel


def lct_work(backend: str, n: int, ops: int, seed: int) -> int:
    rng = random.Random(seed)
    f = LinkCutForest(backend)
    for _ in range(n):
        f.maketree()
    edges: list[tuple[int, int]] = []
    for _ in range(ops):
        if edges and rng.random() < 0.4:
            a, b = edges.pop(rng.randrange(len(edges)))
            f.cut(a, b)
        else:
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b and not f.connected(a, b):
                f.link(a, b)
                edges.append((a, b))
    return f.rotations


def conn_work(backend: str, n: int, ops: int, seed: int) -> int:
    rng = random.Random(seed)
    c = ConnectivityForest(n, backend=backend, debug=False)
    edges: list[tuple[int, int]] = []
    for _ in range(ops):
        if edges and rng.random() < 0.45:
            c.conn_delete(*edges.pop(rng.randrange(len(edges))))
        else:
            a, b = rng.sample(range(n), 2)
            c.conn_insert(a, b)
            edges.append((a, b))
        c.connected(rng.randrange(n), rng.randrange(n))
    return c.replacement_scans


def vc_work(backend: str, n: int, ops: int, seed: int) -> int:
    rng = random.Random(seed)
    vc = VcKernel(n, 3, "amortized", backend=backend)
    edges: list[tuple[int, int]] = []
    have: set[tuple[int, int]] = set()
    for _ in range(ops):
        if edges and rng.random() < 0.4:
            e = edges.pop(rng.randrange(len(edges)))
            have.discard(e)
            vc.delete_edge(*e)
        else:
            a = rng.randrange(20) if rng.random() < 0.3 else rng.randrange(n)
            b = rng.randrange(n)
            e = (min(a, b), max(a, b))
            if a != b and e not in have:
                have.add(e)
                edges.append(e)
                vc.insert_edge(*e)
    return vc.mutations


CORES = [
    ("linkcut", lct_work, linkcut.CCore is not None, 2000),
    ("dynconn", conn_work, dynconn.CETT is not None, 1000),
    ("vckernel", vc_work, vckernel.CCore is not None, 10_000),
]


def timed(fn, *args) -> tuple[float, int]:
    t0 = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - t0, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ops", type=int, default=50_000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    print(f"{'core':<10}{'py s':>10}{'c s':>10}{'speedup':>10}  counter")
    for name, fn, compiled, n in CORES:
        t_py, c_py = timed(fn, "py", n, args.ops, args.seed)
        if not compiled:
            print(f"{name:<10}{t_py:>10.3f}{'-':>10}{'-':>10}  {c_py} (compiled core not built)")
            continue
        t_c, c_c = timed(fn, "c", n, args.ops, args.seed)
        assert c_py == c_c, f"{name}: backends disagree ({c_py} vs {c_c})"
        print(f"{name:<10}{t_py:>10.3f}{t_c:>10.3f}{t_py / t_c:>9.1f}x  {c_c}")

    trace = gen("vc", 10_000, 3, 100_000, "random", 7, query_every=100, insert_prob=0.7)
    fast, slow = bench(trace, "vc", ["kernel-amortized", "scratch"])
    print(f"\nvc end to end, n=10^4, 10^5 updates, query every 100: kernel-amortized {fast.elapsed:.2f}s, "
          f"scratch {slow.elapsed:.2f}s, {slow.elapsed / fast.elapsed:.1f}x, digest {fast.digest}")


if __name__ == "__main__":
    main()
