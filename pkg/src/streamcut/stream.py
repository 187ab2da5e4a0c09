"""Vertex arrival orders for the streaming setting: random, BFS, DFS."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import Graph

ORDER_KINDS = ("random", "bfs", "dfs")


@dataclass(frozen=True)
class StreamPlan:
    order_kind: str
    seed: int
    sequence: np.ndarray  # permutation of [0, n)


def _pick_start(rng: np.random.Generator, visited: np.ndarray) -> int:
    unvisited = np.flatnonzero(~visited)
    return int(unvisited[rng.integers(len(unvisited))])


def _bfs_order(g: Graph, rng: np.random.Generator) -> np.ndarray:
    seq = np.empty(g.n, dtype=np.int64)
    visited = np.zeros(g.n, dtype=bool)
    pos = 0
    while pos < g.n:
        start = _pick_start(rng, visited)
        visited[start] = True
        queue = deque([start])
        while queue:
            v = queue.popleft()
            seq[pos] = v
            pos += 1
            for u in g.neighbors(v):  # ascending (adjacency is sorted)
                if not visited[u]:
                    visited[u] = True
                    queue.append(u)
    return seq


def _dfs_order(g: Graph, rng: np.random.Generator) -> np.ndarray:
    seq = np.empty(g.n, dtype=np.int64)
    visited = np.zeros(g.n, dtype=bool)
    pos = 0
    while pos < g.n:
        stack = [_pick_start(rng, visited)]
        while stack:
            v = stack.pop()
            if visited[v]:
                continue
            visited[v] = True
            seq[pos] = v
            pos += 1
            # push reversed so the lowest-index neighbor is visited first
            for u in g.neighbors(v)[::-1]:
                if not visited[u]:
                    stack.append(int(u))
    return seq


def make_stream(g: Graph, order_kind: str, seed: int) -> StreamPlan:
    """
    Deterministic arrival sequence over all vertices of g.

    random: Fisher-Yates shuffle. bfs/dfs: traversal from a uniformly
    random start, neighbors in ascending index order, restarting from a
    uniformly random unvisited vertex while any remain.
    """
    if g.n < 1:
        raise ValueError("empty graph has no stream order")
    if order_kind not in ORDER_KINDS:
        raise ValueError(f"unknown order {order_kind!r}, expected one of {ORDER_KINDS}")
    rng = np.random.Generator(np.random.PCG64(seed))
    if order_kind == "random":
        seq = rng.permutation(g.n)
    elif order_kind == "bfs":
        seq = _bfs_order(g, rng)
    else:
        seq = _dfs_order(g, rng)
    seq.setflags(write=False)
    return StreamPlan(order_kind=order_kind, seed=seed, sequence=seq)
