"""Immutable simple undirected graph with CSR adjacency and edge-list IO."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


class EdgeListParseError(ValueError):
    """Raised on a malformed edge-list line; carries the 1-based line number."""

    def __init__(self, path, lineno: int, text: str):
        self.path = path
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: malformed edge line {text!r}")


class EmptyGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph, frozen after construction.

    Adjacency is CSR-style: the neighbors of dense vertex v are
    ``indices[indptr[v]:indptr[v+1]]``, sorted ascending. ``id_map[v]``
    is the original label of dense vertex v (identity for generated
    graphs). No self loops, no duplicate edges, symmetric by
    construction.
    """

    n: int
    m: int
    indptr: np.ndarray
    indices: np.ndarray
    id_map: np.ndarray

    def degree(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range [0, {self.n})")
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted dense neighbor indices of v (a read-only view)."""
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range [0, {self.n})")
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def edge_array(self) -> np.ndarray:
        """Each undirected edge once, as an (m, 2) array with u < v."""
        u = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        v = self.indices.astype(np.int64)
        keep = u < v
        return np.column_stack([u[keep], v[keep]])


def from_edges(edges: np.ndarray, id_map: np.ndarray | None = None) -> Graph:
    """
    Build a Graph from an (E, 2) array of vertex labels.

    Self loops and duplicate edges are dropped, directed duplicates
    symmetrized. Labels are densified to [0, n); the sorted original
    labels become id_map unless one is supplied (then labels are taken
    as already-dense indices into it).
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if id_map is None:
        labels, dense = np.unique(edges.ravel(), return_inverse=True)
        edges = dense.reshape(-1, 2)
        id_map = labels
        n = len(labels)
    else:
        id_map = np.asarray(id_map)
        n = len(id_map)
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ValueError("edge endpoint outside [0, n)")

    edges = edges[edges[:, 0] != edges[:, 1]]
    if edges.size == 0 and n == 0:
        raise EmptyGraphError("no edges remain after preprocessing")
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    uniq = np.unique(np.column_stack([lo, hi]), axis=0)
    m = len(uniq)

    src = np.concatenate([uniq[:, 0], uniq[:, 1]])
    dst = np.concatenate([uniq[:, 1], uniq[:, 0]])
    order = np.lexsort((dst, src))
    indices = dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    indices.setflags(write=False)
    indptr.setflags(write=False)
    return Graph(n=n, m=m, indptr=indptr, indices=indices, id_map=id_map)


def restrict_to_lcc(g: Graph) -> Graph:
    """Largest connected component, relabeled densely; id_map composed."""
    adj = csr_matrix((np.ones(len(g.indices), dtype=np.int8), g.indices, g.indptr),
                     shape=(g.n, g.n))
    ncomp, comp = connected_components(adj, directed=False)
    if ncomp == 1:
        return g
    keep_comp = np.argmax(np.bincount(comp, minlength=ncomp))
    keep = np.flatnonzero(comp == keep_comp)
    edges = g.edge_array()
    mask = np.isin(edges[:, 0], keep) & np.isin(edges[:, 1], keep)
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    sub = remap[edges[mask]]
    return from_edges(sub, id_map=g.id_map[keep])


def load_edge_list(path, lcc: bool = True) -> Graph:
    """
    Load a whitespace-separated "u v" edge list ('#' lines are comments).

    Multiple edges, self loops and edge directions are collapsed to a
    simple undirected graph; with lcc=True (the default for file input)
    the graph is restricted to its largest connected component.
    """
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            parts = s.split()
            if len(parts) != 2:
                raise EdgeListParseError(path, lineno, line.rstrip("\n"))
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListParseError(path, lineno, line.rstrip("\n")) from None
            if u < 0 or v < 0:
                raise EdgeListParseError(path, lineno, line.rstrip("\n"))
            rows.append((u, v))
    if not rows:
        raise EmptyGraphError(f"{path}: no edges found")
    g = from_edges(np.array(rows, dtype=np.int64))
    if g.m == 0:
        raise EmptyGraphError(f"{path}: empty graph after preprocessing")
    if lcc:
        g = restrict_to_lcc(g)
    return g


def save_edge_list(g: Graph, path) -> None:
    """Write one "u v" line per edge, in original labels."""
    edges = g.id_map[g.edge_array()]
    with open(path, "w") as fh:
        for u, v in edges:
            fh.write(f"{u} {v}\n")
