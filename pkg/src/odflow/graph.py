"""Spatial graph ingestion and Laplacian assembly.

The graph is the spatial discretization the whole engine hangs off: nodes
carry planar coordinates, edges carry physical lengths, and the Laplacian
weights each edge by the reciprocal of its length so that short edges bind
their endpoints tightly in the spectral ordering.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import IO, Iterable, Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _cc

from .errors import EmptyInputError, IntegrityError, ParseError

#: Minimum stored edge length, in dataset units.  Shorter (or non-positive)
#: lengths are clamped up to this so edge weights 1/length stay finite.
EPS_LEN = 1e-9

Source = Union[str, Path, IO[str]]


@dataclass(frozen=True)
class SpatialGraph:
    """Validated undirected spatial graph.

    ``node_ids`` is strictly increasing; matrix-facing code indexes nodes by
    their row in that array.  Edges are canonical: ``src < dst`` per row,
    rows sorted by ``(src, dst)``, no duplicates, no self-loops, and every
    length >= EPS_LEN.
    """

    node_ids: np.ndarray  # (n,) int64, strictly increasing
    positions: np.ndarray  # (n, 2) float64
    edge_src: np.ndarray  # (m,) int64 node ids
    edge_dst: np.ndarray  # (m,) int64 node ids
    edge_length: np.ndarray  # (m,) float64

    @property
    def n_nodes(self) -> int:
        return len(self.node_ids)

    @property
    def n_edges(self) -> int:
        return len(self.edge_src)

    @cached_property
    def index(self) -> dict[int, int]:
        """node_id -> row index."""
        return {int(nid): i for i, nid in enumerate(self.node_ids)}

    def position_of(self, node_id: int) -> tuple[float, float]:
        x, y = self.positions[self.index[node_id]]
        return float(x), float(y)

    @cached_property
    def _edge_rows(self) -> tuple[np.ndarray, np.ndarray]:
        """Edges as (src_row, dst_row) index arrays."""
        lut = self.index
        src = np.fromiter((lut[int(s)] for s in self.edge_src), dtype=np.int64, count=self.n_edges)
        dst = np.fromiter((lut[int(d)] for d in self.edge_dst), dtype=np.int64, count=self.n_edges)
        return src, dst

    def to_csv(self, nodes_path: str | Path, edges_path: str | Path) -> None:
        """Write the two-file form read back by load_graph."""
        with open(nodes_path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["node_id", "x", "y"])
            for nid, (x, y) in zip(self.node_ids, self.positions):
                w.writerow([int(nid), repr(float(x)), repr(float(y))])
        with open(edges_path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["src", "dst", "length"])
            for s, d, l in zip(self.edge_src, self.edge_dst, self.edge_length):
                w.writerow([int(s), int(d), repr(float(l))])


@dataclass(frozen=True)
class LaplacianMatrix:
    """Sparse symmetric Laplacian; row i corresponds to ``node_ids[i]``.

    Off-diagonal entries are -1/length, diagonals the sum of absolute
    off-diagonal row entries, so rows sum to zero and the matrix is PSD.
    """

    node_ids: np.ndarray
    matrix: sp.csr_matrix

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def make_graph(
    nodes: Iterable[tuple[int, float, float]],
    edges: Iterable[tuple[int, int, float]],
) -> SpatialGraph:
    """Build a validated SpatialGraph from in-memory rows.

    Applies the ingestion rules: duplicate undirected edges collapse to the
    minimum length, self-loops are dropped, lengths are clamped up to
    EPS_LEN, and edge endpoints must reference known nodes.
    """
    node_rows = sorted(nodes, key=lambda r: r[0])
    if not node_rows:
        raise EmptyInputError("graph has no nodes")
    ids = np.array([r[0] for r in node_rows], dtype=np.int64)
    if len(np.unique(ids)) != len(ids):
        dupes = ids[:-1][ids[1:] == ids[:-1]]
        raise IntegrityError(f"duplicate node_id {int(dupes[0])}")
    positions = np.array([[r[1], r[2]] for r in node_rows], dtype=np.float64)
    known = set(int(i) for i in ids)

    best: dict[tuple[int, int], float] = {}
    for src, dst, length in edges:
        if src not in known or dst not in known:
            missing = src if src not in known else dst
            raise IntegrityError(f"edge ({src}, {dst}) references unknown node {missing}")
        if src == dst:
            continue  # self-loops contribute nothing to the pairwise term
        key = (src, dst) if src < dst else (dst, src)
        length = max(float(length), EPS_LEN)
        prev = best.get(key)
        if prev is None or length < prev:
            best[key] = length

    pairs = sorted(best)
    edge_src = np.array([p[0] for p in pairs], dtype=np.int64)
    edge_dst = np.array([p[1] for p in pairs], dtype=np.int64)
    edge_length = np.array([best[p] for p in pairs], dtype=np.float64)
    return SpatialGraph(ids, positions, edge_src, edge_dst, edge_length)


def _open(source: Source):
    if isinstance(source, (str, Path)):
        return open(source, "r", newline="", encoding="utf-8"), True
    return source, False


def _read_rows(source: Source, columns: tuple[str, ...], kinds: str) -> list[tuple]:
    """Parse a headered CSV into typed tuples; kinds is 'i' or 'f' per column."""
    f, owned = _open(source)
    try:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"missing header row (expected {','.join(columns)})", line=1)
        header = [h.strip() for h in header]
        if header != list(columns):
            raise ParseError(
                f"bad header {','.join(header)!r}, expected {','.join(columns)!r}", line=1
            )
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            if not raw or (len(raw) == 1 and not raw[0].strip()):
                continue  # ignore blank lines
            if len(raw) != len(columns):
                raise ParseError(f"expected {len(columns)} fields, got {len(raw)}", line=lineno)
            try:
                rows.append(
                    tuple(
                        int(cell) if kind == "i" else float(cell)
                        for cell, kind in zip(raw, kinds)
                    )
                )
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno) from None
        return rows
    finally:
        if owned:
            f.close()


def load_graph(nodes_source: Source, edges_source: Source) -> SpatialGraph:
    """Load and validate a graph from nodes/edges CSV files or streams.

    Formats: nodes ``node_id,x,y``; edges ``src,dst,length``.
    """
    node_rows = _read_rows(nodes_source, ("node_id", "x", "y"), "iff")
    edge_rows = _read_rows(edges_source, ("src", "dst", "length"), "iif")
    return make_graph(node_rows, edge_rows)


def load_graph_text(nodes_text: str, edges_text: str) -> SpatialGraph:
    return load_graph(io.StringIO(nodes_text), io.StringIO(edges_text))


def build_laplacian(g: SpatialGraph) -> LaplacianMatrix:
    """Assemble the length-weighted Laplacian: off-diagonals -1/length,
    diagonals the absolute row sums.  Zero entries are not stored."""
    n = g.n_nodes
    src, dst = g._edge_rows
    w = 1.0 / g.edge_length
    rows = np.concatenate([src, dst, src, dst])
    cols = np.concatenate([dst, src, src, dst])
    vals = np.concatenate([-w, -w, w, w])
    mat = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
    mat.sum_duplicates()
    mat.eliminate_zeros()
    return LaplacianMatrix(g.node_ids, mat)


def connected_components(g: SpatialGraph) -> list[tuple[int, ...]]:
    """Partition node_ids into connected components.

    Components come back largest first; equal sizes tie-break by the
    smallest contained node_id.  Nodes within a component are ascending.
    """
    n = g.n_nodes
    src, dst = g._edge_rows
    adj = sp.coo_matrix(
        (np.ones(len(src)), (src, dst)), shape=(n, n)
    ).tocsr()
    n_comp, labels = _cc(adj, directed=False)
    groups: list[list[int]] = [[] for _ in range(n_comp)]
    for row, lab in enumerate(labels):
        groups[lab].append(int(g.node_ids[row]))
    groups.sort(key=lambda grp: (-len(grp), grp[0]))
    return [tuple(grp) for grp in groups]
