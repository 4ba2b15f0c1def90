"""Fiedler vector computation and the node ordering derived from it.

The ordering is what turns a spatial graph into OD-plot axes: sorting the
entries of the Laplacian's second eigenvector numbers the nodes so that
graph-adjacent nodes get nearly consecutive ranks.  Two solver routes are
provided: a dense symmetric eigendecomposition for small problems (which
doubles as the test oracle) and a Lanczos iteration with full
reorthogonalization for large ones.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _cc

from .errors import (
    ConvergenceError,
    DisconnectedGraphError,
    NormalizationError,
    ParseError,
    SingletonGraphError,
)
from .graph import LaplacianMatrix, SpatialGraph, build_laplacian
from .graph import connected_components as graph_components

#: Largest n handled by the dense eigendecomposition path.
DENSE_LIMIT = 2000
#: Accepted eigenpair must satisfy ||Lv - λv|| <= RESIDUAL_TOL * max(1, λ).
RESIDUAL_TOL = 1e-8
#: Iterative solver gives up after this many matrix-vector products per node.
ITERATION_CAP_FACTOR = 50
#: Unit-norm tolerance for rayleigh_quotient inputs.
UNIT_NORM_TOL = 1e-9

_LANCZOS_SEED = 0x0DF10
_MAX_BASIS = 300


@dataclass(frozen=True)
class FiedlerResult:
    """Second-smallest eigenpair of a connected graph's Laplacian.

    ``vector`` is unit-norm, orthogonal to the constant vector, and
    sign-canonicalized (largest-magnitude entry positive, first such entry
    winning ties).
    """

    lambda2: float
    vector: np.ndarray


@dataclass(frozen=True)
class ComponentOrdering:
    """One connected component and its eigen result (None for singletons
    and for orderings loaded from disk, where only values survive)."""

    nodes: tuple[int, ...]  # ascending node ids
    result: FiedlerResult | None


@dataclass(frozen=True)
class FiedlerOrdering:
    """node_id -> rank bijection onto 0..n-1, one contiguous block per
    component, components concatenated largest-first."""

    rank: dict[int, int]
    components: tuple[ComponentOrdering, ...]
    values: dict[int, float]  # node_id -> fiedler entry (0.0 for singletons)

    @property
    def n(self) -> int:
        return len(self.rank)

    def rows(self) -> list[tuple[int, int, int, float]]:
        """(node_id, rank, component, fiedler_value) rows, node_id ascending."""
        comp_of = {}
        for ci, comp in enumerate(self.components):
            for nid in comp.nodes:
                comp_of[nid] = ci
        return [
            (nid, self.rank[nid], comp_of[nid], self.values[nid])
            for nid in sorted(self.rank)
        ]

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["node_id", "rank", "component", "fiedler_value"])
            for nid, rank, comp, value in self.rows():
                w.writerow([nid, rank, comp, repr(float(value))])

    @staticmethod
    def from_csv(path: str | Path) -> "FiedlerOrdering":
        rank: dict[int, int] = {}
        values: dict[int, float] = {}
        comp_nodes: dict[int, list[int]] = {}
        with open(path, "r", newline="", encoding="utf-8") as f:
            reader = csv.reader(f)
            header = next(reader, None)
            if header != ["node_id", "rank", "component", "fiedler_value"]:
                raise ParseError("bad ordering header", line=1)
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                try:
                    nid, rk, comp, val = int(row[0]), int(row[1]), int(row[2]), float(row[3])
                except (ValueError, IndexError) as exc:
                    raise ParseError(str(exc), line=lineno) from None
                rank[nid] = rk
                values[nid] = val
                comp_nodes.setdefault(comp, []).append(nid)
        components = tuple(
            ComponentOrdering(nodes=tuple(sorted(comp_nodes[ci])), result=None)
            for ci in sorted(comp_nodes)
        )
        return FiedlerOrdering(rank=rank, components=components, values=values)


def _check_structure(L: LaplacianMatrix) -> None:
    if L.n == 1:
        raise SingletonGraphError("one-node graph has no Fiedler vector")
    n_comp, _ = _cc(L.matrix, directed=False)
    if n_comp > 1:
        raise DisconnectedGraphError(
            f"graph has {n_comp} components, so the zero eigenvalue has "
            f"multiplicity {n_comp}; order each component separately"
        )


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    # Entries within rounding noise of the max magnitude count as tied, so
    # symmetric vectors canonicalize identically on every solver route; the
    # lowest index (== lowest node_id, rows are id-sorted) wins the tie.
    mags = np.abs(v)
    lead = int(np.argmax(mags >= (1.0 - 1e-9) * mags.max()))
    if v[lead] < 0:
        return -v
    return v


def _finalize(mat: sp.csr_matrix, lam: float, v: np.ndarray) -> FiedlerResult:
    v = v - v.sum() / len(v)  # exact orthogonality to the constant vector
    v = v / np.linalg.norm(v)
    v = _canonical_sign(v)
    return FiedlerResult(lambda2=max(float(lam), 0.0), vector=v)


def _residual_ok(mat: sp.csr_matrix, lam: float, v: np.ndarray) -> bool:
    return float(np.linalg.norm(mat @ v - lam * v)) <= RESIDUAL_TOL * max(1.0, lam)


def _dense_fiedler(mat: sp.csr_matrix) -> tuple[float, np.ndarray]:
    vals, vecs = scipy.linalg.eigh(mat.toarray(), subset_by_index=(1, 1))
    return float(vals[0]), vecs[:, 0]


def _smallest_ritz(alphas: np.ndarray, betas: np.ndarray) -> tuple[float, np.ndarray]:
    if len(alphas) == 1:
        return float(alphas[0]), np.ones(1)
    vals, vecs = scipy.linalg.eigh_tridiagonal(
        alphas, betas, select="i", select_range=(0, 0)
    )
    return float(vals[0]), vecs[:, 0]


def _lanczos_fiedler(mat: sp.csr_matrix) -> tuple[float, np.ndarray]:
    """Smallest eigenpair of L restricted to the complement of the constant
    vector, via Lanczos with full reorthogonalization and restarts."""
    n = mat.shape[0]
    ones = np.full(n, 1.0 / np.sqrt(n))
    budget = ITERATION_CAP_FACTOR * n
    m_max = min(n - 1, _MAX_BASIS)
    scale = max(1.0, float(np.abs(mat.diagonal()).max()))
    rng = np.random.default_rng(_LANCZOS_SEED)

    def project(w: np.ndarray) -> np.ndarray:
        return w - (ones @ w) * ones

    q = project(rng.standard_normal(n))
    q /= np.linalg.norm(q)
    used = 0

    while True:
        Q = np.empty((n, m_max))
        Q[:, 0] = q
        alphas = np.empty(m_max)
        betas = np.empty(m_max)
        beta_prev = 0.0
        q_prev = np.zeros(n)
        for k in range(m_max):
            if used >= budget:
                raise ConvergenceError(
                    f"Fiedler solver exceeded {budget} iterations (n={n})"
                )
            w = mat @ Q[:, k]
            used += 1
            alpha = float(Q[:, k] @ w)
            alphas[k] = alpha
            w = w - alpha * Q[:, k] - beta_prev * q_prev
            for _ in range(2):  # full reorthogonalization, two passes
                w = project(w)
                w -= Q[:, : k + 1] @ (Q[:, : k + 1].T @ w)
            beta = float(np.linalg.norm(w))
            theta, s = _smallest_ritz(alphas[: k + 1], betas[:k])
            exhausted = beta <= 1e-13 * scale or k == m_max - 1
            if exhausted or beta * abs(s[-1]) <= 0.5 * RESIDUAL_TOL * max(1.0, theta):
                y = Q[:, : k + 1] @ s
                y = project(y)
                y /= np.linalg.norm(y)
                lam = float(y @ (mat @ y))  # Rayleigh refinement
                used += 1
                if _residual_ok(mat, lam, y):
                    return lam, y
                if exhausted:
                    q = y  # restart from the best Ritz vector
                    break
                # estimate was optimistic; keep extending this basis
            betas[k] = beta
            q_prev = Q[:, k]
            q = w / beta
            if k + 1 < m_max:
                Q[:, k + 1] = q


def fiedler_vector(L: LaplacianMatrix, method: str = "auto") -> FiedlerResult:
    """Compute the canonical Fiedler eigenpair of a connected Laplacian.

    ``method``: "auto" picks dense for n <= DENSE_LIMIT and Lanczos above;
    "dense" / "lanczos" force a route.  Deterministic for fixed input.
    """
    _check_structure(L)
    mat = L.matrix
    if method not in ("auto", "dense", "lanczos"):
        raise ValueError(f"unknown method {method!r}")
    use_dense = method == "dense" or (method == "auto" and L.n <= DENSE_LIMIT)
    if use_dense:
        lam, v = _dense_fiedler(mat)
        if not _residual_ok(mat, lam, v):
            lam, v = _lanczos_fiedler(mat)  # rescue badly scaled inputs
    else:
        lam, v = _lanczos_fiedler(mat)
    res = _finalize(mat, lam, v)
    if not _residual_ok(mat, res.lambda2, res.vector):
        raise ConvergenceError(
            f"eigenpair residual exceeds {RESIDUAL_TOL} * max(1, lambda2)"
        )
    return res


def value_order(values: np.ndarray, node_ids: np.ndarray) -> np.ndarray:
    """Indices sorting by ascending value; equal values sort by node id."""
    return np.lexsort((np.asarray(node_ids), np.asarray(values, dtype=np.float64)))


def order_nodes(
    g: SpatialGraph, L: LaplacianMatrix | None = None, method: str = "auto"
) -> FiedlerOrdering:
    """Rank all nodes: per-component Fiedler sort, components concatenated
    largest first (ties by smallest node id), singletons ranked directly."""
    if L is None:
        L = build_laplacian(g)
    comps = graph_components(g)
    rank: dict[int, int] = {}
    values: dict[int, float] = {}
    ordered_components: list[ComponentOrdering] = []
    offset = 0
    for comp in comps:
        if len(comp) == 1:
            nid = comp[0]
            rank[nid] = offset
            values[nid] = 0.0
            offset += 1
            ordered_components.append(ComponentOrdering(nodes=comp, result=None))
            continue
        ids = np.array(comp, dtype=np.int64)
        rows = [g.index[int(i)] for i in comp]
        sub = L.matrix[rows][:, rows].tocsr()
        result = fiedler_vector(LaplacianMatrix(ids, sub), method=method)
        order = value_order(result.vector, ids)
        for pos, j in enumerate(order):
            rank[int(ids[j])] = offset + pos
        for j, nid in enumerate(ids):
            values[int(nid)] = float(result.vector[j])
        offset += len(comp)
        ordered_components.append(ComponentOrdering(nodes=comp, result=result))
    return FiedlerOrdering(
        rank=rank, components=tuple(ordered_components), values=values
    )


def rayleigh_quotient(L: LaplacianMatrix, u: np.ndarray) -> float:
    """Edge-sum form of the spectral objective: sum over stored edges of
    |L_ij| (u_i - u_j)^2, equal to u'Lu for a graph Laplacian."""
    u = np.asarray(u, dtype=np.float64)
    norm = float(np.linalg.norm(u))
    if abs(norm - 1.0) > UNIT_NORM_TOL:
        raise NormalizationError(f"expected a unit vector, got norm {norm!r}")
    coo = L.matrix.tocoo()
    upper = coo.row < coo.col
    weights = -coo.data[upper]  # off-diagonals are negative
    diffs = u[coo.row[upper]] - u[coo.col[upper]]
    return float(np.sum(weights * diffs * diffs))
