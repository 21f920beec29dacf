"""Directed-graph algorithms on Engel graphs.

Vertices of a :class:`Digraph` are local ids ``0..n-1``; ``labels`` maps them
back to element indices.  Rows come from an oracle and are memoized within a
byte budget, or materialized as a dense boolean matrix for small graphs.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from . import kernels
from .config import get_config
from .engel import GAMMA, EngelGraph, GraphMode, graph_handle, lengths, vertex_mask
from .group import Group


class Marker(str, Enum):
    UNREACHABLE = "unreachable"
    NOT_COMPUTED = "not computed"

    def __str__(self):
        return self.value


UNREACHABLE = Marker.UNREACHABLE
NOT_COMPUTED = Marker.NOT_COMPUTED


class Digraph:
    """Loop-free digraph given by an out-row oracle (and optionally an in-row one).

    ``sources`` lists vertices whose eccentricities cover every vertex up to
    automorphism (class representatives for Engel graphs); it defaults to all.
    """

    def __init__(self, n: int, row_fn, in_row_fn=None, labels=None, sources=None,
                 memory_budget: int | None = None):
        self.n = int(n)
        self._row_fn = row_fn
        self._in_row_fn = in_row_fn
        self.labels = np.arange(self.n, dtype=np.int64) if labels is None else np.asarray(labels, dtype=np.int64)
        self.sources = np.arange(self.n, dtype=np.int64) if sources is None else np.asarray(sources, dtype=np.int64)
        self._budget = get_config().memory_budget if memory_budget is None else memory_budget
        self._used = 0
        self._rows: dict = {}
        self._in_rows: dict = {}
        self._csr = None
        self._csr_t = None
        self._dense = None

    # -- constructors --------------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges) -> "Digraph":
        out = [set() for _ in range(n)]
        for u, v in edges:
            if u != v:
                out[u].add(v)
        rows = [np.array(sorted(s), dtype=np.int64) for s in out]
        return cls(n, lambda i: rows[i])

    @classmethod
    def complete(cls, k: int) -> "Digraph":
        allv = np.arange(k, dtype=np.int64)
        return cls(k, lambda i: allv[allv != i])

    # -- rows ----------------------------------------------------------------
    def _memo(self, store: dict, key: int, row: np.ndarray) -> np.ndarray:
        if self._used + row.nbytes <= self._budget:
            store[key] = row
            self._used += row.nbytes
        return row

    def out_row(self, i: int) -> np.ndarray:
        row = self._rows.get(i)
        if row is None:
            row = self._memo(self._rows, i, np.asarray(self._row_fn(i), dtype=np.int64))
        return row

    def in_row(self, i: int) -> np.ndarray:
        if self._in_row_fn is None:
            if self._csr_t is None:
                self._csr_t = self.csr().T.tocsr()
            t = self._csr_t
            return t.indices[t.indptr[i]:t.indptr[i + 1]].astype(np.int64)
        row = self._in_rows.get(i)
        if row is None:
            row = self._memo(self._in_rows, i, np.asarray(self._in_row_fn(i), dtype=np.int64))
        return row

    def row(self, i: int, direction: str = "out") -> np.ndarray:
        return self.out_row(i) if direction == "out" else self.in_row(i)

    def csr(self) -> csr_matrix:
        """All out-rows as a CSR matrix (computes every row once)."""
        if self._csr is None:
            rows = [self.out_row(i) for i in range(self.n)]
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            indptr[1:] = np.cumsum([len(r) for r in rows])
            indices = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
            data = np.ones(len(indices), dtype=np.int8)
            self._csr = csr_matrix((data, indices, indptr), shape=(self.n, self.n))
        return self._csr

    def dense(self) -> np.ndarray:
        """Boolean adjacency matrix; only for graphs under the dense threshold."""
        if self.n > get_config().dense_threshold:
            raise MemoryError(f"{self.n} vertices exceed the dense threshold")
        if self._dense is None:
            self._dense = self.csr().toarray().astype(bool)
        return self._dense

    def n_edges(self) -> int:
        return int(self.csr().nnz)

    def edges(self):
        c = self.csr().tocoo()
        order = np.lexsort((c.col, c.row))
        return np.stack([c.row[order], c.col[order]], axis=1)


def engel_digraph(g: Group, mode: GraphMode = GAMMA, equivariance: bool | None = None) -> Digraph:
    """The Engel graph of a stored-table group as a :class:`Digraph`."""
    key = ("digraph", mode, equivariance)
    if key in g._cache:
        return g._cache[key]
    G: EngelGraph = graph_handle(g, mode, equivariance)
    verts = G.vertices
    pos = np.full(G.table.order, -1, dtype=np.int64)
    pos[verts] = np.arange(len(verts))
    if G.equivariance:
        _, reps, _ = G.table.classes()
        sources = pos[reps[G.mask[reps]]]
    else:
        sources = None
    d = Digraph(
        len(verts),
        lambda i: pos[G.out_row(verts[i])],
        lambda i: pos[G.in_row(verts[i])],
        labels=verts,
        sources=sources,
    )
    d.handle = G
    g._cache[key] = d
    return d


def _as_digraph(obj, mode=GAMMA, equivariance=None) -> Digraph:
    return obj if isinstance(obj, Digraph) else engel_digraph(obj, mode, equivariance)


# -- strong components --------------------------------------------------------

@dataclass
class SccResult:
    comp: np.ndarray  # component id per local vertex
    count: int
    condensation: np.ndarray  # (k, 2) array of component edges

    def components(self) -> list[np.ndarray]:
        order = np.argsort(self.comp, kind="stable")
        bounds = np.searchsorted(self.comp[order], np.arange(self.count + 1))
        return [order[bounds[i]:bounds[i + 1]] for i in range(self.count)]

    def partition(self) -> set:
        return {frozenset(c.tolist()) for c in self.components()}


def _tarjan(indptr, indices):
    comp, count = kernels.tarjan_csr(
        np.ascontiguousarray(indptr, dtype=np.int64), np.ascontiguousarray(indices, dtype=np.int64))
    return np.asarray(comp, dtype=np.int64), int(count)


def _condensation(comp, csr) -> np.ndarray:
    c = csr.tocoo()
    a, b = comp[c.row], comp[c.col]
    keep = a != b
    if not keep.any():
        return np.zeros((0, 2), dtype=np.int64)
    pairs = np.unique(np.stack([a[keep], b[keep]], axis=1), axis=0)
    return pairs


def scc(d, mode: GraphMode = GAMMA, clusters: np.ndarray | None = None) -> SccResult:
    """Strong components; ids run in reverse topological order (sinks first).

    With ``clusters`` (a partition of vertices known to lie inside single
    components) Tarjan runs on the cluster quotient.
    """
    d = _as_digraph(d, mode)
    csr = d.csr()
    if clusters is None:
        comp, count = _tarjan(csr.indptr, csr.indices)
    else:
        clusters = np.asarray(clusters, dtype=np.int64)
        k = int(clusters.max()) + 1 if d.n else 0
        c = csr.tocoo()
        a, b = clusters[c.row], clusters[c.col]
        keep = a != b
        q = csr_matrix((np.ones(int(keep.sum()), dtype=np.int8), (a[keep], b[keep])), shape=(k, k))
        q.sum_duplicates()
        q.sort_indices()
        qcomp, count = _tarjan(q.indptr, q.indices)
        comp = qcomp[clusters]
    return SccResult(comp, count, _condensation(comp, csr))


# -- reachability -------------------------------------------------------------

def reachable(d: Digraph, start: int, direction: str = "out", stop_when_all: bool = True,
              clusters: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask of vertices reachable from ``start`` (or reaching it, for "in")."""
    seen = np.zeros(d.n, dtype=bool)
    members = None
    if clusters is not None:
        order = np.argsort(clusters, kind="stable")
        bounds = np.searchsorted(clusters[order], np.arange(clusters.max() + 2))
        members = (order, bounds)
    queue = deque()
    count = 0

    def visit(vs):
        nonlocal count
        vs = vs[~seen[vs]]
        if members is not None and vs.size:
            cl = np.unique(clusters[vs])
            vs = np.concatenate([members[0][members[1][c]:members[1][c + 1]] for c in cl])
            vs = vs[~seen[vs]]
        seen[vs] = True
        count += len(vs)
        queue.extend(vs.tolist())

    visit(np.array([start], dtype=np.int64))
    while queue and not (stop_when_all and count == d.n):
        v = queue.popleft()
        visit(d.row(v, direction))
    return seen


def is_strongly_connected(g, mode: GraphMode = GAMMA, equivariance: bool | None = None,
                          condense: bool = False) -> bool:
    """Forward and backward reachability from one vertex, stopping early once
    every vertex is reached.  An empty graph is reported as not connected."""
    d = _as_digraph(g, mode, equivariance)
    if d.n == 0:
        return False
    clusters = seed_condensation(g, mode) if condense and isinstance(g, Group) else None
    start = int(d.sources[0]) if len(d.sources) else 0
    if not reachable(d, start, "out", clusters=clusters).all():
        return False
    return bool(reachable(d, start, "in", clusters=clusters).all())


def is_weakly_connected(d, mode: GraphMode = GAMMA) -> bool:
    d = _as_digraph(d, mode)
    if d.n == 0:
        return False
    ncomp, _ = connected_components(d.csr(), directed=True, connection="weak")
    return ncomp == 1


def _eccentricities(csr, sources, directed: bool):
    if len(sources) == 0:
        return np.zeros(0)
    dist = shortest_path(csr, directed=directed, unweighted=True, indices=np.asarray(sources))
    return np.atleast_2d(dist).max(axis=1)


def undirected_diameter(d, mode: GraphMode = GAMMA):
    """Diameter of the symmetrized graph; UNREACHABLE if disconnected."""
    d = _as_digraph(d, mode)
    if d.n == 0:
        return 0
    if d.n > get_config().diameter_limit:
        return NOT_COMPUTED
    ecc = _eccentricities(d.csr(), d.sources, directed=False)
    m = ecc.max()
    return UNREACHABLE if np.isinf(m) else int(m)


def directed_diameter(d, mode: GraphMode = GAMMA):
    """Largest directed distance; UNREACHABLE unless strongly connected."""
    d = _as_digraph(d, mode)
    if d.n == 0:
        return 0
    if d.n > get_config().diameter_limit:
        return NOT_COMPUTED
    ecc = _eccentricities(d.csr(), d.sources, directed=True)
    m = ecc.max()
    return UNREACHABLE if np.isinf(m) else int(m)


# -- balls --------------------------------------------------------------------

@dataclass
class BallResult:
    members: list  # element indices (stored table) or elements (streaming)
    radius: int
    complete: bool
    layers: list

    def __len__(self):
        return len(self.members)

    def __contains__(self, item):
        return item in self._set

    @property
    def _set(self):
        return set(self.members)


def ball(g: Group, mode: GraphMode, x, radius: int, direction: str = "in",
         budget_seconds: float | None = None) -> BallResult:
    """``B_i({x})``: vertices at directed distance at most ``radius`` from x.

    Distances are measured towards x (``d(g, x) <= i``; direction "in"),
    matching the usage where ``g`` is in ``B_1({x})`` iff ``[g,_n x] = 1``.
    Pass ``direction="out"`` for the forward ball.  Groups without a stored
    table must provide ``neighbor_scan(elem, direction)``.  When the budget
    runs out the partial ball is returned with ``complete=False``.
    """
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    if hasattr(g, "neighbor_scan") and not g.has_table:
        return _ball_streaming(g, mode, x, radius, direction, deadline)
    t = g.table
    xi = t.index(x) if not isinstance(x, (int, np.integer)) else int(x)
    if not vertex_mask(g, mode)[xi]:
        from .engel import VertexError

        raise VertexError(f"element {xi} is not a vertex of the {mode} graph")
    G = graph_handle(g, mode)
    seen = {xi}
    layers = [[xi]]
    frontier = [xi]
    for _ in range(radius):
        nxt = set()
        for v in frontier:
            if deadline is not None and time.monotonic() > deadline:
                return BallResult(sorted(seen), len(layers) - 1, False, layers)
            nxt.update(int(w) for w in G.row(v, direction).tolist() if w not in seen)
        if not nxt:
            break
        seen |= nxt
        frontier = sorted(nxt)
        layers.append(frontier)
    return BallResult(sorted(seen), radius, True, layers)


def _ball_streaming(g, mode, x, radius, direction, deadline) -> BallResult:
    seen = {x}
    layers = [[x]]
    frontier = [x]
    for _ in range(radius):
        nxt = set()
        for v in frontier:
            if deadline is not None and time.monotonic() > deadline:
                return BallResult(sorted(seen), len(layers) - 1, False, layers)
            nxt.update(w for w in g.neighbor_scan(v, direction, mode) if w not in seen)
        if not nxt:
            break
        seen |= nxt
        frontier = sorted(nxt)
        layers.append(frontier)
    return BallResult(sorted(seen), radius, True, layers)


# -- condensation seeds -------------------------------------------------------

def seed_condensation(g: Group, mode: GraphMode = GAMMA) -> np.ndarray:
    """Cluster label per local vertex; each cluster lies inside one strong component.

    Commuting vertices are mutually adjacent in every mode, so components of
    the commuting graph are merged.  Non-identity vertices of a Sylow
    subgroup are mutually adjacent in every mode without a bound on n; for
    ``gamma_n`` the merge is applied only when checked exhaustively.
    """
    from .structure import sylow

    key = ("seed_condensation", mode)
    if key in g._cache:
        return g._cache[key]
    t = g.table
    d = engel_digraph(g, mode)
    verts = d.labels
    pos = np.full(t.order, -1, dtype=np.int64)
    pos[verts] = np.arange(len(verts))
    class_id, reps, conjugator = t.classes()
    allidx = t.all_indices()
    mask = vertex_mask(g, mode)
    rows_a, rows_b = [], []
    for r in reps.tolist():
        if not mask[r]:
            continue
        rv = np.full(t.order, r)
        cent = allidx[(t.mul(allidx, rv) == t.mul(rv, allidx)) & mask]
        members = np.nonzero(class_id == class_id[r])[0]
        for v in members.tolist():
            c = cent if v == r else t.conj_many(cent, int(conjugator[v]))
            rows_a.append(np.full(len(c), pos[v]))
            rows_b.append(pos[c])
    n = len(verts)
    for p in _primes(t.order):
        P = sylow(g, p)
        pv = P.indices[mask[P.indices]]
        if len(pv) < 2:
            continue
        if mode.kind == "gamma_n":
            L = lengths(t, pv[:, None], pv[None, :])
            off = ~np.eye(len(pv), dtype=bool)
            if not mode.accepts(L)[off].all():
                continue
        rows_a.append(np.full(len(pv) - 1, pos[pv[0]]))
        rows_b.append(pos[pv[1:]])
    if rows_a:
        a = np.concatenate(rows_a)
        b = np.concatenate(rows_b)
        m = csr_matrix((np.ones(len(a), dtype=np.int8), (a, b)), shape=(n, n))
        _, labels = connected_components(m, directed=False)
    else:
        labels = np.arange(n)
    g._cache[key] = labels.astype(np.int64)
    return g._cache[key]


def _primes(n: int) -> list[int]:
    from .fields import factorize

    return sorted(factorize(n))
