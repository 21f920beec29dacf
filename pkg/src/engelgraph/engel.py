"""Engel-word evaluation and the edge relations of the Engel graphs.

Notation: ``[x,_0 y] = x`` and ``[x,_{i+1} y] = [[x,_i y], y]``.  There is an
edge ``x -> y`` when ``[x,_n y] = 1`` for some ``n >= 1`` (modes ``gamma``,
``lambda``, ``delta``) or for the fixed ``n`` (mode ``gamma_n``).  Once the
iteration repeats a non-identity value it can never reach the identity, so
repeat detection decides adjacency exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .config import get_config
from .elements import GroupElement, comm
from .group import ElementTable, Group


@dataclass(frozen=True)
class EngelTrace:
    """Outcome of iterating ``z -> [z, y]`` from ``z = [x, y]``.

    ``trail`` holds the distinct non-identity commutators in visiting order;
    ``trail_length`` counts them plus the identity seed, so an edge with
    ``[x,_n y] = 1`` and ``[x,_{n-1} y] != 1`` has ``trail_length == n``.
    """

    terminal: GroupElement
    trail: tuple = field(repr=False)

    @property
    def adjacency(self) -> bool:
        return self.terminal.is_identity()

    @property
    def trail_length(self) -> int:
        return len(self.trail) + 1


def eng(x: GroupElement, y: GroupElement) -> EngelTrace:
    """Reference evaluator: explicit visited set keyed by canonical encoding."""
    seen = {x.identity().encode()}
    trail = []
    z = comm(x, y)
    while z.encode() not in seen:
        seen.add(z.encode())
        trail.append(z)
        z = comm(z, y)
    return EngelTrace(z, tuple(trail))


@dataclass(frozen=True)
class GraphMode:
    kind: str = "gamma"
    n: int | None = None

    def __post_init__(self):
        if self.kind not in ("gamma", "gamma_n", "lambda", "delta"):
            raise ValueError(f"unknown graph mode {self.kind!r}")
        if self.kind == "gamma_n":
            if self.n is None or self.n < 1:
                raise ValueError("gamma_n needs n >= 1")
        elif self.n is not None:
            object.__setattr__(self, "n", None)

    @classmethod
    def parse(cls, kind: str, n: int | None = None) -> "GraphMode":
        return cls(kind, n if kind == "gamma_n" else None)

    def accepts(self, length):
        """Edge test on Engel lengths (0 = never reaches the identity)."""
        length = np.asarray(length)
        if self.kind == "gamma_n":
            return (length > 0) & (length <= self.n)
        return length > 0

    def __str__(self):
        return f"gamma_{self.n}" if self.kind == "gamma_n" else self.kind


GAMMA = GraphMode("gamma")
LAMBDA = GraphMode("lambda")
DELTA = GraphMode("delta")


def gamma_n(n: int) -> GraphMode:
    return GraphMode("gamma_n", n)


class VertexError(ValueError):
    pass


def engel_length(x: GroupElement, y: GroupElement) -> int:
    """Least ``n >= 1`` with ``[x,_n y] = 1``; 0 if there is none."""
    tr = eng(x, y)
    return tr.trail_length if tr.adjacency else 0


def edge(x: GroupElement, y: GroupElement, mode: GraphMode = GAMMA, group: Group | None = None) -> bool:
    if x == y:
        raise VertexError("loops are excluded: x and y must differ")
    if group is not None:
        vmask = vertex_mask(group, mode)
        t = group.table
        if not (vmask[t.index(x)] and vmask[t.index(y)]):
            raise VertexError(f"{x!r} or {y!r} is not a vertex of the {mode} graph")
    return bool(mode.accepts(engel_length(x, y)))


# -- vectorized evaluation over stored tables ---------------------------------

def lengths(t: ElementTable, xs, ys) -> np.ndarray:
    """Engel lengths for index pairs (broadcast), via the selected kernel."""
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    xs, ys = np.broadcast_arrays(xs, ys)
    return kernels.engel_lengths(
        t.perms, np.ascontiguousarray(xs.ravel()), np.ascontiguousarray(ys.ravel()),
        get_config().n_threads,
    ).reshape(xs.shape)


def _cache(g: Group) -> dict:
    return g._cache


def vertex_mask(g: Group, mode: GraphMode) -> np.ndarray:
    key = ("vertex_mask", mode)
    c = _cache(g)
    if key not in c:
        t = g.table
        mask = np.ones(t.order, dtype=bool)
        if mode.kind == "gamma":
            from .structure import hypercenter

            mask[hypercenter(g).indices] = False
        elif mode.kind == "gamma_n":
            mask[universal_indices(g, mode.n)] = False
        elif mode.kind == "delta":
            mask[t.identity] = False
        c[key] = mask
    return c[key]


def vertex_set(g: Group, mode: GraphMode) -> np.ndarray:
    return np.nonzero(vertex_mask(g, mode))[0]


def universal_indices(g: Group, n: int) -> np.ndarray:
    """``I_n = I_{r,n} & I_{l,n}`` for the n-th Engel word, by exhaustion.

    Both sets are unions of conjugacy classes, so one representative per
    class is tested against every element.
    """
    t = g.table
    class_id, reps, _ = t.classes()
    allidx = t.all_indices()
    keep = []
    for r in reps.tolist():
        right = lengths(t, r, allidx)  # [r,_n x] = 1 for all x
        if not np.all((right > 0) & (right <= n)):
            continue
        left = lengths(t, allidx, r)  # [x,_n r] = 1 for all x
        if np.all((left > 0) & (left <= n)):
            keep.append(r)
    keep_mask = np.isin(class_id, np.searchsorted(reps, keep)) if keep else np.zeros(t.order, bool)
    return np.nonzero(keep_mask)[0]


class EngelGraph:
    """Engel graph of a stored-table group in one mode (the graph handle).

    Vertices are element indices.  Rows are produced on demand by the Engel
    kernel; with ``equivariance`` the rows of a conjugate ``r^h`` are the
    conjugates of the representative's row.
    """

    def __init__(self, g: Group, mode: GraphMode = GAMMA, equivariance: bool | None = None):
        self.group = g
        self.mode = mode
        self.table = g.table
        self.equivariance = get_config().equivariance if equivariance is None else equivariance
        self.mask = vertex_mask(g, mode)
        self.vertices = np.nonzero(self.mask)[0]
        self._rep_rows: dict = {}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def _direct(self, v: int, direction: str) -> np.ndarray:
        t = self.table
        targets = self.vertices
        if direction == "out":
            L = lengths(t, v, targets)
        else:
            L = lengths(t, targets, v)
        ok = self.mode.accepts(L) & (targets != v)
        return targets[ok]

    def row(self, v: int, direction: str = "out") -> np.ndarray:
        """Sorted element indices of the out- or in-neighbours of vertex v."""
        v = int(v)
        if not self.mask[v]:
            raise VertexError(f"element {v} is not a vertex of the {self.mode} graph")
        if not self.equivariance:
            return self._direct(v, direction)
        class_id, reps, conjugator = self.table.classes()
        r = int(reps[class_id[v]])
        key = (r, direction)
        base = self._rep_rows.get(key)
        if base is None:
            base = self._rep_rows[key] = self._direct(r, direction)
        if v == r:
            return base
        return np.sort(self.table.conj_many(base, int(conjugator[v])))

    def out_row(self, v: int) -> np.ndarray:
        return self.row(v, "out")

    def in_row(self, v: int) -> np.ndarray:
        return self.row(v, "in")

    def has_edge(self, x: int, y: int) -> bool:
        if x == y:
            return False
        L = lengths(self.table, x, y)
        return bool(self.mode.accepts(L))


def out_neighbors(x, g: Group, mode: GraphMode = GAMMA, equivariance: bool | None = None) -> np.ndarray:
    G = graph_handle(g, mode, equivariance)
    xi = g.index(x) if isinstance(x, GroupElement) else int(x)
    return G.out_row(xi)


def in_neighbors(x, g: Group, mode: GraphMode = GAMMA, equivariance: bool | None = None) -> np.ndarray:
    G = graph_handle(g, mode, equivariance)
    xi = g.index(x) if isinstance(x, GroupElement) else int(x)
    return G.in_row(xi)


def graph_handle(g: Group, mode: GraphMode = GAMMA, equivariance: bool | None = None) -> EngelGraph:
    eq = get_config().equivariance if equivariance is None else equivariance
    key = ("graph", mode, eq)
    c = _cache(g)
    if key not in c:
        c[key] = EngelGraph(g, mode, eq)
    return c[key]
