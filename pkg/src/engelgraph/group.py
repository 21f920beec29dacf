"""Finite groups given by generators, with an enumerated element table.

Every stored-table group carries a faithful permutation representation
(``ElementTable.perms``, one row per element) so that products, inverses,
conjugates and lookups over many elements are vectorized numpy operations,
and the Engel kernels can work on rows directly.  Element indices follow the
canonical byte encoding order, so they are deterministic across runs.
"""

from __future__ import annotations

import threading
from collections import deque

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .config import get_config
from .elements import (
    AffineSemilinear,
    GroupElement,
    Matrix,
    Metacyclic,
    Perm,
)


class CapExceeded(RuntimeError):
    """The requested operation needs more elements than the configured cap."""

    def __init__(self, message: str, order: int | None = None):
        super().__init__(message)
        self.order = order


class ElementTable:
    """Stored element list plus its permutation representation."""

    def __init__(self, elements: list, perms: np.ndarray):
        self.elements = elements
        self.perms = np.ascontiguousarray(perms, dtype=np.int32)
        self.order, self.degree = self.perms.shape
        self.codes = {e.encode(): i for i, e in enumerate(elements)}
        self.generators: list[int] = []
        ident = np.arange(self.degree, dtype=np.int32)
        self._build_keys()
        self.identity = int(self.lookup(ident[None, :])[0])
        self.inverse = self.lookup(np.argsort(self.perms, axis=1).astype(np.int32))
        self._lock = threading.Lock()
        self._orders = None
        self._classes = None

    # -- lookup ------------------------------------------------------------
    def _build_keys(self):
        n, d = self.perms.shape
        base: list[int] = []
        keys = np.zeros(n, dtype=np.int64)
        if n > 1:
            limit = max(1, int(62 // np.log2(max(d, 2))))
            distinct = 1
            for pt in range(d):
                if len(base) >= limit:
                    break
                cand = keys * d + self.perms[:, pt]
                nd = len(np.unique(cand))
                if nd > distinct:
                    base.append(pt)
                    keys = cand
                    distinct = nd
                    if nd == n:
                        break
            if distinct != n:
                raise ValueError("permutation rows are not distinct (unfaithful action)")
        self.base = base
        self._mult = d ** np.arange(len(base) - 1, -1, -1, dtype=np.int64)
        self._key_order = np.argsort(keys, kind="stable")
        self._keys_sorted = keys[self._key_order]

    def row_keys(self, rows: np.ndarray) -> np.ndarray:
        if not self.base:
            return np.zeros(rows.shape[0], dtype=np.int64)
        return rows[:, self.base].astype(np.int64) @ self._mult

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Indices of permutation rows; rows must belong to the group."""
        rows = np.asarray(rows)
        if rows.ndim == 1:
            rows = rows[None, :]
        k = self.row_keys(rows)
        pos = np.searchsorted(self._keys_sorted, k)
        pos = np.minimum(pos, len(self._keys_sorted) - 1)
        if not np.array_equal(self._keys_sorted[pos], k):
            raise KeyError("permutation not in group")
        return self._key_order[pos]

    def index(self, elem: GroupElement) -> int:
        try:
            return self.codes[elem.encode()]
        except KeyError:
            raise KeyError(f"{elem!r} is not an element of this group") from None

    # -- vectorized arithmetic on indices ----------------------------------
    def compose(self, a, b) -> np.ndarray:
        """Rows of ``a * b`` (apply a then b) for index arrays a, b."""
        pa = self.perms[np.asarray(a)]
        pb = self.perms[np.asarray(b)]
        pa, pb = _broadcast_rows(pa, pb)
        return np.take_along_axis(pb, pa, axis=-1)

    def mul(self, a, b):
        scalar = np.ndim(a) == 0 and np.ndim(b) == 0
        out = self.lookup(self.compose(np.atleast_1d(a), np.atleast_1d(b)))
        return int(out[0]) if scalar else out

    def inv(self, a):
        out = self.inverse[a]
        return int(out) if np.ndim(a) == 0 else out

    def conj(self, a, h):
        """Index of ``h^-1 a h``."""
        return self.mul(self.mul(self.inv(h), a), h)

    def conj_many(self, a: np.ndarray, h: int) -> np.ndarray:
        """Conjugate an index array by a single element h."""
        a = np.asarray(a)
        if a.size == 0:
            return a.astype(np.int64)
        ph = self.perms[h]
        phi = self.perms[self.inverse[h]]
        rows = ph[self.perms[a][:, phi]]
        return self.lookup(rows)

    def comm(self, a, b):
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def all_indices(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    # -- derived data --------------------------------------------------------
    @property
    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.order
            out = np.zeros(n, dtype=np.int64)
            ident = np.arange(self.degree, dtype=np.int32)
            cur = self.perms.copy()
            k = 1
            while True:
                done = (cur == ident).all(axis=1) & (out == 0)
                out[done] = k
                if (out > 0).all():
                    break
                cur = np.take_along_axis(self.perms, cur, axis=1)
                k += 1
            self._orders = out
        return self._orders

    def classes(self):
        """Conjugacy classes as ``(class_id, reps, conjugator)``.

        ``reps[class_id[v]]`` is the least index in the class of ``v`` and
        ``conj(reps[class_id[v]], conjugator[v]) == v``.
        """
        with self._lock:
            if self._classes is None:
                self._classes = _compute_classes(self)
        return self._classes


def _broadcast_rows(pa, pb):
    if pa.shape[0] == pb.shape[0]:
        return pa, pb
    if pa.shape[0] == 1:
        return np.broadcast_to(pa, pb.shape), pb
    if pb.shape[0] == 1:
        return pa, np.broadcast_to(pb, pa.shape)
    raise ValueError("incompatible index arrays")


def _compute_classes(table: ElementTable, gens: list[int] | None = None):
    n = table.order
    if gens is None:
        gens = table.generators
    allidx = table.all_indices()
    conj_maps = [table.conj_many(allidx, s) for s in gens]
    right_maps = [table.mul(allidx, np.full(n, s)) for s in gens]
    if conj_maps:
        rows = np.concatenate([allidx] * len(conj_maps))
        cols = np.concatenate(conj_maps)
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
    else:
        labels = np.zeros(n, dtype=np.int64)
    # representatives: least index per component; ids ordered by representative
    first = np.full(labels.max() + 1, n, dtype=np.int64)
    np.minimum.at(first, labels, allidx)
    order = np.argsort(first)
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    class_id = relabel[labels]
    reps = first[order]
    conjugator = np.full(n, -1, dtype=np.int64)
    cm = [m.tolist() for m in conj_maps]
    rm = [m.tolist() for m in right_maps]
    conj_l = conjugator.tolist()
    for r in reps.tolist():
        conj_l[r] = table.identity
        queue = deque([r])
        while queue:
            u = queue.popleft()
            hu = conj_l[u]
            for c, rmul in zip(cm, rm):
                w = c[u]
                if conj_l[w] < 0:
                    conj_l[w] = rmul[hu]
                    queue.append(w)
    return class_id, reps, np.array(conj_l, dtype=np.int64)


class Group:
    """A finite group given by generators of one backend."""

    def __init__(self, generators, identity: GroupElement | None = None, name: str | None = None,
                 order_hint: int | None = None):
        generators = list(generators)
        if identity is None:
            if not generators:
                raise ValueError("trivial group needs an explicit identity")
            identity = generators[0].identity()
        for g in generators:
            identity._check(g)
        self.generators = generators
        self.identity = identity
        self.name = name
        self.order_hint = order_hint
        self.handles: dict = {}
        self._table: ElementTable | None = None
        self._lock = threading.Lock()
        self._cache: dict = {}

    def __repr__(self):
        return self.name or f"Group(<{len(self.generators)} generators>)"

    # -- enumeration -------------------------------------------------------
    @property
    def has_table(self) -> bool:
        return self._table is not None

    @property
    def order(self) -> int:
        if self._table is not None:
            return self._table.order
        if self.order_hint is not None:
            return self.order_hint
        return self.table.order

    @property
    def table(self) -> ElementTable:
        if self._table is None:
            with self._lock:
                if self._table is None:
                    self._table = self._build_table()
        return self._table

    def _build_table(self) -> ElementTable:
        cap = get_config().max_order_stored
        if self.order_hint is not None and self.order_hint > cap:
            raise CapExceeded(f"order {self.order_hint} exceeds stored-table cap {cap}", self.order_hint)
        elems, parent, via = _bfs_closure(self.generators, self.identity, cap)
        perm_order = sorted(range(len(elems)), key=lambda i: elems[i].encode())
        rank = np.empty(len(elems), dtype=np.int64)
        rank[np.array(perm_order, dtype=np.int64)] = np.arange(len(elems))
        sorted_elems = [elems[i] for i in perm_order]
        perms = None
        for domain_rows in _domain_candidates(self, elems):
            perms = _rows_from_tree(domain_rows, parent, via)
            if len(np.unique(perms, axis=0)) == len(elems):
                break
            perms = None
        if perms is None:
            perms = _regular_rows(self, elems, parent, via)
        table = ElementTable(sorted_elems, perms[np.array(perm_order, dtype=np.int64)])
        table.generators = [int(rank[_index_in(elems, g)]) for g in self.generators]
        return table

    @property
    def elements(self) -> list:
        return self.table.elements

    def index(self, elem: GroupElement) -> int:
        return self.table.index(elem)

    def element(self, i: int) -> GroupElement:
        return self.table.elements[int(i)]

    def __contains__(self, elem) -> bool:
        if self._table is not None or self.order_hint is None:
            return elem.encode() in self.table.codes
        return self.contains_streaming(elem)

    def contains_streaming(self, elem) -> bool:
        return any(e == elem for e in self.iter_elements())

    def iter_elements(self):
        """Generator-closure iteration without building a table."""
        if self._table is not None:
            yield from self._table.elements
            return
        cap = get_config().max_order_stream
        seen = {self.identity.encode()}
        frontier = [self.identity]
        yield self.identity
        while frontier:
            nxt = []
            for a in frontier:
                for g in self.generators:
                    b = a * g
                    c = b.encode()
                    if c not in seen:
                        seen.add(c)
                        if len(seen) > cap:
                            raise CapExceeded(f"more than {cap} elements", None)
                        nxt.append(b)
                        yield b
            frontier = nxt


def _index_in(elems, g):
    code = g.encode()
    for i, e in enumerate(elems):
        if e.encode() == code:
            return i
    raise KeyError(g)


def _bfs_closure(gens, identity, cap):
    elems = [identity]
    parent = [-1]
    via = [-1]
    seen = {identity.encode(): 0}
    head = 0
    while head < len(elems):
        a = elems[head]
        for k, g in enumerate(gens):
            b = a * g
            c = b.encode()
            if c not in seen:
                seen[c] = len(elems)
                elems.append(b)
                parent.append(head)
                via.append(k)
                if len(elems) > cap:
                    raise CapExceeded(f"group has more than {cap} elements (stored-table cap)", None)
        head += 1
    return elems, np.array(parent, dtype=np.int64), np.array(via, dtype=np.int64)


def _rows_from_tree(gen_rows: np.ndarray, parent: np.ndarray, via: np.ndarray) -> np.ndarray:
    """Rows of every element from generator rows along the BFS tree."""
    n = len(parent)
    d = gen_rows.shape[1] if len(gen_rows) else 0
    rows = np.empty((n, d), dtype=np.int32)
    rows[0] = np.arange(d)
    # BFS discovery order is level order, so parents precede children
    depth = np.zeros(n, dtype=np.int64)
    for i in range(1, n):
        depth[i] = depth[parent[i]] + 1
    for lev in range(1, int(depth.max()) + 1 if n > 1 else 1):
        idx = np.nonzero(depth == lev)[0]
        pr = rows[parent[idx]]
        gr = gen_rows[via[idx]]
        rows[idx] = np.take_along_axis(gr, pr, axis=1)
    return rows


def _orbit_rows(gens, seeds, act, normalize=lambda p: p):
    """Generator rows on the union of orbits of ``seeds``."""
    points = []
    index = {}
    for s in seeds:
        s = normalize(s)
        if s not in index:
            index[s] = len(points)
            points.append(s)
    head = 0
    while head < len(points):
        p = points[head]
        for g in gens:
            im = normalize(act(g, p))
            if im not in index:
                index[im] = len(points)
                points.append(im)
        head += 1
    rows = np.array([[index[normalize(act(g, p))] for p in points] for g in gens], dtype=np.int32)
    return rows.reshape(len(gens), len(points))


def _domain_candidates(group: Group, elems):
    gens = group.generators
    ident = group.identity
    if not gens:
        yield np.zeros((0, 1), dtype=np.int32)
        return
    if isinstance(ident, Perm):
        yield np.array([g.images for g in gens], dtype=np.int32)
        return
    if isinstance(ident, Matrix):
        F = ident.field
        n = ident.dim

        def proj(v):
            for x in v:
                if x:
                    inv = F.inv(x)
                    return tuple(F.mul(inv, y) for y in v)
            return v

        def act(g, v):
            return g.act(v)

        basis = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        yield _orbit_rows(gens, basis[:1], act, proj)
        yield _orbit_rows(gens, basis, act, proj)
        yield _orbit_rows(gens, basis, act)
        return
    if isinstance(ident, AffineSemilinear):
        F = ident.space.field
        w = F.primitive

        def act(g, v):
            return g.act(v)

        yield _orbit_rows(gens, [(0, 0)], act)
        yield _orbit_rows(gens, [(0, 0), (1, 0), (0, 1), (w, 0), (0, w)], act)
        return
    # Metacyclic and anything else: regular representation (handled by caller)
    return


def _regular_rows(group: Group, elems, parent, via):
    index = {e.encode(): i for i, e in enumerate(elems)}
    gen_rows = np.array(
        [[index[(e * g).encode()] for e in elems] for g in group.generators], dtype=np.int32
    )
    return _rows_from_tree(gen_rows, parent, via)


def table_from_subset(parent: ElementTable, indices: np.ndarray, generators=None) -> ElementTable:
    idx = np.sort(np.asarray(indices, dtype=np.int64))
    t = ElementTable([parent.elements[i] for i in idx.tolist()], parent.perms[idx])
    if generators is None:
        t.generators = greedy_generators(t)
    else:
        pos = {int(v): i for i, v in enumerate(idx.tolist())}
        t.generators = [pos[int(g)] for g in generators]
    return t


def greedy_generators(t: ElementTable) -> list[int]:
    """A small generating set: repeatedly adjoin a largest-order non-member."""
    gens: list[int] = []
    mask = np.zeros(t.order, dtype=bool)
    mask[t.identity] = True
    by_order = np.argsort(-t.element_orders, kind="stable")
    while not mask.all():
        cand = int(by_order[~mask[by_order]][0])
        gens.append(cand)
        mask[:] = False
        mask[closure_indices(t, gens)] = True
    return gens


class Subgroup:
    """A subgroup of a parent group.

    For stored-table parents the members are an index set; for streaming
    parents they are an explicit element list.
    """

    def __init__(self, parent: Group, indices=None, members=None, generators=None, name=None):
        self.parent = parent
        self.name = name
        if indices is not None:
            self.indices = np.unique(np.asarray(indices, dtype=np.int64))
            self.members = None
        else:
            self.indices = None
            uniq = {m.encode(): m for m in members}
            self.members = [uniq[k] for k in sorted(uniq)]
        self.generators = list(generators) if generators is not None else None
        self._group = None

    @property
    def order(self) -> int:
        return len(self.indices) if self.indices is not None else len(self.members)

    def __len__(self):
        return self.order

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.indices] = True
        return m

    def elements(self) -> list:
        if self.members is not None:
            return list(self.members)
        return [self.parent.element(i) for i in self.indices.tolist()]

    def __contains__(self, elem) -> bool:
        if isinstance(elem, (int, np.integer)):
            i = np.searchsorted(self.indices, elem)
            return i < len(self.indices) and self.indices[i] == elem
        if self.members is not None:
            code = elem.encode()
            return any(m.encode() == code for m in self.members)
        try:
            return self.parent.index(elem) in self
        except KeyError:
            return False

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        if self.indices is not None and other.indices is not None:
            return np.array_equal(self.indices, other.indices)
        return {e.encode() for e in self.elements()} == {e.encode() for e in other.elements()}

    def __hash__(self):
        return hash(tuple(e.encode() for e in self.elements()))

    def as_group(self) -> Group:
        """The subgroup as a standalone :class:`Group` sharing the parent's rows."""
        if self._group is None:
            if self.indices is not None:
                t = self.parent.table
                gi = None if self.generators is None else [t.index(g) for g in self.generators]
                sub = table_from_subset(t, self.indices, gi)
                gens = [sub.elements[i] for i in sub.generators]
                grp = Group(gens, identity=self.parent.identity, name=self.name)
                grp._table = sub
            else:
                grp = Group(self.generators_elements(), identity=self.parent.identity,
                            name=self.name, order_hint=self.order)
            self._group = grp
        return self._group

    def generators_elements(self) -> list:
        if self.generators is not None:
            return list(self.generators)
        return self.elements()

    def __repr__(self):
        return f"Subgroup(order={self.order}{', ' + self.name if self.name else ''})"


# -- module-level operations ---------------------------------------------------

def enumerate_group(g: Group):
    """Stored table when within the stored cap, else a streaming view."""
    cfg = get_config()
    hint = g.order_hint
    if hint is not None and hint > cfg.max_order_stored:
        if hint > cfg.max_order_stream:
            raise CapExceeded(f"order {hint} exceeds streaming cap {cfg.max_order_stream}", hint)
        return StreamingView(g)
    return g.table


class StreamingView:
    """Scan-only access to a group too large for a stored table."""

    def __init__(self, group: Group):
        self.group = group
        self.order = group.order

    def __iter__(self):
        return iter(self.group.iter_elements())


def subgroup_closure(g: Group, seeds) -> Subgroup:
    seeds = list(seeds)
    if not g.has_table and g.order_hint is not None and g.order_hint > get_config().max_order_stored:
        return _closure_members(g, seeds)
    t = g.table
    sidx = [t.index(s) if isinstance(s, GroupElement) else int(s) for s in seeds]
    members = closure_indices(t, sidx)
    return Subgroup(g, indices=members, generators=[t.elements[i] for i in sidx])


def closure_indices(t: ElementTable, seeds: list[int]) -> np.ndarray:
    mask = np.zeros(t.order, dtype=bool)
    mask[t.identity] = True
    frontier = np.array([t.identity], dtype=np.int64)
    seeds = [s for s in seeds if s != t.identity]
    while frontier.size and seeds:
        new = np.unique(np.concatenate([t.mul(frontier, np.full(frontier.size, s)) for s in seeds]))
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return np.nonzero(mask)[0]


def _closure_members(g: Group, seeds) -> Subgroup:
    one = g.identity
    seen = {one.encode(): one}
    frontier = [one]
    cap = get_config().max_order_stored
    while frontier:
        nxt = []
        for a in frontier:
            for s in seeds:
                b = a * s
                c = b.encode()
                if c not in seen:
                    seen[c] = b
                    nxt.append(b)
                    if len(seen) > cap:
                        raise CapExceeded(f"subgroup closure exceeds {cap}")
        frontier = nxt
    return Subgroup(g, members=list(seen.values()), generators=seeds)


def centralizer(g: Group, a) -> Subgroup:
    """Exact centralizer ``{h : ha = ah}``."""
    scan = getattr(g, "scan_centralizer", None)
    if scan is not None and not g.has_table:
        return scan(a)
    t = g.table
    ai = t.index(a) if isinstance(a, GroupElement) else int(a)
    allidx = t.all_indices()
    left = t.mul(allidx, np.full(t.order, ai))
    right = t.mul(np.full(t.order, ai), allidx)
    return Subgroup(g, indices=allidx[left == right])


def cyclic_indices(t: ElementTable, a: int) -> np.ndarray:
    out = [t.identity]
    x = a
    while x != t.identity:
        out.append(x)
        x = t.mul(x, a)
    return np.unique(np.array(out, dtype=np.int64))


def normalizer_of_cyclic(g: Group, a) -> Subgroup:
    """``{h : a^h in <a>}``."""
    t = g.table
    ai = t.index(a) if isinstance(a, GroupElement) else int(a)
    cyc = np.zeros(t.order, dtype=bool)
    cyc[cyclic_indices(t, ai)] = True
    allidx = t.all_indices()
    conj = t.mul(t.mul(t.inverse, np.full(t.order, ai)), allidx)
    return Subgroup(g, indices=allidx[cyc[conj]])


def conjugacy_classes(g: Group) -> list[Subgroup]:
    """Classes ordered by representative index (least canonical encoding)."""
    t = g.table
    class_id, reps, _ = t.classes()
    order = np.argsort(class_id, kind="stable")
    bounds = np.searchsorted(class_id[order], np.arange(len(reps) + 1))
    out = []
    for c in range(len(reps)):
        out.append(_ClassSet(g, order[bounds[c]: bounds[c + 1]], int(reps[c])))
    return out


class _ClassSet(Subgroup):
    """A conjugacy class (a subset, not a subgroup; reuses the index-set container)."""

    def __init__(self, parent, indices, rep):
        super().__init__(parent, indices=indices)
        self.representative = rep

    def __repr__(self):
        return f"Class(size={self.order}, rep={self.representative})"
