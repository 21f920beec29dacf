"""Structural subgroups: centre, hypercentre, Sylow subgroups, p-cores,
Fitting subgroup, Frobenius detection, Engel element sets and prime graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

import numpy as np

from .config import get_config
from .fields import factorize
from .group import Group, Subgroup, closure_indices

ENGEL_EXHAUSTIVE_LIMIT = 2000


def _group(s) -> Group:
    return s.as_group() if isinstance(s, Subgroup) else s


def _lift(g: Group, indices) -> Subgroup:
    return Subgroup(g, indices=indices)


def center(g: Group) -> Subgroup:
    t = g.table
    allidx = t.all_indices()
    mask = np.ones(t.order, dtype=bool)
    for s in t.generators:
        mask &= t.mul(allidx, np.full(t.order, s)) == t.mul(np.full(t.order, s), allidx)
    return _lift(g, allidx[mask])


@dataclass
class CentralSeries:
    terms: list

    @property
    def hypercenter(self) -> Subgroup:
        return self.terms[-1]

    def __len__(self):
        return len(self.terms)


def upper_central_series(g: Group) -> CentralSeries:
    """``Z_{i+1} = {h : [h, s] in Z_i for every generator s}`` until stable."""
    key = "upper_central_series"
    if key in g._cache:
        return g._cache[key]
    t = g.table
    allidx = t.all_indices()
    inv = t.inverse
    z = np.zeros(t.order, dtype=bool)
    z[t.identity] = True
    terms = [_lift(g, [t.identity])]
    while True:
        nxt = np.ones(t.order, dtype=bool)
        for s in t.generators:
            sv = np.full(t.order, s)
            c = t.mul(t.mul(inv, inv[sv]), t.mul(allidx, sv))
            nxt &= z[c]
        if np.array_equal(nxt, z):
            break
        z = nxt
        terms.append(_lift(g, allidx[z]))
    series = CentralSeries(terms)
    g._cache[key] = series
    return series


def hypercenter(g: Group) -> Subgroup:
    return upper_central_series(g).hypercenter


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def normalizer_mask(g: Group, sub_mask: np.ndarray, sub_gens: list[int]) -> np.ndarray:
    """Elements h with ``s^h`` in the subgroup for every generator s."""
    t = g.table
    allidx = t.all_indices()
    inv = t.inverse
    out = np.ones(t.order, dtype=bool)
    for s in sub_gens:
        c = t.mul(t.mul(inv, np.full(t.order, s)), allidx)
        out &= sub_mask[c]
    return out


def sylow(g: Group, p: int, seed: int | None = None, restarts: int = 64) -> Subgroup:
    """A Sylow p-subgroup, grown one normalizing p-element at a time.

    A p-subgroup P below full p-part has ``p | |N(P):P|``, so N(P) always
    contains a p-element outside P and the growth never stalls.
    """
    t = g.table
    target = _p_part(t.order, p)
    if target == 1:
        return _lift(g, [t.identity])
    orders = t.element_orders
    pel = np.array([i for i, o in enumerate(orders.tolist()) if o > 1 and _is_p_power(o, p)], dtype=np.int64)
    rng = random.Random(get_config().seed if seed is None else seed)
    for attempt in range(restarts + 1):
        deterministic = attempt == restarts
        gens = [int(pel[0] if deterministic else rng.choice(pel))]
        members = closure_indices(t, gens)
        while len(members) < target:
            mask = np.zeros(t.order, dtype=bool)
            mask[members] = True
            nmask = normalizer_mask(g, mask, gens)
            cand = pel[nmask[pel] & ~mask[pel]]
            if cand.size == 0:
                break
            gens.append(int(cand[0] if deterministic else rng.choice(cand)))
            members = closure_indices(t, gens)
        if len(members) == target:
            return Subgroup(g, indices=members, generators=[t.elements[i] for i in gens])
    raise RuntimeError(f"no Sylow {p}-subgroup found")  # unreachable by Sylow theory


def p_core(g: Group, p: int) -> Subgroup:
    """Intersection of the conjugates of a Sylow p-subgroup: the classes inside it."""
    t = g.table
    P = sylow(g, p)
    class_id, reps, _ = t.classes()
    pm = P.mask()
    inside = np.ones(len(reps), dtype=bool)
    np.logical_and.at(inside, class_id, pm)
    return _lift(g, np.nonzero(inside[class_id])[0])


def fitting(g: Group) -> Subgroup:
    if "fitting" in g._cache:
        return g._cache["fitting"]
    t = g.table
    gens: list[int] = []
    for p in sorted(factorize(t.order)):
        core = p_core(g, p)
        if core.order > 1:
            gens.extend(_generators_of(t, core.indices))
    F = Subgroup(g, indices=closure_indices(t, gens) if gens else [t.identity])
    g._cache["fitting"] = F
    return F


def _generators_of(t, indices) -> list[int]:
    mask = np.zeros(t.order, dtype=bool)
    mask[t.identity] = True
    gens = []
    for i in indices.tolist():
        if not mask[i]:
            gens.append(i)
            mask[:] = False
            mask[closure_indices(t, gens)] = True
    return gens


def is_nilpotent(s) -> bool:
    g = _group(s)
    return hypercenter(g).order == g.order


def normal_closure(g: Group, seeds: list[int]) -> np.ndarray:
    t = g.table
    gens = [s for s in seeds if s != t.identity]
    members = closure_indices(t, gens)
    while True:
        mask = np.zeros(t.order, dtype=bool)
        mask[members] = True
        new = []
        for s in gens:
            for h in t.generators:
                c = t.conj(s, h)
                if not mask[c] and c not in new:
                    new.append(c)
        if not new:
            return members
        gens = gens + new
        members = closure_indices(t, gens)


def derived_series(s) -> list[np.ndarray]:
    g = _group(s)
    t = g.table
    cur = g
    out = [t.all_indices()]
    while True:
        ct = cur.table
        comms = sorted({ct.comm(a, b) for a in ct.generators for b in ct.generators} - {ct.identity})
        nxt = normal_closure(cur, comms) if comms else np.array([ct.identity])
        if len(nxt) == ct.order:
            return out
        out.append(nxt)
        if len(nxt) == 1:
            return out
        cur = Subgroup(cur, indices=nxt).as_group()


def is_soluble(s) -> bool:
    return len(derived_series(s)[-1]) == 1


@dataclass(frozen=True)
class FrobeniusVerdict:
    frobenius: bool
    kernel: Subgroup | None = None

    def __bool__(self):
        return self.frobenius


def is_frobenius(s) -> FrobeniusVerdict:
    """Frobenius iff ``K = F(G)`` has ``1 < K < G`` and ``C_G(k) <= K`` for all 1 != k in K.

    A Frobenius kernel is nilpotent and normal, so it lies in F(G); it cannot
    be strictly smaller, since an element of F(G) outside it would centralize
    a non-trivial element of Z(F(G)) inside it.  Hence F(G) is the only
    candidate kernel.
    """
    g = _group(s)
    t = g.table
    K = fitting(g)
    if K.order == 1 or K.order == t.order:
        return FrobeniusVerdict(False)
    kmask = K.mask()
    class_id, reps, _ = t.classes()
    allidx = t.all_indices()
    for r in reps.tolist():
        if r == t.identity or not kmask[r]:
            continue
        rv = np.full(t.order, r)
        cent = t.mul(allidx, rv) == t.mul(rv, allidx)
        if (cent & ~kmask).any():
            return FrobeniusVerdict(False)
    assert gcd(K.order, t.order // K.order) == 1
    return FrobeniusVerdict(True, K)


def _engel_set(g: Group, side: str) -> Subgroup:
    from .engel import lengths

    t = g.table
    allidx = t.all_indices()
    if t.order <= ENGEL_EXHAUSTIVE_LIMIT:
        cands = allidx
    else:
        cands = t.classes()[1]
    keep = []
    for c in cands.tolist():
        L = lengths(t, allidx, c) if side == "left" else lengths(t, c, allidx)
        if (L > 0).all():
            keep.append(c)
    if t.order > ENGEL_EXHAUSTIVE_LIMIT:
        class_id, reps, _ = t.classes()
        keep = np.nonzero(np.isin(class_id, np.searchsorted(reps, keep)))[0]
    return _lift(g, keep)


def left_engel_set(g: Group) -> Subgroup:
    """``{y : for all x, [x,_n y] = 1 for some n}``."""
    return _engel_set(g, "left")


def right_engel_set(g: Group) -> Subgroup:
    """``{x : for all y, [x,_n y] = 1 for some n}``."""
    return _engel_set(g, "right")


@dataclass
class PrimeGraph:
    vertices: list
    edges: set
    components: list

    @property
    def n_components(self) -> int:
        return len(self.components)


def prime_graph(g: Group) -> PrimeGraph:
    t = g.table
    primes = sorted(factorize(t.order))
    orders = np.unique(t.element_orders)
    edges = set()
    for i, p in enumerate(primes):
        for q in primes[i + 1:]:
            if np.any(orders % (p * q) == 0):
                edges.add((p, q))
    parent = {p: p for p in primes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p, q in edges:
        parent[find(p)] = find(q)
    comps: dict = {}
    for p in primes:
        comps.setdefault(find(p), []).append(p)
    return PrimeGraph(primes, edges, sorted(comps.values()))
