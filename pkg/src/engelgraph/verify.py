"""Mechanical re-checks of the Engel-graph claims, grouped into suites.

``core`` holds the desk-scale permutation, linear and Frobenius checks,
``extended`` adds Sz(8) and PSL(2,29), ``nightly`` adds the scans of the
affine-semilinear example.  Each claim returns a :class:`ClaimResult`.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np

from . import catalog as ca
from .connectivity import (
    engel_digraph,
    is_strongly_connected,
    is_weakly_connected,
    reachable,
    scc,
    seed_condensation,
    undirected_diameter,
)
from .elements import Perm, comm, elem_order
from .engel import GAMMA, LAMBDA, DELTA, gamma_n, graph_handle, lengths, vertex_mask
from .structure import fitting, hypercenter, is_frobenius, left_engel_set, right_engel_set


@dataclass
class ClaimResult:
    cid: str
    title: str
    status: str  # PASS, FAIL or INCONCLUSIVE
    detail: str
    seconds: float
    limit: float

    @property
    def ok(self) -> bool:
        return self.status != "FAIL"

    def line(self) -> str:
        return f"{self.status:<12} {self.cid:<4} {self.title}  [{self.seconds:.1f}s / {self.limit:.0f}s]  {self.detail}"


class Inconclusive(Exception):
    pass


@dataclass
class Claim:
    cid: str
    suite: str
    title: str
    limit: float  # seconds
    fn: object

    def run(self, **kw) -> ClaimResult:
        t0 = time.perf_counter()
        try:
            ok, detail = self.fn(**kw) if kw else self.fn()
            status = "PASS" if ok else "FAIL"
        except Inconclusive as exc:
            status, detail = "INCONCLUSIVE", str(exc)
        dt = time.perf_counter() - t0
        if status == "PASS" and dt > self.limit:
            status, detail = "FAIL", f"{detail}; over time limit"
        return ClaimResult(self.cid, self.title, status, detail, dt, self.limit)


# -- the group corpus ---------------------------------------------------------

_CORPUS: dict = {}


def group(expr: str):
    if expr not in _CORPUS:
        _CORPUS[expr] = ca.make(expr)
    return _CORPUS[expr]


WEAK_CORPUS = [
    "S(4)", "S(5)", "S(6)", "S(7)", "A(5)", "A(6)", "A(7)", "GL(2,3)", "SL(2,3)",
    "PSL(2,4)", "PSL(2,5)", "PSL(2,7)", "PSL(2,8)", "PSL(2,9)", "PSL(2,11)", "PSL(2,13)",
    "Frob(19,6)", "D(6)", "D(10)", "D(12)", "Q(12)", "Q(20)",
]

SMALL_CORPUS = [
    "S(3)", "S(4)", "S(5)", "S(6)", "A(4)", "A(5)", "A(6)", "GL(2,3)", "SL(2,3)",
    "PSL(2,7)", "PSL(2,8)", "PSL(2,11)", "PSL(2,13)", "Frob(19,6)", "Frob(5,4)",
    "D(6)", "D(8)", "D(10)", "D(12)", "Q(8)", "Q(12)", "Q(20)", "C(6)",
]


def small_corpus(limit: int):
    return [e for e in SMALL_CORPUS if group(e).order <= limit]


def _strong(expr, mode):
    return is_strongly_connected(group(expr), mode, condense=True)


# -- claims -------------------------------------------------------------------

def c1_weak_connectivity():
    bad = []
    worst = 0
    for e in WEAK_CORPUS:
        g = group(e)
        d = engel_digraph(g, GAMMA)
        if d.n == 0:
            continue
        diam = undirected_diameter(d)
        if not is_weakly_connected(d) or not isinstance(diam, int) or diam > 10:
            bad.append(f"{e}:{diam}")
        else:
            worst = max(worst, diam)
    return not bad, f"{len(WEAK_CORPUS)} groups, max undirected diameter {worst}" + (f"; failures {bad}" if bad else "")


def c2_frobenius():
    notes = []
    ok = True
    for e in ["Frob(19,6)", "Frob(5,4)", "S(3)", "A(4)"]:
        g = group(e)
        v = is_frobenius(g)
        if not v:
            return False, f"{e} not detected as Frobenius"
        strong = is_strongly_connected(g, GAMMA)
        t = g.table
        mask = vertex_mask(g, GAMMA)
        kmask = v.kernel.mask()
        ks = np.nonzero(kmask & mask)[0]
        others = np.nonzero(~kmask & mask)[0]
        L = lengths(t, ks[:, None], others[None, :])
        cross = int((L > 0).sum())
        ok &= (not strong) and cross == 0
        notes.append(f"{e}: |K|={v.kernel.order}, strong={strong}, kernel->outside edges={cross}")
    return ok, "; ".join(notes)


def c3_alternating():
    got = {
        "Gamma(A5)": _strong("A(5)", GAMMA),
        "Gamma_2(A6)": _strong("A(6)", gamma_n(2)),
        "Gamma_3(A6)": _strong("A(6)", gamma_n(3)),
        "Gamma_2(A7)": _strong("A(7)", gamma_n(2)),
    }
    want = {"Gamma(A5)": False, "Gamma_2(A6)": False, "Gamma_3(A6)": True, "Gamma_2(A7)": True}
    return got == want, ", ".join(f"{k} strong={v}" for k, v in got.items())


def c4_symmetric():
    got = {n: _strong(f"S({n})", gamma_n(2)) for n in (5, 6, 7)}
    return all(got.values()), ", ".join(f"Gamma_2(S{n}) strong={v}" for n, v in got.items())


def c5_gl23():
    g = group("GL(2,3)")
    t = g.table
    Z = hypercenter(g)
    from .structure import center

    zc = center(g)
    s3 = _strong("GL(2,3)", gamma_n(3))
    s2 = _strong("GL(2,3)", gamma_n(2))
    x = int(np.nonzero(t.element_orders == 3)[0][0])
    out = graph_handle(g, GAMMA).out_row(x)
    L = lengths(t, x, out)
    o4 = out[t.element_orders[out] == 4]
    exact3 = int(((t.element_orders[out] == 4) & (L == 3)).sum())
    ok = Z.order == 2 and Z == zc and s3 and not s2 and len(out) == 9 and len(o4) == 6 and exact3 == 6
    return ok, (f"|Z_inf|={Z.order}, Z_inf=Z: {Z == zc}, Gamma_3 strong={s3}, Gamma_2 strong={s2}, "
                f"out-degree {len(out)}, order-4 targets {len(o4)} with length 3: {exact3}")


def c6_psl_even():
    got = {q: _strong(f"PSL(2,{q})", GAMMA) for q in (4, 8, 16)}
    return not any(got.values()), ", ".join(f"PSL(2,{q}) strong={v}" for q, v in got.items())


def _psl_odd(primes):
    bad = []
    parts = []
    for p in primes:
        s = _strong(f"PSL(2,{p})", GAMMA)
        want = p not in (5, 13, 29)
        parts.append(f"{p}:{'strong' if s else 'not strong'}")
        if s != want or want != (p % 8 != 5):
            bad.append(p)
    return not bad, ", ".join(parts)


def c7_psl_odd_small():
    return _psl_odd([5, 7, 11, 13, 17, 19, 23])


def c7_psl_29():
    return _psl_odd([29])


def c8_suzuki():
    g = group("Sz(8)")
    t = g.table
    d = engel_digraph(g, GAMMA)
    orders = t.element_orders[d.labels]
    start = int(np.nonzero(orders == 13)[0][0])
    seen = reachable(d, start, "out", stop_when_all=False)
    inside = bool(np.all(13 % orders[seen] == 0))
    return inside and seen.sum() < d.n, f"forward closure of an order-13 element: {int(seen.sum())} vertices, orders {sorted(set(orders[seen].tolist()))}"


def c9_engel_sets():
    bad = []
    for e in small_corpus(2000):
        g = group(e)
        if left_engel_set(g) != fitting(g) or right_engel_set(g) != hypercenter(g):
            bad.append(e)
    return not bad, f"{len(small_corpus(2000))} groups" + (f"; mismatches {bad}" if bad else "")


def _ex4():
    if "Ex4(7,3,19)" not in _CORPUS:
        _CORPUS["Ex4(7,3,19)"] = ca.make("Ex4(7,3,19)")
    return _CORPUS["Ex4(7,3,19)"]


def c10_ex4_structure():
    G = _ex4()
    h = G.handles
    x, c = h["x"], h["c"]
    xr = x ** G.r
    D = h["D"]
    cx = G.scan_centralizer(x)
    cxr = G.scan_centralizer(xr)
    powers = {(x ** i).encode() for i in range(elem_order(x))}
    fcd = G.fc_d_group()
    frob = is_frobenius(fcd)
    checks = {
        "order": G.order == 20_117_979,
        "|x|=9": elem_order(x) == 9,
        "|x^r|=3": elem_order(xr) == 3,
        "x^r fixed-point-free": G.fixed_points_on_f(xr) == 1,
        "c^x=c^7!=c": (x.inverse() * c * x) == c ** 7 and c ** 7 != c,
        "C(x)=<x>": {e.encode() for e in cx.members} == powers,
        "C(x^r)=D": cxr == D,
        "[F,C]D order": fcd.order == 58_653,
        "[F,C]D Frobenius": bool(frob),
    }
    return all(checks.values()), ", ".join(f"{k}: {v}" for k, v in checks.items())


def c11_ex4_balls(budget_seconds: float = 4 * 3600.0):
    from .connectivity import ball

    G = _ex4()
    h = G.handles
    x = h["x"]
    t0 = time.perf_counter()
    B = ball(G, GAMMA, x, 2, budget_seconds=budget_seconds)
    if not B.complete:
        raise Inconclusive(f"budget of {budget_seconds:.0f}s exhausted at radius {B.radius}")
    b1 = {e.encode() for e in B.layers[0] + B.layers[1]}
    want1 = {(x ** i).encode() for i in range(1, 9)}
    b2 = {e.encode() for e in B.members}
    want2 = {e.encode() for e in h["D"].members if not e.is_identity()}
    y = G.commutator_fc()[0]
    rest = budget_seconds - (time.perf_counter() - t0)
    if rest <= 0:
        raise Inconclusive("budget exhausted before the radius-3 certificate")
    escapes = y.encode() not in b2 and not any(G.has_edge(y, b) for b in B.members)
    ok = b1 == want1 and b2 == want2 and escapes
    return ok, (f"|B1|={len(b1)} (=<x>-1: {b1 == want1}), |B2|={len(b2)} (=D-1: {b2 == want2}), "
                f"[F,C] element outside B3: {escapes}; {G.scan_count} Engel traces")


def c12_permutation_identities():
    bad = []
    for n in range(6, 13):
        a = Perm.from_cycles(n, [(1, 3, 5)])
        cyc = Perm.from_cycles(n, [tuple(range(1, n + 1))])
        lhs = a * cyc * a.inverse() * cyc.inverse()
        if lhs != Perm.from_cycles(n, [(1, 3, 5), (2, n, 4)]):
            bad.append(("3-cycle", n))
    for m in range(4, 11):
        b = Perm.from_cycles(m, [(1, 3)])
        cyc = Perm.from_cycles(m, [tuple(range(1, m + 1))])
        lhs = b * cyc * b * cyc.inverse()
        if lhs != Perm.from_cycles(m, [(1, 3), (2, m)]):
            bad.append(("transposition", m))
        if not comm(comm(cyc, b), b).is_identity():
            bad.append(("engel", m))
    return not bad, "n = 6..12 and m = 4..10" + (f"; failures {bad}" if bad else "")


def _direct_engel(t, xs, ys, n):
    z = xs
    for _ in range(n):
        z = t.comm(z, ys)
    return z


def c13_properties(seed: int = 7):
    rng = np.random.default_rng(seed)
    notes = []
    ok = True
    # kernel versus direct words on all pairs of the small groups
    small = small_corpus(200)
    for e in small:
        g = group(e)
        t = g.table
        xs, ys = np.meshgrid(t.all_indices(), t.all_indices(), indexing="ij")
        xs, ys = xs.ravel(), ys.ravel()
        L = lengths(t, xs, ys)
        z = xs.copy()
        first = np.zeros(len(xs), dtype=np.int64)
        for k in range(1, t.order + 1):
            z = t.comm(z, ys)
            hit = (z == t.identity) & (first == 0)
            first[hit] = k
            if k <= 11 and k >= 2:
                # monotonicity: [x,_{k-1} y] = 1 implies [x,_k y] = 1
                ok &= bool(np.all(z[(first > 0) & (first < k)] == t.identity))
        ok &= bool(np.array_equal(L, first))
    notes.append(f"kernel = direct words on {len(small)} groups")
    # equivariance on random triples
    triples = 0
    for e in ["S(5)", "GL(2,3)", "PSL(2,7)", "A(6)"]:
        t = group(e).table
        m = 2500
        x, y, h = (rng.integers(0, t.order, m) for _ in range(3))
        xh = t.mul(t.mul(t.inverse[h], x), h)
        yh = t.mul(t.mul(t.inverse[h], y), h)
        ok &= bool(np.array_equal(lengths(t, x, y), lengths(t, xh, yh)))
        triples += m
    notes.append(f"equivariance on {triples} triples")
    # condensation never merges distinct strong components
    checked = 0
    for e in small_corpus(2000):
        g = group(e)
        for mode in (GAMMA, gamma_n(2), LAMBDA, DELTA):
            d = engel_digraph(g, mode)
            if d.n == 0:
                continue
            a = scc(d).partition()
            b = scc(d, clusters=seed_condensation(g, mode)).partition()
            ok &= a == b
            checked += 1
    notes.append(f"condensed SCC = plain SCC on {checked} graphs")
    return ok, "; ".join(notes)


CLAIMS = [
    Claim("C1", "core", "weak connectivity, undirected diameter <= 10", 120, c1_weak_connectivity),
    Claim("C2", "core", "Frobenius groups: no edges out of the kernel", 10, c2_frobenius),
    Claim("C3", "core", "alternating groups A5, A6, A7", 300, c3_alternating),
    Claim("C4", "core", "Gamma_2(S_n) strongly connected, n = 5, 6, 7", 900, c4_symmetric),
    Claim("C5", "core", "GL(2,3): hypercentre, Gamma_2 / Gamma_3, out-neighbours", 1, c5_gl23),
    Claim("C6", "core", "PSL(2,2^f) not strongly connected, q = 4, 8, 16", 600, c6_psl_even),
    Claim("C7a", "core", "PSL(2,p) threshold, p <= 23", 300, c7_psl_odd_small),
    Claim("C7b", "extended", "PSL(2,p) threshold, p = 29", 3600, c7_psl_29),
    Claim("C8", "extended", "Sz(8): order-13 elements reach only their own cyclic subgroups", 1800, c8_suzuki),
    Claim("C9", "core", "left Engel set = Fitting, right Engel set = hypercentre", 600, c9_engel_sets),
    Claim("C10", "nightly", "Ex4(7,3,19) structure", 900, c10_ex4_structure),
    Claim("C11", "nightly", "Ex4(7,3,19) balls B1, B2, B3 (diameter 4)", 4 * 3600, c11_ex4_balls),
    Claim("C12", "core", "permutation commutator identities", 1, c12_permutation_identities),
    Claim("C13", "core", "property suites", 600, c13_properties),
]

SUITES = {"core": ("core",), "extended": ("core", "extended"), "nightly": ("core", "extended", "nightly")}


def claim(cid: str) -> Claim:
    return next(c for c in CLAIMS if c.cid == cid)


def run_suite(suite: str = "core", budget_seconds: float = 4 * 3600.0) -> list[ClaimResult]:
    out = []
    for c in CLAIMS:
        if c.suite in SUITES[suite]:
            kw = {"budget_seconds": budget_seconds} if c.cid == "C11" else {}
            out.append(c.run(**kw))
    return out
