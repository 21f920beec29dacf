"""The affine-semilinear group ``G = F : D`` with ``D = <x, c>``.

Here ``F = GF(q^r)^2`` (translations), ``z = diag(e, e)`` with ``|e| = r^2``,
``c = diag(1, f)`` with ``|f| = t``, ``beta`` the field automorphism
``w -> w^q`` and ``x = z beta``.  The group is too large for a stored table
(``q^(2r) t r^2`` elements), so every question is answered by numpy scans:
for each of the ``|D|`` linear parts, all ``|F|`` translation parts are
processed as one batch.

Engel scans use the quotient map ``G -> D``: the D-part of ``[g,_n y]`` is the
Engel sequence in D, which depends only on the D-parts.  If it never reaches
1 there is no edge.  Once it reaches 1 (at step m) the iterate lies in F,
where ``f -> [f, y]`` is a GF(p)-linear map T; the identity is reached iff
``T^k f = 0`` for ``k = dim F``, so ``m + dim F`` steps decide the edge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import ConstraintError
from .config import get_config
from .elements import AffineSemilinear, SemilinearSpace
from .engel import GraphMode, eng
from .fields import field_make, is_prime, prime_power
from .group import CapExceeded, Group, Subgroup, _closure_members


def validate_ex4(q: int, r: int, t: int):
    pk = prime_power(q)
    if pk is None or q % 2 == 0:
        raise ConstraintError(f"q={q} must be an odd prime power")
    if not is_prime(r) or r < 3:
        raise ConstraintError(f"r={r} must be a prime >= 3")
    if (q - 1) % r:
        raise ConstraintError(f"r={r} must divide q-1={q - 1}")
    if (q - 1) % (r * r) == 0:
        raise ConstraintError(f"r^2={r * r} must not divide q-1={q - 1} (r divides q-1 exactly)")
    if not is_prime(t):
        raise ConstraintError(f"t={t} must be prime")
    if ((q ** r - 1) // (q - 1)) % t:
        raise ConstraintError(f"t={t} must divide (q^r-1)/(q-1)={(q ** r - 1) // (q - 1)}")
    if (q - 1) % t == 0:
        raise ConstraintError(f"t={t} must not divide q-1={q - 1}")
    return pk


@dataclass
class Batch:
    """Elements ``(v1[k], v2[k], d)`` sharing one linear part d."""

    v1: np.ndarray
    v2: np.ndarray
    d: tuple

    def __len__(self):
        return len(self.v1)

    def take(self, mask) -> "Batch":
        return Batch(self.v1[mask], self.v2[mask], self.d)


class TranslationSubgroup:
    """The normal subgroup F of translations (kept implicit: |F| = Q^2)."""

    def __init__(self, group: "Ex4Group"):
        self.group = group
        self.order = group.Q ** 2

    def __contains__(self, elem) -> bool:
        return elem.is_translation

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"F(order={self.order})"


class Ex4Group(Group):
    def __init__(self, q: int, r: int, t: int):
        p, k = validate_ex4(q, r, t)
        self.q, self.r, self.t = q, r, t
        self.p = p
        self.field = F = field_make(p, k * r)
        self.Q = F.size
        self.dim_f = 2 * k * r  # dimension of F over GF(p)
        sp = self.space = SemilinearSpace(F, q, r, r * r, t)
        z = AffineSemilinear(sp, (0, 0), (1, 0, 0))
        c = AffineSemilinear(sp, (0, 0), (0, 1, 0))
        beta = AffineSemilinear(sp, (0, 0), (0, 0, 1))
        x = z * beta
        basis = [p ** i for i in range(k * r)]
        trans = [AffineSemilinear(sp, (b, 0), (0, 0, 0)) for b in basis]
        trans += [AffineSemilinear(sp, (0, b), (0, 0, 0)) for b in basis]
        super().__init__(trans + [x, c], name=f"Ex4({q},{r},{t})",
                         order_hint=self.Q ** 2 * t * r * r)
        D = _closure_members(self, [x, c])
        C = _closure_members(self, [c])
        self.d_parts = sorted({e.d for e in D.members})
        self.handles.update(x=x, c=c, z=z, beta=beta, D=D, C=C, F=TranslationSubgroup(self))
        self._log = F._build()["log"]
        self._exp = F._build()["exp"]
        self._add = F._build().get("add")
        self._neg = F._build()["neg"]
        self.scan_count = 0

    # -- vectorized arithmetic ------------------------------------------------
    def _scale(self, w, lg, qj):
        n = self.Q - 1
        out = self._exp[(self._log[w] * qj + lg) % n]
        return np.where(w == 0, 0, out)

    def _lin(self, d, w1, w2):
        l1, l2 = self.space.diag_logs(d[0], d[1])
        qj = self.space.qpow[d[2]]
        return self._scale(w1, l1, qj), self._scale(w2, l2, qj)

    def _vadd(self, a, b):
        if self._add is not None:
            return self._add[a, b]
        return self.field.vadd(a, b)

    def bmul(self, a: Batch, b: Batch) -> Batch:
        w1, w2 = self._lin(b.d, a.v1, a.v2)
        return Batch(self._vadd(w1, b.v1), self._vadd(w2, b.v2), self.space.compose_linear(a.d, b.d))

    def binv(self, a: Batch) -> Batch:
        di = self.space.invert_linear(a.d)
        w1, w2 = self._lin(di, a.v1, a.v2)
        return Batch(self._neg[w1], self._neg[w2], di)

    def bcomm(self, a: Batch, b: Batch) -> Batch:
        return self.bmul(self.bmul(self.binv(a), self.binv(b)), self.bmul(a, b))

    def batch_of(self, elem: AffineSemilinear, size: int = 1) -> Batch:
        return Batch(np.full(size, elem.v[0], dtype=np.int64), np.full(size, elem.v[1], dtype=np.int64), elem.d)

    def all_translations(self, d) -> Batch:
        Q = self.Q
        a = np.arange(Q, dtype=np.int64)
        return Batch(np.repeat(a, Q), np.tile(a, Q), d)

    def elements_of(self, b: Batch, mask=None) -> list:
        if mask is not None:
            b = b.take(mask)
        return [AffineSemilinear(self.space, (v1, v2), b.d) for v1, v2 in zip(b.v1.tolist(), b.v2.tolist())]

    def _check_stream(self):
        cap = get_config().max_order_stream
        if self.order_hint > cap:
            raise CapExceeded(f"order {self.order_hint} exceeds streaming cap {cap}", self.order_hint)

    # -- scans ------------------------------------------------------------------
    def scan_centralizer(self, a: AffineSemilinear) -> Subgroup:
        """``C_G(a)`` by scanning all elements, one D-part at a time."""
        self._check_stream()
        sp = self.space
        out = []
        for d in self.d_parts:
            if sp.compose_linear(d, a.d) != sp.compose_linear(a.d, d):
                continue
            g = self.all_translations(d)
            A = self.batch_of(a, len(g))
            left, right = self.bmul(g, A), self.bmul(A, g)
            self.scan_count += len(g)
            out.extend(self.elements_of(g, (left.v1 == right.v1) & (left.v2 == right.v2)))
        return Subgroup(self, members=out, name="centralizer")

    def fixed_points_on_f(self, h: AffineSemilinear) -> int:
        """Number of ``f`` in F with ``f^h = f`` (conjugation acts by h's linear part)."""
        g = self.all_translations(h.d)
        w1, w2 = self._lin(h.d, g.v1, g.v2)
        return int(((w1 == g.v1) & (w2 == g.v2)).sum())

    def _d_engel(self, dx, dy, limit: int):
        """Step at which the D-part Engel sequence first reaches 1, or 0."""
        sp = self.space
        one = (0, 0, 0)

        def dcomm(a, b):
            ai, bi = sp.invert_linear(a), sp.invert_linear(b)
            return sp.compose_linear(sp.compose_linear(ai, bi), sp.compose_linear(a, b))

        zd = dcomm(dx, dy)
        seen = set()
        step = 1
        while zd != one:
            if zd in seen or step > limit:
                return 0
            seen.add(zd)
            zd = dcomm(zd, dy)
            step += 1
        return step

    def engel_lengths_batch(self, X: Batch, Y: Batch) -> np.ndarray:
        """Least n >= 1 with ``[X_k,_n Y_k] = 1`` (0 if none), for equal-length batches."""
        n = len(X)
        out = np.zeros(n, dtype=np.int64)
        m = self._d_engel(X.d, Y.d, len(self.d_parts) + 1)
        self.scan_count += n
        if m == 0:
            return out
        idx = np.arange(n)
        z = self.bcomm(X, Y)
        for step in range(1, m + self.dim_f + 1):
            if step >= m:
                hit = (z.v1 == 0) & (z.v2 == 0)
                out[idx[hit]] = step
                keep = ~hit
                if not keep.any():
                    break
                idx, z, Y = idx[keep], z.take(keep), Y.take(keep)
            z = self.bcomm(z, Y)
        return out

    def is_vertex(self, elem, mode: GraphMode) -> bool:
        if mode.kind == "lambda":
            return True
        if mode.kind == "gamma_n":
            raise NotImplementedError("gamma_n vertex sets need a stored table")
        if mode.kind == "gamma" and not self.hypercenter_is_trivial():
            raise NotImplementedError("non-trivial hypercentre")
        return not elem.is_identity()

    def hypercenter_is_trivial(self) -> bool:
        """Z(G) = 1 implies Z_inf(G) = 1; Z(G) lies in C_G(x)."""
        if "center_trivial" not in self._cache:
            cx = self.scan_centralizer(self.handles["x"])
            central = [e for e in cx.members if all(e * s == s * e for s in self.generators)]
            self._cache["center_trivial"] = len(central) == 1
        return self._cache["center_trivial"]

    def neighbor_scan(self, y: AffineSemilinear, direction: str = "in", mode: GraphMode | None = None) -> list:
        """All vertices g with ``g -> y`` ("in") or ``y -> g`` ("out")."""
        from .engel import GAMMA

        mode = mode or GAMMA
        self._check_stream()
        out = []
        for d in self.d_parts:
            g = self.all_translations(d)
            Y = self.batch_of(y, len(g))
            L = self.engel_lengths_batch(g, Y) if direction == "in" else self.engel_lengths_batch(Y, g)
            ok = mode.accepts(L)
            if d == (0, 0, 0) and mode.kind != "lambda":
                ok &= (g.v1 != 0) | (g.v2 != 0)
            if d == y.d:
                ok &= (g.v1 != y.v[0]) | (g.v2 != y.v[1])
            out.extend(self.elements_of(g, ok))
        return out

    def has_edge(self, a, b, mode: GraphMode | None = None) -> bool:
        from .engel import GAMMA

        mode = mode or GAMMA
        if a == b:
            return False
        tr = eng(a, b)
        return bool(tr.adjacency and mode.accepts(tr.trail_length))

    # -- named subgroups -------------------------------------------------------------
    def commutator_fc(self) -> list:
        """A GF(p)-basis of ``[F, C]``: images of a basis of F under ``f -> [f, c]``."""
        c = self.handles["c"]
        p, k = self.p, self.field.k
        vecs = []
        for i in range(k):
            for v in ((p ** i, 0), (0, p ** i)):
                f = AffineSemilinear(self.space, v, (0, 0, 0))
                w = (f.inverse() * c.inverse() * f * c)
                if w.v != (0, 0) and w not in vecs:
                    vecs.append(w)
        return vecs

    def fc_d_group(self) -> Group:
        """``[F, C] D`` as a group of its own (small enough for a stored table)."""
        if "fc_d" not in self._cache:
            basis = self.commutator_fc()
            grp = Group(basis + [self.handles["x"], self.handles["c"]], name=f"[F,C]D in {self.name}")
            self._cache["fc_d"] = grp
        return self._cache["fc_d"]


def make_ex4(q: int, r: int, t: int) -> Ex4Group:
    return Ex4Group(q, r, t)
