"""Concrete group element backends.

All products use the right-action convention: ``a * b`` means "apply a,
then b".  Conjugation is ``a ** h == h**-1 * a * h`` (via :func:`conj`) and
the commutator is ``[a, b] = a**-1 * b**-1 * a * b``.

Every element has a canonical byte encoding (backend tag followed by a
fixed-width payload) used for equality, hashing and the total order that
fixes vertex indices.
"""

from __future__ import annotations

import struct
from functools import total_ordering
from math import gcd

from .fields import FieldSpec

TAG_PERM = 1
TAG_MATRIX = 2
TAG_SEMILINEAR = 3
TAG_METACYCLIC = 4


class BackendMismatch(TypeError):
    pass


@total_ordering
class GroupElement:
    __slots__ = ("_code",)
    tag = 0

    def encode(self) -> bytes:
        code = self._code
        if code is None:
            code = self._code = bytes([self.tag]) + self._payload()
        return code

    def _payload(self) -> bytes:
        raise NotImplementedError

    def _check(self, other):
        if type(other) is not type(self) or not self.compatible(other):
            raise BackendMismatch(f"cannot combine {self!r} with {other!r}")

    def compatible(self, other) -> bool:
        return True

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.encode() == other.encode()

    def __lt__(self, other):
        return self.encode() < other.encode()

    def __hash__(self):
        return hash(self.encode())

    def identity(self):
        raise NotImplementedError

    def is_identity(self) -> bool:
        return self == self.identity()

    def inverse(self):
        raise NotImplementedError

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.identity()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def order(self) -> int:
        return elem_order(self)


def elem_mul(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def elem_inv(a: GroupElement) -> GroupElement:
    return a.inverse()


def elem_eq(a: GroupElement, b: GroupElement) -> bool:
    if type(a) is not type(b):
        raise BackendMismatch(f"cannot compare {a!r} with {b!r}")
    return a.encode() == b.encode()


def elem_order(a: GroupElement) -> int:
    one = a.identity()
    x = a
    m = 1
    while x != one:
        x = x * a
        m += 1
    return m


def conj(a: GroupElement, h: GroupElement) -> GroupElement:
    return h.inverse() * a * h


def comm(a: GroupElement, b: GroupElement) -> GroupElement:
    return a.inverse() * b.inverse() * a * b


def engel_word(x: GroupElement, y: GroupElement, n: int) -> GroupElement:
    """``[x, _n y]`` evaluated directly: ``[x,_0 y] = x``."""
    z = x
    for _ in range(n):
        z = comm(z, y)
    return z


# -- permutations -----------------------------------------------------------

class Perm(GroupElement):
    __slots__ = ("images",)
    tag = TAG_PERM

    def __init__(self, images):
        self.images = tuple(images)
        self._code = None

    @classmethod
    def identity_of(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles, one_based: bool = True) -> "Perm":
        img = list(range(n))
        off = 1 if one_based else 0
        for cyc in cycles:
            cyc = [c - off for c in cyc]
            for i, a in enumerate(cyc):
                img[a] = cyc[(i + 1) % len(cyc)]
        if sorted(img) != list(range(n)):
            raise ValueError("cycles do not define a permutation")
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def compatible(self, other) -> bool:
        return len(self.images) == len(other.images)

    def _payload(self) -> bytes:
        return struct.pack(f">{len(self.images)}H", *self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        self._check(other)
        b = other.images
        return Perm([b[i] for i in self.images])

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, a in enumerate(self.images):
            inv[a] = i
        return Perm(inv)

    def identity(self) -> "Perm":
        return Perm.identity_of(len(self.images))

    def is_identity(self) -> bool:
        return all(i == a for i, a in enumerate(self.images))

    def act(self, point: int) -> int:
        return self.images[point]

    def cycles(self, one_based: bool = True):
        seen = set()
        out = []
        off = 1 if one_based else 0
        for i in range(len(self.images)):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(c + off for c in cyc))
        return out

    def order(self) -> int:
        m = 1
        for c in self.cycles():
            m = m * len(c) // gcd(m, len(c))
        return m

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


# -- matrices over GF(p^k) ------------------------------------------------------

class Matrix(GroupElement):
    """Invertible square matrix over a :class:`FieldSpec`; acts on row vectors."""

    __slots__ = ("field", "rows")
    tag = TAG_MATRIX

    def __init__(self, field: FieldSpec, rows):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self._code = None

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity_of(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def compatible(self, other) -> bool:
        return self.field == other.field and self.dim == other.dim

    def _payload(self) -> bytes:
        n = self.dim
        flat = [x for r in self.rows for x in r]
        return struct.pack(">HH", self.field.size, n) + struct.pack(f">{n * n}I", *flat)

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        F = self.field
        n = self.dim
        cols = list(zip(*other.rows))
        out = []
        if F.p == 2:
            mul = F.mul
            for r in self.rows:
                row = []
                for c in cols:
                    s = 0
                    for a, b in zip(r, c):
                        if a and b:
                            s ^= mul(a, b)
                    row.append(s)
                out.append(row)
        else:
            add, mul = F.add, F.mul
            for r in self.rows:
                row = []
                for c in cols:
                    s = 0
                    for a, b in zip(r, c):
                        if a and b:
                            s = add(s, mul(a, b))
                    row.append(s)
                out.append(row)
        return Matrix(F, out)

    def identity(self) -> "Matrix":
        return Matrix.identity_of(self.field, self.dim)

    def det(self) -> int:
        return _det(self.field, [list(r) for r in self.rows])

    def inverse(self) -> "Matrix":
        F = self.field
        n = self.dim
        a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            inv = F.inv(a[col][col])
            a[col] = [F.mul(inv, x) for x in a[col]]
            for i in range(n):
                if i != col and a[i][col]:
                    f = a[i][col]
                    a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[col])]
        return Matrix(F, [r[n:] for r in a])

    def act(self, vec) -> tuple:
        F = self.field
        out = []
        for c in zip(*self.rows):
            s = 0
            for a, b in zip(vec, c):
                if a and b:
                    s = F.add(s, F.mul(a, b))
            out.append(s)
        return tuple(out)

    def __repr__(self):
        return f"Matrix({self.field!r}, {[list(r) for r in self.rows]})"


def _det(F: FieldSpec, a) -> int:
    n = len(a)
    a = [list(r) for r in a]
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = F.neg(det)
        det = F.mul(det, a[col][col])
        inv = F.inv(a[col][col])
        for i in range(col + 1, n):
            if a[i][col]:
                f = F.mul(a[i][col], inv)
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[col])]
    return det


# -- affine semilinear maps of GF(Q)^2 -----------------------------------------

class SemilinearSpace:
    """Parameters shared by all affine-semilinear elements of one family.

    An element ``(v, s, b, j)`` is the map ``w -> L(s, b) * frob^j(w) + v`` on
    ``GF(Q)^2`` where ``frob(w) = w**q`` (order r), ``L(s, b) = diag(e^s,
    e^s * f^b)`` and e, f have multiplicative orders ``e_order`` and
    ``f_order``.  Keeping the linear part factored as exponents makes the
    product pure integer arithmetic.
    """

    def __init__(self, field: FieldSpec, q: int, r: int, e_order: int, f_order: int):
        Q = field.size
        if q ** r != Q:
            raise ValueError("field size must equal q**r")
        if (Q - 1) % e_order or (Q - 1) % f_order:
            raise ValueError("e and f orders must divide Q - 1")
        self.field = field
        self.q = q
        self.r = r
        self.e_order = e_order
        self.f_order = f_order
        self.e_log = (Q - 1) // e_order
        self.f_log = (Q - 1) // f_order
        self.qpow_e = [pow(q, j, e_order) for j in range(r)]
        self.qpow_f = [pow(q, j, f_order) for j in range(r)]
        self.qpow = [q ** j for j in range(r)]

    def key(self):
        return (self.field.size, self.q, self.r, self.e_order, self.f_order)

    def diag_logs(self, s: int, b: int) -> tuple[int, int]:
        """Logs (base: primitive element) of the two diagonal entries."""
        n = self.field.size - 1
        l1 = (s * self.e_log) % n
        return l1, (l1 + b * self.f_log) % n

    def apply_linear(self, s: int, b: int, j: int, w) -> tuple[int, int]:
        F = self.field
        l1, l2 = self.diag_logs(s, b)
        w1 = F.pow(w[0], self.qpow[j]) if j else w[0]
        w2 = F.pow(w[1], self.qpow[j]) if j else w[1]
        return (F.mul(w1, F.exp(l1)), F.mul(w2, F.exp(l2)))

    def compose_linear(self, d1, d2):
        """Linear part of "apply d1 then d2"; d = (s, b, j)."""
        s1, b1, j1 = d1
        s2, b2, j2 = d2
        return (
            (s2 + s1 * self.qpow_e[j2]) % self.e_order,
            (b2 + b1 * self.qpow_f[j2]) % self.f_order,
            (j1 + j2) % self.r,
        )

    def invert_linear(self, d):
        s, b, j = d
        jj = (-j) % self.r
        return (
            (-s * self.qpow_e[jj]) % self.e_order,
            (-b * self.qpow_f[jj]) % self.f_order,
            jj,
        )


class AffineSemilinear(GroupElement):
    __slots__ = ("space", "v", "d")
    tag = TAG_SEMILINEAR

    def __init__(self, space: SemilinearSpace, v, d):
        self.space = space
        self.v = (int(v[0]), int(v[1]))
        self.d = (
            int(d[0]) % space.e_order,
            int(d[1]) % space.f_order,
            int(d[2]) % space.r,
        )
        self._code = None

    def compatible(self, other) -> bool:
        return self.space is other.space or self.space.key() == other.space.key()

    def _payload(self) -> bytes:
        return struct.pack(">IIHHH", self.v[0], self.v[1], *self.d)

    def __mul__(self, other: "AffineSemilinear") -> "AffineSemilinear":
        self._check(other)
        sp = self.space
        F = sp.field
        w = sp.apply_linear(*other.d, self.v)
        v = (F.add(w[0], other.v[0]), F.add(w[1], other.v[1]))
        return AffineSemilinear(sp, v, sp.compose_linear(self.d, other.d))

    def inverse(self) -> "AffineSemilinear":
        sp = self.space
        F = sp.field
        di = sp.invert_linear(self.d)
        w = sp.apply_linear(*di, self.v)
        return AffineSemilinear(sp, (F.neg(w[0]), F.neg(w[1])), di)

    def identity(self) -> "AffineSemilinear":
        return AffineSemilinear(self.space, (0, 0), (0, 0, 0))

    def is_identity(self) -> bool:
        return self.v == (0, 0) and self.d == (0, 0, 0)

    def act(self, w) -> tuple[int, int]:
        F = self.space.field
        u = self.space.apply_linear(*self.d, w)
        return (F.add(u[0], self.v[0]), F.add(u[1], self.v[1]))

    @property
    def is_translation(self) -> bool:
        return self.d == (0, 0, 0)

    def __repr__(self):
        return f"Affine(v={self.v}, s={self.d[0]}, b={self.d[1]}, j={self.d[2]})"


# -- metacyclic pairs a^i b^j -------------------------------------------------

class MetacyclicSpec:
    """Presentation <a, b | a^m, b^s = a^t, b a b^-1 = a^r>."""

    def __init__(self, m: int, s: int, t: int, r: int):
        if pow(r, s, m) != 1 % m:
            raise ValueError("r**s must be 1 mod m")
        if (t * r - t) % m:
            raise ValueError("a^t must be central")
        if gcd(r, m) != 1:
            raise ValueError("r must be a unit mod m")
        self.m, self.s, self.t, self.r = m, s, t % m, r % m
        self.rpow = [pow(r, j, m) for j in range(s)]

    def key(self):
        return (self.m, self.s, self.t, self.r)

    @property
    def order(self) -> int:
        return self.m * self.s


class Metacyclic(GroupElement):
    __slots__ = ("spec", "i", "j")
    tag = TAG_METACYCLIC

    def __init__(self, spec: MetacyclicSpec, i: int, j: int):
        self.spec = spec
        self.i = i % spec.m
        self.j = j % spec.s
        self._code = None

    def compatible(self, other) -> bool:
        return self.spec is other.spec or self.spec.key() == other.spec.key()

    def _payload(self) -> bytes:
        return struct.pack(">III", self.spec.m, self.i, self.j)

    def __mul__(self, other: "Metacyclic") -> "Metacyclic":
        self._check(other)
        sp = self.spec
        i = self.i + other.i * sp.rpow[self.j]
        j = self.j + other.j
        if j >= sp.s:
            j -= sp.s
            i += sp.t
        return Metacyclic(sp, i, j)

    def inverse(self) -> "Metacyclic":
        sp = self.spec
        # (a^i b^j)^-1 = b^-j a^-i; b^-j = a^-t b^(s-j) when j > 0
        if self.j == 0:
            return Metacyclic(sp, -self.i, 0)
        bj = Metacyclic(sp, -sp.t, sp.s - self.j)
        return bj * Metacyclic(sp, -self.i, 0)

    def identity(self) -> "Metacyclic":
        return Metacyclic(self.spec, 0, 0)

    def is_identity(self) -> bool:
        return self.i == 0 and self.j == 0

    def __repr__(self):
        return f"a^{self.i} b^{self.j}"
