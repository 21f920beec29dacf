"""Arithmetic in GF(p^k) with a polynomial basis.

Field elements are plain ints in ``range(p**k)``; base-p digit ``i`` is the
coefficient of ``X**i``.  Multiplication goes through log/antilog tables
built once per field, so every field here is small (see ``MAX_FIELD_SIZE``).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

MAX_FIELD_SIZE = 1 << 20
_ADD_TABLE_LIMIT = 2048


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# -- polynomials over GF(p): coefficient tuples, lowest degree first --------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        a = _poly_trim(a)
    return a


def _monic_polys(p, deg):
    for m in range(p ** deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(m % p)
            m //= p
        yield tuple(coeffs) + (1,)


def is_irreducible(poly, p: int) -> bool:
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over GF(p).

    Candidates are ordered by ``(c_{k-1}, ..., c_0)``, i.e. by the integer
    whose base-p digits are the non-leading coefficients.
    """
    for poly in _monic_polys(p, k):
        if is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    p: int
    k: int
    reduction_poly: tuple[int, ...]
    _tables: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def size(self) -> int:
        return self.p ** self.k

    @property
    def order(self) -> int:
        return self.size

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # -- conversions -----------------------------------------------------
    def to_coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_coeffs(self, coeffs) -> int:
        a = 0
        for c in reversed(list(coeffs)[: self.k]):
            a = a * self.p + (c % self.p)
        return a

    def _slow_mul(self, a: int, b: int) -> int:
        p = self.p
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        if self.k == 1:
            return prod[0] % p
        return self.from_coeffs(_poly_mod(prod, self.reduction_poly, p) + [0] * self.k)

    def _build(self):
        t = self._tables
        if t:
            return t
        q = self.size
        p = self.p
        # primitive element: least generator of the multiplicative group
        fac = factorize(q - 1) if q > 2 else {}
        gen = None
        for cand in range(1, q):
            ok = True
            for r in fac:
                e = (q - 1) // r
                if self._slow_pow(cand, e) == 1:
                    ok = False
                    break
            if ok:
                gen = cand
                break
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        exp[q - 1 :] = exp[: q - 1]
        t["gen"] = gen
        t["exp"] = exp
        t["log"] = log
        t["exp_list"] = exp.tolist()
        t["log_list"] = log.tolist()
        digits = np.array([self.to_coeffs(a) for a in range(q)], dtype=np.int64).reshape(q, self.k)
        t["digits"] = digits
        t["powers"] = p ** np.arange(self.k, dtype=np.int64)
        if q <= _ADD_TABLE_LIMIT:
            s = (digits[:, None, :] + digits[None, :, :]) % p
            t["add"] = (s * t["powers"]).sum(axis=2)
            t["add_list"] = t["add"].tolist()
        t["neg"] = (((p - digits) % p) * t["powers"]).sum(axis=1)
        t["neg_list"] = t["neg"].tolist()
        return t

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    # -- scalar arithmetic ----------------------------------------------
    @property
    def primitive(self) -> int:
        return self._build()["gen"]

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        t = self._build()
        if "add_list" in t:
            return t["add_list"][a][b]
        return self.from_coeffs([x + y for x, y in zip(self.to_coeffs(a), self.to_coeffs(b))])

    def neg(self, a: int) -> int:
        return self._build()["neg_list"][a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        t = self._build()
        lg = t["log_list"]
        return t["exp_list"][lg[a] + lg[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        t = self._build()
        return t["exp_list"][(self.size - 1 - t["log_list"][a]) % (self.size - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero in finite field")
            return 1 if e == 0 else 0
        t = self._build()
        return t["exp_list"][(t["log_list"][a] * e) % (self.size - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._build()["log_list"][a]

    def exp(self, e: int) -> int:
        return self._build()["exp_list"][e % (self.size - 1)]

    def elem_order(self, a: int) -> int:
        """Multiplicative order of a non-zero element."""
        lg = self.log(a)
        n = self.size - 1
        from math import gcd

        return n // gcd(n, lg)

    def frobenius(self, a: int, j: int = 1) -> int:
        """``a ** (p**j)``."""
        return self.pow(a, self.p ** j)

    # -- vectorized helpers (numpy int arrays) ---------------------------
    def vadd(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        t = self._build()
        if "add" in t:
            return t["add"][a, b]
        d = t["digits"]
        return (((d[a] + d[b]) % self.p) * t["powers"]).sum(axis=-1)

    def vneg(self, a):
        return self._build()["neg"][a]

    def vmul_log(self, a, lg):
        """Multiply array ``a`` by the field element with log ``lg``."""
        t = self._build()
        a = np.asarray(a)
        la = t["log"][a]
        out = t["exp"][(la + lg) % (self.size - 1)]
        return np.where(a == 0, 0, out)

    def vlog(self, a):
        return self._build()["log"][a]

    def vexp(self, e):
        return self._build()["exp"][np.asarray(e) % (self.size - 1)]


@functools.lru_cache(maxsize=None)
def field_make(p: int, k: int = 1, cap: int = MAX_FIELD_SIZE) -> FieldSpec:
    """Construct GF(p^k) with the deterministic reduction polynomial."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k}")
    if p ** k > cap:
        raise FieldError(f"field size {p}^{k} exceeds cap {cap}")
    poly = (0, 1) if k == 1 else smallest_irreducible(p, k)
    return FieldSpec(p, k, poly)


def field_of_order(q: int) -> FieldSpec:
    pk = prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    return field_make(*pk)
