"""Constructors for the group families used in the Engel-graph computations."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd

from .elements import Matrix, Metacyclic, MetacyclicSpec, Perm
from .fields import FieldError, field_make, is_prime, prime_power
from .group import Group


class ConstraintError(ValueError):
    """A family argument violates its constraint (message names the constraint)."""


@dataclass(frozen=True)
class GroupSpecExpr:
    name: str
    args: tuple

    def __str__(self):
        return f"{self.name}({','.join(map(str, self.args))})"


def _require(cond: bool, message: str):
    if not cond:
        raise ConstraintError(message)


# -- permutation families -----------------------------------------------------

def make_symmetric(n: int) -> Group:
    _require(2 <= n <= 9, f"S(n) needs 2 <= n <= 9, got n={n}")
    gens = [Perm.from_cycles(n, [tuple(range(1, n + 1))])]
    if n > 2:
        gens.append(Perm.from_cycles(n, [(1, 2)]))
    return Group(gens, name=f"S({n})", order_hint=factorial(n))


def make_alternating(n: int) -> Group:
    _require(2 <= n <= 9, f"A(n) needs 2 <= n <= 9, got n={n}")
    if n < 3:
        return Group([], identity=Perm.identity_of(n), name=f"A({n})", order_hint=1)
    # 3-cycles (1,2,k) generate A_n
    gens = [Perm.from_cycles(n, [(1, 2, k)]) for k in range(3, n + 1)]
    return Group(gens, name=f"A({n})", order_hint=factorial(n) // 2)


def make_cyclic(n: int) -> Group:
    _require(n >= 1, f"C(n) needs n >= 1, got n={n}")
    if n == 1:
        return Group([], identity=Perm.identity_of(1), name="C(1)", order_hint=1)
    return Group([Perm.from_cycles(n, [tuple(range(1, n + 1))])], name=f"C({n})", order_hint=n)


def make_dihedral(order: int) -> Group:
    """Dihedral group of the given order (``2m``), as ``<a, b | a^m, b^2, a^b = a^-1>``."""
    _require(order >= 4 and order % 2 == 0, f"D(order) needs an even order >= 4, got {order}")
    m = order // 2
    spec = MetacyclicSpec(m, 2, 0, m - 1)
    return Group([Metacyclic(spec, 1, 0), Metacyclic(spec, 0, 1)], name=f"D({order})", order_hint=order)


def make_dicyclic(order: int) -> Group:
    """Dicyclic group of order ``4m`` (quaternion for powers of two)."""
    _require(order >= 8 and order % 4 == 0, f"Q(order) needs order divisible by 4 and >= 8, got {order}")
    m = order // 4
    spec = MetacyclicSpec(2 * m, 2, m, 2 * m - 1)
    return Group([Metacyclic(spec, 1, 0), Metacyclic(spec, 0, 1)], name=f"Q({order})", order_hint=order)


def least_primitive_root(p: int) -> int:
    from .fields import factorize

    fac = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fac):
            return g
    return 1  # p == 2


def make_frobenius_metacyclic(p: int, d: int) -> Group:
    """``C_p : C_d`` acting through the power of the least primitive root of order d."""
    _require(is_prime(p), f"Frob(p,d) needs p prime, got p={p}")
    _require(d >= 1 and (p - 1) % d == 0, f"Frob(p,d) needs d | p-1, got d={d}, p-1={p - 1}")
    r = pow(least_primitive_root(p), (p - 1) // d, p)
    spec = MetacyclicSpec(p, d, 0, r)
    gens = [Metacyclic(spec, 1, 0)]
    if d > 1:
        gens.append(Metacyclic(spec, 0, 1))
    return Group(gens, name=f"Frob({p},{d})", order_hint=p * d)


# -- linear groups ------------------------------------------------------------

def _split_q(q: int):
    pk = prime_power(q)
    if pk is None:
        raise ConstraintError(f"q={q} is not a prime power")
    return pk


def linear_order(kind: str, q: int) -> int:
    gl = (q * q - 1) * (q * q - q)
    if kind == "GL":
        return gl
    sl = gl // (q - 1)
    if kind == "SL":
        return sl
    return sl // gcd(2, q - 1)


def make_linear(kind: str, dim: int, q: int) -> Group:
    _require(kind in ("GL", "SL", "PSL"), f"unknown linear family {kind!r}")
    _require(dim == 2, f"{kind}(dim,q) supports dim = 2 only, got dim={dim}")
    p, k = _split_q(q)
    if kind == "PSL":
        _require(q <= 32, f"PSL(2,q) needs q <= 32, got q={q}")
        return _psl2_projective(q, p, k)
    _require(q <= 9, f"{kind}(2,q) is provided for q <= 9 only, got q={q}")
    F = field_make(p, k)
    a = F.primitive
    basis = [p ** i for i in range(k)]  # polynomial basis 1, X, ..., X^(k-1)
    gens = [Matrix(F, [[1, b], [0, 1]]) for b in basis]
    gens.append(Matrix(F, [[0, 1], [F.neg(1), 0]]))
    if kind == "GL":
        gens.append(Matrix(F, [[a, 0], [0, 1]]))
    return Group(gens, name=f"{kind}(2,{q})", order_hint=linear_order(kind, q))


def _psl2_projective(q: int, p: int, k: int) -> Group:
    """PSL(2,q) on the q+1 points of the projective line: field elements and infinity (index q)."""
    F = field_make(p, k)
    inf = q
    a2 = F.mul(F.primitive, F.primitive)

    def perm(f):
        return Perm([f(x) for x in range(q + 1)])

    gens = []
    for i in range(k):
        b = p ** i
        gens.append(perm(lambda x, b=b: inf if x == inf else F.add(x, b)))
    gens.append(perm(lambda x: inf if x == inf else F.mul(a2, x)))
    gens.append(perm(lambda x: 0 if x == inf else (inf if x == 0 else F.neg(F.inv(x)))))
    return Group(gens, name=f"PSL(2,{q})", order_hint=linear_order("PSL", q))


# -- Suzuki group -------------------------------------------------------------

def suzuki_order(q: int) -> int:
    return q * q * (q * q + 1) * (q - 1)


def make_suzuki(q: int, self_check: bool = True) -> Group:
    """Sz(q) as 4x4 matrices over GF(q) with the twist ``x -> x^(2^(t+1))``."""
    _require(q == 8, f"Sz(q) is supported for q = 8 only, got q={q}")
    t = 1
    F = field_make(2, 3)
    m = F.mul
    add = F.add

    def th(x):
        return F.pow(x, 2 ** (t + 1))

    def lower(a, b):
        c = add(add(m(F.pow(a, 2), th(a)), m(a, b)), th(b))
        d = add(m(a, th(a)), b)
        return Matrix(F, [[1, 0, 0, 0], [a, 1, 0, 0], [b, th(a), 1, 0], [c, d, a, 1]])

    def torus(k):
        s = 2 ** t
        return Matrix(F, [
            [F.pow(k, 1 + s), 0, 0, 0],
            [0, F.pow(k, s), 0, 0],
            [0, 0, F.inv(F.pow(k, s)), 0],
            [0, 0, 0, F.inv(F.pow(k, 1 + s))],
        ])

    w = Matrix(F, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    gens = [lower(1, 0), lower(0, 1), torus(F.primitive), w]
    g = Group(gens, name=f"Sz({q})", order_hint=suzuki_order(q))
    if self_check and g.table.order != suzuki_order(q):
        raise AssertionError(f"Suzuki generators give order {g.table.order}, expected {suzuki_order(q)}")
    return g


# -- registry -----------------------------------------------------------------

def _ex4(q, r, t):
    from .ex4 import make_ex4

    return make_ex4(q, r, t)


FAMILIES = {
    "S": (1, make_symmetric),
    "A": (1, make_alternating),
    "C": (1, make_cyclic),
    "D": (1, make_dihedral),
    "Q": (1, make_dicyclic),
    "GL": (2, lambda d, q: make_linear("GL", d, q)),
    "SL": (2, lambda d, q: make_linear("SL", d, q)),
    "PSL": (2, lambda d, q: make_linear("PSL", d, q)),
    "Sz": (1, make_suzuki),
    "Frob": (2, make_frobenius_metacyclic),
    "Ex4": (3, _ex4),
}


def build(spec: GroupSpecExpr) -> Group:
    arity, ctor = FAMILIES[spec.name]
    if len(spec.args) != arity:
        raise ConstraintError(f"{spec.name} takes {arity} argument(s), got {len(spec.args)}")
    try:
        g = ctor(*spec.args)
    except FieldError as exc:
        raise ConstraintError(str(exc)) from None
    if g.name is None or g.name != str(spec):
        g.name = str(spec)
    return g


def make(text: str) -> Group:
    """Build a group from an expression such as ``"PSL(2,11)"``."""
    from .cli.parser import parse_group_expr

    return build(parse_group_expr(text))
