from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engelgraph.elements import (
    AffineSemilinear,
    BackendMismatch,
    Matrix,
    Metacyclic,
    MetacyclicSpec,
    Perm,
    SemilinearSpace,
    comm,
    conj,
    elem_eq,
    engel_word,
)
from engelgraph.fields import field_make


def test_perm_right_action():
    a = Perm.from_cycles(3, [(1, 2)])
    b = Perm.from_cycles(3, [(2, 3)])
    # apply a then b: 1 -> 2 -> 3
    assert (a * b).act(0) == 2
    assert repr(a * b) == "(1,3,2)"


def test_three_cycle_identity():
    for n in range(6, 13):
        a = Perm.from_cycles(n, [(1, 3, 5)])
        c = Perm.from_cycles(n, [tuple(range(1, n + 1))])
        assert a * c * a.inverse() * c.inverse() == Perm.from_cycles(n, [(1, 3, 5), (2, n, 4)])


def test_conjugation_and_commutator():
    a = Perm.from_cycles(4, [(1, 2, 3)])
    h = Perm.from_cycles(4, [(3, 4)])
    assert conj(a, h) == h.inverse() * a * h
    assert comm(a, h) == a.inverse() * h.inverse() * a * h
    assert engel_word(a, h, 0) == a
    assert engel_word(a, h, 2) == comm(comm(a, h), h)


def test_backend_mismatch():
    F = field_make(3)
    with pytest.raises(BackendMismatch):
        elem_eq(Perm.from_cycles(2, [(1, 2)]), Matrix.identity_of(F, 2))
    with pytest.raises(BackendMismatch):
        Perm.identity_of(3) * Perm.identity_of(4)


def test_matrix_inverse_and_det():
    F = field_make(3)
    m = Matrix(F, [[1, 2], [0, 1]])
    assert (m * m.inverse()).is_identity()
    assert m.det() == 1
    assert m.order() == 3


F343 = field_make(7, 3)
SPACE = SemilinearSpace(F343, 7, 3, 9, 19)
vec = st.tuples(st.integers(0, 342), st.integers(0, 342))
aff = st.builds(lambda v, s, b, j: AffineSemilinear(SPACE, v, (s, b, j)),
                vec, st.integers(0, 8), st.integers(0, 18), st.integers(0, 2))


@settings(max_examples=80, deadline=None)
@given(aff, aff, aff)
def test_affine_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    w = (5, 77)
    assert (a * b).act(w) == b.act(a.act(w))


def test_metacyclic_laws():
    spec = MetacyclicSpec(6, 2, 3, 5)  # dicyclic of order 12
    els = [Metacyclic(spec, i, j) for i in range(6) for j in range(2)]
    for a in els:
        assert (a * a.inverse()).is_identity()
        for b in els:
            for c in els[:4]:
                assert (a * b) * c == a * (b * c)
    b = Metacyclic(spec, 0, 1)
    assert b.order() == 4


def test_encoding_orders_elements():
    xs = [Perm.from_cycles(3, c) for c in ([], [(1, 2)], [(1, 2, 3)])]
    assert sorted(xs) == sorted(xs, key=lambda e: e.encode())
    assert len({x.encode() for x in xs}) == 3
