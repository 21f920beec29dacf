from __future__ import annotations

import numpy as np
import pytest

from engelgraph.engel import LAMBDA, lengths
from engelgraph.structure import (
    center,
    derived_series,
    fitting,
    hypercenter,
    is_frobenius,
    is_nilpotent,
    is_soluble,
    left_engel_set,
    p_core,
    prime_graph,
    right_engel_set,
    sylow,
    upper_central_series,
)


def test_centres(grp):
    assert center(grp("S(4)")).order == 1
    assert center(grp("GL(2,3)")).order == 2
    assert center(grp("C(6)")).order == 6
    assert hypercenter(grp("A(5)")).order == 1
    assert hypercenter(grp("GL(2,3)")) == center(grp("GL(2,3)"))
    assert hypercenter(grp("D(8)")).order == 8


def test_central_series_strictly_increasing(grp):
    for e in ["D(8)", "Q(8)", "GL(2,3)", "D(12)"]:
        g = grp(e)
        orders = [z.order for z in upper_central_series(g).terms]
        assert orders == sorted(set(orders))
        t = g.table
        for z in upper_central_series(g).terms:
            m = z.mask()
            for s in t.generators:
                assert m[[t.conj(int(i), s) for i in z.indices]].all()


def test_sylow_and_cores(grp):
    assert sylow(grp("S(4)"), 2).order == 8
    assert sylow(grp("A(5)"), 3).order == 3
    assert sylow(grp("D(8)"), 2).order == 8
    assert sylow(grp("Sz(8)"), 2).order == 64
    assert p_core(grp("S(4)"), 2).order == 4
    assert p_core(grp("A(5)"), 5).order == 1
    assert p_core(grp("Q(8)"), 2).order == 8


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_sylow_seeds(grp, seed):
    assert sylow(grp("S(5)"), 2, seed=seed).order == 8


def test_fitting(grp):
    assert fitting(grp("S(4)")).order == 4
    assert fitting(grp("A(5)")).order == 1
    assert fitting(grp("Q(8)")).order == 8
    assert fitting(grp("GL(2,3)")).order == 8


def test_fitting_is_largest_nilpotent_normal(grp):
    for e in ["S(4)", "GL(2,3)", "Frob(5,4)", "D(12)"]:
        g = grp(e)
        F = fitting(g)
        assert is_nilpotent(F)
        t = g.table
        m = F.mask()
        for s in t.generators:
            assert m[[t.conj(int(i), s) for i in F.indices]].all()


def test_nilpotent_soluble(grp):
    assert is_soluble(grp("S(4)")) and not is_nilpotent(grp("S(4)"))
    assert [len(x) for x in derived_series(grp("S(4)"))] == [24, 12, 4, 1]
    assert not is_soluble(grp("A(5)"))
    assert is_nilpotent(grp("D(8)"))


def test_frobenius(grp):
    v = is_frobenius(grp("S(3)"))
    assert v and v.kernel.order == 3
    assert not is_frobenius(grp("S(4)"))
    v = is_frobenius(grp("Frob(19,6)"))
    assert v and v.kernel.order == 19
    assert is_frobenius(grp("Frob(5,4)"))
    assert not is_frobenius(grp("C(6)"))
    assert not is_frobenius(grp("A(5)"))


def test_engel_sets(grp):
    assert left_engel_set(grp("S(4)")) == fitting(grp("S(4)"))
    assert right_engel_set(grp("GL(2,3)")).order == 2
    assert left_engel_set(grp("C(6)")).order == 6


@pytest.mark.parametrize("expr", ["S(4)", "GL(2,3)", "A(5)", "Frob(19,6)", "SL(2,3)", "D(12)"])
def test_hypercentre_is_universal_in_lambda(grp, expr):
    g = grp(expr)
    t = g.table
    a = t.all_indices()
    L = lengths(t, a[:, None], a[None, :])
    universal = np.nonzero((L > 0).all(axis=0) & (L > 0).all(axis=1))[0]
    assert np.array_equal(universal, hypercenter(g).indices)
    assert LAMBDA.accepts(L).shape == L.shape


def test_prime_graph(grp):
    pg = prime_graph(grp("A(5)"))
    assert pg.vertices == [2, 3, 5] and not pg.edges and pg.n_components == 3
    pg = prime_graph(grp("S(5)"))
    assert pg.edges == {(2, 3)}
    pg = prime_graph(__import__("engelgraph").make("C(30)"))
    assert pg.edges == {(2, 3), (2, 5), (3, 5)}
