from __future__ import annotations

import numpy as np
import pytest

from engelgraph.elements import Perm, engel_word
from engelgraph.engel import (
    DELTA,
    GAMMA,
    LAMBDA,
    GraphMode,
    VertexError,
    edge,
    eng,
    gamma_n,
    in_neighbors,
    lengths,
    out_neighbors,
    universal_indices,
    vertex_set,
)
from engelgraph.structure import fitting, is_frobenius, normalizer_mask


def test_commuting_pair_trace():
    a = Perm.from_cycles(5, [(1, 2)])
    b = Perm.from_cycles(5, [(3, 4, 5)])
    tr = eng(a, b)
    assert tr.adjacency and tr.trail_length == 1 and tr.terminal.is_identity()


def test_gl23_length_three(grp):
    t = grp("GL(2,3)").table
    x = int(np.nonzero(t.element_orders == 3)[0][0])
    found = [g for g in range(t.order) if t.element_orders[g] == 4
             and eng(t.elements[x], t.elements[g]).trail_length == 3
             and eng(t.elements[x], t.elements[g]).adjacency]
    assert found
    g = t.elements[found[0]]
    assert engel_word(t.elements[x], g, 3).is_identity()
    assert not engel_word(t.elements[x], g, 2).is_identity()


def test_a5_five_cycle_three_cycle():
    x = Perm.from_cycles(5, [(1, 2, 3, 4, 5)])
    y = Perm.from_cycles(5, [(1, 2, 3)])
    tr = eng(x, y)
    assert not tr.adjacency and not tr.terminal.is_identity()


def test_modes():
    assert str(gamma_n(3)) == "gamma_3"
    assert GraphMode.parse("lambda", 4).n is None
    with pytest.raises(ValueError):
        GraphMode("gamma_n")
    with pytest.raises(ValueError):
        GraphMode("omega")


def test_edge_rules(grp):
    g = grp("S(4)")
    t = g.table
    els = t.elements
    F = fitting(g)
    for x in range(1, t.order, 3):
        for y in F.indices.tolist():
            if x != y:
                assert edge(els[x], els[y], LAMBDA)
    with pytest.raises(VertexError):
        edge(els[3], els[3], LAMBDA)
    G2 = grp("GL(2,3)")
    with pytest.raises(VertexError):
        edge(G2.table.elements[G2.table.identity], G2.table.elements[5], GAMMA, group=G2)


def test_frobenius_kernel_has_no_outgoing_edges(grp):
    g = grp("Frob(19,6)")
    t = g.table
    K = is_frobenius(g).kernel
    k = int(K.indices[1])
    outside = np.nonzero(~K.mask())[0]
    assert not GAMMA.accepts(lengths(t, k, outside)).any()


def test_normalizer_gives_gamma2_edge(grp):
    g = grp("S(4)")
    t = g.table
    for x in range(1, t.order):
        cyc = np.zeros(t.order, bool)
        from engelgraph.group import cyclic_indices

        cyc[cyclic_indices(t, x)] = True
        norm = np.nonzero(normalizer_mask(g, cyc, [x]))[0]
        L = lengths(t, norm, x)
        assert np.all((L > 0) & (L <= 2))


def test_vertex_sets(grp):
    assert len(vertex_set(grp("A(5)"), GAMMA)) == 59
    assert len(vertex_set(grp("GL(2,3)"), GAMMA)) == 46
    assert len(vertex_set(grp("S(4)"), LAMBDA)) == 24
    assert len(vertex_set(grp("S(4)"), DELTA)) == 23
    # I_1 is the centre
    assert len(universal_indices(grp("GL(2,3)"), 1)) == 2


def test_neighbour_examples(grp):
    g = grp("GL(2,3)")
    t = g.table
    x = int(np.nonzero(t.element_orders == 3)[0][0])
    assert len(out_neighbors(x, g, GAMMA)) == 9
    z = int(np.nonzero(t.element_orders == 2)[0][0])
    # a central element is universal in lambda mode
    z = [i for i in range(t.order) if i != t.identity and t.element_orders[i] == 2
         and all(t.mul(i, s) == t.mul(s, i) for s in t.generators)][0]
    others = np.setdiff1d(np.arange(t.order), [z])
    assert np.array_equal(out_neighbors(z, g, LAMBDA), others)
    assert np.array_equal(in_neighbors(z, g, LAMBDA), others)


@pytest.mark.parametrize("expr", ["S(4)", "GL(2,3)", "A(5)"])
@pytest.mark.parametrize("mode", [GAMMA, gamma_n(2), LAMBDA, DELTA])
def test_equivariant_rows_match_direct(grp, expr, mode):
    from engelgraph.engel import EngelGraph

    g = grp(expr)
    a = EngelGraph(g, mode, equivariance=True)
    b = EngelGraph(g, mode, equivariance=False)
    for v in a.vertices.tolist():
        assert np.array_equal(a.out_row(v), b.out_row(v))
        assert np.array_equal(a.in_row(v), b.in_row(v))


def test_trace_invariants(grp):
    t = grp("SL(2,3)").table
    els = t.elements
    for i in range(0, t.order, 2):
        for j in range(1, t.order, 3):
            if i == j:
                continue
            tr = eng(els[i], els[j])
            assert 1 <= tr.trail_length <= t.order
            assert tr.adjacency == tr.terminal.is_identity()
            # Lambda_1 is symmetric
            assert edge(els[i], els[j], gamma_n(1)) == edge(els[j], els[i], gamma_n(1))
            # monotone in n
            for n in range(1, 5):
                if edge(els[i], els[j], gamma_n(n)):
                    assert edge(els[i], els[j], gamma_n(n + 1))
            if edge(els[i], els[j], gamma_n(5)):
                assert edge(els[i], els[j], LAMBDA)
