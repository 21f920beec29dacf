from __future__ import annotations

import numpy as np
import pytest

from engelgraph.config import set_config, get_config
from engelgraph.group import (
    CapExceeded,
    Subgroup,
    centralizer,
    conjugacy_classes,
    enumerate_group,
    normalizer_of_cyclic,
    subgroup_closure,
)


def _brute_classes(t):
    seen, sizes = set(), []
    for a in range(t.order):
        if a in seen:
            continue
        cls = {t.conj(a, h) for h in range(t.order)}
        seen |= cls
        sizes.append(len(cls))
    return sorted(sizes)


@pytest.mark.parametrize("expr", ["S(4)", "GL(2,3)", "Q(12)", "Frob(5,4)", "PSL(2,7)"])
def test_classes_match_brute_force(grp, expr):
    g = grp(expr)
    t = g.table
    class_id, reps, conjugator = t.classes()
    assert sorted(np.bincount(class_id).tolist()) == _brute_classes(t)
    for v in range(t.order):
        assert t.conj(int(reps[class_id[v]]), int(conjugator[v])) == v
        assert reps[class_id[v]] <= v


def test_table_is_a_group(grp):
    t = grp("GL(2,3)").table
    a = np.arange(t.order)
    for s in range(0, t.order, 7):
        assert np.all(t.mul(t.mul(a, s), t.inv(s)) == a)
    assert t.element_orders[t.identity] == 1
    els = t.elements
    for i in range(0, t.order, 5):
        for j in range(0, t.order, 3):
            assert els[t.mul(i, j)] == els[i] * els[j]


def test_centralizer_and_normalizer(grp):
    g = grp("S(4)")
    t = g.table
    x = int(np.nonzero(t.element_orders == 4)[0][0])
    assert centralizer(g, x).order == 4
    assert normalizer_of_cyclic(g, x).order == 8
    classes = conjugacy_classes(g)
    assert sorted(c.order for c in classes) == [1, 3, 6, 6, 8]
    assert [c.representative for c in classes] == sorted(c.representative for c in classes)


def test_subgroup_closure_and_as_group(grp):
    g = grp("S(4)")
    t = g.table
    invols = np.nonzero(t.element_orders == 2)[0]
    H = subgroup_closure(g, [int(invols[0]), int(invols[1])])
    assert 24 % H.order == 0
    sub = H.as_group()
    assert sub.order == H.order
    assert isinstance(H, Subgroup)
    assert t.elements[int(invols[0])] in H


def test_caps(grp):
    old = get_config()
    try:
        set_config(max_order_stored=100)
        g = __import__("engelgraph").make("S(5)")
        with pytest.raises(CapExceeded):
            g.table
        view = enumerate_group(g)
        assert sum(1 for _ in view) == 120
        set_config(max_order_stream=50)
        with pytest.raises(CapExceeded):
            enumerate_group(g)
    finally:
        set_config(**old.__dict__)
