from __future__ import annotations

import numpy as np
import pytest

from engelgraph.connectivity import (
    NOT_COMPUTED,
    UNREACHABLE,
    Digraph,
    ball,
    directed_diameter,
    engel_digraph,
    is_strongly_connected,
    is_weakly_connected,
    reachable,
    scc,
    seed_condensation,
    undirected_diameter,
)
from engelgraph.config import get_config, set_config
from engelgraph.engel import DELTA, GAMMA, LAMBDA, gamma_n


def test_complete_and_trivial_graphs():
    k = Digraph.complete(5)
    assert scc(k).count == 1
    assert directed_diameter(k) == 1
    one = Digraph.complete(1)
    assert undirected_diameter(one) == 0 and directed_diameter(one) == 0


def test_path_graph():
    d = Digraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    r = scc(d)
    assert r.count == 4
    # reverse topological order: edges go from larger to smaller ids
    assert all(a > b for a, b in r.condensation.tolist())
    assert is_weakly_connected(d)
    assert undirected_diameter(d) == 3
    assert directed_diameter(d) is UNREACHABLE
    assert str(UNREACHABLE) == "unreachable"


def _reference_partition(d):
    n = d.n
    reach = [set(np.nonzero(reachable(d, v, "out", stop_when_all=False))[0].tolist()) for v in range(n)]
    comps = set()
    for v in range(n):
        comps.add(frozenset(w for w in reach[v] if v in reach[w]))
    return comps


@pytest.mark.parametrize("expr", ["S(4)", "A(5)", "GL(2,3)", "SL(2,3)", "Frob(19,6)", "S(5)", "PSL(2,7)", "D(12)"])
@pytest.mark.parametrize("mode", [GAMMA, gamma_n(2), DELTA])
def test_scc_matches_double_reachability(grp, expr, mode):
    d = engel_digraph(grp(expr), mode)
    if d.n == 0:
        pytest.skip("empty graph")
    assert scc(d).partition() == _reference_partition(d)


@pytest.mark.parametrize("expr", ["S(4)", "A(5)", "GL(2,3)", "PSL(2,8)", "S(5)"])
def test_condensation_preserves_components(grp, expr):
    g = grp(expr)
    for mode in (GAMMA, gamma_n(2), LAMBDA):
        d = engel_digraph(g, mode)
        assert scc(d).partition() == scc(d, clusters=seed_condensation(g, mode)).partition()
        labels = seed_condensation(g, mode)
        comp = scc(d).comp
        for c in np.unique(labels):
            assert len(np.unique(comp[labels == c])) == 1


def test_strong_connectivity_verdicts(grp):
    assert is_strongly_connected(grp("S(4)"), GAMMA)
    assert not is_strongly_connected(grp("A(5)"), GAMMA)
    assert is_strongly_connected(grp("S(5)"), gamma_n(2))
    assert not is_strongly_connected(grp("PSL(2,8)"), GAMMA)
    assert not is_strongly_connected(grp("C(6)"), GAMMA)  # empty graph
    assert is_weakly_connected(engel_digraph(grp("A(5)"), GAMMA))


def test_strong_connectivity_without_equivariance(grp):
    g = grp("GL(2,3)")
    assert is_strongly_connected(g, gamma_n(3), equivariance=False)
    assert not is_strongly_connected(g, gamma_n(2), equivariance=False)


def test_a5_five_cycles_outside_involution_component(grp):
    g = grp("A(5)")
    d = engel_digraph(g, GAMMA)
    r = scc(d)
    orders = g.table.element_orders[d.labels]
    inv_comp = set(r.comp[orders == 2].tolist())
    assert not inv_comp & set(r.comp[orders == 5].tolist())


def test_diameters(grp):
    d = engel_digraph(grp("S(4)"), GAMMA)
    dd = directed_diameter(d)
    assert isinstance(dd, int) and dd <= 4
    # equivariant sources give the same answer as all sources
    full = Digraph(d.n, d.out_row)
    assert directed_diameter(full) == dd
    assert undirected_diameter(full) == undirected_diameter(d)
    old = get_config()
    try:
        set_config(diameter_limit=10)
        assert directed_diameter(Digraph.complete(11)) is NOT_COMPUTED
    finally:
        set_config(**old.__dict__)


def test_balls(grp):
    g = grp("S(4)")
    t = g.table
    x = int(np.nonzero(t.element_orders == 3)[0][0])
    b0 = ball(g, GAMMA, x, 0)
    assert b0.members == [x]
    prev = set()
    for i in range(4):
        b = set(ball(g, GAMMA, x, i).members)
        assert prev <= b
        prev = b
    d = engel_digraph(g, GAMMA)
    pos = int(np.nonzero(d.labels == x)[0][0])
    backward = d.labels[reachable(d, pos, "in", stop_when_all=False)]
    assert prev == set(backward.tolist())
    out = ball(g, GAMMA, x, 10, direction="out")
    assert set(out.members) == set(d.labels[reachable(d, pos, "out", stop_when_all=False)].tolist())


def test_memory_budget_limits_memo(grp):
    g = grp("S(4)")
    d = engel_digraph(g, GAMMA)
    small = Digraph(d.n, d.out_row, memory_budget=0)
    small.csr()
    assert small._used == 0 and not small._rows
