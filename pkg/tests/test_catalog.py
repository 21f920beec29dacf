from __future__ import annotations

import pytest

from engelgraph.catalog import (
    ConstraintError,
    GroupSpecExpr,
    least_primitive_root,
    linear_order,
    make,
    make_linear,
    suzuki_order,
)
from engelgraph.connectivity import is_strongly_connected
from engelgraph.engel import GAMMA, gamma_n
from engelgraph.structure import is_frobenius


@pytest.mark.parametrize("expr,order", [
    ("S(4)", 24), ("A(5)", 60), ("A(7)", 2520), ("C(7)", 7), ("D(10)", 10), ("Q(8)", 8), ("Q(12)", 12),
    ("GL(2,3)", 48), ("SL(2,5)", 120), ("GL(2,4)", 180), ("PSL(2,7)", 168), ("PSL(2,8)", 504),
    ("PSL(2,16)", 4080), ("Frob(19,6)", 114), ("Frob(7,3)", 21),
])
def test_orders(grp, expr, order):
    assert grp(expr).order == order


def test_linear_order_formula():
    assert linear_order("GL", 3) == 48
    assert linear_order("SL", 5) == 120
    assert linear_order("PSL", 11) == 660
    assert linear_order("PSL", 8) == 504
    assert suzuki_order(8) == 29120


def test_primitive_root():
    assert least_primitive_root(7) == 3
    assert least_primitive_root(19) == 2


@pytest.mark.parametrize("expr", ["S(1)", "S(12)", "C(0)", "D(7)", "Q(6)", "GL(3,3)", "PSL(2,6)",
                                  "PSL(2,64)", "Sz(4)", "Frob(9,2)", "Frob(7,4)", "Ex4(7,2,19)",
                                  "Ex4(7,3,5)", "Ex4(19,3,5)", "Ex4(8,3,19)"])
def test_constraint_errors(expr):
    with pytest.raises(ConstraintError):
        make(expr)


def test_ex4_messages_name_the_constraint():
    with pytest.raises(ConstraintError, match="must divide"):
        make("Ex4(7,5,19)")
    with pytest.raises(ConstraintError, match="r\\^2"):
        make("Ex4(19,3,7)")


def test_isomorphic_forms_agree(grp):
    a5 = grp("A(5)")
    psl = make("PSL(2,4)")
    psl5 = make("PSL(2,5)")
    assert psl.order == psl5.order == 60
    for mode in (GAMMA, gamma_n(2), gamma_n(3)):
        v = is_strongly_connected(a5, mode)
        assert is_strongly_connected(psl, mode) == v == is_strongly_connected(psl5, mode)


def test_frobenius_family(grp):
    v = is_frobenius(grp("Frob(19,6)"))
    assert v and v.kernel.order == 19
    assert not is_frobenius(grp("S(4)"))


def test_expression_str():
    assert str(GroupSpecExpr("PSL", (2, 11))) == "PSL(2,11)"
    assert make("PSL(2, 11)").name == "PSL(2,11)"


def test_linear_dim_restriction():
    with pytest.raises(ConstraintError):
        make_linear("GL", 3, 2)
