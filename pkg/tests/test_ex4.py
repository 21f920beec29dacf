from __future__ import annotations

import numpy as np
import pytest

from engelgraph.catalog import make
from engelgraph.elements import AffineSemilinear
from engelgraph.engel import eng


@pytest.fixture(scope="module")
def ex4():
    return make("Ex4(7,3,19)")


def test_handles(ex4):
    x, c = ex4.handles["x"], ex4.handles["c"]
    assert ex4.order_hint == 7 ** 6 * 19 * 9
    assert len(ex4.d_parts) == 171 and len(ex4.handles["D"].members) == 171
    assert len(ex4.handles["C"].members) == 19
    assert x.order() == 9 and c.order() == 19
    assert x.inverse() * c * x == c ** 7
    assert ex4.fixed_points_on_f(x ** 3) == 1
    assert ex4.dim_f == 6


def _random(ex4, rng, k):
    out = []
    for _ in range(k):
        d = ex4.d_parts[rng.integers(len(ex4.d_parts))]
        v = rng.integers(ex4.Q, size=2)
        out.append(AffineSemilinear(ex4.space, v, d))
    return out


def test_batch_arithmetic_matches_scalar(ex4):
    rng = np.random.default_rng(3)
    for a, b in zip(_random(ex4, rng, 40), _random(ex4, rng, 40)):
        A, B = ex4.batch_of(a), ex4.batch_of(b)
        for got, want in ((ex4.bmul(A, B), a * b), (ex4.binv(A), a.inverse()), (ex4.bcomm(A, B), a.inverse() * b.inverse() * a * b)):
            assert ex4.elements_of(got)[0] == want


def test_batch_lengths_match_reference(ex4):
    rng = np.random.default_rng(5)
    xs = _random(ex4, rng, 60)
    # bias towards edges: pairs inside D and in the translation subgroup
    xs += [ex4.handles["x"], ex4.handles["c"], AffineSemilinear(ex4.space, (1, 2), (0, 0, 0))]
    ys = _random(ex4, rng, 60) + [ex4.handles["c"], ex4.handles["x"] ** 3, ex4.handles["c"]]
    for a, b in zip(xs, ys):
        if a == b:
            continue
        L = int(ex4.engel_lengths_batch(ex4.batch_of(a), ex4.batch_of(b))[0])
        tr = eng(a, b)
        assert L == (tr.trail_length if tr.adjacency else 0)


def test_fc_d_is_frobenius(ex4):
    from engelgraph.structure import is_frobenius

    g = ex4.fc_d_group()
    assert g.order == 58653
    v = is_frobenius(g)
    assert v and v.kernel.order == 343
