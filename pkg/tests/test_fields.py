from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engelgraph.fields import (
    FieldError,
    factorize,
    field_make,
    field_of_order,
    is_irreducible,
    is_prime,
    prime_power,
    smallest_irreducible,
)

FIELDS = [(2, 1), (3, 1), (2, 3), (3, 2), (7, 3), (5, 2), (2, 4)]


def test_primes_and_powers():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_power(343) == (7, 3)
    assert prime_power(12) is None
    assert factorize(20117979) == {7: 6, 19: 1, 3: 2}


def test_smallest_irreducible_is_irreducible():
    for p, k in [(2, 3), (3, 2), (7, 3), (2, 4)]:
        poly = smallest_irreducible(p, k)
        assert is_irreducible(poly, p)


def test_bad_fields():
    with pytest.raises(FieldError):
        field_make(4)
    with pytest.raises(FieldError):
        field_make(2, 0)


@pytest.mark.parametrize("p,k", FIELDS)
def test_primitive_element_generates(p, k):
    F = field_make(p, k)
    assert F.elem_order(F.primitive) == F.size - 1
    assert field_of_order(p ** k) is F


@pytest.mark.parametrize("p,k", FIELDS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms(p, k, data):
    F = field_make(p, k)
    el = st.integers(0, F.size - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
    # Frobenius is additive
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))


@pytest.mark.parametrize("p,k", FIELDS)
def test_vectorized_matches_scalar(p, k):
    F = field_make(p, k)
    rng = np.random.default_rng(0)
    a = rng.integers(0, F.size, 200)
    b = rng.integers(0, F.size, 200)
    assert F.vadd(a, b).tolist() == [F.add(x, y) for x, y in zip(a.tolist(), b.tolist())]
    assert F.vneg(a).tolist() == [F.neg(x) for x in a.tolist()]
    assert F.vmul_log(a, 5).tolist() == [F.mul(x, F.exp(5)) for x in a.tolist()]
