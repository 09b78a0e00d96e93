import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from voltembed.groups import GroupError, cosets, cyclic_group, symmetric_group_s3, table_group

KLEIN_FOUR = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]


def test_cyclic_basics():
    assert cyclic_group(1).order == 1
    z10 = cyclic_group(10)
    assert z10.element_order(2) == 5
    assert z10.element_order(0) == 1
    assert z10.generated_subgroup([2]) == z10.generated_subgroup([4])
    assert cyclic_group(5).generated_subgroup([1, 2]) == frozenset(range(5))
    with pytest.raises(GroupError):
        cyclic_group(0)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_two_has_order_p_in_z2p(p):
    assert cyclic_group(2 * p).element_order(2) == p


def test_table_groups():
    assert table_group([[0, 1], [1, 0]]).order == 2
    v4 = table_group(KLEIN_FOUR)
    assert all(v4.element_order(a) <= 2 for a in v4.elements)
    broken = [row[:] for row in KLEIN_FOUR]
    broken[1][2], broken[1][3] = broken[1][3], broken[1][2]
    broken[2][1], broken[3][1] = broken[3][1], broken[2][1]
    with pytest.raises(GroupError):
        table_group(broken)
    with pytest.raises(GroupError):
        table_group([[0, 0], [0, 0]])


def test_cosets():
    z10 = cyclic_group(10)
    assert len(cosets(z10.generated_subgroup([2]), z10)) == 2
    assert len(cosets({0}, z10)) == 10
    assert len(cosets(z10.elements, z10)) == 1
    with pytest.raises(GroupError):
        cosets({0, 3}, z10)


def test_s3_is_nonabelian():
    s3 = symmetric_group_s3()
    assert s3.order == 6 and not s3.is_abelian
    orders = sorted(s3.element_order(a) for a in s3.elements)
    assert orders == [1, 2, 2, 2, 3, 3]


@given(st.integers(1, 60), st.integers(0, 200))
def test_cyclic_order_is_n_over_gcd(n, a):
    g = cyclic_group(n)
    a %= n
    assert g.element_order(a) == n // math.gcd(a, n)
    assert len(g.generated_subgroup([a])) == g.element_order(a)


@given(st.integers(1, 40), st.lists(st.integers(0, 100), max_size=4))
def test_lagrange(n, gens):
    g = cyclic_group(n)
    h = g.generated_subgroup([x % n for x in gens])
    assert n % len(h) == 0
    parts = cosets(h, g)
    assert sorted(x for c in parts for x in c) == list(range(n))
