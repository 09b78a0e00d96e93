import itertools

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from voltembed import gf2

rows_st = st.lists(st.integers(min_value=0, max_value=(1 << 10) - 1), max_size=8)


def _rank_numpy(rows, width=10):
    """Row reduction on a uint8 array, for comparison."""
    if not rows:
        return 0
    m = np.array([[(r >> j) & 1 for j in range(width)] for r in rows], dtype=np.uint8)
    r = 0
    for c in range(width):
        piv = np.nonzero(m[r:, c])[0]
        if not len(piv):
            continue
        p = r + piv[0]
        m[[r, p]] = m[[p, r]]
        for i in range(len(m)):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
        if r == len(m):
            break
    return r


def test_bits_roundtrip():
    assert gf2.bits(0b10110) == [1, 2, 4]
    assert gf2.from_indices([1, 2, 4]) == 0b10110
    assert gf2.from_indices([3, 3]) == 0
    assert gf2.parity(0b111) == 1


@settings(max_examples=200, deadline=None)
@given(rows_st)
def test_rank_matches_dense_elimination(rows):
    assert gf2.rank(rows) == _rank_numpy(rows)


@settings(max_examples=100, deadline=None)
@given(rows_st)
def test_nullspace_vectors_combine_rows_to_zero(rows):
    null = gf2.nullspace(rows)
    assert len(null) == len(rows) - gf2.rank(rows)
    for vec in null:
        acc = 0
        for i in gf2.bits(vec):
            acc ^= rows[i]
        assert acc == 0


@settings(max_examples=100, deadline=None)
@given(rows_st, st.integers(min_value=0, max_value=(1 << 10) - 1))
def test_solve_agrees_with_brute_force(rows, target):
    reachable = set()
    for mask in itertools.product((0, 1), repeat=len(rows)):
        acc = 0
        for bit, r in zip(mask, rows):
            if bit:
                acc ^= r
        reachable.add(acc)
    sol = gf2.solve(rows, target)
    assert (sol is not None) == (target in reachable) == gf2.in_span(target, rows)
    if sol is not None:
        acc = 0
        for i in gf2.bits(sol):
            acc ^= rows[i]
        assert acc == target


def test_matrix_helpers():
    m = gf2.Gf2Matrix.from_lists([[0, 1], [1, 0]])
    assert m.shape == (2, 2)
    assert m.rank() == 2
    assert m.to_lists() == [[0, 1], [1, 0]]
    assert m.transpose().to_lists() == [[0, 1], [1, 0]]
    z = gf2.Gf2Matrix.from_lists([[1, 1], [1, 1]])
    assert z.rank() == 1
    assert len(z.left_nullspace()) == 1
