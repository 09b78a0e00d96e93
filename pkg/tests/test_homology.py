import numpy as np
import pytest

from conftest import bouquet
from voltembed import gf2
from voltembed.homology import (
    are_homologous,
    betti1,
    boundary_space,
    chain,
    cycle_space_elements,
    fundamental_cycles,
    homology_basis,
    independent_direct,
    is_homologically_trivial,
)
from voltembed.petersen import barbell
from voltembed.sampling import random_small_embedding
from voltembed.surface import EmbeddingError, build_graph, classify_surface


def test_barbell_fundamental_cycles_are_the_loops():
    g = barbell()
    link = g.edge_index["v0u0"]
    cycles = fundamental_cycles(g, [link])
    assert sorted(cycles) == sorted(1 << e for e in range(3) if e != link)


def test_tree_has_no_cycles():
    g = build_graph("abc", [("a", "b"), ("b", "c")])
    assert fundamental_cycles(g) == []


def test_non_tree_rejected():
    g = barbell()
    with pytest.raises(EmbeddingError):
        fundamental_cycles(g, [0])


def test_boundary_space_small(torus, sphere_loop):
    assert boundary_space(torus).rank() == 0
    assert boundary_space(sphere_loop).rank() == 1


def test_boundaries_sum_to_zero():
    rng = np.random.default_rng(21)
    for _ in range(100):
        emb = random_small_embedding(rng)
        acc = 0
        for row in boundary_space(emb).rows:
            acc ^= row
        assert acc == 0


def test_triviality(torus, sphere_loop):
    assert is_homologically_trivial(torus, 0)
    assert not is_homologically_trivial(torus, 1)
    assert is_homologically_trivial(sphere_loop, 1)
    assert are_homologous(torus, 1, 1)
    assert not are_homologous(torus, 1, 2)
    assert are_homologous(sphere_loop, 1, 0)
    with pytest.raises(EmbeddingError):
        is_homologically_trivial(torus, 1 << 5)


def test_betti_numbers(torus, sphere_loop, projective_loop):
    assert [betti1(e) for e in (torus, sphere_loop, projective_loop)] == [2, 0, 1]


def test_betti_matches_euler_characteristic():
    rng = np.random.default_rng(22)
    for _ in range(200):
        emb = random_small_embedding(rng)
        assert betti1(emb) == 2 - classify_surface(emb).euler_char
        assert len(homology_basis(emb)) == betti1(emb)


def test_independence(torus, sphere_loop):
    a, b = chain(torus.graph, ["a"]), chain(torus.graph, ["b"])
    assert independent_direct(torus, [a, b])
    assert not independent_direct(torus, [a, a])
    assert not independent_direct(sphere_loop, [1])


def test_homology_basis_is_independent():
    rng = np.random.default_rng(23)
    for _ in range(100):
        emb = random_small_embedding(rng)
        basis = homology_basis(emb)
        assert independent_direct(emb, basis)
        # Every cycle is a boundary plus a combination of the basis.
        rows = list(boundary_space(emb).rows) + basis
        for z in cycle_space_elements(emb.graph, max_rank=20)[:64]:
            assert gf2.in_span(z, rows)


def test_chain_cancels_repeats():
    g = bouquet("a+ b+ a- b-").graph
    assert chain(g, ["a", "b", "a"]) == chain(g, ["b"])
