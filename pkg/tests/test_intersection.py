from collections import Counter

import numpy as np
import pytest

from conftest import bouquet
from voltembed.homology import boundary_space, chain, homology_basis
from voltembed.intersection import (
    circle_decomposition,
    gram_matrix,
    independence_by_rank,
    pair_circles,
    pairing,
    self_intersection,
)
from voltembed.reproduce import pairing_violations
from voltembed.sampling import random_small_embedding
from voltembed.surface import Embedding, EmbeddingError, build_graph, is_circle


def test_meridian_and_longitude_cross(torus):
    g = torus.graph
    a, b = chain(g, ["a"]), chain(g, ["b"])
    assert pair_circles(torus, a, b) == 1
    assert pairing(torus, a ^ b, a) == 1
    assert pairing(torus, a, 0) == 0


def test_disjoint_circles_do_not_cross():
    g = build_graph(["x", "y"], [("x", "x"), ("y", "y"), ("x", "y")], ["a", "b", "l"])
    emb = Embedding.from_tokens(g, {"x": ["a+", "a-", "l+"], "y": ["b+", "l-", "b-"]}, {"a": -1})
    assert pair_circles(emb, 1, 2) == 0


def test_self_intersection(projective_loop, torus):
    assert self_intersection(projective_loop, 1) == 1
    assert self_intersection(torus, 1) == 0
    g = build_graph(["x", "y"], [("x", "x"), ("y", "y"), ("x", "y")], ["a", "b", "l"])
    emb = Embedding.from_tokens(g, {"x": ["a+", "a-", "l+"], "y": ["b+", "b-", "l-"]}, {"a": -1, "b": -1})
    assert self_intersection(emb, 0b011) == 0


def test_gram_matrices(torus, sphere_loop):
    g = torus.graph
    m = gram_matrix(torus, [chain(g, ["a"]), chain(g, ["b"])])
    assert m.tolist() == [[0, 1], [1, 0]]
    assert independence_by_rank(m) == "independent"
    s = gram_matrix(sphere_loop, [1])
    assert s.tolist() == [[0]]
    assert independence_by_rank(s) == "inconclusive"


def test_genus_two_star_pattern():
    emb = bouquet("a+ b+ a- b- c+ d+ c- d-")
    g = emb.graph
    m = gram_matrix(emb, [chain(g, [x]) for x in "abcd"])
    assert m.tolist() == [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    assert m.rank() == 4


def test_boundaries_pair_to_zero():
    rng = np.random.default_rng(31)
    for _ in range(80):
        emb = random_small_embedding(rng)
        basis = homology_basis(emb)
        for f in boundary_space(emb).rows:
            for z in basis:
                assert pairing(emb, f, z) == 0


def test_pairing_laws_on_random_embeddings():
    rng = np.random.default_rng(32)
    bad = Counter()
    for _ in range(60):
        bad += pairing_violations(random_small_embedding(rng), rng)
    assert not bad, dict(bad)


def test_gram_on_homology_basis_is_nonsingular():
    rng = np.random.default_rng(33)
    for _ in range(60):
        emb = random_small_embedding(rng)
        basis = homology_basis(emb)
        if basis:
            assert independence_by_rank(gram_matrix(emb, basis)) == "independent"


def test_circle_decomposition_partitions_the_cycle():
    rng = np.random.default_rng(34)
    for _ in range(60):
        emb = random_small_embedding(rng)
        for z in homology_basis(emb):
            parts = circle_decomposition(emb.graph, z)
            acc = 0
            for c in parts:
                assert is_circle(emb.graph, c) and acc & c == 0
                acc |= c
            assert acc == z


def test_non_cycle_rejected(torus):
    g = build_graph("ab", [("a", "b")])
    emb = Embedding.from_tokens(g, {"a": ["e0+"], "b": ["e0-"]})
    with pytest.raises(EmbeddingError):
        pairing(emb, 1, 1)
