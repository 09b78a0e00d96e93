import math

import numpy as np
import pytest

from voltembed.petersen import QUOTIENT_KINDS, barbell, gp_graph, no_torus_search, quotient_voltage
from voltembed.search import (
    EmbeddingSpace,
    GuardrailError,
    classify_derived_direct,
    classify_derived_fast,
    cyclic_orders,
    enumerate_embeddings,
    tally_all,
)
from voltembed.surface import TORUS, classify_surface


def test_cyclic_orders():
    assert cyclic_orders([4, 1, 7]) == [(1, 4, 7), (1, 7, 4)]
    assert len(cyclic_orders(list(range(5)))) == math.factorial(4)
    assert cyclic_orders([3]) == [(3,)]


@pytest.mark.parametrize("graph,expected", [(barbell(), 16), (gp_graph(2, 0), 128), (gp_graph(7, 2), 4_194_304)])
def test_embedding_counts(graph, expected):
    space = EmbeddingSpace(graph)
    assert space.size == expected
    assert space.num_sign_classes == 2 ** graph.cycle_rank


def test_guardrail():
    with pytest.raises(GuardrailError):
        enumerate_embeddings(gp_graph(7, 2), limit=1000)


def test_enumeration_is_exhaustive_and_distinct():
    space = EmbeddingSpace(gp_graph(2, 0))
    seen = {(e.rotation, e.sign) for e in space}
    assert len(seen) == space.size
    assert space.embedding(37) == list(space)[37]


def test_sign_classes_cover_switching_classes():
    # Every sign assignment on the barbell is switching-equivalent to exactly one class.
    g = barbell()
    space = EmbeddingSpace(g)
    reps = {space.signs(s) for s in range(space.num_sign_classes)}
    seen = set()
    for bits in range(2 ** g.num_edges):
        sign = tuple(-1 if bits >> e & 1 else 1 for e in range(g.num_edges))
        # Switching at u0 flips the link only; canonical form zeroes the tree (link) edge.
        link = g.edge_index["v0u0"]
        if sign[link] < 0:
            sign = tuple(s if e != link else 1 for e, s in enumerate(sign))
        seen.add(sign)
    assert seen == reps


@pytest.mark.parametrize("kind", QUOTIENT_KINDS)
def test_fast_matches_direct_for_p3(kind):
    vg = quotient_voltage(kind, 3)
    fast = tally_all(vg, "fast")
    direct = tally_all(vg, "direct")
    assert fast == direct


def test_fast_matches_direct_on_p7_sample():
    vg = quotient_voltage("gpp2", 7)
    space = EmbeddingSpace(vg.graph)
    rng = np.random.default_rng(51)
    for i in rng.integers(space.size, size=40):
        emb = space.embedding(int(i))
        assert classify_derived_fast(vg, emb) == classify_derived_direct(vg, emb)


def test_p3_has_tori_and_witnesses_check_out():
    report = no_torus_search(3)
    counts = {r.kind: len(r.witnesses) for r in report.results}
    assert counts["gpp2"] > 0
    for r in report.results:
        for i in range(len(r.witnesses)):
            ve = r.witness_embedding(i)
            assert classify_derived_direct(r.voltage, ve.base) == TORUS


def test_search_is_deterministic_across_jobs():
    a = no_torus_search(3, jobs=1).to_json()
    b = no_torus_search(3, jobs=2).to_json()
    assert a == b


def test_p5_is_partial():
    report = no_torus_search(5)
    assert report.partial and not report.torus_found
    assert "partial" in report.to_json()["note"]


def test_search_rejects_non_primes():
    from voltembed.surface import EmbeddingError

    for p in (4, 9, 1):
        with pytest.raises(EmbeddingError):
            no_torus_search(p)


def test_base_tally_matches_direct_classification():
    vg = quotient_voltage("barbell", 3)
    space = EmbeddingSpace(vg.graph)
    tally = tally_all(vg)
    direct = {}
    for emb in space:
        cls = classify_surface(emb)
        direct[cls] = direct.get(cls, 0) + 1
    assert dict(tally.base) == direct
