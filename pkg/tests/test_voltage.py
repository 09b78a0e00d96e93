import networkx as nx
import numpy as np
import pytest

from conftest import bouquet, flag_oracle
from voltembed.groups import cyclic_group, symmetric_group_s3
from voltembed.petersen import barbell, bouquet_torus_action, gp20_voltage, gp_barbell_voltage, gp_graph, gp_shift_action
from voltembed.sampling import random_coset_instance, random_small_embedding, random_voltage_embedding
from voltembed.search import EmbeddingSpace
from voltembed.surface import Embedding, EmbeddingError, classify_surface, graph_isomorphic, is_orientable
from voltembed.voltage import (
    attach_voltages,
    consecutive_lift_sets,
    coset_counts,
    deficiency,
    derived_embedding,
    derived_graph,
    derived_orientable_by_lifting,
    face_lift_violations,
    left_action,
    lift_walk,
    local_voltage_group,
    net_voltage,
    predicts_nonorientable,
    quotient_with_voltages,
    riemann_hurwitz_chi,
    verify_free_action,
)


def _nx(graph):
    h = nx.MultiGraph()
    h.add_nodes_from(range(graph.num_vertices))
    h.add_edges_from(graph.ends)
    return h


def planar_barbell(n, a=1, b=2):
    g = barbell()
    emb = Embedding.from_tokens(g, {"v0": ["v0v0+", "v0v0-", "v0u0+"], "u0": ["v0u0-", "u0u0+", "u0u0-"]})
    return attach_voltages(emb, cyclic_group(n), {"v0v0": a, "u0u0": b})


def test_attach_voltages_forms():
    g = barbell()
    z5 = cyclic_group(5)
    assert attach_voltages(g, z5, [0, 0, 0]).alpha == (0,) * 6
    vg = attach_voltages(g, z5, {"v0v0": 1, "u0u0+": 2})
    assert vg.alpha == (1, 4, 0, 0, 2, 3)
    assert attach_voltages(g, z5, {"v0v0-": 4}).alpha[:2] == (1, 4)
    with pytest.raises(EmbeddingError):
        attach_voltages(g, z5, {"v0v0+": 1, "v0v0-": 1})
    with pytest.raises(EmbeddingError):
        attach_voltages(g, z5, [1, 2])


@pytest.mark.parametrize("n,k", [(5, 2), (6, 2), (7, 1), (8, 3), (10, 2), (14, 2)])
def test_barbell_derives_gp(n, k):
    dg = derived_graph(gp_barbell_voltage(n, k))
    assert (dg.num_vertices, dg.num_edges) == (2 * n, 3 * n)
    assert nx.is_isomorphic(_nx(dg), _nx(gp_graph(n, k)))
    assert dg.ends == gp_graph(n, k).ends


def test_trivial_group_gives_base():
    rng = np.random.default_rng(41)
    emb = random_small_embedding(rng)
    ve = attach_voltages(emb, cyclic_group(1), [0] * emb.graph.num_edges)
    assert graph_isomorphic(derived_graph(ve), emb.graph)[0]
    assert classify_surface(derived_embedding(ve)) == classify_surface(emb)
    assert riemann_hurwitz_chi(ve) == classify_surface(emb).euler_char


def test_riemann_hurwitz_examples():
    ve = planar_barbell(14)
    assert sorted(deficiency(ve, f) for f in ve.base.faces) == [12, 13, 13]
    assert riemann_hurwitz_chi(ve) == -10
    zero = attach_voltages(ve.base, cyclic_group(6), [0, 0, 0])
    assert all(deficiency(zero, f) == 0 for f in zero.base.faces)
    assert riemann_hurwitz_chi(zero) == 6 * 2


@pytest.mark.parametrize("n", [1, 7, 10])
def test_bouquet_torus(n):
    ve = bouquet_torus_action(n)
    de = derived_embedding(ve)
    assert de.graph.num_components == 1
    assert classify_surface(de).to_dict()["name"] == "torus"
    assert verify_free_action(ve)


def test_random_voltage_embeddings_against_flag_oracle():
    rng = np.random.default_rng(42)
    for _ in range(120):
        ve = random_voltage_embedding(rng, max_vertices=6, max_order=8)
        de = derived_embedding(ve)
        chi, orientable = flag_oracle(de)
        assert chi == riemann_hurwitz_chi(ve)
        assert orientable == derived_orientable_by_lifting(ve, ve.base.sign) == is_orientable(de)
        assert face_lift_violations(ve, de) == []


def test_components_against_networkx():
    rng = np.random.default_rng(43)
    for _ in range(100):
        ve = random_voltage_embedding(rng, max_vertices=6, max_order=10)
        n = ve.group.order
        comps = nx.number_connected_components(_nx(derived_graph(ve)))
        assert comps == n // len(local_voltage_group(ve, 0))


def test_net_voltage_and_lifts():
    vg = gp_barbell_voltage(5, 2)
    g = vg.graph
    loop = [g.parse_dart("v0v0+")]
    assert net_voltage(vg, []) == 0
    assert net_voltage(vg, loop) == 1
    assert net_voltage(vg, loop + [g.parse_dart("v0v0-")]) == 0
    lift = lift_walk(vg, loop, 3)
    assert lift.end == 4 and lift.net_voltage == 1


def test_consecutive_lift_sets():
    g = bouquet("a+ a-").graph
    for n, w, sizes in [(6, 0, [1] * 6), (7, 1, [7]), (10, 2, [5, 5])]:
        vg = attach_voltages(g, cyclic_group(n), [w])
        parts = consecutive_lift_sets(vg, [0])
        assert sorted(len(p) for p in parts) == sizes
        # Each set is a coset of the subgroup generated by w.
        h = cyclic_group(n).generated_subgroup([w])
        assert all(p == frozenset((min(p) + x) % n for x in h) for p in parts)


def test_local_voltage_groups():
    vg = gp_barbell_voltage(5, 2)
    assert local_voltage_group(vg, 0) == frozenset(range(5))
    g = gp_graph(5, 2)
    outer = sum(1 << i for i in range(5))
    flat = attach_voltages(g, cyclic_group(3), [0] * g.num_edges)
    assert local_voltage_group(flat, 0, edges=outer) == frozenset({0})


def test_coset_counts_examples():
    ve = planar_barbell(5)
    g = ve.graph
    whole = (1 << g.num_edges) - 1
    res = coset_counts(ve, list(range(len(ve.base.faces))), whole, 0, [g.parse_dart("v0v0+")])
    assert res.ok and res.predicted[0] == 1
    zero = attach_voltages(ve.base, cyclic_group(4), [0, 0, 0])
    res = coset_counts(zero, [0], ve.base.faces[0].edge_mask, g.tail(ve.base.faces[0].darts[0]), [])
    assert res.ok and res.predicted[0] == 4


def test_coset_counts_random():
    rng = np.random.default_rng(44)
    for _ in range(100):
        ve = random_voltage_embedding(rng)
        res = coset_counts(ve, *random_coset_instance(rng, ve.base))
        assert res.ok, res


def test_left_action():
    vg = gp_barbell_voltage(5, 2)
    vperm, dperm = left_action(vg, 0)
    assert vperm == tuple(range(10)) and dperm == tuple(range(30))
    vperm, _ = left_action(vg, 1)
    # Both rims rotate as 5-cycles.
    for rim in (range(0, 5), range(5, 10)):
        x, orbit = rim[0], []
        for _ in range(5):
            orbit.append(x)
            x = vperm[x]
        assert sorted(orbit) == list(rim) and x == rim[0]
    assert verify_free_action(vg)
    assert verify_free_action(attach_voltages(bouquet("a+ a-").graph, symmetric_group_s3(), [1]))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_quotient_of_full_rotation_is_barbell(p):
    n = 2 * p
    q = quotient_with_voltages(gp_graph(n, 2), cyclic_group(n), gp_shift_action(n, 2))
    base = q.voltage.graph
    assert graph_isomorphic(base, barbell())[0]
    loops = sorted(min(q.voltage.alpha[2 * e], n - q.voltage.alpha[2 * e]) for e, (t, h) in enumerate(base.ends) if t == h)
    assert loops == [1, 2]
    assert graph_isomorphic(derived_graph(q.voltage), gp_graph(n, 2))[0]


def test_quotient_by_even_shifts_is_gp20():
    q = quotient_with_voltages(gp_graph(14, 2), cyclic_group(7), gp_shift_action(14, 2, step=2))
    base = q.voltage.graph
    assert graph_isomorphic(base, gp_graph(2, 0))[0]
    assert nx.is_isomorphic(_nx(derived_graph(q.voltage)), _nx(gp_graph(14, 2)))
    alpha = q.voltage.alpha
    nonzero = sorted(min(alpha[2 * e], 7 - alpha[2 * e]) for e in range(base.num_edges) if alpha[2 * e])
    assert nonzero == [1, 1, 1]


def test_trivial_quotient_and_bad_action():
    g = gp_graph(5, 2)
    ident = [(tuple(range(10)), tuple(range(30)))]
    q = quotient_with_voltages(g, cyclic_group(1), ident)
    assert q.voltage.graph.num_vertices == 10 and set(q.voltage.alpha) == {0}
    with pytest.raises(EmbeddingError):
        quotient_with_voltages(g, cyclic_group(2), ident * 2)


def test_quotient_round_trip_random():
    rng = np.random.default_rng(45)
    for _ in range(40):
        ve = random_voltage_embedding(rng, max_vertices=5, max_order=6)
        if derived_graph(ve).num_components != 1:
            continue
        de = derived_embedding(ve)
        acts = [left_action(ve, c) for c in ve.group.elements]
        q = quotient_with_voltages(de.graph, ve.group, acts, de)
        assert classify_surface(derived_embedding(q.voltage)) == classify_surface(de)
        assert graph_isomorphic(derived_graph(q.voltage), de.graph)[0]


def test_predicts_nonorientable_small():
    g = bouquet("a+ a-", {"a": -1})
    assert predicts_nonorientable(attach_voltages(g, cyclic_group(3), [1]))
    assert not predicts_nonorientable(attach_voltages(g, cyclic_group(2), [1]))
    with pytest.raises(EmbeddingError):
        predicts_nonorientable(attach_voltages(bouquet("a+ a-"), cyclic_group(3), [1]))


def test_predicts_nonorientable_gp20_projective_plane():
    vg = gp20_voltage(7)
    space = EmbeddingSpace(vg.graph)
    hits = 0
    for emb in space:
        if classify_surface(emb).to_dict()["name"] != "projective plane":
            continue
        ve = attach_voltages(emb, vg.group, list(vg.alpha[::2]))
        if predicts_nonorientable(ve):
            hits += 1
            assert not is_orientable(derived_embedding(ve))
    assert hits > 0


def test_predicts_nonorientable_is_sound():
    rng = np.random.default_rng(46)
    for _ in range(150):
        ve = random_voltage_embedding(rng, max_vertices=5, max_order=9, max_extra=4)
        if is_orientable(ve.base):
            continue
        if predicts_nonorientable(ve):
            assert not derived_orientable_by_lifting(ve, ve.base.sign)
