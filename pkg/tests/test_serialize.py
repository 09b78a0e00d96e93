import json
from importlib import resources

import numpy as np
import pytest

from voltembed import catalog
from voltembed.groups import symmetric_group_s3
from voltembed.sampling import random_small_embedding, random_voltage_embedding
from voltembed.serialize import dumps, fixture_names, from_json, load, load_fixture, resolve, to_json
from voltembed.surface import EmbeddingError
from voltembed.voltage import VoltageEmbedding, attach_voltages, derived_embedding, derived_graph


def test_fixture_set_matches_catalog():
    assert fixture_names() == sorted(catalog.BUILDERS)


@pytest.mark.parametrize("name", sorted(catalog.BUILDERS))
def test_fixture_regenerates_byte_identical(name):
    packaged = (resources.files("voltembed.fixtures") / f"{name}.json").read_text()
    assert catalog.render(name) == packaged
    assert dumps(load_fixture(name)) == packaged


def test_round_trips():
    rng = np.random.default_rng(61)
    for _ in range(50):
        emb = random_small_embedding(rng)
        # Vertex labels come back as strings, so compare the encoded form.
        back = from_json(json.loads(dumps(emb)))
        assert dumps(back) == dumps(emb)
        assert (back.rotation, back.sign) == (emb.rotation, emb.sign)
        ve = random_voltage_embedding(rng)
        back = from_json(to_json(ve))
        assert isinstance(back, VoltageEmbedding)
        assert (back.base.rotation, back.alpha, back.group) == (ve.base.rotation, ve.alpha, ve.group)


def test_derived_objects_serialize():
    ve = load_fixture("torus_bouquet")
    de = derived_embedding(ve)
    back = from_json(json.loads(dumps(de)))
    assert back.graph.vertices == tuple(str(v) for v in de.graph.vertices)
    assert len(back.faces) == len(de.faces)
    assert json.loads(dumps(derived_graph(ve)))["vertices"][:2] == ["x^0", "x^1"]


def test_table_group_round_trip():
    g = load_fixture("barbell_z6").graph
    vg = attach_voltages(g, symmetric_group_s3(), {"v0v0": 1, "u0u0": 3})
    back = from_json(to_json(vg))
    assert back.alpha == vg.alpha and back.group == vg.group


def test_resolve(tmp_path):
    path = tmp_path / "t.json"
    path.write_text(dumps(load_fixture("kb_q3")))
    assert resolve(str(path)) == load(path)
    assert resolve("fixtures/kb_q3.json") == load_fixture("kb_q3")
    with pytest.raises(FileNotFoundError):
        resolve("no_such_thing")


def test_malformed_input():
    with pytest.raises(EmbeddingError):
        from_json({"vertices": ["x"]})
    with pytest.raises(EmbeddingError):
        from_json({"vertices": ["x"], "edges": [{"id": "a", "ends": ["x", "y"]}]})


def test_regenerate(tmp_path):
    paths = catalog.regenerate(tmp_path, ["barbell_z5"])
    assert [p.name for p in paths] == ["barbell_z5.json"]
    with pytest.raises(KeyError):
        catalog.build("nope")
