"""JSON encodings for graphs, embeddings, voltage embeddings and chains.

Embedding::

    {"vertices": [...], "edges": [{"id": "a", "ends": ["v", "v"], "sign": 1}, ...],
     "rotations": {"v": ["a+", "b+", "a-", "b-"]}}

A voltage embedding adds ``"group"`` and ``"voltages"`` (edge id to the
voltage of its positive dart). Without ``"rotations"`` the object is a plain
graph or voltage graph.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .groups import group_from_json
from .homology import chain_ids
from .surface import Embedding, EmbeddingError, Graph, build_graph
from .voltage import VoltageEmbedding, VoltageGraph, attach_voltages

FIXTURE_PACKAGE = "voltembed.fixtures"


def graph_to_json(graph: Graph) -> dict:
    labels = [str(v) for v in graph.vertices]
    return {
        "vertices": labels,
        "edges": [{"id": eid, "ends": [labels[t], labels[h]]} for eid, (t, h) in zip(graph.edge_ids, graph.ends)],
    }


def to_json(obj) -> dict:
    if isinstance(obj, Graph):
        return graph_to_json(obj)
    if isinstance(obj, Embedding):
        out = graph_to_json(obj.graph)
        for edge, s in zip(out["edges"], obj.sign):
            edge["sign"] = s
        out["rotations"] = {str(v): toks for v, toks in obj.rotation_tokens().items()}
        return out
    if isinstance(obj, (VoltageGraph, VoltageEmbedding)):
        out = to_json(obj.base if isinstance(obj, VoltageEmbedding) else obj.graph)
        out["group"] = obj.group.to_json()
        out["voltages"] = {eid: obj.alpha[2 * e] for e, eid in enumerate(obj.graph.edge_ids)}
        return out
    raise TypeError(f"cannot encode {type(obj).__name__}")


def from_json(data: dict):
    """Decode to a Graph, Embedding, VoltageGraph or VoltageEmbedding."""
    try:
        verts = data["vertices"]
        edges = data["edges"]
        graph = build_graph(verts, [tuple(e["ends"]) for e in edges], [e["id"] for e in edges])
        target = graph
        if "rotations" in data:
            signs = [int(e.get("sign", 1)) for e in edges]
            target = Embedding.from_tokens(graph, data["rotations"], signs)
        if "group" in data:
            group = group_from_json(data["group"])
            return attach_voltages(target, group, dict(data.get("voltages", {})))
        return target
    except (KeyError, TypeError) as exc:
        raise EmbeddingError(f"malformed JSON object: {exc}") from exc


def dumps(obj) -> str:
    """Byte-stable JSON text (sorted keys, fixed indentation, trailing newline)."""
    if not isinstance(obj, (dict, list)):
        obj = to_json(obj)
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load(path: str | Path):
    return from_json(json.loads(Path(path).read_text()))


def fixture_names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(FIXTURE_PACKAGE).iterdir() if p.name.endswith(".json"))


def load_fixture(name: str):
    name = name.removesuffix(".json")
    res = resources.files(FIXTURE_PACKAGE) / f"{name}.json"
    if not res.is_file():
        raise FileNotFoundError(f"no fixture named {name!r}")
    return from_json(json.loads(res.read_text()))


def resolve(source: str):
    """Load a path if it exists, else a bundled fixture by name (``fixtures/x.json`` also works)."""
    p = Path(source)
    if p.is_file():
        return load(p)
    return load_fixture(p.name)


def chain_to_json(graph: Graph, z: int) -> list[str]:
    return chain_ids(graph, z)
