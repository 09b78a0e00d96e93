import networkx as nx
import numpy as np
import pytest

from voltembed.surface import Embedding, build_graph


def bouquet(rotation: str, signs: dict | None = None) -> Embedding:
    """One vertex ``x`` with loops named by the letters in ``rotation``.

    ``bouquet("a+ b+ a- b-")`` is the standard torus.
    """
    toks = rotation.split()
    names = sorted({t[:-1] for t in toks})
    g = build_graph(["x"], [("x", "x")] * len(names), names)
    return Embedding.from_tokens(g, {"x": toks}, signs)


def flag_oracle(emb: Embedding) -> tuple[int, bool]:
    """Euler characteristic and orientability from the flag graph.

    Flags are (dart, side). Three involutions: swap sides of a dart, join the
    corner between rotation-consecutive darts, and cross an edge (twisted
    edges keep the side). Faces, vertices and edges are orbits of pairs of
    involutions; the surface is orientable iff the flag graph is bipartite.
    """
    g = emb.graph
    succ = emb.succ
    side, corner, edge = [], [], []
    for d in range(g.num_darts):
        side.append(((d, 0), (d, 1)))
        corner.append(((d, 1), (succ[d], 0)))
        if d % 2 == 0:
            twisted = emb.sign[d >> 1] < 0
            for s in (0, 1):
                edge.append(((d, s), (d ^ 1, s if twisted else 1 - s)))

    def orbits(*kinds):
        h = nx.MultiGraph()
        h.add_nodes_from((d, s) for d in range(g.num_darts) for s in (0, 1))
        for k in kinds:
            h.add_edges_from(k)
        return h

    faces = nx.number_connected_components(orbits(corner, edge))
    chi = g.num_vertices - g.num_edges + faces
    whole = nx.Graph(orbits(side, corner, edge))
    bipartite = not any(u == v for u, v in whole.edges) and nx.is_bipartite(whole)
    return chi, bipartite


@pytest.fixture
def torus():
    return bouquet("a+ b+ a- b-")


@pytest.fixture
def sphere_loop():
    return bouquet("a+ a-")


@pytest.fixture
def projective_loop():
    return bouquet("a+ a-", {"a": -1})


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[key].line())
