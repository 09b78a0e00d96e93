"""Random connected multigraphs, signed rotation systems and voltage assignments."""

from __future__ import annotations

import numpy as np

from .surface import Embedding, Graph


def random_graph(rng: np.random.Generator, n_vertices: int, n_edges: int, loops: bool = True) -> Graph:
    """Connected multigraph: a random spanning tree plus extra edges (loops and parallels allowed)."""
    if n_edges < n_vertices - 1:
        raise ValueError("too few edges for a connected graph")
    ends = []
    for v in range(1, n_vertices):
        ends.append((int(rng.integers(v)), v))
    while len(ends) < n_edges:
        a, b = (int(x) for x in rng.integers(n_vertices, size=2))
        if a == b and not loops:
            continue
        ends.append((a, b))
    order = rng.permutation(len(ends))
    ends = [ends[i] for i in order]
    # Random positive direction per edge.
    ends = [(b, a) if rng.random() < 0.5 else (a, b) for a, b in ends]
    return Graph(tuple(range(n_vertices)), tuple(ends))


def random_embedding(rng: np.random.Generator, graph: Graph, p_twist: float = 0.5) -> Embedding:
    rot = []
    for v in range(graph.num_vertices):
        darts = list(graph.darts_at[v])
        rot.append(tuple(darts[i] for i in rng.permutation(len(darts))))
    sign = tuple(-1 if rng.random() < p_twist else 1 for _ in range(graph.num_edges))
    return Embedding(graph, tuple(rot), sign)


def random_small_embedding(
    rng: np.random.Generator, max_vertices: int = 8, max_extra: int = 6, p_twist: float | None = None
) -> Embedding:
    nv = int(rng.integers(1, max_vertices + 1))
    ne = nv - 1 + int(rng.integers(1, max_extra + 1))
    if p_twist is None:
        p_twist = float(rng.choice([0.0, 0.2, 0.5]))
    return random_embedding(rng, random_graph(rng, nv, ne), p_twist)


def random_voltage_embedding(rng: np.random.Generator, max_vertices: int = 8, max_order: int = 12, max_extra: int = 6):
    """Random embedding with uniform random voltages in Z_n, ``1 <= n <= max_order``."""
    from .groups import cyclic_group
    from .voltage import attach_voltages

    emb = random_small_embedding(rng, max_vertices, max_extra)
    n = int(rng.integers(1, max_order + 1))
    return attach_voltages(emb, cyclic_group(n), [int(x) for x in rng.integers(n, size=emb.graph.num_edges)])


def _tree_path_darts(graph: Graph, parent: dict, u: int) -> list[int]:
    """Darts of the tree path from the root to ``u``."""
    path = []
    while parent[u] is not None:
        d = parent[u]
        path.append(d)
        u = graph.tail(d)
    return path[::-1]


def random_coset_instance(rng: np.random.Generator, emb: Embedding):
    """Random ``(faces, x, v, walk)`` meeting the hypotheses of the coset-counting statements.

    The faces have a connected closure, ``x`` is a connected edge set inside it
    containing ``v``, and ``walk`` is a closed walk at ``v`` inside ``x`` built
    from a few fundamental closed walks (possibly none).
    """
    g = emb.graph
    faces = emb.faces
    order = [int(i) for i in rng.permutation(len(faces))]
    want = int(rng.integers(1, len(faces) + 1))
    chosen = [order[0]]
    verts = {g.tail(d) for d in faces[order[0]].darts}
    for i in order[1:]:
        if len(chosen) >= want:
            break
        fv = {g.tail(d) for d in faces[i].darts}
        if fv & verts:
            chosen.append(i)
            verts |= fv
    xi = 0
    for i in chosen:
        xi |= faces[i].edge_mask
    v = sorted(verts)[int(rng.integers(len(verts)))]
    # Grow a connected edge set from v inside the closure.
    avail = [e for e in range(g.num_edges) if (xi >> e) & 1]
    target = int(rng.integers(1, len(avail) + 1))
    reached, x = {v}, 0
    while bin(x).count("1") < target:
        cand = [e for e in avail if not (x >> e) & 1 and (g.ends[e][0] in reached or g.ends[e][1] in reached)]
        if not cand:
            break
        e = cand[int(rng.integers(len(cand)))]
        x |= 1 << e
        reached.update(g.ends[e])
    # Closed walk: tree path out, one edge, tree path back.
    parent = {v: None}
    queue = [v]
    while queue:
        u = queue.pop(0)
        for d in g.darts_at[u]:
            if (x >> (d >> 1)) & 1 and g.head(d) not in parent:
                parent[g.head(d)] = d
                queue.append(g.head(d))
    walk: list[int] = []
    edges_x = [e for e in range(g.num_edges) if (x >> e) & 1]
    for _ in range(int(rng.integers(0, 4))):
        e = edges_x[int(rng.integers(len(edges_x)))]
        d = 2 * e + int(rng.integers(2))
        out = _tree_path_darts(g, parent, g.tail(d))
        back = [b ^ 1 for b in reversed(_tree_path_darts(g, parent, g.head(d)))]
        walk += out + [d] + back
    return chosen, x, v, walk
