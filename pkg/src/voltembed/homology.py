"""Mod-2 cellular homology of an embedded graph.

One-chains are int bitmasks over edge indices (bit ``e`` set means edge ``e``
is in the chain); two-chains are bitmasks over face indices.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from . import gf2
from .surface import Embedding, EmbeddingError, Graph, edge_set, is_cycle, spanning_forest


def _check_cycle(graph: Graph, z: int) -> int:
    if z < 0 or z >= 1 << graph.num_edges:
        raise EmbeddingError("chain has bits outside the edge range")
    if not is_cycle(graph, z):
        raise EmbeddingError("chain is not in the cycle space (odd vertex degree)")
    return z


def chain(graph: Graph, edge_ids: Iterable[str | int]) -> int:
    """Chain from edge ids (or indices); repeated edges cancel."""
    z = 0
    for e in edge_ids:
        idx = e if isinstance(e, int) else graph.edge_index[e]
        z ^= 1 << idx
    return z


def chain_ids(graph: Graph, z: int) -> list[str]:
    return sorted(graph.edge_ids[e] for e in edge_set(z))


def tree_path(graph: Graph, tree: Sequence[int], a: int, b: int) -> int:
    """Edges of the unique path from ``a`` to ``b`` in a spanning forest."""
    mask = gf2.from_indices(tree)
    parent: dict[int, tuple[int, int]] = {a: (-1, -1)}
    queue = deque([a])
    while queue and b not in parent:
        u = queue.popleft()
        for d in graph.darts_at[u]:
            e = d >> 1
            if (mask >> e) & 1:
                w = graph.head(d)
                if w not in parent:
                    parent[w] = (u, e)
                    queue.append(w)
    if b not in parent:
        raise EmbeddingError("endpoints lie in different tree components")
    z = 0
    while b != a:
        b, e = parent[b]
        z ^= 1 << e
    return z


def _check_forest(graph: Graph, tree: Sequence[int]) -> None:
    tree = list(tree)
    if len(set(tree)) != len(tree):
        raise EmbeddingError("spanning tree lists an edge twice")
    root = list(range(graph.num_vertices))

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for e in tree:
        t, h = graph.ends[e]
        rt, rh = find(t), find(h)
        if rt == rh:
            raise EmbeddingError("edge set contains a cycle, not a spanning tree")
        root[rt] = rh
    if len(tree) != graph.num_vertices - graph.num_components:
        raise EmbeddingError("edge set does not span the graph")


def fundamental_cycles(graph: Graph, spanning_tree: Sequence[int] | None = None) -> list[int]:
    """One cycle per non-tree edge: the edge plus the tree path joining its ends.

    Ordered by non-tree edge index. The result is a basis of the cycle space.
    """
    if spanning_tree is None:
        spanning_tree = spanning_forest(graph)
    _check_forest(graph, spanning_tree)
    in_tree = set(spanning_tree)
    out = []
    for e, (t, h) in enumerate(graph.ends):
        if e in in_tree:
            continue
        out.append((1 << e) ^ tree_path(graph, spanning_tree, t, h))
    return out


def boundary_space(emb: Embedding) -> gf2.Gf2Matrix:
    """Face boundaries as rows: an edge appears iff a face walk meets it an odd number of times."""
    return gf2.Gf2Matrix([f.boundary_chain for f in emb.faces], emb.graph.num_edges)


def is_homologically_trivial(emb: Embedding, z: int) -> bool:
    _check_cycle(emb.graph, z)
    return boundary_space(emb).contains(z)


def are_homologous(emb: Embedding, z1: int, z2: int) -> bool:
    _check_cycle(emb.graph, z1)
    _check_cycle(emb.graph, z2)
    return boundary_space(emb).contains(z1 ^ z2)


def betti1(emb: Embedding) -> int:
    """dim Z(G) - dim B; equals 2 - chi for a connected closed surface."""
    return emb.graph.cycle_rank - boundary_space(emb).rank()


def independent_direct(emb: Embedding, chains: Sequence[int]) -> bool:
    """No nontrivial mod-2 combination of ``chains`` is a sum of face boundaries."""
    for z in chains:
        _check_cycle(emb.graph, z)
    rows = boundary_space(emb).rows
    return gf2.rank(list(chains) + list(rows)) == gf2.rank(rows) + len(chains)


def homology_basis(emb: Embedding) -> list[int]:
    """Fundamental cycles whose classes form a basis of H1."""
    basis = gf2.echelon(boundary_space(emb).rows)
    out = []
    for z in fundamental_cycles(emb.graph):
        r = gf2.reduce(z, basis)
        if r:
            basis[r.bit_length() - 1] = r
            out.append(z)
    return out


def cycle_space_elements(graph: Graph, max_rank: int = 16) -> list[int]:
    """Every element of the cycle space (``2**rank`` chains, zero included)."""
    basis = fundamental_cycles(graph)
    if len(basis) > max_rank:
        raise EmbeddingError(f"cycle space of rank {len(basis)} exceeds max_rank={max_rank}")
    out = [0]
    for b in basis:
        out += [z ^ b for z in out]
    return out
