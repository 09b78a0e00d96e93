"""Mod-2 intersection pairing on H1, read off the rotation system.

Two circles are compared by pushing the second one off the first inside the
ribbon neighbourhood of the graph and counting crossings:

* where the circles touch at a single vertex, they cross iff their ends
  interleave in the rotation there;
* along a shared path the pushed-off copy stays on one side of the first
  circle; that side is carried from one end of the path to the other, flipping
  at every twisted edge, and the circles cross iff the copy has to leave on
  the other side.

General cycles are split into edge-disjoint circles and paired bilinearly. A
circle paired with itself gives the parity of its twisted edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from . import gf2
from .homology import _check_cycle
from .surface import Embedding, EmbeddingError, Graph, edge_set, is_circle, negative_parity


def circle_decomposition(graph: Graph, z: int) -> list[int]:
    """Split a cycle-space element into edge-disjoint circles (deterministic)."""
    _check_cycle(graph, z)
    avail: dict[int, set[int]] = {}
    for e in edge_set(z):
        for d in (2 * e, 2 * e + 1):
            avail.setdefault(graph.tail(d), set()).add(d)

    def take(u: int) -> int:
        d = min(avail[u])
        for x in (d, d ^ 1):
            avail[graph.tail(x)].discard(x)
        return d

    circles = []
    for start in sorted(avail):
        while avail[start]:
            stack_v, stack_e = [start], []
            onpath = {start: 0}
            while stack_v:
                u = stack_v[-1]
                if not avail[u]:
                    # Back at the start with nothing left.
                    break
                d = take(u)
                w = graph.head(d)
                if w in onpath:
                    i = onpath[w]
                    circ = 1 << (d >> 1)
                    for e in stack_e[i:]:
                        circ |= 1 << e
                    circles.append(circ)
                    for x in stack_v[i + 1 :]:
                        del onpath[x]
                    del stack_v[i + 1 :]
                    del stack_e[i:]
                else:
                    onpath[w] = len(stack_v)
                    stack_v.append(w)
                    stack_e.append(d >> 1)
    return circles


def self_intersection(emb: Embedding, z: int) -> int:
    """<z, z>: the parity of twisted edges in ``z`` (cross terms cancel mod 2)."""
    _check_cycle(emb.graph, z)
    return negative_parity(emb, z)


def _dart_from(graph: Graph, u: int, e: int) -> int:
    return 2 * e if graph.ends[e][0] == u else 2 * e + 1


def _circle_darts_at(graph: Graph, c: int, u: int) -> list[int]:
    return [d for d in graph.darts_at[u] if (c >> (d >> 1)) & 1]


def _between(emb: Embedding, u: int, start: int, stop: int, x: int) -> bool:
    """Whether ``x`` lies strictly inside the forward rotation arc from ``start`` to ``stop``."""
    rot = emb.rotation[u]
    k = len(rot)
    i, j, m = rot.index(start), rot.index(stop), rot.index(x)
    return 0 < (m - i) % k < (j - i) % k


def _side(emb: Embedding, u: int, path_dart: int, c1_free: int, c2_free: int) -> int:
    return 1 if _between(emb, u, path_dart, c1_free, c2_free) else -1


def pair_circles(emb: Embedding, c1: int, c2: int) -> int:
    """Crossing parity of two distinct circles."""
    g = emb.graph
    if not (is_circle(g, c1) and is_circle(g, c2)):
        raise EmbeddingError("pair_circles expects two circles")
    if c1 == c2:
        raise EmbeddingError("identical circles: use self_intersection")

    def verts(c):
        return {u for e in edge_set(c) for u in g.ends[e]}

    common = verts(c1) & verts(c2)
    shared = c1 & c2
    shared_at: dict[int, list[int]] = {u: [] for u in common}
    for e in edge_set(shared):
        for u in set(g.ends[e]):
            shared_at[u].append(e)

    total = 0
    for v in common:
        if shared_at[v]:
            continue
        a1, a2 = _circle_darts_at(g, c1, v)
        b1, b2 = _circle_darts_at(g, c2, v)
        if _between(emb, v, a1, a2, b1) != _between(emb, v, a1, a2, b2):
            total ^= 1

    done: set[int] = set()
    for x in sorted(common):
        if len(shared_at[x]) != 1 or x in done:
            continue
        # Walk the shared path from x to its other end y.
        e = shared_at[x][0]
        p_x = _dart_from(g, x, e)
        (a_x,) = [d for d in _circle_darts_at(g, c1, x) if d != p_x]
        (b_x,) = [d for d in _circle_darts_at(g, c2, x) if d != p_x]
        side = _side(emb, x, p_x, a_x, b_x)
        u, d = x, p_x
        while True:
            side *= emb.sign[d >> 1]
            w = g.head(d)
            nxt = [f for f in shared_at[w] if f != d >> 1]
            if not nxt:
                break
            u, d = w, _dart_from(g, w, nxt[0])
        y, p_y = w, d ^ 1
        done.update((x, y))
        (a_y,) = [d for d in _circle_darts_at(g, c1, y) if d != p_y]
        (b_y,) = [d for d in _circle_darts_at(g, c2, y) if d != p_y]
        # Seen from y the path points the other way, hence the extra flip.
        if -side != _side(emb, y, p_y, a_y, b_y):
            total ^= 1
    return total


def pairing(emb: Embedding, z1: int, z2: int) -> int:
    """Bilinear extension of the circle pairing to all cycles."""
    g = emb.graph
    circles1 = circle_decomposition(g, z1)
    circles2 = circle_decomposition(g, z2)
    total = 0
    for c in circles1:
        for d in circles2:
            total ^= negative_parity(emb, c) if c == d else pair_circles(emb, c, d)
    return total


@dataclass(frozen=True)
class GramMatrix:
    """Pairings of an ordered list of cycles."""

    chains: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self):
        m = self.entries
        if m.shape != (len(self.chains), len(self.chains)) or not np.array_equal(m, m.T):
            raise EmbeddingError("Gram matrix must be square and symmetric")

    def rank(self) -> int:
        return gf2.rank(gf2.from_indices(np.flatnonzero(row)) for row in self.entries)

    def tolist(self) -> list[list[int]]:
        return self.entries.astype(int).tolist()

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.tolist())


def gram_matrix(emb: Embedding, chains: Sequence[int]) -> GramMatrix:
    n = len(chains)
    m = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i, n):
            m[i, j] = m[j, i] = pairing(emb, chains[i], chains[j])
    return GramMatrix(tuple(chains), m)


def independence_by_rank(m: GramMatrix) -> Literal["independent", "inconclusive"]:
    """Full-rank Gram matrix certifies homological independence; nothing else is concluded."""
    return "independent" if m.rank() == len(m.chains) else "inconclusive"
