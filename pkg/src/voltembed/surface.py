"""Graphs as dart structures and cellular embeddings as signed rotation systems.

Darts are integers. Edge ``e`` owns the positive dart ``2*e`` and the negative
dart ``2*e + 1``; ``d ^ 1`` is the opposite dart. The positive dart of an
edge runs from ``ends[e][0]`` to ``ends[e][1]``. Vertices are addressed by
index internally and carry arbitrary hashable labels.

An :class:`Embedding` adds a cyclic order of darts at every vertex and a sign
per edge (``-1`` marks an orientation-reversing, i.e. twisted, edge).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence


class EmbeddingError(ValueError):
    """Invalid graph, embedding or chain input."""


def dart_edge(d: int) -> int:
    return d >> 1


def opposite(d: int) -> int:
    return d ^ 1


@dataclass(frozen=True)
class Graph:
    """Finite multigraph with loops, stored as darts.

    Connectivity is checked at construction unless ``connected=False`` is
    passed (derived graphs may split into several components).
    """

    vertices: tuple
    ends: tuple[tuple[int, int], ...]
    edge_ids: tuple[str, ...] = ()
    connected: bool = True

    def __post_init__(self):
        if not self.vertices:
            raise EmbeddingError("a graph needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise EmbeddingError("duplicate vertex labels")
        nv = len(self.vertices)
        for t, h in self.ends:
            if not (0 <= t < nv and 0 <= h < nv):
                raise EmbeddingError(f"edge end out of range: {(t, h)}")
        if not self.edge_ids:
            object.__setattr__(self, "edge_ids", tuple(f"e{i}" for i in range(len(self.ends))))
        if len(self.edge_ids) != len(self.ends) or len(set(self.edge_ids)) != len(self.ends):
            raise EmbeddingError("edge ids must be unique, one per edge")
        if self.connected and self.num_components != 1:
            raise EmbeddingError("graph is disconnected")

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.ends)

    @property
    def num_darts(self) -> int:
        return 2 * len(self.ends)

    def tail(self, d: int) -> int:
        return self.ends[d >> 1][d & 1]

    def head(self, d: int) -> int:
        return self.ends[d >> 1][1 - (d & 1)]

    def is_loop(self, e: int) -> bool:
        t, h = self.ends[e]
        return t == h

    @cached_property
    def vertex_index(self) -> dict[Hashable, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict[str, int]:
        return {eid: i for i, eid in enumerate(self.edge_ids)}

    @cached_property
    def darts_at(self) -> tuple[tuple[int, ...], ...]:
        """Darts grouped by tail vertex, in dart order."""
        out: list[list[int]] = [[] for _ in self.vertices]
        for d in range(self.num_darts):
            out[self.tail(d)].append(d)
        return tuple(tuple(x) for x in out)

    def degree(self, v: int) -> int:
        return len(self.darts_at[v])

    @cached_property
    def component_of(self) -> tuple[int, ...]:
        comp = [-1] * self.num_vertices
        c = 0
        for root in range(self.num_vertices):
            if comp[root] >= 0:
                continue
            comp[root] = c
            stack = [root]
            while stack:
                u = stack.pop()
                for d in self.darts_at[u]:
                    w = self.head(d)
                    if comp[w] < 0:
                        comp[w] = c
                        stack.append(w)
            c += 1
        return tuple(comp)

    @property
    def num_components(self) -> int:
        return max(self.component_of) + 1

    @property
    def cycle_rank(self) -> int:
        """Dimension of the cycle space."""
        return self.num_edges - self.num_vertices + self.num_components

    def dart_token(self, d: int) -> str:
        return self.edge_ids[d >> 1] + ("-" if d & 1 else "+")

    def parse_dart(self, token: str) -> int:
        if not token or token[-1] not in "+-":
            raise EmbeddingError(f"bad dart token {token!r}")
        try:
            e = self.edge_index[token[:-1]]
        except KeyError:
            raise EmbeddingError(f"unknown edge in dart token {token!r}") from None
        return 2 * e + (token[-1] == "-")

    def edges_between(self) -> Counter:
        """Multiplicity of each unordered vertex pair (loops as ``(v, v)``)."""
        return Counter(tuple(sorted(p)) for p in self.ends)


def build_graph(
    vertex_ids: Iterable[Hashable],
    edge_ends: Sequence[tuple[Hashable, Hashable]],
    edge_ids: Sequence[str] | None = None,
    connected: bool = True,
) -> Graph:
    """Build a :class:`Graph` from vertex labels and endpoint pairs.

    The positive dart of each edge leaves the first-listed endpoint.

    >>> g = build_graph(["v", "u"], [("v", "v"), ("u", "u"), ("v", "u")])
    >>> g.num_vertices, g.num_edges, g.num_darts
    (2, 3, 6)
    """
    vertices = tuple(vertex_ids)
    index = {v: i for i, v in enumerate(vertices)}
    ends = []
    for a, b in edge_ends:
        if a not in index or b not in index:
            raise EmbeddingError(f"edge {(a, b)!r} references an undeclared vertex")
        ends.append((index[a], index[b]))
    return Graph(vertices, tuple(ends), tuple(edge_ids or ()), connected)


def spanning_forest(graph: Graph, edge_mask: int | None = None) -> list[int]:
    """BFS spanning forest as a list of edge indices.

    With ``edge_mask`` only those edges are used (forest of the spanned subgraph).
    """
    seen = [False] * graph.num_vertices
    tree = []
    for root in range(graph.num_vertices):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for d in graph.darts_at[u]:
                e = d >> 1
                if edge_mask is not None and not (edge_mask >> e) & 1:
                    continue
                w = graph.head(d)
                if not seen[w]:
                    seen[w] = True
                    tree.append(e)
                    queue.append(w)
    return tree


@dataclass(frozen=True)
class Face:
    """A face as its boundary walk: ``(dart, side)`` pairs in traversal order.

    ``side`` is +1 when the walk turns with the rotation at the next vertex and
    -1 when it turns against it.
    """

    boundary: tuple[tuple[int, int], ...]

    @property
    def darts(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.boundary)

    def __len__(self) -> int:
        return len(self.boundary)

    @property
    def boundary_chain(self) -> int:
        """Edges met an odd number of times, as a bitmask."""
        z = 0
        for d, _ in self.boundary:
            z ^= 1 << (d >> 1)
        return z

    @property
    def edge_mask(self) -> int:
        z = 0
        for d, _ in self.boundary:
            z |= 1 << (d >> 1)
        return z

    def vertices(self, graph: Graph) -> list:
        """Vertex labels visited, starting at the tail of the first dart."""
        return [graph.vertices[graph.tail(d)] for d, _ in self.boundary]


@dataclass(frozen=True)
class SurfaceClass:
    orientable: bool
    euler_char: int

    def __post_init__(self):
        if self.orientable and self.euler_char % 2:
            raise AssertionError(f"orientable surface with odd Euler characteristic {self.euler_char}")
        if self.euler_char > 2 or (not self.orientable and self.euler_char > 1):
            raise AssertionError(f"no closed surface has these invariants: {self}")

    @property
    def genus(self) -> int:
        """Handles if orientable, crosscaps otherwise."""
        if self.orientable:
            return (2 - self.euler_char) // 2
        return 2 - self.euler_char

    @property
    def betti1(self) -> int:
        return 2 - self.euler_char

    @property
    def name(self) -> str:
        named = {
            (True, 2): "sphere",
            (True, 0): "torus",
            (False, 1): "projective plane",
            (False, 0): "Klein bottle",
        }
        key = (self.orientable, self.euler_char)
        if key in named:
            return named[key]
        return f"S_{self.genus}" if self.orientable else f"N_{self.genus}"

    def to_dict(self) -> dict:
        out = {"orientable": self.orientable, "chi": self.euler_char}
        out["genus" if self.orientable else "crosscaps"] = self.genus
        out["name"] = self.name
        return out


SPHERE = SurfaceClass(True, 2)
TORUS = SurfaceClass(True, 0)
PROJECTIVE_PLANE = SurfaceClass(False, 1)
KLEIN_BOTTLE = SurfaceClass(False, 0)


@dataclass(frozen=True)
class Embedding:
    """Signed rotation system on a graph."""

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    sign: tuple[int, ...] = field(default=())

    def __post_init__(self):
        g = self.graph
        if not self.sign:
            object.__setattr__(self, "sign", (1,) * g.num_edges)
        object.__setattr__(self, "rotation", tuple(tuple(r) for r in self.rotation))
        object.__setattr__(self, "sign", tuple(int(s) for s in self.sign))
        if len(self.rotation) != g.num_vertices:
            raise EmbeddingError("need one rotation per vertex")
        if len(self.sign) != g.num_edges or any(s not in (1, -1) for s in self.sign):
            raise EmbeddingError("need one sign (+1 or -1) per edge")
        for v, rot in enumerate(self.rotation):
            if sorted(rot) != list(g.darts_at[v]):
                raise EmbeddingError(
                    f"rotation at {g.vertices[v]!r} must list exactly the darts leaving it"
                )

    @classmethod
    def from_tokens(cls, graph: Graph, rotations: dict, signs: dict | Sequence[int] | None = None):
        """Build from dart tokens such as ``{"v": ["a+", "b+", "a-", "b-"]}``."""
        rot = []
        for v in graph.vertices:
            toks = rotations.get(v, rotations.get(str(v)))
            if toks is None:
                raise EmbeddingError(f"no rotation given for vertex {v!r}")
            rot.append(tuple(graph.parse_dart(t) for t in toks))
        if signs is None:
            sign = (1,) * graph.num_edges
        elif isinstance(signs, dict):
            sign = tuple(int(signs.get(eid, 1)) for eid in graph.edge_ids)
        else:
            sign = tuple(signs)
        return cls(graph, tuple(rot), sign)

    @cached_property
    def succ(self) -> tuple[int, ...]:
        """Rotation successor of each dart."""
        out = [0] * self.graph.num_darts
        for rot in self.rotation:
            k = len(rot)
            for i, d in enumerate(rot):
                out[d] = rot[(i + 1) % k]
        return tuple(out)

    @cached_property
    def pred(self) -> tuple[int, ...]:
        out = [0] * self.graph.num_darts
        for d, n in enumerate(self.succ):
            out[n] = d
        return tuple(out)

    def step(self, d: int, side: int) -> tuple[int, int]:
        """Face-tracing transition from the state ``(d, side)``."""
        side = side * self.sign[d >> 1]
        a = d ^ 1
        return (self.succ[a] if side > 0 else self.pred[a]), side

    def rotation_tokens(self) -> dict:
        g = self.graph
        return {g.vertices[v]: [g.dart_token(d) for d in rot] for v, rot in enumerate(self.rotation)}

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(trace_faces(self))


def _reverse_state(emb: Embedding, d: int, side: int) -> tuple[int, int]:
    # Same edge-side walked the other way.
    return d ^ 1, -side * emb.sign[d >> 1]


def trace_faces(emb: Embedding) -> list[Face]:
    """Trace every face of a signed rotation system.

    Each face is reported once; its reverse traversal is consumed with it, so
    face lengths sum to twice the number of edges.

    >>> g = build_graph(["v"], [("v", "v"), ("v", "v")], ["a", "b"])
    >>> emb = Embedding.from_tokens(g, {"v": ["a+", "b+", "a-", "b-"]})
    >>> [len(f) for f in trace_faces(emb)]
    [4]
    """
    nd = emb.graph.num_darts
    used = bytearray(2 * nd)

    def key(d, s):
        return 2 * d + (s < 0)

    faces = []
    for d0 in range(nd):
        for s0 in (1, -1):
            if used[key(d0, s0)]:
                continue
            walk = []
            d, s = d0, s0
            while True:
                used[key(d, s)] = 1
                walk.append((d, s))
                d, s = emb.step(d, s)
                if (d, s) == (d0, s0):
                    break
                if used[key(d, s)]:
                    raise AssertionError("face tracing re-entered a consumed state")
            for d, s in walk:
                k = key(*_reverse_state(emb, d, s))
                if used[k]:
                    raise AssertionError("reverse of a face walk was already consumed")
                used[k] = 1
            faces.append(Face(tuple(walk)))
    return faces


def euler_characteristic(emb: Embedding) -> int:
    g = emb.graph
    return g.num_vertices - g.num_edges + len(emb.faces)


def switching_function(emb: Embedding) -> list[int] | None:
    """Vertex signs ``t`` with ``t[u] * sign(e) * t[w] == 1`` on every edge, if any."""
    g = emb.graph
    t = [0] * g.num_vertices
    for root in range(g.num_vertices):
        if t[root]:
            continue
        t[root] = 1
        stack = [root]
        while stack:
            u = stack.pop()
            for d in g.darts_at[u]:
                w = g.head(d)
                want = t[u] * emb.sign[d >> 1]
                if not t[w]:
                    t[w] = want
                    stack.append(w)
                elif t[w] != want:
                    return None
    return t


def is_orientable(emb: Embedding) -> bool:
    """True iff the edge signs are balanced (switchable to all +1).

    For a disconnected embedding this asks that every component be orientable.
    """
    return switching_function(emb) is not None


def classify_surface(emb: Embedding) -> SurfaceClass:
    if emb.graph.num_components != 1:
        raise EmbeddingError("classify_surface needs a connected embedding")
    return SurfaceClass(is_orientable(emb), euler_characteristic(emb))


def edge_set(z: int) -> list[int]:
    out = []
    e = 0
    while z:
        if z & 1:
            out.append(e)
        z >>= 1
        e += 1
    return out


def vertex_degrees(graph: Graph, z: int) -> Counter:
    deg: Counter = Counter()
    for e in edge_set(z):
        t, h = graph.ends[e]
        deg[t] += 1
        deg[h] += 1
    return deg


def is_cycle(graph: Graph, z: int) -> bool:
    """Membership in the cycle space: every vertex has even degree in ``z``."""
    return all(k % 2 == 0 for k in vertex_degrees(graph, z).values())


def is_circle(graph: Graph, z: int) -> bool:
    """Whether the edges of ``z`` induce a connected 2-regular subgraph."""
    if z <= 0 or z >= 1 << graph.num_edges:
        return False
    deg = vertex_degrees(graph, z)
    if any(k != 2 for k in deg.values()):
        return False
    edges = edge_set(z)
    start = graph.ends[edges[0]][0]
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for d in graph.darts_at[u]:
            if (z >> (d >> 1)) & 1:
                w = graph.head(d)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return len(seen) == len(deg)


def negative_parity(emb: Embedding, z: int) -> int:
    return sum(1 for e in edge_set(z) if emb.sign[e] < 0) & 1


def is_orientation_reversing_cycle(emb: Embedding, z: int) -> bool:
    """A circle is orientation reversing iff it carries an odd number of twisted edges."""
    if not is_circle(emb.graph, z):
        raise EmbeddingError("chain does not induce a circle")
    return bool(negative_parity(emb, z))


def switch_vertex(emb: Embedding, v: int) -> Embedding:
    """Reverse the rotation at ``v`` and flip the sign of every link at ``v``.

    The embedded surface and its faces are unchanged.
    """
    g = emb.graph
    rot = list(emb.rotation)
    rot[v] = tuple(reversed(rot[v]))
    sign = list(emb.sign)
    for e, (t, h) in enumerate(g.ends):
        if (t == v) != (h == v):
            sign[e] = -sign[e]
    return Embedding(g, tuple(rot), tuple(sign))


def mirror(emb: Embedding) -> Embedding:
    """Reverse every rotation (global reflection)."""
    return Embedding(emb.graph, tuple(tuple(reversed(r)) for r in emb.rotation), emb.sign)


def relabel_embedding(emb: Embedding, graph: Graph, dart_map: Sequence[int]) -> Embedding:
    """Transport ``emb`` along a dart bijection onto another graph."""
    rot: list = [None] * graph.num_vertices
    for r in emb.rotation:
        new = tuple(dart_map[d] for d in r)
        rot[graph.tail(new[0])] = new
    sign = [0] * graph.num_edges
    for e, s in enumerate(emb.sign):
        sign[dart_map[2 * e] >> 1] = s
    return Embedding(graph, tuple(rot), tuple(sign))


# --- isomorphism ---------------------------------------------------------


def _adjacency(graph: Graph) -> list[Counter]:
    adj = [Counter() for _ in graph.vertices]
    for t, h in graph.ends:
        adj[t][h] += 1
        if t != h:
            adj[h][t] += 1
    return adj


def _refine(graphs: list[Graph], adjs: list[list[Counter]]) -> list[list[int]]:
    """Joint colour refinement (1-dimensional Weisfeiler-Leman)."""
    colors = []
    for g, adj in zip(graphs, adjs):
        colors.append([(g.degree(v), adj[v][v]) for v in range(g.num_vertices)])
    ncolors = -1
    while True:
        palette: dict = {}
        new = []
        for cols, adj in zip(colors, adjs):
            sig = []
            for v, c in enumerate(cols):
                nb = sorted((cols[w], m) for w, m in adj[v].items() if w != v)
                sig.append(palette.setdefault((c, tuple(nb)), len(palette)))
            new.append(sig)
        colors = new
        if len(palette) == ncolors:
            return colors
        ncolors = len(palette)


def graph_isomorphic(g1: Graph, g2: Graph) -> tuple[bool, dict | None]:
    """Backtracking multigraph isomorphism test.

    Returns ``(True, {label1: label2})`` with a witness vertex bijection, or
    ``(False, None)``.
    """
    n = g1.num_vertices
    if n != g2.num_vertices or g1.num_edges != g2.num_edges:
        return False, None
    adj1, adj2 = _adjacency(g1), _adjacency(g2)
    c1, c2 = _refine([g1, g2], [adj1, adj2])
    if sorted(c1) != sorted(c2):
        return False, None

    # Visit g1 in BFS order, rarest colour first, so each new vertex has a mapped neighbour.
    freq = Counter(c1)
    order: list[int] = []
    seen = [False] * n
    for root in sorted(range(n), key=lambda v: (freq[c1[v]], v)):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(adj1[u]):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)

    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(c2[v], []).append(v)

    phi = [-1] * n
    used = [False] * n

    def consistent(v: int, w: int) -> bool:
        a1, a2 = adj1[v], adj2[w]
        if a1[v] != a2[w]:
            return False
        for x, m in a1.items():
            if x != v and phi[x] >= 0 and a2[phi[x]] != m:
                return False
        mapped = sum(1 for x in a1 if x != v and phi[x] >= 0)
        mapped2 = sum(1 for y in a2 if y != w and used[y])
        return mapped == mapped2

    def candidates(v: int):
        for x in adj1[v]:
            if x != v and phi[x] >= 0:
                return [y for y in adj2[phi[x]] if not used[y] and c2[y] == c1[v]]
        return [y for y in by_color[c1[v]] if not used[y]]

    def search(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in candidates(v):
            if consistent(v, w):
                phi[v] = w
                used[w] = True
                if search(i + 1):
                    return True
                phi[v] = -1
                used[w] = False
        return False

    import sys

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, n + 100))
    try:
        found = search(0)
    finally:
        sys.setrecursionlimit(limit)
    if not found:
        return False, None
    return True, {g1.vertices[v]: g2.vertices[phi[v]] for v in range(n)}
