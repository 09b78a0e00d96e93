"""Ordinary voltage graphs and their derived graphs and embeddings.

Voltages are stored per dart. The derived graph has vertex ``(v, a)``, labelled ``"v^a"``, at
index ``v * |A| + a`` and edge ``(e, a)`` at index ``e * |A| + a``; the positive dart
of ``(e, a)`` runs from ``(tail(e), a)`` to ``(head(e), a * alpha(e))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .groups import FiniteGroup
from .homology import cycle_space_elements
from .surface import (
    Embedding,
    EmbeddingError,
    Face,
    Graph,
    SurfaceClass,
    classify_surface,
    edge_set,
    is_circle,
    is_orientable,
    negative_parity,
    spanning_forest,
)


@dataclass(frozen=True)
class VoltageGraph:
    graph: Graph
    group: FiniteGroup
    alpha: tuple[int, ...]

    def __post_init__(self):
        _check_alpha(self.graph, self.group, self.alpha)


@dataclass(frozen=True)
class VoltageEmbedding:
    """A cellular embedding with voltages on its darts (a base embedding)."""

    base: Embedding
    group: FiniteGroup
    alpha: tuple[int, ...]

    def __post_init__(self):
        _check_alpha(self.graph, self.group, self.alpha)

    @property
    def graph(self) -> Graph:
        return self.base.graph


def _check_alpha(graph: Graph, group: FiniteGroup, alpha: Sequence[int]) -> None:
    if len(alpha) != graph.num_darts:
        raise EmbeddingError("need one voltage per dart")
    for d in range(0, graph.num_darts, 2):
        group.check(alpha[d])
        group.check(alpha[d + 1])
        if alpha[d + 1] != group.inv(alpha[d]):
            raise EmbeddingError(f"voltage of {graph.dart_token(d + 1)} is not the inverse of {graph.dart_token(d)}")


def attach_voltages(target: Graph | Embedding, group: FiniteGroup, assignment) -> VoltageGraph | VoltageEmbedding:
    """Voltages from a per-edge sequence or a mapping.

    Mapping keys may be edge ids, edge indices or dart tokens (``"a+"``,
    ``"a-"``). Unlisted edges get the identity; negative darts get inverses.
    """
    graph = target.graph if isinstance(target, Embedding) else target
    alpha: list[int | None] = [None] * graph.num_darts
    if isinstance(assignment, Mapping):
        items = assignment.items()
    else:
        if len(assignment) != graph.num_edges:
            raise EmbeddingError("per-edge voltage list has the wrong length")
        items = enumerate(assignment)
    explicit_neg: dict[int, int] = {}
    for key, val in items:
        val = group.check(int(val))
        if isinstance(key, int):
            alpha[2 * key] = val
        elif key in graph.edge_index:
            alpha[2 * graph.edge_index[key]] = val
        else:
            d = graph.parse_dart(key)
            if d & 1:
                explicit_neg[d] = val
            else:
                alpha[d] = val
    for d, val in explicit_neg.items():
        pos = alpha[d ^ 1]
        if pos is None:
            alpha[d ^ 1] = group.inv(val)
        elif group.inv(pos) != val:
            raise EmbeddingError(f"{graph.dart_token(d)} contradicts the inverse law")
    for d in range(0, graph.num_darts, 2):
        if alpha[d] is None:
            alpha[d] = group.identity
        alpha[d + 1] = group.inv(alpha[d])
    if isinstance(target, Embedding):
        return VoltageEmbedding(target, group, tuple(alpha))
    return VoltageGraph(graph, group, tuple(alpha))


# --- derived objects ----------------------------------------------------


def derived_vertex(vg, v: int, a: int) -> int:
    return v * vg.group.order + a


def derived_dart(vg, d: int, a: int) -> int:
    """The lift of base dart ``d`` whose tail is ``(tail(d), a)``."""
    n = vg.group.order
    e = d >> 1
    if d & 1:
        return 2 * (e * n + vg.group.mul(a, vg.alpha[d])) + 1
    return 2 * (e * n + a)


def base_dart(vg, dd: int) -> int:
    """Projection of a derived dart."""
    return 2 * ((dd >> 1) // vg.group.order) + (dd & 1)


def dart_lift_start(vg, dd: int) -> int:
    """Group element at the tail of a derived dart."""
    n = vg.group.order
    a = (dd >> 1) % n
    if dd & 1:
        return vg.group.mul(a, vg.alpha[base_dart(vg, dd) ^ 1])
    return a


def derived_graph(vg) -> Graph:
    g, grp = vg.graph, vg.group
    n = grp.order
    verts = tuple(f"{v}^{a}" for v in g.vertices for a in range(n))
    ends = []
    ids = []
    for e, (t, h) in enumerate(g.ends):
        for a in range(n):
            ends.append((t * n + a, h * n + grp.mul(a, vg.alpha[2 * e])))
            ids.append(f"{g.edge_ids[e]}^{a}")
    return Graph(verts, tuple(ends), tuple(ids), connected=False)


def derived_embedding(ve: VoltageEmbedding) -> Embedding:
    """Lift every rotation dart-wise; lifted edges keep their base sign."""
    dg = derived_graph(ve)
    n = ve.group.order
    rot = []
    for r in ve.base.rotation:
        for a in range(n):
            rot.append(tuple(derived_dart(ve, d, a) for d in r))
    sign = tuple(s for s in ve.base.sign for _ in range(n))
    return Embedding(dg, tuple(rot), sign)


def derived_surface_class(ve: VoltageEmbedding) -> SurfaceClass:
    return classify_surface(derived_embedding(ve))


# --- walks ----------------------------------------------------------------


def _check_walk(graph: Graph, walk: Sequence[int]) -> None:
    for d in walk:
        if not 0 <= d < graph.num_darts:
            raise EmbeddingError(f"dart {d} out of range")
    for d1, d2 in zip(walk, walk[1:]):
        if graph.head(d1) != graph.tail(d2):
            raise EmbeddingError("walk is broken: consecutive darts do not meet")


def net_voltage(vg, walk: Sequence[int]) -> int:
    """Ordered product of voltages along a walk."""
    _check_walk(vg.graph, walk)
    return vg.group.product(vg.alpha[d] for d in walk)


@dataclass(frozen=True)
class WalkLift:
    start: int
    darts: tuple[int, ...]
    end: int
    net_voltage: int


def lift_walk(vg, walk: Sequence[int], start: int) -> WalkLift:
    """Lift of ``walk`` beginning at the derived vertex over its first tail with group element ``start``."""
    g = vg.graph
    _check_walk(g, walk)
    vg.group.check(start)
    if not walk:
        raise EmbeddingError("cannot lift an empty walk without a base vertex")
    n = vg.group.order
    a = start
    darts = []
    for d in walk:
        dd = derived_dart(vg, d, a)
        darts.append(dd)
        a = vg.group.mul(a, vg.alpha[d])
    start_v = g.tail(walk[0]) * n + start
    end_v = g.head(walk[-1]) * n + a
    return WalkLift(start_v, tuple(darts), end_v, net_voltage(vg, walk))


def consecutive_lift_sets(vg, walk: Sequence[int]) -> list[frozenset[int]]:
    """Partition the lifts of a closed walk (named by starting element) into consecutive sets."""
    g = vg.graph
    if walk:
        _check_walk(g, walk)
        if g.head(walk[-1]) != g.tail(walk[0]):
            raise EmbeddingError("consecutive lifts need a closed walk")
    w = vg.group.product(vg.alpha[d] for d in walk)
    out, seen = [], set()
    for a in vg.group.elements:
        if a in seen:
            continue
        orbit = {a}
        b = vg.group.mul(a, w)
        while b != a:
            orbit.add(b)
            b = vg.group.mul(b, w)
        seen |= orbit
        out.append(frozenset(orbit))
    return out


def circle_walk(graph: Graph, z: int, start: int | None = None) -> list[int]:
    """An Eulerian closed walk around a circle."""
    if not is_circle(graph, z):
        raise EmbeddingError("chain does not induce a circle")
    edges = edge_set(z)
    if start is None:
        start = graph.ends[edges[0]][0]
    walk, used, u = [], set(), start
    while len(walk) < len(edges):
        for d in graph.darts_at[u]:
            e = d >> 1
            if (z >> e) & 1 and e not in used:
                used.add(e)
                walk.append(d)
                u = graph.head(d)
                break
    return walk


# --- local voltage groups and coset counts --------------------------------


def _potentials(vg, v: int, edge_mask: int) -> dict[int, int]:
    """Net voltage of a tree path from ``v`` to each vertex reachable inside ``edge_mask``."""
    g, grp = vg.graph, vg.group
    pot = {v: grp.identity}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for d in g.darts_at[u]:
            if (edge_mask >> (d >> 1)) & 1:
                w = g.head(d)
                if w not in pot:
                    pot[w] = grp.mul(pot[u], vg.alpha[d])
                    queue.append(w)
    return pot


def face_edges(emb: Embedding, faces: Sequence[int]) -> int:
    """Edges of the closures of the given faces (by index into ``emb.faces``)."""
    mask = 0
    for i in faces:
        mask |= emb.faces[i].edge_mask
    return mask


def local_voltage_group(vg, v: int, edges: int | None = None, faces: Sequence[int] | None = None) -> frozenset[int]:
    """Net voltages of closed walks at ``v`` inside the whole graph, a face set, or an edge set."""
    g = vg.graph
    if faces is not None:
        edges = face_edges(vg.base, faces)
    if edges is None:
        edges = (1 << g.num_edges) - 1
    touched = {u for e in edge_set(edges) for u in g.ends[e]}
    if edges and v not in touched:
        raise EmbeddingError("base vertex is not on the induced subgraph")
    pot = _potentials(vg, v, edges)
    if not touched <= set(pot):
        raise EmbeddingError("induced subgraph is disconnected")
    grp = vg.group
    gens = []
    for e in edge_set(edges):
        t, h = g.ends[e]
        gens.append(grp.mul(grp.mul(pot[t], vg.alpha[2 * e]), grp.inv(pot[h])))
    return grp.generated_subgroup(gens)


def _lift_components(vg, edge_mask: int) -> dict[int, int]:
    """Union-find labels of derived vertices over lifted edges of ``edge_mask``."""
    g, grp = vg.graph, vg.group
    n = grp.order
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_set(edge_mask):
        t, h = g.ends[e]
        for a in range(n):
            x, y = find(t * n + a), find(h * n + grp.mul(a, vg.alpha[2 * e]))
            if x != y:
                parent[x] = y
    return {x: find(x) for x in parent}


@dataclass(frozen=True)
class CosetCounts:
    """Formula values and directly counted values for the four coset statements."""

    predicted: tuple[int, int, int, int]
    counted: tuple[int, int, int, int]

    @property
    def ok(self) -> bool:
        return self.predicted == self.counted


def coset_counts(ve: VoltageEmbedding, faces: Sequence[int], x: int, v: int, walk: Sequence[int]) -> CosetCounts:
    """Components of the derived surface, of the lifted face set, of the lifted edge set, and consecutive-lift sets.

    ``faces`` index ``ve.base.faces``; ``x`` is an edge bitmask inside their
    closure; ``walk`` is a closed walk at ``v`` using only edges of ``x``.
    """
    g, grp = ve.graph, ve.group
    n = grp.order
    xi = face_edges(ve.base, faces)
    if not faces:
        raise EmbeddingError("need a nonempty face set")
    if x == 0 or x & ~xi:
        raise EmbeddingError("edge set must be nonempty and lie in the closure of the faces")
    if walk:
        _check_walk(g, walk)
        if g.tail(walk[0]) != v or g.head(walk[-1]) != v:
            raise EmbeddingError("walk must be closed and based at v")
        if any(not (x >> (d >> 1)) & 1 for d in walk):
            raise EmbeddingError("walk leaves the edge set")

    a_v = local_voltage_group(ve, v)
    a_vi = local_voltage_group(ve, v, edges=xi)
    a_vx = local_voltage_group(ve, v, edges=x)
    w = grp.product(ve.alpha[d] for d in walk)
    cyc = grp.generated_subgroup([w])
    predicted = (n // len(a_v), n // len(a_vi), len(a_vi) // len(a_vx), len(a_vx) // len(cyc))

    dg = derived_graph(ve)
    count1 = dg.num_components
    comp_i = _lift_components(ve, xi)
    count2 = len(set(comp_i.values()))
    root = v * n + grp.identity
    home_i = comp_i[root]
    comp_x = _lift_components(ve, x)
    count3 = len({comp_x[y] for y in comp_x if comp_i[y] == home_i})
    home_x = comp_x[root]
    starts = [a for a in range(n) if comp_x.get(v * n + a) == home_x]
    if walk:
        nxt = {}
        for a in starts:
            lift = lift_walk(ve, walk, a)
            nxt[a] = lift.end % n
    else:
        nxt = {a: a for a in starts}
    orbits, seen = 0, set()
    for a in starts:
        if a in seen:
            continue
        orbits += 1
        b = a
        while b not in seen:
            seen.add(b)
            b = nxt[b]
    return CosetCounts(predicted, (count1, count2, count3, orbits))


# --- branch points and Riemann-Hurwitz --------------------------------------


def face_voltage(ve: VoltageEmbedding, face: Face) -> int:
    return ve.group.product(ve.alpha[d] for d in face.darts)


def deficiency(ve: VoltageEmbedding, face: Face) -> int:
    """``|A|`` minus the number of faces lying over ``face``."""
    n = ve.group.order
    return n - n // ve.group.element_order(face_voltage(ve, face))


def riemann_hurwitz_chi(ve: VoltageEmbedding) -> int:
    """Euler characteristic of the derived surface predicted from branch-point deficiencies."""
    g = ve.graph
    chi = g.num_vertices - g.num_edges + len(ve.base.faces)
    return ve.group.order * chi - sum(deficiency(ve, f) for f in ve.base.faces)


def face_lift_violations(ve: VoltageEmbedding, derived: Embedding | None = None) -> list[str]:
    """Check that each derived face walks a base face boundary exactly ``|<omega>|`` times.

    Returns a list of problems (empty when the face-lift law holds).
    """
    if derived is None:
        derived = derived_embedding(ve)
    base = ve.base
    n = ve.group.order
    problems = []
    per_face = [0] * len(base.faces)
    state_face = {}
    for i, f in enumerate(base.faces):
        for d, s in f.boundary:
            state_face[(d, s)] = i
    for j, df in enumerate(derived.faces):
        proj = [(base_dart(ve, dd), s) for dd, s in df.boundary]
        d0, s0 = proj[0]
        orbit = [(d0, s0)]
        d, s = base.step(d0, s0)
        while (d, s) != (d0, s0):
            orbit.append((d, s))
            d, s = base.step(d, s)
        k, rem = divmod(len(proj), len(orbit))
        if rem or proj != orbit * k:
            problems.append(f"derived face {j} is not a repeated base face walk")
            continue
        w = ve.group.product(ve.alpha[d] for d, _ in orbit)
        if k != ve.group.element_order(w):
            problems.append(f"derived face {j} wraps {k} times, voltage order is {ve.group.element_order(w)}")
        i = state_face.get((d0, s0))
        if i is None:
            # Reverse traversal of a base face.
            from .surface import _reverse_state

            i = state_face[_reverse_state(base, *orbit[-1])]
        per_face[i] += 1
    for i, f in enumerate(base.faces):
        want = n // ve.group.element_order(face_voltage(ve, f))
        if per_face[i] != want:
            problems.append(f"base face {i} has {per_face[i]} lifts, expected {want}")
    return problems


# --- group action on the derived graph ------------------------------------


def left_action(vg, c: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Vertex and dart permutations of the derived graph for ``c``: ``(x, a) -> (x, c*a)``."""
    grp = vg.group
    grp.check(c)
    n = grp.order
    g = vg.graph
    vperm = tuple(v * n + grp.mul(c, a) for v in range(g.num_vertices) for a in range(n))
    dperm = [0] * (2 * g.num_edges * n)
    for e in range(g.num_edges):
        for a in range(n):
            ca = grp.mul(c, a)
            dperm[2 * (e * n + a)] = 2 * (e * n + ca)
            dperm[2 * (e * n + a) + 1] = 2 * (e * n + ca) + 1
    return vperm, tuple(dperm)


def action_violations(graph: Graph, vperm: Sequence[int], dperm: Sequence[int], emb: Embedding | None = None) -> list[str]:
    """Problems with a vertex/dart permutation pair as a graph (or embedding) automorphism."""
    out = []
    for d in range(graph.num_darts):
        if dperm[d ^ 1] != dperm[d] ^ 1:
            out.append(f"dart {d}: opposite not preserved")
            break
        if graph.tail(dperm[d]) != vperm[graph.tail(d)]:
            out.append(f"dart {d}: tail not preserved")
            break
    if emb is not None:
        for d in range(graph.num_darts):
            if dperm[emb.succ[d]] != emb.succ[dperm[d]]:
                out.append(f"dart {d}: rotation not preserved")
                break
        for e in range(graph.num_edges):
            if emb.sign[dperm[2 * e] >> 1] != emb.sign[e]:
                out.append(f"edge {e}: sign not preserved")
                break
    return out


def verify_free_action(vg) -> bool:
    """The left action is by automorphisms (of the derived embedding, when there is one),
    fixed-point free for every non-identity element, and regular on every fibre."""
    grp = vg.group
    n = grp.order
    if isinstance(vg, VoltageEmbedding):
        target = derived_embedding(vg)
        graph = target.graph
    else:
        target = None
        graph = derived_graph(vg)
    for c in grp.elements:
        vperm, dperm = left_action(vg, c)
        if action_violations(graph, vperm, dperm, target):
            return False
        if c != grp.identity:
            if any(vperm[x] == x for x in range(len(vperm))) or any(dperm[x] == x for x in range(len(dperm))):
                return False
    # Regular on fibres: the orbit of (v, identity) is the whole fibre over v.
    for v in range(vg.graph.num_vertices):
        orbit = {left_action(vg, c)[0][v * n + grp.identity] for c in grp.elements}
        if orbit != set(range(v * n, (v + 1) * n)):
            return False
    return True


# --- quotients ------------------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    """A voltage graph (or embedding) recovering ``graph`` as its derived graph.

    ``lift[q * |A| + a]`` is the vertex of the original graph identified with
    derived vertex ``(q, a)``.
    """

    voltage: VoltageGraph | VoltageEmbedding
    lift: tuple[int, ...]
    dart_lift: tuple[int, ...]


def quotient_with_voltages(
    graph: Graph,
    group: FiniteGroup,
    action: Sequence[tuple[Sequence[int], Sequence[int]]],
    embedding: Embedding | None = None,
) -> Quotient:
    """Quotient of a graph by a free group action, with voltages normalised to vanish on a spanning tree.

    ``action[c]`` is ``(vertex permutation, dart permutation)`` for group
    element ``c``. With ``embedding`` the action must also preserve rotations
    and signs, and the result is a voltage embedding.
    """
    n = group.order
    if len(action) != n:
        raise EmbeddingError("need one permutation pair per group element")
    acts = [(tuple(vp), tuple(dp)) for vp, dp in action]
    for c, (vp, dp) in enumerate(acts):
        if sorted(vp) != list(range(graph.num_vertices)) or sorted(dp) != list(range(graph.num_darts)):
            raise EmbeddingError(f"action of {c} is not a permutation")
        bad = action_violations(graph, vp, dp, embedding)
        if bad:
            raise EmbeddingError(f"action of {c} is not an automorphism: {bad[0]}")
        if c != group.identity:
            if any(vp[x] == x for x in range(len(vp))) or any(dp[x] in (x, x ^ 1) for x in range(len(dp))):
                raise EmbeddingError(f"action is not free: element {c} fixes a vertex, dart or edge")
    for a in range(n):
        for b in range(n):
            ab = group.mul(a, b)
            if any(acts[ab][0][x] != acts[a][0][acts[b][0][x]] for x in range(graph.num_vertices)):
                raise EmbeddingError("permutations do not compose like the group")

    # Vertex orbits, in order of their smallest member.
    qv = [-1] * graph.num_vertices
    rep: list[int] = []
    for x in range(graph.num_vertices):
        if qv[x] < 0:
            for c in range(n):
                qv[acts[c][0][x]] = len(rep)
            rep.append(x)
    # Edge orbits: the positive quotient dart is the smallest dart of the orbit.
    qe_of_dart = [-1] * graph.num_darts
    qdart = [-1] * graph.num_darts
    rep_dart: list[int] = []
    for d in range(graph.num_darts):
        if qe_of_dart[d] < 0:
            q = len(rep_dart)
            for c in range(n):
                y = acts[c][1][d]
                qe_of_dart[y] = qe_of_dart[y ^ 1] = q
                qdart[y], qdart[y ^ 1] = 2 * q, 2 * q + 1
            rep_dart.append(d)
    qends = tuple((qv[graph.tail(d)], qv[graph.head(d)]) for d in rep_dart)
    qgraph = Graph(
        tuple(graph.vertices[r] for r in rep),
        qends,
        tuple(graph.edge_ids[d >> 1] for d in rep_dart),
    )

    # Which group element carries each vertex to its orbit representative.
    def coord(reps):
        out = [0] * graph.num_vertices
        for q, r in enumerate(reps):
            for c in range(n):
                out[acts[c][0][r]] = c
        return out

    # Re-choose representatives along a spanning tree so tree voltages vanish.
    tree = spanning_forest(qgraph)
    new_rep = [-1] * len(rep)
    new_rep[0] = rep[0]
    elt = coord(rep)
    pending = list(tree)
    while pending:
        rest = []
        for qe in pending:
            t, h = qends[qe]
            if new_rep[t] >= 0 and new_rep[h] < 0:
                d, target = rep_dart[qe], new_rep[t]
            elif new_rep[h] >= 0 and new_rep[t] < 0:
                d, target = rep_dart[qe] ^ 1, new_rep[h]
            else:
                rest.append(qe)
                continue
            # Move d so its tail is the chosen representative.
            src = graph.tail(d)
            c = next(c for c in range(n) if acts[c][0][src] == target)
            moved = acts[c][1][d]
            new_rep[qv[graph.head(moved)]] = graph.head(moved)
        if len(rest) == len(pending):
            raise AssertionError("spanning tree of the quotient is not connected")
        pending = rest
    elt = coord(new_rep)

    alpha = [0] * (2 * len(rep_dart))
    for q, d in enumerate(rep_dart):
        a = group.mul(group.inv(elt[graph.tail(d)]), elt[graph.head(d)])
        alpha[2 * q], alpha[2 * q + 1] = a, group.inv(a)

    lift = [0] * (len(rep) * n)
    for q, r in enumerate(new_rep):
        for a in range(n):
            lift[q * n + a] = acts[a][0][r]
    probe = VoltageGraph(qgraph, group, tuple(alpha))
    dart_lift = [0] * graph.num_darts
    for q, d in enumerate(rep_dart):
        for qd in (2 * q, 2 * q + 1):
            base = d if qd == 2 * q else d ^ 1
            for a in range(n):
                dd = derived_dart(probe, qd, a)
                # Original dart over qd whose tail is lift[(tail, a)].
                tail_vertex = lift[qgraph.tail(qd) * n + a]
                c = next(c for c in range(n) if graph.tail(acts[c][1][base]) == tail_vertex)
                dart_lift[dd] = acts[c][1][base]

    if embedding is None:
        return Quotient(probe, tuple(lift), tuple(dart_lift))
    inv_lift = {dart_lift[dd]: dd for dd in range(len(dart_lift))}
    qrot = []
    for q, r in enumerate(new_rep):
        rot = embedding.rotation[r]
        # Darts at the representative r lift from element identity.
        qrot.append(tuple(base_dart(probe, inv_lift[d]) for d in rot))
    qsign = tuple(embedding.sign[d >> 1] for d in rep_dart)
    qemb = Embedding(qgraph, tuple(qrot), qsign)
    return Quotient(VoltageEmbedding(qemb, group, tuple(alpha)), tuple(lift), tuple(dart_lift))


# --- orientability of the derived surface ------------------------------------


def predicts_nonorientable(ve: VoltageEmbedding, max_rank: int = 16) -> bool:
    """Search for a twisted circle whose Eulerian walk has a voltage of odd order.

    Such a circle forces the derived surface to be nonorientable.
    """
    if is_orientable(ve.base):
        raise EmbeddingError("base embedding is orientable")
    g = ve.graph
    for z in cycle_space_elements(g, max_rank):
        if z and is_circle(g, z) and negative_parity(ve.base, z):
            w = net_voltage(ve, circle_walk(g, z))
            if ve.group.element_order(w) % 2:
                return True
    return False


def derived_orientable_by_lifting(vg, sign: Sequence[int]) -> bool:
    """Whether the derived sign pattern is balanced, from voltages and base signs alone.

    The derived surface is orientable iff no closed base walk has trivial net
    voltage and odd twist parity.
    """
    g, grp = vg.graph, vg.group
    # Vertices of A x Z2 reached from (v0, identity, +).
    seen = {(0, grp.identity, 1)}
    stack = [(0, grp.identity, 1)]
    while stack:
        u, a, s = stack.pop()
        for d in g.darts_at[u]:
            nxt = (g.head(d), grp.mul(a, vg.alpha[d]), s * sign[d >> 1])
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return not any((u, a, -s) in seen for u, a, s in seen)
