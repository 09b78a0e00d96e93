"""Generalized Petersen graphs and voltage constructions of their embeddings.

``GP(n, k)`` has outer vertices ``v0 .. v{n-1}`` and inner vertices
``u0 .. u{n-1}``. Edges are listed outer, then spokes, then inner, so edge
``i`` is ``v{i} v{i+1}``, edge ``n + i`` is ``v{i} u{i}`` and edge ``2n + i``
is ``u{i} u{i+k}``. With that ordering the derived graph of the barbell
voltage graph ``gp_barbell_voltage(n, k)`` has exactly the vertex and edge
indices of ``gp_graph(n, k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .groups import cyclic_group
from .surface import (
    Embedding,
    EmbeddingError,
    Graph,
    SurfaceClass,
    TORUS,
    KLEIN_BOTTLE,
    classify_surface,
    graph_isomorphic,
    switch_vertex,
    switching_function,
)
from .search import DEFAULT_LIMIT, EmbeddingSpace, first_derived, SearchTally, enumerate_embeddings, tally_all
from .voltage import (
    VoltageEmbedding,
    VoltageGraph,
    attach_voltages,
    derived_embedding,
    derived_graph,
    face_voltage,
)


def gp_graph(n: int, k: int) -> Graph:
    if not isinstance(n, int) or n < 1:
        raise EmbeddingError(f"GP(n, k) needs n >= 1, got {n!r}")
    if not isinstance(k, int) or k < 0:
        raise EmbeddingError(f"GP(n, k) needs k >= 0, got {k!r}")
    verts = tuple(f"v{i}" for i in range(n)) + tuple(f"u{i}" for i in range(n))
    ends, ids = [], []
    for i in range(n):
        ends.append((i, (i + 1) % n))
        ids.append(f"v{i}v{(i + 1) % n}")
    for i in range(n):
        ends.append((i, n + i))
        ids.append(f"v{i}u{i}")
    for i in range(n):
        ends.append((n + i, n + (i + k) % n))
        ids.append(f"u{i}u{(i + k) % n}")
    return Graph(verts, tuple(ends), tuple(ids))


def barbell() -> Graph:
    """GP(1, 0): loop ``v0v0``, link ``v0u0``, loop ``u0u0``."""
    return gp_graph(1, 0)


def gp_barbell_voltage(n: int, k: int) -> VoltageGraph:
    """Barbell over Z_n with loop voltages 1 and k; its derived graph is GP(n, k)."""
    return attach_voltages(barbell(), cyclic_group(n), [1 % n, 0, k % n])


def gp_shift_action(n: int, k: int, step: int = 1) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """The rotation ``i -> i + step*l`` of GP(n, k), one permutation pair per ``l`` in Z_{n/step}."""
    if n % step:
        raise EmbeddingError("step must divide n")
    g = gp_graph(n, k)
    out = []
    for l in range(n // step):
        s = step * l
        vperm = tuple((v // n) * n + (v % n + s) % n for v in range(2 * n))
        dperm = []
        for d in range(g.num_darts):
            e = d >> 1
            block, i = divmod(e, n)
            dperm.append(2 * (block * n + (i + s) % n) + (d & 1))
        out.append((vperm, tuple(dperm)))
    return out


def gp20_voltage(p: int) -> VoltageGraph:
    """GP(2, 0) over Z_p: the quotient of GP(2p, 2) by the shifts by even amounts.

    ``v1v0``, ``u0u0`` and ``u1u1`` carry voltage 1, everything else 0.
    """
    return attach_voltages(gp_graph(2, 0), cyclic_group(p), {"v1v0": 1 % p, "u0u0": 1 % p, "u1u1": 1 % p})


def gpp2_voltage(p: int) -> VoltageGraph:
    """GP(p, 2) over Z_2 with voltage 1 on every outer edge: the quotient by the half-turn."""
    g = gp_graph(p, 2)
    return attach_voltages(g, cyclic_group(2), {g.edge_ids[i]: 1 for i in range(p)})


QUOTIENT_KINDS = ("barbell", "gp20", "gpp2")


def quotient_voltage(kind: str, p: int) -> VoltageGraph:
    """The three quotients of GP(2p, 2) by free cyclic actions."""
    if kind == "barbell":
        return gp_barbell_voltage(2 * p, 2)
    if kind == "gp20":
        return gp20_voltage(p)
    if kind == "gpp2":
        return gpp2_voltage(p)
    raise ValueError(f"unknown quotient {kind!r}")


# --- explicit embeddings ----------------------------------------------------


def bouquet_torus_action(n: int) -> VoltageEmbedding:
    """Two loops ``a``, ``b`` at one vertex with rotation a+ b+ a- b- and voltages 1, 2 in Z_n."""
    g = Graph(("x",), ((0, 0), (0, 0)), ("a", "b"))
    emb = Embedding.from_tokens(g, {"x": ["a+", "b+", "a-", "b-"]})
    return attach_voltages(emb, cyclic_group(n), {"a": 1 % n, "b": 2 % n})


def _check_odd(p: int, name: str = "p") -> None:
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        raise EmbeddingError(f"{name} must be an odd integer >= 3, got {p!r}")


def gp_sphere_voltage(p: int) -> VoltageEmbedding:
    """A barbell embedding in the projective plane over Z_2p with loop voltages 1, 2 whose derived surface is the sphere.

    Found by scanning the barbell's 16 signed rotation systems in a fixed
    order; the first one with face voltages generating the trivial subgroup and
    the subgroup of even elements, and an orientable derived sphere, is returned.
    """
    _check_odd(p)
    vg = gp_barbell_voltage(2 * p, 2)
    grp = vg.group
    want = {frozenset({0}), grp.generated_subgroup([2])}
    for emb in EmbeddingSpace(vg.graph):
        if classify_surface(emb).euler_char != 1:
            continue
        ve = VoltageEmbedding(emb, grp, vg.alpha)
        gens = {grp.generated_subgroup([face_voltage(ve, f)]) for f in emb.faces}
        if gens != want:
            continue
        if classify_surface(derived_embedding(ve)) == SurfaceClass(True, 2):
            return ve
    raise EmbeddingError(f"no barbell embedding derives the sphere for p={p}")


def orient(emb: Embedding) -> Embedding:
    """An equivalent embedding of an orientable surface with every edge positive."""
    phi = switching_function(emb)
    if phi is None:
        raise EmbeddingError("embedding is nonorientable")
    for v, s in enumerate(phi):
        if s < 0:
            emb = switch_vertex(emb, v)
    if any(s < 0 for s in emb.sign):
        raise AssertionError("switching left a negative edge")
    return emb


def sphere_embedding(p: int) -> Embedding:
    """GP(2p, 2) in the sphere, as the all-positive form of the derived embedding."""
    de = derived_embedding(gp_sphere_voltage(p))
    return orient(Embedding(gp_graph(2 * p, 2), de.rotation, de.sign))


def face_vertex_walk(emb: Embedding, face) -> list:
    g = emb.graph
    return [g.vertices[g.tail(d)] for d in face.darts]


def same_closed_walk(walk, target) -> bool:
    """Equality of closed vertex walks up to rotation and reflection."""
    if len(walk) != len(target):
        return False
    k = len(walk)
    for seq in (list(target), list(reversed(target))):
        for s in range(k):
            if walk == seq[s:] + seq[:s]:
                return True
    return False


def torus_face_walk(p: int) -> list[str]:
    """Boundary of the large face of the torus construction, as a closed vertex walk.

    u0 v0 v1 v2 u2 u4 ... u{2p-2} u0 u2 v2 v3 v4 u4 u2 (then back to u0).
    """
    evens = [f"u{2 * j}" for j in range(1, p)]
    return ["u0", "v0", "v1", "v2"] + evens + ["u0", "u2", "v2", "v3", "v4", "u4", "u2"]


def construct_torus_embedding(p: int) -> Embedding:
    """GP(2p, 2) in the torus, obtained from the sphere embedding.

    The two inner edges ``u0u2`` and ``u2u4`` are taken out and put back in
    every possible way (the rotations at u0, u2 and u4 are re-chosen, all
    else is kept). The first result, in a fixed order, that is a torus with one
    face bounded by the walk of :func:`torus_face_walk` is returned.
    """
    _check_odd(p)
    n = 2 * p
    sphere = sphere_embedding(p)
    g = sphere.graph
    vi = g.vertex_index
    movable = [vi["u0"], vi["u2"], vi["u4"]]
    target = torus_face_walk(p)
    options = []
    for v in movable:
        darts = sorted(g.darts_at[v])
        options.append([(darts[0],) + rest for rest in (tuple(darts[1:]), tuple(reversed(darts[1:])))])
    for choice in product(*options):
        rot = list(sphere.rotation)
        for v, r in zip(movable, choice):
            rot[v] = r
        if tuple(rot) == sphere.rotation:
            continue
        emb = Embedding(g, tuple(rot), sphere.sign)
        if classify_surface(emb) != TORUS or len(emb.faces) != n:
            continue
        if any(same_closed_walk(face_vertex_walk(emb, f), target) for f in emb.faces):
            return emb
    raise EmbeddingError(f"no re-insertion gives the torus for p={p}")


# --- searched fixtures ------------------------------------------------------


def _first_derived(vg: VoltageGraph, want: SurfaceClass) -> VoltageEmbedding | None:
    i = first_derived(vg, want)
    if i is None:
        return None
    emb = EmbeddingSpace(vg.graph).embedding(i)
    ve = VoltageEmbedding(emb, vg.group, vg.alpha)
    if classify_surface(derived_embedding(ve)) != want:
        raise AssertionError("fast and direct classification disagree")
    return ve


def gp62_torus_voltage() -> VoltageEmbedding:
    """GP(3, 2) over Z_2 embedded so that the derived embedding is GP(6, 2) in the torus."""
    ve = _first_derived(gpp2_voltage(3), TORUS)
    if ve is None:
        raise EmbeddingError("no GP(3,2) embedding derives the torus")
    return ve


def kb_embedding(q: int) -> VoltageEmbedding:
    """A voltage embedding whose derived embedding is GP(2q, 2) in the Klein bottle.

    Quotients are tried in the order barbell, GP(2, 0), GP(q, 2).
    """
    _check_odd(q, "q")
    for kind in QUOTIENT_KINDS:
        ve = _first_derived(quotient_voltage(kind, q), KLEIN_BOTTLE)
        if ve is not None:
            return ve
    raise EmbeddingError(f"no quotient of GP({2 * q},2) derives the Klein bottle")


def derives_gp(vg, n: int, k: int) -> bool:
    ok, _ = graph_isomorphic(derived_graph(vg), gp_graph(n, k))
    return ok


# --- K3,3 minor ------------------------------------------------------------


class MinorError(EmbeddingError):
    pass


@dataclass(frozen=True)
class K33Certificate:
    left: tuple[str, str, str]
    right: tuple[str, str, str]
    paths: tuple[tuple[str, ...], ...]


def k33_paths(p: int) -> tuple[tuple[str, ...], ...]:
    """Nine vertex paths of GP(p, 2) joining {v1, v3, u2} to {v0, v2, u1}."""
    path_v3_v0 = tuple(f"v{i}" for i in range(3, p)) + ("v0",)
    path_u2_u1 = tuple(f"u{(2 + 2 * j) % p}" for j in range((p + 1) // 2))
    return (
        ("v1", "v0"),
        ("v1", "u1"),
        ("v1", "v2"),
        path_v3_v0,
        ("v3", "u3", "u1"),
        ("v3", "v2"),
        path_u2_u1,
        ("u2", "u0", "v0"),
        ("u2", "v2"),
    )


def k33_certificate(p: int) -> K33Certificate:
    """Check that the nine listed paths are genuine and internally disjoint, certifying a K3,3 minor."""
    if not isinstance(p, int) or p < 5 or p % 2 == 0:
        raise MinorError(f"the path list needs an odd p >= 5, got {p!r}")
    g = gp_graph(p, 2)
    adj = {frozenset((g.vertices[t], g.vertices[h])) for t, h in g.ends}
    left, right = ("v1", "v3", "u2"), ("v0", "v2", "u1")
    paths = k33_paths(p)
    interior: set[str] = set()
    pairs = set()
    for path in paths:
        if len(set(path)) != len(path):
            raise MinorError(f"path {path} repeats a vertex")
        for a, b in zip(path, path[1:]):
            if frozenset((a, b)) not in adj:
                raise MinorError(f"path {path} uses the non-edge {a}{b}")
        ends = (path[0], path[-1])
        if ends[0] not in left or ends[1] not in right:
            raise MinorError(f"path {path} does not join the two sides")
        pairs.add(ends)
        for x in path[1:-1]:
            if x in interior or x in left or x in right:
                raise MinorError(f"vertex {x} is shared by two paths")
            interior.add(x)
    if len(pairs) != 9:
        raise MinorError("the paths do not cover all nine pairs")
    return K33Certificate(left, right, paths)


def verify_k33_minor(p: int) -> bool:
    """True when GP(p, 2) has the K3,3 minor given by :func:`k33_paths`; raises MinorError with the first problem otherwise."""
    k33_certificate(p)
    return True


# --- the no-torus search ---------------------------------------------------


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class QuotientResult:
    kind: str
    voltage: VoltageGraph
    rotations: int
    sign_classes: int
    tally: SearchTally

    @property
    def witnesses(self) -> list[int]:
        return self.tally.torus_witnesses

    def witness_embedding(self, i: int = 0) -> VoltageEmbedding:
        emb = EmbeddingSpace(self.voltage.graph).embedding(self.witnesses[i])
        return VoltageEmbedding(emb, self.voltage.group, self.voltage.alpha)

    def to_json(self) -> dict:
        from .serialize import to_json

        out = {
            "quotient": self.kind,
            "graph": QUOTIENT_NAMES[self.kind],
            "group_order": self.voltage.group.order,
            "voltage_graph": to_json(self.voltage),
            "rotation_systems": self.rotations,
            "sign_classes": self.sign_classes,
            "embeddings": self.tally.total,
            "derived_surfaces": _tally_json(self.tally.derived),
            "base_surfaces": _tally_json(self.tally.base),
            "torus_witnesses": len(self.witnesses),
            "witness_indices": self.witnesses[:20],
        }
        if self.witnesses:
            out["first_witness"] = to_json(self.witness_embedding(0))
        return out


QUOTIENT_NAMES = {"barbell": "GP(1,0)", "gp20": "GP(2,0)", "gpp2": "GP(p,2)"}


def _tally_json(counter) -> list[dict]:
    rows = []
    for cls, k in sorted(counter.items(), key=lambda kv: (not kv[0].orientable, -kv[0].euler_char)):
        rows.append({"surface": cls.name, "orientable": cls.orientable, "chi": cls.euler_char, "count": k})
    return rows


@dataclass(frozen=True)
class SearchReport:
    p: int
    method: str
    results: tuple[QuotientResult, ...]

    @property
    def total(self) -> int:
        return sum(r.tally.total for r in self.results)

    @property
    def torus_found(self) -> bool:
        return any(r.witnesses for r in self.results)

    @property
    def partial(self) -> bool:
        # GP(10,2) is vertex-transitive, so the three cyclic quotients do not exhaust its free actions.
        return self.p == 5

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "graph": f"GP({2 * self.p},2)",
            "method": self.method,
            "embeddings": self.total,
            "torus_found": self.torus_found,
            "quotients": [r.to_json() for r in self.results],
        }
        if self.partial:
            out["note"] = "partial evidence only: GP(10,2) has free actions beyond the three cyclic quotients"
        return out

    def table(self) -> str:
        lines = [f"no-torus search for GP({2 * self.p},2)  method={self.method}"]
        for r in self.results:
            name = QUOTIENT_NAMES[r.kind].replace("p", str(self.p))
            lines.append(
                f"  {name}/Z_{r.voltage.group.order}: {r.tally.total:,} embeddings "
                f"({r.rotations:,} rotations x {r.sign_classes:,} sign classes), torus witnesses: {len(r.witnesses)}"
            )
            for row in _tally_json(r.tally.derived):
                lines.append(f"      {row['surface']:<18} chi={row['chi']:>4}  {row['count']:>10,}")
        lines.append(f"  total embeddings: {self.total:,}; derived torus found: {'yes' if self.torus_found else 'no'}")
        if self.partial:
            lines.append("  partial evidence only (GP(10,2) is vertex-transitive)")
        return "\n".join(lines)


def no_torus_search(
    p: int,
    jobs: int = 1,
    method: str = "fast",
    limit: int = DEFAULT_LIMIT,
    kinds: tuple[str, ...] = QUOTIENT_KINDS,
) -> SearchReport:
    """Tally the derived surface of every embedding of each quotient of GP(2p, 2)."""
    if not isinstance(p, int) or p % 2 == 0 or not _is_prime(p):
        raise EmbeddingError(f"p must be an odd prime, got {p!r}")
    results = []
    for kind in kinds:
        vg = quotient_voltage(kind, p)
        space = enumerate_embeddings(vg.graph, limit)
        tally = tally_all(vg, method=method, jobs=jobs, limit=limit)
        results.append(QuotientResult(kind, vg, space.num_rotations, space.num_sign_classes, tally))
    return SearchReport(p, method, tuple(results))
