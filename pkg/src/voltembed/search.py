"""Exhaustive enumeration of signed rotation systems and derived-surface tallies.

Signs are enumerated modulo vertex switching: tree edges stay positive and
only the non-tree edges vary, giving ``2**(E - V + 1)`` sign classes. Every
rotation system is enumerated (no reflection quotient).

Two ways to classify the derived surface of each base embedding:

* ``"direct"`` builds the derived embedding and traces its faces;
* ``"fast"`` (cyclic groups only) traces base faces for a whole batch of
  rotation systems at once with numpy, counts derived faces as
  ``sum gcd(omega_f, n)`` over base faces, and decides orientability once per
  sign class from voltages and signs.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Iterator, Sequence

import numpy as np

from .groups import cyclic_group
from .surface import Embedding, EmbeddingError, Graph, SurfaceClass, classify_surface, spanning_forest
from .voltage import VoltageEmbedding, VoltageGraph, derived_graph, derived_embedding, derived_orientable_by_lifting

DEFAULT_LIMIT = 5_000_000


class GuardrailError(EmbeddingError):
    pass


def cyclic_orders(darts: Sequence[int]) -> list[tuple[int, ...]]:
    """All cyclic orders of ``darts``, each listed starting from the smallest dart."""
    darts = sorted(darts)
    if not darts:
        return [()]
    first, rest = darts[0], darts[1:]
    return [(first,) + p for p in permutations(rest)]


@dataclass(frozen=True)
class EmbeddingSpace:
    """All signed rotation systems of a graph, up to vertex switching.

    Embedding ``i`` has sign class ``i // num_rotations`` and rotation system
    ``i % num_rotations``; rotation systems are numbered in mixed radix with
    vertex 0 most significant.
    """

    graph: Graph

    @cached_property
    def choices(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        return tuple(tuple(cyclic_orders(self.graph.darts_at[v])) for v in range(self.graph.num_vertices))

    @cached_property
    def sign_edges(self) -> tuple[int, ...]:
        tree = set(spanning_forest(self.graph))
        return tuple(e for e in range(self.graph.num_edges) if e not in tree)

    @property
    def num_rotations(self) -> int:
        return math.prod(len(c) for c in self.choices)

    @property
    def num_sign_classes(self) -> int:
        return 2 ** len(self.sign_edges)

    @property
    def size(self) -> int:
        return self.num_rotations * self.num_sign_classes

    def rotation(self, r: int) -> tuple[tuple[int, ...], ...]:
        out = []
        for c in reversed(self.choices):
            r, digit = divmod(r, len(c))
            out.append(c[digit])
        return tuple(reversed(out))

    def signs(self, s: int) -> tuple[int, ...]:
        sign = [1] * self.graph.num_edges
        for i, e in enumerate(self.sign_edges):
            if (s >> i) & 1:
                sign[e] = -1
        return tuple(sign)

    def embedding(self, index: int) -> Embedding:
        s, r = divmod(index, self.num_rotations)
        return Embedding(self.graph, self.rotation(r), self.signs(s))

    def __iter__(self) -> Iterator[Embedding]:
        for s in range(self.num_sign_classes):
            sign = self.signs(s)
            for rot in product(*self.choices):
                yield Embedding(self.graph, rot, sign)

    def __len__(self):
        return self.size

    def rotation_arrays(self, start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
        """Successor and predecessor tables for rotation systems ``start .. stop-1`` (one row each)."""
        g = self.graph
        r = np.arange(start, stop, dtype=np.int64)
        succ = np.zeros((len(r), g.num_darts), dtype=np.int32)
        pred = np.zeros_like(succ)
        stride = 1
        for v in reversed(range(g.num_vertices)):
            opts = self.choices[v]
            m = len(opts)
            digit = (r // stride) % m
            stride *= m
            if not opts[0]:
                continue
            darts = np.array(sorted(opts[0]))
            s_tab = np.zeros((m, len(darts)), dtype=np.int32)
            p_tab = np.zeros_like(s_tab)
            pos = {d: j for j, d in enumerate(darts)}
            for c, rot in enumerate(opts):
                k = len(rot)
                for i, d in enumerate(rot):
                    s_tab[c, pos[d]] = rot[(i + 1) % k]
                    p_tab[c, pos[d]] = rot[(i - 1) % k]
            succ[:, darts] = s_tab[digit]
            pred[:, darts] = p_tab[digit]
        return succ, pred


def enumerate_embeddings(graph: Graph, limit: int = DEFAULT_LIMIT) -> EmbeddingSpace:
    """The embedding space of ``graph``; iterate it for a deterministic stream."""
    space = EmbeddingSpace(graph)
    if space.size > limit:
        raise GuardrailError(
            f"{space.size:,} embeddings ({space.num_rotations:,} rotation systems x "
            f"{space.num_sign_classes:,} sign classes) exceeds limit {limit:,}"
        )
    return space


# --- per-embedding classification -------------------------------------------


def _as_voltage_embedding(vg: VoltageGraph, emb: Embedding) -> VoltageEmbedding:
    return VoltageEmbedding(emb, vg.group, vg.alpha)


def classify_derived_direct(vg: VoltageGraph, emb: Embedding) -> SurfaceClass:
    return classify_surface(derived_embedding(_as_voltage_embedding(vg, emb)))


def _chi_batch(vg: VoltageGraph, succ: np.ndarray, pred: np.ndarray, sign: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    """Derived and base Euler characteristics, one per row of rotation tables."""
    g = vg.graph
    n = vg.group.order
    rows = succ.shape[0]
    nd = g.num_darts
    ns = 2 * nd
    neg = [1 if sign[d >> 1] < 0 else 0 for d in range(nd)]
    # State 2*d + b: traversing dart d with side bit b (0 for +1).
    nxt = np.empty((rows, ns), dtype=np.int32)
    for d in range(nd):
        a = d ^ 1
        for b in (0, 1):
            b2 = b ^ neg[d]
            col = succ[:, a] if b2 == 0 else pred[:, a]
            nxt[:, 2 * d + b] = 2 * col + b2
    # Orbit labels by pointer doubling on flat indices: each state learns the
    # smallest state index on its orbit.
    idx = np.int32 if rows * ns < 2**31 else np.int64
    offset = (np.arange(rows, dtype=idx) * ns)[:, None]
    jump = (nxt + offset).ravel()
    label = np.arange(rows * ns, dtype=idx)
    span = 1
    while span < ns:
        label = np.minimum(label, np.take(label, jump))
        jump = np.take(jump, jump)
        span *= 2
    weight = np.tile(np.repeat(np.array(vg.alpha, dtype=np.int64), 2), rows)
    sums = np.bincount(label, weights=weight, minlength=rows * ns).reshape(rows, ns)
    sums = sums.astype(np.int64) % n
    label = label.reshape(rows, ns) - offset
    is_rep = label == np.arange(ns)[None, :]
    # Each face shows up as two mutually reverse orbits.
    base_faces = is_rep.sum(axis=1) // 2
    lifted = np.where(is_rep, np.gcd(sums, n), 0).sum(axis=1) // 2
    chi_base = g.num_vertices - g.num_edges + base_faces
    return n * (g.num_vertices - g.num_edges) + lifted, chi_base


@dataclass
class SearchTally:
    """Counts of derived surfaces (and base surfaces) over a set of base embeddings."""

    derived: Counter = field(default_factory=Counter)
    base: Counter = field(default_factory=Counter)
    torus_witnesses: list = field(default_factory=list)
    total: int = 0

    def merge(self, other: "SearchTally") -> "SearchTally":
        return SearchTally(
            self.derived + other.derived,
            self.base + other.base,
            sorted(self.torus_witnesses + other.torus_witnesses),
            self.total + other.total,
        )


def _base_orientable(graph: Graph, sign: Sequence[int]) -> bool:
    trivial = VoltageGraph(graph, cyclic_group(1), (0,) * graph.num_darts)
    return derived_orientable_by_lifting(trivial, sign)


def tally_sign_classes(vg: VoltageGraph, sign_classes: Sequence[int], method: str = "fast", batch: int = 1 << 14) -> SearchTally:
    """Classify the derived surface of every embedding in the given sign classes."""
    space = EmbeddingSpace(vg.graph)
    g = vg.graph
    tally = SearchTally()
    nrot = space.num_rotations
    if method == "fast" and not vg.group.is_cyclic_descriptor:
        raise EmbeddingError("the fast method needs a cyclic voltage group")
    if derived_graph(vg).num_components != 1:
        raise EmbeddingError("derived graph is disconnected")
    for s in sign_classes:
        sign = space.signs(s)
        base_or = _base_orientable(g, sign)
        if method == "fast":
            der_or = derived_orientable_by_lifting(vg, sign)
            for start in range(0, nrot, batch):
                stop = min(nrot, start + batch)
                succ, pred = space.rotation_arrays(start, stop)
                chi, base_chi = _chi_batch(vg, succ, pred, sign)
                for (c, bc), k in zip(*np.unique(np.stack([chi, base_chi], axis=1), axis=0, return_counts=True)):
                    tally.derived[SurfaceClass(der_or, int(c))] += int(k)
                    tally.base[SurfaceClass(base_or, int(bc))] += int(k)
                if der_or:
                    hits = np.flatnonzero(chi == 0) + start
                    tally.torus_witnesses.extend(int(s * nrot + r) for r in hits)
        elif method == "direct":
            for r in range(nrot):
                emb = Embedding(g, space.rotation(r), sign)
                cls = classify_derived_direct(vg, emb)
                tally.derived[cls] += 1
                tally.base[classify_surface(emb)] += 1
                if cls.orientable and cls.euler_char == 0:
                    tally.torus_witnesses.append(s * nrot + r)
        else:
            raise ValueError(f"unknown method {method!r}")
        tally.total += nrot
    return tally


def _worker(args):
    vg, classes, method = args
    return tally_sign_classes(vg, classes, method)


def tally_all(vg: VoltageGraph, method: str = "fast", jobs: int = 1, limit: int = DEFAULT_LIMIT) -> SearchTally:
    space = enumerate_embeddings(vg.graph, limit)
    classes = list(range(space.num_sign_classes))
    if jobs <= 1 or len(classes) == 1:
        return tally_sign_classes(vg, classes, method)
    chunks = [classes[i::jobs] for i in range(jobs) if classes[i::jobs]]
    out = SearchTally()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_worker, [(vg, c, method) for c in chunks]):
            out = out.merge(part)
    return out


def classify_derived_fast(vg: VoltageGraph, emb: Embedding) -> SurfaceClass:
    """Derived surface of one base embedding via face voltages (cyclic groups)."""
    succ = np.array([emb.succ], dtype=np.int32)
    pred = np.array([emb.pred], dtype=np.int32)
    chi, _ = _chi_batch(vg, succ, pred, emb.sign)
    return SurfaceClass(derived_orientable_by_lifting(vg, emb.sign), int(chi[0]))


def first_derived(vg: VoltageGraph, want: SurfaceClass, batch: int = 1 << 12) -> int | None:
    """Index (in :class:`EmbeddingSpace` order) of the first base embedding whose derived surface is ``want``."""
    space = EmbeddingSpace(vg.graph)
    if derived_graph(vg).num_components != 1:
        return None
    nrot = space.num_rotations
    fast = vg.group.is_cyclic_descriptor
    for s in range(space.num_sign_classes):
        sign = space.signs(s)
        if fast:
            if derived_orientable_by_lifting(vg, sign) != want.orientable:
                continue
            for start in range(0, nrot, batch):
                succ, pred = space.rotation_arrays(start, min(nrot, start + batch))
                chi, _ = _chi_batch(vg, succ, pred, sign)
                hits = np.flatnonzero(chi == want.euler_char)
                if len(hits):
                    return s * nrot + start + int(hits[0])
        else:
            for r in range(nrot):
                if classify_derived_direct(vg, Embedding(vg.graph, space.rotation(r), sign)) == want:
                    return s * nrot + r
    return None
