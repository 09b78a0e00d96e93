"""Command-line front end.

Every subcommand reads a JSON embedding / voltage embedding (a path, or the
name of a bundled fixture such as ``torus_bouquet``) and prints a JSON report
with sorted keys. Exit status: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import catalog, petersen, reproduce
from .homology import betti1, boundary_space, chain, chain_ids, homology_basis
from .intersection import gram_matrix, independence_by_rank
from .sampling import random_coset_instance, random_voltage_embedding
from .search import DEFAULT_LIMIT, GuardrailError
from .serialize import dumps, fixture_names, resolve, to_json
from .surface import Embedding, EmbeddingError, Graph, classify_surface, graph_isomorphic
from .voltage import (
    VoltageEmbedding,
    VoltageGraph,
    coset_counts,
    derived_embedding,
    derived_graph,
    face_voltage,
    riemann_hurwitz_chi,
    verify_free_action,
)


class InputError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, report):
        super().__init__("verification failed")
        self.report = report


def _load(source: str):
    try:
        return resolve(source)
    except FileNotFoundError:
        raise InputError(f"no such file or fixture: {source} (fixtures: {', '.join(fixture_names())})") from None
    except (EmbeddingError, json.JSONDecodeError, ValueError) as exc:
        raise InputError(f"cannot read {source}: {exc}") from None


def _embedding(obj) -> Embedding:
    if isinstance(obj, Embedding):
        return obj
    if isinstance(obj, VoltageEmbedding):
        return obj.base
    raise InputError("this command needs an embedding (rotations missing)")


def _voltage_embedding(obj) -> VoltageEmbedding:
    if not isinstance(obj, VoltageEmbedding):
        raise InputError("this command needs a voltage embedding (group, voltages and rotations)")
    return obj


def _surface(cls) -> dict:
    out = cls.to_dict()
    out.pop("name")
    return out


def _parse_chain(graph: Graph, text: str) -> int:
    ids = [t.strip() for t in text.split(",") if t.strip()]
    try:
        return chain(graph, ids)
    except KeyError as exc:
        raise InputError(f"unknown edge id {exc.args[0]!r}") from None


def identify_gp(graph: Graph) -> str | None:
    """Name of the generalized Petersen graph isomorphic to ``graph``, if any."""
    if graph.num_vertices % 2 or graph.num_edges * 2 != 3 * graph.num_vertices:
        return None
    n = graph.num_vertices // 2
    for k in range(0, n // 2 + 1):
        if graph_isomorphic(graph, petersen.gp_graph(n, k))[0]:
            return f"GP({n},{k})"
    return None


# --- subcommands ---------------------------------------------------------------


def cmd_faces(args):
    obj = _load(args.input)
    emb = _embedding(obj)
    g = emb.graph
    faces = []
    for f in emb.faces:
        row = {"length": len(f), "darts": [g.dart_token(d) for d in f.darts], "vertices": [str(x) for x in f.vertices(g)]}
        if isinstance(obj, VoltageEmbedding):
            w = face_voltage(obj, f)
            row["voltage"] = w
            row["voltage_order"] = obj.group.element_order(w)
        faces.append(row)
    return {"num_faces": len(faces), "faces": faces}


def cmd_classify(args):
    obj = _load(args.input)
    if args.derived:
        return _surface(classify_surface(derived_embedding(_voltage_embedding(obj))))
    return _surface(classify_surface(_embedding(obj)))


def cmd_homology(args):
    emb = _embedding(_load(args.input))
    g = emb.graph
    basis = homology_basis(emb)
    return {
        "betti1": betti1(emb),
        "cycle_rank": g.cycle_rank,
        "boundary_rank": boundary_space(emb).rank(),
        "basis": [chain_ids(g, z) for z in basis],
        "surface": classify_surface(emb).to_dict(),
    }


def cmd_intersect(args):
    emb = _embedding(_load(args.input))
    g = emb.graph
    if args.chain:
        chains = [_parse_chain(g, c) for c in args.chain]
    else:
        chains = homology_basis(emb)
    try:
        m = gram_matrix(emb, chains)
    except EmbeddingError as exc:
        raise InputError(str(exc)) from None
    if args.grid:
        print(m, file=sys.stderr)
    return {
        "chains": [chain_ids(g, z) for z in chains],
        "gram": m.tolist(),
        "rank": m.rank(),
        "verdict": independence_by_rank(m),
    }


def cmd_derive(args):
    obj = _load(args.input)
    if not isinstance(obj, (VoltageGraph, VoltageEmbedding)):
        raise InputError("derive needs a voltage graph or voltage embedding")
    dg = derived_graph(obj)
    degrees = sorted({dg.degree(v) for v in range(dg.num_vertices)})
    out = {
        "group_order": obj.group.order,
        "vertices": dg.num_vertices,
        "edges": dg.num_edges,
        "components": dg.num_components,
        "degrees": degrees,
        "identified_as": identify_gp(dg) if dg.num_components == 1 else None,
        "free_action": verify_free_action(obj),
    }
    if isinstance(obj, VoltageEmbedding):
        de = derived_embedding(obj)
        out["faces"] = len(de.faces)
        out["chi_traced"] = dg.num_vertices - dg.num_edges + len(de.faces)
        out["chi_riemann_hurwitz"] = riemann_hurwitz_chi(obj)
        if dg.num_components == 1:
            out["surface"] = classify_surface(de).to_dict()
        if args.emit:
            Path(args.emit).write_text(dumps(de))
    elif args.emit:
        Path(args.emit).write_text(dumps(dg))
    return out


def _random_or_given(args, salt, repeat=True):
    if args.input:
        ve = _voltage_embedding(_load(args.input))
        return [ve] * (args.count if repeat else 1)
    rng = np.random.default_rng([args.seed, salt])
    return [random_voltage_embedding(rng) for _ in range(args.count)]


def cmd_coset_check(args):
    rng = np.random.default_rng([args.seed, 102])
    rows = []
    for ve in _random_or_given(args, 101):
        faces, x, v, walk = random_coset_instance(rng, ve.base)
        res = coset_counts(ve, faces, x, v, walk)
        rows.append({"predicted": list(res.predicted), "counted": list(res.counted), "ok": res.ok})
    report = {"instances": len(rows), "mismatches": sum(not r["ok"] for r in rows), "seed": args.seed}
    if args.input:
        report["cases"] = rows
    if report["mismatches"]:
        raise VerificationFailed(report)
    return report


def cmd_rh_check(args):
    bad = 0
    cases = []
    for ve in _random_or_given(args, 201, repeat=False):
        de = derived_embedding(ve)
        pred = riemann_hurwitz_chi(ve)
        traced = de.graph.num_vertices - de.graph.num_edges + len(de.faces)
        bad += pred != traced
        if args.input:
            cases.append({"predicted": pred, "traced": traced})
    report = {"instances": len(cases) or args.count, "mismatches": bad, "seed": args.seed}
    if cases:
        report["cases"] = cases
    if bad:
        raise VerificationFailed(report)
    return report


def cmd_gp(args):
    if args.all or args.name:
        if not args.output:
            if args.all:
                raise InputError("--all needs --output DIR")
            if args.name not in catalog.BUILDERS:
                raise InputError(f"unknown fixture {args.name!r}; known: {', '.join(sorted(catalog.BUILDERS))}")
            return json.loads(catalog.render(args.name))
        names = None if args.all else [args.name]
        try:
            paths = catalog.regenerate(args.output, names)
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
        args.output = None  # already written
        return {"written": [str(p) for p in paths]}
    if args.n is None:
        raise InputError("give a fixture name, --all, or --n/--k")
    try:
        return to_json(petersen.gp_graph(args.n, args.k))
    except EmbeddingError as exc:
        raise InputError(str(exc)) from None


def cmd_search(args):
    try:
        report = petersen.no_torus_search(args.p, jobs=args.jobs, method=args.method, limit=args.limit)
    except GuardrailError as exc:
        raise InputError(f"guardrail: {exc}") from None
    except EmbeddingError as exc:
        raise InputError(str(exc)) from None
    if args.table:
        print(report.table(), file=sys.stderr)
    return report.to_json()


def cmd_verify_paper(args):
    only = None
    if args.only:
        try:
            only = {int(x) for x in args.only.split(",")}
        except ValueError:
            raise InputError("--only takes a comma-separated list of criterion numbers") from None
    results = reproduce.run_all(only=only, seed=args.seed, jobs=args.jobs, echo=lambda s: print(s, file=sys.stderr))
    report = {"all_passed": all(r.passed for r in results), "checks": [r.to_json() for r in results]}
    if not report["all_passed"]:
        raise VerificationFailed(report)
    return report


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="voltembed", description=__doc__.splitlines()[0])
    p.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, helptext, needs_input=True, optional_input=False):
        sp = sub.add_parser(name, help=helptext)
        if needs_input:
            sp.add_argument("input", nargs="?" if optional_input else None, help="JSON file or fixture name")
        sp.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write the JSON report here")
        sp.set_defaults(func=fn)
        return sp

    add("faces", cmd_faces, "trace the faces of an embedding")
    sp = add("classify", cmd_classify, "orientability, Euler characteristic and genus")
    sp.add_argument("--derived", action="store_true", help="classify the derived surface of a voltage embedding")
    add("homology", cmd_homology, "mod-2 homology: Betti number and a basis")
    sp = add("intersect", cmd_intersect, "Gram matrix of the intersection pairing")
    sp.add_argument("--chain", action="append", help="comma-separated edge ids (repeatable); default: a homology basis")
    sp.add_argument("--grid", action="store_true", help="also print the 0/1 grid to stderr")
    sp = add("derive", cmd_derive, "derived graph / embedding report")
    sp.add_argument("--emit", help="write the derived graph or embedding JSON to this path")
    for name, fn, helptext in (
        ("coset-check", cmd_coset_check, "coset counts against direct component counts"),
        ("rh-check", cmd_rh_check, "Riemann-Hurwitz prediction against traced faces"),
    ):
        sp = add(name, fn, helptext, optional_input=True)
        sp.add_argument("--seed", type=int, default=reproduce.DEFAULT_SEED)
        sp.add_argument("--count", type=int, default=100)
    sp = add("gp", cmd_gp, "GP(n,k) graphs and fixture (re)generation", needs_input=False)
    sp.add_argument("name", nargs="?", help=f"fixture name ({', '.join(sorted(catalog.BUILDERS))})")
    sp.add_argument("--all", action="store_true", help="regenerate every fixture into --output DIR")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int, default=2)
    sp = add("search", cmd_search, "exhaustive search for derived tori over quotients of GP(2p,2)", needs_input=False)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--method", choices=("fast", "direct"), default="fast")
    sp.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="refuse quotients with more embeddings than this")
    sp.add_argument("--table", action="store_true", help="also print a table to stderr")
    sp = add("verify-paper", cmd_verify_paper, "run every acceptance check", needs_input=False)
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.add_argument("--seed", type=int, default=reproduce.DEFAULT_SEED)
    sp.add_argument("--jobs", type=int, default=1)
    return p


def _emit(report: dict, output: str | None) -> None:
    text = dumps(report)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailed as exc:
        _emit(exc.report, getattr(args, "output", None))
        return 1
    _emit(report, getattr(args, "output", None))
    return 0


def main() -> None:
    sys.exit(run())
