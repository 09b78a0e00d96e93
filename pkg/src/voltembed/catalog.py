"""Named fixtures: how each bundled JSON file is built, and regeneration."""

from __future__ import annotations

from pathlib import Path
from typing import Callable

from . import petersen
from .serialize import dumps

BUILDERS: dict[str, tuple[Callable[[], object], str]] = {
    "torus_bouquet": (lambda: petersen.bouquet_torus_action(10), "two-loop bouquet in the torus over Z_10"),
    "barbell_z5": (lambda: petersen.gp_barbell_voltage(5, 2), "barbell over Z_5, derived graph GP(5,2)"),
    "barbell_z6": (lambda: petersen.gp_barbell_voltage(6, 2), "barbell over Z_6, derived graph GP(6,2)"),
    "sphere_p3": (lambda: petersen.gp_sphere_voltage(3), "barbell in the projective plane, GP(6,2) in the sphere"),
    "sphere_p5": (lambda: petersen.gp_sphere_voltage(5), "barbell in the projective plane, GP(10,2) in the sphere"),
    "sphere_p7": (lambda: petersen.gp_sphere_voltage(7), "barbell in the projective plane, GP(14,2) in the sphere"),
    "torus_construction_p3": (lambda: petersen.construct_torus_embedding(3), "GP(6,2) in the torus by edge re-insertion"),
    "gp62_torus": (petersen.gp62_torus_voltage, "GP(3,2) over Z_2, GP(6,2) in the torus"),
    "kb_q3": (lambda: petersen.kb_embedding(3), "GP(6,2) in the Klein bottle"),
    "kb_q5": (lambda: petersen.kb_embedding(5), "GP(10,2) in the Klein bottle"),
    "kb_q7": (lambda: petersen.kb_embedding(7), "GP(14,2) in the Klein bottle"),
}


def build(name: str):
    try:
        builder, _ = BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(BUILDERS))}") from None
    return builder()


def render(name: str) -> str:
    return dumps(build(name))


def regenerate(outdir: str | Path, names=None) -> list[Path]:
    """Write fixtures as JSON into ``outdir``; returns the written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in names or sorted(BUILDERS):
        path = outdir / f"{name}.json"
        path.write_text(render(name))
        written.append(path)
    return written
