"""GP(2p,2) in the sphere, torus and Klein bottle.

Run: python demos/02_surfaces_of_gp2p2.py
"""

from voltembed.petersen import (
    construct_torus_embedding,
    face_vertex_walk,
    gp62_torus_voltage,
    gp_sphere_voltage,
    kb_embedding,
    same_closed_walk,
    torus_face_walk,
)
from voltembed.surface import classify_surface
from voltembed.voltage import deficiency, derived_embedding, face_voltage, riemann_hurwitz_chi

# Sphere: barbell in the projective plane over Z_2p.  One face has trivial
# voltage, the other voltage of order p; Riemann-Hurwitz gives 2p - (2p-2) = 2.
for p in (3, 5, 7):
    ve = gp_sphere_voltage(p)
    faces = [(face_voltage(ve, f), deficiency(ve, f)) for f in ve.base.faces]
    print(f"p={p}: base {classify_surface(ve.base).name}, face (voltage, deficiency) {faces}, "
          f"predicted chi {riemann_hurwitz_chi(ve)}, derived {classify_surface(derived_embedding(ve)).name}")

# Torus: take the planar GP(2p,2), lift out u0u2 and u2u4, put them back.
for p in (3, 5):
    emb = construct_torus_embedding(p)
    big = [f for f in emb.faces if same_closed_walk(face_vertex_walk(emb, f), torus_face_walk(p))][0]
    print(f"p={p}: {classify_surface(emb).name} with {len(emb.faces)} faces; big face:",
          " ".join(face_vertex_walk(emb, big)))

# GP(6,2) on the torus comes from GP(3,2) with the half-turn voltage.
ve = gp62_torus_voltage()
print("GP(3,2)/Z_2 base:", classify_surface(ve.base).name, "-> derived", classify_surface(derived_embedding(ve)).name)

# Klein bottle witnesses, one per q.
for q in (3, 5, 7):
    ve = kb_embedding(q)
    print(f"q={q}: base graph with {ve.graph.num_vertices} vertices over Z_{ve.group.order} "
          f"-> {classify_surface(derived_embedding(ve)).name}")
