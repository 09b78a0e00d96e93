"""Mod-2 intersection pairing read off a rotation system.

Run: python demos/04_intersection_pairing.py
"""

import numpy as np

from voltembed.homology import betti1, chain, homology_basis
from voltembed.intersection import gram_matrix, independence_by_rank
from voltembed.petersen import construct_torus_embedding
from voltembed.sampling import random_small_embedding
from voltembed.surface import Embedding, build_graph, classify_surface

# Genus two bouquet: two interleaved pairs.
g = build_graph(["x"], [("x", "x")] * 4, list("abcd"))
emb = Embedding.from_tokens(g, {"x": "a+ b+ a- b- c+ d+ c- d-".split()})
m = gram_matrix(emb, [chain(g, [e]) for e in "abcd"])
print(classify_surface(emb).name, "beta1 =", betti1(emb))
print(m)
print(independence_by_rank(m))

# The torus GP(6,2): a homology basis and its Gram matrix.
emb = construct_torus_embedding(3)
basis = homology_basis(emb)
print("\nGP(6,2) on the torus, basis:")
for z in basis:
    print("  ", [emb.graph.edge_ids[e] for e in range(emb.graph.num_edges) if z >> e & 1])
print(gram_matrix(emb, basis))

# On a random nonorientable surface the Gram matrix of a basis is nonsingular
# and its diagonal marks the orientation-reversing classes.
rng = np.random.default_rng(2)
emb = random_small_embedding(rng, p_twist=0.5)
while classify_surface(emb).orientable or betti1(emb) < 3:
    emb = random_small_embedding(rng, p_twist=0.5)
basis = homology_basis(emb)
print(f"\nrandom {classify_surface(emb).name}, beta1 = {len(basis)}")
m = gram_matrix(emb, basis)
print(m)
print("twisted classes:", [i for i in range(len(basis)) if m.entries[i, i]])
