"""Petersen and Durer graphs as derived graphs of the barbell.

Run: python demos/01_derived_graphs.py
"""

from voltembed.petersen import gp_barbell_voltage, gp_graph
from voltembed.surface import graph_isomorphic
from voltembed.voltage import derived_graph, left_action, verify_free_action

# The barbell GP(1,0): two loops joined by a link.  Voltages 1 and k on the
# loops, 0 on the link.
for n, k in [(5, 2), (6, 2), (7, 3)]:
    vg = gp_barbell_voltage(n, k)
    dg = derived_graph(vg)
    same, _ = graph_isomorphic(dg, gp_graph(n, k))
    print(f"barbell over Z_{n}, loops (1,{k}): {dg.num_vertices} vertices, {dg.num_edges} edges, "
          f"GP({n},{k})? {same}, free action? {verify_free_action(vg)}")

# Group element 1 turns both rims of the Petersen graph by one step.
vg = gp_barbell_voltage(5, 2)
dg = derived_graph(vg)
vperm, _ = left_action(vg, 1)
print("c=1 acts as", {dg.vertices[v]: dg.vertices[vperm[v]] for v in range(dg.num_vertices)})
