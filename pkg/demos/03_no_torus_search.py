"""Exhaustive search: which quotients of GP(2p,2) lift to a torus?

For p=3 there are tori; for p=7 there are none among 4.2 million base
embeddings (about a minute on one core).

Run: python demos/03_no_torus_search.py [p ...]
"""

import sys
import time

from voltembed.petersen import no_torus_search
from voltembed.surface import classify_surface
from voltembed.voltage import derived_embedding

for p in [int(x) for x in sys.argv[1:]] or [3, 5]:
    t0 = time.perf_counter()
    report = no_torus_search(p)
    print(report.table())
    print(f"  ({time.perf_counter() - t0:.1f} s)\n")

# A witness from p=3, checked again by tracing the derived faces directly.
report = no_torus_search(3, kinds=("gpp2",))
ve = report.results[0].witness_embedding(0)
print("p=3 witness:", classify_surface(derived_embedding(ve)).name)
