"""Planarity certificates and apex sets on a few familiar graphs.

Run with ``python demos/planarity_and_apex.py``.
"""

from apexis.apex import genk33, is_l_apex
from apexis.catalog import j1
from apexis.graph import complete, complete_bipartite, petersen
from apexis.planarity import is_planar

# Every answer comes with a certificate that can be re-checked on its own.
for name, g in [("K4", complete(4)), ("K5", complete(5)), ("K3,3", complete_bipartite(3, 3)),
                ("Petersen", petersen())]:
    cert = is_planar(g)
    kind = "embedding" if hasattr(cert, "rotation") else f"{cert.name} minor"
    print(f"{name:9} planar={kind == 'embedding'!s:5} certificate={kind:10} verifies={cert.verify(g)}")

# K7 needs three deletions; every one of the 21 pairs leaves a non-planar graph.
for l in (1, 2, 3):
    res = is_l_apex(complete(7), l)
    print(f"K7 is {l}-apex: {bool(res)}")
verdict = is_l_apex(complete(7), 2)
print(f"  the negative verdict covers {len(verdict.covered())} pairs and verifies: {verdict.verify(complete(7))}")

# J1 has 21 edges but cannot be made planar by deleting a single vertex.
res = is_l_apex(j1(), 1)
print(f"J1 is 1-apex: {bool(res)}; 2-apex set: {is_l_apex(j1(), 2).apex_set}")

# Deleting any vertex of K3,3 leaves K3,3 minus a vertex, so (K3,3; 0) is a
# generalised K3,3; the five trees contract onto that graph.
p = genk33(complete_bipartite(3, 3), 0)
print(f"generalised K3,3 partition: V2={p.v2} V3={p.v3} W={p.w}")
