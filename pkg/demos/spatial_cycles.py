"""Checking every cycle of a drawn graph for knotting.

Run with ``python demos/spatial_cycles.py [diagram file]``.  The default
diagram ties the triangle a-b-c of a small graph into a trefoil.
"""

import sys
from pathlib import Path

from apexis.spatial import certify_unknotted, cycle_crossing_sets, load_diagram, maximal_sets

path = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent / "diagrams" / "trefoil_in_graph.txt"
d = load_diagram(path)
print(f"{path.name}: {len(d.vertex_names)} vertices, {len(d.edges)} edges, {len(d.signs)} crossings")

# Only crossings with both strands on a cycle matter for that cycle's knot.
sets = maximal_sets(s for _, s in cycle_crossing_sets(d))
print("maximal crossing sets:", [sorted(s) for s in sets])

for r in certify_unknotted(d):
    names = "-".join(d.vertex_names[v] for v in r.cycle)
    extra = f" via {len(r.moves)} moves" if r.verdict == "Unknot" and r.moves else ""
    if r.jones is not None:
        extra = f" (Jones {r.jones.format()})"
    print(f"  {names:12} {r.code or '(no crossings)':28} {r.verdict}{extra}")
