"""The K7 family, the two nine-vertex members, and the odd one out, E9.

Run with ``python demos/k7_family_and_e9.py``.  Takes a few seconds.
"""

from apexis.apex import is_l_apex
from apexis.catalog import e9, e9_properties, family_minor, k7_family, y_triangle_moves_to
from apexis.canon import canonical_form
from apexis.graph import y_triangle

family = k7_family()
print(f"{len(family)} graphs are reachable from K7 by triangle-Y moves:")
for m in family:
    print(f"  {m.name:7} {m.graph.n:2} vertices  degrees {m.graph.degree_sequence()}")

# No member can be made planar by deleting two vertices.
print("every member is non-2-apex:", all(not is_l_apex(m.graph, 2) for m in family))

# E9 also fails to be 2-apex, but contains none of the family as a minor.
g = e9()
print("E9 properties:", e9_properties(g))
print("E9 is 2-apex:", bool(is_l_apex(g, 2)), "| family minor:", family_minor(g))

# It is one Y-triangle move away from the ten-vertex member F10.
key = canonical_form(g).key
for m in family:
    moves = y_triangle_moves_to(m.graph, key)
    if moves:
        h = y_triangle(m.graph, moves[0])
        print(f"{m.name} --Y-triangle at vertex {moves[0]}--> E9: {canonical_form(h).key == key}")
