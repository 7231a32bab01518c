"""
Vertical and diagonal lines
===========================

On x = r with r = sum 2 a_k (-4)^-k the twin dragon is a segment of length 1
whose two endpoints are the only boundary points on the line.
"""
from fractions import Fraction

from twindragon import buchi, cns, geometry, lines

# %%
# The line x = 0
# --------------
L = lines.normalize_line(1, 0, 0)
B = lines.boundary_line_automaton(L)
print(buchi.classify_cardinality(B))
for u, v in buchi.finite_words(B):
    print([str(b) for b in v], cns.eval_periodic(u, v))
print(geometry.extract_interval_union(lines.build_line_automaton(L)))

# %%
# Other binary sequences
# ----------------------
for pre, per in (("1", "0"), ("", "1100"), ("01", "1")):
    sec = geometry.vertical_line_endpoints(pre, per)
    (uu, uv), (lu, lv) = geometry.vertical_endpoint_words(pre, per)
    ok = buchi.accepts(lines.boundary_line_automaton(sec.line), uu, uv)
    print(f"r = {sec.r}: segment {sec.segment}, upper word on the boundary: {ok}")

# %%
# x = -1/4 meets K in three segments
A = lines.build_line_automaton(lines.normalize_line(1, 0, Fraction(-1, 4)))
print(geometry.extract_interval_union(A))

# %%
# Diagonal lines
# --------------
# Sections by diagonal and horizontal lines are similar copies of vertical
# sections.  Compare both sides as point clouds.
for check in geometry.diagonal_relations(Fraction(1, 10), depth=4):
    print(f"{check.distance:.2e} <= {check.tolerance:.2e}  {check.name}")
print(geometry.diagonal_segments(Fraction(1, 10)))
