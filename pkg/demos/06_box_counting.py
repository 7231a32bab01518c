"""
Box counting
============

A numerical sanity check of the exact dimensions.
"""
import math

from twindragon import dimension, geometry, lines

# %%
# Boundary of K
pts = geometry.attractor_points(lines.boundary_automaton_base4(), 10, resolution=2.0 ** -11)
scales = [2.0 ** -k for k in range(4, 9)]
print(len(pts), geometry.box_counting(pts, scales), dimension.lambda_constants().s)

# %%
# Imaginary parts of the boundary on x = -1/5
B = lines.boundary_line_automaton(lines.normalize_line(5, 0, -1))
pts = geometry.attractor_points(B, 10, part="imag")
print(geometry.box_counting(pts, scales), math.log(3) / math.log(4))

# %%
# The whole tile
# --------------
# The boundary adds boxes at coarse scales, so fine scales are used.
pts = geometry.attractor_points(geometry.tile_automaton(), 8, resolution=2.0 ** -11)
print(geometry.box_counting(pts, [2.0 ** -k for k in range(7, 11)]))
