"""
Hausdorff dimension of line sections
====================================

The dimension of the set described by a trimmed automaton is
log(beta) / log(4), where beta is the largest Perron root among its strongly
connected components.
"""
import math
from fractions import Fraction

from twindragon import buchi, dimension, lines

# %%
# The boundary on x = -1/5
# ------------------------
L = lines.normalize_line(1, 0, Fraction(-1, 5))
B = lines.boundary_line_automaton(L)
report = dimension.hausdorff_dimension(B, line=L)
for row in dimension.describe_components(report):
    print(row)
print("beta =", report.beta, " dimension =", report.dimension, " log3/log4 =", math.log(3) / math.log(4))
print(buchi.classify_cardinality(B))

# %%
# The tile itself on the same line has dimension 1
print(dimension.hausdorff_dimension(lines.build_line_automaton(L)).dimension)

# %%
# The boundary of K
# -----------------
# Its spectral radius is lambda^4 with lambda^3 = lambda^2 + 2.
consts = dimension.lambda_constants()
G4 = dimension.hausdorff_dimension(lines.boundary_automaton_base4())
print(G4.dominant.poly)
print(G4.beta, consts.lam ** 4, consts.s)

# %%
# Never s - 1
# -----------
# A section of the boundary would have dimension s - 1 only if beta were
# lambda^4 / 4.  That number has minimal polynomial 4x^3 - 9x^2 + 2x - 1, so
# it is not an algebraic integer, while every Perron root is.
print(dimension.minimal_polynomial_of_target(), dimension.TARGET_POLY.rational_roots())
closest = None
for line in lines.all_small_lines(4):
    B = lines.boundary_line_automaton(line)
    if B.is_empty():
        continue
    cert = dimension.check_not_s_minus_1(dimension.hausdorff_dimension(B, line=line))
    if closest is None or cert.gap < closest[0]:
        closest = (cert.gap, line, cert.beta)
print("closest approach:", closest)
