"""
Automata for K cut by a rational line
=====================================

A point sum b_k (-4)^-k lies on p x + q y = r exactly when the integer
recursion s_k = p Re b_k + q Im b_k - 4 s_(k-1), started at s_0 = -r, stays
bounded.  The bounded values are the states of a Büchi automaton.
"""
from fractions import Fraction

from twindragon import buchi, lines

# %%
# The line x = -1/5
# -----------------
# Clearing denominators gives 5x = -1.  Only one state survives trimming and
# it loops on the four digits of real part 1.
L = lines.normalize_line(1, 0, Fraction(-1, 5))
A = lines.build_line_automaton(L)
print(L, A)
print(buchi.export(A, "dot"))

# %%
# Adding the boundary
# -------------------
# The boundary of K is recognised by a six-state automaton over {0, 1}.  Its
# fourth power reads base -4 digits; the product with the line automaton
# describes the boundary points on the line.
G = lines.boundary_automaton_alpha()
G4 = lines.boundary_automaton_base4()
print(G, G4)
B = lines.boundary_line_automaton(L)
print(buchi.export(B, "dot"))

# %%
# Lines missing K
# ---------------
# Far away lines trim to the empty automaton.
print(lines.build_line_automaton(lines.normalize_line(1, 0, 10)).is_empty())

# %%
# Checking against direct search
# ------------------------------
# Prefixes of accepted words agree with a brute-force run of the recursion.
L = lines.normalize_line(2, 3, -1)
A = lines.build_line_automaton(L)
for n in range(5):
    auto = {tuple(b.index for b in w) for w in buchi.enumerate_prefixes(A, n)}
    print(n, len(auto), auto == lines.brute_force_prefixes(L, n))
