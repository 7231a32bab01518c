"""
Base -1+i and its base -4 recoding
==================================

Every point of the twin dragon K is a sum of binary digits over powers of
alpha = -1+i.  Grouping four binary digits at a time turns this into a
base -4 expansion with 16 complex digits.
"""

# %%
# The 16 digit blocks
# -------------------
from twindragon import cns

for block in cns.digit_table():
    print(f"[{block.word}] = {block.value}")

# %%
# Expansions of Gaussian integers
# -------------------------------
# Every Gaussian integer has a finite binary expansion in base -1+i.
for g in (3, -1 + 1j, 2 + 5j, -7j):
    word = cns.alpha_expand(g)
    print(f"{g!s:>8} -> {word:>12} -> {cns.alpha_eval(word)}")

# %%
# Exact values of infinite expansions
# -----------------------------------
# Eventually periodic words evaluate to rationals.  Alternating the digits
# of real part 3 and -1 reaches the leftmost and rightmost points of K.
print(cns.eval_periodic([], [3, -1]))
print(cns.eval_periodic([], [-1, 3]))
print(cns.eval_periodic([], [1]))  # x = -1/5
