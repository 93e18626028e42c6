"""Classify (b, c) on a grid and inspect witnesses outside the real region.

Run with ``python demos/03_phase_diagram.py``.
"""

# %% [markdown]
# All zeros are real exactly when c = 0 and b >= 0, or c != 0 and
# -1 <= b/c^2 <= 1/3.  The classifier decides this in exact arithmetic, so
# boundary points such as b = c^2/3 land on the right side.

# %%
from fractions import Fraction

from fourterm import SequenceParams, attraction_check, classify, nonreal_witness
from fourterm.analysis import real_rooted_region

grid = [Fraction(k, 2) for k in range(-4, 5)]
print("rows c from -2 to 2, columns b from -2 to 2 ('#' = all real)")
for c in grid:
    print(f"c = {float(c):+.1f}  " + "".join("#" if real_rooted_region(b, c)[0] else "." for b in grid))

# %% [markdown]
# Outside the region a complex ratio produces a non-real point z* where the
# two smallest roots of the cubic have equal modulus.  Zeros of H_m cluster
# near such points as m grows.

# %%
for a in (-1.5, 0.6, 1.0, 2.0):
    w = nonreal_witness(a)
    hit = attraction_check(SequenceParams.normalized(a), w.z_star)
    print(f"a = {a:+.1f}  delta = {w.delta:.0e}  z* = {w.z_star:.4f}  {hit.label}")

# %% [markdown]
# With c = 0 and b < 0 the zeros are purely imaginary.

# %%
result = classify(SequenceParams(b=-1, c=0))
print("\n(b, c) = (-1, 0):", result.verdict.value, "first non-real zero", result.witness.z_star, "at m =", result.first_nonreal)
