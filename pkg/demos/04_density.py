"""Watch the zeros fill the interval as m grows.

Run with ``python demos/04_density.py``.
"""

# %% [markdown]
# Pool the real zeros of H_0..H_M inside a window and track the widest
# empty stretch.  The pool only grows with M, so the widest gap can only
# shrink.

# %%
import numpy as np

from fourterm import SequenceParams, density_sample, generate_sequence

params = SequenceParams.normalized(0.0)
seq = generate_sequence(params, 80)
for M in (10, 20, 40, 60, 80):
    stats = density_sample(params, M, (-2.0, -4 / 27), sequence=seq)
    print(f"M = {M:3d}  zeros in window {len(stats.points):4d}  widest gap {stats.max_gap:.4f}")

# %% [markdown]
# With c = 0 and b > 0 the zeros cover the whole line and come in pairs
# +z, -z, plus a simple zero at 0 for odd m.

# %%
stats = density_sample(SequenceParams(b=1, c=0), 60, (-3.0, 3.0))
pts = stats.points
print("\nc = 0 pool is symmetric:", bool(np.allclose(np.sort(-pts), pts)))
print("histogram over [-3, 3]:", np.histogram(pts, bins=6, range=(-3, 3))[0].tolist())
