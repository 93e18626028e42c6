"""Count zeros by sign changes of an angle function and match them to H_m.

Run with ``python demos/02_angle_route.py``.
"""

# %% [markdown]
# On the angle interval (2pi/3, pi) the function g_m(theta) alternates sign
# on the grid theta_h = h pi/(m+1).  Each sign change brackets one zero, and
# the map theta -> z(theta) sends that zero to a zero of H_m.

# %%
import math

import numpy as np

from fourterm import SequenceParams, check_hyperbolicity, count_g_zeros
from fourterm import theta as th

a, m = 0.1, 15
for h in range((2 * (m + 1)) // 3 + 1, m + 1):
    print(f"h = {h:2d}  g_m(theta_h) = {th.g_m_at_grid(a, m, h):+.4f}")
print(f"limit at pi: {th.g_m_limit_at_pi(a, m):+.4f}")

# %% [markdown]
# Bisection of the bracketed cells gives floor(m/3) angles.  Mapping them
# through z(theta) reproduces the zeros from the eigenvalue route.

# %%
report, gset = check_hyperbolicity(SequenceParams.normalized(a), m)
for z, (theta, res) in zip(report.zeros.real, report.theta_matches):
    print(f"theta = {theta:.12f}  z(theta) vs eigen zero {z:+.12f}  rel diff {res:.1e}")

# %% [markdown]
# For 1/4 < a <= 1/3 the ratio zeta has a pole inside the interval.  The
# counting routine splits the cell around the pole and samples each side.

# %%
a = 0.3
pole = th.asymptote_theta(a)
print(f"\npole for a = {a}: {pole:.6f} (5pi/6 = {5 * math.pi / 6:.6f})")
gset = count_g_zeros(a, 30)
for cell in gset.cells:
    if "pole" in cell.kind:
        print(f"  {cell.kind:16s} [{cell.lo:.6f}, {cell.hi:.6f}] signs {cell.sign_lo:+d}/{cell.sign_hi:+d} root {cell.root}")
print("zeros located:", len(gset), "expected:", 30 // 3)

z = np.array([th.z_of_theta(a, t) for t in np.linspace(pole - 1e-6, pole + 1e-6, 5)])
print("z(theta) is continuous through the pole:", np.round(z, 9).tolist())
