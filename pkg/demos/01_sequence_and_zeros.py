"""Generate a sequence and check its zeros against the interval.

Run with ``python demos/01_sequence_and_zeros.py``.
"""

# %% [markdown]
# The polynomials H_m(z) are the Taylor coefficients of
# 1 / (1 + c t + b t^2 + z t^3).  Fixing c = 1 leaves the single
# parameter a = b.  Start by printing the first few members.

# %%
import numpy as np

from fourterm import SequenceParams, generate_sequence, interval_endpoint, zero_report

a = -0.5
params = SequenceParams.normalized(a)
window = generate_sequence(params, 12)
for m, p in enumerate(window):
    print(f"H_{m:<2d} degree {p.degree:>2}  coeffs {np.round(p.coeffs, 4).tolist()}")

# %% [markdown]
# Degrees grow like floor(m/3).  For a in [-1, 1/3] every zero is real and
# sits to the left of a fixed endpoint.

# %%
end = interval_endpoint(a)
print(f"\nendpoint for a = {a}: {end:.6f}")
report = zero_report(params, 30)
print(f"H_30 has {len(report.zeros)} zeros, verdict {report.verdict.value}")
print("largest zero:", report.zeros.real.max(), "<= endpoint:", bool(report.zeros.real.max() <= end))

# %% [markdown]
# The raw two-parameter family is a rescaling of the normalized one: the
# zeros for (b, c) are c^3 times the zeros for a = b / c^2.

# %%
raw = SequenceParams(b=0.3, c=-1.5)
z_raw = np.sort(zero_report(raw, 21).zeros.real)
z_norm = np.sort((-1.5) ** 3 * zero_report(SequenceParams.normalized(0.3 / 2.25), 21).zeros.real)
print("\nmax |raw - c^3 * normalized| =", np.abs(z_raw - z_norm).max())
