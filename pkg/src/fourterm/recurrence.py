"""Polynomial sequences generated by the four-term recurrence.

The sequence is defined by

    H_m(z) + c H_{m-1}(z) + b H_{m-2}(z) + z H_{m-3}(z) = 0,   m >= 3,

with H_0 = 1, H_1 = -c, H_2 = c**2 - b, equivalently by the generating
function 1 / (1 + c t + b t**2 + z t**3).  Substituting t -> t/c turns the
raw pair (b, c) into the single parameter a = b / c**2 and rescales every
zero by c**3; for c = 0 and b > 0 the substitution t -> t/sqrt(b) rescales
zeros by b**1.5.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from numbers import Real
from typing import Optional, Sequence

import mpmath
import numpy as np

from .errors import DegenerateRoots, DomainError, ZeroArgument

__all__ = [
    "Regime",
    "SequenceParams",
    "RealPolynomial",
    "SequenceWindow",
    "generate_sequence",
    "degree_bound",
    "evaluate",
    "evaluate_with_derivative",
    "closed_form_eval",
    "TRIM_SAFETY",
    "ZERO_DEGREE",
]

#: A leading coefficient within this multiple of its rounding-error bound
#: is treated as zero when detecting the degree.
TRIM_SAFETY = 16.0

#: Degree reported for the identically zero polynomial.
ZERO_DEGREE = -math.inf


class Regime(enum.Enum):
    NORMALIZED = "normalized"
    RAW = "raw"
    CZERO = "czero"


@dataclass(frozen=True)
class SequenceParams:
    """Recurrence coefficients (b, c).

    ``b`` and ``c`` may be floats or exact rationals; exact values are kept
    so that the classifier can decide boundary cases without rounding.  Use
    :meth:`normalized` to build the one-parameter family with c = 1.
    """

    b: Real
    c: Real
    regime: Regime = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("b", "c"):
            value = getattr(self, name)
            if not isinstance(value, Real) or not math.isfinite(float(value)):
                raise DomainError(f"{name} must be a finite real number, got {value!r}")
        if self.regime is None:
            regime = Regime.CZERO if self.c == 0 else Regime.RAW
            object.__setattr__(self, "regime", regime)
        elif self.regime is Regime.NORMALIZED and self.c != 1:
            raise DomainError("normalized parameters require c = 1")
        elif self.regime is Regime.CZERO and self.c != 0:
            raise DomainError("the c = 0 regime requires c = 0")
        elif self.regime is Regime.RAW and self.c == 0:
            raise DomainError("c = 0 belongs to the c = 0 regime")

    @classmethod
    def normalized(cls, a: Real) -> "SequenceParams":
        """Parameters of the sequence generated by 1/(1 + t + a t^2 + z t^3)."""
        return cls(b=a, c=1, regime=Regime.NORMALIZED)

    @property
    def a(self) -> Optional[float]:
        """b / c**2, or None when c = 0."""
        if self.c == 0:
            return None
        return float(self.b) / float(self.c) ** 2

    @property
    def zero_scale(self) -> float:
        """Factor mapping zeros of the reduced sequence onto zeros of this one."""
        if self.c != 0:
            return float(self.c) ** 3
        if self.b > 0:
            return float(self.b) ** 1.5
        return 1.0

    def reduced(self) -> "SequenceParams":
        """The canonical form whose zeros, times ``zero_scale``, are ours."""
        if self.c != 0:
            return SequenceParams.normalized(self.a)
        if self.b > 0:
            return SequenceParams(b=1, c=0)
        return self

    def as_floats(self) -> tuple[float, float]:
        return float(self.b), float(self.c)


def _trim(coeffs: np.ndarray, errors: Optional[np.ndarray] = None) -> np.ndarray:
    """Drop leading (high-power) coefficients that are rounding noise.

    A coefficient counts as noise when it is no larger than ``TRIM_SAFETY``
    times its accumulated rounding-error bound; without a bound only exact
    zeros are dropped.
    """
    mags = np.array([abs(float(x)) for x in coeffs])
    noise = np.zeros_like(mags) if errors is None else TRIM_SAFETY * np.asarray(errors, dtype=float)
    keep = np.nonzero(mags > noise)[0]
    if len(keep) == 0:
        return abs(coeffs[:1]) * 0
    return coeffs[: keep[-1] + 1]


@dataclass(frozen=True, eq=False)
class RealPolynomial:
    """Dense polynomial in z with real coefficients in ascending powers.

    ``coeffs`` is either a float64 array or an object array of ``mpmath.mpf``
    for the extended-precision path.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs)
        if coeffs.dtype != object:
            coeffs = coeffs.astype(float)
        if coeffs.ndim != 1 or len(coeffs) == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")
        nz = [i for i, x in enumerate(coeffs) if x != 0]
        coeffs = coeffs[: nz[-1] + 1] if nz else abs(coeffs[:1]) * 0
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, errors: Optional[Sequence] = None) -> "RealPolynomial":
        """Build a polynomial, trimming leading coefficients lost in rounding.

        ``errors`` holds an absolute error bound per coefficient.
        """
        arr = np.asarray(coeffs)
        if arr.dtype != object:
            arr = arr.astype(float)
        return cls(_trim(arr, errors))

    @property
    def degree(self):
        if self.is_zero:
            return ZERO_DEGREE
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    @property
    def is_extended(self) -> bool:
        return self.coeffs.dtype == object

    def __call__(self, z):
        acc = 0 * z + self.coeffs[-1]
        for c in self.coeffs[-2::-1]:
            acc = acc * z + c
        return acc

    def as_float(self) -> np.ndarray:
        return np.array([float(x) for x in self.coeffs])

    def __repr__(self):
        return f"RealPolynomial(degree={self.degree}, coeffs={self.as_float().tolist()})"


@dataclass(frozen=True)
class SequenceWindow:
    """H_0 .. H_{m_max} for one parameter set."""

    params: SequenceParams
    polys: tuple
    precision_bits: Optional[int] = None

    def __getitem__(self, m: int) -> RealPolynomial:
        return self.polys[m]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    @property
    def m_max(self) -> int:
        return len(self.polys) - 1

    def residual(self, m: int) -> float:
        """Relative coefficient residual of the recurrence at index m."""
        if m < 3:
            raise ValueError("the recurrence applies from m = 3")
        b, c = self.params.as_floats()
        n = max(len(self.polys[k].coeffs) for k in range(m - 3, m + 1)) + 1
        terms = np.zeros((4, n))
        for row, (k, weight, shift) in enumerate(
            [(m, 1.0, 0), (m - 1, c, 0), (m - 2, b, 0), (m - 3, 1.0, 1)]
        ):
            p = self.polys[k].as_float()
            terms[row, shift : shift + len(p)] = weight * p
        scale = np.abs(terms).max()
        if scale == 0.0:
            return 0.0
        return float(np.abs(terms.sum(axis=0)).max() / scale)


def generate_sequence(
    params: SequenceParams, m_max: int, precision_bits: Optional[int] = None
) -> SequenceWindow:
    """Generate H_0, ..., H_{m_max}.

    Parameters
    ----------
    params : SequenceParams
        Recurrence coefficients.  The normalized family is the special case
        c = 1, b = a, so one code path serves every regime.
    m_max : int
        Last index to generate (inclusive).
    precision_bits : int, optional
        When given, coefficients are ``mpmath.mpf`` values computed with this
        many significand bits instead of float64.

    Returns
    -------
    SequenceWindow
    """
    if int(m_max) != m_max or m_max < 0:
        raise DomainError(f"m_max must be a non-negative integer, got {m_max!r}")
    m_max = int(m_max)
    if precision_bits is not None:
        if precision_bits < 53:
            raise DomainError("precision_bits must be at least 53")
        with mpmath.workprec(int(precision_bits)):
            raw, errs = _raw_sequence(params, m_max, mpmath.mpf, 2.0 ** -int(precision_bits))
    else:
        raw, errs = _raw_sequence(params, m_max, float, 2.0**-53)
    polys = tuple(RealPolynomial.from_coeffs(p, e) for p, e in zip(raw, errs))
    return SequenceWindow(params=params, polys=polys, precision_bits=precision_bits)


def _raw_sequence(params: SequenceParams, m_max: int, num, eps: float):
    """Coefficient arrays of H_0..H_{m_max} and a running error bound for each.

    The bound follows the standard forward analysis of the shift-and-add
    step: fresh rounding on the three products and two sums, plus the
    propagated bounds of the three inputs.
    """
    b, c = params.b, params.c
    if num is float:
        b, c = float(b), float(c)
        dtype = float
    else:
        b = num(b.numerator) / b.denominator if hasattr(b, "denominator") else num(b)
        c = num(c.numerator) / c.denominator if hasattr(c, "denominator") else num(c)
        dtype = object
    ab, ac = abs(float(b)), abs(float(c))
    zero = num(0)
    seq = [
        np.array([num(1)], dtype=dtype),
        np.array([-c], dtype=dtype),
        np.array([c * c - b], dtype=dtype),
    ]
    errs = [np.zeros(1), np.zeros(1), np.array([2 * eps * (ac * ac + ab)])]
    for m in range(3, m_max + 1):
        n = m // 3 + 1
        nxt = np.array([zero] * n, dtype=dtype)
        p1, p2, p3 = seq[m - 1], seq[m - 2], seq[m - 3]
        nxt[: len(p1)] -= c * p1
        nxt[: len(p2)] -= b * p2
        nxt[1 : len(p3) + 1] -= p3
        mag = np.zeros(n)
        err = np.zeros(n)
        for src, e, w, shift in ((p1, errs[m - 1], ac, 0), (p2, errs[m - 2], ab, 0), (p3, errs[m - 3], 1.0, 1)):
            k = len(src)
            mag[shift : shift + k] += w * np.array([abs(float(x)) for x in src])
            err[shift : shift + k] += w * e
        seq.append(nxt)
        errs.append(err + 3 * eps * mag)
    return seq[: m_max + 1], errs[: m_max + 1]


def degree_bound(params: SequenceParams, m: int):
    """Upper bound on deg H_m.

    floor(m/3) when c != 0; for c = 0 the sharper m/3, (m-4)/3, (m-2)/3
    according to m mod 3.  The only negative case, m = 1 with c = 0, is the
    zero polynomial and returns ``ZERO_DEGREE``.
    """
    if m < 0:
        raise DomainError("m must be non-negative")
    if params.c != 0:
        return m // 3
    bound = {0: m // 3, 1: (m - 4) // 3, 2: (m - 2) // 3}[m % 3]
    return ZERO_DEGREE if bound < 0 else bound


def evaluate_with_derivative(params: SequenceParams, m: int, z):
    """H_m(z) and dH_m/dz by running the recurrence at the point z.

    Far better conditioned than Horner on the expanded coefficients when the
    zeros cluster, which is why root polishing goes through here.  ``z`` may
    be a scalar or an array (real or complex).
    """
    b, c = params.as_floats()
    z = np.asarray(z)
    one = np.ones_like(z, dtype=np.result_type(z, float))
    h = [one, -c * one, (c * c - b) * one]
    d = [0 * one, 0 * one, 0 * one]
    if m < 3:
        return h[m], d[m]
    for _ in range(3, m + 1):
        hn = -(c * h[2] + b * h[1] + z * h[0])
        dn = -(c * d[2] + b * d[1] + h[0] + z * d[0])
        h = [h[1], h[2], hn]
        d = [d[1], d[2], dn]
    return h[2], d[2]


def evaluate(params: SequenceParams, m: int, z):
    """H_m(z) via the scalar recurrence."""
    return evaluate_with_derivative(params, m, z)[0]


def closed_form_eval(params: SequenceParams, m: int, z: complex, rtol: float = 1e-8) -> complex:
    """H_m(z) from the partial-fraction expansion of the generating function.

    With t_0, t_1, t_2 the roots of 1 + c t + b t^2 + z t^3,

        H_m(z) = -(1/z) * sum_k 1 / ((t_k - t_i)(t_k - t_j) t_k^(m+1)).

    Raises ``DegenerateRoots`` when two roots are closer than ``rtol`` times
    the largest root modulus, where the formula breaks down.
    """
    if m < 0:
        raise DomainError("m must be non-negative")
    z = complex(z)
    if z == 0:
        raise ZeroArgument("the closed form requires z != 0")
    b, c = params.as_floats()
    t = np.roots([z, b, c, 1.0])
    if len(t) != 3:
        raise DegenerateRoots("denominator cubic lost a root")
    size = np.abs(t).max()
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(t[i] - t[j]) <= rtol * size:
                raise DegenerateRoots(f"cubic roots {t[i]} and {t[j]} coincide")
    total = 0j
    for k in range(3):
        i, j = [x for x in range(3) if x != k]
        total += 1.0 / ((t[k] - t[i]) * (t[k] - t[j]) * t[k] ** (m + 1))
    return -total / z
