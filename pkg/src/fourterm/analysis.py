"""Locate zeros of H_m and tie them to the zeros of the counting function.

Two independent routes reach the same zero set.  The direct route takes
companion-matrix eigenvalues of H_m and polishes them by Newton steps.  The
angle route bisects the sign changes of g_m(theta) on a fixed grid and
maps each root through z(theta).  ``match_zeros`` pairs
the two.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import mpmath
import numpy as np

from . import theta as th
from .errors import CountDeficit, DomainError, EmptyWindow, MatchFailure, ZeroPolynomial
from .recurrence import (
    Regime,
    RealPolynomial,
    SequenceParams,
    SequenceWindow,
    evaluate_with_derivative,
    generate_sequence,
)

__all__ = [
    "TOL_REAL",
    "TOL_MATCH",
    "Hyperbolicity",
    "ZeroReport",
    "GridCell",
    "GmZeroSet",
    "DensityStats",
    "polynomial_zeros",
    "zero_report",
    "regularize_a",
    "count_g_zeros",
    "count_czero_g_zeros",
    "czero_expected_count",
    "match_zeros",
    "check_hyperbolicity",
    "density_sample",
    "in_real_rooted_region",
    "real_rooted_region",
    "Condition",
]

#: |Im z| <= TOL_REAL * (1 + |Re z|) counts as real.
TOL_REAL = 1e-7
#: Matched pairs must agree to TOL_MATCH * (1 + |z|).
TOL_MATCH = 1e-6
#: Bisection stops once the bracket is this narrow (radians).
THETA_XTOL = 1e-12

_PERTURBATION = 1e-9
_COLLISION_TOL = 1e-10
_SIDE_OFFSET = 1e-7


class Hyperbolicity(enum.Enum):
    HYPERBOLIC = "Hyperbolic"
    NOT_HYPERBOLIC = "NotHyperbolic"


class Condition(enum.Enum):
    """Which clause of the reality criterion decided a parameter pair."""

    CZERO_NONNEGATIVE_B = "c = 0 and b >= 0"
    RATIO_IN_RANGE = "c != 0 and -1 <= b/c^2 <= 1/3"
    CZERO_NEGATIVE_B = "c = 0 and b < 0"
    RATIO_OUT_OF_RANGE = "c != 0 and b/c^2 outside [-1, 1/3]"


def real_rooted_region(b, c) -> tuple[bool, Condition]:
    """Decide whether all H_m are hyperbolic, in exact rational arithmetic.

    Floats are converted exactly, so boundary cases such as b = c^2/3 are
    decided without rounding.
    """
    b, c = Fraction(b), Fraction(c)
    if c == 0:
        if b >= 0:
            return True, Condition.CZERO_NONNEGATIVE_B
        return False, Condition.CZERO_NEGATIVE_B
    c2 = c * c
    if -c2 <= b and 3 * b <= c2:
        return True, Condition.RATIO_IN_RANGE
    return False, Condition.RATIO_OUT_OF_RANGE


def in_real_rooted_region(params: SequenceParams) -> bool:
    """True when every H_m of ``params`` is hyperbolic."""
    return real_rooted_region(params.b, params.c)[0]


# -- direct route -----------------------------------------------------------


def _horner_with_derivative(coeffs: np.ndarray):
    def f(z):
        v = np.full_like(z, coeffs[-1], dtype=complex)
        d = np.zeros_like(z, dtype=complex)
        for c in coeffs[-2::-1]:
            d = d * z + v
            v = v * z + c
        return v, d

    return f


def _newton_polish(roots: np.ndarray, evaluator, steps: int) -> np.ndarray:
    z = roots.astype(complex).copy()
    val, der = evaluator(z)
    res = np.abs(val)
    for _ in range(steps):
        with np.errstate(divide="ignore", invalid="ignore"):
            trial = z - val / der
        tval, tder = evaluator(trial)
        better = np.isfinite(trial) & (np.abs(tval) < res)
        if not better.any():
            break
        z = np.where(better, trial, z)
        val = np.where(better, tval, val)
        der = np.where(better, tder, der)
        res = np.where(better, np.abs(tval), res)
    # undo polishing that merged two distinct starting values
    gap_before = np.abs(roots[:, None] - roots[None, :])
    gap_after = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(gap_before, np.inf)
    np.fill_diagonal(gap_after, np.inf)
    scale = 1 + np.abs(z)
    merged = ((gap_after <= 1e-12 * scale[:, None]) & (gap_before > 1e-8 * scale[:, None])).any(axis=1)
    return np.where(merged, roots, z)


def polynomial_zeros(
    p: RealPolynomial,
    evaluator: Optional[Callable] = None,
    newton_steps: int = 8,
    precision_bits: int = 256,
) -> np.ndarray:
    """All complex zeros of ``p``, sorted by real part.

    Eigenvalues of the companion matrix are refined by safeguarded Newton
    steps (a step is kept only if it lowers |p|).  ``evaluator`` maps an
    array z to (p(z), p'(z)); it defaults to Horner on the coefficients.
    Passing an evaluator that runs the recurrence pointwise gives much
    better accuracy on tightly clustered zeros.

    Extended-precision polynomials are solved with ``mpmath.polyroots`` at
    ``precision_bits``.
    """
    if p.is_zero:
        raise ZeroPolynomial("the zero polynomial has no finite zero set")
    if p.degree == 0:
        return np.zeros(0, dtype=complex)
    if p.is_extended:
        with mpmath.workprec(int(precision_bits)):
            found = mpmath.polyroots(list(p.coeffs[::-1]), maxsteps=400, extraprec=2 * int(precision_bits))
        roots = np.array([complex(r) for r in found])
    else:
        roots = np.polynomial.polynomial.polyroots(p.coeffs).astype(complex)
        if newton_steps > 0:
            evaluator = evaluator or _horner_with_derivative(p.coeffs)
            roots = _newton_polish(roots, evaluator, newton_steps)
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]


@dataclass(frozen=True, eq=False)
class ZeroReport:
    """Zeros of one H_m together with per-zero verdicts."""

    m: int
    params: SequenceParams
    degree: float
    zeros: np.ndarray
    realness: np.ndarray
    in_interval: Optional[np.ndarray]
    theta_matches: tuple = ()
    tol_real: float = TOL_REAL

    @property
    def verdict(self) -> Hyperbolicity:
        if bool(np.all(self.realness)):
            return Hyperbolicity.HYPERBOLIC
        return Hyperbolicity.NOT_HYPERBOLIC

    @property
    def max_match_residual(self) -> float:
        res = [r for _, r in filter(None, self.theta_matches)]
        return max(res, default=0.0)

    def rows(self) -> list[dict]:
        out = []
        for i, z in enumerate(self.zeros):
            match = self.theta_matches[i] if self.theta_matches else None
            out.append(
                {
                    "m": self.m,
                    "index": i,
                    "re": float(z.real),
                    "im": float(z.imag),
                    "real": bool(self.realness[i]),
                    "in_interval": None if self.in_interval is None else bool(self.in_interval[i]),
                    "theta": None if match is None else match[0],
                    "match_residual": None if match is None else match[1],
                }
            )
        return out


def zero_report(
    params: SequenceParams,
    m: int,
    window: Optional[SequenceWindow] = None,
    tol_real: float = TOL_REAL,
    precision_bits: Optional[int] = None,
) -> ZeroReport:
    """Zeros of H_m with realness and interval-membership flags.

    Zeros are polished through the pointwise recurrence, which keeps them
    accurate when the monomial coefficients are badly conditioned.
    """
    if window is None or window.m_max < m:
        window = generate_sequence(params, m, precision_bits=precision_bits)
    p = window[m]
    if p.is_zero:
        zeros = np.zeros(0, dtype=complex)
    else:
        zeros = polynomial_zeros(
            p,
            evaluator=lambda z: evaluate_with_derivative(params, m, z),
            precision_bits=precision_bits or 256,
        )
    realness = np.abs(zeros.imag) <= tol_real * (1 + np.abs(zeros.real))
    in_interval = None
    if in_real_rooted_region(params):
        interval = th.scaled_interval(params)
        in_interval = np.array(
            [bool(r) and interval.contains(z.real, tol_real) for r, z in zip(realness, zeros)], dtype=bool
        )
    return ZeroReport(
        m=m,
        params=params,
        degree=p.degree,
        zeros=zeros,
        realness=realness,
        in_interval=in_interval,
        tol_real=tol_real,
    )


# -- angle route --------------------------------------------------------------


@dataclass(frozen=True)
class GridCell:
    """One bracket examined by the counting routine."""

    lo: float
    hi: float
    sign_lo: int
    sign_hi: int
    kind: str
    root: Optional[float]


@dataclass(frozen=True)
class GmZeroSet:
    """Located zeros of g_m, with the cell-by-cell sign log."""

    m: int
    regime: Regime
    a: Optional[float]
    a_used: Optional[float]
    thetas: tuple
    cells: tuple = field(default=(), repr=False)

    @property
    def perturbed(self) -> bool:
        return self.a != self.a_used

    def __len__(self):
        return len(self.thetas)


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def _bisect(f, lo: float, hi: float, sign_lo: int, xtol: float) -> float:
    """Bisection on a bracket whose left sign is known.

    Endpoints are never evaluated, so they may be limits or singular points.
    """
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        s = _sign(f(mid))
        if s == 0:
            return mid
        if s == sign_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _g_unchecked(a: float, theta: float, m: int) -> float:
    cos_t = math.cos(theta)
    w = th._inv_zeta_cos(a, cos_t)
    k = m + 1
    if w == 0:
        return math.copysign(math.inf, math.sin(k * theta))
    return (1 / w - cos_t) * math.sin(k * theta) / math.sin(theta) - math.cos(k * theta) + w**k


def _first_grid_index(m: int) -> int:
    return (2 * (m + 1)) // 3 + 1


def regularize_a(a: float, m: int) -> float:
    """Shift ``a`` by 1e-9 off a = 1/4 and off pole/grid collisions.

    The zero set depends continuously on a, so results at the shifted value
    stand in for the excluded one.
    """
    a_used = a
    for _ in range(16):
        collide = a_used == 0.25
        asym = th.asymptote_theta(a_used)
        if asym is not None and m >= 0:
            h = round(asym * (m + 1) / math.pi)
            collide = collide or abs(asym - h * math.pi / (m + 1)) < _COLLISION_TOL
        if not collide:
            return a_used
        a_used = a_used - _PERTURBATION if a_used - _PERTURBATION >= th.A_MIN else a_used + _PERTURBATION
    return a_used


def _side_sample(a: float, m: int, asym: float, side: int, room: float):
    """Sample g_m next to the pole; side=-1 left, +1 right.

    Near the pole g_m ~ zeta sin((m+1) theta)/sin(theta) with zeta -> +inf
    from the left and -inf from the right, which fixes the limiting sign.
    The offset shrinks until the sample agrees with that sign.
    """
    expected = _sign(math.sin((m + 1) * asym)) * (1 if side < 0 else -1)
    delta = min(_SIDE_OFFSET, 0.25 * room)
    value = _g_unchecked(a, asym + side * delta, m)
    while _sign(value) != expected and delta > 1e-15:
        delta *= 0.1
        value = _g_unchecked(a, asym + side * delta, m)
    return asym + side * delta, value, _sign(value)


def count_g_zeros(a: float, m: int, xtol: float = THETA_XTOL) -> GmZeroSet:
    """Locate the zeros of g_m on (2pi/3, pi) for a in [-1, 1/3].

    g_m is sampled at theta_h = h pi/(m+1), floor(2(m+1)/3) + 1 <= h <= m,
    where its sign is (-1)^(h-1).  For a < 1/4 the limit at pi^- (sign
    (-1)^m) closes the last cell.  For a > 1/4 the cell holding the pole is
    split in two and each half is closed by the one-sided limit at the pole.
    Every sign change is bisected down to ``xtol``.

    Raises ``CountDeficit`` when fewer than floor(m/3) zeros turn up.
    """
    th._check_a(a)
    if m < 0:
        raise DomainError("m must be non-negative")
    a_used = regularize_a(a, m)
    if m < 3:
        return GmZeroSet(m=m, regime=Regime.NORMALIZED, a=a, a_used=a_used, thetas=())

    grid = []
    for h in range(_first_grid_index(m), m + 1):
        value = th.g_m_at_grid(a_used, m, h)
        grid.append((h * math.pi / (m + 1), value, _sign(value), "grid"))

    asym = th.asymptote_theta(a_used)
    if asym is None:
        end = th.g_m_limit_at_pi(a_used, m)
        segments = [grid + [(math.pi, end, _sign(end), "pi-limit")]]
    else:
        left = [s for s in grid if s[0] < asym]
        right = [s for s in grid if s[0] > asym]
        left_edge = left[-1][0] if left else th.THETA_LO
        right_edge = right[0][0] if right else math.pi
        lt, lv, ls = _side_sample(a_used, m, asym, -1, asym - left_edge)
        segments = [left + [(lt, lv, ls, "pole-left")]]
        if right:
            rt, rv, rs = _side_sample(a_used, m, asym, +1, right_edge - asym)
            segments.append([(rt, rv, rs, "pole-right")] + right)

    thetas, cells = [], []
    f = lambda t: _g_unchecked(a_used, t, m)  # noqa: E731
    for seg in segments:
        for (t0, _, s0, k0), (t1, _, s1, k1) in zip(seg, seg[1:]):
            root = None
            if s0 != s1 and s0 != 0 and s1 != 0:
                root = _bisect(f, t0, t1, s0, xtol)
                thetas.append(root)
            cells.append(GridCell(t0, t1, s0, s1, f"{k0}/{k1}", root))

    gset = GmZeroSet(
        m=m,
        regime=Regime.NORMALIZED,
        a=a,
        a_used=a_used,
        thetas=tuple(sorted(thetas)),
        cells=tuple(cells),
    )
    if len(thetas) < m // 3:
        raise CountDeficit(f"found {len(thetas)} zeros of g_{m} at a={a_used!r}, expected {m // 3}")
    return gset


def czero_expected_count(m: int) -> Optional[int]:
    """Number of zeros of the c = 0 counting function on (pi/3, pi/2).

    (m-4)/6, (m-7)/6, m/6, (m-3)/6, (m-2)/6, (m-5)/6 for m = 1, 1, 0, 0, 2, 2
    (mod 3) and m even, odd, even, odd, even, odd respectively.  None for
    m = 1, where H_1 is the zero polynomial.
    """
    if m == 1:
        return None
    offset = {(1, 0): 4, (1, 1): 7, (0, 0): 0, (0, 1): 3, (2, 0): 2, (2, 1): 5}[(m % 3, m % 2)]
    return (m - offset) // 6


def count_czero_g_zeros(m: int, xtol: float = THETA_XTOL) -> GmZeroSet:
    """Locate the zeros of the c = 0 counting function on (pi/3, pi/2).

    Samples sit at theta_k = k pi/(m+1), (m+1)/3 < k < (m+1)/2, where the
    sign is (-1)^(k+1).  When m = 0 (mod 3) the value at pi/3 (which is -3
    or 3) adds a left sample; when m = 2 (mod 3), g_m(pi/3) = 0 and the
    sign just right of pi/3 is that of g_m'(pi/3): positive for even m,
    negative for odd m.
    """
    if m < 0:
        raise DomainError("m must be non-negative")
    expected = czero_expected_count(m)
    if expected is None or m < 2:
        return GmZeroSet(m=m, regime=Regime.CZERO, a=None, a_used=None, thetas=())

    samples = []
    if m % 3 == 0:
        value = th.czero_g_m(th.CZERO_LO, m)
        samples.append((th.CZERO_LO, _sign(value), "pi/3"))
    elif m % 3 == 2:
        samples.append((th.CZERO_LO, 1 if m % 2 == 0 else -1, "pi/3+"))
    for k in range(m // 3, (m + 1) // 2 + 1):
        if 3 * k > m + 1 and 2 * k < m + 1:
            t = k * math.pi / (m + 1)
            value = (-1.0) ** (k + 1) + (-2 * math.cos(t)) ** (m + 1)
            samples.append((t, _sign(value), "grid"))

    thetas, cells = [], []
    f = lambda t: th.czero_g_m(t, m)  # noqa: E731
    for (t0, s0, k0), (t1, s1, k1) in zip(samples, samples[1:]):
        root = None
        if s0 != s1:
            root = _bisect(f, t0, t1, s0, xtol)
            thetas.append(root)
        cells.append(GridCell(t0, t1, s0, s1, f"{k0}/{k1}", root))
    gset = GmZeroSet(m=m, regime=Regime.CZERO, a=None, a_used=None, thetas=tuple(sorted(thetas)), cells=tuple(cells))
    if len(thetas) < expected:
        raise CountDeficit(f"found {len(thetas)} zeros of the c=0 g_{m}, expected {expected}")
    return gset


def _theta_side_zeros(gset: GmZeroSet, params: SequenceParams):
    """(z, theta) pairs predicted by the angle route, sorted by z."""
    scale = params.zero_scale
    if gset.regime is Regime.CZERO:
        pairs = []
        for t in gset.thetas:
            z = th.czero_z(t) * scale
            pairs += [(z, t), (-z, t)]
        if gset.m % 2 == 1 and gset.m > 1:
            pairs.append((0.0, None))
    else:
        pairs = [(th.z_of_theta(gset.a_used, t) * scale, t) for t in gset.thetas]
    return sorted(pairs, key=lambda p: p[0])


def match_zeros(report: ZeroReport, gset: GmZeroSet, tol: float = TOL_MATCH) -> ZeroReport:
    """Pair the zeros of H_m with z(theta) over the located g_m zeros.

    Both lists are sorted by real value and paired in order; z(theta) is
    monotone, so pairs cannot interleave.  Each pair must agree to
    ``tol * (1 + |z|)``.  The returned report carries (theta, residual) per
    zero, residual being the relative distance.
    """
    if report.m != gset.m:
        raise MatchFailure(f"report is for m={report.m}, zero set for m={gset.m}")
    predicted = _theta_side_zeros(gset, report.params)
    if len(predicted) != len(report.zeros):
        raise MatchFailure(
            f"{len(predicted)} angle-route zeros vs {len(report.zeros)} zeros of H_{report.m}"
        )
    order = np.argsort(report.zeros.real, kind="stable")
    matches = [None] * len(report.zeros)
    for idx, (z_pred, theta) in zip(order, predicted):
        z = report.zeros[idx]
        residual = abs(z - z_pred) / (1 + abs(z_pred))
        if residual > tol:
            raise MatchFailure(f"zero {z} of H_{report.m} is {residual:.3g} from z(theta) = {z_pred}")
        matches[idx] = (theta, float(residual))
    return replace(report, theta_matches=tuple(matches))


def check_hyperbolicity(
    params: SequenceParams,
    m: int,
    window: Optional[SequenceWindow] = None,
    tol_real: float = TOL_REAL,
    tol_match: float = TOL_MATCH,
    precision_bits: Optional[int] = None,
):
    """Full pipeline for one H_m: zeros, flags and, inside the real-rooted
    region, the angle-route count and matching.

    Returns ``(report, gset)``; ``gset`` is None when no angle route applies.
    """
    report = zero_report(params, m, window=window, tol_real=tol_real, precision_bits=precision_bits)
    gset = None
    if in_real_rooted_region(params) and report.degree != -math.inf and report.degree > 0:
        if params.c != 0:
            gset = count_g_zeros(params.a, m)
        elif params.b > 0:
            gset = count_czero_g_zeros(m)
        if gset is not None:
            report = match_zeros(report, gset, tol=tol_match)
    return report, gset


# -- density ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DensityStats:
    """Zeros of H_0..H_{m_max} inside a window, and the largest empty stretch."""

    params: SequenceParams
    m_max: int
    window: tuple
    points: np.ndarray
    max_gap: float

    @property
    def gaps(self) -> np.ndarray:
        lo, hi = self.window
        return np.diff(np.concatenate(([lo], self.points, [hi])))


def density_sample(
    params: SequenceParams,
    m_max: int,
    window: tuple,
    tol_real: float = TOL_REAL,
    sequence: Optional[SequenceWindow] = None,
) -> DensityStats:
    """Pool the real zeros of H_0..H_{m_max} that fall in ``window``.

    The window is clipped to the zero interval.  ``max_gap`` is the largest
    distance between consecutive pooled zeros, window ends included, so it
    can only shrink as m_max grows.
    """
    if not in_real_rooted_region(params):
        raise DomainError("density sampling needs parameters with all zeros real")
    lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise EmptyWindow(f"window ({lo}, {hi}) is empty")
    ilo, ihi = th.scaled_interval(params).bounds
    lo, hi = max(lo, ilo), min(hi, ihi)
    if not lo < hi:
        raise EmptyWindow(f"window misses the zero interval [{ilo}, {ihi}]")
    if sequence is None or sequence.m_max < m_max:
        sequence = generate_sequence(params, m_max)
    pooled = []
    for m in range(m_max + 1):
        rep = zero_report(params, m, window=sequence, tol_real=tol_real)
        real = rep.zeros.real[rep.realness]
        pooled.append(real[(real >= lo) & (real <= hi)])
    points = np.unique(np.concatenate(pooled)) if pooled else np.zeros(0)
    gaps = np.diff(np.concatenate(([lo], points, [hi])))
    return DensityStats(params=params, m_max=m_max, window=(lo, hi), points=points, max_gap=float(gaps.max()))
