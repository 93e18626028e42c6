"""Classification of (b, c) and explicit non-real witnesses.

Outside the all-real region the cubic 1 + t + a t^2 + z t^3 has, for a
suitable angle, a complex ratio zeta.  The corresponding z(theta) is then a
non-real point at which the two smallest roots of the cubic share their
modulus.  Such points attract zeros of H_m as m grows, so they certify
that the sequence is not hyperbolic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import theta as th
from .analysis import TOL_REAL, Condition, real_rooted_region, zero_report
from .errors import DomainError, WitnessSearchFailure
from .recurrence import SequenceParams, generate_sequence

__all__ = [
    "Verdict",
    "WitnessStep",
    "Witness",
    "Attraction",
    "Classification",
    "DELTA_SCHEDULE",
    "EMPIRICAL_M_CAP",
    "NOT_FOUND_LABEL",
    "nonreal_witness",
    "witness_trace",
    "equimodular_check",
    "attraction_check",
    "first_nonreal_m",
    "classify",
]

#: Offsets tried, in order, when moving the witness angle off its limit point.
DELTA_SCHEDULE = tuple(10.0**-k for k in range(1, 9))
#: Largest m scanned when looking for a non-real zero empirically.
EMPIRICAL_M_CAP = 60
#: Label attached to an empirical search that found nothing up to the cap.
NOT_FOUND_LABEL = "not found at desk scale"

_MIN_IMAG = 1e-8
_EQUIMODULAR_ATOL = 1e-10
_DISTINCT_RTOL = 1e-8


class Verdict(enum.Enum):
    ALL_REAL = "AllReal"
    NOT_ALL_REAL = "NotAllReal"


@dataclass(frozen=True)
class WitnessStep:
    """One offset of the search with the three predicate outcomes."""

    delta: float
    theta: float
    z: complex
    moduli: tuple
    nonreal: bool
    distinct: bool
    equimodular: bool

    @property
    def ok(self) -> bool:
        return self.nonreal and self.distinct and self.equimodular


@dataclass(frozen=True)
class Witness:
    """A non-real point certifying failure of hyperbolicity.

    ``z_star`` lives in the coordinates of the parameters it was built for:
    ``nonreal_witness`` returns the normalized (c = 1) point and ``classify``
    rescales it by c^3.  ``theta_star`` is None for the c = 0 empirical case.
    """

    z_star: complex
    theta_star: Optional[float]
    delta: Optional[float] = None
    m_checked: Optional[int] = None
    trace: tuple = field(default=(), repr=False)


@dataclass(frozen=True)
class Attraction:
    """Outcome of looking for a zero of some H_m near a witness."""

    found: bool
    m: Optional[int]
    zero: Optional[complex]
    distance: Optional[float]
    m_max: int

    @property
    def label(self) -> str:
        if self.found:
            return f"confirmed at m = {self.m}"
        return NOT_FOUND_LABEL


@dataclass(frozen=True)
class Classification:
    """Reality verdict for one parameter pair."""

    params: SequenceParams
    verdict: Verdict
    condition: Condition
    interval: Optional[th.IntervalSpec] = None
    witness: Optional[Witness] = None
    first_nonreal: Optional[int] = None

    @property
    def a(self) -> Optional[float]:
        return self.params.a

    @property
    def empirical_label(self) -> Optional[str]:
        if self.verdict is Verdict.ALL_REAL:
            return None
        if self.first_nonreal is None:
            return NOT_FOUND_LABEL
        return f"non-real zero at m = {self.first_nonreal}"


def _cubic_moduli(z: complex, a: float) -> tuple[np.ndarray, np.ndarray]:
    roots = np.roots([z, a, 1.0, 1.0])
    order = np.argsort(np.abs(roots), kind="stable")
    return roots[order], np.abs(roots[order])


def equimodular_check(z: complex, a: float, rtol: float = 1e-9) -> bool:
    """True when the two smallest roots of 1 + t + a t^2 + z t^3 share a modulus.

    Parameters
    ----------
    z : complex
        Cubic coefficient; must be nonzero.
    a : float
        Quadratic coefficient.
    rtol : float
        Moduli r0 <= r1 count as equal when r1 - r0 <= rtol * (1 + r0).
    """
    if z == 0:
        raise DomainError("z = 0 leaves a quadratic, not a cubic")
    _, mods = _cubic_moduli(complex(z), a)
    return bool(mods[1] - mods[0] <= rtol * (1 + mods[0]))


def _witness_theta(a: float, delta: float) -> float:
    if a < -1:
        return math.pi / 2 - delta
    beta = math.sqrt(a / (4 * a - 1))
    return math.acos(min(beta + delta, 1.0))


def _step(a: float, delta: float) -> Optional[WitnessStep]:
    theta = _witness_theta(a, delta)
    if not 0 < theta < math.pi:
        return None
    _, z = th.cubic_roots_at(a, theta, allow_complex=True)
    z = complex(z)
    roots, mods = _cubic_moduli(z, a)
    gaps = [abs(roots[i] - roots[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
    scale = 1 + float(mods[-1])
    return WitnessStep(
        delta=delta,
        theta=theta,
        z=z,
        moduli=tuple(float(x) for x in mods),
        nonreal=abs(z.imag) > _MIN_IMAG,
        distinct=min(gaps) > _DISTINCT_RTOL * scale,
        equimodular=abs(mods[1] - mods[0]) <= _EQUIMODULAR_ATOL,
    )


def witness_trace(a: float) -> list[WitnessStep]:
    """Every step of the offset schedule up to and including the first success."""
    if -1 <= a <= 1 / 3:
        raise DomainError(f"a = {a!r} lies in [-1, 1/3]; there is no non-real witness")
    trace = []
    for delta in DELTA_SCHEDULE:
        step = _step(a, delta)
        if step is None:
            continue
        trace.append(step)
        if step.ok:
            break
    return trace


def nonreal_witness(a: float) -> Witness:
    """A non-real z* on the equimodular locus of 1 + t + a t^2 + z t^3.

    For a < -1 the angle is pi/2 - delta; for a > 1/3 it is
    arccos(beta + delta) with beta = sqrt(a / (4a - 1)).  In both cases the
    discriminant of the zeta quadratic is negative, zeta is complex and
    z* = w / (w + 2 cos)^3 with w = 1/zeta is non-real.  The offset delta
    runs through ``DELTA_SCHEDULE`` until an independent cubic solve passes
    every predicate of ``WitnessStep``.

    Raises
    ------
    DomainError
        If a lies in [-1, 1/3].
    WitnessSearchFailure
        If no offset passes all three checks.
    """
    trace = tuple(witness_trace(a))
    if not trace or not trace[-1].ok:
        raise WitnessSearchFailure(f"no offset in the schedule gave a valid witness for a = {a!r}")
    last = trace[-1]
    return Witness(z_star=last.z, theta_star=last.theta, delta=last.delta, trace=trace)


def attraction_check(
    params: SequenceParams,
    z_star: complex,
    m_max: int = EMPIRICAL_M_CAP,
    radius: float = 0.1,
    min_imag: float = 1e-4,
) -> Attraction:
    """Smallest m <= m_max with a non-real zero of H_m within ``radius`` of z*.

    Conjugate zeros come in pairs, so either z* or its conjugate may match.
    """
    window = generate_sequence(params, m_max)
    targets = np.array([z_star, np.conj(z_star)])
    for m in range(1, m_max + 1):
        if window[m].is_zero:
            continue
        zeros = zero_report(params, m, window=window).zeros
        cand = zeros[np.abs(zeros.imag) > min_imag]
        if len(cand) == 0:
            continue
        dist = np.abs(cand[:, None] - targets[None, :]).min(axis=1)
        k = int(np.argmin(dist))
        if dist[k] <= radius:
            return Attraction(True, m, complex(cand[k]), float(dist[k]), m_max)
    return Attraction(False, None, None, None, m_max)


def first_nonreal_m(
    params: SequenceParams, m_cap: int = EMPIRICAL_M_CAP, tol_real: float = TOL_REAL
) -> Optional[tuple[int, complex]]:
    """Smallest m <= m_cap for which H_m has a non-real zero, with that zero."""
    window = generate_sequence(params, m_cap)
    for m in range(1, m_cap + 1):
        if window[m].is_zero:
            continue
        report = zero_report(params, m, window=window, tol_real=tol_real)
        bad = np.nonzero(~report.realness)[0]
        if len(bad):
            zeros = report.zeros[bad]
            return m, complex(zeros[np.argmax(zeros.imag)])
    return None


def classify(params: SequenceParams, m_cap: int = EMPIRICAL_M_CAP, empirical: bool = True) -> Classification:
    """Decide whether every H_m for ``params`` has only real zeros.

    The verdict itself is exact.  For a negative verdict a witness is
    attached; with ``empirical=True`` the sequence is also scanned for the
    first m <= m_cap with a non-real zero.  Finding none is reported with
    the ``NOT_FOUND_LABEL`` and does not change the verdict.
    """
    all_real, condition = real_rooted_region(params.b, params.c)
    if all_real:
        return Classification(params, Verdict.ALL_REAL, condition, interval=th.scaled_interval(params))
    first = first_nonreal_m(params, m_cap) if empirical else None
    m_first = None if first is None else first[0]
    if params.c == 0:
        # b < 0: no angle construction; the zeros are purely imaginary
        witness = None
        if first is not None:
            witness = Witness(z_star=first[1], theta_star=None, m_checked=m_first)
        return Classification(params, Verdict.NOT_ALL_REAL, condition, witness=witness, first_nonreal=m_first)
    w = nonreal_witness(params.a)
    witness = Witness(
        z_star=w.z_star * params.zero_scale,
        theta_star=w.theta_star,
        delta=w.delta,
        m_checked=m_first,
        trace=w.trace,
    )
    return Classification(params, Verdict.NOT_ALL_REAL, condition, witness=witness, first_nonreal=m_first)
