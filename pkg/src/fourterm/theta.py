"""Angle parameterization of the zeros.

For a in [-1, 1/3] every zero of H_m (normalized family) is z(theta) for a
zero theta in (2pi/3, pi) of the real counting function g_m(theta).  The
ratio zeta(theta) solves

    (2 cos(theta) + zeta) zeta = a (1 + 2 zeta cos(theta))**2,

and has a pole at theta = arccos(-1/(2 sqrt(a))) when 1/4 < a <= 1/3.  All
formulas below are evaluated through w = 1/zeta, which stays bounded and
continuous through the pole, so no branch switching is needed.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import AsymptoteHit, DomainError, NegativeDiscriminant
from .recurrence import SequenceParams

__all__ = [
    "THETA_LO",
    "THETA_HI",
    "THETA_GUARD",
    "ThetaPoint",
    "Orientation",
    "IntervalSpec",
    "inv_zeta",
    "zeta",
    "zeta_minus",
    "quadratic_residual",
    "z_of_theta",
    "z_of_theta_direct",
    "g_m",
    "g_m_at_grid",
    "g_m_limit_at_pi",
    "zeta_limit_at_pi",
    "cubic_roots_at",
    "theta_point",
    "interval_endpoint",
    "scaled_interval",
    "asymptote_theta",
    "czero_zeta",
    "czero_z",
    "czero_g_m",
    "czero_theta_functions",
    "czero_cubic_roots_at",
]

THETA_LO = 2 * math.pi / 3
THETA_HI = math.pi
THETA_GUARD = 1e-12

A_MIN = -1.0
A_MAX = 1.0 / 3.0

# |1 - 4 a cos^2| below this is treated as sitting on the pole
_POLE_TOL = 1e-15


def _check_a(a: float):
    if not (A_MIN <= a <= A_MAX):
        raise DomainError(f"a = {a!r} outside [-1, 1/3]")


def _check_theta(theta: float, lo: float = THETA_LO, hi: float = THETA_HI):
    if not (lo + THETA_GUARD < theta < hi - THETA_GUARD):
        raise DomainError(f"theta = {theta!r} outside ({lo!r}, {hi!r})")


def _inv_zeta_cos(a, cos_t, sqrt=math.sqrt):
    """1/zeta_+ as a function of cos(theta); complex-capable via ``sqrt``."""
    pole = 1 - 4 * a * cos_t * cos_t
    disc = (1 - 4 * a) * cos_t * cos_t + a
    root = sqrt(disc)
    den = (2 * a - 1) * cos_t + root
    if a != 0 and abs(den) < 1e-8 * (abs((2 * a - 1) * cos_t) + abs(root)):
        # rationalized form, avoids cancellation in den
        return (root - (2 * a - 1) * cos_t) / a
    return pole / den


def inv_zeta(a: float, theta: float) -> float:
    """1/zeta(theta); real, continuous and nonzero except at the pole."""
    _check_a(a)
    _check_theta(theta)
    cos_t = math.cos(theta)
    disc = (1 - 4 * a) * cos_t * cos_t + a
    if disc < 0:
        raise NegativeDiscriminant(f"discriminant {disc!r} < 0 at a={a!r}, theta={theta!r}")
    return _inv_zeta_cos(a, cos_t)


def zeta(a: float, theta: float) -> float:
    """The + root of the zeta quadratic; +-inf exactly on the pole."""
    w = inv_zeta(a, theta)
    if w == 0:
        return math.inf
    return 1.0 / w


def zeta_minus(a: float, theta: float) -> float:
    """The other root of the zeta quadratic (the one inside the unit disk)."""
    _check_a(a)
    _check_theta(theta)
    cos_t = math.cos(theta)
    disc = (1 - 4 * a) * cos_t * cos_t + a
    if disc < 0:
        raise NegativeDiscriminant(f"discriminant {disc!r} < 0 at a={a!r}, theta={theta!r}")
    # Vieta: zeta_+ zeta_- = -a / (1 - 4a cos^2), no cancellation for cos < 0
    return -a / ((2 * a - 1) * cos_t + math.sqrt(disc))


def quadratic_residual(a: float, theta: float) -> float:
    """|(2cos + zeta) zeta - a (1 + 2 zeta cos)^2| / zeta^2, written in 1/zeta."""
    w = inv_zeta(a, theta)
    cos_t = math.cos(theta)
    return abs(1 + 2 * cos_t * w - a * (w + 2 * cos_t) ** 2)


def z_of_theta(a: float, theta: float) -> float:
    """z(theta) = zeta^2 / (1 + 2 zeta cos)^3, evaluated as w / (w + 2 cos)^3.

    Increasing on (2pi/3, pi), from -inf to the endpoint of I_a.  Also valid
    at a = 0, where the quadratic degenerates to zeta = -2 cos(theta).
    """
    w = inv_zeta(a, theta)
    return w / (w + 2 * math.cos(theta)) ** 3


def z_of_theta_direct(a: float, theta: float) -> float:
    """z(theta) = a zeta / ((2 cos + zeta)(1 + 2 zeta cos)).

    The original quotient; vanishes identically at a = 0 and overflows on the
    pole, so it serves only as a cross-check away from those points.
    """
    zt = zeta(a, theta)
    cos_t = math.cos(theta)
    return a * zt / ((2 * cos_t + zt) * (1 + 2 * zt * cos_t))


def g_m(a: float, theta: float, m: int) -> float:
    """Counting function whose zeros in theta give the zeros of H_m.

    g_m = (zeta - cos) sin((m+1) theta) / sin(theta) - cos((m+1) theta) + zeta^-(m+1)
    """
    if m < 0:
        raise DomainError("m must be non-negative")
    w = inv_zeta(a, theta)
    cos_t = math.cos(theta)
    if abs(1 - 4 * a * cos_t * cos_t) < _POLE_TOL or w == 0:
        raise AsymptoteHit(f"theta = {theta!r} is on the pole of zeta for a = {a!r}")
    k = m + 1
    return (1 / w - cos_t) * math.sin(k * theta) / math.sin(theta) - math.cos(k * theta) + w**k


def g_m_at_grid(a: float, m: int, h: int) -> float:
    """g_m at theta_h = h pi/(m+1), where the sine term vanishes identically.

    Returns (-1)^(h+1) + zeta^-(m+1); the sign is (-1)^(h-1) because |zeta| > 1.
    """
    theta = h * math.pi / (m + 1)
    w = inv_zeta(a, theta)
    return (-1.0) ** (h + 1) + w ** (m + 1)


def zeta_limit_at_pi(a: float) -> float:
    """lim zeta(theta) as theta -> pi^-, namely (1 - 2a + sqrt(1-3a)) / (1 - 4a)."""
    _check_a(a)
    if a == 0.25:
        return math.inf
    return (1 - 2 * a + math.sqrt(1 - 3 * a)) / (1 - 4 * a)


def g_m_limit_at_pi(a: float, m: int) -> float:
    """lim g_m(theta) as theta -> pi^-; its sign is (-1)^m for a < 1/4."""
    zt = zeta_limit_at_pi(a)
    sign = (-1.0) ** m
    return sign * ((zt + 1) * (m + 1) + 1) + zt ** -(m + 1)


def _cubic_roots_from_w(w, theta: float):
    e1 = cmath.exp(1j * theta)
    t0 = -(w / e1 + 1 / (e1 * e1) + 1)
    t1 = t0 * e1 * e1
    if w == 0:
        raise AsymptoteHit("t2 is infinite on the pole of zeta")
    t2 = t0 * e1 / w
    return t0, t1, t2


def cubic_roots_at(a: float, theta: float, allow_complex: bool = False):
    """Roots of 1 + t + a t^2 + z(theta) t^3 from the zeta factorization.

    t0 = -(e^{2i th} + zeta e^{i th} + zeta e^{3i th}) / (zeta e^{3i th}),
    t1 = t0 e^{2i th}, t2 = t0 zeta e^{i th}.

    Any real ``a`` and theta in (0, pi) are accepted.  Where the zeta
    discriminant is negative zeta is complex; that case needs
    ``allow_complex=True`` and returns z complex as well.

    Returns
    -------
    (t0, t1, t2), z
    """
    if not (0 < theta < math.pi):
        raise DomainError(f"theta = {theta!r} outside (0, pi)")
    cos_t = math.cos(theta)
    disc = (1 - 4 * a) * cos_t * cos_t + a
    if disc < 0 and not allow_complex:
        raise NegativeDiscriminant(f"zeta is not real at a={a!r}, theta={theta!r}")
    if disc < 0:
        w = _inv_zeta_cos(a, cos_t, sqrt=cmath.sqrt)
    else:
        w = _inv_zeta_cos(a, cos_t)
    z = w / (w + 2 * cos_t) ** 3
    t0, t1, t2 = _cubic_roots_from_w(w, theta)
    if disc >= 0:
        t2 = complex(_polish_real_root(a, z, t2.real))
    return (t0, t1, t2), z


def _polish_real_root(a: float, z: float, t: float) -> float:
    """One Newton step on the real root of 1 + t + a t^2 + z t^3 for the rounded z.

    The factorization gives the roots for the exact z(theta).  Near the pole
    of zeta the real root is large and the rounding of z alone moves it by
    several ulps.  The cubic is evaluated exactly in rationals, so only the
    final correction is rounded; the step is kept only if it lowers the
    residual.  The conjugate pair is left alone: near theta = pi it merges
    into a double root, where a Newton step is not reliable.
    """
    fa, fz = Fraction(a), Fraction(z)

    def residual(x):
        return 1 + x * (1 + x * (fa + x * fz))

    ft = Fraction(t)
    p = residual(ft)
    dp = 1 + ft * (2 * fa + 3 * ft * fz)
    if p == 0 or dp == 0:
        return t
    new = float(ft - p / dp)
    return new if abs(residual(Fraction(new))) < abs(p) else t


@dataclass(frozen=True)
class ThetaPoint:
    """An angle with its zeta, z and cubic roots cached."""

    theta: float
    a: float
    zeta: float
    inv_zeta: float
    z: float
    roots: tuple


def theta_point(a: float, theta: float) -> ThetaPoint:
    w = inv_zeta(a, theta)
    roots, z = cubic_roots_at(a, theta)
    return ThetaPoint(
        theta=theta,
        a=a,
        zeta=math.inf if w == 0 else 1 / w,
        inv_zeta=w,
        z=z,
        roots=roots,
    )


def interval_endpoint(a: float) -> float:
    """Right end of I_a = (-inf, (-2 + 9a - 2 sqrt((1-3a)^3)) / 27]."""
    _check_a(a)
    return (-2 + 9 * a - 2 * math.sqrt((1 - 3 * a) ** 3)) / 27


class Orientation(enum.Enum):
    LEFT_RAY = "left_ray"
    RIGHT_RAY = "right_ray"
    WHOLE_LINE = "whole_line"
    POINT = "point"


@dataclass(frozen=True)
class IntervalSpec:
    """Closed real set holding every zero of an all-real sequence.

    ``right_endpoint`` is the finite end of the ray: (-inf, e] for a left ray
    and [e, inf) for a right ray.
    """

    right_endpoint: float
    scale: float
    orientation: Orientation

    def contains(self, x: float, tol: float = 0.0) -> bool:
        slack = tol * max(1.0, abs(self.scale))
        if self.orientation is Orientation.LEFT_RAY:
            return x <= self.right_endpoint + slack
        if self.orientation is Orientation.RIGHT_RAY:
            return x >= self.right_endpoint - slack
        if self.orientation is Orientation.POINT:
            return abs(x - self.right_endpoint) <= slack
        return True

    @property
    def bounds(self) -> tuple[float, float]:
        if self.orientation is Orientation.LEFT_RAY:
            return (-math.inf, self.right_endpoint)
        if self.orientation is Orientation.RIGHT_RAY:
            return (self.right_endpoint, math.inf)
        if self.orientation is Orientation.POINT:
            return (self.right_endpoint, self.right_endpoint)
        return (-math.inf, math.inf)


def scaled_interval(params: SequenceParams) -> IntervalSpec:
    """The zero interval for raw (b, c), i.e. c^3 * I_a, or the whole line for c = 0."""
    if params.c == 0:
        if params.b > 0:
            return IntervalSpec(0.0, params.zero_scale, Orientation.WHOLE_LINE)
        if params.b == 0:
            return IntervalSpec(0.0, 1.0, Orientation.POINT)
        raise DomainError("c = 0 with b < 0 has non-real zeros")
    scale = params.zero_scale
    end = scale * interval_endpoint(params.a)
    orientation = Orientation.LEFT_RAY if scale > 0 else Orientation.RIGHT_RAY
    return IntervalSpec(end, scale, orientation)


def asymptote_theta(a: float) -> Optional[float]:
    """Pole of zeta, arccos(-1/(2 sqrt(a))), present only for 1/4 < a <= 1/3."""
    _check_a(a)
    if a <= 0.25:
        return None
    return math.acos(-1 / (2 * math.sqrt(a)))


# c = 0 family: 1 / (1 + t^2 + z t^3), theta in (pi/3, pi/2)

CZERO_LO = math.pi / 3
CZERO_HI = math.pi / 2


def czero_zeta(theta: float) -> float:
    return -1 / (2 * math.cos(theta))


def czero_z(theta: float) -> float:
    """2 cos / (1 - 4 cos^2)^(3/2); decreasing from +inf to 0 on (pi/3, pi/2)."""
    cos_t = math.cos(theta)
    return 2 * cos_t / math.sqrt((1 - 4 * cos_t * cos_t) ** 3)


def czero_g_m(theta: float, m: int) -> float:
    """The c = 0 counting function.

    Continuous on [pi/3, pi/2), so it may be evaluated at pi/3 itself.
    """
    cos_t = math.cos(theta)
    k = m + 1
    return (
        -math.sin(k * theta) / (2 * cos_t * math.sin(theta)) * (2 + math.cos(2 * theta))
        - math.cos(k * theta)
        + (-2 * cos_t) ** k
    )


def czero_theta_functions(theta: float, m: int) -> tuple[float, float, float]:
    """(zeta, g_m, z) of the c = 0 family at theta in (pi/3, pi/2)."""
    _check_theta(theta, CZERO_LO, CZERO_HI)
    if m < 0:
        raise DomainError("m must be non-negative")
    return czero_zeta(theta), czero_g_m(theta, m), czero_z(theta)


def czero_cubic_roots_at(theta: float):
    """Roots of 1 + t^2 + z(theta) t^3 for the c = 0 family.

    t0 = -e^{-i th} / (z (2 cos + zeta)), t1 = t0 e^{2i th}, t2 = t0 zeta e^{i th}.
    """
    _check_theta(theta, CZERO_LO, CZERO_HI)
    zt = czero_zeta(theta)
    z = czero_z(theta)
    e1 = cmath.exp(1j * theta)
    t0 = -1 / (e1 * z * (2 * math.cos(theta) + zt))
    return (t0, t0 * e1 * e1, t0 * zt * e1), z
