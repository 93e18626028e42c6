"""Shared oracles.

These are deliberately independent of the package: exact rational
arithmetic for the recurrence and numpy's companion solver for cubics.
"""

from fractions import Fraction

import numpy as np
import pytest


def exact_sequence(b, c, m_max):
    """H_0..H_{m_max} as ascending Fraction coefficient lists, trailing zeros removed."""
    b, c = Fraction(b), Fraction(c)
    seq = [[Fraction(1)], [-c], [c * c - b]]
    for m in range(3, m_max + 1):
        out = [Fraction(0)] * (m // 3 + 2)
        for k, x in enumerate(seq[m - 1]):
            out[k] -= c * x
        for k, x in enumerate(seq[m - 2]):
            out[k] -= b * x
        for k, x in enumerate(seq[m - 3]):
            out[k + 1] -= x
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        seq.append(out)
    return [s if any(s) else [Fraction(0)] for s in seq[: m_max + 1]]


def series_coefficients(b, c, m_max):
    """Taylor coefficients of 1/(1 + c t + b t^2 + z t^3) by long division.

    Coefficients are polynomials in z (ascending Fraction lists).  The
    division works term by term on the power series rather than unrolling
    the recurrence.
    """
    b, c = Fraction(b), Fraction(c)
    denom = {0: [Fraction(1)], 1: [c], 2: [b], 3: [Fraction(0), Fraction(1)]}
    out = []
    for m in range(m_max + 1):
        acc = [Fraction(1)] if m == 0 else [Fraction(0)]
        for j in range(1, 4):
            if m - j < 0:
                continue
            prod = [Fraction(0)] * (len(denom[j]) + len(out[m - j]) - 1)
            for i, x in enumerate(denom[j]):
                for k, y in enumerate(out[m - j]):
                    prod[i + k] += x * y
            acc = [
                (acc[i] if i < len(acc) else 0) - (prod[i] if i < len(prod) else 0)
                for i in range(max(len(acc), len(prod)))
            ]
        while len(acc) > 1 and acc[-1] == 0:
            acc.pop()
        out.append(acc)
    return out


def cubic_roots(z, a):
    """Roots of 1 + t + a t^2 + z t^3 from numpy's companion solver."""
    return np.roots([z, a, 1.0, 1.0])


@pytest.fixture
def exact():
    return exact_sequence


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])
