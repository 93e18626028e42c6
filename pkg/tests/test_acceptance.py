"""Acceptance suite: nine criteria at their stated tolerances.

Each test records a one-line PASS/FAIL verdict; the lines are printed in
the terminal summary (see ``conftest.pytest_terminal_summary``).
"""

import functools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import cubic_roots
from fourterm import SequenceParams, generate_sequence
from fourterm import theta as th
from fourterm.analysis import (
    count_czero_g_zeros,
    count_g_zeros,
    czero_expected_count,
    density_sample,
    match_zeros,
    zero_report,
)
from fourterm.cli import main as cli_main
from fourterm.witness import NOT_FOUND_LABEL, attraction_check, nonreal_witness

#: One line per criterion, filled in as the tests run.
RESULTS: dict = {}

SWEEP_A = [-1 + 1e-9, -0.75, -0.5, -0.25, -0.1, 0.1, 0.2, 0.25 - 1e-9, 0.25 + 1e-9, 0.3, 1 / 3 - 1e-9]
SWEEP_M = 60
WITNESS_A = [-3.0, -1.5, 0.4, 0.6, 1.0, 2.0]
#: Max gap of the pooled zeros at a = 0, M = 60 on [-2, -4/27]; frozen from
#: the first run (0.102261...), rounded up in the fourth decimal.
DENSITY_GAP_THRESHOLD = 0.1023


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                RESULTS[number] = f"criterion {number} FAIL  {title}: {type(exc).__name__}: {str(exc)[:200]}"
                raise
            RESULTS[number] = f"criterion {number} PASS  {title}" + (f" ({detail})" if detail else "")

        return run

    return wrap


@pytest.fixture(scope="module")
def sweep():
    start = time.perf_counter()
    zeros, counts = {}, {}
    for a in SWEEP_A:
        params = SequenceParams.normalized(a)
        window = generate_sequence(params, SWEEP_M)
        for m in range(SWEEP_M + 1):
            zeros[a, m] = zero_report(params, m, window=window)
    elapsed_zeros = time.perf_counter() - start
    for a in SWEEP_A:
        for m in range(SWEEP_M + 1):
            counts[a, m] = count_g_zeros(a, m)
    return zeros, counts, elapsed_zeros


@criterion(1, "hyperbolicity sweep")
def test_criterion_1_hyperbolicity_sweep(sweep):
    zeros, _, elapsed = sweep
    worst_im, worst_re = 0.0, -math.inf
    for (a, m), rep in zeros.items():
        z = rep.zeros
        assert len(z) == m // 3, (a, m)
        im = np.abs(z.imag) / (1 + np.abs(z.real))
        over = z.real - th.interval_endpoint(a)
        assert np.all(im <= 1e-7), (a, m, im.max())
        assert np.all(over <= 1e-7), (a, m, over.max())
        if len(z):
            worst_im, worst_re = max(worst_im, im.max()), max(worst_re, over.max())
    assert elapsed < 60
    return f"max rel |Im| {worst_im:.1e}, max Re - endpoint {worst_re:.1e}, {elapsed:.1f}s"


@criterion(2, "zero-count identity and bijection")
def test_criterion_2_count_identity(sweep):
    zeros, counts, _ = sweep
    worst = 0.0
    for (a, m), gset in counts.items():
        assert len(gset) == m // 3, (a, m, len(gset))
        matched = match_zeros(zeros[a, m], gset, tol=1e-6)
        assert all(r <= 1e-6 for _, r in matched.theta_matches)
        worst = max(worst, matched.max_match_residual)
    return f"max pair residual {worst:.1e}"


@criterion(3, "endpoint values")
def test_criterion_3_endpoints():
    for a, want in [(1 / 3, 1 / 27), (0.0, -4 / 27), (-1.0, -1.0)]:
        assert abs(th.interval_endpoint(a) - want) <= 1e-15, a


def exact_cubic_residual(a, z, t):
    """|1 + t + a t^2 + z t^3| evaluated exactly at the float inputs."""
    a, z = Fraction(a), Fraction(z)
    re, im = Fraction(t.real), Fraction(t.imag)
    # powers of t = re + i im as (real, imag) pairs
    t2 = (re * re - im * im, 2 * re * im)
    t3 = (t2[0] * re - t2[1] * im, t2[0] * im + t2[1] * re)
    p_re = 1 + re + a * t2[0] + z * t3[0]
    p_im = im + a * t2[1] + z * t3[1]
    return math.sqrt(p_re * p_re + p_im * p_im)


@criterion(4, "cubic factorization on 10^4 samples")
def test_criterion_4_cubic_factorization():
    rng = np.random.default_rng(20240601)
    worst, worst_conj, n = 0.0, 0.0, 0
    while n < 10_000:
        a = rng.uniform(-1.0, 1 / 3)
        t = rng.uniform(th.THETA_LO, th.THETA_HI)
        if not th.THETA_LO < t < th.THETA_HI:
            continue
        (t0, t1, t2), z = th.cubic_roots_at(a, t)
        for r in (t0, t1, t2):
            worst = max(worst, exact_cubic_residual(a, z, r))
        worst_conj = max(worst_conj, abs(t0 - t1.conjugate()) / abs(t0))
        n += 1
    assert worst <= 1e-10
    assert worst_conj <= 1e-10
    return f"max residual {worst:.1e}, conjugate gap {worst_conj:.1e}"


@criterion(5, "c = 0 case table")
def test_criterion_5_czero_table():
    params = SequenceParams(1, 0)
    window = generate_sequence(params, 60)
    for m in range(61):
        rep = zero_report(params, m, window=window)
        assert np.all(rep.realness), m
        if m == 1:
            assert window[1].is_zero
            continue
        gset = count_czero_g_zeros(m)
        assert len(gset) == czero_expected_count(m), m
        want = 2 * czero_expected_count(m) + (m % 2)
        assert int(rep.realness.sum()) == want, (m, int(rep.realness.sum()), want)
        if m % 2:
            assert np.min(np.abs(rep.zeros)) <= 1e-12, m


@criterion(6, "non-real witnesses")
def test_criterion_6_witnesses():
    confirmed, labels = 0, []
    for a in WITNESS_A:
        w = nonreal_witness(a)
        z = w.z_star
        roots = cubic_roots(z, a)
        mods = np.sort(np.abs(roots))
        gaps = [abs(roots[i] - roots[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
        assert abs(z.imag) > 1e-8, a
        assert min(gaps) > 1e-8 * (1 + mods[-1]), a
        assert mods[1] - mods[0] <= 1e-10, a
        att = attraction_check(SequenceParams.normalized(a), z, m_max=60, radius=0.1, min_imag=1e-4)
        if att.found:
            confirmed += 1
        else:
            assert att.label == NOT_FOUND_LABEL
        labels.append(f"a={a:g}: {att.label}")
    detail = "; ".join(labels)
    assert confirmed >= 4, detail
    return f"{confirmed}/6 attracted; {detail}"


@criterion(7, "scaling covariance")
def test_criterion_7_scaling():
    worst = 0.0
    for b, c in [(1, 2), (-1, 1), (0.3, -1.5)]:
        raw = SequenceParams(b, c)
        norm = SequenceParams.normalized(b / c**2)
        wr, wn = generate_sequence(raw, 30), generate_sequence(norm, 30)
        for m in range(31):
            zr = np.sort_complex(zero_report(raw, m, window=wr).zeros)
            zn = np.sort_complex(c**3 * zero_report(norm, m, window=wn).zeros)
            assert len(zr) == len(zn), (b, c, m)
            if len(zr):
                rel = np.abs(zr - zn) / np.abs(zn)
                assert np.all(rel <= 1e-8), (b, c, m, rel.max())
                worst = max(worst, rel.max())
    return f"max relative difference {worst:.1e}"


@criterion(8, "density trend at a = 0")
def test_criterion_8_density():
    params = SequenceParams.normalized(0.0)
    seq = generate_sequence(params, 60)
    gaps = [density_sample(params, m, (-2.0, -4 / 27), sequence=seq).max_gap for m in (20, 40, 60)]
    assert gaps[0] >= gaps[1] >= gaps[2], gaps
    assert gaps[2] < DENSITY_GAP_THRESHOLD, gaps
    return "max gaps " + ", ".join(f"{g:.5f}" for g in gaps) + f" (threshold {DENSITY_GAP_THRESHOLD})"


@criterion(9, "classifier truth table on 41x41 grid")
def test_criterion_9_truth_table(capsys):
    import json

    code = cli_main(["scan", "--b-range", "-2:2", "--c-range", "-2:2", "--grid", "41"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    cells = doc["data"]["cells"]
    grid = [Fraction(-2) + Fraction(k, 10) for k in range(41)]
    assert len(cells) == 41 * 41
    assert {(Fraction(x["b_exact"]), Fraction(x["c_exact"])) for x in cells} == {(b, c) for b in grid for c in grid}
    mismatches = 0
    for cell in cells:
        b, c = Fraction(cell["b_exact"]), Fraction(cell["c_exact"])
        if c == 0:
            want = b >= 0
        else:
            want = -c * c <= b <= c * c / 3
        mismatches += (cell["verdict"] == "AllReal") != want
    assert mismatches == 0
    return f"{doc['data']['counts']['AllReal']} AllReal cells, 0 mismatches"
