"""The nine acceptance criteria at their stated sizes and tolerances.

Run ``pytest tests/test_acceptance.py -s`` (or execute this file) to see one
PASS/FAIL line per criterion.  Criteria 5 and 6 are Monte Carlo runs of a few
minutes each.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from itertools import combinations

import numpy as np
import pytest
from scipy import stats

from aztec import asymptotics as asym
from aztec import distributions as dist
from aztec import verify
from aztec.model import iter_tilings
from aztec.sampler import ExactLineSampler, RngStream, sample_batch, sample_system, sample_tiling

RESULTS: dict[int, str] = {}


def report(k: int, ok: bool, detail: str, elapsed: float, budget: float) -> None:
    ok = ok and elapsed < budget
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s of {budget:.0f}s) {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def chi_square_p(observed: dict, expected: dict, total: int) -> float:
    """Pearson test with cells of expected count below 5 pooled into one."""
    obs, exp, pool_o, pool_e = [], [], 0, 0.0
    for key, p in expected.items():
        e = float(p) * total
        if e < 5:
            pool_o += observed.get(key, 0)
            pool_e += e
        else:
            obs.append(observed.get(key, 0))
            exp.append(e)
    if pool_e > 0:
        obs.append(pool_o)
        exp.append(pool_e)
    assert sum(observed.values()) == total and set(observed) <= set(expected)
    stat = sum((o - e) ** 2 / e for o, e in zip(obs, exp))
    return float(stats.chi2.sf(stat, len(obs) - 1))


def test_criterion_1_counts():
    t = time.perf_counter()
    results = [verify.counts(n) for n in range(1, 6)]
    report(1, all(r.passed for r in results), "; ".join(r.detail for r in results),
           time.perf_counter() - t, 60)


def test_criterion_2_tail_marginals():
    t = time.perf_counter()
    results = [verify.prop1(n) for n in (3, 4)]
    report(2, all(r.passed for r in results), "; ".join(r.detail for r in results),
           time.perf_counter() - t, 300)


def test_criterion_3_one_line():
    t = time.perf_counter()
    results = [verify.one_line(n, brute=n <= 4) for n in range(1, 9)]
    bad = [r.name for r in results if not r.passed]
    report(3, not bad, f"N=1..8 normalised, N<=4 brute force; failures {bad}", time.perf_counter() - t, 300)


def test_criterion_4_half_diamond():
    t = time.perf_counter()
    results = [verify.prop4(m) for m in (1, 2, 3)]
    bad = [r.line() for r in results if not r.passed]
    report(4, not bad, f"M=1..3 counts, tails and hole-line laws; failures {bad}", time.perf_counter() - t, 600)


def test_criterion_5_sampler():
    t = time.perf_counter()
    engine = ExactLineSampler()
    n_small = 80_000
    tilings = sorted(iter_tilings(2), key=lambda x: sorted(x.dominoes))
    index = {x: i for i, x in enumerate(tilings)}
    counts = Counter(index[sample_tiling(2, RngStream(505, s), engine=engine)] for s in range(n_small))
    p_small = chi_square_p(counts, {i: 1 / 8 for i in range(8)}, n_small)

    order, n_big = 8, 100_000
    line_counts = [Counter() for _ in range(order)]
    for s in range(n_big):
        system = sample_system(order, RngStream(808, s), engine=engine)
        for k, line in enumerate(system.lines):
            line_counts[k][line] += 1
    p_lines = []
    for n in range(1, order + 1):
        expected = {c: dist.one_line_pdf(n, order, c) for c in combinations(range(order, -1, -1), n)}
        p_lines.append(chi_square_p(line_counts[n - 1], expected, n_big))
    ok = p_small > 0.01 and min(p_lines) > 0.01
    report(5, ok, f"N=2 p={p_small:.3f}; N=8 min line p={min(p_lines):.3f}", time.perf_counter() - t, 600)


S_VALUES = (0.1, 0.2, 0.3, 0.4)
TOL_BOUNDARY = 0.05


def test_criterion_6_arctic():
    t = time.perf_counter()
    order, count = 200, 50
    full = asym.EmpiricalEnsemble.from_systems(sample_batch("system", order, count, 2024, mode="logfloat"))
    band = asym.empirical_support(full, eps=0.05)
    worst = 0.0
    parts = []
    for s in S_VALUES:
        lo, hi = band[round(s * order) - 1]
        a, b = asym.arctic_boundary(s)
        worst = max(worst, abs(lo - a), abs(hi - b))
        parts.append(f"s={s}: [{lo:.3f},{hi:.3f}] vs [{a:.3f},{b:.3f}]")
    half_order = 100
    holes = asym.EmpiricalEnsemble.from_half_holes(
        sample_batch("half", half_order, count, 2024, mode="logfloat"))
    hband = asym.empirical_support(holes, eps=0.05)
    for s in S_VALUES:
        m = round(s * half_order)
        a = asym.half_boundary(s)
        for index in (2 * m - 1, 2 * m):
            lo, hi = hband[index - 1]
            worst = max(worst, abs(hi - a), abs(lo))
        parts.append(f"half s={s}: top {hi:.3f} vs {a:.3f}")
    report(6, worst <= TOL_BOUNDARY, f"max deviation {worst:.4f}; " + "; ".join(parts),
           time.perf_counter() - t, 900)


def test_criterion_7_minor_limits():
    t = time.perf_counter()
    orders = (100, 400, 1600)
    full = [asym.scaling_limit_error(2, n, asym.default_grid(2)) for n in orders]
    halves = {n: [asym.half_scaling_limit_error(n, m) for m in orders] for n in (2, 3)}
    decreasing = lambda e: all(x > y for x, y in zip(e, e[1:]))
    ok = decreasing(full) and full[-1] <= 0.1
    ok &= all(decreasing(e) and e[-1] <= 0.1 for e in halves.values())
    detail = f"GUE n=2 {[round(e, 4) for e in full]}; " + "; ".join(
        f"aGUE n={n} {[round(e, 4) for e in es]}" for n, es in halves.items())
    report(7, ok, detail, time.perf_counter() - t, 300)


def test_criterion_8_appendix():
    t = time.perf_counter()
    r = verify.appendix(max_order=8, max_half=4, max_n=2)
    report(8, r.passed, r.detail or "norms N<=8, type-B n<=2 M<=4, constants reconciled",
           time.perf_counter() - t, 120)


def test_criterion_9_support_equation():
    t = time.perf_counter()
    s_values = np.linspace(0.04, 0.46, 10)
    residuals = [abs(asym.support_integral_check(asym.half_width(s), s)) for s in s_values]
    report(9, max(residuals) <= 1e-8, f"max residual {max(residuals):.2e}", time.perf_counter() - t, 60)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-s", "-q"]))
