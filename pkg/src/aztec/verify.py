"""Oracle-versus-formula checks shared by ``aztec verify`` and the test suite.

Each check compares an exact closed form with an independent brute-force
computation and reports exact (in)equality; nothing here is approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Callable

from . import distributions as dist
from . import half, krawtchouk, model
from .combinatorics import factorial, vandermonde


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def counts(order: int) -> CheckResult:
    """Closed form against exact-cover streaming, transfer counting and summed weights."""
    closed = dist.count_tilings(order)
    streamed = sum(1 for _ in model.iter_tilings(order))
    direct = model.count_tilings_direct(order)
    weights = sum(dist.weight_table(order).values())
    ok = closed == streamed == direct == weights
    return CheckResult(f"counts N={order}", ok, f"{closed} {streamed} {direct} {weights}")


def prop1(order: int) -> CheckResult:
    """Tail marginals of lines m..N for every m and every configuration."""
    bad = 0
    checked = 0
    for m in range(1, order + 1):
        for tail, p in dist.brute_tail_marginals(order, m).items():
            checked += 1
            bad += dist.tail_marginal_pdf(tail, order) != p
    return CheckResult(f"prop1 N={order}", bad == 0, f"{checked} configurations, {bad} mismatches")


def one_line(order: int, brute: bool = True) -> CheckResult:
    """Each single-line law sums to one, and equals the brute marginal when asked."""
    bad = []
    for n in range(1, order + 1):
        total = sum((dist.one_line_pdf(n, order, c) for c in combinations(range(order, -1, -1), n)),
                    Fraction(0))
        if total != 1:
            bad.append(f"n={n} sums to {total}")
        if brute:
            for line, p in dist.brute_one_line(order, n).items():
                if dist.one_line_pdf(n, order, line) != p:
                    bad.append(f"n={n} {line}")
    return CheckResult(f"one-line N={order}", not bad, "; ".join(bad[:5]))


def complement_identities(order: int) -> CheckResult:
    """Involution, the Vandermonde swap, and the hole-line joint law."""
    bad = []
    n_big = order
    fact_prod = prod(factorial(i) for i in range(1, n_big + 1))
    for lines in dist.weight_table(order):
        system = model.ParticleSystem(order, lines)
        holes = model.complement(system)
        if model.complement(holes) != system:
            bad.append(f"involution {lines}")
        for n in range(1, order + 1):
            x, y = lines[n - 1], holes.lines[order - n]
            lhs = vandermonde(x) * prod(factorial(v) * factorial(n_big - v) for v in y)
            if lhs != vandermonde(y) * fact_prod:
                bad.append(f"swap {lines} n={n}")
    for n in range(1, order + 1):
        acc: dict = {}
        total = dist.count_tilings(order)
        for lines, w in dist.weight_table(order).items():
            key = model.complement_lines(lines, 0, order)[:n]
            acc[key] = acc.get(key, 0) + w
        for key, w in acc.items():
            if dist.y_joint_pdf(key, order) != Fraction(w, total):
                bad.append(f"y-joint n={n} {key}")
    return CheckResult(f"complement N={order}", not bad, "; ".join(bad[:5]))


def prop4(order: int) -> CheckResult:
    """Half diamond: count, tail marginals of every start and every hole-line law."""
    bad = []
    if half.brute_count_half(order) != half.count_half(order):
        bad.append("count")
    for start in range(1, 2 * order + 1):
        for tail, p in half.brute_half_tails(order, start).items():
            if half.half_tail_pdf(tail, order) != p:
                bad.append(f"tail {tail}")
        for line, p in half.brute_half_hole_line(order, start).items():
            if half.half_one_line_pdf(start, order, line) != p:
                bad.append(f"hole line {start} {line}")
    return CheckResult(f"prop4 M={order}", not bad, "; ".join(bad[:5]))


def half_y(order: int) -> CheckResult:
    """Joint law of hole lines ``1..j`` against summed weights."""
    bad = []
    total = half.count_half(order)
    for j in range(1, 2 * order + 1):
        acc: dict = {}
        for lines, w in half.half_weight_table(order).items():
            key = half.hole_lines(lines, order)[:j]
            acc[key] = acc.get(key, 0) + w
        for key, w in acc.items():
            if half.half_y_pdf(key, order) != Fraction(w, total):
                bad.append(f"j={j} {key}")
    return CheckResult(f"half-y M={order}", not bad, "; ".join(bad[:5]))


def appendix(max_order: int = 8, max_half: int = 4, max_n: int = 2) -> CheckResult:
    """Krawtchouk norms, type-B multi-sums, and the hole-line constants as reciprocals."""
    bad = []
    for order in range(1, max_order + 1):
        if not krawtchouk.krawtchouk_norm_check(order, order):
            bad.append(f"norms N={order}")
    for m in range(1, max_half + 1):
        for n in range(1, max_n + 1):
            if n <= m + 1 and not krawtchouk.typeB_sum_identities(m, n):
                bad.append(f"type-B M={m} n={n}")
        for index in range(1, 2 * m + 1):
            if half.half_one_line_constant(index, m) * krawtchouk.typeB_constant(m, index) != 1:
                bad.append(f"constant M={m} index={index}")
    return CheckResult("appendix", not bad, "; ".join(bad[:5]))


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "counts": counts,
    "prop1": prop1,
    "one-line": one_line,
    "complement": complement_identities,
    "prop4": prop4,
    "half-y": half_y,
    "appendix": appendix,
}


def run_all(order: int = 4, half_order: int = 3) -> list[CheckResult]:
    return [counts(order), prop1(order), one_line(order), complement_identities(order),
            prop4(half_order), half_y(half_order), appendix()]
