"""Closed-form exact distributions of the full Aztec diamond particle system,
with brute-force twins obtained by summing the joint weights."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import prod
from typing import Iterator, Sequence

from .combinatorics import (Chain, Line, chain_adjacency, config_weight, factorial,
                            interlacing_lowers, is_valid_chain, superfactorial, vandermonde)


def count_tilings(order: int) -> int:
    """Number of domino tilings of the order-N Aztec diamond, ``2^{N(N+1)/2}``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return 2 ** (order * (order + 1) // 2)


@dataclass(frozen=True)
class TailMarginal:
    order: int
    start: int

    @property
    def normalization(self) -> Fraction:
        """``D_{m,N} = A_N 2^{-N(N-1)/2} prod_{i<m} i!``"""
        n = self.order
        return Fraction(count_tilings(n), 2 ** (n * (n - 1) // 2)) * superfactorial(self.start - 1)

    def pdf(self, lines: Sequence[Line]) -> Fraction:
        return tail_marginal_pdf(lines, self.order)


def _tail_ok(lines: Sequence[Line], order: int) -> bool:
    start = order + 1 - len(lines)
    if start < 1 or any(len(l) != start + k for k, l in enumerate(lines)):
        return False
    return is_valid_chain(lines, order)


def joint_pdf(lines: Sequence[Line], order: int | None = None) -> Fraction:
    """Probability of a complete particle system (lines 1..N); invalid gives 0."""
    order = len(lines) if order is None else order
    lines = tuple(tuple(l) for l in lines)
    if len(lines) != order or not _tail_ok(lines, order):
        return Fraction(0)
    return Fraction(config_weight(lines, order), count_tilings(order))


def tail_marginal_pdf(lines: Sequence[Line], order: int) -> Fraction:
    """Joint probability of lines ``m..N`` (``m = N + 1 - len(lines)``)."""
    lines = tuple(tuple(l) for l in lines)
    if not lines or not _tail_ok(lines, order):
        return Fraction(0)
    d = TailMarginal(order, order + 1 - len(lines)).normalization
    return Fraction(vandermonde(lines[0])) / (d * 2 ** chain_adjacency(lines))


def virtual_line_probability(order: int) -> Fraction:
    """Probability of the forced virtual top line ``(N, ..., 0)``; equals 1."""
    line = tuple(range(order, -1, -1))
    return Fraction(2 ** (order * (order + 1) // 2) * vandermonde(line),
                    count_tilings(order) * superfactorial(order))


def y_joint_pdf(hole_lines: Sequence[Line], order: int) -> Fraction:
    """Joint probability of hole lines ``1..n`` in the right-to-left labelling."""
    lines = tuple(tuple(l) for l in hole_lines)
    n, big = len(lines), order
    if not lines or n > big or any(len(l) != k for k, l in enumerate(lines, start=1)):
        return Fraction(0)
    if not is_valid_chain(lines, big):
        return Fraction(0)
    top = lines[-1]
    num = prod(factorial(big - i) for i in range(n)) * vandermonde(top)
    den = prod(factorial(y) * factorial(big - y) for y in top)
    den *= 2 ** (big + (big - n) * (n - 1) + chain_adjacency(lines))
    return Fraction(num, den)


def one_line_pdf(n: int, order: int, positions: Sequence[int]) -> Fraction:
    """Law of line ``n`` alone: a Krawtchouk (p = 1/2) orthogonal polynomial ensemble."""
    line = tuple(positions)
    if not 1 <= n <= order or len(line) != n or not is_valid_chain([line], order):
        return Fraction(0)
    num = vandermonde(line) ** 2 * one_line_constant(n, order)
    den = prod(factorial(x) * factorial(order - x) for x in line)
    return num / den


@lru_cache(maxsize=None)
def one_line_constant(n: int, order: int) -> Fraction:
    return Fraction(prod(factorial(order - i) for i in range(n)),
                    2 ** (order + (order - n) * (n - 1)) * prod(factorial(i) for i in range(n)))


# -- brute force ----------------------------------------------------------

def iter_systems(order: int) -> Iterator[Chain]:
    """Every valid chain of lines 1..N (line k with k particles in 0..N)."""
    def down(upper: Line, rest: tuple) -> Iterator[Chain]:
        chain = (upper,) + rest
        if len(upper) == 1:
            yield chain
            return
        for lower in interlacing_lowers(upper, len(upper) - 1):
            yield from down(lower, chain)

    for top in combinations(range(order, -1, -1), order):
        yield from down(top, ())


@lru_cache(maxsize=8)
def weight_table(order: int) -> dict[Chain, int]:
    return {s: config_weight(s, order) for s in iter_systems(order)}


def brute_tail_marginals(order: int, start: int) -> dict[Chain, Fraction]:
    """Marginal of lines ``start..N`` by summing the joint weights."""
    total = count_tilings(order)
    acc: dict[Chain, int] = defaultdict(int)
    for system, w in weight_table(order).items():
        acc[system[start - 1:]] += w
    return {k: Fraction(v, total) for k, v in acc.items()}


def brute_one_line(order: int, n: int) -> dict[Line, Fraction]:
    total = count_tilings(order)
    acc: dict[Line, int] = defaultdict(int)
    for system, w in weight_table(order).items():
        acc[system[n - 1]] += w
    return {k: Fraction(v, total) for k, v in acc.items()}


def count_check(order: int) -> bool:
    """Closed form versus direct transfer counting and the summed particle weights."""
    from .model import count_tilings_direct

    a = count_tilings(order)
    return a == count_tilings_direct(order) == sum(weight_table(order).values())
