"""The half Aztec diamond of order M as a 2M-line particle system.

Lines ``2n-1`` and ``2n`` hold ``n`` particles each, on the lattice
``1..M+1``.  Between ``2m-1`` and ``2m`` (equal sizes) the bottom particle of
the lower line is bounded below by the lattice minimum 1, and touching that
bound is not an adjacency.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import prod
from typing import Iterator, Sequence

from .combinatorics import (Chain, Line, chain_adjacency, config_weight, factorial,
                            interlacing_lowers, is_valid_chain, normalize_line, sprod,
                            vandermonde)
from .model import complement_lines

HALF = Fraction(1, 2)


def line_size(index: int) -> int:
    """Particles on half-diamond line ``index`` (1-based)."""
    return (index + 1) // 2


@dataclass(frozen=True)
class HalfParticleSystem:
    order: int
    lines: Chain

    def __post_init__(self) -> None:
        lines = tuple(normalize_line(l) for l in self.lines)
        object.__setattr__(self, "lines", lines)
        if not _half_ok(lines, self.order, 1):
            raise ValueError(f"not a half-diamond particle system of order {self.order}: {lines}")

    @property
    def adjacency(self) -> int:
        return chain_adjacency(self.lines)

    def to_json(self) -> dict:
        return {"order": self.order, "lines": [list(l) for l in self.lines]}


def _half_ok(lines: Sequence[Line], order: int, start: int) -> bool:
    if start + len(lines) - 1 != 2 * order:
        return False
    if any(len(l) != line_size(start + k) for k, l in enumerate(lines)):
        return False
    return is_valid_chain(lines, order + 1, strict_lower=True)


def count_half(order: int) -> int:
    """``H_M = 2^{M(M+1)}``"""
    if order < 1:
        raise ValueError("order must be >= 1")
    return 2 ** (order * (order + 1))


def count_symmetric(full_order: int) -> int:
    """Symmetric tilings of the order ``2(M+1)`` diamond: ``H_M 2^{M+1}``."""
    if full_order < 2 or full_order % 2:
        raise ValueError("symmetric tilings need an even order >= 2")
    m = full_order // 2 - 1
    return (count_half(m) if m else 1) * 2 ** (m + 1)


def is_symmetric(lines: Sequence[Line]) -> bool:
    """Full-diamond validator: line ``j`` and line ``N+1-j`` never share a position."""
    n = len(lines)
    return all(not set(lines[j]) & set(lines[n - 1 - j]) for j in range(n))


def tail_normalization(index: int, order: int) -> int | Fraction:
    """``H_{2m-1,M}`` for odd ``index``, ``H_{2m,M}`` for even ``index``."""
    m = line_size(index)
    if index % 2:
        return 2 ** order * prod(factorial(2 * i) for i in range(1, m))
    return Fraction(2 ** order * prod(factorial(2 * i) for i in range(1, m + 1)),
                    2 ** m * factorial(m))


def half_joint_pdf(lines: Sequence[Line], order: int) -> Fraction:
    lines = tuple(tuple(l) for l in lines)
    if not _half_ok(lines, order, 1):
        return Fraction(0)
    return Fraction(1, 2 ** (order + chain_adjacency(lines)))


def half_tail_pdf(lines: Sequence[Line], order: int) -> Fraction:
    """Joint probability of lines ``j..2M`` (``j = 2M + 1 - len(lines)``)."""
    lines = tuple(tuple(l) for l in lines)
    start = 2 * order + 1 - len(lines)
    if not lines or start < 1 or not _half_ok(lines, order, start):
        return Fraction(0)
    low = lines[0]
    value = Fraction(vandermonde(low) * sprod(low))
    if start % 2 == 0:
        value *= prod((x - HALF for x in low), start=Fraction(1))
    return value / (tail_normalization(start, order) * 2 ** chain_adjacency(lines))


def _y_weight(line: Line, order: int) -> int:
    return prod(factorial(y + order) * factorial(order + 1 - y) for y in line)


def half_y_pdf(hole_lines: Sequence[Line], order: int) -> Fraction:
    """Joint probability of hole lines ``1..j`` written in the hole variables."""
    lines = tuple(tuple(l) for l in hole_lines)
    j = len(lines)
    if not lines or j > 2 * order or not _half_prefix_ok(lines, order):
        return Fraction(0)
    big, m = order, line_size(j)
    top = lines[-1]
    alpha = chain_adjacency(lines)
    core = Fraction(vandermonde(top) * sprod(top), _y_weight(top, big))
    if j % 2:
        const = Fraction(factorial(big + 1 - m), factorial(big + 1))
        const *= prod(factorial(2 * (big - m + i + 2)) for i in range(m))
        const /= 2 ** (alpha + 2 * m * (big - m + 1) + m)
    else:
        const = Fraction(prod(factorial(2 * (big - m + i)) for i in range(1, m + 1)),
                         2 ** (alpha + 2 * m * (big - m)))
        core *= prod((y - HALF for y in top), start=Fraction(1))
    return const * core


def _half_prefix_ok(lines: Sequence[Line], order: int) -> bool:
    if any(len(l) != line_size(k) for k, l in enumerate(lines, start=1)):
        return False
    return is_valid_chain(lines, order + 1, strict_lower=True)


def half_one_line_pdf(index: int, order: int, positions: Sequence[int]) -> Fraction:
    """Law of a single hole line ``index`` (odd ``2m-1`` or even ``2m``)."""
    line = tuple(positions)
    if not 1 <= index <= 2 * order or len(line) != line_size(index):
        return Fraction(0)
    if not is_valid_chain([line], order + 1, strict_lower=True):
        return Fraction(0)
    core = Fraction((vandermonde(line) * sprod(line)) ** 2, _y_weight(line, order))
    if index % 2 == 0:
        core *= prod(((y - HALF) ** 2 for y in line), start=Fraction(1))
    return half_one_line_constant(index, order) * core


@lru_cache(maxsize=None)
def half_one_line_constant(index: int, order: int) -> Fraction:
    big, m = order, line_size(index)
    if index % 2:
        c = Fraction(factorial(big + 1 - m), factorial(big + 1))
        for i in range(m):
            c *= Fraction(factorial(2 * (big - m + i + 2)), factorial(2 * i))
        return c / 2 ** (2 * m * (big - m + 1) + m)
    c = Fraction(factorial(m)) * Fraction(2) ** (m - 2 * m * (big - m))
    for i in range(1, m + 1):
        c *= Fraction(factorial(2 * (big - m + i)), factorial(2 * i))
    return c


def hole_lines(lines: Sequence[Line], order: int) -> Chain:
    """Hole line ``2M + 1 - n`` is ``{1..M+1}`` minus particle line ``n``."""
    return complement_lines(lines, 1, order + 1)


def complement(system: HalfParticleSystem) -> HalfParticleSystem:
    return HalfParticleSystem(system.order, hole_lines(system.lines, system.order))


# -- brute force ----------------------------------------------------------

def iter_half_systems(order: int) -> Iterator[Chain]:
    def down(upper: Line, index: int, rest: tuple) -> Iterator[Chain]:
        chain = (upper,) + rest
        if index == 1:
            yield chain
            return
        for lower in interlacing_lowers(upper, line_size(index - 1), lo_bound=1):
            yield from down(lower, index - 1, chain)

    for top in combinations(range(order + 1, 0, -1), order):
        yield from down(top, 2 * order, ())


@lru_cache(maxsize=8)
def half_weight_table(order: int) -> dict[Chain, int]:
    """``2^{M^2 - alpha}`` per system: the number of half-diamond tilings it carries."""
    return {s: config_weight(s, order + 1, strict_lower=True) for s in iter_half_systems(order)}


def brute_count_half(order: int) -> int:
    return sum(half_weight_table(order).values())


def brute_half_tails(order: int, start: int) -> dict[Chain, Fraction]:
    total = count_half(order)
    acc: dict[Chain, int] = defaultdict(int)
    for system, w in half_weight_table(order).items():
        acc[system[start - 1:]] += w
    return {k: Fraction(v, total) for k, v in acc.items()}


def brute_half_hole_line(order: int, index: int) -> dict[Line, Fraction]:
    """Marginal of hole line ``index``, i.e. the complement of particle line ``2M+1-index``."""
    total = count_half(order)
    full = set(range(1, order + 2))
    acc: dict[Line, int] = defaultdict(int)
    for system, w in half_weight_table(order).items():
        hole = tuple(sorted(full - set(system[2 * order - index]), reverse=True))
        acc[hole] += w
    return {k: Fraction(v, total) for k, v in acc.items()}
