"""Exact combinatorial primitives shared by the full and half diamond models.

Lines are plain tuples of integers stored strictly decreasing
(``x_1 > x_2 > ...``).  A chain is a sequence of lines ordered from line 1
upwards.  Everything here is exact: integers and :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterable, Sequence

Line = tuple[int, ...]
Chain = tuple[Line, ...]

ExactProb = Fraction


class InterlacingError(ValueError):
    """Two consecutive lines do not interlace."""


def normalize_line(positions: Iterable[int]) -> Line:
    """Return ``positions`` sorted strictly decreasing; duplicates are rejected."""
    line = tuple(sorted((int(p) for p in positions), reverse=True))
    if len(set(line)) != len(line):
        raise ValueError(f"duplicate particle positions in {line}")
    return line


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative number")
    return 1 if n < 2 else n * factorial(n - 1)


def superfactorial(n: int) -> int:
    """``1! 2! ... n!``"""
    return prod(factorial(i) for i in range(1, n + 1))


def vandermonde(positions: Sequence[int | Fraction]) -> int | Fraction:
    """``prod_{i<j} (x_i - x_j)``; antisymmetric, zero on coincidences."""
    xs = list(positions)
    return prod(xs[i] - xs[j] for i in range(len(xs)) for j in range(i + 1, len(xs)))


def sprod(positions: Sequence[int | Fraction]) -> int | Fraction:
    """``prod_{i<j} (x_i + x_j - 1)``, the type-B companion of :func:`vandermonde`."""
    xs = list(positions)
    return prod(xs[i] + xs[j] - 1 for i in range(len(xs)) for j in range(i + 1, len(xs)))


def interlaces(lower: Line, upper: Line) -> bool:
    """``upper[i+1] <= lower[i] <= upper[i]``, missing bounds ignored.

    ``upper`` holds one more particle than ``lower`` (full diamond and the
    even-to-odd step of the half diamond) or the same number (odd-to-even
    step of the half diamond, where the bottom particle has no lower
    neighbour on the next line).
    """
    if len(upper) not in (len(lower), len(lower) + 1):
        return False
    for i, x in enumerate(lower):
        if x > upper[i]:
            return False
        if i + 1 < len(upper) and x < upper[i + 1]:
            return False
    return True


def adjacency_count(lower: Line, upper: Line) -> int:
    """Number of particles on ``lower`` sitting on one of their sandwiching
    particles on ``upper``."""
    if not interlaces(lower, upper):
        raise InterlacingError(f"{lower} does not interlace with {upper}")
    count = 0
    for i, x in enumerate(lower):
        count += x == upper[i]
        if i + 1 < len(upper):
            count += x == upper[i + 1]
    return count


def chain_adjacency(lines: Sequence[Line]) -> int:
    """Total adjacency of every line except the last one."""
    return sum(adjacency_count(lo, up) for lo, up in zip(lines, lines[1:]))


def is_valid_chain(lines: Sequence[Line], lattice_max: int, strict_lower: bool = False) -> bool:
    """Check strict decrease, lattice bounds and interlacing of a chain.

    The lattice is ``0..lattice_max``, or ``1..lattice_max`` when
    ``strict_lower`` is set (half diamond).
    """
    lo_bound = 1 if strict_lower else 0
    for line in lines:
        if any(a <= b for a, b in zip(line, line[1:])):
            return False
        if line and (line[0] > lattice_max or line[-1] < lo_bound):
            return False
    return all(interlaces(lo, up) for lo, up in zip(lines, lines[1:]))


def config_weight(lines: Sequence[Line], lattice_max: int | None = None,
                  strict_lower: bool = False) -> int:
    """``2**(#particles below the last line - alpha)``.

    For the full diamond this is the number of tilings mapping onto the
    particle system.
    """
    if lattice_max is None:
        lattice_max = len(lines)
    if not is_valid_chain(lines, lattice_max, strict_lower):
        raise InterlacingError("invalid particle chain")
    free = sum(len(line) for line in lines[:-1]) - chain_adjacency(lines)
    return 2 ** free


def decreasing_subsets(values: Sequence[int], size: int) -> Iterable[Line]:
    """All strictly decreasing ``size``-tuples drawn from ``values``."""
    from itertools import combinations

    for combo in combinations(sorted(values, reverse=True), size):
        yield combo


def interlacing_lowers(upper: Line, size: int, lo_bound: int = 0) -> Iterable[Line]:
    """Every line of ``size`` particles (``size`` = len(upper) or len(upper)-1)
    lying below ``upper`` in the interlacing order."""
    from itertools import product

    ranges = []
    for i in range(size):
        lo = upper[i + 1] if i + 1 < len(upper) else lo_bound
        ranges.append(range(upper[i], lo - 1, -1))
    for cand in product(*ranges):
        if all(a > b for a, b in zip(cand, cand[1:])):
            yield cand


def as_ratio(value: Fraction) -> str:
    """Serialize an exact rational as ``"p/q"`` (``"p/1"`` for integers)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
