"""Small exact linear algebra over the rationals, plus the interval power-sum
matrix whose determinant drives both the marginal formulas and the sampler."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .combinatorics import Line

Matrix = list[list[Fraction]]


def det(matrix: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    sign, result = 1, Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            sign = -sign
        result *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return sign * result


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve ``matrix @ y = rhs`` exactly; raises on a singular matrix."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[pivot] = a[pivot], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


def trapezoid_sum(f: Callable[[int], Fraction], lo: int, hi: int,
                  halve_lo: bool = True, halve_hi: bool = True) -> Fraction:
    """``sum_{t=lo}^{hi} 2^{-delta(t,lo) - delta(t,hi)} f(t)``, endpoint halving optional."""
    total = Fraction(0)
    for t in range(lo, hi + 1):
        w = Fraction(1)
        if halve_lo and t == lo:
            w /= 2
        if halve_hi and t == hi:
            w /= 2
        total += w * f(t)
    return total


def interval_rows(upper: Line) -> list[tuple[int, int]]:
    """``(a_i, b_i)`` for the particles of the line below ``upper``, bottom particle first.

    With this ordering ``det(interval_power_matrix(upper)) = vandermonde(upper) / n!``.
    """
    n = len(upper) - 1
    return [(upper[n - i + 1], upper[n - i]) for i in range(1, n + 1)]


def interval_power_matrix(upper: Line) -> Matrix:
    """``[sum_{t=a_i}^{b_i} t^{j-1} / 2^{delta(t,a_i)+delta(t,b_i)}]`` for the
    line below ``upper``."""
    n = len(upper) - 1
    return [[trapezoid_sum(lambda t, j=j: Fraction(t) ** j, a, b) for j in range(n)]
            for a, b in interval_rows(upper)]


def inverse(matrix: Sequence[Sequence]) -> Matrix:
    """Exact inverse by Gauss-Jordan; raises on a singular matrix."""
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if a[r][c] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[pivot] = a[pivot], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]
