"""Discrete orthogonal polynomials built by exact Gram-Schmidt, the p = 1/2
Krawtchouk norms, a family symmetric about 1/2 on ``-M..M+1`` and the
type-B summation identities that normalise the half-diamond line laws."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, prod
from typing import Iterable, Sequence

from .combinatorics import factorial, vandermonde
from .linalg import det


class RankDeficiencyError(ValueError):
    """Requested degree is not below the support size."""


@dataclass(frozen=True)
class DiscreteWeight:
    lo: int
    hi: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.hi - self.lo + 1:
            raise ValueError("one weight value per support point")
        if any(v <= 0 for v in self.values):
            raise ValueError("weights must be positive")

    @property
    def support(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def midpoint(self) -> Fraction:
        return Fraction(self.lo + self.hi, 2)

    def __call__(self, x: int) -> Fraction:
        return self.values[x - self.lo]

    def is_even(self) -> bool:
        return self.values == self.values[::-1]

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))


@dataclass(frozen=True)
class MonicPoly:
    """Coefficients in ascending powers; the last one is 1."""

    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shifted(self, m: Fraction) -> "MonicPoly":
        """Coefficients of ``u -> p(u + m)``."""
        out = [sum((c * comb(i, k) * m ** (i - k) for i, c in enumerate(self.coeffs) if i >= k),
                   Fraction(0)) for k in range(len(self.coeffs))]
        return MonicPoly(tuple(out))

    def has_parity_about(self, m: Fraction) -> bool:
        """``p(m + u) = (-1)^deg p(m - u)``: only powers of ``u`` matching the degree parity."""
        coeffs = self.shifted(m).coeffs
        return all(c == 0 for k, c in enumerate(coeffs) if (k - self.degree) % 2)


def inner(weight: DiscreteWeight, f, g) -> Fraction:
    return sum((weight(x) * f(x) * g(x) for x in weight.support), Fraction(0))


def gram_schmidt(weight: DiscreteWeight, max_degree: int) -> list[tuple[MonicPoly, Fraction]]:
    """Monic orthogonal polynomials ``p_0..p_max_degree`` with their squared norms."""
    if max_degree >= len(weight.support):
        raise RankDeficiencyError(
            f"degree {max_degree} needs more than {len(weight.support)} support points")
    family: list[tuple[MonicPoly, Fraction]] = []
    for n in range(max_degree + 1):
        coeffs = [Fraction(0)] * n + [Fraction(1)]
        mono = MonicPoly(tuple(coeffs))
        for p, norm in family:
            c = inner(weight, mono, p) / norm
            for k, pc in enumerate(p.coeffs):
                coeffs[k] -= c * pc
        poly = MonicPoly(tuple(coeffs))
        family.append((poly, inner(weight, poly, poly)))
    return family


def krawtchouk_weight(order: int) -> DiscreteWeight:
    """``1 / (2^N x! (N-x)!)`` on ``0..N``."""
    return DiscreteWeight(0, order, tuple(Fraction(1, 2 ** order * factorial(x) * factorial(order - x))
                                          for x in range(order + 1)))


def krawtchouk_norm(order: int, degree: int) -> Fraction:
    return Fraction(factorial(degree), 2 ** (2 * degree) * factorial(order - degree))


def krawtchouk_norm_check(order: int, a_max: int) -> bool:
    if a_max > order:
        raise ValueError("a_max must not exceed N")
    family = gram_schmidt(krawtchouk_weight(order), a_max)
    norms_ok = all(norm == krawtchouk_norm(order, a) for a, (_, norm) in enumerate(family))
    w = krawtchouk_weight(order)
    orth_ok = all(inner(w, p, q) == 0 for i, (p, _) in enumerate(family) for q, _ in family[:i])
    return norms_ok and orth_ok


def shifted_weight(order: int) -> DiscreteWeight:
    """``1 / (2^{2M+1} (t+M)! (M+1-t)!)`` on ``t = -M..M+1``, even about ``t = 1/2``."""
    m = order
    return DiscreteWeight(-m, m + 1, tuple(
        Fraction(1, 2 ** (2 * m + 1) * factorial(t + m) * factorial(m + 1 - t))
        for t in range(-m, m + 2)))


def shifted_family(order: int, degree: int) -> list[tuple[MonicPoly, Fraction]]:
    """Monic family orthogonal for :func:`shifted_weight`; norms ``a! / (2^{2a} (2M+1-a)!)``."""
    if degree > 2 * order + 1:
        raise RankDeficiencyError("degree must be at most 2M + 1")
    return gram_schmidt(shifted_weight(order), degree)


def typeB_constant(order: int, index: int) -> Fraction:
    """``C_{2n-1}`` (odd ``index``) or ``C_{2n}`` (even ``index``) for the half lattice."""
    m, n = order, (index + 1) // 2
    c = Fraction(2 ** (2 * m * n))
    for j in range(n):
        if index % 2:
            c *= Fraction(factorial(2 * j), 2 ** (4 * j) * factorial(2 * (m - j) + 1))
        else:
            c *= Fraction(factorial(2 * j + 1), 2 ** (4 * j + 2) * factorial(2 * m - 2 * j))
    return c


def typeB_brute_sum(order: int, n: int, with_square: bool) -> Fraction:
    """``sum_{x in 1..M+1}^n prod w(x_i) Delta((x - 1/2)^2)^2 [prod (x_i - 1/2)^2]``."""
    m, half = order, Fraction(1, 2)
    total = Fraction(0)
    for xs in product(range(1, m + 2), repeat=n):
        u2 = [(x - half) ** 2 for x in xs]
        term = Fraction(vandermonde(u2) ** 2, prod(factorial(m + x) * factorial(m + 1 - x) for x in xs))
        if with_square:
            term *= prod(u2, start=Fraction(1))
        total += term
    return total


MAX_BRUTE_TERMS = 10 ** 6


def typeB_sum_identities(order: int, n: int) -> bool:
    """Brute-force multi-sums against ``n! C`` and against Gram-Schmidt norms."""
    if (order + 1) ** n > MAX_BRUTE_TERMS:
        raise ValueError("multi-sum exceeds the brute-force budget")
    family = shifted_family(order, min(2 * n, 2 * order + 1))
    norms = [norm for _, norm in family]
    scale = Fraction(2 ** ((2 * order + 1) * n), 2 ** n)
    ok = True
    for with_square, index in ((False, 2 * n - 1), (True, 2 * n)):
        brute = typeB_brute_sum(order, n, with_square)
        ok &= brute == factorial(n) * typeB_constant(order, index)
        degrees = [2 * j + with_square for j in range(n)]
        if max(degrees) < len(norms):
            ok &= brute == scale * factorial(n) * prod((norms[d] for d in degrees), start=Fraction(1))
    return ok


def typeB_vandermonde_identity(points: Sequence[int], weight: DiscreteWeight) -> bool:
    """``Delta((x-m)^2) = +-det[p_{2(j-1)}(x_i)]`` and the odd companion."""
    n = len(points)
    family = gram_schmidt(weight, 2 * n - 1)
    m = weight.midpoint
    sign = (-1) ** (n * (n - 1) // 2)
    lhs = vandermonde([(x - m) ** 2 for x in points])
    even = det([[family[2 * j][0](x) for j in range(n)] for x in points])
    odd = det([[family[2 * j + 1][0](x) for j in range(n)] for x in points])
    return sign * even == lhs and sign * odd == lhs * prod((x - m for x in points), start=Fraction(1))


def full_line_constant_from_norms(n: int, order: int) -> Fraction:
    """Reciprocal of ``sum over n-sets of Delta^2 / prod x!(N-x)!`` from Krawtchouk norms."""
    return 1 / (prod((krawtchouk_norm(order, j) for j in range(n)), start=Fraction(1)) * 2 ** (order * n))
