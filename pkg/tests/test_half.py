from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from math import factorial, prod

import pytest

from aztec import half
from aztec.combinatorics import sprod
from aztec.krawtchouk import typeB_constant


def test_counts():
    assert half.count_half(1) == 4
    assert half.count_half(2) == 64
    assert half.count_symmetric(4) == 16
    for m in range(1, 8):
        assert half.count_symmetric(2 * (m + 1)) == 2 ** ((m + 1) ** 2)
    with pytest.raises(ValueError):
        half.count_symmetric(5)


@pytest.mark.parametrize("order", [1, 2, 3])
def test_brute_count(order):
    assert half.brute_count_half(order) == half.count_half(order)


def test_entropy_exponents():
    # log A_N / N^2 against twice log H_M / N^2 with N = 2(M + 1): exponents agree to leading order
    for m in (10, 100, 1000, 5000):
        n = 2 * (m + 1)
        ratio = Fraction(n * (n + 1) // 2, 2 * m * (m + 1))
        assert abs(ratio - 1) < Fraction(4, m)


@pytest.mark.parametrize("order", [1, 2, 3])
def test_joint_sums_to_one(order):
    tables = half.half_weight_table(order)
    assert sum(half.half_joint_pdf(s, order) for s in tables) == 1
    assert all(half.half_joint_pdf(s, order).denominator & (half.half_joint_pdf(s, order).denominator - 1) == 0
               for s in tables)


def test_joint_rejects_zero_positions():
    assert half.half_joint_pdf(((0,), (2,)), 1) == 0
    with pytest.raises(ValueError):
        half.HalfParticleSystem(1, ((0,), (2,)))


@pytest.mark.parametrize("order", [1, 2, 3])
def test_tails_against_brute_force(order):
    for start in range(1, 2 * order + 1):
        for tail, p in half.brute_half_tails(order, start).items():
            assert half.half_tail_pdf(tail, order) == p
    for s in half.half_weight_table(order):
        assert half.half_tail_pdf(s, order) == half.half_joint_pdf(s, order)


@pytest.mark.parametrize("order", [1, 2, 3])
def test_inductive_consistency(order):
    for start in range(1, 2 * order):
        acc = defaultdict(Fraction)
        for tail in half.brute_half_tails(order, start):
            acc[tail[1:]] += half.half_tail_pdf(tail, order)
        for rest, p in acc.items():
            assert half.half_tail_pdf(rest, order) == p


@pytest.mark.parametrize("order", [1, 2, 3])
def test_hole_joint_matches_complement(order):
    total = half.count_half(order)
    for j in range(1, 2 * order + 1):
        acc = defaultdict(int)
        for lines, w in half.half_weight_table(order).items():
            acc[half.hole_lines(lines, order)[:j]] += w
        for key, w in acc.items():
            assert half.half_y_pdf(key, order) == Fraction(w, total)


def test_swap_identities():
    for m in range(1, 4):
        assert sprod(tuple(range(m + 1, 0, -1))) == prod(Fraction(factorial(2 * i), factorial(i))
                                                         for i in range(1, m + 1))
    assert sprod((4, 3, 2, 1)) == 2880
    big = 2
    full = set(range(1, big + 2))
    for r in range(big + 2):
        for x in combinations(range(big + 1, 0, -1), r):
            y = sorted(full - set(x), reverse=True)
            lhs = prod((Fraction(2 * v - 1, 2) for v in x), start=Fraction(1))
            rhs = Fraction(factorial(2 * big + 2), 2 ** (2 * big + 2) * factorial(big + 1))
            rhs /= prod((Fraction(2 * v - 1, 2) for v in y), start=Fraction(1))
            assert lhs == rhs


def test_complement_involution():
    for lines in half.half_weight_table(3):
        s = half.HalfParticleSystem(3, lines)
        assert half.complement(half.complement(s)) == s


@pytest.mark.parametrize("order", range(1, 6))
def test_one_line_normalization(order):
    for index in range(1, 2 * order + 1):
        size = half.line_size(index)
        total = sum(half.half_one_line_pdf(index, order, c)
                    for c in combinations(range(order + 1, 0, -1), size))
        assert total == 1


@pytest.mark.parametrize("order", [1, 2, 3])
def test_one_line_against_brute_force(order):
    for index in range(1, 2 * order + 1):
        for line, p in half.brute_half_hole_line(order, index).items():
            assert half.half_one_line_pdf(index, order, line) == p


def test_one_line_constants_are_type_b_reciprocals():
    for order in range(1, 6):
        for index in range(1, min(2 * order, 6) + 1):
            assert half.half_one_line_constant(index, order) * typeB_constant(order, index) == 1


def test_symmetry_validator():
    assert half.is_symmetric([(1,), (2, 0)])
    assert not half.is_symmetric([(1,), (1, 0)])
