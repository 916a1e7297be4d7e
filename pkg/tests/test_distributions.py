from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from math import factorial

import pytest

from aztec import distributions as dist
from aztec.model import complement_lines


def test_joint_examples():
    assert dist.joint_pdf(((0,),)) == Fraction(1, 2)
    assert dist.joint_pdf(((1,), (2, 0))) == Fraction(2, 8)
    assert dist.joint_pdf(((0,), (2, 1))) == 0


@pytest.mark.parametrize("order", [1, 2, 3, 4, 5])
def test_joint_sums_to_one(order):
    assert sum(dist.joint_pdf(s, order) for s in dist.weight_table(order)) == 1


def test_counts():
    assert dist.count_tilings(3) == 64
    assert dist.count_tilings(5) == 32768
    for order in range(1, 8):
        assert dist.virtual_line_probability(order) == 1
    with pytest.raises(ValueError):
        dist.count_tilings(0)


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_count_check(order):
    assert dist.count_check(order)


def test_tail_normalization_recurrence():
    for order in range(1, 7):
        assert dist.TailMarginal(order, 1).normalization == Fraction(dist.count_tilings(order),
                                                                     2 ** (order * (order - 1) // 2))
        for m in range(1, order):
            a = dist.TailMarginal(order, m).normalization
            assert dist.TailMarginal(order, m + 1).normalization == factorial(m) * a


def test_tail_examples():
    for s in dist.weight_table(3):
        assert dist.tail_marginal_pdf(s, 3) == dist.joint_pdf(s, 3)
    assert dist.tail_marginal_pdf(((2, 0),), 2) == Fraction(4, 8)


@pytest.mark.parametrize("order", [2, 3, 4])
def test_tail_marginals_against_brute_force(order):
    for m in range(1, order + 1):
        brute = dist.brute_tail_marginals(order, m)
        for tail, p in brute.items():
            assert dist.tail_marginal_pdf(tail, order) == p
        assert sum(brute.values()) == 1


@pytest.mark.parametrize("order", [2, 3, 4])
def test_summing_line_m_gives_next_tail(order):
    for m in range(1, order):
        acc = defaultdict(Fraction)
        for tail in dist.brute_tail_marginals(order, m):
            acc[tail[1:]] += dist.tail_marginal_pdf(tail, order)
        for rest, p in acc.items():
            assert dist.tail_marginal_pdf(rest, order) == p


def test_y_joint_examples():
    assert dist.y_joint_pdf(((1,),), 2) == Fraction(4, 8)
    assert dist.y_joint_pdf(((0,),), 1) == dist.y_joint_pdf(((1,),), 1) == Fraction(1, 2)


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_y_joint_is_complement_transported_tail(order):
    for m in range(1, order + 1):
        for tail, p in dist.brute_tail_marginals(order, m).items():
            holes = complement_lines(tail, 0, order)
            assert dist.y_joint_pdf(holes, order) == p == dist.tail_marginal_pdf(tail, order)


def test_one_line_examples():
    assert [dist.one_line_pdf(1, 1, (x,)) for x in (0, 1)] == [Fraction(1, 2)] * 2
    assert [dist.one_line_pdf(1, 2, (x,)) for x in (0, 1, 2)] == [Fraction(1, 4), Fraction(1, 2), Fraction(1, 4)]
    assert dist.one_line_pdf(1, 2, (5,)) == 0


@pytest.mark.parametrize("order", range(1, 9))
def test_one_line_normalization(order):
    for n in range(1, order + 1):
        total = sum(dist.one_line_pdf(n, order, c) for c in combinations(range(order, -1, -1), n))
        assert total == 1


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_one_line_against_brute_force(order):
    for n in range(1, order + 1):
        for line, p in dist.brute_one_line(order, n).items():
            assert dist.one_line_pdf(n, order, line) == p
