from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from aztec.combinatorics import (InterlacingError, adjacency_count, as_ratio, chain_adjacency,
                                 config_weight, interlaces, interlacing_lowers, is_valid_chain,
                                 normalize_line, sprod, superfactorial, vandermonde)
from aztec.distributions import iter_systems

ints = st.lists(st.integers(-20, 20), min_size=0, max_size=6)


def test_vandermonde_examples():
    assert vandermonde((5,)) == 1
    assert vandermonde((2, 1, 0)) == 2
    assert vandermonde((3, 2, 1, 0)) == 12 == superfactorial(3)


def test_sprod_examples():
    assert sprod((4,)) == 1
    assert sprod((2, 1)) == 2
    assert sprod((3, 2, 1)) == 24


@given(ints, st.data())
def test_vandermonde_flips_sign_under_transposition(xs, data):
    if len(xs) < 2:
        return
    i, j = sorted(data.draw(st.lists(st.integers(0, len(xs) - 1), min_size=2, max_size=2, unique=True)))
    ys = list(xs)
    ys[i], ys[j] = ys[j], ys[i]
    assert vandermonde(ys) == -vandermonde(xs)


@given(ints)
def test_vandermonde_vanishes_exactly_on_coincidences(xs):
    assert (vandermonde(xs) == 0) == (len(set(xs)) < len(xs))


@given(st.permutations([5, 3, 2, 0, -1]))
def test_sprod_is_symmetric(perm):
    assert sprod(perm) == sprod([5, 3, 2, 0, -1])


def test_normalize_line_sorts_and_rejects_duplicates():
    assert normalize_line([0, 2, 1]) == (2, 1, 0)
    with pytest.raises(ValueError):
        normalize_line([1, 1])


def test_adjacency_examples():
    assert adjacency_count((1,), (2, 0)) == 0
    assert adjacency_count((0,), (1, 0)) == 1
    assert adjacency_count((2, 1), (2, 1, 0)) == 2
    with pytest.raises(InterlacingError):
        adjacency_count((2,), (1, 0))


def test_valid_chain_examples():
    assert is_valid_chain(((1,), (2, 0)), 2)
    assert not is_valid_chain(((1,), (2, 2)), 2)
    assert not is_valid_chain(((2,), (1, 0)), 2)
    assert not is_valid_chain(((0,), (1, 0)), 1, strict_lower=True)


def test_config_weight_examples():
    assert config_weight(((0,),), 1) == 1
    assert config_weight(((1,), (2, 0)), 2) == 2
    assert config_weight(((0,), (1, 0)), 2) == 1
    with pytest.raises(InterlacingError):
        config_weight(((2,), (1, 0)), 2)


@pytest.mark.parametrize("order", [2, 3, 4, 5])
def test_weights_sum_to_tiling_count(order):
    total = 0
    for system in iter_systems(order):
        alpha = chain_adjacency(system)
        assert config_weight(system, order) == 2 ** (order * (order - 1) // 2 - alpha)
        assert all(adjacency_count(lo, up) <= len(lo) for lo, up in zip(system, system[1:]))
        total += config_weight(system, order)
    assert total == 2 ** (order * (order + 1) // 2)


@pytest.mark.parametrize("sites", range(2, 7))
def test_hole_adjacency_identity(sites):
    # two consecutive lines of a particles (lower) and a + 1 (upper) on ``sites`` sites,
    # holes read off the complements in the reversed roles
    full = set(range(sites))
    for b in range(1, sites + 1):
        for upper in combinations(range(sites - 1, -1, -1), b):
            for lower in interlacing_lowers(upper, b - 1):
                y_lower = tuple(sorted(full - set(upper), reverse=True))
                y_upper = tuple(sorted(full - set(lower), reverse=True))
                assert interlaces(y_lower, y_upper)
                a = len(lower)
                assert adjacency_count(lower, upper) == adjacency_count(y_lower, y_upper) + a + b - sites


def test_as_ratio():
    assert as_ratio(Fraction(2, 8)) == "1/4"
    assert as_ratio(3) == "3/1"
