import random

import pytest

from aztec.combinatorics import config_weight
from aztec.distributions import count_tilings, iter_systems
from aztec.model import (BudgetError, Domino, DominoTiling, ParticleSystem, TilingError,
                         complement, count_tilings_direct, enumerate_tilings, fiber, iter_tilings,
                         orientation_bits, particles_from_tiling, paths_from_tiling,
                         tilings_from_particles, vertical_dominoes_from_paths)
from aztec.sampler import RngStream, sample_tiling


def test_order_one_tilings():
    tilings = list(iter_tilings(1))
    assert len(tilings) == 2
    systems = {particles_from_tiling(t).lines for t in tilings}
    assert systems == {((0,),), ((1,),)}
    horizontal = next(t for t in tilings if all(d.orient == "h" for d in t.dominoes))
    vertical = next(t for t in tilings if all(d.orient == "v" for d in t.dominoes))
    assert particles_from_tiling(horizontal).lines != particles_from_tiling(vertical).lines


@pytest.mark.parametrize("order,count", [(1, 2), (2, 8), (3, 64), (4, 1024)])
def test_enumeration_counts(order, count):
    assert enumerate_tilings(order)[0] == count
    assert enumerate_tilings(order, stream=True)[0] == count


def test_streaming_budget():
    with pytest.raises(BudgetError):
        next(iter_tilings(7))


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_bijection(order):
    seen = set()
    for t in iter_tilings(order):
        system = particles_from_tiling(t)
        bits = orientation_bits(t)
        assert len(bits) == system.free_count
        assert tilings_from_particles(system, bits) == t
        seen.add((system.lines, bits))
    assert len(seen) == count_tilings(order)


@pytest.mark.parametrize("order", [2, 3, 4])
def test_fiber_sizes(order):
    total = 0
    for lines in iter_systems(order):
        system = ParticleSystem(order, lines)
        tilings = set(fiber(system))
        assert len(tilings) == config_weight(lines, order)
        assert all(particles_from_tiling(t) == system for t in tilings)
        total += len(tilings)
    assert total == 2 ** (order * (order + 1) // 2)


def test_fiber_examples():
    assert len(set(fiber(ParticleSystem(2, ((1,), (2, 0)))))) == 2
    assert len(set(fiber(ParticleSystem(2, ((0,), (1, 0)))))) == 1


def test_wrong_bit_count():
    with pytest.raises(ValueError):
        tilings_from_particles(ParticleSystem(2, ((1,), (2, 0))), [])


def test_complement_examples_and_involution():
    s = ParticleSystem(2, ((1,), (2, 0)))
    c = complement(s)
    assert c.lines == ((1,), (2, 0))
    for order in range(1, 5):
        for lines in iter_systems(order):
            s = ParticleSystem(order, lines)
            assert complement(complement(s)) == s


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_paths(order):
    for t in iter_tilings(order):
        family = paths_from_tiling(t)
        assert len(family.paths) == order
        assert family.is_non_intersecting()
        assert vertical_dominoes_from_paths(family) == {d for d in t.dominoes if d.orient == "v"}


def test_paths_on_random_order_five_tilings():
    for seed in range(20):
        t = sample_tiling(5, RngStream(seed))
        family = paths_from_tiling(t)
        assert len(family.paths) == 5 and family.is_non_intersecting()


def test_order_one_paths_differ():
    a, b = (paths_from_tiling(t) for t in iter_tilings(1))
    assert len(a.paths) == len(b.paths) == 1
    assert a.paths != b.paths


def test_malformed_tilings_rejected():
    good = next(iter_tilings(2))
    dominoes = set(good.dominoes)
    dominoes.pop()
    with pytest.raises(TilingError):
        DominoTiling(2, frozenset(dominoes))
    with pytest.raises(TilingError):
        DominoTiling(1, frozenset({Domino(-1, -1, "h"), Domino(-1, 0, "h"), Domino(5, 5, "h")}))


def test_json_round_trip():
    t = sample_tiling(4, RngStream(3))
    assert DominoTiling.from_json(t.to_json()) == t
    data = t.to_json()
    data["dominoes"][0]["type"] = "Q"
    with pytest.raises(TilingError):
        DominoTiling.from_json(data)


def test_direct_count_matches_closed_form_beyond_streaming():
    for order in range(1, 9):
        assert count_tilings_direct(order) == count_tilings(order)
