from __future__ import annotations

from itertools import product

import pytest

from delpezzo import lattice


def grid_count(n, bound, square, kpair):
    """Plain nested scan, kept independent of the module's generator."""
    hits = 0
    rng = range(-bound, bound + 1)
    for v in product(rng, repeat=n + 1):
        nrm = v[0] * v[0] - sum(x * x for x in v[1:])
        kd = -3 * v[0] - sum(v[1:])
        if nrm == square and kd == kpair:
            hits += 1
    return hits


@pytest.mark.parametrize("n", range(1, 6))
def test_counts_against_plain_scan(n):
    assert grid_count(n, 3, -2, 0) == len(lattice.enumerate_roots(n))
    assert grid_count(n, 3, -1, -1) == len(lattice.enumerate_exceptional(n))


@pytest.mark.parametrize("n", range(1, 8))
def test_frozen_counts(n):
    assert len(lattice.enumerate_roots(n)) == lattice.ROOT_COUNTS[n - 1]
    assert len(lattice.enumerate_exceptional(n)) == lattice.EXCEPTIONAL_COUNTS[n - 1]


@pytest.mark.parametrize("n", (6, 7))
def test_bound_saturation(n):
    # widening the coefficient box finds nothing new
    assert len(lattice.enumerate_roots(n, bound=4)) == lattice.ROOT_COUNTS[n - 1]
    assert (
        len(lattice.enumerate_exceptional(n, bound=4))
        == lattice.EXCEPTIONAL_COUNTS[n - 1]
    )


def test_root_invariants():
    k = lattice.kvec(7)
    roots = lattice.enumerate_roots(7)
    rootset = set(roots)
    for v in roots:
        assert lattice.norm(v) == -2
        assert lattice.pair(v, k) == 0
        assert tuple(-x for x in v) in rootset


def test_exceptional_invariants():
    k = lattice.kvec(7)
    for v in lattice.enumerate_exceptional(7):
        assert lattice.norm(v) == -1
        assert lattice.pair(v, k) == -1


def test_pair_is_symmetric_bilinear():
    u = (1, 1, 0, -2)
    v = (0, 2, -1, 1)
    w = (3, -1, 1, 0)
    assert lattice.pair(u, v) == lattice.pair(v, u)
    s = tuple(a + b for a, b in zip(v, w))
    assert lattice.pair(u, s) == lattice.pair(u, v) + lattice.pair(u, w)


def test_format_parse_round_trip():
    for v in lattice.enumerate_exceptional(4):
        assert lattice.parse_vector(lattice.format_vector(v)) == v


def test_lnotation_small():
    n = 3
    ei = lattice.basis_vector(n, 1)
    assert lattice.lnotation(ei) == "l1"
    assert lattice.lnotation((1, -1, -1, 0)) == "l12"
    assert lattice.lnotation((0, 1, -1, 0)) == "l1-l2"
