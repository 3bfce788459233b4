from __future__ import annotations

import random
from itertools import permutations

from delpezzo import catalog as cat
from delpezzo import symmetry


def brute_automorphisms(g):
    n = len(g.self_int)
    out = []
    for perm in permutations(range(n)):
        if any(g.self_int[perm[i]] != g.self_int[i] for i in range(n)):
            continue
        if all(
            g.mult[perm[i]][perm[j]] == g.mult[i][j]
            for i in range(n) for j in range(n)
        ):
            out.append(perm)
    return sorted(out)


def small_graphs():
    for label in ("7.1", "6.1", "6.3", "6.4", "6.6", "5.6", "5.7", "4.21"):
        g = cat.negative_curve_graph(cat.by_label(label))
        if len(g.self_int) <= 9:
            yield label, g


def test_against_brute_force():
    for label, g in small_graphs():
        got = sorted(symmetry.automorphisms(g))
        assert got == brute_automorphisms(g), label


def test_group_axioms():
    g = cat.negative_curve_graph(cat.by_label("4.19"))
    perms = set(symmetry.automorphisms(g))
    n = len(g.self_int)
    assert tuple(range(n)) in perms
    for a in perms:
        inv = tuple(sorted(range(n), key=lambda i: a[i]))
        assert inv in perms
    rng = random.Random(7)
    sample = rng.sample(sorted(perms), min(12, len(perms)))
    for a in sample:
        for b in sample:
            assert symmetry.compose(a, b) in perms


def test_relabeling_invariance():
    rng = random.Random(11)
    for label in ("6.3", "4.21", "5.5"):
        g = cat.negative_curve_graph(cat.by_label(label))
        n = len(g.self_int)
        order = len(symmetry.automorphisms(g))
        sigma = list(range(n))
        rng.shuffle(sigma)
        moved = cat.NegativeCurveGraph(
            degree=g.degree,
            vertices=tuple(g.vertices[sigma.index(i)] for i in range(n)),
            self_int=tuple(g.self_int[sigma.index(i)] for i in range(n)),
            mult=tuple(
                tuple(g.mult[sigma.index(i)][sigma.index(j)] for j in range(n))
                for i in range(n)
            ),
            labels=tuple(g.labels[sigma.index(i)] for i in range(n)),
        )
        assert len(symmetry.automorphisms(moved)) == order
        iso = symmetry.find_isomorphism(g, moved)
        assert iso is not None
        for i in range(n):
            for j in range(n):
                assert moved.mult[iso[i]][iso[j]] == g.mult[i][j]


def test_isomorphic_and_not():
    g63 = cat.negative_curve_graph(cat.by_label("6.3"))
    g65 = cat.negative_curve_graph(cat.by_label("6.5"))
    assert symmetry.isomorphic(g63, g63)
    assert not symmetry.isomorphic(g63, g65)


def test_element_order():
    assert symmetry.element_order((0, 1, 2)) == 1
    assert symmetry.element_order((1, 0, 2)) == 2
    assert symmetry.element_order((1, 2, 0)) == 3
    assert symmetry.element_order((1, 0, 3, 4, 2)) == 6


def test_cycle_notation():
    assert symmetry.cycle_notation((0, 1, 2)) == "()"
    text = symmetry.cycle_notation((1, 0, 2), ("a", "b", "c"))
    assert "a" in text and "b" in text and "c" not in text
