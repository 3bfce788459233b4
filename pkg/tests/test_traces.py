from __future__ import annotations

from fractions import Fraction

import pytest

from delpezzo import catalog as cat
from delpezzo import traces


def test_radical_dimensions():
    assert traces.radical_dimension(cat.by_label("6.2")) == 0
    assert traces.radical_dimension(cat.by_label("5.4")) == 1
    assert traces.radical_dimension(cat.by_label("4.1")) == 7


def test_kernel_basis_identity_at_free():
    gram = ((0, 0), (0, -2))
    cols, free = traces.kernel_basis(gram)
    assert free == [0]
    assert cols == [[Fraction(1), Fraction(0)]]


def test_identity_profile_present():
    for lab in ("6.3", "5.4", "4.21", "2.D4"):
        c = cat.by_label(lab)
        profs = traces.all_profiles(c)
        tops = [p for p in profs if p.tr_pic == 10 - c.degree]
        assert len(tops) == 1
        top = tops[0]
        assert top.element_order == 1
        assert top.tr_r == len(c.simple_roots)
        assert top.delta == len(cat.root_components(cat.negative_curve_graph(c)))


def test_profile_sets_62_63():
    profs = traces.all_profiles(cat.by_label("6.2"))
    assert {(p.tr_pic, p.tr_r) for p in profs} == {(1, 1), (2, 1), (4, 1)}
    assert all(p.tr_r == 1 for p in profs)
    profs = traces.all_profiles(cat.by_label("6.3"))
    assert {(p.tr_pic, p.tr_r) for p in profs} == {(2, 2), (4, 2)}


def test_profile_sets_46_48():
    assert {
        (p.tr_pic, p.tr_r) for p in traces.all_profiles(cat.by_label("4.6"))
    } == {(0, 0), (2, 2), (4, 2), (6, 2)}
    assert {
        (p.tr_pic, p.tr_r) for p in traces.all_profiles(cat.by_label("4.8"))
    } == {(0, 1), (2, 1), (4, 3), (6, 3)}


def test_trace_bound_and_consistency():
    for c in cat.builtin_catalog():
        if c.adhoc:
            continue
        for p in traces.all_profiles(c):
            assert abs(p.tr_pic) <= 10 - c.degree
            assert p.tr_pic == p.tr_m - p.tr_f
            assert p.tr_en == p.tr_pic - 1
            assert p.t == p.tr_en - p.tr_r


def test_point_count_formula():
    profs = traces.all_profiles(cat.by_label("6.3"))
    by_pair = {(p.tr_pic, p.tr_r): p for p in profs}
    assert traces.point_count(by_pair[(4, 2)], 2) == 9
    assert traces.point_count(by_pair[(2, 2)], 2) == 5
    assert traces.point_count(by_pair[(2, 2)], 9) == 82


def test_point_count_guards():
    p = traces.all_profiles(cat.by_label("2.A1"))[0]
    with pytest.raises(ValueError):
        traces.point_count(p, 6)
    with pytest.raises(ValueError):
        traces.point_count(p, 1)


def test_count_residue_mod_q():
    for lab in ("6.2", "5.4", "4.21", "2.A2"):
        for p in traces.all_profiles(cat.by_label(lab)):
            for q in traces.prime_powers(9):
                assert traces.point_count(p, q) % q == 1


def test_prime_powers():
    assert traces.prime_powers(9) == [2, 3, 4, 5, 7, 8, 9]


def test_degree2_a1_t_values():
    profs = traces.all_profiles(cat.by_label("2.A1"))
    ts = {p.t for p in profs}
    assert -5 not in ts
    assert -3 in ts
    assert max(ts) == 6


def test_smooth_point_guarantee():
    ok, witness = traces.smooth_point_guaranteed(cat.by_label("6.1"), 2)
    assert ok and witness is None
    ok, witness = traces.smooth_point_guaranteed(cat.by_label("2.A1"), 2)
    assert not ok
    assert traces.point_count(witness, 2) == witness.delta == 1


def test_remaining_cases_exact():
    got = traces.remaining_cases(9)
    assert got == sorted(got)
    assert set(got) == {
        ("2.2A2+A1", 2), ("2.A1", 2), ("2.A1", 3), ("2.A1", 5),
        ("2.A2", 2), ("2.A2", 4), ("2.A3", 3), ("2.A3+2A1", 2),
        ("2.A4", 2), ("2.D4", 2), ("2.[3A1]'", 2), ("2.[3A1]''", 2),
        ("2.[4A1]'", 3), ("2.[4A1]''", 3),
    }


def test_realizability():
    assert traces.rational_type_realizable(cat.by_label("4.9"))
    assert not traces.rational_type_realizable(cat.by_label("4.17"))


def test_fixed_type_multisets_417():
    multisets = traces.fixed_type_multisets(cat.by_label("4.17"))
    assert (("A", 1),) not in multisets
    assert (("A", 1), ("A", 1), ("A", 1), ("A", 1)) in multisets


def test_canonical_class_solves_adjunction():
    for lab in ("6.3", "4.21", "2.D4"):
        g = cat.negative_curve_graph(cat.by_label(lab))
        coords = traces.canonical_class_coordinates(g)
        n = len(g.self_int)
        for i in range(n):
            lhs = sum(
                coords[j]
                * (g.self_int[i] if i == j else Fraction(g.mult[i][j]))
                for j in range(n)
            )
            assert lhs == -2 - g.self_int[i]
