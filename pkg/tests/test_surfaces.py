from __future__ import annotations

import json
import random

import pytest

from delpezzo import hunt as hunt_mod
from delpezzo.fields import field
from delpezzo.surfaces import (
    G2_MONOMIALS,
    G4_MONOMIALS,
    Q5_MONOMIALS,
    QUADRIC_COUNTS,
    DegreeTwoSurface,
    dp4_normal_form,
    eval_form,
    eval_partial,
    evaluate,
    is_singular_point,
    load_surface,
    monomials,
    plane_curve_points,
    projective_points,
    quadric_intersection_count,
    quadric_report,
    singular_on_intersection,
    surface_from_json,
    surface_report,
    surface_to_json,
    wps_points,
)


def known(key):
    g2, g4 = hunt_mod.KNOWN_EXAMPLES_Q2[key]
    return DegreeTwoSurface(spec=field(2), g2=g2, g4=g4)


def test_monomial_bases():
    assert len(monomials(3, 2)) == 6
    assert len(monomials(3, 4)) == 15
    assert len(monomials(5, 2)) == 15
    assert G4_MONOMIALS[0] == (4, 0, 0)
    assert G4_MONOMIALS[-1] == (0, 0, 4)
    assert G2_MONOMIALS == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert all(sum(e) == 2 for e in Q5_MONOMIALS)


def test_point_enumerations():
    for q, spec in ((2, field(2)), (3, field(3)), (4, field(2, 2)), (9, field(3, 2))):
        assert len(projective_points(spec, 2)) == q * q + q + 1
        pts = projective_points(spec, 2)
        assert len(set(pts)) == len(pts)
    assert len(wps_points(field(2))) == 15
    assert len(wps_points(field(3))) == 40


def test_eval_partial_char2():
    spec = field(2)
    coeffs = tuple(1 if e == (2, 0, 0) else 0 for e in G2_MONOMIALS)  # x^2
    assert eval_partial(spec, coeffs, G2_MONOMIALS, 0, (1, 1, 1)) == 0
    coeffs = tuple(1 if e == (1, 1, 0) else 0 for e in G2_MONOMIALS)  # xy
    assert eval_partial(spec, coeffs, G2_MONOMIALS, 0, (1, 1, 0)) == 1
    assert eval_partial(spec, coeffs, G2_MONOMIALS, 1, (1, 0, 1)) == 1


def test_known_surface_reports():
    rep = surface_report(known("A1"))
    assert rep.points == rep.singular == ((1, 0, 0, 0),)
    assert rep.smooth == ()
    rep = surface_report(known("3A1"))
    assert set(rep.points) == {(0, 1, 0, 0), (0, 0, 1, 0), (0, 1, 1, 1)}
    assert rep.smooth == ()
    rep = surface_report(known("D4"))
    assert rep.points == ((1, 0, 0, 0),)


def test_report_partition():
    rng = random.Random(5)
    for spec in (field(2), field(3), field(2, 2)):
        for _ in range(5):
            s = DegreeTwoSurface(
                spec=spec,
                g2=tuple(rng.randrange(spec.q) for _ in range(6)),
                g4=tuple(rng.randrange(spec.q) for _ in range(15)),
            )
            rep = surface_report(s)
            assert set(rep.points) == set(rep.singular) | set(rep.smooth)
            assert not set(rep.singular) & set(rep.smooth)
            for pt in rep.points:
                assert evaluate(s, pt) == 0


def test_scaling_invariance():
    rng = random.Random(17)
    for spec in (field(2), field(3), field(5), field(3, 2)):
        for _ in range(6):
            s = DegreeTwoSurface(
                spec=spec,
                g2=tuple(rng.randrange(spec.q) for _ in range(6)),
                g4=tuple(rng.randrange(spec.q) for _ in range(15)),
            )
            pt = tuple(rng.randrange(spec.q) for _ in range(4))
            lam = rng.randrange(1, spec.q)
            scaled = (
                spec.mul(lam, pt[0]), spec.mul(lam, pt[1]),
                spec.mul(lam, pt[2]), spec.mul(spec.mul(lam, lam), pt[3]),
            )
            assert evaluate(s, scaled) == spec.mul(spec.pow_(lam, 4), evaluate(s, pt))


def test_singularity_chart_consistent_under_rescaling():
    # the verdict may be computed in any chart; rescaling the homogeneous
    # representative must not change it
    s = known("3A1")
    spec = s.spec
    for pt in surface_report(s).points:
        assert is_singular_point(s, pt)


def test_surface_json_round_trip(tmp_path):
    s = known("D4")
    d = surface_to_json(s)
    assert surface_from_json(d) == s
    path = tmp_path / "surf.json"
    path.write_text(json.dumps(d))
    assert load_surface(str(path)) == s


def test_surface_json_f9():
    s = DegreeTwoSurface(spec=field(3, 2), g2=(0,) * 6, g4=(1,) + (0,) * 14)
    d = surface_to_json(s)
    assert d["modulus"] == [2, 2, 1]
    assert surface_from_json(d) == s


def test_load_surface_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"p": 3, "k": 1}')
    with pytest.raises((ValueError, KeyError)):
        load_surface(str(path))


def test_plane_curve_points():
    spec = field(3)
    xy = tuple(1 if e == (1, 1, 0) else 0 for e in G2_MONOMIALS)
    assert len(plane_curve_points(spec, xy, G2_MONOMIALS)) == 7
    with pytest.raises(ValueError):
        plane_curve_points(spec, (0,) * 6, G2_MONOMIALS)


QUADRIC_EXAMPLES = [
    # (matrix over F_3, kind)
    ([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], "hyperbolic"),
    ([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]], "cone"),
    ([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], "repeated_plane"),
    ([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], "elliptic"),
    ([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], "line"),
    ([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], "plane_pair"),
]


@pytest.mark.parametrize("matrix,kind", QUADRIC_EXAMPLES)
def test_quadric_classification(matrix, kind):
    spec = field(3)
    rep = quadric_report(spec, matrix)
    assert rep.kind == kind
    assert rep.count == QUADRIC_COUNTS[kind](3)


def test_quadric_input_validation():
    spec = field(3)
    with pytest.raises(ValueError):
        quadric_report(spec, [[0] * 4] * 4)
    with pytest.raises(ValueError):
        quadric_report(spec, [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        quadric_report(spec, [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    with pytest.raises(ValueError):
        quadric_report(field(2), [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def test_dp4_normal_form():
    spec = field(3)
    g = tuple(range(10))
    h = tuple(1 for _ in range(10))
    f1, f2 = dp4_normal_form(spec, [x % 3 for x in g], list(h))
    e0 = (1, 0, 0, 0, 0)
    assert eval_form(spec, f1, Q5_MONOMIALS, e0) == 0
    assert eval_form(spec, f2, Q5_MONOMIALS, e0) == 0
    assert singular_on_intersection(spec, f1, f2, e0)
    n = quadric_intersection_count(spec, f1, f2)
    assert n >= 3 * 3 - 2 * 3 + 1


def test_dp4_normal_form_rejects_bad_sizes():
    with pytest.raises(ValueError):
        dp4_normal_form(field(3), [0] * 9, [0] * 10)
