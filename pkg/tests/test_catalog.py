from __future__ import annotations

import pytest

from delpezzo import catalog as cat
from delpezzo import lattice


def test_builtin_loads_and_validates():
    classes = cat.builtin_catalog()
    assert len(classes) == 50
    per_degree = {}
    for c in classes:
        per_degree[c.degree] = per_degree.get(c.degree, 0) + 1
    assert per_degree == {8: 1, 7: 1, 6: 6, 5: 7, 4: 24, 2: 11}


def test_labels_unique():
    classes = cat.builtin_catalog()
    assert len({c.label for c in classes}) == len(classes)


def test_degree7_lines_by_hand():
    c = cat.by_label("7.1")
    ls = cat.lines(c)
    assert set(ls) == {(0, 0, 1), (1, -1, -1)}


def test_effectivity_filter_worked_example():
    # one A1 root e1-e2 at degree 4 kills e1 and l2j for j = 3, 4, 5
    c = cat.SingularityClass(
        degree=4, label="tmp", dynkin="A1", rational="A1",
        simple_roots=((0, 1, -1, 0, 0, 0),), expected_lines=12,
    )
    ls = set(cat.lines(c))
    assert len(ls) == 12
    excluded = set(lattice.enumerate_exceptional(5)) - ls
    assert excluded == {
        (0, 1, 0, 0, 0, 0),
        (1, 0, -1, -1, 0, 0),
        (1, 0, -1, 0, -1, 0),
        (1, 0, -1, 0, 0, -1),
    }


def test_graph_shape_63():
    c = cat.by_label("6.3")
    g = cat.negative_curve_graph(c)
    assert g.degree == 6
    assert list(g.self_int).count(-2) == 2
    assert list(g.self_int).count(-1) == 2
    assert g.root_indices == (0, 1)
    for i in range(len(g.self_int)):
        for j in range(len(g.self_int)):
            assert g.mult[i][j] == g.mult[j][i]
            if i != j:
                assert g.mult[i][j] >= 0
    assert len(g.labels) == 4


def test_root_components_and_types():
    g = cat.negative_curve_graph(cat.by_label("4.13"))  # A1+A3
    types = tuple(sorted(t for t, _ in cat.component_types(g)))
    assert types == (("A", 1), ("A", 3))


def test_parse_dynkin():
    assert cat.parse_dynkin("A1") == (("A", 1),)
    assert cat.parse_dynkin("2A1+A3") == (("A", 1), ("A", 1), ("A", 3))
    assert cat.parse_dynkin("[3A1]'") == (("A", 1), ("A", 1), ("A", 1))
    assert cat.parse_dynkin("D4") == (("D", 4),)
    assert cat.parse_dynkin("") == ()


def test_format_dynkin_round_trip():
    for text in ("A1", "2A1", "A1+A2", "2A1+A3", "D4", "A4"):
        assert cat.format_dynkin(cat.parse_dynkin(text)) == text


def test_catalog_text_round_trip():
    classes = cat.builtin_catalog()
    text = cat.format_catalog(classes)
    again = cat.parse_catalog(text)
    assert again == classes


def test_validate_rejects_wrong_line_count():
    c = cat.by_label("6.3")
    broken = cat.SingularityClass(
        degree=c.degree, label=c.label, dynkin=c.dynkin,
        simple_roots=c.simple_roots, expected_lines=c.expected_lines + 1,
        rational=c.rational, verdict=c.verdict,
    )
    with pytest.raises(ValueError):
        cat.validate_class(broken)


def test_validate_rejects_non_root():
    with pytest.raises(ValueError):
        cat.validate_class(
            cat.SingularityClass(
                degree=6, label="bad", dynkin="A1", rational="A1",
                simple_roots=((0, 1, 1, 0),), expected_lines=3,
            )
        )


def test_by_label_unknown():
    with pytest.raises(KeyError):
        cat.by_label("9.9")


def test_adhoc_class_has_no_graph():
    c = cat.by_label("8.1")
    assert c.adhoc
    assert cat.lines(c) == ()
    with pytest.raises(ValueError):
        cat.negative_curve_graph(c)


def test_to_dot_mentions_labels():
    g = cat.negative_curve_graph(cat.by_label("6.3"))
    dot = cat.to_dot(g)
    assert dot.startswith("graph")
    for lab in g.labels:
        assert lab in dot


def test_json_dict_shape():
    g = cat.negative_curve_graph(cat.by_label("6.6"))
    d = cat.to_json_dict(g)
    assert d["degree"] == 6
    assert len(d["vertices"]) == len(g.labels)
    assert d["mult"] == [list(r) for r in g.mult]
    assert d["vertices"][0]["self_intersection"] == -2


def test_line_counts_match_catalog_column():
    for c in cat.builtin_catalog():
        if c.adhoc:
            continue
        assert len(cat.lines(c)) == c.expected_lines, c.label
