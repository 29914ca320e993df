import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from milnorck import catalog, component_data, from_word, linking_matrix, mirror, parse_slice_word, sublink
from milnorck.diagram import (DiagramError, Event, LinkDiagram, braid_closure, disjoint_union,
                              format_slice_word, pd_from_json, pd_to_json, reverse, slice_to_pd,
                              validate)

from conftest import ALL_LINKS


def test_empty_word_is_valid_with_no_components():
    assert validate(()) == []
    assert from_word(()).n_components == 0


def test_round_unknot():
    d = from_word(parse_slice_word("cup 0 R\ncap 0"))
    assert (d.n_components, d.n_crossings) == (1, 0)
    assert d.pd.crossings == ()
    assert d.pd.n_components == 1


def test_open_strands_rejected():
    errors = validate(parse_slice_word("cup 0 R; cup 2 R; cap 0"))
    assert any("open strands at end" in e for e in errors)
    with pytest.raises(DiagramError):
        from_word(parse_slice_word("cup 0 R; cup 2 R; cap 0"))


def test_position_out_of_range_rejected():
    assert validate(parse_slice_word("cup 0 R; x+ 1; cap 0"))
    assert validate(parse_slice_word("cap 0"))


def test_cap_needs_opposite_orientations():
    # strand 1 goes up from the first cup and strand 2 up from the second
    assert validate(parse_slice_word("cup 0 R; cup 2 L; cap 1; cap 0"))


def test_parse_format_round_trip():
    text = "cup 0 R\ncup 2 L\nx+ 1\nx- 1\ncap 2\ncap 0\n"
    assert format_slice_word(parse_slice_word(text)) == text
    with pytest.raises(DiagramError):
        parse_slice_word("flip 3")
    assert parse_slice_word("# only a comment\n\ncup 0 R # trailing\ncap 0") == (
        Event("cup", 0, "R"), Event("cap", 0))


def test_hopf_pd_and_lk():
    d = catalog("hopf")
    assert d.pd.n_components == 2
    assert len(d.pd.crossings) == 2
    assert d.pd.signs() == (1, 1)
    assert linking_matrix(d).tolist() == [[0, 1], [1, 0]]


def test_trefoil_counts():
    d = catalog("trefoil")
    assert (d.n_crossings, d.n_components) == (3, 1)
    assert component_data(d)["writhe"].tolist() == [3]


def test_unlink_data():
    data = component_data(catalog("unlink-2"))
    assert data["lk"].tolist() == [[0, 0], [0, 0]]
    assert data["writhe"].tolist() == [0, 0]


def test_whitehead_diagram_has_self_writhe():
    data = component_data(catalog("whitehead"))
    assert data["lk"][0, 1] == 0
    assert any(data["writhe"] != 0)


@pytest.mark.parametrize("name", ALL_LINKS)
def test_slice_and_pd_agree_on_components(name):
    d = catalog(name)
    assert d.validate() == []
    assert d.pd.validate() == []
    assert d.pd.n_components == d.n_components
    assert len(d.pd.crossings) == d.n_crossings


@pytest.mark.parametrize("name", ALL_LINKS)
def test_mirror_negates_lk_and_writhe(name):
    d = catalog(name)
    a, b = component_data(d), component_data(mirror(d))
    assert np.array_equal(a["lk"], -b["lk"])
    assert np.array_equal(a["writhe"], -b["writhe"])
    assert mirror(mirror(d)).word == d.word


def test_mirror_of_imported_pd():
    d = catalog("hopf")
    imported = LinkDiagram(None, (), d.pd)
    assert linking_matrix(mirror(imported)).tolist() == [[0, -1], [-1, 0]]


def test_sublink_of_borromean_is_unlinked():
    b = catalog("borromean")
    for pair in ([1, 2], [2, 3], [1, 3]):
        s = sublink(b, pair)
        assert s.n_components == 2
        assert linking_matrix(s).tolist() == [[0, 0], [0, 0]]
    with pytest.raises(DiagramError):
        sublink(b, [])


def test_sublink_matches_minor(randomized):
    for d in randomized[:10]:
        n = d.n_components
        if n < 2:
            continue
        full = linking_matrix(d)
        keep = [1, n]
        assert np.array_equal(linking_matrix(sublink(d, keep)), full[np.ix_([0, n - 1], [0, n - 1])])


def test_disjoint_union_of_unknots():
    u = catalog("unknot")
    d = disjoint_union(u, u)
    assert (d.n_components, d.n_crossings) == (2, 0)


def test_reverse_flips_linking_sign():
    d = reverse(catalog("hopf"), 2)
    assert linking_matrix(d)[0, 1] == -1


def test_pd_json_round_trip():
    pd = catalog("borromean").pd
    again = pd_from_json(pd_to_json(pd))
    assert again == pd
    data = json.loads(pd_to_json(pd))
    assert set(data) == {"crossings", "components"}


def test_pd_validation_catches_bad_labels():
    pd = catalog("hopf").pd
    broken = type(pd)(pd.crossings[:1], pd.component_of, pd.n_components)
    assert broken.validate()


def test_lk_symmetric_on_random_moves(randomized):
    for d in randomized:
        m = linking_matrix(d)
        assert np.array_equal(m, m.T)
        assert d.pd.n_components == d.n_components


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=8))
def test_braid_closures_are_consistent(braid):
    d = from_word(braid_closure(braid, 3))
    assert d.validate() == []
    m = linking_matrix(d)
    assert np.array_equal(m, m.T)
    # writhes plus twice the linking numbers recover the total crossing sum
    assert sum(component_data(d)["writhe"]) + m.sum() == sum(d.pd.signs())
    assert d.n_crossings == len(braid)


def test_slice_to_pd_labels_follow_components():
    pd = slice_to_pd(catalog("whitehead").word)
    edges = pd.components_edges()
    assert sorted(edges) == [1, 2]
    assert sum(len(v) for v in edges.values()) == 2 * len(pd.crossings)
