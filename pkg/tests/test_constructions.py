import itertools
import json
import random

import numpy as np
import pytest

from milnorck import catalog, component_data, linking_matrix, mu_bar
from milnorck.constructions import (BudgetExceeded, Leaf, TreeClasper, add_kinks, band_sum,
                                    bing_double, cable, caterpillar, clasper_surgery, permute,
                                    random_cmk_clasper, random_self_ck_move, random_tree,
                                    realization_clasper, realize_milnor, tree_link, unlink,
                                    whitehead_double)
from milnorck.diagram import DiagramError, LinkDiagram
from milnorck.milnor import MagnusData, milnor_table

from conftest import SMALL_LINKS


def test_cable_of_unknot_is_unlink():
    d, h = cable(catalog("unknot"), [2])
    assert d.n_components == 2 and h == (1, 1)
    assert linking_matrix(d).tolist() == [[0, 0], [0, 0]]


@pytest.mark.parametrize("name", ["trefoil", "whitehead", "borromean", "hopf"])
def test_cable_copies_have_zero_linking(name):
    d = catalog(name)
    mult = [3] + [2] * (d.n_components - 1)
    c, h = cable(d, mult)
    lk = linking_matrix(c)
    src = linking_matrix(d)
    for a, b in itertools.combinations(range(len(h)), 2):
        expected = 0 if h[a] == h[b] else src[h[a] - 1, h[b] - 1]
        assert lk[a, b] == expected


def test_cable_needs_matching_multiplicities():
    with pytest.raises(DiagramError):
        cable(catalog("hopf"), [2])
    with pytest.raises(DiagramError):
        cable(LinkDiagram(None, (), catalog("hopf").pd), [1, 1])


def test_bing_double_of_hopf_is_borromean():
    d = bing_double(catalog("hopf"), 1)
    assert d.n_components == 3
    assert not linking_matrix(d).any()
    assert abs(mu_bar(d, (1, 2, 3)).value) == 1


def test_bing_double_of_split_unknot():
    d = bing_double(catalog("unlink-2"), 2)
    assert d.n_components == 3
    assert not any(v.value for v in milnor_table(d, 3).values())


def test_whitehead_double_of_unknot_stays_a_knot():
    for s in (1, -1):
        assert whitehead_double(catalog("unknot"), 1, s).n_components == 1


def test_whitehead_double_kills_linking():
    d = whitehead_double(whitehead_double(catalog("hopf"), 1, 1), 2, -1)
    assert d.n_components == 2 and not linking_matrix(d).any()
    with pytest.raises(DiagramError):
        whitehead_double(catalog("hopf"), 1, 0)


def test_band_sum_of_unlink_is_unknot():
    d = band_sum(catalog("unlink-2"), 1, 2)
    assert (d.n_components, d.n_crossings) == (1, 0)


def test_band_sum_route_directives():
    u = catalog("unlink-3")
    # strands at level 3: 0,1 comp 1; 2,3 comp 2; 4,5 comp 3; band from 1 to 4 crosses two strands
    d = band_sum(u, 1, 3, route=(3, 1, 4, ["+", "-"]))
    assert d.n_components == 2 and d.n_crossings == 4
    with pytest.raises(DiagramError):
        band_sum(u, 1, 3, route=(3, 1, 4, ["+"]))
    with pytest.raises(DiagramError):
        band_sum(u, 1, 1)


def test_band_sum_preserves_other_components():
    d = band_sum(catalog("borromean"), 1, 2)
    assert d.n_components == 2
    assert component_data(d)["lk"].shape == (2, 2)


def test_tree_link_shapes():
    assert abs(mu_bar(tree_link((0, 1)), (1, 2)).value) == 1
    b = tree_link(((0, 1), 2))
    assert b.n_components == 3 and abs(mu_bar(b, (1, 2, 3)).value) == 1
    assert not component_data(b)["writhe"].any()
    with pytest.raises(DiagramError):
        tree_link(0)


def test_degree_one_clasper_on_unlink_gives_hopf():
    t = TreeClasper((0, 1), (Leaf(1, 0), Leaf(2, 2)), level=2)
    d = clasper_surgery(catalog("unlink-2"), t)
    assert abs(linking_matrix(d)[0, 1]) == 1


def test_y_clasper_on_unlink_gives_borromean():
    t = TreeClasper(((0, 1), 2), (Leaf(1, 0), Leaf(2, 2), Leaf(3, 4)), level=3)
    d = clasper_surgery(catalog("unlink-3"), t)
    assert not linking_matrix(d).any()
    assert abs(mu_bar(d, (1, 2, 3)).value) == 1
    assert any(p.startswith("clasper ") for p in d.provenance)


def test_clasper_validation():
    u = catalog("unlink-2")
    with pytest.raises(DiagramError):
        clasper_surgery(u, TreeClasper((0, 1), (Leaf(1, 2), Leaf(2, 2)), level=2))
    with pytest.raises(DiagramError):
        clasper_surgery(u, TreeClasper((0, 1), (Leaf(1, 0), Leaf(2, 2)), level=0))
    with pytest.raises(DiagramError):
        TreeClasper((0, 2), (Leaf(1, 0), Leaf(2, 2)), level=2)


def test_clasper_json_round_trip():
    t = TreeClasper(((0, 2), 1), (Leaf(1, 0, -1), Leaf(2, 2), Leaf(1, 1)), level=3, sign=-1)
    again = TreeClasper.from_json(json.loads(json.dumps(t.to_json())))
    assert again == t
    assert t.degree == 2 and not t.is_self


def test_crossing_budget():
    with pytest.raises(BudgetExceeded):
        cable(catalog("borromean"), [3, 3, 3], budget=20)


def test_realize_small_indices():
    assert abs(mu_bar(realize_milnor((1, 2)), (1, 2)).value) == 1
    d = realize_milnor((1, 2, 3))
    assert abs(mu_bar(d, (1, 2, 3)).value) == 1 and not linking_matrix(d).any()


@pytest.mark.parametrize("index", [(1, 1, 2, 2), (1, 1, 2, 2, 3), (1, 2, 3, 4)])
def test_realize_has_unit_value_and_vanishing_lower(index):
    d = realize_milnor(index)
    v = MagnusData(d, len(index) - 1).mu_bar(index)
    assert abs(v.value) == 1 and v.delta == 0
    assert realize_milnor(index).word == d.word


def test_realize_refuses_forced_zero_indices():
    # shuffle relations make mu(112) and mu(1112) vanish whenever lk = 0
    for index in [(1, 1, 2), (1, 1, 1, 2)]:
        with pytest.raises(DiagramError):
            realize_milnor(index)
    with pytest.raises(DiagramError):
        realize_milnor((1, 3))


def test_realization_clasper_has_repeated_leaves():
    t = realization_clasper((1, 1, 2, 2))
    counts = sorted(sum(1 for lf in t.leaves if lf.component == c) for c in (1, 2))
    assert counts == [1, 2]


def test_random_tree_is_binary_on_all_leaves():
    rng = random.Random(3)
    for k in range(1, 6):
        t = random_tree(k, rng)
        flat = []

        def walk(s):
            if isinstance(s, int):
                flat.append(s)
            else:
                assert len(s) == 2
                walk(s[0])
                walk(s[1])
        walk(t)
        assert sorted(flat) == list(range(k + 1))


def test_random_move_is_deterministic():
    d = catalog("borromean")
    a = random_self_ck_move(d, 2, 2, 99)
    b = random_self_ck_move(d, 2, 2, 99)
    assert a.word == b.word and a.order == b.order


def test_self_move_keeps_linking_matrix():
    for seed in range(6):
        for name in ("hopf", "whitehead", "borromean", "unlink-2"):
            d = catalog(name)
            d2 = random_self_ck_move(d, 1, 1, seed)
            assert np.array_equal(linking_matrix(d), linking_matrix(d2))


def test_k2_move_keeps_borromean_triple():
    d = catalog("borromean")
    for seed in range(5):
        d2 = random_self_ck_move(d, 1, 2, seed)
        assert mu_bar(d2, (1, 2, 3)).value == mu_bar(d, (1, 2, 3)).value


def test_cmk_clasper_leaf_counts():
    d = catalog("borromean")
    t = random_cmk_clasper(d, 3, 2, 2, random.Random(5))
    assert len(t.leaves) == 4
    assert sum(1 for lf in t.leaves if lf.component == 2) >= 2


def test_permute_and_kinks():
    d = catalog("borromean")
    p = permute(d, [3, 1, 2])
    assert mu_bar(p, (2, 3, 1)).value == mu_bar(d, (1, 2, 3)).value
    k = add_kinks(catalog("unknot"), [2])
    assert component_data(k)["writhe"].tolist() == [2]
    with pytest.raises(DiagramError):
        permute(d, [1, 1, 2])


def test_unlink_builder():
    assert unlink(4).n_components == 4 and unlink(4).n_crossings == 0
