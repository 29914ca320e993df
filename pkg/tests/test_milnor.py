import itertools

import numpy as np
import pytest

from milnorck import catalog, delta, linking_matrix, milnor_table, mu_bar, mu_raw
from milnorck.diagram import DiagramError
from milnorck.milnor import MagnusData, MilnorIndex, MilnorValue, arc_expansion, r_of, shorter_indices
from milnorck.series import TruncatedSeries
from milnorck.wirtinger import presentation_from_pd

from conftest import ALL_LINKS, SMALL_LINKS


def test_series_examples():
    T = TruncatedSeries
    a = T.from_dict(1, 2, {(): 1, (1,): 1})
    b = T.from_dict(1, 2, {(): 1, (1,): -1, (1, 1): 1})
    assert a * b == T.one(1, 2)
    prod = T.generator(2, 2, 1) * T.generator(2, 2, 2)
    assert prod.to_dict() == {(): 1, (1,): 1, (2,): 1, (1, 2): 1}
    sq = T.generator(1, 3, 1) * T.generator(1, 3, 1)
    assert sq.to_dict() == {(): 1, (1,): 2, (1, 1): 1}
    assert T.generator(1, 3, 1).inverse().to_dict() == {(): 1, (1,): -1, (1, 1): 1, (1, 1, 1): -1}


def test_unlink_arcs_are_bare_generators():
    p = presentation_from_pd(catalog("unlink-3").pd)
    E = arc_expansion(p, 3)
    for arc, c in enumerate(p.arc_component):
        assert E[arc] == TruncatedSeries.generator(3, 3, c)


def test_index_parsing():
    assert MilnorIndex.parse("123123").entries == (1, 2, 3, 1, 2, 3)
    assert MilnorIndex.parse("1,12,3").entries == (1, 12, 3)
    assert MilnorIndex.parse("1122").r == 2
    with pytest.raises(DiagramError):
        MilnorIndex((1,))
    assert r_of((1, 1, 1, 2)) == 3


def test_residue_normalization():
    assert MilnorValue(5, 3).residue == 2
    assert MilnorValue(5, 3).signed_residue == -1
    assert MilnorValue(-2, 0).residue == -2


def test_hopf_values():
    assert mu_raw(catalog("hopf"), (1, 2)) == 1
    v = mu_bar(catalog("hopf"), (1, 2))
    assert (v.value, v.delta) == (1, 0)
    assert delta(catalog("hopf"), (2, 1)) == 0


def test_borromean_triple():
    b = catalog("borromean")
    assert abs(mu_raw(b, (1, 2, 3))) == 1
    assert delta(b, (1, 2, 3)) == 0


def test_unlink_vanishes():
    table = milnor_table(catalog("unlink-3"), 4)
    assert all(v.value == 0 and v.residue == 0 for v in table.values())


def test_whitehead_sato_levine():
    v = mu_bar(catalog("whitehead"), (1, 1, 2, 2))
    assert (abs(v.value), v.delta) == (1, 0)


def test_invalid_index():
    with pytest.raises(DiagramError):
        mu_raw(catalog("hopf"), (1, 3))
    with pytest.raises(DiagramError):
        mu_raw(catalog("hopf"), (1,))


def test_shorter_indices():
    assert shorter_indices((1, 2)) == set()
    assert (2, 1) in shorter_indices((1, 2, 3, 1))
    assert (3, 1) in shorter_indices((1, 2, 3))


@pytest.mark.parametrize("name", ALL_LINKS)
def test_degree_one_is_linking_number(name):
    d = catalog(name)
    data = MagnusData(d, 1)
    lk = linking_matrix(d)
    n = d.n_components
    for i, j in itertools.permutations(range(1, n + 1), 2):
        assert data.mu_raw((i, j)) == lk[i - 1, j - 1]


def test_degree_one_on_random_diagrams(randomized):
    for d in randomized:
        data = MagnusData(d, 1)
        lk = linking_matrix(d)
        for i, j in itertools.permutations(range(1, d.n_components + 1), 2):
            assert data.mu_raw((i, j)) == lk[i - 1, j - 1]


@pytest.mark.parametrize("name", ["hopf", "whitehead", "borromean", "trefoil", "wh-wh-hopf"])
def test_stabilization(name):
    p = presentation_from_pd(catalog(name).pd)
    q = 4
    a, b = arc_expansion(p, q), arc_expansion(p, q, rounds=q + 1)
    assert a == b
    c = arc_expansion(p, q + 1)
    assert all(x == y.truncate(q) for x, y in zip(a, c))


@pytest.mark.parametrize("name", ["whitehead", "borromean", "borromean-alt", "whitehead-alt"])
def test_base_arc_independence(name):
    d = catalog(name)
    ref = milnor_table(d, 5)
    p = presentation_from_pd(d.pd)
    for shift in itertools.product(*[range(len(p.arcs[c])) for c in range(1, d.n_components + 1)]):
        other = milnor_table(d, 5, base_shift=shift)
        for I, v in ref.items():
            w = other[I]
            assert v.delta == w.delta
            assert v.residue == w.residue


@pytest.mark.parametrize("name", ["whitehead", "borromean", "wh-double-borromean"])
def test_cyclic_symmetry(name):
    table = milnor_table(catalog(name), 5 if name != "wh-double-borromean" else 6, max_r=2)
    for I, v in table.items():
        J = I[1:] + I[:1]
        if J in table:
            assert v.residue == table[J].residue


@pytest.mark.parametrize("name", ["hopf", "trefoil", "whitehead", "borromean", "unknot",
                                  "wh-double-borromean", "wh-wh-hopf"])
def test_isotopic_diagrams_agree(name):
    max_len = 6 if name in ("borromean", "whitehead", "hopf") else 5
    a = milnor_table(catalog(name), max_len)
    b = milnor_table(catalog(name + "-alt"), max_len)
    for I in a:
        assert a[I].delta == b[I].delta
        assert a[I].residue == b[I].residue


def test_whitehead_double_borromean_values():
    data = MagnusData(catalog("wh-double-borromean"), 5)
    assert data.delta((1, 2, 3, 1, 2, 3)) == 0
    assert abs(data.mu_raw((1, 2, 3, 1, 2, 3))) == 2
    assert abs(data.mu_raw((1, 1, 2, 3, 2, 3))) == 1
