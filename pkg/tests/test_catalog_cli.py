import json

import numpy as np
import pytest

from milnorck import catalog, conway, jones, linking_matrix
from milnorck.catalog import ENTRIES, catalog_names, entry
from milnorck.cli import run_command
from milnorck.diagram import DiagramError, pd_to_json
from milnorck.milnor import MagnusData, MilnorIndex


def test_unknown_name():
    with pytest.raises(DiagramError):
        catalog("granny")
    assert "unlink-<n>" in catalog_names()


def test_unlink_entry():
    d = catalog("unlink-3")
    assert (d.n_components, d.n_crossings) == (3, 0)


@pytest.mark.parametrize("name", list(ENTRIES))
def test_expected_values_rederived(name):
    e = entry(name)
    d = e.build()
    exp = e.expected
    if "components" in exp:
        assert d.n_components == exp["components"]
    if "lk" in exp:
        assert linking_matrix(d).tolist() == exp["lk"]
    if "jones" in exp:
        assert jones(d).to_json() == exp["jones"]
    if "conway" in exp:
        assert list(conway(d).coeffs) == exp["conway"]
    for text, value in exp.get("mu", {}).items():
        I = MilnorIndex.parse(text).entries
        assert MagnusData(d, len(I) - 1).mu_raw(I) == value
    for alt in e.alternates:
        assert catalog(alt).n_components == d.n_components


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_milnor(capsys):
    code, out, _ = run(capsys, "milnor", "--link", "borromean", "--index", "123")
    assert code == 0 and out.strip() == "value -1, delta 0"
    code, out, _ = run(capsys, "milnor", "--link", "hopf", "--index", "12", "--json")
    assert json.loads(out) == {"I": [1, 2], "value": 1, "delta": 0, "residue": 1}
    code, out, _ = run(capsys, "milnor", "--link", "borromean", "--max-len", "3", "--json")
    assert len(json.loads(out)["nonzero"]) == 6


def test_cli_jones_matches_reference(capsys):
    code, out, _ = run(capsys, "jones", "--link", "wh-wh-hopf")
    assert code == 0
    assert out.strip() == ("q^(-9/2) - 2q^(-7/2) + q^(-5/2) - q^(-3/2) - q^(3/2) "
                           "+ q^(5/2) - 2q^(7/2) + q^(9/2)")


def test_cli_other_commands(capsys):
    assert run(capsys, "conway", "--link", "trefoil")[1].strip() == "1 + z^2"
    assert run(capsys, "lk", "--link", "hopf", "--json")[1].strip() == '{"lk": [[0, 1], [1, 0]]}'
    code, out, _ = run(capsys, "bing", "--link", "hopf", "--json")
    assert code == 0 and json.loads(out)["components"] == 3
    code, out, _ = run(capsys, "whitehead-double", "--link", "hopf", "--clasp-sign", "-1")
    assert code == 0 and out.startswith("# 2 components")
    code, out, _ = run(capsys, "cable", "--link", "trefoil", "--mult", "2", "--json")
    assert json.loads(out)["index_map"] == [1, 1]
    code, out, _ = run(capsys, "realize", "--index", "123", "--json")
    assert abs(json.loads(out)["mu"]["value"]) == 1
    code, out, _ = run(capsys, "catalog", "list")
    assert "wh-double-borromean" in out
    code, out, _ = run(capsys, "catalog", "show", "borromean", "--json")
    assert json.loads(out)["crossings"] == 6


def test_cli_files(tmp_path, capsys):
    word = tmp_path / "hopf.txt"
    word.write_text("cup 0 R\ncup 2 L\nx+ 1\nx+ 1\ncap 2\ncap 0\n")
    assert run(capsys, "lk", "--link", str(word))[1].split() == ["0", "1", "1", "0"]
    pd = tmp_path / "trefoil.json"
    pd.write_text(pd_to_json(catalog("trefoil").pd))
    assert run(capsys, "jones", "--link", str(pd))[1].strip() == "q + q^3 - q^4"
    clasper = tmp_path / "y.json"
    clasper.write_text(json.dumps({"tree": [[0, 1], 2], "level": 3, "sign": 1, "leaves": [
        {"component": 1, "pos": 0}, {"component": 2, "pos": 2}, {"component": 3, "pos": 4}]}))
    code, out, _ = run(capsys, "clasper", "--link", "unlink-3", "--clasper", str(clasper), "--json")
    assert code == 0 and json.loads(out)["components"] == 3


def test_cli_exit_codes(capsys, tmp_path):
    assert run(capsys, "jones", "--link", "nope")[0] == 1
    assert run(capsys, "milnor", "--link", "hopf", "--index", "13")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("cup 0 R\n")
    assert run(capsys, "lk", "--link", str(bad))[0] == 1
    assert run(capsys, "cable", "--link", "borromean", "--mult", "3,3,3", "--crossing-budget", "20")[0] == 2
    assert run(capsys, "jones", "--link", "wh-wh-hopf", "--crossing-budget", "5")[0] == 2


def test_cli_verify_is_deterministic(capsys):
    argv = ["verify", "theorem1", "--k", "2", "--trials", "4", "--seed", "7", "--json", "--max-len", "5"]
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a == b and a[0] == 0
    assert json.loads(a[1])["passed"] is True
