import pytest

tsdkit = pytest.importorskip("tsdkit")


def test_builtin_names():
    names = tsdkit.builtin_names()
    assert set(names) == {"e8", "e7dual", "icosahedron"}


def test_builtin_designs():
    e8 = tsdkit.Design.builtin("e8")
    assert e8.n == 8
    assert e8.size == 240
    assert e8.norm == "2"
    e7 = tsdkit.Design.builtin("e7dual")
    assert e7.n == 7
    assert e7.size == 56
    with pytest.raises(Exception):
        tsdkit.Design.builtin("leech")


def test_strength():
    e7 = tsdkit.Design.builtin("e7dual")
    assert e7.strength(5)
    assert not e7.strength(7)


def test_moment_sum():
    e8 = tsdkit.Design.builtin("e8")
    alpha = ["1"] + ["0"] * 7
    assert e8.moment_sum(alpha, 0) == "240"
    assert e8.moment_sum(alpha, 2) == "60"
    assert e8.moment_sum(alpha, 3) == "0"


def test_design_report():
    rep = tsdkit.design_report(tsdkit.Design.builtin("e7dual"), t=5)
    assert rep["pass"]
    assert rep["n"] == 7
    assert rep["size"] == 56
    assert rep["strength"]["pass"]
    assert rep["tight"]["ok"]
    assert rep["spectrum"]["tight5_compatible"]


def test_lattice_report():
    rep = tsdkit.lattice_report(tsdkit.Design.builtin("e7dual"))
    assert rep["det"] == "64"
    assert not rep["even"]
    sub = rep["even_sublattice"]
    assert sub["gamma_det"] == "2"
    assert sub["gamma_gauss_sum"]["eighth_root"] == 7


def test_sieve():
    out = tsdkit.run_sieve(7, 2, 21)
    assert len(out["verdicts"]) == 20
    assert out["summary"]["excluded"] == [4, 5, 7, 8, 9, 11, 12, 13, 16, 19, 20, 21]
    assert out["summary"]["known_exists"] == [2, 3]
    assert out["summary"]["open"] == [6, 10, 14, 15, 17, 18]


def test_verdict():
    v = tsdkit.verdict(7, 13)
    assert v["status"] == "Excluded"
    codes = [r["code"] for r in v["reasons"]]
    assert "T-oddd-a" in codes and "T-oddd-b" in codes


def test_verify_table():
    rep = tsdkit.verify_table()
    assert rep["pass"]
    assert len(rep["cells"]) == 24


def test_classify_cell():
    cell = tsdkit.classify_cell(3, 0)
    assert cell["label"] == "c0"
    assert cell["conclusion"] == "b-even"
    cell = tsdkit.classify_cell(5, 0)
    assert cell["conclusion"] == "contradiction"


def test_file_round_trip(tmp_path):
    e7 = tsdkit.Design.builtin("e7dual")
    path = str(tmp_path / "e7dual.design")
    e7.save(path)
    back = tsdkit.Design.load(path)
    assert back.n == 7
    assert back.size == 56
    assert back.moment_sum(["1", "0", "0", "0", "0", "0", "0"], 2) == e7.moment_sum(
        ["1", "0", "0", "0", "0", "0", "0"], 2
    )
