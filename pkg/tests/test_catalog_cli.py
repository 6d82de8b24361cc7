import json
import os

import pytest
from click.testing import CliRunner

from sdkit.catalog import (Catalog, CatalogEntry, format_entry, ingest, neighbor_catalog,
                           parse_code, parse_lattice, write_catalog)
from sdkit.classify import ClassificationReport, classify_length
from sdkit.cli import main
from sdkit.codes import are_equivalent, weight_distribution
from sdkit.constructors import builtin_codes, e4, g12
from sdkit.exceptions import CatalogError, ParseError, ValidationError
from sdkit.lattice import d_plus, integer_lattice
from sdkit.report import HEADER, render_report, render_table, table_from_dict
from sdkit.reproduce import PINNED, SCRIPTS, reproduce


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)
    return str(path)


# -- parsing and validation -------------------------------------------------------------------


def test_ingest_directory(tmp_path):
    write_catalog(Catalog([CatalogEntry("Z4", integer_lattice(4), "built-in"),
                           CatalogEntry("D_12+", d_plus(12), "built-in")]), tmp_path)
    cat = ingest(str(tmp_path))
    assert len(cat) == 2
    assert cat.names() == ["Z4", "D_12+"]
    assert all(e.kind == "lattice" for e in cat)


def test_nonsymmetric_gram(tmp_path):
    p = _write(tmp_path / "bad.lat", "2\n2 1\n0 2\n")
    with pytest.raises(ValidationError):
        ingest(p)


def test_non_positive_gram(tmp_path):
    p = _write(tmp_path / "bad.lat", "2\n1 2\n2 1\n")
    with pytest.raises(ValidationError):
        ingest(p)


def test_bad_digit_position(tmp_path):
    p = _write(tmp_path / "bad.code", "# name: x\n4 2\n1021\n0132\n")
    with pytest.raises(ParseError) as exc:
        ingest(p)
    assert exc.value.line == 4 and exc.value.column == 3
    assert "invalid GF(3) digit '3'" in str(exc.value)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_lattice("")
    with pytest.raises(ParseError, match="expected 2 Gram rows"):
        parse_lattice("2\n1 0\n")
    with pytest.raises(ParseError, match="expected an integer"):
        parse_lattice("1\nx\n")
    with pytest.raises(ParseError, match="expected 4 digits"):
        parse_code("4 1\n102\n")


def test_rank_deficient_code():
    with pytest.raises(ValidationError, match="rank deficient"):
        parse_code("4 2\n1021\n2012\n")


def test_duplicate_names():
    cat = Catalog([CatalogEntry("a", e4())])
    with pytest.raises(CatalogError):
        cat.add(CatalogEntry("a", g12()))


def test_metadata_and_comments():
    lat, meta = parse_lattice("# name: L_{24,154}\n# note: x\n1\n1  # trailing\n")
    assert meta == {"name": "L_{24,154}", "note": "x"}
    assert lat.rank == 1


def test_round_trip_byte_stable(tmp_path):
    entries = [CatalogEntry("L_{24,154}", d_plus(12), "file", {"source": "test"}),
               CatalogEntry("G12", g12(), "built-in"),
               CatalogEntry("E4", e4(), "built-in"),
               CatalogEntry("Z4", integer_lattice(4), "neighbor-derived")]
    write_catalog(Catalog(entries), tmp_path / "a")
    first = ingest(str(tmp_path / "a"))
    assert first.names() == [e.name for e in entries]
    write_catalog(first, tmp_path / "b")
    for f in sorted(os.listdir(tmp_path / "a")):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
    for e, f in zip(entries, first):
        assert format_entry(e) == format_entry(f)


def test_neighbor_catalog_small():
    assert neighbor_catalog(4).names() == ["Z4"]
    assert neighbor_catalog(8).names() == ["Z8", "E8"]


def test_neighbor_catalog_12(catalog12):
    assert sorted(catalog12.names()) == ["D12+", "E8+Z4", "Z12"]
    for e in catalog12:
        assert e.payload.determinant == 1


# -- reports ------------------------------------------------------------------------------------


def test_empty_report_header_only():
    table = render_table(ClassificationReport("L", 24, []))
    lines = table.splitlines()
    assert lines[0].split(" | ")[0].strip() == HEADER[0]
    assert table_from_dict(json.loads(render_report([])[1])) == render_table([])
    assert len(render_table([]).splitlines()) == 2


def test_length4_report_row():
    rep = classify_length(4, neighbor_catalog(4))
    table, doc = render_report(rep)
    assert "Z4 | 1 |   48" in table
    d = json.loads(doc)
    assert d["mass"]["passed"] and d["mass"]["total"] == "8"
    assert table_from_dict(d) == table


def test_row154_report(row154):
    _, rep = row154
    table, doc = render_report(rep)
    assert "154 | 1 | 72260812800" in table
    d = json.loads(doc)
    assert set(d) == {"lattice", "n", "N", "codes", "mass_contribution"}
    assert set(d["codes"][0]) == {"genmat", "aut_order", "beta3", "beta6", "decomposable"}
    assert d["codes"][0]["aut_order"] == "72260812800"


# -- reproduce ------------------------------------------------------------------------------------


def test_reproduce_mass4(tmp_path):
    ok, manifest, results, ck = reproduce("mass4", out_dir=str(tmp_path))
    assert ok and not ck.failures()
    m = json.loads((tmp_path / "mass4.manifest.json").read_text())
    assert m["passed"] and m["inputs"]["Z4"] == PINNED["Z4"]
    ok2, manifest2, _, _ = reproduce("mass4")
    assert manifest2.output_hash == manifest.output_hash


def test_reproduce_unknown():
    with pytest.raises(KeyError):
        reproduce("nope")
    assert {"mass4", "length12", "niemeier-a24"} <= set(SCRIPTS)


# -- command line -------------------------------------------------------------------------------------


@pytest.fixture
def runner():
    return CliRunner()


def test_cli_code_commands(runner, tmp_path):
    path = str(tmp_path / "g12.code")
    assert runner.invoke(main, ["code", "builtin", "g12", "--out", path]).exit_code == 0
    r = runner.invoke(main, ["code", "wenum", path])
    assert r.exit_code == 0 and r.output.split("\n")[:2] == ["0 1", "6 264"]
    r = runner.invoke(main, ["code", "aut", path])
    assert r.output.startswith("order 190080")
    r = runner.invoke(main, ["code", "mass", "-n", "12", path])
    assert r.exit_code == 1 and "deficit" in r.output
    r = runner.invoke(main, ["code", "decompose", path])
    assert r.output.count("support") == 1
    r = runner.invoke(main, ["code", "equiv", path, path])
    assert r.exit_code == 0 and r.output.startswith("equivalent")


def test_cli_lattice_commands(runner, tmp_path):
    z8 = str(tmp_path / "z8.lat")
    runner.invoke(main, ["lattice", "builtin", "Z8", "--out", z8])
    r = runner.invoke(main, ["lattice", "shortvec", z8, "--max-norm", "1"])
    assert len(r.output.splitlines()) == 8
    r = runner.invoke(main, ["lattice", "shadow", z8])
    assert r.output.strip() == "min shadow norm 2 count 256"
    e8 = str(tmp_path / "e8.lat")
    r = runner.invoke(main, ["lattice", "neighbor", z8, "--vector", "1,1,1,1,1,1,1,1",
                             "-p", "2", "--out", e8])
    assert r.exit_code == 0
    assert runner.invoke(main, ["lattice", "rootsys", e8]).output.strip() == "E8"
    r = runner.invoke(main, ["lattice", "iso", e8, z8])
    assert r.exit_code == 1 and "not isomorphic" in r.output
    r = runner.invoke(main, ["lattice", "aut", e8])
    assert r.output.startswith("order 696729600")


def test_cli_frames_and_classify(runner, tmp_path):
    z4 = str(tmp_path / "z4.lat")
    runner.invoke(main, ["lattice", "builtin", "Z4", "--out", z4])
    r = runner.invoke(main, ["frames", "graph", z4])
    assert r.output.startswith("vertices 16")
    r = runner.invoke(main, ["frames", "enumerate", z4, "--no-shadow-filter"])
    assert r.output.startswith("orbits 1")
    out = str(tmp_path / "z4.json")
    r = runner.invoke(main, ["classify", "--lattice", z4, "--json", out])
    assert r.exit_code == 0 and r.output.splitlines()[-1] == "Z4 | 1 |   48"
    r = runner.invoke(main, ["report", out])
    assert r.output.splitlines()[-1] == "Z4 | 1 |   48"
    cat = str(tmp_path / "cat")
    runner.invoke(main, ["catalog", "4", "--out", cat])
    r = runner.invoke(main, ["classify", "--length", "4", "--catalog", cat])
    assert "mass 8 / 8 pass" in r.output


def test_cli_cons_a_and_neighbor(runner, tmp_path):
    e4p = str(tmp_path / "e4.code")
    runner.invoke(main, ["code", "builtin", "e4", "--out", e4p])
    r = runner.invoke(main, ["cons-a", "--lemma1", e4p])
    assert r.exit_code == 0 and r.output.strip().endswith("pass")
    r = runner.invoke(main, ["cons-a", e4p])
    assert r.output.splitlines()[-5] == "4"
    eq2 = str(tmp_path / "eq2.code")
    runner.invoke(main, ["code", "builtin", "eq2_code", "--out", eq2])
    lt = str(tmp_path / "lt.lat")
    assert runner.invoke(main, ["neighbor", "--twisted", eq2, "--out", lt]).exit_code == 0
    assert runner.invoke(main, ["lattice", "rootsys", lt]).output.strip() == "A24"
    r = runner.invoke(main, ["code", "admissible", eq2])
    assert "admissible False" in r.output
    z8 = str(tmp_path / "z8.lat")
    runner.invoke(main, ["lattice", "builtin", "Z8", "--out", z8])
    r = runner.invoke(main, ["neighbor", "--even", z8])
    assert r.output.count("E8 roots 240") == 2


def test_cli_errors(runner, tmp_path):
    bad = _write(tmp_path / "bad.code", "4 2\n1021\n01x2\n")
    r = runner.invoke(main, ["code", "wenum", bad])
    assert r.exit_code == 1
    assert "bad.code:3:3: invalid GF(3) digit 'x'" in r.output
    r = runner.invoke(main, ["classify"])
    assert r.exit_code == 2
    r = runner.invoke(main, ["lattice", "shadow", str(tmp_path / "missing.lat")])
    assert r.exit_code == 1 and "Error" in r.output


def test_cli_ingest_and_corpus(runner, tmp_path):
    out = str(tmp_path / "corpus")
    r = runner.invoke(main, ["corpus", "--seed", "7", "--count", "2", "--out", out])
    assert r.exit_code == 0
    runner.invoke(main, ["corpus", "--seed", "7", "--count", "2", "--out",
                              str(tmp_path / "again")])
    for f in os.listdir(out):
        assert open(os.path.join(out, f)).read() == open(
            os.path.join(str(tmp_path / "again"), f)).read()
    r = runner.invoke(main, ["ingest", out])
    assert r.exit_code == 0 and len(r.output.splitlines()) == 10
    # the short corpus codes are equivalent to their sources
    for e in ingest(out):
        base = builtin_codes()[e.name.rsplit("_", 1)[0]]
        assert weight_distribution(e.payload) == weight_distribution(base)
        if base.length <= 12:
            assert are_equivalent(e.payload, base) is not None


def test_cli_reproduce_list(runner):
    r = runner.invoke(main, ["reproduce", "--list"])
    assert r.output.split() == list(SCRIPTS)


def test_cli_version(runner):
    r = runner.invoke(main, ["--version"])
    assert "0.1.0" in r.output
