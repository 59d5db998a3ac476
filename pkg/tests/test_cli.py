import json

import pytest

from faadibruno.cli import main
from faadibruno.corpus import (
    CorpusError,
    DEFAULT_PAIRS_TEXT,
    SPLIT_TEXT,
    corpus_pairs,
    corpus_split_entries,
    parse_corpus,
)
from faadibruno.jets import cofree_jet, jet_to_dict
from faadibruno.smooth import CLASSICAL, parse_smooth_map


def test_corpus_default_pairs_parse():
    entries = parse_corpus(DEFAULT_PAIRS_TEXT)
    pairs = corpus_pairs(entries)
    assert len(pairs) == 12
    dims = {(f.dom.dim, f.cod.dim) for f, _ in pairs}
    assert {(1, 1), (2, 2), (2, 1), (1, 3), (3, 1), (2, 3)} <= dims


def test_corpus_comments_and_errors():
    entries = parse_corpus("# comment\nfn(x) -> (x)\n\nfn(y) -> (y^2)\n")
    assert len(corpus_pairs(entries)) == 1
    with pytest.raises(CorpusError):
        corpus_pairs(parse_corpus("fn(x) -> (x, x)\nfn(y) -> (y)\n"))
    with pytest.raises(CorpusError):
        parse_corpus("fn(x) -> (\n")


def test_corpus_split_annotations():
    entries = parse_corpus(SPLIT_TEXT)
    split = corpus_split_entries(entries)
    assert len(split) == 4
    assert all(not m.src.guard.is_true() for m, _ in split)


def test_cli_jet_tower(capsys):
    assert main(["jet", "fn(x) -> (x^3)", "--order", "3", "--point", "1"]) == 0
    out = capsys.readouterr().out
    assert "tower at [1.0]: [1.0, 3.0, 6.0, 6.0]" in out


def test_cli_jet_constant_tower(capsys):
    assert main(["jet", "fn(x) -> (5)", "--order", "3", "--point", "0.3"]) == 0
    out = capsys.readouterr().out
    assert "[5.0, 0.0, 0.0, 0.0]" in out


def test_cli_jet_out_of_domain(capsys):
    code = main(["jet", "fn(x) -> (1/x) where x != 0", "--order", "2",
                 "--point", "0"])
    assert code == 2
    assert "outside guard" in capsys.readouterr().err


def test_cli_parse_error_exit_code(capsys):
    assert main(["jet", "fn(x) -> (x +* 2)"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_axioms_cd_small(tmp_path, capsys):
    corpus = tmp_path / "c.txt"
    corpus.write_text("fn(x) -> (x^2)\nfn(y) -> (sin(y))\n")
    code = main(["axioms", "--suite", "cd", "--corpus", str(corpus),
                 "--samples", "60"])
    assert code == 0
    assert "suite cd: pass" in capsys.readouterr().out


def test_cli_reports_are_byte_identical(tmp_path, capsys):
    corpus = tmp_path / "c.txt"
    corpus.write_text("fn(x) -> (1/x)\nfn(y) -> (y^2)\n")
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    for out in (out1, out2):
        assert main(["axioms", "--suite", "dr", "--corpus", str(corpus),
                     "--samples", "50", "--json", str(out)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    doc = json.loads(out1.read_text())
    assert doc["schema"] == 1
    assert doc["status"] == "pass"
    assert all(r["seed"] is not None for r in doc["results"])


def test_cli_detects_wrong_jet_with_witness(tmp_path, capsys):
    F = cofree_jet(parse_smooth_map("fn(x) -> (x^3)"), CLASSICAL, 3)
    data = jet_to_dict(F)
    data["derivs"][1] = "fn(v1,v2,x) -> (6*x*v1*v2 + v1)"  # not additive
    jets_file = tmp_path / "jets.json"
    jets_file.write_text(json.dumps([data]))
    corpus = tmp_path / "c.txt"
    corpus.write_text("fn(x) -> (1/x)\nfn(y) -> (y^2)\n")
    code = main(["axioms", "--suite", "faa-r", "--corpus", str(corpus),
                 "--samples", "50", "--order", "3", "--jets", str(jets_file)])
    assert code == 1
    out = capsys.readouterr().out
    assert "fail" in out


def test_cli_starvation_exit_code(tmp_path, capsys):
    corpus = tmp_path / "c.txt"
    corpus.write_text("fn(x) -> (x) where x > 0 && 0 - x > 0\nfn(y) -> (y^2)\n")
    code = main(["axioms", "--suite", "dr", "--corpus", str(corpus),
                 "--samples", "40"])
    capsys.readouterr()
    assert code == 3


def test_cli_split_check_alias(capsys):
    assert main(["split-check", "--samples", "50"]) == 0
    assert "suite split: pass" in capsys.readouterr().out


def test_cli_compose_prints_components(capsys):
    assert main(["compose", "fn(x) -> (x^2)", "fn(y) -> (sin(y))",
                 "--order", "3"]) == 0
    out = capsys.readouterr().out
    assert "(fg)_3" in out
