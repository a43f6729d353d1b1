import json
from importlib import resources

import pytest

from sigmapbw.cli import main, run
from sigmapbw.corpus import CorpusError, load_document, validate_document
from sigmapbw.report import dumps

CONVERSE = str(resources.files("sigmapbw").joinpath("data/converse_counterexample.json"))

SMALL = {
    "rings": [{"name": "GF4", "kind": "gf", "q": 4}, {"name": "T2", "kind": "trunc_t2", "p": 2}],
    "families": [{"name": "T2/id+delta", "ring": "T2", "sigma": ["identity"], "delta": ["t_derivation"]}],
    "extensions": [{"name": "GF4[x]", "ring": "GF4", "sigma": ["frobenius"], "degree_cap": 4}],
    "spaces": [{"name": "chain", "nodes": ["p", "m"], "covers": [["p", "m"]], "max": ["m"]}],
    "config": {"probe_degree": 1},
}


@pytest.fixture
def small(tmp_path):
    p = tmp_path / "small.json"
    p.write_text(json.dumps(SMALL))
    return str(p)


def test_all_on_small_corpus(small, tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["all", small, "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["status"] == "ok" and rep["failures"] == []
    kinds = {it["kind"] for it in rep["items"]}
    assert kinds == {"classification", "extension", "spectrum", "space"}
    assert rep["config"]["probe_degree"] == 1
    text = capsys.readouterr().out
    assert text.startswith("sigmapbw all: status ok")


def test_flags_override_config(small):
    rep = run("pbw", small, probe_degree=2, seed=3)
    assert rep["config"]["probe_degree"] == 2 and rep["config"]["seed"] == 3
    (item,) = rep["items"]
    assert item["oracle"]["mismatches"] == []
    assert item["lift"] == {"ok": True}


def test_violation_exit_code(capsys):
    assert main(["audit", CONVERSE, "--quiet"]) == 1
    assert capsys.readouterr().out == ""


def test_unknown_ring_reference(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"rings": [], "families": [{"name": "f", "ring": "B", "sigma": ["identity"]}]}))
    assert main(["classify", str(p)]) == 2
    assert "/families/0/ring: unknown ring 'B'" in capsys.readouterr().err


def test_schema_errors_carry_json_pointers():
    doc = {"rings": [{"name": "Z", "kind": "zn"}], "extensions": [{"name": "e", "ring": "Z", "sigma": [],
                                                                   "degree_cap": 99}]}
    with pytest.raises(CorpusError) as exc:
        validate_document(doc)
    joined = " ".join(exc.value.problems)
    assert "/extensions/0/degree_cap" in joined
    assert "/extensions/0/sigma" in joined


def test_invalid_json(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{")
    assert main(["classify", str(p)]) == 2
    assert "invalid JSON" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["classify", "/nonexistent/corpus.json"]) == 2


def test_bad_map_becomes_item_error(tmp_path):
    doc = {"rings": [{"name": "Z6", "kind": "zn", "n": 6}],
           "families": [{"name": "Z6/double", "ring": "Z6",
                         "sigma": [{"name": "double", "images": [0, 2, 4, 0, 2, 4]}]}]}
    p = tmp_path / "map.json"
    p.write_text(json.dumps(doc))
    rep = run("classify", str(p))
    assert rep["status"] == "violation"
    assert "validation_error" in rep["items"][0]


def test_report_is_deterministic(small):
    a = dumps(run("all", small, jobs=1))
    b = dumps(run("all", small, jobs=2))
    assert a == b


def test_bundled_corpus_validates():
    doc = load_document(None)
    assert {r["name"] for r in doc["rings"]} >= {"Z6", "Z12", "GF4", "UT2", "UT2eq", "Q", "T2"}
