from importlib import resources

from sigmapbw import finring as fr
from sigmapbw.audit import THEOREMS, Fixture, audit_theorems, consistency_issues
from sigmapbw.cli import _fixtures
from sigmapbw.corpus import load_corpus
from sigmapbw.endo import MapFamily, identity_map
from sigmapbw.ringprops import Verdict, classify


def test_default_corpus_has_no_violations():
    rep = audit_theorems(_fixtures(load_corpus()))
    assert rep.ok, rep.violations
    assert [t.id for t in rep.theorems] == [f"T{k}" for k in range(1, 11)]
    assert not any(t.vacuous for t in rep.theorems)


def test_every_corpus_fixture_is_consistent():
    for fx in _fixtures(load_corpus()):
        assert consistency_issues(fx) == [], fx.name


def test_rnp_converse_fails_on_swapped_product():
    """[DERIVED] F2 x F2 with the swap is reduced, so right skew RNP holds vacuously,
    yet (1,0)(0,1) = 0 while (1,0) swap(0,1) = (1,0) != 0."""
    path = resources.files("sigmapbw").joinpath("data/converse_counterexample.json")
    fx = _fixtures(load_corpus(str(path)))
    rep = audit_theorems(fx, only=["T4"])
    (v,) = rep.violations
    assert v["theorem"] == "T4"
    assert v["sigma_semicommutative"] is False and v["skew_rnp_right"] is True


def test_audit_catches_an_injected_violation():
    R = fr.zn(4)
    fx = Fixture("Z4-tampered", R, MapFamily(R, [identity_map(R)]))
    report = classify(R, fx.family)
    report["two_primal"] = Verdict(False, {"a": 2, "radical_set": 1})
    fx._report = report
    rep = audit_theorems([fx], only=["T5"])
    assert not rep.ok


def test_family_less_fixtures_skip_family_theorems():
    R = fr.zn(6)
    rep = audit_theorems([Fixture("Z6", R)])
    for tid in ("T1", "T2", "T3", "T4", "T8", "T9", "T10"):
        assert rep.by_id(tid).vacuous
    for tid in ("T5", "T6", "T7"):
        assert rep.by_id(tid).tested == ["Z6"]


def test_statements_are_listed():
    """[TRIVIAL] one entry per audited implication."""
    assert len(THEOREMS) == 10
