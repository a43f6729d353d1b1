import pytest

from sigmapbw import finring as fr
from sigmapbw.corpus import load_corpus
from sigmapbw.endo import builtin, identity_map
from sigmapbw.pbw import (PROPERTIES, ProbeBudget, SkewPBWData, build_extension,
                          idempotent_transparency, probe)

CORPUS = load_corpus()
BY_NAME = {e.name: e for e in (CORPUS.extension(k) for k in range(len(CORPUS.doc["extensions"])))}


def test_swap_extension_is_not_semicommutative_at_degree_one():
    """[EXAMPLE] s x t = s (t x) ... = s^2 x != 0 while s t = 0."""
    A = BY_NAME["Q[x;swap]"]
    v = probe(A, "semicommutative", ProbeBudget(max_degree=1))
    assert v.kind == "counterexample" and v.value is False
    w = v.witness
    assert (w["f"] * w["g"]).is_zero()
    assert w["f"] * w["h"] * w["g"] == w["fhg"]
    s, t, x = A.const("s"), A.const("t"), A.gen(1)
    assert (w["f"], w["h"], w["g"]) == (s, x, t)
    assert w["fhg"] == A.const("s^2") * x


def test_sigma_bar_semicommutative_fails_over_swap():
    A = BY_NAME["Q[x;swap]"]
    v = probe(A, "sigma_semicommutative")
    assert v.kind == "counterexample"
    assert v.witness["alpha"] == [1]
    assert not v.witness["product"].is_zero()


def test_frobenius_extension_reports_none_found():
    A = BY_NAME["GF4[x;frobenius]"]
    v = probe(A, "reduced", ProbeBudget(max_degree=2))
    assert v.kind == "none_found" and v.value == "inconclusive"
    assert "inconclusive" in v.note
    assert v.manifest["degree"] == 2 and not v.manifest["truncated"]


def test_derivation_extension_witnesses():
    A = BY_NAME["T2[x;delta]"]
    t, x = A.const("t"), A.gen(1)
    red = probe(A, "reduced")
    assert red.witness["f"] == t and (t * t).is_zero()
    ab = probe(A, "abelian")
    e = ab.witness["e"]
    assert e * e == e and e * t != t * e
    assert e == t * x


def test_transfer_over_sigma_semicommutative_base(ut2eq):
    """[DERIVED] coefficient-wise lifts keep the sandwich condition on the window."""
    R, _ = ut2eq
    A = build_extension(SkewPBWData(R, [builtin(R, "ut2_negate_b")], degree_cap=4, name="U[x]"))
    v = probe(A, "sigma_semicommutative", ProbeBudget(max_degree=1, max_support=1))
    assert v.kind == "none_found"
    assert idempotent_transparency(A, ProbeBudget(max_degree=1, max_support=1)) == []


def test_not_applicable_when_lift_hypotheses_fail():
    G = fr.gf(4)
    data = SkewPBWData(G, [builtin(G, "frobenius"), identity_map(G)], d={(0, 1): G.element("x")},
                       degree_cap=4)
    v = probe(build_extension(data), "sigma_semicommutative", ProbeBudget(max_degree=1))
    assert v.kind == "not_applicable" and v.value == "n/a"


def test_budget_exhaustion_is_inconclusive():
    A = BY_NAME["Q[x1;swap][x2]"]
    v = probe(A, "skew_armendariz", ProbeBudget(max_evaluations=5))
    assert v.kind == "none_found"
    assert "budget" in v.note


def test_sampled_mode_is_seeded():
    A = BY_NAME["Q[x;swap]"]
    b = ProbeBudget(max_degree=2, exhaustive_limit=0, sample_count=50, seed=7)
    v1, v2 = probe(A, "reduced", b), probe(A, "reduced", b)
    assert v1.to_json() == v2.to_json()
    assert {s["mode"] for s in v1.manifest["strata"]} == {"sampled"}


def test_unknown_property():
    with pytest.raises(KeyError):
        probe(BY_NAME["GF4[x;frobenius]"], "noetherian")


@pytest.mark.parametrize("prop", PROPERTIES)
def test_every_probe_runs_on_the_weyl_algebra(prop):
    v = probe(BY_NAME["GF4<x1,x2>/weyl"], prop, ProbeBudget(max_degree=1))
    assert v.kind in ("none_found", "candidate")
    assert v.to_json()["manifest"]
