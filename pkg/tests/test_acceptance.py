"""Acceptance criteria, one test each, timed against their limits.

The conftest hook prints one PASS/FAIL line per criterion after the run.
"""

import itertools
import time

import pytest

from sigmapbw import finring as fr
from sigmapbw import ringprops as rp
from sigmapbw.audit import audit_theorems
from sigmapbw.cli import _fixtures, run
from sigmapbw.corpus import load_corpus
from sigmapbw.endo import MapFamily, builtin, identity_map
from sigmapbw.pbw import ProbeBudget, SkewPBWData, build_extension, monomial_action_oracle, probe
from sigmapbw.report import dumps
from sigmapbw.spectop import (pm_checks, retract_exists, ring_spectrum_report, synthetic_space,
                              topo_properties)


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


@pytest.mark.criterion(1, "triangular family {id, negate-b, kill-b}", 10)
def test_criterion_1():
    with Clock(10):
        R = fr.ut2_equal_diag(5)
        fam = MapFamily(R, [identity_map(R), builtin(R, "ut2_negate_b"), builtin(R, "ut2_kill_b")])
        rep = rp.classify(R, fam)
        assert rep["sigma_semicommutative"].value is True
        assert rep["reduced"].value is False
        assert rep["reduced"].witness["a"] == R.element("[[0,1],[0,0]]")
        assert rep["sigma_rigid"].value is False
        assert rp.recheck(R, "sigma_rigid", {"a": R.element("[[0,1],[0,0]]"), "alpha": (0, 1, 1)}, fam)
        assert rep["abelian"].value is True


@pytest.mark.criterion(2, "keep-a: sigma-semicommutative, not semicommutative", 10)
def test_criterion_2():
    with Clock(10):
        R = fr.ut2(5)
        E = R.element
        rep = rp.classify(R, MapFamily(R, [builtin(R, "ut2_keep_a")]))
        assert rep["semicommutative"].value is False
        triple = {"a": E("[[1,0],[0,0]]"), "r": E("[[1,1],[0,1]]"), "b": E("[[0,0],[0,1]]")}
        assert rp.recheck(R, "semicommutative", triple)
        assert rep["sigma_semicommutative"].value is True
        fam2 = MapFamily(R, [builtin(R, "ut2_keep_a"), builtin(R, "ut2_keep_c")])
        v = rp.sigma_semicommutative(R, fam2)
        assert v.value is False
        phi_w = {"a": E("[[1,0],[0,0]]"), "b": E("[[0,0],[0,1]]"), "r": E("[[1,1],[0,0]]"),
                 "alpha": (0, 1)}
        assert rp.recheck(R, "sigma_semicommutative", phi_w, fam2)


@pytest.mark.criterion(3, "swap on the truncated quotient", 10)
def test_criterion_3():
    with Clock(10):
        R = fr.trunc_st(2, 3)
        fam = MapFamily(R, [builtin(R, "swap"), identity_map(R)])
        rep = rp.classify(R, fam)
        assert rep["semicommutative"].value is True
        assert rep["sigma_semicommutative"].value is False
        s, t = R.element("s"), R.element("t")
        assert rp.recheck(R, "sigma_semicommutative", {"a": s, "b": t, "r": R.one, "alpha": (1, 0)}, fam)
        A = build_extension(SkewPBWData(R, [builtin(R, "swap")], name="Q[x;swap]"))
        v = probe(A, "semicommutative", ProbeBudget(max_degree=1))
        assert v.kind == "counterexample"
        x = A.gen(1)
        assert (v.witness["f"], v.witness["h"], v.witness["g"]) == (A.const(s), x, A.const(t))
        assert v.witness["fhg"] == A.const("s^2") * x and not v.witness["fhg"].is_zero()


@pytest.mark.criterion(4, "theorem audit T1-T10 on the bundled corpus", 60)
def test_criterion_4():
    with Clock(60):
        rep = audit_theorems(_fixtures(load_corpus()))
        assert [t.id for t in rep.theorems] == [f"T{k}" for k in range(1, 11)]
        assert rep.ok, rep.violations
        assert not any(t.vacuous for t in rep.theorems)


@pytest.mark.criterion(5, "rewriting vs closed-form oracle, |alpha| <= 4", 30)
def test_criterion_5():
    with Clock(30):
        c = load_corpus()
        checked = 0
        for k in range(len(c.doc["extensions"])):
            A = c.extension(k)
            top = min(4, A.degree_cap)
            for alpha in itertools.product(range(top + 1), repeat=A.n):
                if sum(alpha) > top:
                    continue
                X = A.monomial(alpha)
                for r in range(A.ring.q):
                    assert X * A.const(r) == monomial_action_oracle(A, alpha, r), (A.name, alpha, r)
                    checked += 1
        assert checked > 0


@pytest.mark.criterion(6, "derivation compatibility counterexample and probe verdicts", 10)
def test_criterion_6():
    with Clock(10):
        T = fr.trunc_t2(2)
        ident = identity_map(T)
        delta = builtin(T, "t_derivation", ident)
        v = rp.delta_compatible(T, MapFamily(T, [ident], [delta]))
        t = T.element("t")
        assert v.value is False and (v.witness["a"], v.witness["b"]) == (t, t)
        A = build_extension(SkewPBWData(T, [ident], [delta], name="T2[x;delta]"))
        G = fr.gf(4)
        F = build_extension(SkewPBWData(G, [builtin(G, "frobenius")], name="GF4[x;frobenius]"))
        assert probe(F, "reduced", ProbeBudget(max_degree=2)).kind == "none_found"
        red = probe(A, "reduced")
        assert red.kind == "counterexample" and red.witness["f"] == A.const("t")
        sc = probe(A, "semicommutative")
        w = sc.witness
        assert (w["f"] * w["g"]).is_zero() and not (w["f"] * w["h"] * w["g"]).is_zero()


@pytest.mark.criterion(7, "Baer lattice checks", 10)
def test_criterion_7():
    with Clock(10):
        assert rp.is_baer(fr.zn(6)).value is True
        q = rp.is_quasi_baer(fr.zn(12))
        assert q.value is False
        assert fr.bits_to_list(q.witness["annihilator_set"]) == [0, 6]
        R = fr.ut2_equal_diag(5)
        b = rp.is_baer(R)
        assert b.value is False
        assert b.witness["annihilator_set"] == fr.nilpotents(R)
        assert rp.recheck(R, "baer", b.witness)


@pytest.mark.criterion(8, "spectral degeneracy and synthetic topology", 5)
def test_criterion_8():
    with Clock(5):
        c = load_corpus()
        for spec in c.ring_specs():
            rep = ring_spectrum_report(c.ring(spec["name"]))
            assert rep["spec_equals_max"] is True, spec["name"]
            assert rep["zariski_issues"] == [], spec["name"]
        vee = synthetic_space("vee", ["p", "m1", "m2"], [["p", "m1"], ["p", "m2"]], ["m1", "m2"])
        assert pm_checks(vee)["pm"]["value"] is False
        assert retract_exists(vee)["value"] is False
        chain = synthetic_space("chain", ["p", "m"], [["p", "m"]], ["m"])
        props = topo_properties(chain)
        assert props["t0"]["value"] is True and props["t1"]["value"] is False
        r = retract_exists(chain)
        assert r["value"] is True and set(r["witness"].values()) == {"m"}


@pytest.mark.criterion(9, "determinism across worker counts", 600)
def test_criterion_9():
    with Clock(600):
        one = dumps(run("all", None, jobs=1))
        eight = dumps(run("all", None, jobs=8))
        assert one == eight
