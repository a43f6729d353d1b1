"""Theorem audits over a corpus of (ring, family) fixtures.

Each theorem is a hypothesis filter plus an exact conclusion check.  A
theorem whose hypotheses no fixture meets is reported as vacuous, never as
passed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .endo import MapFamily, closure
from .finring import FiniteRing, bits_to_list, idempotents, to_bits
from .ringprops import Verdict, classify, recheck, sigma_semicommutative_breakdown, witness_json


@dataclass
class Fixture:
    name: str
    ring: FiniteRing
    family: MapFamily | None = None
    _report: dict | None = field(default=None, repr=False)

    def report(self) -> dict[str, Verdict]:
        if self._report is None:
            self._report = classify(self.ring, self.family)
        return self._report

    def holds(self, predicate: str) -> bool:
        return self.report()[predicate].value is True


@dataclass
class TheoremResult:
    id: str
    statement: str
    tested: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return not self.tested

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "statement": self.statement,
            "tested": len(self.tested),
            "tested_fixtures": self.tested,
            "skipped_fixtures": self.skipped,
            "vacuous": self.vacuous,
            "violations": self.violations,
        }


@dataclass
class AuditReport:
    theorems: list[TheoremResult]

    @property
    def violations(self) -> list[dict]:
        return [v | {"theorem": t.id} for t in self.theorems for v in t.violations]

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_id(self, tid: str) -> TheoremResult:
        for t in self.theorems:
            if t.id == tid:
                return t
        raise KeyError(tid)

    def to_json(self) -> dict:
        return {"theorems": [t.to_json() for t in self.theorems]}


# A theorem check returns None when hypotheses fail (skip), else a list of violations.
Check = Callable[[Fixture], "list[dict] | None"]


def _fam(fx: Fixture) -> MapFamily | None:
    return fx.family


def _t1(fx: Fixture):
    # idempotents and 1 are fixed by every sigma^alpha
    fam = _fam(fx)
    if fam is None or not (fx.holds("sigma_semicommutative") and fam.unital):
        return None
    R = fx.ring
    out = []
    C = closure(fam, "sigma-alpha", include_identity=True)
    for m in C.members:
        for e in [R.one] + bits_to_list(idempotents(R)):
            if int(m.images[e]) != e:
                out.append({"fixture": fx.name, "alpha": list(m.exponent),
                            "e": R.labels[e], "image": R.labels[int(m.images[e])]})
                return out
    return out


def _implication(hyp: Callable[[Fixture], bool], concl: Callable[[Fixture], bool],
                 describe: Callable[[Fixture], dict] | None = None) -> Check:
    def check(fx: Fixture):
        if not hyp(fx):
            return None
        if concl(fx):
            return []
        return [{"fixture": fx.name} | (describe(fx) if describe else {})]
    return check


def _witness_of(fx: Fixture, *preds: str) -> dict:
    rep = fx.report()
    return {"verdicts": {p: rep[p].to_json(fx.ring) for p in preds}}


def _has_family(fx: Fixture) -> bool:
    return fx.family is not None


def _injective(fx: Fixture) -> bool:
    return fx.family is not None and fx.family.injective


def _t2(fx):
    return _implication(
        lambda f: _has_family(f) and f.holds("sigma_semicommutative") and f.family.unital,
        lambda f: f.holds("abelian"),
        lambda f: _witness_of(f, "abelian"),
    )(fx)


def _t3(fx):
    if not _injective(fx):
        return None
    left = fx.holds("sigma_semicommutative") and fx.holds("reduced")
    right = fx.holds("sigma_rigid")
    if left == right:
        return []
    return [{"fixture": fx.name, "sigma_semicommutative_and_reduced": left, "sigma_rigid": right}
            | _witness_of(fx, "sigma_semicommutative", "reduced", "sigma_rigid")]


def _t4(fx):
    if not (_has_family(fx) and fx.holds("nil_reversible")):
        return None
    left = fx.holds("sigma_semicommutative")
    right = fx.holds("skew_rnp_right")
    if left == right:
        return []
    return [{"fixture": fx.name, "sigma_semicommutative": left, "skew_rnp_right": right}
            | _witness_of(fx, "sigma_semicommutative", "skew_rnp_right")]


def _t5(fx):
    return _implication(lambda f: f.holds("semicommutative"), lambda f: f.holds("two_primal"),
                        lambda f: _witness_of(f, "two_primal"))(fx)


def _t6(fx):
    left = fx.holds("reflexive") and fx.holds("semicommutative")
    right = fx.holds("reversible")
    if left == right:
        return []
    return [{"fixture": fx.name, "reflexive_and_semicommutative": left, "reversible": right}]


def _t7(fx):
    return _implication(lambda f: f.holds("abelian") and f.holds("baer"),
                        lambda f: f.holds("reduced"),
                        lambda f: _witness_of(f, "reduced"))(fx)


def _delta_compatible_or_zero(fx: Fixture) -> bool:
    # a family without derivations is read as having zero derivations
    v = fx.report()["delta_compatible"].value
    return True if v is None else v


def _t8(fx):
    if not (_injective(fx) and fx.holds("sigma_semicommutative") and _delta_compatible_or_zero(fx)):
        return None
    b, qb = fx.holds("baer"), fx.holds("quasi_baer")
    if b == qb:
        return []
    return [{"fixture": fx.name, "baer": b, "quasi_baer": qb} | _witness_of(fx, "baer", "quasi_baer")]


def _t9(fx):
    if not _injective(fx):
        return None
    one = fx.holds("sigma_semicommutative") and fx.holds("reduced")
    two = fx.holds("sigma_rigid")
    five = fx.holds("reduced") and fx.holds("sigma_compatible") and _delta_compatible_or_zero(fx)
    if one == two == five:
        return []
    return [{"fixture": fx.name, "semicommutative_reduced": one, "rigid": two,
             "reduced_compatible": five}]


def left_annihilator(R: FiniteRing, S: list[int]) -> int:
    mask = (R.mul[:, S] == R.zero).all(axis=1)
    return to_bits(np.flatnonzero(mask))


def annihilator_law_violations(fx: Fixture, samples: int = 32, seed: int = 0,
                               delta_kind: str = "delta-beta") -> list[dict]:
    """Check the four left-annihilator laws for singletons and seeded random subsets."""
    R, fam = fx.ring, fx.family
    sig = closure(fam, "sigma-alpha", include_identity=True)
    dl = closure(fam, delta_kind, include_identity=True)
    deltas = fam.effective_deltas()
    rng = random.Random(f"{seed}:{fx.name}")
    subsets = [[a] for a in range(R.q)]
    for _ in range(samples):
        k = rng.randint(1, min(R.q, 6))
        subsets.append(sorted(rng.sample(range(R.q), k)))
    out = []
    for S in subsets:
        lS = left_annihilator(R, S)
        lS_list = bits_to_list(lS)
        base = {"fixture": fx.name, "S": [R.labels[s] for s in S]}
        for m in sig.members:
            if left_annihilator(R, sorted({int(m.images[s]) for s in S})) != lS:
                out.append(base | {"law": "l(S) = l(sigma^alpha(S))", "alpha": list(m.exponent)})
                return out
        for m in dl.members:
            if lS & ~left_annihilator(R, sorted({int(m.images[s]) for s in S})):
                out.append(base | {"law": "l(S) <= l(delta^beta(S))", "beta": m.label()})
                return out
        for i, (s, d) in enumerate(zip(fam.sigmas, deltas)):
            if to_bits(s.images[lS_list]) & ~lS:
                out.append(base | {"law": "sigma_i(l(S)) <= l(S)", "i": i + 1})
                return out
            if to_bits(d.images[lS_list]) & ~lS:
                out.append(base | {"law": "delta_i(l(S)) <= l(S)", "i": i + 1})
                return out
    return out


def _t10(fx, seed: int = 0):
    if not (_injective(fx) and fx.holds("sigma_semicommutative") and fx.holds("baer")):
        return None
    return annihilator_law_violations(fx, seed=seed)


THEOREMS: list[tuple[str, str, Check]] = [
    ("T1", "sigma-semicommutative with unital sigmas: sigma^alpha fixes 1 and every idempotent", _t1),
    ("T2", "sigma-semicommutative with unital sigmas implies abelian", _t2),
    ("T3", "injective family: sigma-semicommutative and reduced iff sigma-rigid", _t3),
    ("T4", "nil-reversible: sigma-semicommutative iff right sigma-skew RNP", _t4),
    ("T5", "semicommutative implies 2-primal", _t5),
    ("T6", "reflexive and semicommutative iff reversible", _t6),
    ("T7", "abelian Baer implies reduced", _t7),
    ("T8", "injective, sigma-semicommutative, delta-compatible: Baer iff quasi-Baer", _t8),
    ("T9", "injective family: (semicommutative-reduced) iff rigid iff (reduced and compatible)", _t9),
    ("T10", "injective sigma-semicommutative Baer: left annihilator laws", _t10),
]


def audit_theorems(fixtures: list[Fixture], seed: int = 0,
                   only: list[str] | None = None) -> AuditReport:
    results = []
    for tid, statement, check in THEOREMS:
        if only is not None and tid not in only:
            continue
        res = TheoremResult(tid, statement)
        for fx in fixtures:
            v = check(fx, seed) if tid == "T10" else check(fx)
            if v is None:
                res.skipped.append(fx.name)
            else:
                res.tested.append(fx.name)
                res.violations.extend(v)
        results.append(res)
    return AuditReport(results)


# Cross-checks that are not theorems of their own but must hold on every fixture.


def consistency_issues(fx: Fixture) -> list[str]:
    rep = fx.report()
    R = fx.ring
    issues = []
    for name, v in rep.items():
        if v.value is False and v.witness:
            if not recheck(R, name, v.witness, fx.family):
                issues.append(f"{name}: witness {witness_json(R, v.witness)} does not recheck")
    if rep["reduced"].value and not rep["symmetric"].value:
        issues.append("reduced but not symmetric")
    if rep["symmetric"].value and not rep["semicommutative"].value:
        issues.append("symmetric but not semicommutative")
    if rep["baer"].value and not rep["quasi_baer"].value:
        issues.append("Baer but not quasi-Baer")
    if fx.family is not None:
        parts = sigma_semicommutative_breakdown(R, fx.family)
        if rep["sigma_semicommutative"].value != all(p.value for p in parts):
            issues.append("per-sigma breakdown disagrees with the family verdict")
    return issues
