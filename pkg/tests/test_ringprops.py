import itertools

import pytest
from hypothesis import given, settings, strategies as st

from sigmapbw import finring as fr
from sigmapbw import ringprops as rp
from sigmapbw.endo import MapFamily, build_map, builtin, closure, identity_map


def E(R, label):
    return R.element(label)


# -- worked examples, re-verified through the scalar recheck --------------------------


def test_triangular_family_verdicts(ut2eq):
    """[EXAMPLE] equal-diagonal triangular ring with {id, negate-b, kill-b}."""
    R, fam = ut2eq
    rep = rp.classify(R, fam)
    assert rep["sigma_semicommutative"].value is True
    assert rep["abelian"].value is True
    assert rep["reduced"].value is False
    assert rep["reduced"].witness == {"a": E(R, "[[0,1],[0,0]]")}
    assert rep["sigma_rigid"].value is False
    assert rp.recheck(R, "sigma_rigid", rep["sigma_rigid"].witness, fam)


def test_triangular_rigid_witness_through_kill_after_negate(ut2eq):
    """[EXAMPLE] a = (0 1; 0 0) with alpha = (0,1,1) also refutes rigidity."""
    R, fam = ut2eq
    w = {"a": E(R, "[[0,1],[0,0]]"), "alpha": (0, 1, 1)}
    assert rp.recheck(R, "sigma_rigid", w, fam)


def test_keep_a_family_is_sigma_semicommutative_but_ring_is_not(ut2a):
    """[EXAMPLE] full triangular ring over Z5 with the keep-a endomorphism."""
    R, fam = ut2a
    rep = rp.classify(R, fam)
    assert rep["semicommutative"].value is False
    assert rp.recheck(R, "semicommutative", rep["semicommutative"].witness)
    assert rep["sigma_semicommutative"].value is True


def test_matrix_semicommutative_triple_reverifies(ut2a):
    """[EXAMPLE] E11 E22 = 0 while E11 (E11+E12+E22) E22 = E12 != 0."""
    R, _ = ut2a
    a, mid, b = E(R, "[[1,0],[0,0]]"), E(R, "[[1,1],[0,1]]"), E(R, "[[0,0],[0,1]]")
    assert R.times(a, b) == R.zero
    assert R.times(R.times(a, mid), b) == E(R, "[[0,1],[0,0]]")
    assert rp.recheck(R, "semicommutative", {"a": a, "b": b, "r": mid})


def test_adding_keep_c_breaks_sigma_semicommutativity():
    """[EXAMPLE] the phi witness: a = E11, b = E22, r = (1 1; 0 0), phi = keep-c."""
    R = fr.ut2(5)
    fam = MapFamily(R, [builtin(R, "ut2_keep_a"), builtin(R, "ut2_keep_c")])
    v = rp.sigma_semicommutative(R, fam)
    assert v.value is False
    assert rp.recheck(R, "sigma_semicommutative", v.witness, fam)
    w = {"a": E(R, "[[1,0],[0,0]]"), "b": E(R, "[[0,0],[0,1]]"),
         "r": E(R, "[[1,1],[0,0]]"), "alpha": (0, 1)}
    assert rp.recheck(R, "sigma_semicommutative", w, fam)


def test_swap_on_truncated_quotient(qswap):
    """[EXAMPLE] commutative so semicommutative, but s t = 0 while s swap(t) = s^2 != 0."""
    R, fam = qswap
    rep = rp.classify(R, fam)
    assert rep["semicommutative"].value is True
    assert rep["sigma_semicommutative"].value is False
    s, t = E(R, "s"), E(R, "t")
    assert rp.recheck(R, "sigma_semicommutative", {"a": s, "b": t, "r": R.one, "alpha": (1, 0)}, fam)
    assert rp.recheck(R, "sigma_semicommutative", rep["sigma_semicommutative"].witness, fam)


def test_swap_compatibility_witness(qswap):
    R, fam = qswap
    v = rp.sigma_compatible(R, fam)
    assert v.value is False
    assert rp.recheck(R, "sigma_compatible", v.witness, fam)
    assert rp.recheck(R, "sigma_compatible", {"a": E(R, "s"), "b": E(R, "t"), "alpha": (1, 0)}, fam)


def test_derivation_compatibility_counterexample(t2delta):
    """[EXAMPLE] t t = 0 but t delta(t) = t != 0."""
    R, fam = t2delta
    v = rp.delta_compatible(R, fam)
    assert v.value is False
    t = E(R, "t")
    assert v.witness["a"] == t and v.witness["b"] == t
    assert rp.recheck(R, "delta_compatible", v.witness, fam)


def test_baer_lattice_examples(ut2eq):
    assert rp.is_baer(fr.zn(6)).value is True
    q = rp.is_quasi_baer(fr.zn(12))
    assert q.value is False
    assert fr.bits_to_list(q.witness["annihilator_set"]) == [0, 6]
    assert fr.bits_to_list(q.witness["ideal_set"]) == list(range(0, 12, 2))
    R, _ = ut2eq
    b = rp.is_baer(R)
    assert b.value is False
    N = fr.nilpotents(R)
    assert b.witness["annihilator_set"] == N
    assert rp.recheck(R, "baer", b.witness)


def test_missing_derivations_are_not_applicable(ut2eq):
    R, fam = ut2eq
    rep = rp.classify(R, fam)
    assert rep["delta_compatible"].value is None
    assert rep["delta_compatible"].to_json(R)["value"] == "n/a"


def test_verdict_refuses_truthiness():
    with pytest.raises(TypeError):
        bool(rp.is_reduced(fr.zn(4)))


# -- brute-force oracles on small rings ------------------------------------------------------

SMALL = [fr.zn(n) for n in range(2, 13)] + [
    fr.gf(4), fr.ut2_equal_diag(2), fr.ut2_equal_diag(3), fr.ut2(2), fr.trunc_t2(2),
    fr.trunc_t2(3), fr.product(fr.zn(2), fr.zn(2)), fr.product(fr.zn(2), fr.gf(4)),
]


def _mul(R, *xs):
    out = R.one
    for x in xs:
        out = R.times(out, x)
    return out


def brute(R, name):
    Q, z = range(R.q), R.zero
    if name == "reduced":
        return all(R.times(a, a) != z for a in Q if a != z)
    if name == "abelian":
        return all(R.times(e, r) == R.times(r, e) for e in Q if R.times(e, e) == e for r in Q)
    if name == "semicommutative":
        return all(_mul(R, a, r, b) == z for a in Q for b in Q if R.times(a, b) == z for r in Q)
    if name == "reversible":
        return all(R.times(b, a) == z for a in Q for b in Q if R.times(a, b) == z)
    if name == "reflexive":
        return all(all(_mul(R, b, r, a) == z for r in Q)
                   for a in Q for b in Q if all(_mul(R, a, r, b) == z for r in Q))
    if name == "symmetric":
        return all(_mul(R, a, c, b) == z for a, b, c in itertools.product(Q, Q, Q)
                   if _mul(R, a, b, c) == z)
    raise KeyError(name)


def brute_baer(R, quasi):
    eR = {frozenset(R.times(e, r) for r in range(R.q)) for e in range(R.q) if R.times(e, e) == e}
    if quasi:
        sets = [fr.bits_to_list(I.members) for I in fr.enumerate_ideals(R, "right")]
    else:
        sets = [S for k in range(1, R.q + 1) for S in itertools.combinations(range(R.q), k)]
    for S in sets:
        ann = frozenset(x for x in range(R.q) if all(R.times(s, x) == R.zero for s in S))
        if ann not in eR:
            return False
    return True


@pytest.mark.parametrize("R", SMALL, ids=lambda R: R.name)
@pytest.mark.parametrize("name", ["reduced", "abelian", "semicommutative", "reversible",
                                  "reflexive", "symmetric"])
def test_elementwise_predicates_match_bruteforce(R, name):
    v = rp.ELEMENTWISE_FUNCS[name](R)
    assert v.value == brute(R, name)
    if v.value is False:
        assert rp.recheck(R, name, v.witness)


@pytest.mark.parametrize("R", [R for R in SMALL if R.q <= 9], ids=lambda R: R.name)
def test_baer_predicates_match_bruteforce(R):
    assert rp.is_baer(R).value == brute_baer(R, quasi=False)
    assert rp.is_quasi_baer(R).value == brute_baer(R, quasi=True)


@st.composite
def zn_family(draw):
    n = draw(st.integers(2, 24))
    R = fr.zn(n)
    idem = [e for e in range(n) if e * e % n == e]
    es = draw(st.lists(st.sampled_from(idem), min_size=1, max_size=3))
    return R, MapFamily(R, [build_map(R, [e * x % n for x in range(n)]) for e in es])


@settings(max_examples=40, deadline=None)
@given(zn_family())
def test_sigma_semicommutative_and_rigid_match_bruteforce(data):
    R, fam = data
    Q, z = range(R.q), R.zero
    phis = [m.images for m in closure(fam, "sigma-alpha").members]
    phis0 = [m.images for m in closure(fam, "sigma-alpha", include_identity=True).members]
    ssc = all(_mul(R, a, r, int(p[b])) == z for p in phis for a in Q for b in Q
              if R.times(a, b) == z for r in Q)
    rigid = all(a == z for p in phis0 for a in Q if R.times(a, int(p[a])) == z)
    v = rp.sigma_semicommutative(R, fam)
    assert v.value == ssc
    assert rp.sigma_rigid(R, fam).value == rigid
    if not ssc:
        assert rp.recheck(R, "sigma_semicommutative", v.witness, fam)


@pytest.mark.parametrize("R", SMALL, ids=lambda R: R.name)
def test_classification_is_internally_consistent(R):
    from sigmapbw.audit import Fixture, consistency_issues
    assert consistency_issues(Fixture(R.name, R, MapFamily(R, [identity_map(R)]))) == []
