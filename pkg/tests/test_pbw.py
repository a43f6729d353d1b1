import itertools

import pytest
from hypothesis import given, settings, strategies as st

from sigmapbw import finring as fr
from sigmapbw.corpus import load_corpus
from sigmapbw.endo import builtin, build_map, identity_map
from sigmapbw.pbw import (DegreeOverflow, ExtensionError, LiftError, SkewPBWData, build_extension,
                          lift_maps, monomial_action_oracle)
from sigmapbw.pbw.lift import lift_hypothesis_failures

CORPUS = load_corpus()
EXTS = [CORPUS.extension(k) for k in range(len(CORPUS.doc["extensions"]))]
BY_NAME = {e.name: e for e in EXTS}


def test_swap_moves_coefficients_through_x():
    A = BY_NAME["Q[x;swap]"]
    x, s, t = A.gen(1), A.const("s"), A.const("t")
    assert x * s == t * x
    assert x * x * s == s * x * x      # swap is an involution
    assert repr(x * s) == "(t)x1"


def test_derivation_extension_rewrites_with_the_delta_term():
    A = BY_NAME["T2[x;delta]"]
    x, t = A.gen(1), A.const("t")
    assert x * t == A.const("1") + t * x
    # x^2 t = t x^2 + 2x = t x^2 in characteristic 2
    assert x * x * t == t * x * x


def test_weyl_relation():
    A = BY_NAME["GF4<x1,x2>/weyl"]
    x1, x2 = A.gen(1), A.gen(2)
    assert x2 * x1 == A.const("1") + x1 * x2
    assert x1 * x2 == A.monomial((1, 1))


def test_frobenius_twist():
    A = BY_NAME["GF4[x;frobenius]"]
    w = A.const("x")
    assert A.gen(1) * w == A.const("1+x") * A.gen(1)


@pytest.mark.parametrize("A", EXTS, ids=lambda A: A.name)
def test_rewriting_matches_closed_form(A):
    """[DERIVED] the rewriting product and the closed formula agree exactly."""
    top = min(4, A.degree_cap)
    for alpha in itertools.product(range(top + 1), repeat=A.n):
        if sum(alpha) > top:
            continue
        X = A.monomial(alpha)
        for r in range(A.ring.q):
            assert X * A.const(r) == monomial_action_oracle(A, alpha, r), (alpha, r)


def _terms(A, deg):
    monos = [a for a in itertools.product(range(deg + 1), repeat=A.n) if sum(a) <= deg]
    return st.lists(st.tuples(st.sampled_from(monos), st.integers(0, A.ring.q - 1)),
                    max_size=3).map(A.poly)


@pytest.mark.parametrize("A", EXTS, ids=lambda A: A.name)
def test_ring_laws_on_low_degree(A):
    deg = A.degree_cap // 3

    @settings(max_examples=60, deadline=None)
    @given(_terms(A, deg), _terms(A, deg), _terms(A, deg))
    def run(f, g, h):
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f + g) * h == f * h + g * h
        assert f - f == A.zero()

    run()


@pytest.mark.parametrize("A", EXTS, ids=lambda A: A.name)
def test_generator_triples_associate(A):
    A.check_associativity(cap=3)


def test_overflow_is_reported():
    A = BY_NAME["Q[x;swap]"]
    x = A.gen(1)
    f = A.monomial((A.degree_cap,))
    with pytest.raises(DegreeOverflow) as exc:
        f * x
    assert exc.value.degree == A.degree_cap + 1


def _gf4_two_gen(sig1, d=None, r=None):
    G = fr.gf(4)
    return SkewPBWData(G, [builtin(G, sig1), identity_map(G)], None,
                       d or {}, r or {}, degree_cap=4, name="test")


def test_non_associative_relations_are_rejected():
    # x2 x1 = x1 x2 + w fails against x1 a = frob(a) x1 for a outside F2
    G = fr.gf(4)
    with pytest.raises(ExtensionError):
        build_extension(_gf4_two_gen("frobenius", r={(0, 1): [G.element("x"), 0, 0]}))


def test_invalid_data_rejected():
    G = fr.gf(4)
    with pytest.raises(ExtensionError):
        build_extension(_gf4_two_gen("frobenius", d={(0, 1): G.zero}))
    with pytest.raises(ExtensionError):
        build_extension(_gf4_two_gen("frobenius", d={(1, 0): G.one}))
    R = fr.ut2(3)
    with pytest.raises(ExtensionError):       # keep-a is not injective
        build_extension(SkewPBWData(R, [builtin(R, "ut2_keep_a")]))
    T = fr.trunc_t2(2)
    fake = build_map(T, [0, 1, 1, 0], "additive", name="fake")   # additive, breaks the Leibniz rule
    with pytest.raises(ExtensionError):
        build_extension(SkewPBWData(T, [identity_map(T)], [fake]))


def test_gen_index_is_one_based():
    A = BY_NAME["GF4[x;frobenius]"]
    with pytest.raises(ExtensionError):
        A.gen(0)


def test_lift_coefficientwise():
    A = BY_NAME["T2[x;delta]"]
    L = lift_maps(A)
    x, t = A.gen(1), A.const("t")
    assert L.delta(1, t * x) == x
    Q = BY_NAME["Q[x;swap]"]
    assert lift_maps(Q).sigma(1, Q.const("s") * Q.gen(1)) == Q.const("t") * Q.gen(1)


@pytest.mark.parametrize("A", EXTS, ids=lambda A: A.name)
def test_lift_succeeds_on_corpus(A):
    lift_maps(A)


def test_lift_rejects_moving_d():
    G = fr.gf(4)
    w = G.element("x")
    A = build_extension(_gf4_two_gen("frobenius", d={(0, 1): w}))
    fails = lift_hypothesis_failures(A)
    assert any("d_1,2" in f.hypothesis for f in fails)
    with pytest.raises(LiftError):
        lift_maps(A)


def test_polynomial_json_and_support():
    A = BY_NAME["GF4<x1,x2>/weyl"]
    f = A.const("x") + A.monomial((0, 2), "1+x")
    assert f.support() == [(0, 0), (0, 2)]
    assert f.to_json() == [[[0, 0], "x"], [[0, 2], "1+x"]]
    assert f.degree() == 2
