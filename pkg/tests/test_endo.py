import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sigmapbw import finring as fr
from sigmapbw.endo import (MapFamily, MapLawError, RingMap, build_map, builtin, closure, compose,
                           distinct_powers, identity_map, power, zero_map)


def brute_ordered_products(maps, include_identity, max_exp=6):
    # [DERIVED] oracle: enumerate exponents up to a fixed bound and apply maps pointwise
    q = maps[0].ring.q
    out = set()
    for alpha in itertools.product(range(max_exp + 1), repeat=len(maps)):
        if not include_identity and not any(alpha):
            continue
        img = []
        for x in range(q):
            for f, a in zip(reversed(maps), reversed(alpha)):
                for _ in range(a):
                    x = int(f.images[x])
            img.append(x)
        out.add(tuple(img))
    return out


def test_builtin_flags():
    R = fr.ut2_equal_diag(5)
    neg, kill = builtin(R, "ut2_negate_b"), builtin(R, "ut2_kill_b")
    assert neg.injective and neg.unital
    assert not kill.injective and kill.unital
    assert compose(neg, kill) == kill
    assert power(neg, 2) == identity_map(R)


def test_frobenius_on_gf4_is_an_involution():
    G = fr.gf(4)
    f = builtin(G, "frobenius")
    assert not f.is_identity
    assert power(f, 2).is_identity
    assert [int(x) for x in f.images] == [G.times(a, a) for a in range(4)]


def test_swap_exchanges_s_and_t():
    Q = fr.trunc_st(2, 3)
    sw = builtin(Q, "swap")
    assert sw(Q.element("s")) == Q.element("t")
    assert sw(Q.element("t^2")) == Q.element("s^2")
    assert power(sw, 2).is_identity


def test_t_derivation_sends_t_to_one():
    T = fr.trunc_t2(2)
    d = builtin(T, "t_derivation")
    assert d(T.element("t")) == T.one
    assert d(T.one) == T.zero


def test_t_derivation_law_fails_in_odd_characteristic():
    # [DERIVED] d(t*t) = 0 but t d(t) + d(t) t = 2t
    T = fr.trunc_t2(3)
    with pytest.raises(MapLawError):
        builtin(T, "t_derivation")


def test_non_homomorphism_rejected_with_witness():
    R = fr.zn(6)
    with pytest.raises(MapLawError) as exc:
        build_map(R, [0, 2, 4, 0, 2, 4], name="double")     # additive but not multiplicative
    assert exc.value.law == "multiplicativity"


def test_distinct_powers_keeps_first_repeat():
    R = fr.zn(5)
    ident = identity_map(R)
    assert len(distinct_powers(ident)) == 2


def test_closure_of_triangular_family():
    R = fr.ut2_equal_diag(5)
    fam = MapFamily(R, [identity_map(R), builtin(R, "ut2_negate_b"), builtin(R, "ut2_kill_b")])
    C = closure(fam, "sigma-alpha")
    assert [m.exponent for m in C.members] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    C0 = closure(fam, "sigma-alpha", include_identity=True)
    assert [m.exponent for m in C0.members] == [(0, 0, 0), (0, 1, 0), (0, 0, 1)]


@st.composite
def endo_family(draw):
    # endomorphisms of Z_n are x -> e x with e idempotent
    n = draw(st.integers(2, 30))
    R = fr.zn(n)
    idem = [e for e in range(n) if e * e % n == e]
    k = draw(st.integers(1, 3))
    es = draw(st.lists(st.sampled_from(idem), min_size=k, max_size=k))
    return R, [build_map(R, [e * x % n for x in range(n)]) for e in es]


@settings(max_examples=40, deadline=None)
@given(endo_family(), st.booleans())
def test_ordered_closure_matches_bruteforce(fam_data, incl):
    R, maps = fam_data
    C = closure(MapFamily(R, maps), "sigma-alpha", include_identity=incl)
    got = {tuple(int(x) for x in m.images) for m in C.members}
    assert got == brute_ordered_products(maps, incl)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["gf4", "q", "ut2eq"]), st.integers(0, 6))
def test_power_matches_iteration(which, k):
    R = {"gf4": fr.gf(4), "q": fr.trunc_st(2, 3), "ut2eq": fr.ut2_equal_diag(5)}[which]
    name = {"gf4": "frobenius", "q": "swap", "ut2eq": "ut2_negate_b"}[which]
    f = builtin(R, name)
    p = power(f, k)
    for x in range(R.q):
        y = x
        for _ in range(k):
            y = int(f.images[y])
        assert int(p.images[x]) == y


def test_word_closure_contains_ordered_products():
    R = fr.ut2(3)
    fam = MapFamily(R, [builtin(R, "ut2_keep_a"), builtin(R, "ut2_keep_c")])
    words = {m.images.tobytes() for m in closure(fam, "sigma-words").members}
    ordered = {m.images.tobytes() for m in closure(fam, "sigma-alpha").members}
    assert ordered <= words


def test_zero_map_is_a_derivation_for_any_sigma():
    R = fr.gf(4)
    z = zero_map(R, builtin(R, "frobenius"))
    assert z.is_zero and z.role == "derivation"
    assert isinstance(z, RingMap)
    assert np.all(z.images == R.zero)
