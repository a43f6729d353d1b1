"""Exact decision procedures for ring predicates on finite rings.

Every predicate scans in a fixed order and stops at the first violation, so
witnesses are deterministic and minimal in scan order.  Witness values keyed
by a single letter (``a``, ``b``, ``c``, ``r``, ``e``) are element indices;
keys ending in ``_set`` hold element bitsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .endo import MapClosure, MapFamily, closure
from .finring import (
    DEFAULT_RING_CAP,
    FiniteRing,
    annihilator,
    bits_to_list,
    enumerate_ideals,
    idempotents,
    mask_to_bits,
    nilpotent_mask,
    radicals,
    sandwich_witness,
    sandwich_zero,
)

ELEMENTWISE = ("reduced", "abelian", "semicommutative", "symmetric", "reversible",
               "reflexive", "weak_symmetric", "nil_reversible")
RADICAL = ("two_primal", "NI", "NJ")
ANNIHILATOR = ("baer", "quasi_baer")
FAMILY = ("sigma_semicommutative", "sigma_rigid", "sigma_compatible", "delta_compatible",
          "weak_sigma_compatible", "weak_delta_compatible", "skew_rnp_right", "skew_rnp_left")
PREDICATES = ELEMENTWISE + RADICAL + ANNIHILATOR + FAMILY


@dataclass
class Verdict:
    value: bool | None  # None means not applicable
    witness: dict = field(default_factory=dict)
    note: str = ""

    def __bool__(self) -> bool:
        raise TypeError("use verdict.value explicitly")

    def to_json(self, R: FiniteRing) -> dict:
        out: dict = {"value": "n/a" if self.value is None else self.value}
        if self.witness:
            out["witness"] = witness_json(R, self.witness)
        if self.note:
            out["note"] = self.note
        return out


def witness_json(R: FiniteRing, witness: dict) -> dict:
    out = {}
    for k, v in witness.items():
        if k.endswith("_set"):
            out[k] = R.format_set(int(v))
        elif len(k) == 1 and isinstance(v, (int, np.integer)):
            out[k] = R.labels[int(v)]
        elif isinstance(v, tuple):
            out[k] = list(v)
        else:
            out[k] = v
    return out


def _ok() -> Verdict:
    return Verdict(True)


def _first(bad: np.ndarray):
    hits = np.argwhere(bad)
    return None if len(hits) == 0 else tuple(int(x) for x in hits[0])


# -- element-wise predicates ------------------------------------------------------


def is_reduced(R: FiniteRing) -> Verdict:
    idx = np.arange(R.q)
    bad = (R.mul[idx, idx] == R.zero) & (idx != R.zero)
    w = _first(bad)
    return _ok() if w is None else Verdict(False, {"a": w[0]})


def is_abelian(R: FiniteRing) -> Verdict:
    for e in bits_to_list(idempotents(R)):
        diff = np.flatnonzero(R.mul[e, :] != R.mul[:, e])
        if len(diff):
            return Verdict(False, {"e": e, "r": int(diff[0])})
    return _ok()


def is_semicommutative(R: FiniteRing) -> Verdict:
    Z = sandwich_zero(R)
    w = _first((R.mul == R.zero) & ~Z)
    if w is None:
        return _ok()
    a, b = w
    return Verdict(False, {"a": a, "b": b, "r": sandwich_witness(R, a, b)})


def is_reversible(R: FiniteRing) -> Verdict:
    zero = R.mul == R.zero
    w = _first(zero & ~zero.T)
    return _ok() if w is None else Verdict(False, {"a": w[0], "b": w[1]})


def is_reflexive(R: FiniteRing) -> Verdict:
    Z = sandwich_zero(R)
    w = _first(Z & ~Z.T)
    if w is None:
        return _ok()
    a, b = w
    return Verdict(False, {"a": a, "b": b, "r": sandwich_witness(R, b, a)})


def _triple_scan(R: FiniteRing, good: Callable[[np.ndarray], np.ndarray]) -> Verdict:
    """First (a, b, c) with good(abc) but not good(acb)."""
    M = R.mul
    for a in range(R.q):
        T = M[M[a, :], :]  # T[b, c] = abc
        g = good(T)
        w = _first(g & ~g.T)
        if w is not None:
            return Verdict(False, {"a": a, "b": w[0], "c": w[1]})
    return _ok()


def is_symmetric(R: FiniteRing) -> Verdict:
    return _triple_scan(R, lambda T: T == R.zero)


def is_weak_symmetric(R: FiniteRing) -> Verdict:
    nil = nilpotent_mask(R)
    return _triple_scan(R, lambda T: nil[T])


def is_nil_reversible(R: FiniteRing) -> Verdict:
    """For a in R and b nilpotent: ab = 0 iff ba = 0."""
    nil = nilpotent_mask(R)
    zero = R.mul == R.zero
    bad = (zero != zero.T) & nil[None, :]
    w = _first(bad)
    return _ok() if w is None else Verdict(False, {"a": w[0], "b": w[1]})


# -- radical predicates ------------------------------------------------------------


def _radical_equal(R: FiniteRing, which: str, cap: int) -> Verdict:
    rs = radicals(R, cap=cap)
    target = getattr(rs, which).members
    extra = rs.nilpotents & ~target
    if extra == 0 and target & ~rs.nilpotents == 0:
        return _ok()
    a = bits_to_list(extra or (target & ~rs.nilpotents))[0]
    return Verdict(False, {"a": a, "radical_set": target, "nilpotent_set": rs.nilpotents})


def is_two_primal(R: FiniteRing, cap: int = DEFAULT_RING_CAP) -> Verdict:
    return _radical_equal(R, "prime_radical", cap)


def is_ni(R: FiniteRing, cap: int = DEFAULT_RING_CAP) -> Verdict:
    return _radical_equal(R, "upper_nilradical", cap)


def is_nj(R: FiniteRing, cap: int = DEFAULT_RING_CAP) -> Verdict:
    return _radical_equal(R, "jacobson", cap)


# -- Baer and quasi-Baer --------------------------------------------------------------


def idempotent_right_ideals(R: FiniteRing) -> dict[int, int]:
    """Map from the bitset eR to the first idempotent e generating it."""
    out: dict[int, int] = {}
    for e in bits_to_list(idempotents(R)):
        key = mask_to_bits(np.isin(np.arange(R.q), R.mul[e, :]))
        out.setdefault(key, e)
    return out


def right_annihilators(R: FiniteRing) -> list[tuple[int, int]]:
    """All r_R(S) for nonempty S, as (annihilator bitset, generator bitset S).

    r_R(S) is the intersection of the r_R(s), so closing the singleton
    annihilators under intersection reaches every subset annihilator.
    Order: singletons in generator order, then intersections as found.
    """
    found: list[tuple[int, int]] = []
    index: dict[int, int] = {}
    singles = []
    for a in range(R.q):
        ann = annihilator(R, "right", [a]).members
        singles.append((ann, 1 << a))
        if ann not in index:
            index[ann] = len(found)
            found.append((ann, 1 << a))
    pos = 0
    while pos < len(found):
        ann, gens = found[pos]
        pos += 1
        for s_ann, s_gen in singles:
            meet = ann & s_ann
            if meet not in index:
                index[meet] = len(found)
                found.append((meet, gens | s_gen))
    return found


def is_baer(R: FiniteRing, cap: int = DEFAULT_RING_CAP) -> Verdict:
    gens = idempotent_right_ideals(R)
    for ann, S in right_annihilators(R):
        if ann not in gens:
            return Verdict(False, {"subset_set": S, "annihilator_set": ann})
    return _ok()


def is_quasi_baer(R: FiniteRing, cap: int = DEFAULT_RING_CAP) -> Verdict:
    gens = idempotent_right_ideals(R)
    for I in enumerate_ideals(R, "right", cap=cap):
        ann = annihilator(R, "right", I.members).members
        if ann not in gens:
            return Verdict(False, {"ideal_set": I.members, "annihilator_set": ann})
    return _ok()


# -- family predicates ----------------------------------------------------------------


def _scan_members(stack: np.ndarray, bad_for: Callable[[np.ndarray], np.ndarray]):
    """Lexicographically least (a, b) violating any member, then the first such member."""
    best = None
    for k, phi in enumerate(stack):
        w = _first(bad_for(phi))
        if w is not None and (best is None or w < best[0]):
            best = (w, k)
    return best


def sigma_semicommutative(R: FiniteRing, fam: MapFamily, kind: str = "sigma-alpha") -> Verdict:
    """ab = 0 implies a R phi(b) = 0 for every phi in the closure with alpha != 0."""
    C = closure(fam, kind, include_identity=False)
    Z = sandwich_zero(R)
    zero = R.mul == R.zero
    hit = _scan_members(C.image_stack(), lambda phi: zero & ~Z[:, phi])
    if hit is None:
        return _ok()
    (a, b), k = hit
    m = C.members[k]
    fb = int(m.images[b])
    return Verdict(False, {"a": a, "b": b, "r": sandwich_witness(R, a, fb),
                           "alpha": m.exponent if m.exponent is not None else m.label()})


def sigma_semicommutative_breakdown(R: FiniteRing, fam: MapFamily) -> list[Verdict]:
    """Per-map verdicts, each with the single-map family {sigma_i}."""
    return [sigma_semicommutative(R, MapFamily(R, [s])) for s in fam.sigmas]


def sigma_rigid(R: FiniteRing, fam: MapFamily) -> Verdict:
    """a phi(a) = 0 implies a = 0, with phi over the closure including the identity."""
    C = closure(fam, "sigma-alpha", include_identity=True)
    idx = np.arange(R.q)
    nonzero = idx != R.zero
    best = None
    for k, phi in enumerate(C.image_stack()):
        bad = np.flatnonzero((R.mul[idx, phi] == R.zero) & nonzero)
        if len(bad) and (best is None or bad[0] < best[0]):
            best = (int(bad[0]), k)
    if best is None:
        return _ok()
    a, k = best
    return Verdict(False, {"a": a, "alpha": C.members[k].exponent})


def _product_zero(R: FiniteRing, weak: bool) -> np.ndarray:
    if weak:
        return nilpotent_mask(R)[R.mul]
    return R.mul == R.zero


def sigma_compatible(R: FiniteRing, fam: MapFamily, weak: bool = False) -> Verdict:
    """a phi(b) = 0 iff ab = 0 (or the same with membership in N(R) when weak)."""
    C = closure(fam, "sigma-alpha", include_identity=True)
    base = _product_zero(R, weak)
    hit = _scan_members(C.image_stack(), lambda phi: base != base[:, phi])
    if hit is None:
        return _ok()
    (a, b), k = hit
    return Verdict(False, {"a": a, "b": b, "alpha": C.members[k].exponent})


def delta_compatible(R: FiniteRing, fam: MapFamily, weak: bool = False) -> Verdict:
    """ab = 0 implies a delta^beta(b) = 0 (weak form: products in N(R))."""
    C = closure(fam, "delta-beta", include_identity=True)
    base = _product_zero(R, weak)
    hit = _scan_members(C.image_stack(), lambda d: base & ~base[:, d])
    if hit is None:
        return _ok()
    (a, b), k = hit
    return Verdict(False, {"a": a, "b": b, "beta": C.members[k].exponent})


def skew_rnp(R: FiniteRing, fam: MapFamily, side: str = "right") -> Verdict:
    """For nilpotent a, b with aRb = 0: bR phi(a) = 0 (right) or phi(b) R a = 0 (left)."""
    C = closure(fam, "sigma-alpha", include_identity=True)
    Z = sandwich_zero(R)
    nil = nilpotent_mask(R)
    prem = Z & nil[:, None] & nil[None, :]
    if side == "right":
        # need Z[b, phi(a)] for every (a, b) in prem
        hit = _scan_members(C.image_stack(), lambda phi: prem & ~Z[:, phi].T)
    elif side == "left":
        # need Z[phi(b), a]
        hit = _scan_members(C.image_stack(), lambda phi: prem & ~Z[phi, :].T)
    else:
        raise ValueError(f"side must be right or left, got {side!r}")
    if hit is None:
        return _ok()
    (a, b), k = hit
    return Verdict(False, {"a": a, "b": b, "alpha": C.members[k].exponent})


# -- independent rechecks ---------------------------------------------------------------
#
# These re-evaluate a witness directly from the definition with scalar
# arithmetic, sharing no code with the vectorized scans above.


def _prod(R: FiniteRing, *xs: int) -> int:
    out = R.one
    for x in xs:
        out = R.times(out, x)
    return out


def _is_nil(R: FiniteRing, a: int) -> bool:
    x = a
    for _ in range(R.q + 1):
        if x == R.zero:
            return True
        x = R.times(x, a)
    return False


def _sigma_alpha(fam: MapFamily, alpha) -> Callable[[int], int]:
    def apply(x: int) -> int:
        for i in range(len(alpha) - 1, -1, -1):
            for _ in range(alpha[i]):
                x = int(fam.sigmas[i].images[x])
        return x
    return apply


def _delta_beta(fam: MapFamily, beta) -> Callable[[int], int]:
    ds = fam.effective_deltas()

    def apply(x: int) -> int:
        for i in range(len(beta) - 1, -1, -1):
            for _ in range(beta[i]):
                x = int(ds[i].images[x])
        return x
    return apply


def recheck(R: FiniteRing, predicate: str, witness: dict, fam: MapFamily | None = None) -> bool:
    """True iff the witness really violates the named predicate."""
    w = witness
    z = R.zero
    if predicate == "reduced":
        return w["a"] != z and R.times(w["a"], w["a"]) == z
    if predicate == "abelian":
        e, r = w["e"], w["r"]
        return R.times(e, e) == e and R.times(e, r) != R.times(r, e)
    if predicate == "semicommutative":
        return R.times(w["a"], w["b"]) == z and _prod(R, w["a"], w["r"], w["b"]) != z
    if predicate == "reversible":
        return R.times(w["a"], w["b"]) == z and R.times(w["b"], w["a"]) != z
    if predicate == "reflexive":
        a, b = w["a"], w["b"]
        return all(_prod(R, a, r, b) == z for r in range(R.q)) and _prod(R, b, w["r"], a) != z
    if predicate == "symmetric":
        return _prod(R, w["a"], w["b"], w["c"]) == z and _prod(R, w["a"], w["c"], w["b"]) != z
    if predicate == "weak_symmetric":
        return _is_nil(R, _prod(R, w["a"], w["b"], w["c"])) and not _is_nil(R, _prod(R, w["a"], w["c"], w["b"]))
    if predicate == "nil_reversible":
        a, b = w["a"], w["b"]
        return _is_nil(R, b) and ((R.times(a, b) == z) != (R.times(b, a) == z))
    if predicate in ("two_primal", "NI", "NJ"):
        a = w["a"]
        return (_is_nil(R, a) != bool(w["radical_set"] >> a & 1))
    if predicate in ("baer", "quasi_baer"):
        ann = w["annihilator_set"]
        # ann must really be the right annihilator of the given set
        src = w.get("subset_set", w.get("ideal_set"))
        elems = bits_to_list(src)
        real = 0
        for x in range(R.q):
            if all(R.times(s, x) == z for s in elems):
                real |= 1 << x
        if real != ann:
            return False
        for e in range(R.q):
            if R.times(e, e) == e:
                eR = 0
                for r in range(R.q):
                    eR |= 1 << R.times(e, r)
                if eR == ann:
                    return False
        return True
    if fam is None:
        raise ValueError(f"{predicate} needs the map family")
    if predicate == "sigma_semicommutative":
        alpha = w["alpha"]
        if not any(alpha):
            return False
        phi_b = _sigma_alpha(fam, alpha)(w["b"])
        return R.times(w["a"], w["b"]) == z and _prod(R, w["a"], w["r"], phi_b) != z
    if predicate == "sigma_rigid":
        a = w["a"]
        return a != z and R.times(a, _sigma_alpha(fam, w["alpha"])(a)) == z
    if predicate in ("sigma_compatible", "weak_sigma_compatible"):
        a, b = w["a"], w["b"]
        test = (lambda x: _is_nil(R, x)) if predicate.startswith("weak") else (lambda x: x == z)
        return test(R.times(a, b)) != test(R.times(a, _sigma_alpha(fam, w["alpha"])(b)))
    if predicate in ("delta_compatible", "weak_delta_compatible"):
        a, b = w["a"], w["b"]
        test = (lambda x: _is_nil(R, x)) if predicate.startswith("weak") else (lambda x: x == z)
        return test(R.times(a, b)) and not test(R.times(a, _delta_beta(fam, w["beta"])(b)))
    if predicate in ("skew_rnp_right", "skew_rnp_left"):
        a, b = w["a"], w["b"]
        if not (_is_nil(R, a) and _is_nil(R, b)):
            return False
        if any(_prod(R, a, r, b) != z for r in range(R.q)):
            return False
        phi = _sigma_alpha(fam, w["alpha"])
        if predicate == "skew_rnp_right":
            return any(_prod(R, b, r, phi(a)) != z for r in range(R.q))
        return any(_prod(R, phi(b), r, a) != z for r in range(R.q))
    raise ValueError(f"unknown predicate {predicate!r}")


# -- aggregate ---------------------------------------------------------------------


ELEMENTWISE_FUNCS = {
    "reduced": is_reduced,
    "abelian": is_abelian,
    "semicommutative": is_semicommutative,
    "symmetric": is_symmetric,
    "reversible": is_reversible,
    "reflexive": is_reflexive,
    "weak_symmetric": is_weak_symmetric,
    "nil_reversible": is_nil_reversible,
}


def classify_elementwise(R: FiniteRing) -> dict[str, Verdict]:
    return {k: f(R) for k, f in ELEMENTWISE_FUNCS.items()}


def classify_radical(R: FiniteRing, cap: int = DEFAULT_RING_CAP) -> dict[str, Verdict]:
    return {"two_primal": is_two_primal(R, cap), "NI": is_ni(R, cap), "NJ": is_nj(R, cap)}


def classify_family(R: FiniteRing, fam: MapFamily | None) -> dict[str, Verdict]:
    if fam is None:
        return {k: Verdict(None, note="no map family") for k in FAMILY}
    out = {
        "sigma_semicommutative": sigma_semicommutative(R, fam),
        "sigma_rigid": sigma_rigid(R, fam),
        "sigma_compatible": sigma_compatible(R, fam),
        "weak_sigma_compatible": sigma_compatible(R, fam, weak=True),
    }
    if fam.deltas is None:
        out["delta_compatible"] = Verdict(None, note="no derivations given")
        out["weak_delta_compatible"] = Verdict(None, note="no derivations given")
    else:
        out["delta_compatible"] = delta_compatible(R, fam)
        out["weak_delta_compatible"] = delta_compatible(R, fam, weak=True)
    out["skew_rnp_right"] = skew_rnp(R, fam, "right")
    out["skew_rnp_left"] = skew_rnp(R, fam, "left")
    return out


def classify(R: FiniteRing, fam: MapFamily | None = None,
             cap: int = DEFAULT_RING_CAP) -> dict[str, Verdict]:
    """Full report, keyed in the order of ``PREDICATES``."""
    out = classify_elementwise(R)
    out.update(classify_radical(R, cap))
    out["baer"] = is_baer(R, cap)
    out["quasi_baer"] = is_quasi_baer(R, cap)
    out.update(classify_family(R, fam))
    return {k: out[k] for k in PREDICATES}


def audit_theorems(fixtures, seed: int = 0, only=None):
    """Forwarder to :func:`sigmapbw.audit.audit_theorems` (kept there to avoid an import cycle)."""
    from .audit import audit_theorems as run
    return run(fixtures, seed=seed, only=only)
