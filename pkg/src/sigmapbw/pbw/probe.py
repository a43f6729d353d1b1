"""Bounded-degree probes of properties of the (infinite) extension.

A probe searches a finite window of candidate polynomials: supports drawn
from the standard monomials of degree <= d, at most s terms, nonzero
coefficients.  Strata (by support size) are enumerated exhaustively while the
running count stays under the limit and sampled with a seeded RNG after that.

Only a "counterexample" verdict is definitive, and its witness is re-checked
with scalar ``multiply`` before it is returned.  "none_found" means nothing
turned up inside the recorded window.  "candidate" is used for SQA1, whose
premise fAg = 0 can only be checked inside the window.

Products inside the window are evaluated with a dense table
P[alpha, b, beta] = x^alpha * b * x^beta built from the rewriting engine.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

import numpy as np

from ..endo import MapFamily, closure
from ..finring import additive_span, bits_to_list, idempotents, sandwich_zero, to_bits
from .extension import DegreeOverflow, Extension, Polynomial, monomial_key
from .lift import LiftError, lift_hypothesis_failures

PROPERTIES = (
    "semicommutative", "reduced", "abelian", "sigma_semicommutative", "sa1", "sqa1",
    "sigma_skew_armendariz", "skew_armendariz", "bounded_baer",
)


@dataclass(frozen=True)
class ProbeBudget:
    max_degree: int = 2
    max_support: int = 2
    exhaustive_limit: int = 5000
    sample_count: int = 600
    max_evaluations: int = 10 ** 7
    seed: int = 0


@dataclass
class ProbeVerdict:
    property: str
    kind: str                       # counterexample | none_found | candidate | not_applicable
    witness: dict | None = None
    manifest: dict = field(default_factory=dict)
    note: str = ""

    @property
    def definitive(self) -> bool:
        return self.kind == "counterexample"

    @property
    def value(self):
        if self.kind == "counterexample":
            return False
        if self.kind == "not_applicable":
            return "n/a"
        return "inconclusive"

    def to_json(self) -> dict:
        out = {"value": self.value, "kind": self.kind, "manifest": self.manifest}
        if self.witness is not None:
            out["witness"] = {k: _jsonable(v) for k, v in self.witness.items()}
        if self.note:
            out["note"] = self.note
        return out


def _jsonable(v):
    if isinstance(v, Polynomial):
        return v.to_json()
    if isinstance(v, tuple):
        return list(v)
    return v


class _Budget(Exception):
    pass


class _Window:
    """Candidate set plus the dense product kernel."""

    def __init__(self, ext: Extension, budget: ProbeBudget, factor: int):
        if budget.max_degree < 0 or budget.max_support < 1:
            raise ValueError("probe degree must be >= 0 and support >= 1")
        self.ext = ext
        R = self.R = ext.ring
        self.budget = budget
        d = min(budget.max_degree, ext.degree_cap)
        # products of `factor` window elements must stay under the cap
        eff = min(d, ext.degree_cap // factor)
        self.requested_degree = budget.max_degree
        self.degree = eff
        top = min(ext.degree_cap, factor * max(eff, 0))
        self.monos = sorted((a for a in itertools.product(range(top + 1), repeat=ext.n)
                             if sum(a) <= top), key=monomial_key)
        self.index = {a: i for i, a in enumerate(self.monos)}
        self.m = {k: sum(1 for a in self.monos if sum(a) <= k) for k in range(top + 1)}
        self.md = self.m[eff]
        self.evaluations = 0
        self.truncated = False
        self._tables: dict[tuple[int, int], np.ndarray] = {}
        self.nonzero = [c for c in range(R.q) if c != R.zero]
        self.cands, self.strata = self._candidates()
        self.skipped = self._count(self._mono_count(d)) - self._count(self.md)

    def _mono_count(self, d: int) -> int:
        return math.comb(d + self.ext.n, self.ext.n)

    def _count(self, m: int) -> int:
        q1 = len(self.nonzero)
        return sum(math.comb(m, k) * q1 ** k for k in range(1, min(self.budget.max_support, m) + 1))

    def _candidates(self):
        R, b = self.R, self.budget
        rows: list[np.ndarray] = []
        strata = []
        running = 0
        rng = random.Random(f"{b.seed}:{self.ext.name}")
        for k in range(1, min(b.max_support, self.md) + 1):
            size = math.comb(self.md, k) * len(self.nonzero) ** k
            if running + size <= b.exhaustive_limit:
                for supp in itertools.combinations(range(self.md), k):
                    for coefs in itertools.product(self.nonzero, repeat=k):
                        row = np.full(self.md, R.zero, dtype=np.int64)
                        row[list(supp)] = coefs
                        rows.append(row)
                strata.append({"support": k, "mode": "exhaustive", "size": size, "covered": size})
                running += size
            else:
                want = min(b.sample_count, size)
                seen = set()
                picked = []
                while len(picked) < want:
                    supp = tuple(sorted(rng.sample(range(self.md), k)))
                    coefs = tuple(rng.choice(self.nonzero) for _ in range(k))
                    if (supp, coefs) in seen:
                        continue
                    seen.add((supp, coefs))
                    picked.append((supp, coefs))
                for supp, coefs in sorted(picked):
                    row = np.full(self.md, R.zero, dtype=np.int64)
                    row[list(supp)] = coefs
                    rows.append(row)
                strata.append({"support": k, "mode": "sampled", "size": size, "covered": want,
                               "seed": b.seed})
                running += want
        C = np.array(rows, dtype=np.int64).reshape(len(rows), self.md)
        return C, strata

    def manifest(self) -> dict:
        return {
            "degree": self.degree,
            "requested_degree": self.requested_degree,
            "max_support": self.budget.max_support,
            "monomials": self.md,
            "strata": self.strata,
            "candidates": int(len(self.cands)),
            "evaluations": self.evaluations,
            "skipped_overflow": self.skipped,
            "truncated": self.truncated,
        }

    # -- conversion ---------------------------------------------------------------
    def poly(self, row: np.ndarray) -> Polynomial:
        z = self.R.zero
        return Polynomial(self.ext, {self.monos[j]: int(c) for j, c in enumerate(row) if c != z})

    def dense(self, f: Polynomial, width: int) -> np.ndarray:
        row = np.full(width, self.R.zero, dtype=np.int64)
        for a, c in f.terms.items():
            row[self.index[a]] = c
        return row

    def pad(self, M: np.ndarray, width: int) -> np.ndarray:
        out = np.full((M.shape[0], width), self.R.zero, dtype=np.int64)
        out[:, :M.shape[1]] = M
        return out

    # -- kernel ---------------------------------------------------------------------
    def _table(self, dl: int, dr: int) -> np.ndarray:
        key = (dl, dr)
        if key not in self._tables:
            ext, R = self.ext, self.R
            mL, mR, mO = self.m[dl], self.m[dr], self.m[dl + dr]
            P = np.full((mL, R.q, mR, mO), R.zero, dtype=np.int64)
            for i in range(mL):
                left = ext.monomial(self.monos[i])
                for b in self.nonzero:
                    for j in range(mR):
                        prod = ext.multiply(left, ext.monomial(self.monos[j], b))
                        for a, c in prod.terms.items():
                            P[i, b, j, self.index[a]] = c
            self._tables[key] = P
        return self._tables[key]

    def charge(self, k: int) -> None:
        self.evaluations += int(k)
        if self.evaluations > self.budget.max_evaluations:
            self.truncated = True
            raise _Budget

    def bmul(self, F: np.ndarray, G: np.ndarray, dl: int, dr: int) -> np.ndarray:
        """Row-wise products F[k] * G[k] (either side may have a single row)."""
        R = self.R
        P = self._table(dl, dr)
        N = max(F.shape[0], G.shape[0])
        self.charge(N)
        out = np.full((N, self.m[dl + dr]), R.zero, dtype=np.int64)
        zf = F != R.zero
        zg = G != R.zero
        cols_f = np.flatnonzero(zf.any(axis=0))
        cols_g = np.flatnonzero(zg.any(axis=0))
        for i in cols_f:
            a = F[:, i][:, None]
            for j in cols_g:
                vec = P[i, G[:, j], j]
                out = R.add[out, R.mul[a, vec]]
        return out

    def is_zero_rows(self, M: np.ndarray) -> np.ndarray:
        return (M == self.R.zero).all(axis=1)

    def h_terms(self) -> list[np.ndarray]:
        """Terms c x^gamma with c from an additive generating set of R (one first)."""
        R = self.R
        gens, span = [], to_bits([R.zero])
        for a in [R.one] + [x for x in range(R.q) if x != R.one]:
            if not span >> a & 1:
                gens.append(a)
                span = additive_span(R, span | 1 << a)
        out = []
        for j in range(self.md):
            for c in gens:
                row = np.full(self.md, R.zero, dtype=np.int64)
                row[j] = c
                out.append(row)
        return out


def _sigma_power(ext: Extension, alpha) -> np.ndarray:
    img = np.arange(ext.ring.q)
    for k in range(ext.n - 1, -1, -1):
        for _ in range(alpha[k]):
            img = ext.sigmas[k].images[img]
    return img


def _recheck(ok: bool) -> None:
    if not ok:
        raise RuntimeError("probe witness failed the scalar re-check")


def _done(W: _Window, prop: str, witness=None, kind=None, note="") -> ProbeVerdict:
    if kind is None:
        kind = "counterexample" if witness is not None else "none_found"
    if kind == "none_found" and not note:
        note = "inconclusive: nothing found in the covered window"
    return ProbeVerdict(prop, kind, witness, W.manifest(), note)


# -- properties -----------------------------------------------------------------------


def _zero_partners(W: _Window, f: np.ndarray) -> np.ndarray:
    d = W.degree
    return np.flatnonzero(W.is_zero_rows(W.bmul(f[None, :], W.cands, d, d)))


def _sandwich_search(W: _Window, prop: str, twist: list[tuple[object, np.ndarray]]):
    """First (f, g, twist, h) with fg = 0 and f h tw(g) != 0, h over additive term generators."""
    d = W.degree
    H = W.h_terms()
    for f in W.cands:
        Z = _zero_partners(W, f)
        if not Z.size:
            continue
        FH = []
        for h in H:
            fh = W.ext.multiply(W.poly(f), W.poly(h))
            W.charge(1)
            FH.append(W.dense(fh, W.m[2 * d]))
        G = W.cands[Z]
        bad = np.zeros((len(twist), len(H), Z.size), dtype=bool)
        for t, (_, img) in enumerate(twist):
            Gt = img[G]
            for k, fh in enumerate(FH):
                if (fh != W.R.zero).any():
                    bad[t, k] = ~W.is_zero_rows(W.bmul(fh[None, :], Gt, 2 * d, d))
        hit = np.flatnonzero(bad.any(axis=(0, 1)))
        if hit.size:
            g_pos = int(hit[0])
            t_pos, h_pos = map(int, np.argwhere(bad[:, :, g_pos])[0])
            return f, H[h_pos], G[g_pos], twist[t_pos]
    return None


def probe_semicommutative(W: _Window) -> ProbeVerdict:
    ident = np.arange(W.R.q)
    hit = _sandwich_search(W, "semicommutative", [(None, ident)])
    if hit is None:
        return _done(W, "semicommutative")
    f, h, g, _ = (W.poly(x) if isinstance(x, np.ndarray) else x for x in hit)
    fhg = f * h * g
    _recheck((f * g).is_zero() and not fhg.is_zero())
    return _done(W, "semicommutative", {"f": f, "h": h, "g": g, "fhg": fhg})


def probe_sigma_semicommutative(W: _Window) -> ProbeVerdict:
    ext = W.ext
    fails = lift_hypothesis_failures(ext)
    if fails:
        return ProbeVerdict("sigma_semicommutative", "not_applicable", None, W.manifest(),
                            f"lift hypothesis fails: {fails[0]}")
    fam = MapFamily(ext.ring, ext.sigmas)
    members = closure(fam, "sigma-alpha", include_identity=False).members
    twist = [(m.exponent, np.asarray(m.images)) for m in members]
    hit = _sandwich_search(W, "sigma_semicommutative", twist)
    if hit is None:
        return _done(W, "sigma_semicommutative")
    f, h, g = W.poly(hit[0]), W.poly(hit[1]), W.poly(hit[2])
    alpha, img = hit[3]
    sg = g.map_coefficients(img)
    fhs = f * h * sg
    _recheck((f * g).is_zero() and not fhs.is_zero())
    return _done(W, "sigma_semicommutative",
                 {"f": f, "h": h, "g": g, "alpha": list(alpha), "sigma_alpha_g": sg, "product": fhs})


def probe_reduced(W: _Window) -> ProbeVerdict:
    d = W.degree
    sq = W.bmul(W.cands, W.cands, d, d)
    hit = np.flatnonzero(W.is_zero_rows(sq))
    if not hit.size:
        return _done(W, "reduced")
    f = W.poly(W.cands[hit[0]])
    _recheck((f * f).is_zero())
    return _done(W, "reduced", {"f": f})


def probe_abelian(W: _Window) -> ProbeVerdict:
    d = W.degree
    sq = W.bmul(W.cands, W.cands, d, d)
    idem = np.flatnonzero((sq == W.pad(W.cands, sq.shape[1])).all(axis=1))
    for k in idem:
        e = W.cands[k][None, :]
        diff = ~(W.bmul(e, W.cands, d, d) == W.bmul(W.cands, e, d, d)).all(axis=1)
        hit = np.flatnonzero(diff)
        if hit.size:
            ep, g = W.poly(W.cands[k]), W.poly(W.cands[hit[0]])
            _recheck(ep * ep == ep and ep * g != g * ep)
            return _done(W, "abelian", {"e": ep, "g": g, "eg": ep * g, "ge": g * ep})
    return _done(W, "abelian")


def _coef_search(W: _Window, prop: str, left_coefs):
    """fg = 0 but some a * tw(b) != 0 for a from left_coefs(f) and b a coefficient of g."""
    R = W.R
    for f in W.cands:
        Z = _zero_partners(W, f)
        if not Z.size:
            continue
        G = W.cands[Z]
        for g_pos in range(Z.size):
            for i, a, img in left_coefs(f):
                prods = R.mul[a, img[G[g_pos]]]
                nz = np.flatnonzero((prods != R.zero) & (G[g_pos] != R.zero))
                if nz.size:
                    return f, G[g_pos], i, int(nz[0]), a, img
    return None


def _coef_verdict(W: _Window, prop: str, hit) -> ProbeVerdict:
    if hit is None:
        return _done(W, prop)
    f, g, i, j, a, img = hit
    fp, gp = W.poly(f), W.poly(g)
    b = int(g[j])
    prod = W.R.times(a, int(img[b]))
    _recheck((fp * gp).is_zero() and prod != W.R.zero)
    lab = W.R.labels
    return _done(W, prop, {"f": fp, "g": gp, "a_i": lab[a], "X_i": list(W.monos[i]),
                           "b_j": lab[b], "Y_j": list(W.monos[j]), "product": lab[prod]})


def probe_sa1(W: _Window) -> ProbeVerdict:
    ident = np.arange(W.R.q)

    def coefs(f):
        return [(i, int(f[i]), ident) for i in np.flatnonzero(f != W.R.zero)]
    return _coef_verdict(W, "sa1", _coef_search(W, "sa1", coefs))


def probe_sigma_skew_armendariz(W: _Window) -> ProbeVerdict:
    def coefs(f):
        return [(i, int(f[i]), _sigma_power(W.ext, W.monos[i])) for i in np.flatnonzero(f != W.R.zero)]
    return _coef_verdict(W, "sigma_skew_armendariz", _coef_search(W, "sigma_skew_armendariz", coefs))


def probe_skew_armendariz(W: _Window) -> ProbeVerdict:
    ident = np.arange(W.R.q)

    def coefs(f):
        return [(0, int(f[0]), ident)] if f[0] != W.R.zero else []
    return _coef_verdict(W, "skew_armendariz", _coef_search(W, "skew_armendariz", coefs))


def probe_sqa1(W: _Window) -> ProbeVerdict:
    """Window version: f h g = 0 for every window term h, yet a_i R b_j != 0."""
    R, d = W.R, W.degree
    Zs = sandwich_zero(R)
    H = W.h_terms()
    for f in W.cands:
        Z = _zero_partners(W, f)
        if not Z.size:
            continue
        G = W.cands[Z]
        ok = np.ones(Z.size, dtype=bool)
        for h in H:
            fh = W.dense(W.ext.multiply(W.poly(f), W.poly(h)), W.m[2 * d])
            W.charge(1)
            if (fh != R.zero).any():
                ok &= W.is_zero_rows(W.bmul(fh[None, :], G, 2 * d, d))
        for g_pos in np.flatnonzero(ok):
            g = G[g_pos]
            for i in np.flatnonzero(f != R.zero):
                for j in np.flatnonzero(g != R.zero):
                    if not Zs[f[i], g[j]]:
                        lab = R.labels
                        return _done(W, "sqa1", {
                            "f": W.poly(f), "g": W.poly(g), "a_i": lab[int(f[i])],
                            "b_j": lab[int(g[j])], "X_i": list(W.monos[i]), "Y_j": list(W.monos[j])},
                            kind="candidate",
                            note="fAg = 0 verified only for h in the window; not definitive")
    return _done(W, "sqa1")


def probe_bounded_baer(W: _Window) -> ProbeVerdict:
    """For each window h with l_R(coefficients of h) = Re: is l_A(h) = Ae inside the window?"""
    R, d = W.R, W.degree
    idem = bits_to_list(idempotents(R))
    principal = {}
    for e in idem:
        principal.setdefault(to_bits(int(x) for x in R.mul[:, e]), e)
    const = {e: np.array([[e] + [R.zero] * (W.md - 1)], dtype=np.int64) for e in idem}
    in_Ae = {e: (W.bmul(W.cands, const[e], d, 0) == W.pad(W.cands, W.m[d])).all(axis=1)
             for e in idem}
    not_generated = 0
    for h in W.cands:
        coefs = [int(c) for c in h if c != R.zero]
        lR = to_bits(np.flatnonzero((R.mul[:, coefs] == R.zero).all(axis=1)))
        e = principal.get(lR)
        if e is None:
            not_generated += 1
            continue
        kills = W.is_zero_rows(W.bmul(W.cands, h[None, :], d, d))
        bad = np.flatnonzero(kills != in_Ae[e])
        if bad.size:
            hp, g = W.poly(h), W.poly(W.cands[bad[0]])
            ep = W.ext.const(e)
            side = "g h = 0 but g not in Ae" if kills[bad[0]] else "g in Ae but g h != 0"
            _recheck(((g * hp).is_zero()) != (g * ep == g))
            v = _done(W, "bounded_baer", {"h": hp, "g": g, "e": R.labels[e], "mismatch": side})
            v.manifest["not_idempotent_generated"] = not_generated
            return v
    v = _done(W, "bounded_baer")
    v.manifest["not_idempotent_generated"] = not_generated
    return v


_PROBES = {
    "semicommutative": (probe_semicommutative, 3),
    "reduced": (probe_reduced, 2),
    "abelian": (probe_abelian, 2),
    "sigma_semicommutative": (probe_sigma_semicommutative, 3),
    "sa1": (probe_sa1, 2),
    "sqa1": (probe_sqa1, 3),
    "sigma_skew_armendariz": (probe_sigma_skew_armendariz, 2),
    "skew_armendariz": (probe_skew_armendariz, 2),
    "bounded_baer": (probe_bounded_baer, 2),
}


def probe(ext: Extension, prop: str, budget: ProbeBudget | None = None) -> ProbeVerdict:
    """Run one bounded probe; see PROPERTIES for the names."""
    if prop not in _PROBES:
        raise KeyError(f"unknown probe property {prop!r}; expected one of {', '.join(PROPERTIES)}")
    fn, factor = _PROBES[prop]
    W = _Window(ext, budget or ProbeBudget(), factor)
    try:
        return fn(W)
    except _Budget:
        return _done(W, prop, note="inconclusive: evaluation budget exhausted")


def probe_all(ext: Extension, budget: ProbeBudget | None = None,
              props=PROPERTIES) -> dict[str, ProbeVerdict]:
    return {p: probe(ext, p, budget) for p in props}


def idempotent_transparency(ext: Extension, budget: ProbeBudget | None = None) -> list[str]:
    """delta_i(e) = 0, x^alpha e = e x^alpha (|alpha| <= 3), f e = e f on the window."""
    R = ext.ring
    issues = []
    idem = [e for e in bits_to_list(idempotents(R))]
    for e in idem:
        for i, dl in enumerate(ext.deltas):
            if int(dl.images[e]) != R.zero:
                issues.append(f"delta_{i + 1}({R.labels[e]}) != 0")
        ec = ext.const(e)
        top = min(3, ext.degree_cap)
        for a in itertools.product(range(top + 1), repeat=ext.n):
            if sum(a) <= top:
                X = ext.monomial(a)
                if X * ec != ec * X:
                    issues.append(f"x^{list(a)} {R.labels[e]} != {R.labels[e]} x^{list(a)}")
    W = _Window(ext, budget or ProbeBudget(), 2)
    for f in W.cands:
        fp = W.poly(f)
        for e in idem:
            ec = ext.const(e)
            if fp * ec != ec * fp:
                issues.append(f"({fp}) {R.labels[e]} != {R.labels[e]} ({fp})")
                break
    return issues


__all__ = ["PROPERTIES", "ProbeBudget", "ProbeVerdict", "probe", "probe_all",
           "idempotent_transparency", "DegreeOverflow", "LiftError"]
