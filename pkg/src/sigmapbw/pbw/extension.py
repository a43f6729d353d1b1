"""Skew PBW extensions over finite rings: data model, validation and rewriting.

Generators are 0-based internally (x_1 is index 0).  A polynomial is a dict
from exponent tuples to nonzero coefficient indices, coefficients on the
left of standard monomials x_1^a_1 ... x_n^a_n.

Two rewriting rules drive multiplication:

    x_i r   = sigma_i(r) x_i + delta_i(r)
    x_j x_i = d_ij x_i x_j + r0 + r1 x_1 + ... + rn x_n      (i < j)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..endo import RingMap, derivation_violation, identity_map, zero_map
from ..finring import FiniteRing, RingError

Exp = tuple[int, ...]
Terms = dict[Exp, int]


class ExtensionError(RingError):
    """Invalid extension data."""


class DegreeOverflow(ArithmeticError):
    def __init__(self, degree: int, cap: int):
        self.degree = degree
        self.cap = cap
        super().__init__(f"degree {degree} exceeds the cap {cap}")


class AssociativityError(ExtensionError):
    def __init__(self, where: str, left: "Polynomial", right: "Polynomial"):
        self.where = where
        self.left = left
        self.right = right
        super().__init__(f"associativity fails for {where}: {left} != {right}")


@dataclass
class SkewPBWData:
    ring: FiniteRing
    sigmas: list[RingMap]
    deltas: list[RingMap] | None = None
    d: Mapping[tuple[int, int], int] = field(default_factory=dict)
    r: Mapping[tuple[int, int], Sequence[int]] = field(default_factory=dict)
    degree_cap: int = 6
    name: str = "A"

    @property
    def n(self) -> int:
        return len(self.sigmas)


def monomial_key(a: Exp):
    """Monomial order: total degree, then exponent vector."""
    return (sum(a), a)


def _unit(n: int, i: int) -> Exp:
    return tuple(1 if k == i else 0 for k in range(n))


def word_of(a: Exp) -> list[int]:
    return [i for i, k in enumerate(a) for _ in range(k)]


class Extension:
    """A validated skew PBW extension with memoized rewriting."""

    def __init__(self, data: SkewPBWData, *, check: bool = True, probe_cap: int = 3):
        R = data.ring
        n = data.n
        if n < 1:
            raise ExtensionError("need at least one generator")
        if data.degree_cap < 1:
            raise ExtensionError("degree cap must be positive")
        self.ring = R
        self.n = n
        self.name = data.name
        self.degree_cap = int(data.degree_cap)
        self.sigmas = list(data.sigmas)
        self.deltas = list(data.deltas) if data.deltas is not None else [
            zero_map(R, s) for s in self.sigmas]
        self.delta_given = data.deltas is not None
        if len(self.deltas) != n:
            raise ExtensionError("need one delta per sigma")
        for i, s in enumerate(self.sigmas):
            label = s.name or f"sigma_{i + 1}"
            if s.ring is not R:
                raise ExtensionError(f"{label} lives on a different ring")
            if not (s.additive and s.multiplicative):
                raise ExtensionError(f"{label} is not a ring endomorphism")
            if not s.injective:
                raise ExtensionError(f"{label} is not injective")
            if not s.unital:
                raise ExtensionError(f"{label} is not unital")
        for i, (s, dl) in enumerate(zip(self.sigmas, self.deltas)):
            w = derivation_violation(dl.images, s.images, R)
            if w is not None or not dl.additive:
                raise ExtensionError(f"delta_{i + 1} is not a sigma_{i + 1}-derivation (witness {w})")
        self.d: dict[tuple[int, int], int] = {}
        self.r: dict[tuple[int, int], tuple[int, ...]] = {}
        for i in range(n):
            for j in range(i + 1, n):
                dij = int(data.d.get((i, j), R.one))
                if dij == R.zero:
                    raise ExtensionError(f"d_{i + 1},{j + 1} is zero")
                self.d[(i, j)] = dij
                rv = tuple(int(x) for x in data.r.get((i, j), [R.zero] * (n + 1)))
                if len(rv) != n + 1:
                    raise ExtensionError(f"r^({i + 1},{j + 1}) needs {n + 1} entries")
                self.r[(i, j)] = rv
        for key in list(data.d) + list(data.r):
            i, j = key
            if not (0 <= i < j < n):
                raise ExtensionError(f"relation index {(i + 1, j + 1)} must satisfy 1 <= i < j <= n")
        self._coef_cache: dict[tuple[Exp, int], Terms] = {}
        self._gen_cache: dict[tuple[Exp, int], Terms] = {}
        self._mono_cache: dict[tuple[Exp, Exp], Terms] = {}
        self._active: set = set()
        self._limit = self.degree_cap
        self.flags = self._flags()
        if check:
            self.check_associativity(cap=max(probe_cap, 3))

    # -- flags -----------------------------------------------------------------
    def _flags(self) -> dict[str, bool]:
        R = self.ring
        units = R.units()
        derivation_type = all(s.is_identity for s in self.sigmas)
        endomorphism_type = all(dl.is_zero for dl in self.deltas)
        r_zero = all(x == R.zero for v in self.r.values() for x in v)
        return {
            "quasi_commutative": endomorphism_type and r_zero,
            "bijective": all(s.surjective for s in self.sigmas)
            and all(units >> dij & 1 for dij in self.d.values()),
            "derivation_type": derivation_type,
            "endomorphism_type": endomorphism_type,
        }

    def __repr__(self) -> str:
        return f"Extension({self.name!r}, n={self.n}, R={self.ring.name})"

    # -- element constructors ----------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def const(self, r: int | str) -> "Polynomial":
        r = self.ring.element(r)
        return Polynomial(self, {} if r == self.ring.zero else {(0,) * self.n: r})

    def gen(self, i: int) -> "Polynomial":
        """x_i with 1-based i."""
        if not 1 <= i <= self.n:
            raise ExtensionError(f"generator index {i} out of range 1..{self.n}")
        return Polynomial(self, {_unit(self.n, i - 1): self.ring.one})

    def monomial(self, alpha: Sequence[int], coef: int | str | None = None) -> "Polynomial":
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.n or min(alpha) < 0:
            raise ExtensionError(f"bad exponent {alpha}")
        c = self.ring.one if coef is None else self.ring.element(coef)
        return Polynomial(self, {} if c == self.ring.zero else {alpha: c})

    def poly(self, terms: Iterable[tuple[Sequence[int], int | str]]) -> "Polynomial":
        out: Terms = {}
        for alpha, c in terms:
            _accumulate(self.ring, out, tuple(int(a) for a in alpha), self.ring.element(c))
        return Polynomial(self, out)

    # -- rewriting core -------------------------------------------------------------
    def _check_degree(self, deg: int) -> None:
        if deg > self._limit:
            raise DegreeOverflow(deg, self._limit)

    def mono_times_coef(self, alpha: Exp, r: int) -> Terms:
        """x^alpha * r in normal form, pushing r left one generator at a time."""
        self._check_degree(sum(alpha))
        R = self.ring
        if r == R.zero:
            return {}
        if not any(alpha):
            return {alpha: r}
        key = (alpha, r)
        hit = self._coef_cache.get(key)
        if hit is not None:
            return hit
        i = max(k for k, a in enumerate(alpha) if a)
        head = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
        out: Terms = {}
        # x^head (x_i r) = (x^head sigma_i(r)) x_i + x^head delta_i(r)
        for g, c in self.mono_times_coef(head, int(self.sigmas[i].images[r])).items():
            for h, e in self.mono_times_gen(g, i).items():
                _accumulate(R, out, h, R.times(c, e))
        for g, c in self.mono_times_coef(head, int(self.deltas[i].images[r])).items():
            _accumulate(R, out, g, c)
        self._coef_cache[key] = out
        return out

    def mono_times_gen(self, alpha: Exp, i: int) -> Terms:
        """x^alpha * x_i in normal form."""
        self._check_degree(sum(alpha) + 1)
        last = max((k for k, a in enumerate(alpha) if a), default=-1)
        if last <= i:
            return {alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]: self.ring.one}
        key = (alpha, i)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        if key in self._active:
            raise ExtensionError(f"rewriting does not terminate at x^{alpha} * x_{i + 1}")
        self._active.add(key)
        try:
            R = self.ring
            j = last
            head = alpha[:j] + (alpha[j] - 1,) + alpha[j + 1:]
            dij = self.d[(i, j)]
            rv = self.r[(i, j)]
            out: Terms = {}
            # x^head (x_j x_i) = x^head (d x_i x_j + r_0 + sum_l r_l x_l)
            for g, c in self.mono_times_coef(head, dij).items():
                for h, e in self.mono_times_gen(g, i).items():
                    for k, f in self.mono_times_gen(h, j).items():
                        _accumulate(R, out, k, R.times(R.times(c, e), f))
            for g, c in self.mono_times_coef(head, rv[0]).items():
                _accumulate(R, out, g, c)
            for l in range(1, self.n + 1):
                for g, c in self.mono_times_coef(head, rv[l]).items():
                    for h, e in self.mono_times_gen(g, l - 1).items():
                        _accumulate(R, out, h, R.times(c, e))
        finally:
            self._active.discard(key)
        self._gen_cache[key] = out
        return out

    def mono_times_mono(self, alpha: Exp, beta: Exp) -> Terms:
        self._check_degree(sum(alpha) + sum(beta))
        key = (alpha, beta)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        R = self.ring
        cur: Terms = {alpha: R.one}
        for i in word_of(beta):
            nxt: Terms = {}
            for g, c in cur.items():
                for h, e in self.mono_times_gen(g, i).items():
                    _accumulate(R, nxt, h, R.times(c, e))
            cur = nxt
        self._mono_cache[key] = cur
        return cur

    def multiply(self, f: "Polynomial", g: "Polynomial", *, cap: int | None = None) -> "Polynomial":
        """Exact product in normal form; raises DegreeOverflow past the cap."""
        if f.ext is not self or g.ext is not self:
            raise ExtensionError("polynomials belong to another extension")
        limit = self.degree_cap if cap is None else cap
        if f.terms and g.terms:
            top = f.degree() + g.degree()
            if top > limit:
                raise DegreeOverflow(top, limit)
        saved, self._limit = self._limit, limit
        try:
            R = self.ring
            out: Terms = {}
            for a, ca in f.terms.items():
                for b, cb in g.terms.items():
                    for gam, c in self.mono_times_coef(a, cb).items():
                        left = R.times(ca, c)
                        if left == R.zero:
                            continue
                        for dlt, e in self.mono_times_mono(gam, b).items():
                            _accumulate(R, out, dlt, R.times(left, e))
        finally:
            self._limit = saved
        return Polynomial(self, out)

    # -- validation --------------------------------------------------------------------
    def check_associativity(self, cap: int = 3) -> None:
        """Generator triples, (x_j x_i) r and (x_i r) s must associate.

        Raises AssociativityError with both normal forms on the first failure.
        """
        R = self.ring
        gens = [self.gen(i) for i in range(1, self.n + 1)]
        consts = [self.const(r) for r in range(R.q)]

        def mul(a, b):
            return self.multiply(a, b, cap=cap)

        for k, j, i in itertools.product(range(self.n), repeat=3):
            left = mul(mul(gens[k], gens[j]), gens[i])
            right = mul(gens[k], mul(gens[j], gens[i]))
            if left != right:
                raise AssociativityError(f"(x_{k + 1} x_{j + 1}) x_{i + 1}", left, right)
        for j, i in itertools.product(range(self.n), repeat=2):
            xji = mul(gens[j], gens[i])
            for r in range(R.q):
                left = mul(xji, consts[r])
                right = mul(gens[j], mul(gens[i], consts[r]))
                if left != right:
                    raise AssociativityError(
                        f"(x_{j + 1} x_{i + 1}) {R.labels[r]}", left, right)
        for i in range(self.n):
            for r in range(R.q):
                xr = mul(gens[i], consts[r])
                for s in range(R.q):
                    left = mul(xr, consts[s])
                    right = mul(gens[i], consts[R.times(r, s)])
                    if left != right:
                        raise AssociativityError(
                            f"(x_{i + 1} {R.labels[r]}) {R.labels[s]}", left, right)


def _accumulate(R: FiniteRing, terms: Terms, alpha: Exp, c: int) -> None:
    if c == R.zero:
        return
    cur = terms.get(alpha)
    if cur is None:
        terms[alpha] = c
        return
    s = int(R.add[cur, c])
    if s == R.zero:
        del terms[alpha]
    else:
        terms[alpha] = s


class Polynomial:
    """Element of a skew PBW extension in standard-monomial normal form."""

    __slots__ = ("ext", "terms")

    def __init__(self, ext: Extension, terms: Terms):
        self.ext = ext
        self.terms = terms

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and other.ext is self.ext and other.terms == self.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def support(self) -> list[Exp]:
        return sorted(self.terms, key=monomial_key)

    def coefficient(self, alpha: Sequence[int]) -> int:
        return self.terms.get(tuple(alpha), self.ext.ring.zero)

    def coefficients(self) -> list[int]:
        return [self.terms[a] for a in self.support()]

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for a, c in other.terms.items():
            _accumulate(self.ext.ring, out, a, c)
        return Polynomial(self.ext, out)

    def __neg__(self) -> "Polynomial":
        neg = self.ext.ring.neg
        return Polynomial(self.ext, {a: int(neg[c]) for a, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return self.ext.multiply(self, other)

    def map_coefficients(self, images) -> "Polynomial":
        out: Terms = {}
        for a, c in self.terms.items():
            _accumulate(self.ext.ring, out, a, int(images[c]))
        return Polynomial(self.ext, out)

    def to_json(self) -> list:
        labels = self.ext.ring.labels
        return [[list(a), labels[self.terms[a]]] for a in self.support()]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        labels = self.ext.ring.labels
        parts = []
        for a in self.support():
            mono = "".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(a) if k)
            c = labels[self.terms[a]]
            if not mono:
                parts.append(c)
            elif c == labels[self.ext.ring.one]:
                parts.append(mono)
            else:
                parts.append(f"({c}){mono}")
        return " + ".join(parts)


def build_extension(data: SkewPBWData, *, probe_cap: int = 3) -> Extension:
    """Validate the data (maps, constants, associativity probe) and return the extension."""
    return Extension(data, check=True, probe_cap=probe_cap)


def default_sigmas(R: FiniteRing, n: int) -> list[RingMap]:
    return [identity_map(R) for _ in range(n)]
