"""Finite unital rings stored as dense addition/multiplication tables.

Elements are the integers ``0..q-1``.  Element sets (ideals, annihilators,
nilpotent sets) are Python ints used as bitsets: bit ``a`` is set iff element
``a`` belongs to the set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DEFAULT_RING_CAP = 512

SIDES = ("right", "left")
IDEAL_KINDS = ("right", "left", "two-sided")


class RingError(ValueError):
    """Invalid ring data or an unsupported request on a ring."""


class RingAxiomError(RingError):
    def __init__(self, axiom: str, witness: tuple):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"ring axiom {axiom!r} fails at {witness}")


class RingSizeError(RingError):
    def __init__(self, q: int, cap: int):
        self.q = q
        self.cap = cap
        super().__init__(f"ring of order {q} exceeds the size cap {cap}")


# -- bitsets ---------------------------------------------------------------


def mask_to_bits(mask: np.ndarray) -> int:
    packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def bits_to_mask(bits: int, q: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((q + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:q].astype(bool)


def bits_to_list(bits: int) -> list[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def to_bits(elements: int | Iterable[int]) -> int:
    if isinstance(elements, (int, np.integer)):
        return int(elements)
    bits = 0
    for a in elements:
        bits |= 1 << int(a)
    return bits


# -- the ring ----------------------------------------------------------------


class FiniteRing:
    """A finite associative unital ring given by its operation tables.

    ``meta`` records how the ring was built (constructor kind and
    parameters); ``coords`` gives, for rings built from structure
    constants, the coordinate vector of every element.  Both are used by
    the named built-in maps.
    """

    def __init__(
        self,
        add,
        mul,
        zero: int,
        one: int,
        name: str = "R",
        labels: Sequence[str] | None = None,
        *,
        coords: np.ndarray | None = None,
        meta: dict | None = None,
        check: bool = True,
    ):
        add = np.array(add, dtype=np.int64)
        mul = np.array(mul, dtype=np.int64)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape != mul.shape:
            raise RingError("add and mul must be square tables of equal shape")
        q = add.shape[0]
        if q < 2:
            raise RingError("a unital ring with 1 != 0 needs at least 2 elements")
        if add.min() < 0 or add.max() >= q or mul.min() < 0 or mul.max() >= q:
            raise RingError("table entries must be element indices in 0..q-1")
        if not (0 <= zero < q and 0 <= one < q):
            raise RingError("zero and one must be element indices")
        add.flags.writeable = False
        mul.flags.writeable = False
        self.add = add
        self.mul = mul
        self.q = q
        self.zero = int(zero)
        self.one = int(one)
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(q))
        if len(self.labels) != q:
            raise RingError("need one label per element")
        self.coords = coords
        self.meta = dict(meta or {"kind": "raw"})
        self._cache: dict = {}
        if check:
            report = verify_ring_axioms(self)
            if not report.ok:
                axiom, witness = report.first_failure()
                raise RingAxiomError(axiom, witness)
        self.neg = np.argmax(self.add == self.zero, axis=1)
        self.neg.flags.writeable = False

    def __repr__(self) -> str:
        return f"FiniteRing({self.name!r}, q={self.q})"

    def __len__(self) -> int:
        return self.q

    # element access
    def label(self, a: int) -> str:
        return self.labels[a]

    def element(self, key: int | str) -> int:
        """Element index from an index or a label."""
        if isinstance(key, (int, np.integer)):
            if not 0 <= key < self.q:
                raise RingError(f"element index {key} out of range for {self.name}")
            return int(key)
        lookup = self._cache.get("label_index")
        if lookup is None:
            lookup = {lab: i for i, lab in enumerate(self.labels)}
            self._cache["label_index"] = lookup
        key = str(key).replace(" ", "")
        if key in lookup:
            return lookup[key]
        if key.lstrip("-").isdigit() and int(key) in range(self.q):
            return int(key)
        raise RingError(f"unknown element {key!r} in ring {self.name}")

    def plus(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def times(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def minus(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    @property
    def is_commutative(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def units(self) -> int:
        has_right = (self.mul == self.one).any(axis=1)
        has_left = (self.mul == self.one).any(axis=0)
        return mask_to_bits(has_right & has_left)

    def format_set(self, bits: int) -> list[str]:
        return [self.labels[a] for a in bits_to_list(bits)]


# -- axioms ------------------------------------------------------------------


@dataclass
class AxiomReport:
    """Pass/fail per ring axiom with the first failing tuple in scan order."""

    results: dict[str, tuple | None] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.results.values())

    @property
    def failures(self) -> dict[str, tuple]:
        return {k: w for k, w in self.results.items() if w is not None}

    def first_failure(self) -> tuple[str, tuple]:
        for k, w in self.results.items():
            if w is not None:
                return k, w
        raise LookupError("no failing axiom")

    def passed(self, axiom: str) -> bool:
        return self.results[axiom] is None


def _first_index(bad: np.ndarray):
    hits = np.argwhere(bad)
    return None if len(hits) == 0 else tuple(int(v) for v in hits[0])


def verify_ring_axioms(R: FiniteRing) -> AxiomReport:
    A, M, q, z, e = R.add, R.mul, R.q, R.zero, R.one
    res: dict[str, tuple | None] = {}
    idx = np.arange(q)

    res["add_commutative"] = _first_index(A != A.T)
    res["add_identity"] = _first_index(A[z, :] != idx)
    has_inv = (A == z).any(axis=1)
    res["add_inverse"] = None if has_inv.all() else (int(np.argmin(has_inv)),)
    res["mul_identity"] = None
    bad_left = M[e, :] != idx
    bad_right = M[:, e] != idx
    if bad_left.any() or bad_right.any():
        res["mul_identity"] = (int(np.argmax(bad_left | bad_right)),)
    res["nontrivial"] = (z,) if z == e else None

    add_assoc = mul_assoc = left_dist = right_dist = None
    for a in range(q):
        if add_assoc is None:
            w = _first_index(A[A[a, :], :] != A[a, A])
            if w is not None:
                add_assoc = (a, *w)
        if mul_assoc is None:
            # (a b) c  vs  a (b c)
            w = _first_index(M[M[a, :], :] != M[a, M])
            if w is not None:
                mul_assoc = (a, *w)
        if left_dist is None:
            # a (b + c)  vs  a b + a c
            row = M[a, :]
            w = _first_index(M[a, A] != A[row[:, None], row[None, :]])
            if w is not None:
                left_dist = (a, *w)
        if right_dist is None:
            # (b + c) a  vs  b a + c a
            col = M[:, a]
            w = _first_index(M[A, a] != A[col[:, None], col[None, :]])
            if w is not None:
                right_dist = (w[0], w[1], a)
        if None not in (add_assoc, mul_assoc, left_dist, right_dist):
            break
    res["add_associative"] = add_assoc
    res["mul_associative"] = mul_assoc
    res["left_distributive"] = left_dist
    res["right_distributive"] = right_dist
    order = [
        "add_associative",
        "add_commutative",
        "add_identity",
        "add_inverse",
        "mul_associative",
        "left_distributive",
        "right_distributive",
        "mul_identity",
        "nontrivial",
    ]
    return AxiomReport({k: res[k] for k in order})


# -- constructors ------------------------------------------------------------


def _poly_label(terms: Sequence[tuple[int, str]]) -> str:
    parts = []
    for c, mono in terms:
        if c == 0:
            continue
        if mono == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}{mono}")
    return "+".join(parts) if parts else "0"


def _structure_algebra(
    n: int,
    struct: np.ndarray,
    one_coords: Sequence[int],
    name: str,
    labeler,
    meta: dict,
    cap: int,
) -> FiniteRing:
    """Z_n-algebra that is free on a basis with structure constants ``struct``.

    ``struct[i, j]`` is the coordinate vector of ``basis_i * basis_j``.
    Element index is the little-endian base-n encoding of its coordinates.
    """
    dim = struct.shape[0]
    q = n**dim
    if q > cap:
        raise RingSizeError(q, cap)
    weights = n ** np.arange(dim, dtype=np.int64)
    idx = np.arange(q, dtype=np.int64)
    coords = (idx[:, None] // weights[None, :]) % n
    add = ((coords[:, None, :] + coords[None, :, :]) % n) @ weights
    prod = np.einsum("ai,bj,ijk->abk", coords, coords, struct) % n
    mul = prod @ weights
    one = int(np.dot(np.asarray(one_coords, dtype=np.int64), weights))
    labels = [labeler(tuple(int(c) for c in row)) for row in coords]
    coords.flags.writeable = False
    return FiniteRing(add, mul, 0, one, name, labels, coords=coords, meta=meta)


def _check_modulus(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise RingError(f"modulus must be an integer >= 2, got {n!r}")


def zn(n: int, *, cap: int = DEFAULT_RING_CAP) -> FiniteRing:
    _check_modulus(n)
    struct = np.ones((1, 1, 1), dtype=np.int64)
    return _structure_algebra(
        n, struct, [1], f"Z{n}", lambda c: str(c[0]), {"kind": "zn", "n": n}, cap
    )


# Conway-style defining polynomials, coefficient lists low degree first.
_GF_MODULI = {4: (2, [1, 1, 1]), 8: (2, [1, 1, 0, 1]), 9: (3, [1, 0, 1])}


def gf(q: int, *, cap: int = DEFAULT_RING_CAP) -> FiniteRing:
    """Finite field of order 4, 8 or 9 as Z_p[x]/(f)."""
    if q not in _GF_MODULI:
        raise RingError(f"gf supports orders {sorted(_GF_MODULI)}, got {q}")
    p, modulus = _GF_MODULI[q]
    m = len(modulus) - 1
    # coordinates of x^k reduced mod f for k < 2m - 1
    powers = []
    for k in range(2 * m - 1):
        vec = [0] * (2 * m)
        vec[k] = 1
        for top in range(2 * m - 1, m - 1, -1):
            c = vec[top]
            if c:
                for i, f in enumerate(modulus):
                    vec[top - m + i] = (vec[top - m + i] - c * f) % p
        powers.append(vec[:m])
    struct = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            struct[i, j] = powers[i + j]
    names = ["1", "x"] + [f"x^{k}" for k in range(2, m)]

    def labeler(c):
        return _poly_label([(c[i], names[i]) for i in range(m)])

    one = [1] + [0] * (m - 1)
    return _structure_algebra(
        p, struct, one, f"GF{q}", labeler, {"kind": "gf", "q": q, "p": p, "m": m}, cap
    )


def _matrix_label(a: int, b: int, c: int) -> str:
    return f"[[{a},{b}],[0,{c}]]"


def ut2_equal_diag(n: int, *, cap: int = DEFAULT_RING_CAP) -> FiniteRing:
    """Upper-triangular 2x2 matrices (a b; 0 a) over Z_n; basis I, E12."""
    _check_modulus(n)
    struct = np.zeros((2, 2, 2), dtype=np.int64)
    struct[0, 0] = [1, 0]
    struct[0, 1] = [0, 1]
    struct[1, 0] = [0, 1]
    return _structure_algebra(
        n,
        struct,
        [1, 0],
        f"UT2eq(Z{n})",
        lambda c: _matrix_label(c[0], c[1], c[0]),
        {"kind": "ut2_equal_diag", "n": n},
        cap,
    )


def ut2(n: int, *, cap: int = DEFAULT_RING_CAP) -> FiniteRing:
    """Upper-triangular 2x2 matrices (a b; 0 c) over Z_n; basis E11, E12, E22."""
    _check_modulus(n)
    struct = np.zeros((3, 3, 3), dtype=np.int64)
    struct[0, 0] = [1, 0, 0]  # E11 E11 = E11
    struct[0, 1] = [0, 1, 0]  # E11 E12 = E12
    struct[1, 2] = [0, 1, 0]  # E12 E22 = E12
    struct[2, 2] = [0, 0, 1]  # E22 E22 = E22
    return _structure_algebra(
        n,
        struct,
        [1, 0, 1],
        f"UT2(Z{n})",
        lambda c: _matrix_label(c[0], c[1], c[2]),
        {"kind": "ut2", "n": n},
        cap,
    )


def trunc_st(p: int, k: int, *, cap: int = DEFAULT_RING_CAP) -> FiniteRing:
    """Z_p[s,t]/(st, s^k, t^k); basis 1, s..s^(k-1), t..t^(k-1)."""
    _check_modulus(p)
    if k < 2:
        raise RingError("trunc_st needs k >= 2")
    names = ["1"] + [("s" if i == 1 else f"s^{i}") for i in range(1, k)]
    names += [("t" if i == 1 else f"t^{i}") for i in range(1, k)]
    dim = 2 * k - 1

    def basis(var: str, power: int) -> int:
        return 0 if power == 0 else (power if var == "s" else k - 1 + power)

    def split(i: int) -> tuple[str, int]:
        if i == 0:
            return "s", 0
        return ("s", i) if i < k else ("t", i - k + 1)

    struct = np.zeros((dim, dim, dim), dtype=np.int64)
    for i in range(dim):
        for j in range(dim):
            vi, pi = split(i)
            vj, pj = split(j)
            if pi == 0:
                struct[i, j, j] = 1
            elif pj == 0:
                struct[i, j, i] = 1
            elif vi == vj and pi + pj < k:
                struct[i, j, basis(vi, pi + pj)] = 1

    def labeler(c):
        return _poly_label([(c[i], names[i]) for i in range(dim)])

    one = [1] + [0] * (dim - 1)
    return _structure_algebra(
        p, struct, one, f"Z{p}[s,t]/(st,s^{k},t^{k})", labeler,
        {"kind": "trunc_st", "p": p, "k": k}, cap,
    )


def trunc_t2(p: int, *, cap: int = DEFAULT_RING_CAP) -> FiniteRing:
    """Z_p[t]/(t^2); basis 1, t."""
    _check_modulus(p)
    struct = np.zeros((2, 2, 2), dtype=np.int64)
    struct[0, 0] = [1, 0]
    struct[0, 1] = [0, 1]
    struct[1, 0] = [0, 1]

    def labeler(c):
        return _poly_label([(c[0], "1"), (c[1], "t")])

    return _structure_algebra(
        p, struct, [1, 0], f"Z{p}[t]/(t^2)", labeler, {"kind": "trunc_t2", "p": p}, cap
    )


def product(R1: FiniteRing, R2: FiniteRing, *, cap: int = DEFAULT_RING_CAP) -> FiniteRing:
    """Direct product; element (a1, a2) has index a1 + q1 * a2."""
    q1, q2 = R1.q, R2.q
    q = q1 * q2
    if q > cap:
        raise RingSizeError(q, cap)
    idx = np.arange(q)
    c1, c2 = idx % q1, idx // q1
    add = R1.add[c1[:, None], c1[None, :]] + q1 * R2.add[c2[:, None], c2[None, :]]
    mul = R1.mul[c1[:, None], c1[None, :]] + q1 * R2.mul[c2[:, None], c2[None, :]]
    labels = [f"({R1.labels[a]},{R2.labels[b]})" for a, b in zip(c1, c2)]
    return FiniteRing(
        add, mul, R1.zero + q1 * R2.zero, R1.one + q1 * R2.one,
        f"{R1.name}x{R2.name}", labels,
        meta={"kind": "product", "factors": (R1.meta, R2.meta), "orders": (q1, q2)},
    )


def from_tables(add, mul, zero: int = 0, one: int = 1, name: str = "R",
                labels: Sequence[str] | None = None) -> FiniteRing:
    return FiniteRing(add, mul, zero, one, name, labels, meta={"kind": "raw"})


def build_ring(spec: dict, *, cap: int = DEFAULT_RING_CAP) -> FiniteRing:
    """Construct a ring from a corpus-style spec dict (``{"kind": ..., ...}``)."""
    kind = spec.get("kind")
    name = spec.get("name")
    if kind == "zn":
        R = zn(spec["n"], cap=cap)
    elif kind == "gf":
        R = gf(spec["q"], cap=cap)
    elif kind == "ut2_equal_diag":
        R = ut2_equal_diag(spec["n"], cap=cap)
    elif kind == "ut2":
        R = ut2(spec["n"], cap=cap)
    elif kind == "trunc_st":
        R = trunc_st(spec["p"], spec["k"], cap=cap)
    elif kind == "trunc_t2":
        R = trunc_t2(spec["p"], cap=cap)
    elif kind == "product":
        f1, f2 = spec["factors"]
        R = product(build_ring(f1, cap=cap), build_ring(f2, cap=cap), cap=cap)
    elif kind == "raw":
        q = len(spec["add"])
        if q > cap:
            raise RingSizeError(q, cap)
        R = from_tables(spec["add"], spec["mul"], spec.get("zero", 0), spec.get("one", 1),
                        labels=spec.get("labels"))
    else:
        raise RingError(f"unknown ring kind {kind!r}")
    if name:
        R.name = name
    return R


# -- element structure ---------------------------------------------------------


def idempotents(R: FiniteRing) -> int:
    if "idem" not in R._cache:
        idx = np.arange(R.q)
        R._cache["idem"] = mask_to_bits(R.mul[idx, idx] == idx)
    return R._cache["idem"]


def nilpotent_mask(R: FiniteRing) -> np.ndarray:
    if "nil" not in R._cache:
        # nilpotency index is at most q, so ceil(log2 q) + 1 squarings reach zero
        x = np.arange(R.q)
        for _ in range(math.ceil(math.log2(R.q)) + 1):
            x = R.mul[x, x]
        mask = x == R.zero
        mask.flags.writeable = False
        R._cache["nil"] = mask
    return R._cache["nil"]


def nilpotents(R: FiniteRing) -> int:
    return mask_to_bits(nilpotent_mask(R))


def sandwich_zero(R: FiniteRing) -> np.ndarray:
    """Boolean matrix Z with Z[a, b] true iff aRb = 0."""
    if "sandwich" not in R._cache:
        M, z = R.mul, R.zero
        Z = np.empty((R.q, R.q), dtype=bool)
        for a in range(R.q):
            Z[a] = (M[M[a, :], :] == z).all(axis=0)
        Z.flags.writeable = False
        R._cache["sandwich"] = Z
    return R._cache["sandwich"]


def sandwich_witness(R: FiniteRing, a: int, b: int) -> int | None:
    """Smallest r with a r b != 0, or None when aRb = 0."""
    vals = R.mul[R.mul[a, :], b]
    hits = np.flatnonzero(vals != R.zero)
    return None if len(hits) == 0 else int(hits[0])


# -- ideals ------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    ring: FiniteRing = field(compare=False, repr=False)
    members: int
    kind: str = "two-sided"

    def __contains__(self, a: int) -> bool:
        return bool(self.members >> int(a) & 1)

    def __len__(self) -> int:
        return bin(self.members).count("1")

    @property
    def size(self) -> int:
        return len(self)

    def elements(self) -> list[int]:
        return bits_to_list(self.members)

    def mask(self) -> np.ndarray:
        return bits_to_mask(self.members, self.ring.q)

    def is_proper(self) -> bool:
        return self.members != (1 << self.ring.q) - 1

    def labels(self) -> list[str]:
        return self.ring.format_set(self.members)

    def check(self) -> None:
        """Raise RingError unless the invariant for ``kind`` holds."""
        R = self.ring
        m = self.mask()
        idx = np.flatnonzero(m)
        if not m[R.zero] or not m[R.add[np.ix_(idx, idx)]].all() or not m[R.neg[idx]].all():
            raise RingError("ideal members are not an additive subgroup")
        if self.kind in ("right", "two-sided") and not m[R.mul[idx, :]].all():
            raise RingError("not closed under right multiplication")
        if self.kind in ("left", "two-sided") and not m[R.mul[:, idx]].all():
            raise RingError("not closed under left multiplication")

    def __repr__(self) -> str:
        return f"Ideal({self.kind}, {self.labels()})"


def additive_span(R: FiniteRing, bits: int) -> int:
    """Additive subgroup generated by a set of elements."""
    mask = bits_to_mask(bits, R.q)
    mask[R.zero] = True
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        new[R.add[np.ix_(idx, idx)].ravel()] = True
        if new.sum() == mask.sum():
            return mask_to_bits(mask)
        mask = new


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    R = I.ring
    S = R.add[np.ix_(I.elements(), J.elements())]
    mask = np.zeros(R.q, dtype=bool)
    mask[S.ravel()] = True
    kind = I.kind if I.kind == J.kind else "right"
    return Ideal(R, mask_to_bits(mask), kind)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    """Two-sided product IJ, the additive span of all ab."""
    R = I.ring
    P = R.mul[np.ix_(I.elements(), J.elements())]
    return Ideal(R, additive_span(R, to_bits(np.unique(P))), "two-sided")


def principal_ideal(R: FiniteRing, a: int, kind: str) -> Ideal:
    if kind == "right":
        return Ideal(R, to_bits(np.unique(R.mul[a, :])), kind)
    if kind == "left":
        return Ideal(R, to_bits(np.unique(R.mul[:, a])), kind)
    if kind == "two-sided":
        gens = np.unique(R.mul[R.mul[:, a][:, None], np.arange(R.q)[None, :]])
        return Ideal(R, additive_span(R, to_bits(gens)), kind)
    raise RingError(f"unknown ideal kind {kind!r}")


def enumerate_ideals(R: FiniteRing, kind: str = "two-sided", *,
                     cap: int = DEFAULT_RING_CAP) -> list[Ideal]:
    """All ideals of the given kind, in discovery order.

    Principal ideals come first in generator order, then sums in the order
    the closure finds them.  Every ideal of a finite ring is a finite sum of
    principal ones, so closing under adding principal ideals is complete.
    """
    if kind not in IDEAL_KINDS:
        raise RingError(f"unknown ideal kind {kind!r}")
    if R.q > cap:
        raise RingSizeError(R.q, cap)
    key = ("ideals", kind)
    if key in R._cache:
        return R._cache[key]
    principals: list[Ideal] = []
    seen: set[int] = set()
    for a in range(R.q):
        I = principal_ideal(R, a, kind)
        if I.members not in seen:
            seen.add(I.members)
            principals.append(I)
    found = list(principals)
    pos = 0
    while pos < len(found):
        I = found[pos]
        pos += 1
        for P in principals:
            if P.members | I.members == I.members:
                continue
            S = ideal_sum(I, P)
            if S.members not in seen:
                seen.add(S.members)
                found.append(Ideal(R, S.members, kind))
    R._cache[key] = found
    return found


def annihilator(R: FiniteRing, side: str, S: int | Iterable[int]) -> Ideal:
    """Right annihilator {x : sx = 0} or left annihilator {x : xs = 0} of S."""
    elems = bits_to_list(to_bits(S))
    if not elems:
        raise RingError("annihilator of the empty set is not defined here")
    if side == "right":
        mask = (R.mul[elems, :] == R.zero).all(axis=0)
    elif side == "left":
        mask = (R.mul[:, elems] == R.zero).all(axis=1)
    else:
        raise RingError(f"side must be 'right' or 'left', got {side!r}")
    return Ideal(R, mask_to_bits(mask), side)


def _is_prime(R: FiniteRing, P: Ideal) -> bool:
    # aRb <= P implies a in P or b in P
    pm = P.mask()
    if pm.all():
        return False
    M = R.mul
    for a in np.flatnonzero(~pm):
        inside = pm[M[M[a, :], :]].all(axis=0)
        if (inside & ~pm).any():
            return False
    return True


def _maximal(ideals: list[Ideal]) -> list[Ideal]:
    proper = [I for I in ideals if I.is_proper()]
    out = []
    for I in proper:
        if not any(J.members != I.members and J.members & I.members == I.members
                   for J in proper):
            out.append(I)
    return out


def special_ideals(R: FiniteRing, kind: str, *, cap: int = DEFAULT_RING_CAP) -> list[Ideal]:
    """Prime, maximal, maximal-right, strongly-prime or J-prime ideals."""
    key = ("special", kind)
    if key in R._cache:
        return R._cache[key]
    if kind == "maximal-right":
        out = _maximal(enumerate_ideals(R, "right", cap=cap))
    elif kind == "maximal":
        out = _maximal(enumerate_ideals(R, "two-sided", cap=cap))
    elif kind == "prime":
        out = [P for P in enumerate_ideals(R, "two-sided", cap=cap) if _is_prime(R, P)]
    elif kind == "strongly-prime":
        out = [P for P in special_ideals(R, "prime", cap=cap)
               if radicals(quotient_ring(R, P), cap=cap).upper_nilradical.size == 1]
    elif kind == "j-prime":
        out = [P for P in special_ideals(R, "prime", cap=cap)
               if radicals(quotient_ring(R, P), cap=cap).jacobson.size == 1]
    else:
        raise RingError(f"unknown special ideal kind {kind!r}")
    R._cache[key] = out
    return out


@dataclass(frozen=True)
class RadicalSet:
    nilpotents: int
    prime_radical: Ideal
    upper_nilradical: Ideal
    jacobson: Ideal


def radicals(R: FiniteRing, *, cap: int = DEFAULT_RING_CAP) -> RadicalSet:
    if "radicals" in R._cache:
        return R._cache["radicals"]
    full = (1 << R.q) - 1
    lower = full
    for P in special_ideals(R, "prime", cap=cap):
        lower &= P.members
    nil = nilpotents(R)
    nil_ideals = [I for I in enumerate_ideals(R, "two-sided", cap=cap)
                  if I.members & nil == I.members]
    upper = 1 << R.zero
    for I in nil_ideals:
        upper |= I.members
    upper = additive_span(R, upper)
    jac = full
    for M in special_ideals(R, "maximal-right", cap=cap):
        jac &= M.members
    out = RadicalSet(
        nil,
        Ideal(R, lower, "two-sided"),
        Ideal(R, upper, "two-sided"),
        Ideal(R, jac, "two-sided"),
    )
    R._cache["radicals"] = out
    return out


def quotient_ring(R: FiniteRing, I: Ideal) -> FiniteRing:
    """R/I for a proper two-sided ideal I; cosets indexed by smallest member."""
    if not I.is_proper():
        raise RingError("quotient by the whole ring is not a unital ring")
    try:
        Ideal(R, I.members, "two-sided").check()
    except RingError as exc:
        raise RingError(f"quotient needs a two-sided ideal: {exc}") from None
    members = np.array(I.elements())
    rep = R.add[:, members].min(axis=1)
    reps = np.unique(rep)
    new_index = np.full(R.q, -1, dtype=np.int64)
    new_index[reps] = np.arange(len(reps))
    add = new_index[rep[R.add[np.ix_(reps, reps)]]]
    mul = new_index[rep[R.mul[np.ix_(reps, reps)]]]
    labels = [f"[{R.labels[a]}]" for a in reps]
    return FiniteRing(
        add, mul, int(new_index[rep[R.zero]]), int(new_index[rep[R.one]]),
        f"{R.name}/I", labels, meta={"kind": "quotient", "parent": R.name},
    )
