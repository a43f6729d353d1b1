"""Ring endomorphisms, sigma-derivations and the finite closures sigma^alpha, delta^beta."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .finring import FiniteRing, RingError

ROLES = ("endomorphism", "derivation", "additive")
CLOSURE_KINDS = ("sigma-alpha", "delta-beta", "sigma-words", "delta-words", "mixed-words")


class MapLawError(RingError):
    def __init__(self, law: str, witness: tuple, name: str = "map"):
        self.law = law
        self.witness = witness
        super().__init__(f"{name}: {law} fails at {witness}")


def _first_pair(bad: np.ndarray):
    hits = np.argwhere(bad)
    return None if len(hits) == 0 else (int(hits[0][0]), int(hits[0][1]))


class RingMap:
    """An element map R -> R, compared extensionally by its image array."""

    def __init__(self, ring: FiniteRing, images, role: str = "endomorphism",
                 name: str = "", paired: "RingMap | None" = None):
        images = np.asarray(images, dtype=np.int64)
        images.flags.writeable = False
        self.ring = ring
        self.images = images
        self.role = role
        self.name = name
        self.paired = paired
        R = ring
        A, M = R.add, R.mul
        self.additive = bool((images[A] == A[images[:, None], images[None, :]]).all())
        self.multiplicative = bool((images[M] == M[images[:, None], images[None, :]]).all())
        self.unital = int(images[R.one]) == R.one
        distinct = len(np.unique(images))
        self.injective = distinct == R.q
        self.surjective = self.injective
        self.is_identity = bool((images == np.arange(R.q)).all())
        self.is_zero = bool((images == R.zero).all())

    def __call__(self, a):
        return self.images[a]

    def __eq__(self, other) -> bool:
        return (isinstance(other, RingMap) and other.ring is self.ring
                and bool((other.images == self.images).all()))

    def __hash__(self) -> int:
        return hash(self.images.tobytes())

    def key(self) -> bytes:
        return self.images.tobytes()

    def __repr__(self) -> str:
        return f"RingMap({self.name or self.role}, q={self.ring.q})"

    def flags(self) -> dict:
        return {
            "additive": self.additive,
            "multiplicative": self.multiplicative,
            "unital": self.unital,
            "injective": self.injective,
            "surjective": self.surjective,
        }


def derivation_violation(delta: np.ndarray, sigma: np.ndarray, R: FiniteRing):
    """First (a, b) with delta(ab) != sigma(a) delta(b) + delta(a) b, or None."""
    A, M = R.add, R.mul
    lhs = delta[M]
    rhs = A[M[sigma[:, None], delta[None, :]], M[delta[:, None], np.arange(R.q)[None, :]]]
    return _first_pair(lhs != rhs)


def build_map(R: FiniteRing, images: Sequence[int], role: str = "endomorphism",
              paired_sigma: RingMap | None = None, name: str = "") -> RingMap:
    """Validate an image array for the declared role and return the map.

    Endomorphisms must be additive and multiplicative; unitality and
    injectivity are recorded as flags only.  Derivations must be additive
    and satisfy the sigma-derivation law against ``paired_sigma``.
    """
    if role not in ROLES:
        raise RingError(f"unknown map role {role!r}")
    images = np.asarray(images, dtype=np.int64)
    if images.shape != (R.q,):
        raise RingError(f"{name or 'map'}: need {R.q} images, got {images.shape[0] if images.ndim else 0}")
    if images.min() < 0 or images.max() >= R.q:
        raise RingError(f"{name or 'map'}: images must be element indices")
    A, M = R.add, R.mul
    w = _first_pair(images[A] != A[images[:, None], images[None, :]])
    if w is not None:
        raise MapLawError("additivity", w, name or "map")
    if role == "endomorphism":
        w = _first_pair(images[M] != M[images[:, None], images[None, :]])
        if w is not None:
            raise MapLawError("multiplicativity", w, name or "map")
    elif role == "derivation":
        if paired_sigma is None:
            raise RingError(f"{name or 'derivation'}: a paired sigma is required")
        if paired_sigma.ring is not R:
            raise RingError("derivation and its sigma live on different rings")
        w = derivation_violation(images, paired_sigma.images, R)
        if w is not None:
            raise MapLawError("sigma-derivation law", w, name or "map")
    return RingMap(R, images, role, name, paired_sigma if role == "derivation" else None)


def identity_map(R: FiniteRing) -> RingMap:
    return RingMap(R, np.arange(R.q), "endomorphism", "id")


def zero_map(R: FiniteRing, paired: RingMap | None = None) -> RingMap:
    return RingMap(R, np.full(R.q, R.zero), "derivation", "zero", paired)


def compose(f: RingMap, g: RingMap) -> RingMap:
    """f o g (apply g first)."""
    if f.ring is not g.ring:
        raise RingError("cannot compose maps on different rings")
    role = f.role if f.role == g.role else "additive"
    if f.role == "endomorphism" and g.role == "endomorphism":
        role = "endomorphism"
    name = f"{f.name}*{g.name}" if f.name and g.name else ""
    return RingMap(f.ring, f.images[g.images], role, name)


def power(f: RingMap, k: int) -> RingMap:
    imgs = np.arange(f.ring.q)
    for _ in range(k):
        imgs = f.images[imgs]
    return RingMap(f.ring, imgs, f.role if k else "endomorphism", f"{f.name}^{k}")


def distinct_powers(f: RingMap) -> list[np.ndarray]:
    """f^0, f^1, ..., f^m where f^m is the first power equal to an earlier one.

    Keeping f^m matters: every f^a with a >= 1 equals one of f^1..f^m, so a
    nonzero exponent can still realize the identity (e.g. f = id).
    """
    seen = set()
    out = []
    cur = np.arange(f.ring.q)
    while True:
        out.append(cur)
        if cur.tobytes() in seen:
            return out
        seen.add(cur.tobytes())
        cur = f.images[cur]


# -- families -------------------------------------------------------------------


@dataclass
class MapFamily:
    ring: FiniteRing
    sigmas: list[RingMap]
    deltas: list[RingMap] | None = None
    name: str = ""

    def __post_init__(self):
        if not self.sigmas:
            raise RingError("a map family needs at least one sigma")
        for s in self.sigmas:
            if s.ring is not self.ring:
                raise RingError("family maps must share the ring")
            if not (s.additive and s.multiplicative):
                raise RingError(f"{s.name or 'sigma'} is not a ring endomorphism")
        if self.deltas is not None:
            if len(self.deltas) != len(self.sigmas):
                raise RingError("need one delta per sigma")
            for i, (s, d) in enumerate(zip(self.sigmas, self.deltas)):
                if d.ring is not self.ring:
                    raise RingError("family maps must share the ring")
                w = derivation_violation(d.images, s.images, self.ring)
                if w is not None or not d.additive:
                    raise MapLawError("sigma-derivation law", w or (), d.name or f"delta{i + 1}")

    @property
    def n(self) -> int:
        return len(self.sigmas)

    @property
    def injective(self) -> bool:
        return all(s.injective for s in self.sigmas)

    @property
    def unital(self) -> bool:
        return all(s.unital for s in self.sigmas)

    def effective_deltas(self) -> list[RingMap]:
        """Deltas, with zero maps standing in when none were given."""
        if self.deltas is not None:
            return self.deltas
        return [zero_map(self.ring, s) for s in self.sigmas]


@dataclass
class ClosureMember:
    images: np.ndarray
    exponent: tuple | None  # first alpha (or beta) producing it; None for words
    word: tuple = ()  # for word closures: sequence of (letter, index)

    def label(self) -> str:
        if self.exponent is not None:
            return "(" + ",".join(str(a) for a in self.exponent) + ")"
        return "*".join(f"{k}{i + 1}" for k, i in self.word) or "id"


@dataclass
class MapClosure:
    family: MapFamily
    kind: str
    includes_identity: bool
    members: list[ClosureMember] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.members)

    def maps(self) -> list[RingMap]:
        return [RingMap(self.family.ring, m.images, "additive") for m in self.members]

    def image_stack(self) -> np.ndarray:
        if not self.members:
            return np.zeros((0, self.family.ring.q), dtype=np.int64)
        return np.stack([m.images for m in self.members])


def _exponent_order(bounds: Sequence[int]):
    """All exponent vectors below ``bounds``, by total degree then reverse-lex.

    The ordering puts (1,0,..,0) before (0,1,..,0), so single generators
    appear in family order right after lower-degree vectors.
    """
    vecs = list(itertools.product(*[range(b) for b in bounds]))
    vecs.sort(key=lambda v: (sum(v), tuple(-x for x in v)))
    return vecs


def _ordered_products(maps: list[RingMap], include_identity: bool) -> list[ClosureMember]:
    q = maps[0].ring.q
    powers = [distinct_powers(f) for f in maps]
    seen: dict[bytes, int] = {}
    out: list[ClosureMember] = []
    for alpha in _exponent_order([len(p) for p in powers]):
        if not include_identity and not any(alpha):
            continue
        # f1^a1 o f2^a2 o ... o fn^an : apply fn^an first
        imgs = np.arange(q)
        for i in range(len(maps) - 1, -1, -1):
            imgs = powers[i][alpha[i]][imgs]
        key = imgs.tobytes()
        if key not in seen:
            seen[key] = len(out)
            out.append(ClosureMember(imgs, tuple(int(a) for a in alpha)))
    # f^a for a past the first repeat equals an earlier power, so this is exhaustive
    return out


def _word_closure(letters: list[tuple[str, int, np.ndarray]], include_identity: bool,
                  cap: int) -> list[ClosureMember]:
    q = letters[0][2].shape[0]
    out: list[ClosureMember] = []
    seen: set[bytes] = set()
    if include_identity:
        ident = np.arange(q)
        seen.add(ident.tobytes())
        out.append(ClosureMember(ident, None, ()))
    frontier = []
    for kind, i, imgs in letters:
        if imgs.tobytes() not in seen:
            seen.add(imgs.tobytes())
            m = ClosureMember(imgs, None, ((kind, i),))
            out.append(m)
            frontier.append(m)
    while frontier:
        nxt = []
        for m in frontier:
            for kind, i, imgs in letters:
                comp = imgs[m.images]  # letter applied after the word
                key = comp.tobytes()
                if key not in seen:
                    if len(out) >= cap:
                        raise RingError(f"word closure exceeds cap {cap}")
                    seen.add(key)
                    c = ClosureMember(comp, None, ((kind, i),) + m.word)
                    out.append(c)
                    nxt.append(c)
        frontier = nxt
    return out


def closure(family: MapFamily, kind: str = "sigma-alpha", include_identity: bool = False,
            *, cap: int = 100_000) -> MapClosure:
    """Exact finite set of compositions, deduplicated by image array.

    ``sigma-alpha`` and ``delta-beta`` give the ordered products
    f1^a1 o ... o fn^an.  The ``*-words`` kinds close under arbitrary
    composition, which is the larger set.
    """
    cache = family.__dict__.setdefault("_closure_cache", {})
    key = (kind, include_identity)
    if key in cache:
        return cache[key]
    if kind == "sigma-alpha":
        members = _ordered_products(family.sigmas, include_identity)
    elif kind == "delta-beta":
        members = _ordered_products(family.effective_deltas(), include_identity)
    elif kind in ("sigma-words", "delta-words", "mixed-words"):
        letters = []
        if kind in ("sigma-words", "mixed-words"):
            letters += [("s", i, s.images) for i, s in enumerate(family.sigmas)]
        if kind in ("delta-words", "mixed-words"):
            letters += [("d", i, d.images) for i, d in enumerate(family.effective_deltas())]
        members = _word_closure(letters, include_identity, cap)
    else:
        raise RingError(f"unknown closure kind {kind!r}")
    out = MapClosure(family, kind, include_identity, members)
    cache[key] = out
    return out


# -- named built-ins ---------------------------------------------------------------


def _coords(R: FiniteRing) -> np.ndarray:
    if R.coords is None:
        raise RingError(f"ring {R.name} has no coordinates for built-in maps")
    return R.coords


def _from_coords(R: FiniteRing, coords: np.ndarray) -> np.ndarray:
    n = R.meta.get("n") or R.meta.get("p")
    weights = n ** np.arange(coords.shape[1], dtype=np.int64)
    return (coords % n) @ weights


def _need_kind(R: FiniteRing, *kinds: str) -> None:
    if R.meta.get("kind") not in kinds:
        raise RingError(f"built-in needs a ring of kind {' or '.join(kinds)}, got {R.meta.get('kind')}")


def builtin_images(R: FiniteRing, name: str) -> tuple[np.ndarray, str]:
    """Image array and role for a named built-in map."""
    if name in ("identity", "id"):
        return np.arange(R.q), "endomorphism"
    if name == "zero":
        return np.full(R.q, R.zero), "derivation"
    if name in ("ut2_negate_b", "ut2_kill_b"):
        _need_kind(R, "ut2_equal_diag")
        c = _coords(R).copy()
        c[:, 1] = -c[:, 1] if name == "ut2_negate_b" else 0
        return _from_coords(R, c), "endomorphism"
    if name in ("ut2_keep_a", "ut2_keep_c"):
        _need_kind(R, "ut2")
        c = _coords(R).copy()
        c[:, 1] = 0
        c[:, 2 if name == "ut2_keep_a" else 0] = 0
        return _from_coords(R, c), "endomorphism"
    if name == "swap":
        _need_kind(R, "trunc_st")
        k = R.meta["k"]
        c = _coords(R)
        sw = np.concatenate([c[:, :1], c[:, k:], c[:, 1:k]], axis=1)
        return _from_coords(R, sw), "endomorphism"
    if name == "frobenius":
        _need_kind(R, "gf")
        imgs = np.arange(R.q)
        for _ in range(R.meta["p"] - 1):
            imgs = R.mul[imgs, np.arange(R.q)]
        return imgs, "endomorphism"
    if name == "t_derivation":
        _need_kind(R, "trunc_t2")
        c = _coords(R)
        d = np.stack([c[:, 1], np.zeros(R.q, dtype=np.int64)], axis=1)
        return _from_coords(R, d), "derivation"
    raise RingError(f"unknown built-in map {name!r}")


BUILTINS = ("identity", "zero", "ut2_negate_b", "ut2_kill_b", "ut2_keep_a", "ut2_keep_c",
            "swap", "frobenius", "t_derivation")


def builtin(R: FiniteRing, name: str, paired_sigma: RingMap | None = None) -> RingMap:
    imgs, role = builtin_images(R, name)
    if role == "derivation":
        if paired_sigma is None:
            paired_sigma = identity_map(R)
        return build_map(R, imgs, "derivation", paired_sigma, name)
    return build_map(R, imgs, "endomorphism", name=name)
