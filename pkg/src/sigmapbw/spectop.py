"""Finite spectra and finite topological spaces.

Ring-sourced spaces have prime ideals as points and the opens generated by
W(a) = {P : a not in P}.  Poset-sourced spaces take their opens to be the
down-sets of the specialization order (P <= Q when P is contained in Q).
Points and opens are Python ints used as bitsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .finring import (DEFAULT_RING_CAP, FiniteRing, Ideal, bits_to_list, enumerate_ideals,
                      ideal_product, ideal_sum, principal_ideal, special_ideals)

SPACE_POINT_CAP = 16
DEGENERATE = "degenerate: finite ring (every prime ideal is maximal)"
SCOPE_NOTE = ("topological directions are checked on finite models only; statements about "
              "the infinite extension are not decided here")


class TopologyError(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _close_family(basis: list[int], full: int) -> list[int]:
    """Smallest family containing basis, 0 and full, closed under union and intersection."""
    fam = set(basis) | {0, full}
    changed = True
    while changed:
        changed = False
        cur = list(fam)
        for a, b in itertools.combinations(cur, 2):
            for c in (a | b, a & b):
                if c not in fam:
                    fam.add(c)
                    changed = True
    return sorted(fam, key=lambda s: (_popcount(s), s))


@dataclass
class FiniteTopology:
    name: str
    points: list[str]
    opens: list[int]
    max_bits: int
    leq: list[list[bool]]               # leq[i][j]: point i specializes to j (i <= j)
    source: str = "poset"               # "ring" or "poset"
    tags: dict[str, int] = field(default_factory=dict)
    basis: list[int] | None = None

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def closed_sets(self) -> list[int]:
        return sorted({self.full & ~u for u in self.opens}, key=lambda s: (_popcount(s), s))

    def label_set(self, bits: int) -> list[str]:
        return [self.points[i] for i in bits_to_list(bits)]

    def subspace_opens(self, sub: int) -> list[int]:
        return sorted({u & sub for u in self.opens}, key=lambda s: (_popcount(s), s))

    def is_topology(self) -> bool:
        fam = set(self.opens)
        if 0 not in fam or self.full not in fam:
            return False
        return all((a | b) in fam and (a & b) in fam for a, b in itertools.combinations(self.opens, 2))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "source": self.source,
            "points": self.points,
            "max": self.label_set(self.max_bits),
            "opens": [self.label_set(u) for u in self.opens],
            "tags": {k: self.label_set(v) for k, v in sorted(self.tags.items())},
        }


# -- poset-sourced spaces ------------------------------------------------------------


def synthetic_space(name: str, nodes: list[str], covers: list[list[str]],
                    max_tags: list[str], sspec: list[str] | None = None,
                    jspec: list[str] | None = None) -> FiniteTopology:
    """Finite space from a specialization poset given by cover pairs [lower, upper]."""
    if len(set(nodes)) != len(nodes):
        raise TopologyError("duplicate node names")
    if len(nodes) > SPACE_POINT_CAP:
        raise TopologyError(f"{len(nodes)} points exceed the cap {SPACE_POINT_CAP}")
    idx = {v: i for i, v in enumerate(nodes)}
    k = len(nodes)
    leq = [[i == j for j in range(k)] for i in range(k)]
    for pair in covers:
        lo, hi = pair
        if lo not in idx or hi not in idx:
            raise TopologyError(f"cover {pair} names an unknown node")
        leq[idx[lo]][idx[hi]] = True
    for m in range(k):              # transitive closure
        for i in range(k):
            if leq[i][m]:
                for j in range(k):
                    if leq[m][j]:
                        leq[i][j] = True
    for i, j in itertools.combinations(range(k), 2):
        if leq[i][j] and leq[j][i]:
            raise TopologyError(f"not a partial order: {nodes[i]} <= {nodes[j]} <= {nodes[i]}")
    maximal = {nodes[i] for i in range(k) if not any(leq[i][j] for j in range(k) if j != i)}
    for m in max_tags:
        if m not in idx:
            raise TopologyError(f"max tag {m!r} is not a node")
    if set(max_tags) != maximal:
        bad = sorted(set(max_tags) ^ maximal)[0]
        raise TopologyError(f"max tags must be exactly the maximal nodes; {bad!r} disagrees")

    def bits(names):
        return sum(1 << idx[v] for v in names)

    opens = []
    for s in range(1 << k):
        # down-set: j in s and i <= j imply i in s
        if all(not (s >> j & 1) or all(s >> i & 1 for i in range(k) if leq[i][j]) for j in range(k)):
            opens.append(s)
    opens.sort(key=lambda s: (_popcount(s), s))
    full = (1 << k) - 1
    tags = {
        "sspec": bits(sspec) if sspec is not None else full,
        "jspec": bits(jspec) if jspec is not None else full,
    }
    mb = bits(max_tags)
    for t, v in tags.items():
        if mb & ~v:
            raise TopologyError(f"maximal points must be tagged {t}")
    return FiniteTopology(name, list(nodes), opens, mb, leq, "poset", tags)


# -- ring-sourced spaces ----------------------------------------------------------------


def _w(points: list[Ideal], members_bits: int) -> int:
    """W(S) = primes not containing S (S as an element bitset)."""
    out = 0
    for i, P in enumerate(points):
        if members_bits & ~P.members:
            out |= 1 << i
    return out


@dataclass
class SpectrumBundle:
    ring: FiniteRing
    spec: FiniteTopology
    sspec: FiniteTopology
    jspec: FiniteTopology
    max_ideals: list[Ideal]
    primes: list[Ideal]
    sspec_points: list[Ideal]
    jspec_points: list[Ideal]

    def point_bits(self, ideals: list[Ideal]) -> int:
        return sum(1 << self.primes.index(P) for P in ideals)


def ideal_name(I: Ideal) -> str:
    """Greedy generating set in element order, e.g. "(2)" or "(s,t)"."""
    R = I.ring
    gens, cur = [], Ideal(R, 1 << R.zero, "two-sided")
    for a in I.elements():
        if not cur.members >> a & 1:
            gens.append(R.labels[a])
            cur = ideal_sum(cur, principal_ideal(R, a, "two-sided"))
    return "(" + ",".join(gens or [R.labels[R.zero]]) + ")"


def _ring_topology(R: FiniteRing, name: str, points: list[Ideal], max_bits: int) -> FiniteTopology:
    basis = sorted({_w(points, 1 << a) for a in range(R.q)})
    full = (1 << len(points)) - 1
    opens = _close_family(basis, full)
    leq = [[P.members & ~Q.members == 0 for Q in points] for P in points]
    labels = [ideal_name(P) for P in points]
    return FiniteTopology(name, labels, opens, max_bits, leq, "ring", {}, basis)


def spectra(R: FiniteRing, cap: int = DEFAULT_RING_CAP) -> SpectrumBundle:
    primes = special_ideals(R, "prime", cap=cap)
    if len(primes) > SPACE_POINT_CAP:
        raise TopologyError(f"{len(primes)} primes exceed the cap {SPACE_POINT_CAP}")
    maxi = special_ideals(R, "maximal", cap=cap)
    ss = special_ideals(R, "strongly-prime", cap=cap)
    jp = special_ideals(R, "j-prime", cap=cap)
    mbits = sum(1 << primes.index(M) for M in maxi if M in primes)
    spec = _ring_topology(R, f"Spec({R.name})", primes, mbits)
    spec.tags = {"sspec": sum(1 << primes.index(P) for P in ss if P in primes),
                 "jspec": sum(1 << primes.index(P) for P in jp if P in primes)}
    sspec = _ring_topology(R, f"SSpec({R.name})", ss, sum(1 << ss.index(M) for M in maxi if M in ss))
    jspec = _ring_topology(R, f"JSpec({R.name})", jp, sum(1 << jp.index(M) for M in maxi if M in jp))
    return SpectrumBundle(R, spec, sspec, jspec, maxi, primes, ss, jp)


def zariski_violations(R: FiniteRing, bundle: SpectrumBundle | None = None,
                       cap: int = DEFAULT_RING_CAP) -> list[str]:
    """W(I)W(J) axioms, opens = {W(I)}, and the inclusions SSpec, JSpec in Spec, Max in both."""
    b = bundle or spectra(R, cap)
    pts = b.primes
    ideals = enumerate_ideals(R, "two-sided", cap=cap)
    W = {I.members: _w(pts, I.members) for I in ideals}
    out = []
    for I, J in itertools.combinations_with_replacement(ideals, 2):
        if W[I.members] & W[J.members] != W[ideal_product(I, J).members]:
            out.append(f"W(I)&W(J) != W(IJ) for I={I.labels()} J={J.labels()}")
        if W[I.members] | W[J.members] != W[ideal_sum(I, J).members]:
            out.append(f"W(I)|W(J) != W(I+J) for I={I.labels()} J={J.labels()}")
    if set(W.values()) != set(b.spec.opens):
        out.append("opens of Spec differ from the family {W(I)}")
    if not b.spec.is_topology():
        out.append("Spec opens are not a topology")
    for P in b.sspec_points + b.jspec_points:
        if P not in pts:
            out.append(f"{P.labels()} is special but not prime")
    for M in b.max_ideals:
        if M not in b.sspec_points or M not in b.jspec_points:
            out.append(f"maximal {M.labels()} missing from SSpec or JSpec")
    return out


def subspace_agreement(bundle: SpectrumBundle) -> dict[str, bool]:
    """Do the O/D topologies on SSpec/JSpec equal the subspace topologies from Spec?"""
    out = {}
    for key, T, pts in (("sspec", bundle.sspec, bundle.sspec_points),
                        ("jspec", bundle.jspec, bundle.jspec_points)):
        sub = sum(1 << bundle.primes.index(P) for P in pts)
        # re-index subspace opens of Spec onto T's points
        order = [bundle.primes.index(P) for P in pts]
        restricted = {sum(1 << k for k, i in enumerate(order) if u >> i & 1)
                      for u in bundle.spec.subspace_opens(sub)}
        out[key] = restricted == set(T.opens)
    return out


# -- predicates ---------------------------------------------------------------------------


def _separated(T: FiniteTopology, a: int, b: int) -> bool:
    """Disjoint opens U >= a, V >= b exist?  The smallest open containing a set suffices."""
    U = _smallest_open(T, a)
    V = _smallest_open(T, b)
    return U & V == 0


def _smallest_open(T: FiniteTopology, s: int) -> int:
    out = T.full
    for u in T.opens:
        if u & s == s:
            out &= u
    return out


def topo_properties(T: FiniteTopology) -> dict:
    """T0, T1, normality, Hausdorffness of Max, compactness; each with a witness when false."""
    k = T.size
    res: dict = {}
    t0 = None
    for i, j in itertools.combinations(range(k), 2):
        if not any((u >> i & 1) != (u >> j & 1) for u in T.opens):
            t0 = [T.points[i], T.points[j]]
            break
    res["t0"] = {"value": t0 is None} | ({"witness": {"points": t0}} if t0 else {})
    closed = set(T.closed_sets())
    t1 = next((T.points[i] for i in range(k) if (1 << i) not in closed), None)
    res["t1"] = {"value": t1 is None} | ({"witness": {"point": t1}} if t1 else {})
    normal = None
    cl = T.closed_sets()
    for a, b in itertools.combinations(cl, 2):
        if a and b and not a & b and not _separated(T, a, b):
            normal = [T.label_set(a), T.label_set(b)]
            break
    res["normal"] = {"value": normal is None} | (
        {"witness": {"closed_a": normal[0], "closed_b": normal[1]}} if normal else {})
    sub = T.subspace_opens(T.max_bits)
    haus = None
    mx = bits_to_list(T.max_bits)
    for i, j in itertools.combinations(mx, 2):
        if not any(u >> i & 1 and v >> j & 1 and not u & v for u in sub for v in sub):
            haus = [T.points[i], T.points[j]]
            break
    res["max_hausdorff"] = {"value": haus is None} | ({"witness": {"points": haus}} if haus else {})
    res["compact"] = {"value": True, "note": "finite space"}
    return res


def _maxima_above(T: FiniteTopology, i: int) -> list[int]:
    return [j for j in bits_to_list(T.max_bits) if T.leq[i][j]]


def pm_checks(T: FiniteTopology) -> dict:
    """pm / weakly pm / J-pm: every (tagged) point lies under exactly one maximal point."""
    out = {}
    for key, pts in (("pm", T.full), ("weakly_pm", T.tags.get("sspec", T.full)),
                     ("j_pm", T.tags.get("jspec", T.full))):
        bad = None
        for i in bits_to_list(pts):
            above = _maxima_above(T, i)
            if len(above) != 1:
                bad = {"point": T.points[i], "maxima_above": [T.points[j] for j in above]}
                break
        out[key] = {"value": bad is None} | ({"witness": bad} if bad else {})
        if T.source == "ring":
            out[key]["note"] = DEGENERATE
    return out


def retract_exists(T: FiniteTopology, budget: int = 10 ** 6) -> dict:
    """Exhaustive search for a continuous r: X -> Max fixing Max pointwise."""
    mx = bits_to_list(T.max_bits)
    rest = [i for i in range(T.size) if not T.max_bits >> i & 1]
    if not mx:
        return {"value": False, "note": "Max is empty", "searched": 0}
    total = len(mx) ** len(rest)
    if total > budget:
        return {"value": "inconclusive", "note": f"{total} candidate maps exceed the budget {budget}",
                "searched": 0}
    sub = T.subspace_opens(T.max_bits)
    opens = set(T.opens)
    searched = 0
    for choice in itertools.product(mx, repeat=len(rest)):
        searched += 1
        r = list(range(T.size))
        for i, c in zip(rest, choice):
            r[i] = c
        if all(sum(1 << i for i in range(T.size) if v >> r[i] & 1) in opens for v in sub):
            return {"value": True, "searched": searched,
                    "witness": {T.points[i]: T.points[r[i]] for i in range(T.size)}}
    return {"value": False, "searched": searched, "note": "no continuous retraction exists"}


def consistency_directions(T: FiniteTopology, props: dict | None = None,
                           pm: dict | None = None, retract: dict | None = None) -> list[str]:
    """retract implies pm; normal implies Max Hausdorff."""
    props = props or topo_properties(T)
    pm = pm or pm_checks(T)
    retract = retract or retract_exists(T)
    out = []
    if retract["value"] is True and not pm["pm"]["value"]:
        out.append("retraction exists but pm fails")
    if props["normal"]["value"] and not props["max_hausdorff"]["value"]:
        out.append("normal but Max is not Hausdorff")
    return out


def space_report(T: FiniteTopology) -> dict:
    props = topo_properties(T)
    pm = pm_checks(T)
    ret = retract_exists(T)
    return {
        "space": T.to_json(),
        "properties": props,
        "pm": pm,
        "retract": ret,
        "consistency_issues": consistency_directions(T, props, pm, ret),
    }


def ring_spectrum_report(R: FiniteRing, cap: int = DEFAULT_RING_CAP) -> dict:
    b = spectra(R, cap)
    rep = space_report(b.spec)
    issues = zariski_violations(R, b, cap)
    spec_eq_max = b.spec.max_bits == b.spec.full
    if not spec_eq_max:
        issues.append("a prime ideal is not maximal in a finite ring")
    rep.update({
        "spec_equals_max": spec_eq_max,
        "sspec": b.sspec.to_json(),
        "jspec": b.jspec.to_json(),
        "subspace_agreement": subspace_agreement(b),
        "zariski_issues": issues,
        "note": SCOPE_NOTE,
    })
    return rep
