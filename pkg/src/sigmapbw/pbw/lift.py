"""Coefficient-wise lifts of sigma_k and delta_k to the extension."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .extension import Extension, Polynomial, monomial_key


class LiftError(ValueError):
    def __init__(self, hypothesis: str, detail: str):
        self.hypothesis = hypothesis
        self.detail = detail
        super().__init__(f"{hypothesis}: {detail}")


class LiftValidationError(RuntimeError):
    """The lifted maps broke a law on the sample; this is an engine bug."""


def _first_diff(a: np.ndarray, b: np.ndarray) -> int | None:
    bad = np.flatnonzero(a != b)
    return int(bad[0]) if bad.size else None


def lift_hypothesis_failures(ext: Extension) -> list[LiftError]:
    R = ext.ring
    lab = R.labels
    S = [s.images for s in ext.sigmas]
    D = [d.images for d in ext.deltas]
    out: list[LiftError] = []
    n = ext.n
    for i, j in itertools.product(range(n), repeat=2):
        x = _first_diff(S[i][D[j]], D[j][S[i]])
        if x is not None:
            out.append(LiftError(f"sigma_{i + 1} delta_{j + 1} = delta_{j + 1} sigma_{i + 1}",
                                 f"fails at {lab[x]}"))
        if i < j:
            x = _first_diff(D[i][D[j]], D[j][D[i]])
            if x is not None:
                out.append(LiftError(f"delta_{i + 1} delta_{j + 1} = delta_{j + 1} delta_{i + 1}",
                                     f"fails at {lab[x]}"))
            # also needed for sigma-bar to respect x_i r = sigma_i(r) x_i
            x = _first_diff(S[i][S[j]], S[j][S[i]])
            if x is not None:
                out.append(LiftError(f"sigma_{i + 1} sigma_{j + 1} = sigma_{j + 1} sigma_{i + 1}",
                                     f"fails at {lab[x]}"))
    for k in range(n):
        for (i, j), dij in ext.d.items():
            if int(D[k][dij]) != R.zero:
                out.append(LiftError(f"delta_{k + 1}(d_{i + 1},{j + 1}) = 0",
                                     f"delta_{k + 1}({lab[dij]}) = {lab[int(D[k][dij])]}"))
            if int(S[k][dij]) != dij:
                out.append(LiftError(f"sigma_{k + 1}(d_{i + 1},{j + 1}) = d_{i + 1},{j + 1}",
                                     f"sigma_{k + 1}({lab[dij]}) = {lab[int(S[k][dij])]}"))
            for l, rl in enumerate(ext.r[(i, j)]):
                if int(D[k][rl]) != R.zero:
                    out.append(LiftError(f"delta_{k + 1}(r_{l}^({i + 1},{j + 1})) = 0",
                                         f"delta_{k + 1}({lab[rl]}) = {lab[int(D[k][rl])]}"))
                if int(S[k][rl]) != rl:
                    out.append(LiftError(f"sigma_{k + 1}(r_{l}^({i + 1},{j + 1})) fixed",
                                         f"sigma_{k + 1}({lab[rl]}) = {lab[int(S[k][rl])]}"))
    return out


@dataclass
class LiftedMaps:
    ext: Extension

    def sigma(self, k: int, f: Polynomial) -> Polynomial:
        """sigma-bar_k with 1-based k."""
        return f.map_coefficients(self.ext.sigmas[k - 1].images)

    def delta(self, k: int, f: Polynomial) -> Polynomial:
        return f.map_coefficients(self.ext.deltas[k - 1].images)

    def sigma_alpha(self, images: np.ndarray, f: Polynomial) -> Polynomial:
        return f.map_coefficients(images)


def _sample_terms(ext: Extension, max_deg: int) -> list[Polynomial]:
    monos = [a for a in itertools.product(range(max_deg + 1), repeat=ext.n) if sum(a) <= max_deg]
    monos.sort(key=monomial_key)
    return [ext.monomial(a, c) for a in monos for c in range(ext.ring.q) if c != ext.ring.zero]


def validate_lift(lift: LiftedMaps, budget: int = 20000) -> int:
    """Check multiplicativity and the derivation law on sampled pairs; return pair count."""
    ext = lift.ext
    deg = min(2, ext.degree_cap // 2)
    terms = _sample_terms(ext, deg)
    pairs = list(itertools.product(terms, repeat=2))
    if len(pairs) > budget:
        step = len(pairs) / budget
        pairs = [pairs[int(i * step)] for i in range(budget)]
    for f, g in pairs:
        fg = f * g
        for k in range(1, ext.n + 1):
            sf, sg = lift.sigma(k, f), lift.sigma(k, g)
            if lift.sigma(k, fg) != sf * sg:
                raise LiftValidationError(f"sigma-bar_{k} not multiplicative at ({f}, {g})")
            rhs = sf * lift.delta(k, g) + lift.delta(k, f) * g
            if lift.delta(k, fg) != rhs:
                raise LiftValidationError(f"delta-bar_{k} derivation law fails at ({f}, {g})")
    return len(pairs)


def lift_maps(ext: Extension, *, validate: bool = True, budget: int = 20000) -> LiftedMaps:
    """Lift Sigma and Delta coefficient-wise after checking the hypotheses on R."""
    fails = lift_hypothesis_failures(ext)
    if fails:
        raise fails[0]
    lift = LiftedMaps(ext)
    if validate:
        validate_lift(lift, budget)
    return lift
