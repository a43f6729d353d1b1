"""Closed-form expansion of x^alpha * r, kept apart from the rewriting engine.

With s_k(r) = sigma_k^{a_k}( ... sigma_n^{a_n}(r)) the formula reads

    x^alpha r = sigma^alpha(r) x^alpha
              + sum_{k=n..1} sum_{j=1..a_k}
                  x_1^{a_1}..x_k^{a_k - j} delta_k(sigma_k^{j-1}(s_{k+1}(r))) x_k^{j-1} x_{k+1}^{a_{k+1}}..x_n^{a_n}

Each inner term is reduced by applying the formula again to its (strictly
shorter) left factor.  Only sigma and delta tables are consulted; the d/r
reordering constants never enter, because no letters change order.
"""

from __future__ import annotations

from .extension import DegreeOverflow, Exp, Extension, Polynomial, Terms


def _add(R, out: Terms, alpha: Exp, c: int) -> None:
    if c == R.zero:
        return
    s = int(R.add[out[alpha], c]) if alpha in out else c
    if s == R.zero:
        out.pop(alpha, None)
    else:
        out[alpha] = s


def _expand(ext: Extension, alpha: Exp, r: int, memo: dict) -> Terms:
    R = ext.ring
    if r == R.zero:
        return {}
    key = (alpha, r)
    if key in memo:
        return memo[key]
    n = ext.n
    sig = [m.images for m in ext.sigmas]
    dl = [m.images for m in ext.deltas]
    out: Terms = {}
    # suffix[k] = sigma_k^{a_k} ... sigma_n^{a_n}(r)  (0-based, suffix[n] = r)
    suffix = [0] * (n + 1)
    suffix[n] = r
    for k in range(n - 1, -1, -1):
        v = suffix[k + 1]
        for _ in range(alpha[k]):
            v = int(sig[k][v])
        suffix[k] = v
    _add(R, out, alpha, suffix[0])
    for k in range(n - 1, -1, -1):
        inner = suffix[k + 1]
        for j in range(1, alpha[k] + 1):
            c = int(dl[k][inner])
            inner = int(sig[k][inner])
            if c == R.zero:
                continue
            left = alpha[:k] + (alpha[k] - j,) + (0,) * (n - k - 1)
            right = (0,) * k + (j - 1,) + alpha[k + 1:]
            for beta, b in _expand(ext, left, c, memo).items():
                # beta lives on letters <= k and right on letters >= k
                _add(R, out, tuple(x + y for x, y in zip(beta, right)), b)
    memo[key] = out
    return out


def monomial_action_oracle(ext: Extension, alpha, r) -> Polynomial:
    """x^alpha * r by the closed formula."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != ext.n or min(alpha) < 0:
        raise ValueError(f"bad exponent {alpha}")
    if sum(alpha) > ext.degree_cap:
        raise DegreeOverflow(sum(alpha), ext.degree_cap)
    r = ext.ring.element(r)
    return Polynomial(ext, dict(_expand(ext, alpha, r, {})))
