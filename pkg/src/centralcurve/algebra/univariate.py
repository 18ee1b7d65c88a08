"""
Dense univariate polynomials over Fractions (coefficient lists, low -> high)
and exact real-root counting with Sturm chains.
"""
from fractions import Fraction
from math import gcd
from typing import Sequence

from centralcurve.exact.rational import lcm_of_denominators

Dense = list[Fraction]


def trim(p: Sequence[Fraction]) -> Dense:
    out = [Fraction(v) for v in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence[Fraction]) -> int:
    return len(trim(p)) - 1


def evaluate(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coef in reversed(p):
        acc = acc * x + coef
    return acc


def derivative(p: Sequence[Fraction]) -> Dense:
    return trim([k * p[k] for k in range(1, len(p))])


def multiply(a: Sequence[Fraction], b: Sequence[Fraction]) -> Dense:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def divmod_poly(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Dense, Dense]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, v in enumerate(b):
            r[i + shift] -= f * v
        r = trim(r)
    return trim(q), r


def positive_primitive(p: Sequence[Fraction]) -> Dense:
    """Scale by a positive rational to integer coprime coefficients (sign kept)."""
    p = trim(p)
    if not p:
        return p
    den = lcm_of_denominators(p)
    nums = [int(v * den) for v in p]
    g = 0
    for k in nums:
        g = gcd(g, k)
    return [Fraction(k, g) for k in nums]


def monic(p: Sequence[Fraction]) -> Dense:
    p = trim(p)
    return [v / p[-1] for v in p] if p else p


def gcd_poly(a: Sequence[Fraction], b: Sequence[Fraction]) -> Dense:
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, positive_primitive(r)
    return monic(a)


# ----------------------------- Sturm chains ---------------------------------

def sturm_chain(p: Sequence[Fraction]) -> list[Dense]:
    p0 = positive_primitive(p)
    if not p0:
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [p0]
    p1 = positive_primitive(derivative(p0))
    while p1:
        chain.append(p1)
        _, r = divmod_poly(chain[-2], chain[-1])
        p1 = positive_primitive([-v for v in r])
    return chain


def _changes(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for u, v in zip(nz, nz[1:]) if u != v)


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def sign_changes_at(chain: Sequence[Dense], x: Fraction) -> int:
    return _changes([_sign(evaluate(p, x)) for p in chain])


def sign_changes_at_infinity(chain: Sequence[Dense], direction: int) -> int:
    """direction=+1 for +inf, -1 for -inf: sign of the leading term decides."""
    signs = []
    for p in chain:
        lead = _sign(p[-1])
        if direction < 0 and (len(p) - 1) % 2 == 1:
            lead = -lead
        signs.append(lead)
    return _changes(signs)


def count_real_roots(
    p: Sequence[Fraction],
    lo: Fraction | None = None,
    hi: Fraction | None = None,
) -> int:
    """Distinct real roots in (lo, hi]; None means the corresponding infinity."""
    chain = sturm_chain(p)
    left = sign_changes_at_infinity(chain, -1) if lo is None else sign_changes_at(chain, Fraction(lo))
    right = sign_changes_at_infinity(chain, +1) if hi is None else sign_changes_at(chain, Fraction(hi))
    return left - right


def squarefree_decomposition(p: Sequence[Fraction]) -> list[tuple[Dense, int]]:
    """Yun's algorithm: p = c · Π f_k^k with pairwise coprime square-free f_k."""
    p = monic(p)
    if len(p) <= 1:
        return []
    out: list[tuple[Dense, int]] = []
    dp = derivative(p)
    a = gcd_poly(p, dp)
    b, _ = divmod_poly(p, a)
    c, _ = divmod_poly(dp, a)
    d = trim([x - y for x, y in _pad(c, derivative(b))])
    k = 1
    while len(b) > 1:
        a = gcd_poly(b, d)
        if len(a) > 1:
            out.append((a, k))
        b, _ = divmod_poly(b, a)
        c, _ = divmod_poly(d, a)
        d = trim([x - y for x, y in _pad(c, derivative(b))])
        k += 1
    return out


def count_real_roots_with_multiplicity(p: Sequence[Fraction]) -> int:
    return sum(k * count_real_roots(f) for f, k in squarefree_decomposition(p))


def _pad(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[tuple[Fraction, Fraction]]:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return list(zip(a, b))
