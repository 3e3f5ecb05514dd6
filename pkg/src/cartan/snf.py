"""Cartan decomposition of GL_n and SL_n by Smith normal form over the DVR.

Elimination pivots on the entry of least valuation (ties: smallest row, then
column), so every multiplier lies in R.  The exact tower gives bit-exact
factors; the truncated tower refuses to pivot when a zero-at-precision entry
could hide a smaller valuation.
"""

from itertools import combinations

from .coeff import INF, RationalFn, _ord
from .errors import DecompositionError, PrecisionError
from .matrices import (
    CartanDecomposition,
    Cocharacter,
    GroupTag,
    MatK,
    MatKhat,
    dominant_normalize,
)

__all__ = [
    "divisor_invariant",
    "double_coset_equal",
    "normalize_torus_element",
    "snf_decompose",
]


def _group_tag(group, m, allowed=("GL", "SL")):
    if isinstance(group, GroupTag):
        tag = group
    else:
        tag = GroupTag.for_matrix(str(group), m)
    if tag.family not in allowed:
        raise DecompositionError(f"{tag.family} is not handled here")
    if tag.size != m.size or tag.p != m.p:
        raise DecompositionError(f"matrix of size {m.size} over F_{m.p} is not in {tag}")
    return tag


def _pick_pivot(a, k, truncated, precision):
    n = len(a)
    best, best_v = None, INF
    for i in range(k, n):
        row = a[i]
        for j in range(k, n):
            v = row[j].valuation()
            if v < best_v:
                best, best_v = (i, j), v
    if not truncated:
        if best is None:
            raise DecompositionError("singular input matrix")
        return best
    floor = min((x.precision for row in a[k:] for x in row[k:] if x.is_zero()), default=INF)
    if best is None:
        raise PrecisionError(
            f"remaining {n - k}x{n - k} block is zero at the working precision",
            required=precision + 1,
        )
    if floor < best_v:
        raise PrecisionError(
            f"an entry unknown beyond t^{floor} may undercut the pivot valuation {best_v}",
            required=precision + best_v - floor,
        )
    return best


def _swap_columns(rows, a, b):
    for r in rows:
        r[a], r[b] = r[b], r[a]


def snf_decompose(g, group="GL"):
    """Factor ``g = h1 @ realize(lam) @ h2`` with h1, h2 in G(R) and lam dominant.

    ``g`` is a ``MatK`` (exact result) or a ``MatKhat`` (factors over R-hat,
    with ``precision`` recorded on the result).
    """
    tag = _group_tag(group, g)
    truncated = isinstance(g, MatKhat)
    precision = g.precision if truncated else None
    if tag.family == "SL":
        d = g.det()
        if not (d - 1).is_zero():
            raise DecompositionError("SL decomposition requested but det(g) != 1")

    n = g.size
    zero, one = g.zero(), g.one()
    a = [list(r) for r in g.rows]
    h1 = [[one if i == j else zero for j in range(n)] for i in range(n)]
    h2 = [[one if i == j else zero for j in range(n)] for i in range(n)]

    for k in range(n):
        r, s = _pick_pivot(a, k, truncated, precision)
        if r != k:
            a[k], a[r] = a[r], a[k]
            _swap_columns(h1, k, r)
        if s != k:
            _swap_columns(a, k, s)
            h2[k], h2[s] = h2[s], h2[k]
        ak = a[k]
        inv = ak[k].inverse()
        for i in range(k + 1, n):
            x = a[i][k]
            if x.is_exact_zero():
                continue
            f = x * inv
            ai = a[i]
            for j in range(k + 1, n):
                y = ak[j]
                if not y.is_exact_zero():
                    ai[j] = ai[j] - f * y
            ai[k] = zero
            for row in h1:
                y = row[i]
                if not y.is_exact_zero():
                    row[k] = row[k] + f * y
        hk = h2[k]
        for j in range(k + 1, n):
            y = ak[j]
            if y.is_exact_zero():
                continue
            c = y * inv
            hj = h2[j]
            h2[k] = hk = [u if v.is_exact_zero() else u + c * v for u, v in zip(hk, hj)]
            ak[j] = zero

    units, lam0 = normalize_torus_element([a[k][k] for k in range(n)], tag)
    cls = type(g)
    m1 = cls._from_rows(h1).scale_columns(units)
    m2 = cls._from_rows(h2)
    lam, w1, w2 = dominant_normalize(lam0)
    if truncated:
        w1, w2 = MatKhat.exact(w1), MatKhat.exact(w2)
    m1 = m1 @ w1
    m2 = w2 @ m2
    if tag.family == "SL":
        c = m1.det()
        m1 = m1.scale_columns([c.inverse()] + [one] * (n - 1))
        m2 = m2.scale_rows([c] + [one] * (n - 1))
    return CartanDecomposition(m1, lam, m2, tag, precision)


def normalize_torus_element(tvec, group):
    """Split each torus coordinate as ``unit * t^d``.

    Returns ``(units, lam)``; ``units`` is the list of R-units to absorb into
    h1.  ``group`` is a ``GroupTag`` or family name; for SP the vector holds
    the first n coordinates.
    """
    tvec = list(tvec)
    if isinstance(group, GroupTag):
        tag = group
    else:
        tag = GroupTag(str(group), len(tvec), tvec[0].p)
    units, weights = [], []
    for i, x in enumerate(tvec):
        if isinstance(x, RationalFn) and x.is_zero():
            raise DecompositionError(f"torus coordinate {i} is zero")
        v, u = x.unit_part()
        units.append(u)
        weights.append(v)
    return units, Cocharacter(tuple(weights), tag)


def _integral_rows(g):
    # clear each row's denominators; return polynomial rows and t-adic shifts
    rows, shifts = [], []
    for r in g.rows:
        den = r[0]._den
        for x in r[1:]:
            d = x._den
            if d != den:
                den = den * d // den.gcd(d)
        rows.append([x._num * (den // x._den) for x in r])
        shifts.append(_ord(den))
    return rows, shifts


def divisor_invariant(g):
    """Elementary divisors of g from minimal valuations of its k x k minors.

    Independent of any elimination path: the k smallest divisors sum to the
    least valuation among all k x k minors.
    """
    if not isinstance(g, MatK):
        raise TypeError("divisor_invariant needs an exact MatK")
    n = g.size
    rows, shifts = _integral_rows(g)
    zero = rows[0][0] * 0
    minors = {((), ()): zero + 1}
    mins = [0]
    for k in range(1, n + 1):
        cur = {}
        best = INF
        for rs in combinations(range(n), k):
            top, rest = rs[0], rs[1:]
            sub_shift = sum(shifts[i] for i in rs)
            for cs in combinations(range(n), k):
                acc = zero
                for idx, c in enumerate(cs):
                    x = rows[top][c]
                    if x.is_zero():
                        continue
                    m = minors[(rest, cs[:idx] + cs[idx + 1:])]
                    if m.is_zero():
                        continue
                    acc = acc - x * m if idx % 2 else acc + x * m
                cur[(rs, cs)] = acc
                if not acc.is_zero():
                    best = min(best, _ord(acc) - sub_shift)
        if best == INF:
            raise DecompositionError("singular input matrix")
        mins.append(best)
        minors = cur
    ascending = [mins[k] - mins[k - 1] for k in range(1, n + 1)]
    return tuple(reversed(ascending))


def double_coset_equal(g, g2, group="GL"):
    """Whether G(R) g G(R) == G(R) g2 G(R)."""
    tag = _group_tag(group, g, allowed=("GL", "SL", "SP"))
    tag2 = _group_tag(tag, g2, allowed=("GL", "SL", "SP"))
    if tag2 != tag:
        raise DecompositionError("group mismatch")
    if tag.family == "SP":
        from .symplectic import sp_decompose

        return sp_decompose(g, tag.n).lam == sp_decompose(g2, tag.n).lam
    if tag.family == "SL":
        for m in (g, g2):
            if not (m.det() - 1).is_zero():
                raise DecompositionError("matrix is not in SL_n(K)")
    return divisor_invariant(g) == divisor_invariant(g2)
