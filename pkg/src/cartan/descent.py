"""Descent of a Cartan decomposition from the completion back to R.

From an approximate factorization ``g = h1 @ realize(lam) @ h2`` over R-hat,
only ``lam`` and the right factor are used:

1. reduce h2 mod t and pick a Weyl element w with ``h2bar @ w^-1`` in the big
   cell ``P+ U-`` (rank profiles for GL/SL, a scan of signed permutations for SP);
2. lift that factorization over R-hat by block elimination;
3. truncate the unipotent part to an exact polynomial matrix u, so the
   leftover factor is congruent to 1 mod t^n0;
4. set ``h2 = u @ w`` and solve ``h1 = g @ (realize(lam) @ h2)^-1`` in K.

Conjugating the leftover factor by realize(lam) scales entry (i, j) by
t^(d_i - d_j) >= t^(1 - n0), so it stays integral, and h1 lies in G(R-hat)
and G(K), hence in G(R).  Every claim is re-checked on the exact output.
"""

from dataclasses import dataclass
from itertools import permutations, product

from .coeff import INF, RationalFn
from .errors import DecompositionError, DescentError, PrecisionError
from .matrices import (
    CartanDecomposition,
    GroupTag,
    MatK,
    MatKhat,
    is_member,
    weyl_sp,
)

__all__ = [
    "DescentCertificate",
    "ParabolicData",
    "approximate_decomposition",
    "big_cell_lift",
    "bruhat_residue",
    "default_precision",
    "descend",
    "descend_decomposition",
    "truncate_unipotent",
]


@dataclass(frozen=True)
class ParabolicData:
    """Weight blocks of a cocharacter and the Weyl element chosen for descent.

    ``blocks`` lists index tuples of equal weight, highest weight first.  The
    parabolic P+ allows entry (i, j) when weight(i) >= weight(j); the opposite
    unipotent radical U- allows off-diagonal entries where weight(i) < weight(j).
    """

    lam: object
    blocks: tuple
    w: object = None

    @classmethod
    def of(cls, lam, w=None):
        weights = lam.gl_weights()
        levels = sorted(set(weights), reverse=True)
        blocks = tuple(tuple(i for i, x in enumerate(weights) if x == v) for v in levels)
        return cls(lam, blocks, w)

    @property
    def weights(self):
        return self.lam.gl_weights()

    @property
    def group(self):
        return self.lam.group

    @property
    def threshold(self):
        w = self.weights
        return max(w) - min(w) + 1

    def in_parabolic(self, m):
        wt = self.weights
        return all(x.is_zero() for (i, j), x in m.entries() if wt[i] < wt[j])

    def in_unipotent(self, m):
        wt = self.weights
        for (i, j), x in m.entries():
            if i == j:
                if not (x - 1).is_zero():
                    return False
            elif wt[i] >= wt[j] and not x.is_zero():
                return False
        return True


def _submatrix(m, rows, cols):
    return [[m[i, j] for j in cols] for i in rows]


def _rank(rows):
    # rank over F_p of a list of FpElem rows
    a = [list(r) for r in rows]
    rank = 0
    width = len(a[0]) if a else 0
    for c in range(width):
        piv = next((r for r in range(rank, len(a)) if not a[r][c].is_zero()), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = a[rank][c].inverse()
        for r in range(len(a)):
            if r != rank and not a[r][c].is_zero():
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def _trailing_sets(pdata):
    sets, acc = [], ()
    for block in reversed(pdata.blocks):
        acc = tuple(sorted(acc + block))
        sets.append(acc)
    return sets  # lowest-weight block first, growing


def _in_big_cell(x, pdata):
    for s in _trailing_sets(pdata):
        if _rank(_submatrix(x, s, s)) < len(s):
            return False
    return True


def _gl_weyl(hbar, pdata):
    # nested column rank profiles of the trailing row blocks
    size = hbar.size
    chosen = []
    col_blocks = []
    acc_rows = ()
    for block in reversed(pdata.blocks):
        acc_rows = tuple(sorted(acc_rows + block))
        new = []
        # the block's own columns first, so a residue already in the big cell keeps w = 1
        for c in list(block) + [c for c in range(size) if c not in block]:
            if c in chosen or len(new) == len(block):
                continue
            trial = chosen + new + [c]
            if _rank(_submatrix(hbar, acc_rows, trial)) == len(trial):
                new.append(c)
        if len(new) != len(block):
            raise DecompositionError("singular residue matrix")
        chosen += new
        col_blocks.append(new)
    # sigma^-1 sends the sorted block indices onto the chosen columns
    sigma_inv = [None] * size
    for block, cols in zip(reversed(pdata.blocks), col_blocks):
        for i, c in zip(block, sorted(cols)):
            sigma_inv[i] = c
    # w e_a = e_sigma(a): column a has its 1 in row sigma(a)
    p = hbar.p
    rows = [[0] * size for _ in range(size)]
    for j, c in enumerate(sigma_inv):
        rows[j][c] = 1
    w = MatK(rows, p)
    if pdata.group.family == "SL" and w.det() != 1:
        w = w.scale_columns([-1 if a == 0 else 1 for a in range(size)])
    return w


def _sp_weyl_elements(n, p):
    for perm in permutations(range(n)):
        for bits in product((0, 1), repeat=n):
            yield weyl_sp(n, p, perm, [i for i in range(n) if bits[i]])


def bruhat_residue(hbar, pdata):
    """Factor ``hbar = pbar @ w @ (w^-1 @ ubar @ w)`` over F_p.

    Returns ``(pbar, w, ubar)`` with pbar in P+, ubar in U- and w a signed
    permutation lifted to ``MatK``.
    """
    if _rank(hbar.rows) < hbar.size:
        raise DecompositionError("singular residue matrix")
    if pdata.group.family == "SP":
        for w in _sp_weyl_elements(pdata.group.n, hbar.p):
            x = hbar @ w.transpose().residue()
            if _in_big_cell(x, pdata):
                break
        else:  # pragma: no cover - the translates of the big cell cover G
            raise DecompositionError("no Weyl element puts the residue in the big cell")
    else:
        w = _gl_weyl(hbar, pdata)
    x = hbar @ w.inverse().residue()
    pbar, ubar = _block_ul(x, pdata)
    return pbar, w, ubar


def _block_ul(x, pdata):
    # x = p @ u with p in P+ and u in U-, eliminating the lowest block first
    cls = type(x)
    size = x.size
    one, zero = x.one(), x.zero()
    m = [list(r) for r in x.rows]
    u = [[one if i == j else zero for j in range(size)] for i in range(size)]
    for k in range(len(pdata.blocks) - 1, 0, -1):
        last = pdata.blocks[k]
        rest = [i for b in pdata.blocks[:k] for i in b]
        try:
            a_inv = cls._from_rows([[m[i][j] for j in last] for i in last]).inverse()
        except (ZeroDivisionError, PrecisionError):
            raise DecompositionError("matrix is not in the big cell") from None
        # u[last, rest] = m[last, last]^-1 @ m[last, rest]
        coeffs = [[_dot(a_inv.rows[r], [m[s][j] for s in last], zero) for j in rest]
                  for r in range(len(last))]
        for r, i in enumerate(last):
            for c, j in enumerate(rest):
                u[i][j] = coeffs[r][c]
        for i in rest:
            left = [m[i][s] for s in last]
            for c, j in enumerate(rest):
                m[i][j] = m[i][j] - _dot(left, [row[c] for row in coeffs], zero)
        for i in last:
            for j in rest:
                m[i][j] = zero
    return cls._from_rows(m), cls._from_rows(u)


def _dot(a, b, zero):
    acc = zero
    for x, y in zip(a, b):
        if not (x.is_exact_zero() or y.is_exact_zero()):
            acc = acc + x * y
    return acc


def _lift_exact(w, cls):
    return MatKhat.exact(w) if cls is MatKhat else w


def big_cell_lift(hhat, w, pdata):
    """Factor ``hhat = phat @ w @ (w^-1 @ uhat @ w)`` over R-hat.

    ``w`` is the Weyl element from ``bruhat_residue``; returns ``(phat, uhat)``.
    """
    w_inv = _lift_exact(w.transpose() if _is_signed_perm(w) else w.inverse(), type(hhat))
    return _block_ul(hhat @ w_inv, pdata)


def _is_signed_perm(w):
    for row in w.rows:
        nz = [x for x in row if not x.is_zero()]
        if len(nz) != 1 or not (nz[0] * nz[0] - 1).is_zero():
            return False
    return True


def _cayley(m, sign):
    # (m - I)(m + I)^-1 for sign = -1; (I + m)(I - m)^-1 for sign = +1
    ident = type(m).identity(m.size, m.p)
    if sign < 0:
        return (m - ident) @ (m + ident).inverse()
    return (ident + m) @ (ident - m).inverse()


def truncate_unipotent(uhat, n, pdata=None):
    """Split ``uhat = vhat @ u`` with u exact polynomial and vhat = 1 mod t^n.

    For GL/SL, u keeps the terms of degree < n of every entry.  In Sp the
    entrywise truncation leaves the group, so the truncation is taken in
    Cayley coordinates ``X = (uhat - I)(uhat + I)^-1``, which form a linear
    space (p odd) and map back to a unipotent element of Sp.
    """
    if uhat.precision < n:
        raise PrecisionError(f"unipotent factor known only to t^{uhat.precision}", required=n)
    symplectic = pdata is not None and pdata.group.family == "SP"
    if symplectic:
        x = _cayley(uhat, -1)
        x_trunc = MatK._from_rows([[e.truncated(n) for e in r] for r in x.rows])
        u = _cayley(x_trunc, +1)
    else:
        u = MatK._from_rows([[e.truncated(n) for e in r] for r in uhat.rows])
    vhat = uhat @ MatKhat.exact(u.inverse())
    return u, vhat


def _check_congruent_to_one(vhat, n):
    for (i, j), x in vhat.entries():
        y = x - 1 if i == j else x
        if y.valuation() < n and not y.is_zero():
            raise DescentError(
                f"leftover factor is not 1 mod t^{n} at entry {(i, j)}", (i, j), y.valuation()
            )


def conjugated_valuation(vhat, pdata):
    """Least valuation of ``realize(lam) @ vhat @ realize(lam)^-1`` (known lower bound)."""
    wt = pdata.weights
    best = INF
    for (i, j), x in vhat.entries():
        v = x.precision if x.is_zero() else x.valuation()
        best = min(best, v + wt[i] - wt[j])
    return best


def default_precision(lam):
    """Working precision 2 * n0 + max|d| + 4 for a dominant cocharacter."""
    w = lam.weights
    return 2 * ParabolicData.of(lam).threshold + max(abs(x) for x in w) + 4


def exact_cocharacter(g, group):
    """Dominant cocharacter of g from the exact tower (no factoring for GL/SL)."""
    from .snf import divisor_invariant
    from .symplectic import sp_decompose

    tag = group if isinstance(group, GroupTag) else GroupTag.for_matrix(group, g)
    if tag.family == "SP":
        return sp_decompose(g, tag.n).lam
    from .matrices import Cocharacter

    return Cocharacter(divisor_invariant(g), tag)


def approximate_decomposition(g, group="GL", precision=None):
    """Decompose ``expand(g, precision)`` over the truncated tower."""
    from .snf import snf_decompose
    from .symplectic import sp_decompose

    tag = group if isinstance(group, GroupTag) else GroupTag.for_matrix(group, g)
    if precision is None:
        precision = default_precision(exact_cocharacter(g, tag))
    ghat = g.expand(precision)
    if tag.family == "SP":
        return sp_decompose(ghat, tag.n, check=False)
    return snf_decompose(ghat, tag)


@dataclass(frozen=True)
class DescentCertificate:
    """Intermediate data of a descent run, kept for inspection and tests."""

    w: MatK
    u: MatK
    vhat: MatKhat
    threshold: int
    conjugated_valuation: object


def descend(g, approx, pdata=None):
    """Run the descent; returns ``(CartanDecomposition, DescentCertificate)``."""
    lam, tag = approx.lam, approx.group
    if not lam.is_dominant():
        raise DecompositionError("descent needs a dominant cocharacter")
    if pdata is None:
        pdata = ParabolicData.of(lam)
    if g.size != tag.size or g.p != tag.p:
        raise DecompositionError(f"matrix of size {g.size} over F_{g.p} is not in {tag}")
    n0 = pdata.threshold
    size = g.size
    ident = MatK.identity(size, g.p)

    if all(x == 0 for x in lam.weights):
        # P+ is everything and U- is trivial: g itself lies in G(R)
        w, u = ident, ident
        vhat = MatKhat.exact(ident)
        h1, h2 = g, ident
        cval = 0
    else:
        h2hat = approx.h2
        if h2hat.precision < n0:
            raise PrecisionError(
                f"right factor known to t^{h2hat.precision}, below the threshold {n0}",
                required=n0,
            )
        _, w, _ = bruhat_residue(h2hat.residue(), pdata)
        _, uhat = big_cell_lift(h2hat, w, pdata)
        u, vhat = truncate_unipotent(uhat, n0, pdata)
        _check_congruent_to_one(vhat, n0)
        _check_weight_law(u, pdata)
        cval = conjugated_valuation(vhat, pdata)
        if cval < 0:
            raise DescentError(
                f"conjugated leftover factor has valuation {cval} < 0", None, cval
            )
        h2 = u @ w
        inv_scale = [RationalFn.monomial(1, -k, g.p) for k in lam.gl_weights()]
        h1 = (g @ h2.inverse()).scale_columns(inv_scale)

    for name, h in (("h1", h1), ("h2", h2)):
        ok = is_member(h, tag, "R")
        if not ok:
            val = h[ok.position].valuation() if ok.position else None
            raise DescentError(f"{name} is not in {tag} over R: {ok.reason}", ok.position, val)
    dec = CartanDecomposition(h1, lam, h2, tag)
    if dec.product() != g:
        raise DescentError("exact reconstruction failed")
    return dec, DescentCertificate(w, u, vhat, n0, cval)


def _check_weight_law(u, pdata):
    # off-diagonal entries of U- sit where d_i - d_j < 0, so realize(lam) shrinks them
    wt = pdata.weights
    for (i, j), x in u.entries():
        if i != j and not x.is_zero() and wt[i] - wt[j] >= 0:
            raise DescentError(f"unipotent entry {(i, j)} outside U-", (i, j), x.valuation())


def descend_decomposition(g, approx, pdata=None):
    """Exact decomposition of ``g`` over R from an approximate one over R-hat."""
    return descend(g, approx, pdata)[0]
