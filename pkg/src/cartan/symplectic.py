"""Cartan decomposition of Sp_2n by symplectic Smith elimination.

Each step moves an entry of least valuation to the pivot position with a
signed Weyl element, then clears its column by ``[[I, 0], [S, I]] @
diag(A, A^-T)`` acting on the left and its row by the transposed construction
acting on the right.  Symplecticity of the current matrix then splits off the
(e_k, e_{n+k}) plane, and the recursion continues on the rest.
"""

from .errors import DecompositionError, FormViolation, PairingError
from .matrices import (
    CartanDecomposition,
    GroupTag,
    MatK,
    MatKhat,
    dominant_normalize,
    is_member,
    symplectic_form,
    weyl_sp,
)
from .snf import divisor_invariant, normalize_torus_element

__all__ = [
    "sp_decompose",
    "sp_divisor_check",
    "sp_levi",
    "sp_transvection",
    "sp_unipotent",
]


def sp_unipotent(s_block, lower=False):
    """``[[I, S], [0, I]]`` (or its lower analogue) for a symmetric n x n ``S``."""
    n = s_block.size
    cls = type(s_block)
    one, zero = s_block.one(), s_block.zero()
    rows = [[one if i == j else zero for j in range(2 * n)] for i in range(2 * n)]
    for i in range(n):
        for j in range(n):
            if s_block[i, j] != s_block[j, i]:
                raise ValueError("S must be symmetric")
            if lower:
                rows[n + i][j] = s_block[i, j]
            else:
                rows[i][n + j] = s_block[i, j]
    return cls._from_rows(rows)


def sp_levi(a):
    """``diag(A, A^-T)`` for A in GL_n."""
    n = a.size
    cls = type(a)
    zero = a.zero()
    b = a.inverse().transpose()
    rows = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            rows[i][j] = a[i, j]
            rows[n + i][n + j] = b[i, j]
    return cls._from_rows(rows)


def sp_transvection(u, c):
    """``v -> v + c * <u, v> * u`` for the form <u, v> = u^T J v."""
    size = len(u)
    n = size // 2
    ju = [u[n + i] for i in range(n)] + [-u[i] for i in range(n)]  # row vector u^T J
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            x = c * u[i] * ju[j]
            row.append(x + 1 if i == j else x)
        rows.append(row)
    return MatK(rows)


def _check_form(g, n):
    jj = symplectic_form(n, g.p, type(g))
    diff = g.transpose() @ jj @ g - jj
    for pos, x in diff.entries():
        if not x.is_zero():
            raise FormViolation("g^T J g != J", pos)


def _identity_like(m, size):
    one, zero = m.one(), m.zero()
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def _clearing_transform(y, k, n, like):
    """Symplectic E over R with E y = e_k, for a vector y with y[k] = 1."""
    cls = type(like)
    size = 2 * n
    one, zero = like.one(), like.zero()
    a = _identity_like(like, n)
    a_inv = _identity_like(like, n)
    for i in range(n):
        if i != k and not y[i].is_exact_zero():
            a[i][k] = -y[i]
            a_inv[i][k] = y[i]
    # second block after diag(A, A^-T): A^-T = I + e_k Y^T
    z = list(y[n:])
    acc = z[k]
    for i in range(n):
        if i != k and not y[i].is_exact_zero():
            acc = acc + y[i] * y[n + i]
    z[k] = acc

    levi = [[zero] * size for _ in range(size)]
    levi_inv = [[zero] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            levi[i][j] = a[i][j]
            levi[n + i][n + j] = a_inv[j][i]
            levi_inv[i][j] = a_inv[i][j]
            levi_inv[n + i][n + j] = a[j][i]
    low = _identity_like(like, size)
    low_inv = _identity_like(like, size)
    for i in range(n):
        if z[i].is_exact_zero():
            continue
        for r, c in {(i, k), (k, i)}:
            low[n + r][c] = -z[i]
            low_inv[n + r][c] = z[i]
    del one
    e = cls._from_rows(low) @ cls._from_rows(levi)
    e_inv = cls._from_rows(levi_inv) @ cls._from_rows(low_inv)
    return e, e_inv


def _move_index(r, k, n, p, cls):
    """Signed Weyl element sending index r to k, with its inverse."""
    size = 2 * n
    if r == k:
        w = MatK.identity(size, p)
    else:
        w = MatK.identity(size, p)
        i = r
        if r >= n:
            i = r - n
            w = weyl_sp(n, p, flips=[i])
        if i != k:
            perm = list(range(n))
            perm[i], perm[k] = k, i
            w = weyl_sp(n, p, perm) @ w
    if cls is MatKhat:
        w = MatKhat.exact(w)
    return w, w.transpose()


def _pivot(cur, k, n):
    active = list(range(k, n)) + list(range(n + k, 2 * n))
    best, best_key = None, None
    for r in active:
        row = cur.rows[r]
        for s in active:
            v = row[s].valuation()
            if v == float("inf"):
                continue
            key = (v, 0 if r < n and s < n else 1, r, s)
            if best_key is None or key < best_key:
                best, best_key = (r, s), key
    if best is None:
        raise DecompositionError("singular input matrix")
    return best


def _assert_split(cur, k, n):
    size = 2 * n
    for idx in (k, n + k):
        for j in range(size):
            if j != idx and not (cur[idx, j].is_zero() and cur[j, idx].is_zero()):
                raise AssertionError(f"plane {k} did not split off at entry {(idx, j)}")
    if not (cur[k, k] * cur[n + k, n + k] - 1).is_zero():
        raise AssertionError(f"paired pivots at {k} are not inverse")


def sp_decompose(g, n=None, check=True):
    """Factor ``g in Sp_2n(K)`` as ``h1 @ realize(lam) @ h2`` with h_i in Sp_2n(R).

    ``check`` asserts after every pivot that both accumulated transforms
    preserve J.
    """
    if g.size % 2:
        raise DecompositionError("symplectic matrices have even size")
    n = g.size // 2 if n is None else n
    if g.size != 2 * n:
        raise DecompositionError(f"expected a {2 * n}x{2 * n} matrix")
    try:
        tag = GroupTag("SP", n, g.p)
    except ValueError as exc:
        raise DecompositionError(str(exc)) from None
    _check_form(g, n)
    cls = type(g)
    truncated = cls is MatKhat
    size = 2 * n
    p = g.p
    cur = g
    h1 = cls._from_rows(_identity_like(g, size))
    h2 = h1

    for k in range(n):
        r, s = _pivot(cur, k, n)
        w, w_inv = _move_index(r, k, n, p, cls)
        cur = w @ cur
        h1 = h1 @ w_inv
        w, w_inv = _move_index(s, k, n, p, cls)
        cur = cur @ w.transpose()
        h2 = w @ h2

        inv = cur[k, k].inverse()
        y = [cur[i, k] * inv for i in range(size)]
        e, e_inv = _clearing_transform(y, k, n, g)
        cur = e @ cur
        h1 = h1 @ e_inv

        x = [cur[k, j] * inv for j in range(size)]
        e, e_inv = _clearing_transform(x, k, n, g)
        cur = cur @ e.transpose()
        h2 = e_inv.transpose() @ h2

        _assert_split(cur, k, n)
        if check and not truncated:
            for h in (h1, h2):
                ok = is_member(h, tag, "R")
                if not ok:
                    raise AssertionError(f"transform left Sp(R) at pivot {k}: {ok.reason}")

    units, lam0 = normalize_torus_element([cur[k, k] for k in range(n)], tag)
    h1 = h1.scale_columns(units + [u.inverse() for u in units])
    lam, w1, w2 = dominant_normalize(lam0)
    if truncated:
        w1, w2 = MatKhat.exact(w1), MatKhat.exact(w2)
    return CartanDecomposition(h1 @ w1, lam, w2 @ h2, tag, g.precision if truncated else None)


def sp_divisor_check(g, n=None):
    """GL_2n elementary divisors of g, checked to pair as (d, -d); returns d."""
    n = g.size // 2 if n is None else n
    divisors = divisor_invariant(g)
    if len(divisors) != 2 * n:
        raise PairingError(f"expected {2 * n} divisors, got {len(divisors)}")
    for i in range(n):
        if divisors[i] != -divisors[2 * n - 1 - i]:
            raise PairingError(f"divisors {divisors} do not pair as (d, -d)")
    return divisors[:n]
