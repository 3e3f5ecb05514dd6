"""Square matrices over the coefficient towers, classical groups and cocharacters.

``MatK`` holds exact entries of F_p(t), ``MatKhat`` truncated series and
``MatFp`` residue-field entries.  All three share generic elimination code
that pivots on the entry of least valuation.

Coordinate conventions: the symplectic form is ``J = [[0, I], [-I, 0]]`` in
n+n blocks, and a symplectic cocharacter ``d`` is realized as
``diag(t^d_1, ..., t^d_n, t^-d_1, ..., t^-d_n)``.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .coeff import INF, FpElem, RationalFn, TruncatedSeries, check_prime, expand, laurent_series
from .errors import DecompositionError, PrecisionError

__all__ = [
    "CartanDecomposition",
    "Cocharacter",
    "GroupTag",
    "MatFp",
    "MatK",
    "MatKhat",
    "Membership",
    "Ring",
    "det",
    "dominant_normalize",
    "expand_matrix",
    "is_member",
    "realize",
    "symplectic_form",
    "weyl_sp",
]


class Matrix:
    """Immutable square matrix; subclasses fix the entry type."""

    __slots__ = ("rows",)
    entry_type = None

    def __init__(self, rows, p=None):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and nonempty")
        if p is None:
            p = next((x.p for r in rows for x in r if isinstance(x, self.entry_type)), None)
            if p is None:
                raise ValueError("modulus required for a matrix of integers")
        sample = self._sample(p)
        self.rows = tuple(tuple(self._coerce(x, sample) for x in r) for r in rows)

    @classmethod
    def _sample(cls, p):
        raise NotImplementedError

    def _coerce(self, x, sample):
        if isinstance(x, self.entry_type):
            if x.p != sample.p:
                raise ValueError("mixed moduli")
            return x
        if isinstance(x, int):
            return sample.constant(x)
        raise TypeError(f"cannot use {type(x).__name__} as a {type(self).__name__} entry")

    @classmethod
    def _from_rows(cls, rows):
        obj = object.__new__(cls)
        obj.rows = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def identity(cls, size, p):
        s = cls._sample(p)
        one, zero = s.constant(1), s.constant(0)
        return cls._from_rows([[one if i == j else zero for j in range(size)] for i in range(size)])

    @classmethod
    def diagonal(cls, entries):
        entries = list(entries)
        zero = entries[0].constant(0)
        n = len(entries)
        return cls._from_rows([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def size(self):
        return len(self.rows)

    @property
    def p(self):
        return self.rows[0][0].p

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for i, row in enumerate(self.rows):
            for j, x in enumerate(row):
                yield (i, j), x

    def zero(self):
        return self.rows[0][0].constant(0)

    def one(self):
        return self.rows[0][0].constant(1)

    def _check_same(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.size != self.size:
            raise ValueError("size mismatch")

    def __matmul__(self, other):
        self._check_same(other)
        n = self.size
        zero = self.zero()
        b = other.rows
        out = []
        for row in self.rows:
            out_row = []
            for j in range(n):
                acc = None
                for k in range(n):
                    x = row[k]
                    if x.is_exact_zero():
                        continue
                    y = b[k][j]
                    if y.is_exact_zero():
                        continue
                    acc = x * y if acc is None else acc + x * y
                out_row.append(zero if acc is None else acc)
            out.append(out_row)
        return type(self)._from_rows(out)

    def __add__(self, other):
        self._check_same(other)
        return type(self)._from_rows(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        self._check_same(other)
        return type(self)._from_rows(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __neg__(self):
        return type(self)._from_rows([[-x for x in r] for r in self.rows])

    def transpose(self):
        return type(self)._from_rows(list(zip(*self.rows)))

    @property
    def T(self):
        return self.transpose()

    def map(self, f, cls=None):
        return (cls or type(self))._from_rows([[f(x) for x in r] for r in self.rows])

    def scale_columns(self, factors):
        return type(self)._from_rows([[x * c for x, c in zip(r, factors)] for r in self.rows])

    def scale_rows(self, factors):
        return type(self)._from_rows([[x * c for x in r] for r, c in zip(self.rows, factors)])

    def min_valuation(self):
        return min(x.valuation() for r in self.rows for x in r)

    def det(self):
        return _det_gauss(self)

    def inverse(self):
        return type(self)._from_rows(_inverse_rows(self.rows))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class MatK(Matrix):
    """Matrix over K = F_p(t)."""

    __slots__ = ()
    entry_type = RationalFn

    @classmethod
    def _sample(cls, p):
        return RationalFn.from_int(0, check_prime(p))

    def expand(self, N):
        return expand_matrix(self, N)

    def residue(self):
        """Reduction mod t of an integral matrix, as a ``MatFp``."""
        p = self.p
        return MatFp._from_rows([[FpElem(x.residue(), p) for x in r] for r in self.rows])


class MatKhat(Matrix):
    """Matrix over the completion, entries known to (at least) ``precision``."""

    __slots__ = ()
    entry_type = TruncatedSeries

    @classmethod
    def _sample(cls, p):
        return TruncatedSeries.zero(check_prime(p))

    @property
    def precision(self):
        return min(x.precision for r in self.rows for x in r)

    @classmethod
    def exact(cls, m):
        """Lift a ``MatK`` of Laurent polynomials without losing precision."""
        return cls._from_rows([[laurent_series(x) for x in r] for r in m.rows])

    def with_precision(self, N):
        return self.map(lambda x: x.with_precision(N))

    def det(self):
        # division-free Laplace expansion keeps the precision rules honest
        return _det_laplace(self.rows)

    def residue(self):
        p = self.p
        return MatFp._from_rows([[FpElem(x.residue(), p) for x in r] for r in self.rows])

    def agrees(self, other):
        self._check_same(other)
        return all(x.agrees(y) for r, s in zip(self.rows, other.rows) for x, y in zip(r, s))


class MatFp(Matrix):
    """Matrix over the residue field F_p."""

    __slots__ = ()
    entry_type = FpElem

    @classmethod
    def _sample(cls, p):
        return FpElem(0, p)

    def _coerce(self, x, sample):
        if isinstance(x, FpElem):
            return x
        if isinstance(x, int):
            return FpElem(x, sample.modulus)
        raise TypeError(f"cannot use {type(x).__name__} as a MatFp entry")

    @property
    def p(self):
        return self.rows[0][0].modulus

    def lift(self):
        """The same integers as constants of ``MatK``."""
        p = self.p
        return MatK._from_rows([[RationalFn.from_int(x.value, p) for x in r] for r in self.rows])


def _select_pivot(rows, k):
    # least valuation in column k at rows >= k; ties go to the smallest row
    best, best_v = None, INF
    for i in range(k, len(rows)):
        v = rows[i][k].valuation()
        if v < best_v:
            best, best_v = i, v
    return best


def _det_gauss(m):
    a = [list(r) for r in m.rows]
    n = len(a)
    det = m.one()
    for k in range(n):
        r = _select_pivot(a, k)
        if r is None:
            if isinstance(a[k][k], TruncatedSeries):
                raise PrecisionError("determinant pivot is zero at the known precision")
            return m.zero()
        if r != k:
            a[k], a[r] = a[r], a[k]
            det = -det
        piv = a[k][k]
        det = det * piv
        inv = piv.inverse()
        for i in range(k + 1, n):
            x = a[i][k]
            if x.is_exact_zero():
                continue
            f = x * inv
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                if not rk[j].is_exact_zero():
                    ri[j] = ri[j] - f * rk[j]
    return det


def _det_laplace(rows):
    n = len(rows)
    zero = rows[0][0].constant(0)
    # minors of the last (n - r) rows, keyed by column subset
    prev = {(): rows[0][0].constant(1)}
    for r in range(n - 1, -1, -1):
        size = n - r
        cur = {}
        for cols in combinations(range(n), size):
            acc = zero
            for idx, c in enumerate(cols):
                x = rows[r][c]
                if x.is_exact_zero():
                    continue
                term = x * prev[cols[:idx] + cols[idx + 1:]]
                acc = acc - term if idx % 2 else acc + term
            cur[cols] = acc
        prev = cur
    return prev[tuple(range(n))]


def _inverse_rows(rows):
    n = len(rows)
    sample = rows[0][0]
    one, zero = sample.constant(1), sample.constant(0)
    a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    for k in range(n):
        r = _select_pivot(a, k)
        if r is None:
            if isinstance(sample, TruncatedSeries):
                raise PrecisionError("matrix is not invertible at the known precision")
            raise ZeroDivisionError("singular matrix")
        a[k], a[r] = a[r], a[k]
        inv = a[k][k].inverse()
        a[k] = [x * inv for x in a[k]]
        rk = a[k]
        for i in range(n):
            if i == k or a[i][k].is_exact_zero():
                continue
            f = a[i][k]
            a[i] = [x if y.is_exact_zero() else x - f * y for x, y in zip(a[i], rk)]
    return [row[n:] for row in a]


def det(m):
    return m.det()


def expand_matrix(m, N):
    """Entrywise expansion of a ``MatK`` modulo t^N."""
    p = m.p
    return MatKhat._from_rows(
        [[expand(x, N) if x.valuation() < N else TruncatedSeries.zero(p, N) for x in r]
         for r in m.rows]
    )


class Ring(Enum):
    K = "K"
    R = "R"
    RHAT = "Rhat"


_FAMILIES = ("GL", "SL", "SP")


@dataclass(frozen=True)
class GroupTag:
    """A split classical group; ``n`` is the rank parameter (matrix size 2n for SP)."""

    family: str
    n: int
    p: int

    def __post_init__(self):
        fam = self.family.upper()
        if fam not in _FAMILIES:
            raise ValueError(f"unknown group family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if self.n < 1:
            raise ValueError("rank must be positive")
        check_prime(self.p)
        if fam == "SP" and self.p == 2:
            raise ValueError("Sp_2n needs an odd characteristic")

    @property
    def size(self):
        return 2 * self.n if self.family == "SP" else self.n

    @classmethod
    def for_matrix(cls, family, m):
        fam = family.upper()
        size = m.size
        if fam == "SP":
            if size % 2:
                raise ValueError("symplectic matrices have even size")
            return cls(fam, size // 2, m.p)
        return cls(fam, size, m.p)

    def __str__(self):
        return f"{self.family}_{self.size}(p={self.p})" if self.family != "SP" else \
            f"Sp_{self.size}(p={self.p})"


@dataclass(frozen=True)
class Membership:
    """Outcome of ``is_member``; falsy on failure, with the violated condition."""

    ok: bool
    reason: str = ""
    position: tuple = None

    def __bool__(self):
        return self.ok


def symplectic_form(n, p, cls=MatK):
    s = cls._sample(p)
    one, zero = s.constant(1), s.constant(0)
    rows = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = one
        rows[n + i][i] = -one
    return cls._from_rows(rows)


def is_member(m, group, ring=Ring.R):
    """Test ``m`` for membership of G(K), G(R) or G(R-hat)."""
    ring = Ring(ring)
    if m.size != group.size:
        return Membership(False, f"size {m.size} != {group.size}")
    if m.p != group.p:
        return Membership(False, f"characteristic {m.p} != {group.p}")
    truncated = isinstance(m, MatKhat)
    if ring is not Ring.K:
        for (i, j), x in m.entries():
            if not x.is_integral():
                return Membership(False, f"entry has valuation {x.valuation()} < 0", (i, j))
    d = m.det()
    if ring is Ring.K:
        if d.is_zero():
            return Membership(False, "det = 0")
    else:
        try:
            v = d.valuation()
        except PrecisionError:
            v = INF
        if v != 0:
            shown = "undetermined" if v == INF and truncated else v
            return Membership(False, f"val(det) = {shown} != 0")
    if group.family == "SL":
        diff = d - 1
        if not diff.is_zero():
            return Membership(False, "det != 1")
    if group.family == "SP":
        jj = symplectic_form(group.n, group.p, type(m))
        form = m.transpose() @ jj @ m
        for (i, j), x in (form - jj).entries():
            if not x.is_zero():
                return Membership(False, "m^T J m != J", (i, j))
    return Membership(True)


@dataclass(frozen=True)
class Cocharacter:
    """Integer weight vector of a one-parameter subgroup of the diagonal torus."""

    weights: tuple
    group: GroupTag

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != self.group.n:
            raise ValueError(f"expected {self.group.n} weights, got {len(w)}")
        if self.group.family == "SL" and sum(w):
            raise ValueError("SL cocharacters have weights summing to zero")

    def is_dominant(self):
        w = self.weights
        if any(a < b for a, b in zip(w, w[1:])):
            return False
        return not (self.group.family == "SP" and w[-1] < 0)

    def gl_weights(self):
        """Exponents along the diagonal of ``realize``."""
        if self.group.family == "SP":
            return self.weights + tuple(-x for x in self.weights)
        return self.weights

    def __add__(self, other):
        if other.group != self.group:
            raise ValueError("group mismatch")
        return Cocharacter(tuple(a + b for a, b in zip(self.weights, other.weights)), self.group)

    def __neg__(self):
        return Cocharacter(tuple(-x for x in self.weights), self.group)


def realize(lam):
    """The torus element obtained by evaluating the cocharacter at t."""
    p = lam.group.p
    return MatK.diagonal([RationalFn.monomial(1, k, p) for k in lam.gl_weights()])


def _perm_matrix(images, p, signs=None):
    # column j is signs[j] * e_{images[j]}
    n = len(images)
    rows = [[0] * n for _ in range(n)]
    for j, i in enumerate(images):
        rows[i][j] = 1 if signs is None else signs[j]
    return MatK(rows, p)


def _signed_transpositions(images):
    # selection sort of the images back to the identity, recording the swaps
    cols = list(images)
    swaps = []
    for j in range(len(cols)):
        if cols[j] != j:
            k = cols.index(j)
            cols[j], cols[k] = cols[k], cols[j]
            swaps.append((j, k))
    return swaps


def _sl_weyl(images, p):
    n = len(images)
    w = MatK.identity(n, p)
    for a, b in reversed(_signed_transpositions(images)):
        a, b = min(a, b), max(a, b)
        cols = list(range(n))
        cols[a], cols[b] = b, a
        signs = [1] * n
        signs[a] = -1
        w = w @ _perm_matrix(cols, p, signs)
    return w


def weyl_sp(n, p, perm=None, flips=()):
    """Signed permutation in Sp_2n(R): flip indices in ``flips``, then permute.

    The flip at i acts on the (e_i, e_{n+i}) plane as ``[[0, 1], [-1, 0]]``;
    ``perm`` acts diagonally on both blocks with column j sent to ``perm[j]``.
    """
    size = 2 * n
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        rows[i][i] = 1
    for i in flips:
        rows[i][i] = rows[n + i][n + i] = 0
        rows[i][n + i] = 1
        rows[n + i][i] = -1
    s = MatK(rows, p)
    if perm is None:
        return s
    images = list(perm) + [n + x for x in perm]
    return s @ _perm_matrix(images, p)


def dominant_normalize(lam):
    """Return ``(dom, w1, w2)`` with ``realize(lam) == w1 @ realize(dom) @ w2``."""
    group = lam.group
    d = lam.weights
    p = group.p
    if group.family == "SP":
        flips = [i for i, x in enumerate(d) if x < 0]
        mags = [abs(x) for x in d]
        order = sorted(range(group.n), key=lambda i: -mags[i])
        dom = Cocharacter(tuple(mags[i] for i in order), group)
        w1 = weyl_sp(group.n, p, order, flips)
        return dom, w1, w1.inverse()
    order = sorted(range(group.n), key=lambda i: -d[i])
    dom = Cocharacter(tuple(d[i] for i in order), group)
    if group.family == "SL":
        w1 = _sl_weyl(order, p)
        return dom, w1, w1.inverse()
    w1 = _perm_matrix(order, p)
    return dom, w1, w1.transpose()


@dataclass(frozen=True)
class CartanDecomposition:
    """``h1 @ realize(lam) @ h2``; ``precision`` is set for factors over R-hat."""

    h1: Matrix
    lam: Cocharacter
    h2: Matrix
    group: GroupTag
    precision: object = None

    def product(self):
        scale = [RationalFn.monomial(1, k, self.group.p) for k in self.lam.gl_weights()]
        if isinstance(self.h1, MatKhat):
            scale = [laurent_series(x) for x in scale]
        return self.h1.scale_columns(scale) @ self.h2

    @property
    def weights(self):
        return self.lam.weights


def require_invertible(m):
    d = m.det()
    if d.is_zero():
        raise DecompositionError("singular input matrix")
    return d
