"""Coefficient arithmetic over F_p, F_p[t], F_p(t) and truncated Laurent series.

The exact tower is ``RationalFn`` (an element of K = F_p(t)); the local ring
R = F_p[t]_(t) is the subset of valuation >= 0.  ``TruncatedSeries`` models
the completion F_p((t)) at finite absolute precision.  Polynomials are backed
by FLINT's ``nmod_poly``.

Precision rules for ``TruncatedSeries`` (absolute precision N means the
element is known modulo t^N):

* add/sub: ``min(N_a, N_b)``
* mul: ``min(v_a + N_b, v_b + N_a)``
* inverse of x with exact valuation v: ``N - 2v``

An exact element has ``N = inf``; a series whose known coefficients are all
zero is flagged as zero at precision N and has no exact valuation.
"""

import math
from functools import lru_cache

import flint

from .errors import PrecisionError

INF = math.inf

__all__ = [
    "INF",
    "FpElem",
    "Poly",
    "RationalFn",
    "TruncatedSeries",
    "check_prime",
    "expand",
    "laurent_series",
    "is_prime",
    "render_coeff",
    "series_inverse",
    "valuation",
]


@lru_cache(maxsize=None)
def is_prime(p):
    return p >= 2 and bool(flint.fmpz(p).is_prime())


def check_prime(p):
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime modulus")
    return p


@lru_cache(maxsize=None)
def _one(p):
    return flint.nmod_poly([1], p)


@lru_cache(maxsize=None)
def _zero(p):
    return flint.nmod_poly([], p)


def _ord(f):
    # t-adic order of a nonzero nmod_poly
    i = 0
    while f[i] == 0:
        i += 1
    return i


def _monic(f):
    lc = f[f.degree()]
    if lc == 1:
        return f, lc
    return f * (1 / lc), lc


def _render_terms(f, shift=0):
    parts = []
    for k in range(f.degree() + 1):
        c = int(f[k])
        if not c:
            continue
        e = k + shift
        if e == 0:
            parts.append(str(c))
        else:
            mono = "t" if e == 1 else f"t^{e}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts) if parts else "0"


class FpElem:
    """Element of the prime field F_p."""

    __slots__ = ("value", "modulus")

    def __init__(self, value, modulus):
        self.modulus = check_prime(modulus)
        self.value = int(value) % modulus

    def _coerce(self, other):
        if isinstance(other, FpElem):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def _new(self, value):
        return FpElem(value, self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def inverse(self):
        if not self.value:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return self._new(pow(self.value, -1, self.modulus))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * self._new(o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.inverse() * o

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** -k
        return self._new(pow(self.value, k, self.modulus))

    def valuation(self):
        # trivial valuation, so generic pivoting code works over F_p too
        return 0 if self.value else INF

    def is_zero(self):
        return not self.value

    is_exact_zero = is_zero

    def constant(self, c):
        return self._new(c)

    def __bool__(self):
        return bool(self.value)

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __repr__(self):
        return f"FpElem({self.value}, {self.modulus})"


class Poly:
    """Polynomial in t over F_p, coefficients indexed by degree."""

    __slots__ = ("_f",)

    def __init__(self, coeffs=(), p=None):
        if isinstance(coeffs, flint.nmod_poly):
            self._f = coeffs
            return
        if p is None:
            raise ValueError("modulus required")
        check_prime(p)
        self._f = flint.nmod_poly([int(c) % p for c in coeffs], p)

    @classmethod
    def gen(cls, p):
        return cls([0, 1], p)

    @property
    def p(self):
        return self._f.modulus()

    @property
    def coeffs(self):
        return tuple(int(c) for c in self._f.coeffs())

    @property
    def degree(self):
        return self._f.degree()

    def is_zero(self):
        return self._f.is_zero()

    def ord_t(self):
        return INF if self._f.is_zero() else _ord(self._f)

    def leading_coefficient(self):
        return 0 if self._f.is_zero() else int(self._f[self._f.degree()])

    def monic(self):
        if self._f.is_zero():
            return self
        return Poly(_monic(self._f)[0])

    def __call__(self, x):
        return int(self._f(x))

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other._f
        if isinstance(other, int):
            return flint.nmod_poly([other % self.p], self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Poly(self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Poly(self._f - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Poly(o - self._f)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Poly(self._f * o)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(-self._f)

    def __pow__(self, k):
        return Poly(self._f ** k)

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = divmod(self._f, o)
        return Poly(q), Poly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other):
        return Poly(self._f.gcd(self._coerce(other)))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._f == o

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __str__(self):
        return _render_terms(self._f)

    def __repr__(self):
        return f"Poly('{self}', p={self.p})"


class RationalFn:
    """Reduced quotient of polynomials over F_p: an element of K = F_p(t).

    The denominator is monic and coprime to the numerator, so equality is
    structural.  Zero is ``0/1``.
    """

    __slots__ = ("_num", "_den", "_val")

    def __init__(self, numerator=0, denominator=1, p=None):
        num = _as_nmod(numerator, p)
        den = _as_nmod(denominator, num.modulus())
        if num.modulus() != den.modulus():
            raise ValueError("mixed moduli")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = _one(num.modulus())
        else:
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            den, lc = _monic(den)
            if lc != 1:
                num = num * (1 / lc)
        self._num = num
        self._den = den
        self._val = None

    @classmethod
    def _make(cls, num, den, val=None):
        obj = object.__new__(cls)
        obj._num = num
        obj._den = den
        obj._val = val
        return obj

    @classmethod
    def from_int(cls, c, p):
        check_prime(p)
        return cls._make(flint.nmod_poly([c % p], p), _one(p))

    @classmethod
    def gen(cls, p):
        check_prime(p)
        return cls._make(flint.nmod_poly([0, 1], p), _one(p), 1)

    @classmethod
    def monomial(cls, c, k, p):
        """``c * t^k`` for any integer k."""
        check_prime(p)
        c %= p
        if not c:
            return cls._make(_zero(p), _one(p), INF)
        if k >= 0:
            return cls._make(flint.nmod_poly([0] * k + [c], p), _one(p), k)
        return cls._make(flint.nmod_poly([c], p), flint.nmod_poly([0] * -k + [1], p), k)

    def constant(self, c):
        p = self._num.modulus()
        return RationalFn._make(flint.nmod_poly([c % p], p), _one(p))

    @property
    def p(self):
        return self._num.modulus()

    @property
    def numerator(self):
        return Poly(self._num)

    @property
    def denominator(self):
        return Poly(self._den)

    def is_zero(self):
        return self._num.is_zero()

    is_exact_zero = is_zero

    def __bool__(self):
        return not self._num.is_zero()

    def is_one(self):
        return self._num.is_one() and self._den.is_one()

    def is_polynomial(self):
        return self._den.is_one()

    def valuation(self):
        v = self._val
        if v is None:
            num = self._num
            if num.is_zero():
                v = INF
            elif num[0] != 0:
                v = 0 if self._den[0] != 0 else -_ord(self._den)
            else:
                v = _ord(num)
            self._val = v
        return v

    def is_integral(self):
        """Membership in R = F_p[t]_(t)."""
        return self._den[0] != 0

    def is_unit(self):
        return self._den[0] != 0 and self._num[0] != 0

    def residue(self):
        """Image in the residue field F_p; only defined on R."""
        if self._den[0] == 0:
            raise ValueError("residue of a non-integral element")
        return int(self._num[0] / self._den[0]) if self._num[0] != 0 else 0

    def unit_part(self):
        """Return ``(v, u)`` with ``self == t^v * u`` and u a unit of R."""
        v = self.valuation()
        if v == INF:
            raise ZeroDivisionError("zero has no unit part")
        return v, self.shift(-v)

    def shift(self, k):
        """Multiply by t^k."""
        if k == 0 or self._num.is_zero():
            return self
        num, den = self._num, self._den
        val = None if self._val is None else self._val + k
        if k > 0:
            if den[0] == 0:
                c = min(k, _ord(den))
                den = den.right_shift(c)
                k -= c
            if k:
                num = num.left_shift(k)
        else:
            k = -k
            if num[0] == 0:
                c = min(k, _ord(num))
                num = num.right_shift(c)
                k -= c
            if k:
                den = den.left_shift(k)
        return RationalFn._make(num, den, val)

    def _coerce(self, other):
        if isinstance(other, RationalFn):
            if other._num.modulus() != self._num.modulus():
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, int):
            return self.constant(other)
        if isinstance(other, FpElem):
            return self.constant(other.value)
        if isinstance(other, Poly):
            return RationalFn._make(other._f, _one(other.p))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self._num, self._den, o._num, o._den
        if a.is_zero():
            return o
        if c.is_zero():
            return self
        if b.is_one() and d.is_one():
            return RationalFn._make(a + c, b)
        if b == d:
            num = a + c
            if num.is_zero():
                return RationalFn._make(num, _one(num.modulus()), INF)
            g = num.gcd(b)
            if g.is_one():
                return RationalFn._make(num, b)
            return RationalFn._make(num // g, b // g)
        g = b.gcd(d)
        if g.is_one():
            return RationalFn._make(a * d + c * b, b * d)
        b1 = b // g
        d1 = d // g
        num = a * d1 + c * b1
        if num.is_zero():
            return RationalFn._make(num, _one(num.modulus()), INF)
        g2 = num.gcd(g)
        if g2.is_one():
            return RationalFn._make(num, b1 * d)
        return RationalFn._make(num // g2, b1 * (d // g2))

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._make(-self._num, self._den, self._val)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self._num, self._den, o._num, o._den
        if a.is_zero():
            return self
        if c.is_zero():
            return o
        if b.is_one() and d.is_one():
            return RationalFn._make(a * c, b)
        g1 = a.gcd(d)
        if not g1.is_one():
            a = a // g1
            d = d // g1
        g2 = c.gcd(b)
        if not g2.is_one():
            c = c // g2
            b = b // g2
        return RationalFn._make(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        num, den = self._num, self._den
        if num.is_zero():
            raise ZeroDivisionError("division by zero in F_p(t)")
        num_m, lc = _monic(num)
        if lc == 1:
            return RationalFn._make(den, num, None if self._val is None else -self._val)
        return RationalFn._make(den * (1 / lc), num_m, None if self._val is None else -self._val)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** -k
        return RationalFn._make(self._num ** k, self._den ** k)

    def __eq__(self, other):
        if isinstance(other, (int, FpElem, Poly, RationalFn)):
            o = self._coerce(other)
            return self._num == o._num and self._den == o._den
        return NotImplemented

    def __hash__(self):
        return hash((self.p, str(self._num), str(self._den)))

    def __str__(self):
        return render_coeff(self)

    def __repr__(self):
        return f"RationalFn('{render_coeff(self)}', p={self.p})"


def _as_nmod(x, p):
    if isinstance(x, flint.nmod_poly):
        return x
    if isinstance(x, Poly):
        return x._f
    if isinstance(x, int):
        if p is None:
            raise ValueError("modulus required")
        check_prime(p)
        return flint.nmod_poly([x % p], p)
    raise TypeError(f"cannot build a polynomial from {type(x).__name__}")


def render_coeff(x):
    """Render in the coefficient grammar; ``parse_coeff`` reads it back."""
    if isinstance(x, TruncatedSeries):
        return x.render_known()
    num = _render_terms(x._num)
    if x._den.is_one():
        return num
    den = _render_terms(x._den)
    return f"{_wrap(num)}/{_wrap(den)}"


def _wrap(s):
    return s if s == "t" or s.isdigit() else f"({s})"


class TruncatedSeries:
    """Laurent series ``t^v (u_0 + u_1 t + ...) + O(t^N)`` over F_p.

    ``u_0 != 0`` unless the element is flagged as zero at precision N, in
    which case ``valuation()`` is ``inf`` and operations that need an exact
    valuation raise ``PrecisionError``.
    """

    __slots__ = ("_v", "_u", "_N")

    def __init__(self, coeffs, valuation=0, precision=INF, p=None):
        if p is None:
            raise ValueError("modulus required")
        check_prime(p)
        u = flint.nmod_poly([int(c) % p for c in coeffs], p)
        if precision != INF:
            u = u.truncate(max(precision - valuation, 0))
        res = TruncatedSeries._normalized(p, valuation, u, precision)
        self._v, self._u, self._N = res._v, res._u, res._N

    @classmethod
    def _make(cls, v, u, N):
        obj = object.__new__(cls)
        obj._v = v
        obj._u = u
        obj._N = N
        return obj

    @classmethod
    def _normalized(cls, p, v, u, N):
        if u.is_zero():
            return cls._make(N, _zero(p), N)
        k = _ord(u)
        if k:
            u = u.right_shift(k)
            v += k
        return cls._make(v, u, N)

    @classmethod
    def zero(cls, p, precision=INF):
        check_prime(p)
        return cls._make(precision, _zero(p), precision)

    @classmethod
    def constant_of(cls, c, p, precision=INF):
        check_prime(p)
        c %= p
        if not c:
            return cls.zero(p, precision)
        return cls._make(0, flint.nmod_poly([c], p), precision)

    def constant(self, c):
        return TruncatedSeries.constant_of(c, self.p)

    @property
    def p(self):
        return self._u.modulus()

    @property
    def precision(self):
        return self._N

    @property
    def relative_precision(self):
        return self._N - self._v

    def valuation(self):
        return INF if self._u.is_zero() else self._v

    def is_zero(self):
        """True when every known coefficient is zero (flagged or exact zero)."""
        return self._u.is_zero()

    def is_exact(self):
        return self._N == INF

    def is_exact_zero(self):
        # skipping a flagged zero would overstate the precision of a sum
        return self._N == INF and self._u.is_zero()

    @property
    def coeffs(self):
        """Coefficients of t^v .. t^(N-1) (up to the last nonzero one if exact)."""
        if self._u.is_zero():
            return ()
        cs = [int(c) for c in self._u.coeffs()]
        if self._N != INF:
            cs += [0] * (self._N - self._v - len(cs))
        return tuple(cs)

    def coefficient(self, k):
        if k >= self._N:
            raise PrecisionError(f"coefficient of t^{k} is not known", required=k + 1)
        if self._u.is_zero() or k < self._v:
            return 0
        i = k - self._v
        return int(self._u[i]) if i <= self._u.degree() else 0

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, int):
            return TruncatedSeries.constant_of(other, self.p)
        if isinstance(other, FpElem):
            return TruncatedSeries.constant_of(other.value, self.p)
        return NotImplemented

    def with_precision(self, N):
        """Forget everything at or beyond t^N (no-op if already coarser)."""
        if N >= self._N:
            return self
        if self._u.is_zero() or self._v >= N:
            return TruncatedSeries._make(N, _zero(self.p), N)
        return TruncatedSeries._make(self._v, self._u.truncate(N - self._v), N)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        N = min(self._N, o._N)
        if self._u.is_zero():
            return o.with_precision(N)
        if o._u.is_zero():
            return self.with_precision(N)
        m = min(self._v, o._v)
        if m >= N:
            return TruncatedSeries._make(N, _zero(self.p), N)
        a = self._u if self._v == m else self._u.left_shift(self._v - m)
        b = o._u if o._v == m else o._u.left_shift(o._v - m)
        s = a + b
        if N != INF:
            s = s.truncate(N - m)
        return TruncatedSeries._normalized(self.p, m, s, N)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._make(self._v, -self._u, self._N)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        # a flagged zero carries v == N, which makes the rule below uniform
        N = min(self._v + o._N, o._v + self._N)
        if self._u.is_zero() or o._u.is_zero():
            return TruncatedSeries._make(N, _zero(self.p), N)
        v = self._v + o._v
        if N == INF:
            u = self._u * o._u
        else:
            u = self._u.mul_low(o._u, N - v)
        return TruncatedSeries._make(v, u, N)

    __rmul__ = __mul__

    def inverse(self):
        if self._u.is_zero():
            raise PrecisionError(
                f"cannot invert an element that is zero at precision {self._N}",
                required=None if self._N == INF else self._N + 1,
            )
        v, N = self._v, self._N
        if N == INF:
            if self._u.degree() != 0:
                raise PrecisionError("exact non-monomial series has no finite inverse")
            return TruncatedSeries._make(-v, flint.nmod_poly([1 / self._u[0]], self.p), INF)
        u = self._u.inverse_series_trunc(N - v)
        return TruncatedSeries._make(-v, u, N - 2 * v)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** -k
        out = TruncatedSeries.constant_of(1, self.p)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k):
        """Multiply by t^k (exact, so precision moves by k as well)."""
        return TruncatedSeries._make(self._v + k, self._u, self._N + k)

    def unit_part(self):
        v = self.valuation()
        if v == INF:
            raise PrecisionError(
                f"valuation is not determined at precision {self._N}", required=self._N + 1
            )
        return v, self.shift(-v)

    def is_integral(self):
        if self._u.is_zero():
            return self._N >= 0
        return self._v >= 0

    def residue(self):
        if self._N < 1:
            raise PrecisionError("residue needs precision at least 1", required=1)
        if not self.is_integral():
            raise ValueError("residue of a non-integral element")
        return self.coefficient(0)

    def agrees(self, other):
        """True when both sides agree on every coefficient they both know."""
        return (self - other).is_zero()

    def truncated(self, n):
        """Exact Laurent polynomial of the terms with exponent < n."""
        if n > self._N:
            raise PrecisionError(f"terms below t^{n} are not all known", required=n)
        p = self.p
        if self._u.is_zero() or self._v >= n:
            return RationalFn._make(_zero(p), _one(p), INF)
        return RationalFn._make(self._u.truncate(n - self._v), _one(p)).shift(self._v)

    def to_rational(self):
        """The known coefficients as an exact Laurent polynomial."""
        p = self.p
        if self._u.is_zero():
            return RationalFn._make(_zero(p), _one(p), INF)
        return RationalFn._make(self._u, _one(p)).shift(self._v)

    def render_known(self):
        if self._u.is_zero():
            return "0"
        return _render_terms(self._u, self._v)

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (int, FpElem, TruncatedSeries)) else None
        if o is None:
            return NotImplemented
        return self._N == o._N and self._v == o._v and self._u == o._u

    def __hash__(self):
        return hash((self.p, self._v, self._N, str(self._u)))

    def __str__(self):
        tail = "" if self._N == INF else f"O(t^{self._N})"
        if self._u.is_zero():
            return tail or "0"
        return self.render_known() + ("+" + tail if tail else "")

    def __repr__(self):
        return f"TruncatedSeries('{self}', p={self.p})"


def valuation(x):
    """t-adic valuation; ``inf`` for zero (or zero at the known precision)."""
    return x.valuation()


def expand(x, N):
    """Power-series expansion of an exact element, known modulo t^N."""
    p = x.p
    if x.is_zero():
        return TruncatedSeries.zero(p, N)
    v = x.valuation()
    if N <= v:
        raise ValueError(f"precision {N} must exceed the valuation {v}")
    num, den = x._num, x._den
    if v > 0:
        num = num.right_shift(v)
    elif v < 0:
        den = den.right_shift(-v)
    r = N - v
    u = num.mul_low(den.inverse_series_trunc(r), r)
    return TruncatedSeries._make(v, u, N)


def series_inverse(x):
    return x.inverse()


def laurent_series(x):
    """Exact (infinite-precision) series of a Laurent polynomial in t."""
    if x.is_zero():
        return TruncatedSeries.zero(x.p)
    den = x._den
    k = den.degree()
    if k > 0 and (den[k] != 1 or any(den[i] != 0 for i in range(k))):
        raise ValueError(f"{x} is not a Laurent polynomial")
    u = x._num
    o = _ord(u)
    if o:
        u = u.right_shift(o)
    return TruncatedSeries._make(o - k, u, INF)
